//! Arithmetic in F_q for prime powers q <= 256.
//!
//! Elements are plain integers: the polynomial-basis coordinates
//! `(c_0, ..., c_{m-1})` of an element are encoded as `sum c_i p^i`.
//! Zero encodes the additive identity and one the multiplicative identity.

use std::fmt;

use crate::error::{Error, Result};

/// Encoded field element, always in `0..q`.
pub type Elem = u8;

pub const MAX_ORDER: usize = 256;

/// A concrete finite field together with its arithmetic tables.
///
/// Immutable after construction. The modulus is the lexicographically least
/// monic irreducible polynomial of degree `m` over F_p, comparing the
/// coefficient tuple `(c_0, c_1, ..., c_{m-1})` from the constant term up,
/// so the encoding is reproducible from `q` alone.
#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    q: usize,
    p: usize,
    m: usize,
    modulus: Vec<u8>,
    add: Vec<Elem>,
    neg: Vec<Elem>,
    // empty for prime fields
    exp: Vec<Elem>,
    log: Vec<u16>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("q", &self.q)
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Returns `(p, m)` with `q = p^m`, or `None` if `q` is not a prime power.
pub fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

// Dense polynomials over F_p, lowest coefficient first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `b`.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, &bc) in b.iter().enumerate() {
            let t = (lead * bc) % p;
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as usize).pow(d as u32);
        for code in 0..count {
            let mut divisor = digits(code, p as usize, d)
                .into_iter()
                .map(|c| c as u32)
                .collect::<Vec<_>>();
            divisor.push(1);
            if poly_rem(poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Base-`base` digits of `value`, least significant first, padded to `len`.
pub(crate) fn digits(mut value: usize, base: usize, len: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((value % base) as u8);
        value /= base;
    }
    out
}

fn undigits(ds: &[u32], base: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * base + d as usize)
}

fn least_irreducible(p: usize, m: usize) -> Vec<u8> {
    let count = p.pow(m as u32);
    for code in 0..count {
        // c_0 is the most significant position of the lexicographic order
        let mut coeffs: Vec<u32> = digits(code, p, m).into_iter().rev().map(u32::from).collect();
        coeffs.push(1);
        if is_irreducible(&coeffs, p as u32) {
            return coeffs.into_iter().map(|c| c as u8).collect();
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

impl Field {
    pub fn new(q: usize) -> Result<Self> {
        if q > MAX_ORDER {
            return Err(Error::CapExceeded(q));
        }
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let mut add = vec![0; q * q];
        let mut neg = vec![0; q];
        for a in 0..q {
            let da = digits(a, p, m);
            let na: Vec<u32> = da.iter().map(|&d| ((p - d as usize) % p) as u32).collect();
            neg[a] = undigits(&na, p) as Elem;
            for b in 0..q {
                let db = digits(b, p, m);
                let s: Vec<u32> = da
                    .iter()
                    .zip(&db)
                    .map(|(&x, &y)| ((x as usize + y as usize) % p) as u32)
                    .collect();
                add[a * q + b] = undigits(&s, p) as Elem;
            }
        }
        if m == 1 {
            return Ok(Field { q, p, m, modulus: vec![0, 1], add, neg, exp: Vec::new(), log: Vec::new() });
        }

        let modulus = least_irreducible(p, m);
        let modulus32: Vec<u32> = modulus.iter().map(|&c| c as u32).collect();
        let slow_mul = |a: usize, b: usize| -> usize {
            let pa: Vec<u32> = digits(a, p, m).into_iter().map(u32::from).collect();
            let pb: Vec<u32> = digits(b, p, m).into_iter().map(u32::from).collect();
            let prod = poly_rem(&poly_mul(&pa, &pb, p as u32), &modulus32, p as u32);
            undigits(&prod, p)
        };

        let order_of = |g: usize| -> usize {
            let mut x = g;
            let mut k = 1;
            while x != 1 {
                x = slow_mul(x, g);
                k += 1;
            }
            k
        };
        let generator = (2..q).find(|&g| order_of(g) == q - 1).expect("multiplicative group is cyclic");

        let mut exp = vec![0 as Elem; 2 * (q - 1)];
        let mut log = vec![0u16; q];
        let mut x = 1usize;
        for k in 0..q - 1 {
            exp[k] = x as Elem;
            exp[k + q - 1] = x as Elem;
            log[x] = k as u16;
            x = slow_mul(x, generator);
        }
        Ok(Field { q, p, m, modulus, add, neg, exp, log })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// Coefficients of the modulus, constant term first, monic.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.m == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(|a| a as Elem)
    }

    pub fn check(&self, a: usize) -> Result<Elem> {
        if a < self.q {
            Ok(a as Elem)
        } else {
            Err(Error::InvalidElement { elem: a, q: self.q })
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.m == 1 {
            return ((a as usize * b as usize) % self.p) as Elem;
        }
        self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.m == 1 {
            return Ok(self.pow(a, self.q - 2));
        }
        let l = self.log[a as usize] as usize;
        Ok(self.exp[(self.q - 1 - l) % (self.q - 1)])
    }

    pub fn pow(&self, a: Elem, mut e: usize) -> Elem {
        let mut base = a;
        let mut acc: Elem = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_orders(limit: usize) -> Vec<usize> {
        (2..=limit).filter(|&q| prime_power(q).is_some()).collect()
    }

    #[test]
    fn prime_field_has_no_tables() {
        let f = Field::new(2).unwrap();
        assert_eq!((f.order(), f.characteristic(), f.degree()), (2, 2, 1));
        assert!(f.exp.is_empty() && f.log.is_empty());
    }

    #[test]
    fn f4_modulus_is_the_unique_irreducible_quadratic() {
        // enumerate x^2 + c1 x + c0 over F_2 by hand: only x^2+x+1 has no root
        let roots = |c0: u32, c1: u32| (0..2u32).any(|x| (x * x + c1 * x + c0).is_multiple_of(2));
        let irreducible: Vec<(u32, u32)> =
            (0..2).flat_map(|c0| (0..2).map(move |c1| (c0, c1))).filter(|&(c0, c1)| !roots(c0, c1)).collect();
        assert_eq!(irreducible, vec![(1, 1)]);
        assert_eq!(Field::new(4).unwrap().modulus(), &[1, 1, 1]);
    }

    #[test]
    fn rejects_bad_orders() {
        assert_eq!(Field::new(6), Err(Error::NotPrimePower(6)));
        assert_eq!(Field::new(1), Err(Error::NotPrimePower(1)));
        assert_eq!(Field::new(512), Err(Error::CapExceeded(512)));
        assert_eq!(Field::new(257), Err(Error::CapExceeded(257)));
        assert!(Field::new(256).is_ok());
    }

    #[test]
    fn small_examples() {
        let f3 = Field::new(3).unwrap();
        assert_eq!(f3.add(2, 2), 1);
        let f4 = Field::new(4).unwrap();
        // x * x = x + 1
        assert_eq!(f4.mul(2, 2), 3);
        let f5 = Field::new(5).unwrap();
        assert_eq!(f5.inv(2), Ok(3));
        assert_eq!(f5.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn modulus_choice_is_lexicographic_from_constant_term() {
        // (1,0,1) < (1,1,0): x^3 + x^2 + 1 precedes x^3 + x + 1
        assert_eq!(Field::new(8).unwrap().modulus(), &[1, 0, 1, 1]);
        assert_eq!(Field::new(9).unwrap().modulus(), &[1, 0, 1]);
        for q in all_orders(256) {
            let f = Field::new(q).unwrap();
            let m32: Vec<u32> = f.modulus().iter().map(|&c| c as u32).collect();
            assert!(is_irreducible(&m32, f.characteristic() as u32), "q = {q}");
        }
    }

    #[test]
    fn mul_matches_polynomial_reduction() {
        for q in [4, 8, 9, 16, 25, 27] {
            let f = Field::new(q).unwrap();
            let (p, m) = (f.characteristic(), f.degree());
            let modulus: Vec<u32> = f.modulus().iter().map(|&c| c as u32).collect();
            for a in 0..q {
                for b in 0..q {
                    let pa: Vec<u32> = digits(a, p, m).into_iter().map(u32::from).collect();
                    let pb: Vec<u32> = digits(b, p, m).into_iter().map(u32::from).collect();
                    let r = poly_rem(&poly_mul(&pa, &pb, p as u32), &modulus, p as u32);
                    assert_eq!(f.mul(a as Elem, b as Elem) as usize, undigits(&r, p));
                }
            }
        }
    }

    #[test]
    fn axioms_exhaustive_up_to_32() {
        for q in all_orders(32) {
            let f = Field::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
                    assert_eq!(f.pow(a, q - 1), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
        }
    }

    #[test]
    fn distributive_exhaustive_up_to_16() {
        for q in all_orders(16) {
            let f = Field::new(q).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn group_order_large_fields() {
        for q in all_orders(256).into_iter().filter(|&q| q > 32) {
            let f = Field::new(q).unwrap();
            for a in 1..q {
                assert_eq!(f.pow(a as Elem, q - 1), 1);
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn distributive_random(qi in 0usize..12, a: u8, b: u8, c: u8) {
                let orders = [17, 19, 23, 25, 27, 29, 31, 32, 49, 64, 128, 256];
                let f = Field::new(orders[qi]).unwrap();
                let q = f.order();
                let (a, b, c) = ((a as usize % q) as Elem, (b as usize % q) as Elem, (c as usize % q) as Elem);
                prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            }
        }
    }
}
