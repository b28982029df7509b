//! Binary criteria: the Walsh–Hadamard transform, the Walsh-spectrum
//! minimality test for `C_f`, bentness, and the Hamming-ball AB inequality.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sets::construct::check_ball_params;

use super::CodeCf;

/// `f^(x) = sum_v (-1)^{f(v) + v.x}` for a truth table of length `2^n`
/// indexed canonically, via the in-place butterfly.
///
/// Note: the sum runs over `v` with `f` evaluated at `v`. Holding `f(x)`
/// fixed instead would make the transform vanish off `x = 0`.
pub fn walsh_transform(truth_table: &[u8]) -> Result<Vec<i64>> {
    let len = truth_table.len();
    if !len.is_power_of_two() {
        return Err(Error::ParameterOutOfRange(format!("truth table length {len} is not 2^n")));
    }
    if let Some(&bad) = truth_table.iter().find(|&&b| b > 1) {
        return Err(Error::NotBinary(bad as usize + 1));
    }
    let mut t: Vec<i64> = truth_table.iter().map(|&b| if b == 0 { 1 } else { -1 }).collect();
    let mut h = 1;
    while h < len {
        for block in (0..len).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (t[i], t[i + h]);
                t[i] = a + b;
                t[i + h] = a - b;
            }
        }
        h *= 2;
    }
    Ok(t)
}

/// `|f^(x)| = 2^{n/2}` everywhere.
pub fn is_bent(truth_table: &[u8]) -> Result<bool> {
    let spectrum = walsh_transform(truth_table)?;
    let n = truth_table.len().trailing_zeros();
    if n % 2 == 1 {
        return Err(Error::OddDimension(n as usize));
    }
    let target = 1i64 << (n / 2);
    Ok(spectrum.iter().all(|w| w.abs() == target))
}

/// Whether two distinct positions hold values with sum or difference `2^n`.
fn has_critical_pair(spectrum: &[i64]) -> bool {
    let full = spectrum.len() as i64;
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &w in spectrum {
        *counts.entry(w).or_default() += 1;
    }
    counts.keys().any(|&a| {
        let sum_partner = full - a;
        let sum_hit = match counts.get(&sum_partner) {
            Some(&c) if sum_partner == a => c >= 2,
            Some(_) => true,
            None => false,
        };
        sum_hit || counts.contains_key(&(a - full))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalshSummary {
    pub n: usize,
    pub max_abs: i64,
    pub min_value: i64,
    pub max_value: i64,
    pub parseval_sum: u128,
    pub bent: Option<bool>,
    /// `None` when the spectrum criterion does not apply; see `ding_note`.
    pub ding_minimal: Option<bool>,
    pub ding_note: Option<String>,
}

impl CodeCf {
    fn binary_table(&self) -> Result<&[u8]> {
        if self.q() != 2 {
            return Err(Error::NotBinary(self.q()));
        }
        Ok(self.indicator())
    }

    pub fn walsh_transform(&self) -> Result<Vec<i64>> {
        walsh_transform(self.binary_table()?)
    }

    pub fn is_bent(&self) -> Result<bool> {
        is_bent(self.binary_table()?)
    }

    /// Minimality of a binary `C_f` read off the Walsh spectrum: minimal iff
    /// no two distinct `x, y` have `f^(x) + f^(y) = 2^n` or
    /// `f^(x) - f^(y) = 2^n`. Valid only for nonlinear `f` that is nonzero
    /// somewhere off the origin; otherwise returns `HypothesisViolated`.
    pub fn ding_minimality(&self) -> Result<bool> {
        let table = self.binary_table()?;
        if self.set().is_empty() {
            return Err(Error::HypothesisViolated("f vanishes on every nonzero point".into()));
        }
        if self.is_linear() {
            return Err(Error::HypothesisViolated("f is linear".into()));
        }
        Ok(!has_critical_pair(&walsh_transform(table)?))
    }

    pub fn walsh_summary(&self) -> Result<WalshSummary> {
        let spectrum = self.walsh_transform()?;
        let n = self.n();
        let bent = if n.is_multiple_of(2) { Some(self.is_bent()?) } else { None };
        let (ding_minimal, ding_note) = match self.ding_minimality() {
            Ok(b) => (Some(b), None),
            Err(Error::HypothesisViolated(msg)) => (None, Some(msg)),
            Err(e) => return Err(e),
        };
        Ok(WalshSummary {
            n,
            max_abs: spectrum.iter().map(|w| w.abs()).max().unwrap_or(0),
            min_value: spectrum.iter().copied().min().unwrap_or(0),
            max_value: spectrum.iter().copied().max().unwrap_or(0),
            parseval_sum: spectrum.iter().map(|&w| (w * w) as u128).sum(),
            bent,
            ding_minimal,
            ding_note,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DingAbReport {
    pub n: usize,
    pub k: usize,
    /// `1 + 2 sum_{i=1..k} C(n, i)`.
    pub lhs: u128,
    /// `2^{n-1} + C(n-1, k)`.
    pub rhs: u128,
    pub holds: bool,
    /// `2^{n-1}`, the cap implied by `|S| < 2^{n-2}`.
    pub strict_rhs: u128,
    pub strict_holds: bool,
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Exact evaluation of the Hamming-ball AB-violation inequality and of the
/// stricter cap `1 + 2 sum C(n, i) <= 2^{n-1}`.
pub fn ding_ab_inequality(n: usize, k: usize) -> Result<DingAbReport> {
    check_ball_params(n, k)?;
    if n > 100 {
        return Err(Error::ParameterOutOfRange(format!("n = {n} too large for exact evaluation")));
    }
    let ball: u128 = (1..=k as u128).map(|i| binomial(n as u128, i)).sum();
    let lhs = 1 + 2 * ball;
    let half = 1u128 << (n - 1);
    let rhs = half + binomial(n as u128 - 1, k as u128);
    Ok(DingAbReport { n, k, lhs, rhs, holds: lhs <= rhs, strict_rhs: half, strict_holds: lhs <= half })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct sum, independent of the butterfly.
    fn walsh_direct(table: &[u8]) -> Vec<i64> {
        let len = table.len();
        (0..len)
            .map(|x| {
                (0..len)
                    .map(|v| if (table[v] as u32 + (v & x).count_ones()).is_multiple_of(2) { 1 } else { -1 })
                    .sum()
            })
            .collect()
    }

    fn table_of(n: usize, f: impl FnMut(usize) -> u8) -> Vec<u8> {
        (0..1 << n).map(f).collect()
    }

    #[test]
    fn zero_function() {
        let w = walsh_transform(&[0; 32]).unwrap();
        assert_eq!(w[0], 32);
        assert!(w[1..].iter().all(|&x| x == 0));
        assert_eq!(is_bent(&[0; 16]), Ok(false));
    }

    #[test]
    fn bent_examples() {
        // x1 x2 + x3 x4 with x_{i+1} the i-th bit
        let f4 = table_of(4, |x| (((x & 1) * (x >> 1 & 1)) ^ ((x >> 2 & 1) * (x >> 3 & 1))) as u8);
        let direct = walsh_direct(&f4);
        assert!(direct.iter().all(|w| w.abs() == 4));
        assert_eq!(walsh_transform(&f4).unwrap(), direct);
        assert_eq!(is_bent(&f4), Ok(true));
        let f2 = table_of(2, |x| ((x & 1) * (x >> 1 & 1)) as u8);
        assert!(walsh_direct(&f2).iter().all(|w| w.abs() == 2));
        assert_eq!(is_bent(&f2), Ok(true));
        assert_eq!(is_bent(&[0; 8]), Err(Error::OddDimension(3)));
    }

    #[test]
    fn butterfly_matches_direct_sum_and_parseval() {
        let mut seed = 0x2545f491u64;
        for n in 1..=7 {
            for _ in 0..20 {
                let t = table_of(n, |_| {
                    seed ^= seed << 13;
                    seed ^= seed >> 7;
                    seed ^= seed << 17;
                    (seed & 1) as u8
                });
                let w = walsh_transform(&t).unwrap();
                assert_eq!(w, walsh_direct(&t));
                assert_eq!(w.iter().map(|x| x * x).sum::<i64>(), 1 << (2 * n));
                assert!(w.iter().all(|x| x % 2 == 0));
            }
        }
    }

    #[test]
    fn rejects_non_binary_tables() {
        assert!(matches!(walsh_transform(&[0, 1, 0]), Err(Error::ParameterOutOfRange(_))));
        assert!(matches!(walsh_transform(&[0, 2]), Err(Error::NotBinary(_))));
    }

    #[test]
    fn critical_pairs() {
        // 16 = 8 + 8 needs two positions holding 8
        assert!(!has_critical_pair(&[8, 0, 4, -4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]));
        assert!(has_critical_pair(&[8, 8, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]));
        // 4 - (-12) = 16
        assert!(has_critical_pair(&[4, -12, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]));
        assert!(has_critical_pair(&[16, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn hamming_ball_inequality() {
        let r = ding_ab_inequality(7, 2).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds, r.strict_rhs, r.strict_holds), (57, 79, true, 64, true));
        let r = ding_ab_inequality(9, 3).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds, r.strict_rhs, r.strict_holds), (259, 312, true, 256, false));
        assert!(matches!(ding_ab_inequality(7, 1), Err(Error::ParameterOutOfRange(_))));
        assert_eq!(binomial(8, 3), 56);
    }
}
