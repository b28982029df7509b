use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{Point, Space};
use crate::gf::Field;

use super::PointSet;

/// `{a + lambda e_i : lambda in F_q, 1 <= i <= n}`, which has exactly
/// `n(q-1) + 1` points and avoids the origin for a valid anchor.
pub fn construct_tight(space: Arc<Space>, anchor: &Point) -> Result<PointSet> {
    let n = space.n();
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    space.validate(anchor)?;
    if anchor.is_origin() || anchor.is_axis_multiple() {
        return Err(Error::BadAnchor(anchor.coords().to_vec()));
    }
    let field = space.field();
    let mut points = vec![anchor.clone()];
    for i in 0..n {
        for lambda in field.elements().skip(1) {
            let mut c = anchor.coords().to_vec();
            c[i] = field.add(c[i], lambda);
            points.push(Point::new(c));
        }
    }
    let set = PointSet::new(space, &points, false)?;
    debug_assert_eq!(set.len(), n * (set.q() - 1) + 1);
    Ok(set)
}

/// A union of punctured spread elements together with the flag telling
/// whether `s <= 2^{n/2-2}`.
#[derive(Clone, Debug)]
pub struct SpreadUnion {
    pub set: PointSet,
    pub s: usize,
    /// Canonical indices of each chosen subspace, origin included.
    pub subspaces: Vec<Vec<usize>>,
    pub ab_window: bool,
}

/// Union of the first `s` members of the Desarguesian spread of
/// `F_2^n = F_{2^{n/2}} x F_{2^{n/2}}`, taken in the order
/// `U_inf = {(0, y)}`, then `U_gamma = {(x, gamma x)}` for `gamma = 0, 1, ...`.
///
/// A field element is laid out on `n/2` consecutive coordinates by its
/// encoding bits; `x` occupies the low half, `y` the high half.
pub fn construct_spread_union(n: usize, s: usize) -> Result<SpreadUnion> {
    if n < 6 || !n.is_multiple_of(2) || n > 16 {
        return Err(Error::ParameterOutOfRange(format!("spread union needs even n in 6..=16, got {n}")));
    }
    let half = n / 2;
    let big = 1usize << half;
    if s < 2 || s > big + 1 || s == big || s == big + 1 {
        return Err(Error::ParameterOutOfRange(format!(
            "spread order s = {s} outside 2..={} (excluding {big} and {})",
            big + 1,
            big + 1
        )));
    }
    let ext = Field::new(big)?;
    let space = Arc::new(Space::new(2, n)?);
    let pack = |x: usize, y: usize| x | (y << half);

    let mut subspaces: Vec<Vec<usize>> = Vec::with_capacity(s);
    subspaces.push((0..big).map(|y| pack(0, y)).collect());
    for gamma in 0..s - 1 {
        subspaces.push((0..big).map(|x| pack(x, ext.mul(gamma as u8, x as u8) as usize)).collect());
    }
    for u in subspaces.iter_mut() {
        u.sort_unstable();
    }
    for (i, a) in subspaces.iter().enumerate() {
        for b in &subspaces[i + 1..] {
            let common = a.iter().filter(|x| b.binary_search(x).is_ok()).count();
            if common != 1 {
                return Err(Error::HypothesisViolated("spread elements meet outside the origin".into()));
            }
        }
    }
    let members: Vec<usize> = subspaces.iter().flatten().copied().filter(|&x| x != 0).collect();
    let set = PointSet::from_indices(space, members, false)?;
    debug_assert_eq!(set.len(), s * (big - 1));
    Ok(SpreadUnion { set, s, subspaces, ab_window: s <= 1 << (half - 2) })
}

/// All nonzero vectors of F_2^n of Hamming weight at most `k`, for
/// `n >= 7` and `2 <= k <= (n-3)/2`.
pub fn construct_hamming_ball(n: usize, k: usize) -> Result<PointSet> {
    check_ball_params(n, k)?;
    let space = Arc::new(Space::new(2, n)?);
    let members = (1..space.size()).filter(|x: &usize| x.count_ones() as usize <= k).collect();
    PointSet::from_indices(space, members, false)
}

pub(crate) fn check_ball_params(n: usize, k: usize) -> Result<()> {
    if n < 7 {
        return Err(Error::ParameterOutOfRange(format!("Hamming ball needs n >= 7, got {n}")));
    }
    if k < 2 || k > (n - 3) / 2 {
        return Err(Error::ParameterOutOfRange(format!("Hamming ball radius k = {k} outside 2..={}", (n - 3) / 2)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{check_conditions, check_conditions_binary};

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn tight_examples() {
        let s = construct_tight(Arc::new(Space::new(3, 4).unwrap()), &Point::new(vec![1, 1, 1, 1])).unwrap();
        assert_eq!(s.len(), 9);
        let s = construct_tight(Arc::new(Space::new(2, 5).unwrap()), &Point::new(vec![1, 1, 0, 0, 0])).unwrap();
        assert_eq!(s.len(), 6);
        let sp = Arc::new(Space::new(2, 3).unwrap());
        assert_eq!(construct_tight(sp.clone(), &Point::new(vec![1, 0, 0])), Err(Error::BadAnchor(vec![1, 0, 0])));
        assert_eq!(construct_tight(sp, &Point::new(vec![0, 0, 0])), Err(Error::BadAnchor(vec![0, 0, 0])));
        let sp3 = Arc::new(Space::new(3, 2).unwrap());
        assert!(matches!(construct_tight(sp3, &Point::new(vec![0, 2])), Err(Error::BadAnchor(_))));
    }

    #[test]
    fn tight_sets_pass_whenever_the_window_allows() {
        for q in [2, 3, 4, 5] {
            for n in 2..=5 {
                let sp = Arc::new(Space::new(q, n).unwrap());
                let anchor = (1..sp.size()).map(|i| sp.point(i)).find(|a| !a.is_axis_multiple()).unwrap();
                let s = construct_tight(sp, &anchor).unwrap();
                assert_eq!(s.len(), n * (q - 1) + 1);
                let r = check_conditions(&s).unwrap();
                assert!(r.affine_nondegenerate && r.blocking, "q={q} n={n}");
                if (n * (q - 1) + 1) < (q.pow(n as u32 - 2) * (q - 1)) {
                    assert!(r.all_hold, "q={q} n={n}");
                }
            }
        }
    }

    #[test]
    fn spread_examples() {
        let u = construct_spread_union(6, 2).unwrap();
        assert_eq!(u.set.len(), 14);
        assert_eq!(u.subspaces.len(), 2);
        assert!(u.subspaces.iter().all(|s| s.len() == 8));
        assert!(u.ab_window);
        assert!(!construct_spread_union(6, 3).unwrap().ab_window);
        assert!(check_conditions_binary(&u.set).unwrap().all_hold);

        let u = construct_spread_union(8, 4).unwrap();
        assert_eq!(u.set.len(), 60);
        assert!(u.ab_window);
        assert!(check_conditions(&u.set).unwrap().all_hold);

        assert!(construct_spread_union(6, 8).is_err());
        assert!(construct_spread_union(6, 9).is_err());
        assert!(construct_spread_union(6, 1).is_err());
        assert!(construct_spread_union(7, 2).is_err());
        assert!(construct_spread_union(6, 7).is_ok());
    }

    #[test]
    fn spread_subspaces_are_closed_under_addition() {
        for n in [6, 8, 10] {
            let u = construct_spread_union(n, 5).unwrap();
            for sub in &u.subspaces {
                for &a in sub {
                    for &b in sub {
                        assert!(sub.binary_search(&(a ^ b)).is_ok());
                    }
                }
            }
            assert_eq!(u.set.len(), 5 * ((1 << (n / 2)) - 1));
        }
    }

    #[test]
    fn hamming_ball_examples() {
        assert_eq!(construct_hamming_ball(7, 2).unwrap().len(), 28);
        assert_eq!(construct_hamming_ball(9, 3).unwrap().len(), 9 + 36 + 84);
        assert_eq!(binom(9, 3), 84);
        assert!(matches!(construct_hamming_ball(7, 3), Err(Error::ParameterOutOfRange(_))));
        assert!(matches!(construct_hamming_ball(7, 1), Err(Error::ParameterOutOfRange(_))));
        assert!(matches!(construct_hamming_ball(6, 2), Err(Error::ParameterOutOfRange(_))));
        let r = check_conditions_binary(&construct_hamming_ball(7, 2).unwrap()).unwrap();
        assert!(r.all_hold);
        assert_eq!((r.size, r.size_bound), (28, 32));
    }
}
