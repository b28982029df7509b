//! Point sets `S`, the geometric sufficient conditions for `C_f` to be
//! minimal while violating the Ashikhmin–Barg bound, and the explicit
//! constructions that satisfy them.

pub(crate) mod construct;
pub mod file;

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{AffineHyperplane, Point, Space};
use crate::linalg;
use crate::mask::BitMask;

pub use construct::{construct_hamming_ball, construct_spread_union, construct_tight, SpreadUnion};

/// A sorted, duplicate-free set of points of F_q^n.
///
/// With `allows_origin == false` the origin is never a member; that is the
/// regime required for building codes.
#[derive(Clone, Debug)]
pub struct PointSet {
    space: Arc<Space>,
    indices: Vec<usize>,
    allows_origin: bool,
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.q() == other.q() && self.n() == other.n() && self.indices == other.indices
    }
}

impl Eq for PointSet {}

impl PointSet {
    /// Rejects duplicates rather than merging them.
    pub fn new(space: Arc<Space>, points: &[Point], allows_origin: bool) -> Result<Self> {
        let mut indices = Vec::with_capacity(points.len());
        for x in points {
            indices.push(space.validate(x)?);
        }
        let mut sorted = indices.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(space.point(w[0]).coords().to_vec()));
        }
        Self::from_sorted(space, sorted, allows_origin)
    }

    /// Builds a set from canonical indices; duplicates are merged.
    pub fn from_indices(space: Arc<Space>, mut indices: Vec<usize>, allows_origin: bool) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if let Some(&bad) = indices.iter().find(|&&i| i >= space.size()) {
            return Err(Error::ParameterOutOfRange(format!("point index {bad} outside F_q^n")));
        }
        Self::from_sorted(space, indices, allows_origin)
    }

    fn from_sorted(space: Arc<Space>, indices: Vec<usize>, allows_origin: bool) -> Result<Self> {
        if !allows_origin && indices.first() == Some(&0) {
            return Err(Error::OriginPresent);
        }
        Ok(PointSet { space, indices, allows_origin })
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn q(&self) -> usize {
        self.space.q()
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn allows_origin(&self) -> bool {
        self.allows_origin
    }

    pub fn contains_origin(&self) -> bool {
        self.indices.first() == Some(&0)
    }

    /// Canonical indices, ascending.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn points(&self) -> Vec<Point> {
        self.indices.iter().map(|&i| self.space.point(i)).collect()
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.space
            .validate(x)
            .map(|i| self.indices.binary_search(&i).is_ok())
            .unwrap_or(false)
    }

    /// Membership over all `q^n` canonical indices.
    pub fn membership(&self) -> BitMask {
        let mut m = BitMask::new(self.space.size());
        self.indices.iter().for_each(|&i| m.set(i));
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    /// `S` lies in no affine hyperplane.
    pub affine_nondegenerate: bool,
    pub covering_hyperplane: Option<AffineHyperplane>,
    /// `S` meets every affine hyperplane.
    pub blocking: bool,
    pub missed_hyperplane: Option<AffineHyperplane>,
    /// `|S| < size_bound`.
    pub size_ok: bool,
    pub size: usize,
    pub size_bound: u64,
    pub all_hold: bool,
}

impl ConditionReport {
    fn assemble(
        covering: Option<AffineHyperplane>,
        missed: Option<AffineHyperplane>,
        size: usize,
        size_bound: u64,
    ) -> Self {
        let affine_nondegenerate = covering.is_none();
        let blocking = missed.is_none();
        let size_ok = (size as u64) < size_bound;
        ConditionReport {
            affine_nondegenerate,
            covering_hyperplane: covering,
            blocking,
            missed_hyperplane: missed,
            size_ok,
            size,
            size_bound,
            all_hold: affine_nondegenerate && blocking && size_ok,
        }
    }
}

fn theorem_preconditions(set: &PointSet) -> Result<()> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    if set.contains_origin() {
        return Err(Error::OriginPresent);
    }
    if set.n() < 2 {
        return Err(Error::DimensionTooSmall(set.n()));
    }
    Ok(())
}

/// `q^{n-2} (q-1)`.
pub fn size_bound(q: usize, n: usize) -> u64 {
    (q as u64).pow(n as u32 - 2) * (q as u64 - 1)
}

/// First affine hyperplane (normals by index, then alpha) that `members`
/// misses, restricted to linear hyperplanes when `linear_only`.
fn first_missed(space: &Space, members: &[usize], linear_only: bool) -> Option<AffineHyperplane> {
    let q = space.q();
    let mut hit = vec![false; q];
    for &d in space.directions() {
        hit.iter_mut().for_each(|h| *h = false);
        for &s in members {
            hit[space.dot_idx(d, s) as usize] = true;
        }
        let alphas = if linear_only { 1 } else { q };
        if let Some(alpha) = (0..alphas).find(|&a| !hit[a]) {
            return Some(AffineHyperplane::new(space.field(), space.point(d), alpha as u8).expect("canonical normal"));
        }
    }
    None
}

/// First linear hyperplane `H(v)` containing all of `points`, if any.
fn linear_cover(space: &Space, points: &[Point]) -> Option<AffineHyperplane> {
    let rows: Vec<Vec<u8>> = points.iter().map(|p| p.coords().to_vec()).collect();
    let null = linalg::nullspace(space.field(), &rows, space.n());
    if null.is_empty() {
        return None;
    }
    let (reduced, _) = linalg::rref_from_back(space.field(), &null, space.n());
    let v = Point::new(reduced.last().expect("nonempty").clone());
    Some(AffineHyperplane::new(space.field(), v, 0).expect("nonzero normal"))
}

/// Evaluates the three conditions: not inside any affine hyperplane, meets
/// every affine hyperplane, and `|S| < q^{n-2}(q-1)`.
pub fn check_conditions(set: &PointSet) -> Result<ConditionReport> {
    theorem_preconditions(set)?;
    let space = set.space();
    let covering = space.affine_cover(&set.points())?;
    let missed = first_missed(space, set.indices(), false);
    Ok(ConditionReport::assemble(covering, missed, set.len(), size_bound(set.q(), set.n())))
}

/// Binary variant over linear hyperplanes only, with cap `2^{n-2}`. For
/// `q = 2` it agrees with [`check_conditions`] on `all_hold`.
pub fn check_conditions_binary(set: &PointSet) -> Result<ConditionReport> {
    if set.q() != 2 {
        return Err(Error::NotBinary(set.q()));
    }
    theorem_preconditions(set)?;
    let space = set.space();
    let covering = linear_cover(space, &set.points());
    let missed = first_missed(space, set.indices(), true);
    Ok(ConditionReport::assemble(covering, missed, set.len(), 1u64 << (set.n() - 2)))
}

/// True iff `S` meets every affine hyperplane. The origin may be a member.
pub fn is_affine_blocking(set: &PointSet) -> bool {
    first_missed(set.space(), set.indices(), false).is_none()
}

/// Reference evaluation of [`check_conditions`] that scans every hyperplane
/// point by point, without elimination.
pub fn check_conditions_by_enumeration(set: &PointSet) -> Result<ConditionReport> {
    theorem_preconditions(set)?;
    let space = set.space();
    let members = set.membership();
    let mut covering = None;
    let mut missed = None;
    for h in space.affine_hyperplanes() {
        let on: Vec<usize> = (0..space.size())
            .filter(|&x| space.dot_slices(h.normal().coords(), space.coords_of(x)) == h.alpha())
            .collect();
        let inside = on.iter().filter(|&&x| members.get(x)).count();
        if covering.is_none() && inside == set.len() {
            covering = Some(h.clone());
        }
        if missed.is_none() && inside == 0 {
            missed = Some(h);
        }
    }
    Ok(ConditionReport::assemble(covering, missed, set.len(), size_bound(set.q(), set.n())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn space(q: usize, n: usize) -> Arc<Space> {
        Arc::new(Space::new(q, n).unwrap())
    }

    fn pts(v: &[&[u8]]) -> Vec<Point> {
        v.iter().map(|c| Point::new(c.to_vec())).collect()
    }

    #[test]
    fn point_set_invariants() {
        let sp = space(3, 2);
        let s = PointSet::new(sp.clone(), &pts(&[&[2, 1], &[1, 0], &[0, 1]]), false).unwrap();
        assert_eq!(s.indices(), &[1, 3, 5]);
        assert!(s.contains(&Point::new(vec![2, 1])));
        assert!(!s.contains(&Point::new(vec![2, 2])));
        assert_eq!(
            PointSet::new(sp.clone(), &pts(&[&[1, 0], &[1, 0]]), false),
            Err(Error::DuplicatePoint(vec![1, 0]))
        );
        assert_eq!(PointSet::new(sp.clone(), &pts(&[&[0, 0]]), false), Err(Error::OriginPresent));
        assert!(PointSet::new(sp, &pts(&[&[0, 0]]), true).unwrap().contains_origin());
    }

    #[test]
    fn single_point_fails_first_two_conditions() {
        let sp = space(2, 5);
        let s = PointSet::new(sp, &pts(&[&[1, 0, 0, 0, 0]]), false).unwrap();
        let r = check_conditions(&s).unwrap();
        assert!(!r.affine_nondegenerate && !r.blocking && !r.all_hold);
        assert!(r.covering_hyperplane.is_some() && r.missed_hyperplane.is_some());
        assert!(r.size_ok);
    }

    #[test]
    fn precondition_errors() {
        let sp = space(2, 1);
        let s = PointSet::new(sp, &pts(&[&[1]]), false).unwrap();
        assert_eq!(check_conditions(&s), Err(Error::DimensionTooSmall(1)));
        let sp = space(3, 3);
        let empty = PointSet::new(sp.clone(), &[], false).unwrap();
        assert_eq!(check_conditions(&empty), Err(Error::EmptySet));
        let with_origin = PointSet::new(sp.clone(), &pts(&[&[0, 0, 0], &[1, 0, 0]]), true).unwrap();
        assert_eq!(check_conditions(&with_origin), Err(Error::OriginPresent));
        let s = PointSet::new(sp, &pts(&[&[1, 0, 0]]), false).unwrap();
        assert_eq!(check_conditions_binary(&s), Err(Error::NotBinary(3)));
    }

    #[test]
    fn hyperplane_minus_origin_is_degenerate() {
        let sp = space(2, 5);
        for &d in sp.directions().iter().take(6) {
            let members: Vec<usize> = (1..sp.size()).filter(|&x| sp.dot_idx(d, x) == 0).collect();
            let s = PointSet::from_indices(sp.clone(), members, false).unwrap();
            let r = check_conditions_binary(&s).unwrap();
            assert!(!r.affine_nondegenerate);
            assert_eq!(r.covering_hyperplane.unwrap().normal(), &sp.point(d));
        }
    }

    #[test]
    fn blocking_examples() {
        let sp = space(2, 2);
        let s = PointSet::new(sp.clone(), &pts(&[&[0, 0], &[1, 0], &[0, 1]]), true).unwrap();
        let brute = sp.affine_hyperplanes().iter().all(|h| s.points().iter().any(|x| sp.contains(h, x).unwrap()));
        assert!(brute);
        assert!(is_affine_blocking(&s));
        let s = PointSet::new(sp, &pts(&[&[0, 0], &[1, 1]]), true).unwrap();
        assert!(!is_affine_blocking(&s));
    }

    #[test]
    fn sets_at_or_below_jameson_bound_never_block() {
        let mut rng = StdRng::seed_from_u64(11);
        for (q, n) in [(2, 3), (3, 2), (3, 3), (4, 2)] {
            let sp = space(q, n);
            for _ in 0..200 {
                let k = rng.gen_range(1..=n * (q - 1));
                let idx: Vec<usize> = (0..k).map(|_| rng.gen_range(0..sp.size())).collect();
                let s = PointSet::from_indices(sp.clone(), idx, true).unwrap();
                assert!(!is_affine_blocking(&s));
            }
        }
    }

    #[test]
    fn fast_and_enumerated_checks_agree() {
        let mut rng = StdRng::seed_from_u64(5);
        for (q, n) in [(2, 3), (2, 4), (3, 2), (3, 3), (4, 2)] {
            let sp = space(q, n);
            for _ in 0..150 {
                let k = rng.gen_range(1..sp.size());
                let idx: Vec<usize> = (0..k).map(|_| rng.gen_range(1..sp.size())).collect();
                let s = PointSet::from_indices(sp.clone(), idx, false).unwrap();
                let fast = check_conditions(&s).unwrap();
                assert_eq!(fast, check_conditions_by_enumeration(&s).unwrap());
                assert_eq!(fast.blocking, is_affine_blocking(&s));
                if q == 2 {
                    assert_eq!(fast.all_hold, check_conditions_binary(&s).unwrap().all_hold);
                }
            }
        }
    }

    #[test]
    fn binary_and_general_agree_on_all_subsets_of_f2_4() {
        let sp = space(2, 4);
        for mask in 1u32..(1 << 15) {
            let idx: Vec<usize> = (0..15).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
            let s = PointSet::from_indices(sp.clone(), idx, false).unwrap();
            assert_eq!(check_conditions(&s).unwrap().all_hold, check_conditions_binary(&s).unwrap().all_hold);
        }
    }
}
