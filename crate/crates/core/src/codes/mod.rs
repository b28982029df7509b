//! The code `C_f` spanned by `c(u, v) = (u f(x) + v.x)` over the nonzero
//! points `x`, with `f` the indicator of a point set.
//!
//! Coordinate `x` of a codeword sits at position `index(x) - 1`, so the
//! coordinates run over F_q^n \ {0} in canonical index order.

mod walsh;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Point, Space};
use crate::gf::Elem;
use crate::linalg;
use crate::mask::BitMask;
use crate::sets::PointSet;

pub use walsh::{ding_ab_inequality, is_bent, walsh_transform, DingAbReport, WalshSummary};

/// A message `(u, v)`; the codeword it produces is `c(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Message {
    pub u: Elem,
    pub v: Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword {
    pub entries: Vec<Elem>,
    pub support: BitMask,
}

impl Codeword {
    pub fn weight(&self) -> usize {
        self.support.count_ones()
    }
}

#[derive(Clone, Debug)]
pub struct CodeCf {
    set: PointSet,
    // f over all canonical indices; f[0] = 0
    f: Vec<Elem>,
}

impl CodeCf {
    pub fn new(set: PointSet) -> Result<Self> {
        if set.contains_origin() {
            return Err(Error::OriginPresent);
        }
        let mut f = vec![0; set.space().size()];
        for &i in set.indices() {
            f[i] = 1;
        }
        Ok(CodeCf { set, f })
    }

    pub fn set(&self) -> &PointSet {
        &self.set
    }

    pub fn space(&self) -> &Space {
        self.set.space()
    }

    pub fn q(&self) -> usize {
        self.set.q()
    }

    pub fn n(&self) -> usize {
        self.set.n()
    }

    /// `q^n - 1`.
    pub fn length(&self) -> usize {
        self.space().size() - 1
    }

    /// `f` at the codeword coordinates, in coordinate order.
    pub fn f_table(&self) -> &[Elem] {
        &self.f[1..]
    }

    /// `f` over every point of F_q^n, the origin included.
    pub fn indicator(&self) -> &[Elem] {
        &self.f
    }

    #[inline]
    fn entry(&self, u: Elem, v_idx: usize, x: usize) -> Elem {
        let space = self.space();
        let field = space.field();
        field.add(field.mul(u, self.f[x]), space.dot_idx(v_idx, x))
    }

    fn support_of(&self, u: Elem, v_idx: usize) -> BitMask {
        let mut m = BitMask::new(self.length());
        for x in 1..=self.length() {
            if self.entry(u, v_idx, x) != 0 {
                m.set(x - 1);
            }
        }
        m
    }

    fn weight_of(&self, u: Elem, v_idx: usize) -> usize {
        (1..=self.length()).filter(|&x| self.entry(u, v_idx, x) != 0).count()
    }

    pub fn codeword(&self, u: Elem, v: &Point) -> Result<Codeword> {
        let space = self.space();
        space.field().check(u as usize)?;
        let v_idx = space.validate(v)?;
        let entries: Vec<Elem> = (1..=self.length()).map(|x| self.entry(u, v_idx, x)).collect();
        let mut support = BitMask::new(self.length());
        entries.iter().enumerate().filter(|(_, &e)| e != 0).for_each(|(i, _)| support.set(i));
        Ok(Codeword { entries, support })
    }

    /// Rows `c(1, 0), c(0, e_1), ..., c(0, e_n)`.
    pub fn generator_rows(&self) -> Vec<Vec<Elem>> {
        let n = self.n();
        let q = self.q();
        let mut rows = vec![self.f_table().to_vec()];
        for i in 0..n {
            let e_idx = q.pow(i as u32);
            rows.push((1..=self.length()).map(|x| self.entry(0, e_idx, x)).collect());
        }
        rows
    }

    /// Rank of the generator matrix over F_q.
    pub fn dimension(&self) -> usize {
        linalg::rank(self.space().field(), &self.generator_rows(), self.length())
    }

    /// Whether `f(x) = w.x` for some `w`, by comparison against every
    /// linear functional.
    pub fn is_linear(&self) -> bool {
        let space = self.space();
        (0..space.size()).any(|w| (0..space.size()).all(|x| space.dot_idx(w, x) == self.f[x]))
    }

    pub fn weight_profile(&self) -> WeightProfile {
        let space = self.space();
        let q = self.q();
        let mut distribution = (0..space.size())
            .into_par_iter()
            .map(|v| {
                let mut local = BTreeMap::new();
                for u in 0..q {
                    *local.entry(self.weight_of(u as Elem, v)).or_insert(0u64) += 1;
                }
                local
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (w, c) in b {
                    *a.entry(w).or_insert(0) += c;
                }
                a
            });
        distribution.entry(0).or_insert(0);
        let w_min = distribution.iter().find(|&(&w, &c)| w > 0 && c > 0).map(|(&w, _)| w);
        let w_max = distribution.keys().copied().max().unwrap_or(0);
        let dimension = self.dimension();
        WeightProfile {
            w_min,
            w_max,
            pairs: distribution.values().sum(),
            injective: dimension == self.n() + 1,
            distribution,
        }
    }

    /// `w_max / w_min < q / (q - 1)`, decided as `w_max (q-1) < w_min q`.
    pub fn ab_condition(&self) -> Result<AbReport> {
        AbReport::from_profile(self.q(), &self.weight_profile())
    }

    /// Canonical messages, one per scalar class of nonzero codewords, in
    /// increasing index of `(u, v)` read as a point of F_q^{n+1} with `u`
    /// as coordinate 0.
    pub fn class_messages(&self) -> Vec<(Elem, usize)> {
        let space = self.space();
        let full = self.dimension() == self.n() + 1;
        let dirs = space.directions();
        let mut out = Vec::new();
        let mut di = 0;
        for v in 0..space.size() {
            let canonical_v = di < dirs.len() && dirs[di] == v;
            if canonical_v {
                di += 1;
                out.push((0, v));
            }
            if full {
                out.push((1, v));
            }
        }
        out
    }

    /// Exhaustive minimality check over all ordered pairs of distinct scalar
    /// classes. The witness is the lexicographically least pair of class
    /// positions `(containing, contained)`.
    pub fn is_minimal(&self) -> MinimalityReport {
        let classes = self.class_messages();
        let supports: Vec<BitMask> = classes.par_iter().map(|&(u, v)| self.support_of(u, v)).collect();
        let weights: Vec<usize> = supports.iter().map(BitMask::count_ones).collect();
        let hit = (0..classes.len()).into_par_iter().find_map_first(|a| {
            (0..classes.len())
                .find(|&b| b != a && weights[b] <= weights[a] && supports[b].is_subset_of(&supports[a]))
                .map(|b| (a, b))
        });
        let space = self.space();
        let witness = hit.map(|(a, b)| MinimalityWitness {
            containing: Message { u: classes[a].0, v: space.point(classes[a].1) },
            contained: Message { u: classes[b].0, v: space.point(classes[b].1) },
        });
        MinimalityReport { is_minimal: witness.is_none(), witness, class_count: classes.len() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightProfile {
    /// Least nonzero weight; `None` only for the zero code.
    pub w_min: Option<usize>,
    pub w_max: usize,
    /// Weight -> number of pairs `(u, v)` producing it, zero word included.
    pub distribution: BTreeMap<usize, u64>,
    /// Always `q^{n+1}`.
    pub pairs: u64,
    /// False when distinct pairs can give the same codeword.
    pub injective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbReport {
    pub holds: bool,
    pub w_min: usize,
    pub w_max: usize,
    /// `w_max (q - 1)`.
    pub lhs: u64,
    /// `w_min q`.
    pub rhs: u64,
}

impl AbReport {
    pub fn from_profile(q: usize, profile: &WeightProfile) -> Result<Self> {
        let w_min = profile.w_min.ok_or(Error::ZeroCode)?;
        let lhs = profile.w_max as u64 * (q as u64 - 1);
        let rhs = w_min as u64 * q as u64;
        Ok(AbReport { holds: lhs < rhs, w_min, w_max: profile.w_max, lhs, rhs })
    }
}

/// `supp c(contained) ⊆ supp c(containing)` with the two in different
/// scalar classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalityWitness {
    pub containing: Message,
    pub contained: Message,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    pub is_minimal: bool,
    pub witness: Option<MinimalityWitness>,
    pub class_count: usize,
}
