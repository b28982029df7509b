//! Points, dot products and affine hyperplanes of F_q^n.
//!
//! Points carry a canonical index `sum coords[i] * q^i` (coordinate 0 least
//! significant). That order is the coordinate order of every codeword.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{digits, Elem, Field};
use crate::linalg;

/// Largest ambient space the crate will tabulate.
pub const MAX_POINTS: usize = 1 << 24;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    coords: Vec<Elem>,
}

impl Point {
    pub fn new(coords: Vec<Elem>) -> Self {
        Point { coords }
    }

    pub fn from_index(q: usize, n: usize, index: usize) -> Self {
        Point { coords: digits(index, q, n) }
    }

    pub fn origin(n: usize) -> Self {
        Point { coords: vec![0; n] }
    }

    /// The standard basis vector `e_{i+1}` (zero-based `i`) scaled by `lambda`.
    pub fn basis(n: usize, i: usize, lambda: Elem) -> Self {
        let mut coords = vec![0; n];
        coords[i] = lambda;
        Point { coords }
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn index(&self, q: usize) -> usize {
        self.coords.iter().rev().fold(0, |acc, &c| acc * q + c as usize)
    }

    /// Nonzero and a multiple of some standard basis vector.
    pub fn is_axis_multiple(&self) -> bool {
        self.coords.iter().filter(|&&c| c != 0).count() == 1
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// Space-separated encodings, the point line format of set files.
impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Accepts whitespace- or comma-separated encodings. Range checks against a
/// field happen in [`Space::validate`].
impl FromStr for Point {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let coords = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u8>().map_err(|e| format!("bad element {t:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if coords.is_empty() {
            return Err("empty point".into());
        }
        Ok(Point { coords })
    }
}

/// `{x : v.x = alpha}` with `v` scaled so its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineHyperplane {
    v: Point,
    alpha: Elem,
}

impl AffineHyperplane {
    pub fn new(field: &Field, v: Point, alpha: Elem) -> Result<Self> {
        field.check(alpha as usize)?;
        for &c in v.coords() {
            field.check(c as usize)?;
        }
        let lead = v
            .coords()
            .iter()
            .copied()
            .find(|&c| c != 0)
            .ok_or_else(|| Error::ParameterOutOfRange("hyperplane normal must be nonzero".into()))?;
        let s = field.inv(lead)?;
        let coords = v.coords().iter().map(|&c| field.mul(c, s)).collect();
        Ok(AffineHyperplane { v: Point::new(coords), alpha: field.mul(alpha, s) })
    }

    pub fn normal(&self) -> &Point {
        &self.v
    }

    pub fn alpha(&self) -> Elem {
        self.alpha
    }

    /// A linear hyperplane `H(v)`.
    pub fn is_linear(&self) -> bool {
        self.alpha == 0
    }
}

impl fmt::Debug for AffineHyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}.x = {}", self.v, self.alpha)
    }
}

/// The ambient space F_q^n with every point tabulated.
#[derive(Clone, Debug)]
pub struct Space {
    field: Field,
    n: usize,
    size: usize,
    coords: Vec<Elem>,
    directions: Vec<usize>,
}

impl Space {
    pub fn new(q: usize, n: usize) -> Result<Self> {
        Self::with_field(Field::new(q)?, n)
    }

    pub fn with_field(field: Field, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ParameterOutOfRange("dimension n must be >= 1".into()));
        }
        let q = field.order();
        let size = (0..n)
            .try_fold(1usize, |acc, _| acc.checked_mul(q).filter(|&s| s <= MAX_POINTS))
            .ok_or_else(|| Error::ParameterOutOfRange(format!("q^n = {q}^{n} exceeds {MAX_POINTS}")))?;
        let mut coords = Vec::with_capacity(size * n);
        for idx in 0..size {
            coords.extend(digits(idx, q, n));
        }
        let directions = (1..size)
            .filter(|&idx| coords[idx * n..(idx + 1) * n].iter().find(|&&c| c != 0) == Some(&1))
            .collect();
        Ok(Space { field, n, size, coords, directions })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> usize {
        self.field.order()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `q^n`, the number of points including the origin.
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn coords_of(&self, index: usize) -> &[Elem] {
        &self.coords[index * self.n..(index + 1) * self.n]
    }

    pub fn point(&self, index: usize) -> Point {
        Point::new(self.coords_of(index).to_vec())
    }

    /// Checks dimension and element ranges, returning the canonical index.
    pub fn validate(&self, x: &Point) -> Result<usize> {
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: x.dim() });
        }
        for &c in x.coords() {
            self.field.check(c as usize)?;
        }
        Ok(x.index(self.q()))
    }

    #[inline]
    pub fn dot_slices(&self, u: &[Elem], v: &[Elem]) -> Elem {
        u.iter().zip(v).fold(0, |acc, (&a, &b)| self.field.add(acc, self.field.mul(a, b)))
    }

    #[inline]
    pub fn dot_idx(&self, a: usize, b: usize) -> Elem {
        self.dot_slices(self.coords_of(a), self.coords_of(b))
    }

    pub fn dot(&self, u: &Point, v: &Point) -> Result<Elem> {
        self.validate(u)?;
        self.validate(v)?;
        Ok(self.dot_slices(u.coords(), v.coords()))
    }

    /// Points in increasing canonical index; without the origin this is the
    /// coordinate order of codewords.
    pub fn points(&self, include_origin: bool) -> Vec<Point> {
        let start = usize::from(!include_origin);
        (start..self.size).map(|i| self.point(i)).collect()
    }

    /// Indices of the canonical normals (first nonzero coordinate 1), ascending.
    pub fn directions(&self) -> &[usize] {
        &self.directions
    }

    /// `q (q^n - 1) / (q - 1)`.
    pub fn hyperplane_count(&self) -> usize {
        self.directions.len() * self.q()
    }

    /// Hyperplane number `direction_pos * q + alpha` in enumeration order.
    pub fn hyperplane(&self, k: usize) -> AffineHyperplane {
        let q = self.q();
        AffineHyperplane { v: self.point(self.directions[k / q]), alpha: (k % q) as Elem }
    }

    /// Every affine hyperplane once: normals by index, then alpha ascending.
    pub fn affine_hyperplanes(&self) -> Vec<AffineHyperplane> {
        (0..self.hyperplane_count()).map(|k| self.hyperplane(k)).collect()
    }

    pub fn contains(&self, h: &AffineHyperplane, x: &Point) -> Result<bool> {
        Ok(self.dot(h.normal(), x)? == h.alpha())
    }

    /// First hyperplane (in enumeration order) containing all of `points`,
    /// found by solving `v.s - alpha = 0` for all `s` by elimination.
    pub fn affine_cover(&self, points: &[Point]) -> Result<Option<AffineHyperplane>> {
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        let f = &self.field;
        let minus_one = f.neg(1);
        let mut rows = Vec::with_capacity(points.len());
        for s in points {
            self.validate(s)?;
            let mut row = s.coords().to_vec();
            row.push(minus_one);
            rows.push(row);
        }
        let null = linalg::nullspace(f, &rows, self.n + 1);
        if null.is_empty() {
            return Ok(None);
        }
        // v determines alpha, so the v-parts of the null basis are independent
        let vparts: Vec<Vec<Elem>> = null.iter().map(|x| x[..self.n].to_vec()).collect();
        let (reduced, _) = linalg::rref_from_back(f, &vparts, self.n);
        let v = Point::new(reduced.last().expect("nonempty null space").clone());
        let alpha = self.dot_slices(v.coords(), points[0].coords());
        AffineHyperplane::new(f, v, alpha).map(Some)
    }

    /// Reference implementation of [`Space::affine_cover`] by scanning all
    /// hyperplanes.
    pub fn affine_cover_by_enumeration(&self, points: &[Point]) -> Result<Option<AffineHyperplane>> {
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        let idx = points.iter().map(|p| self.validate(p)).collect::<Result<Vec<_>>>()?;
        for &d in &self.directions {
            let alpha = self.dot_idx(d, idx[0]);
            if idx.iter().all(|&s| self.dot_idx(d, s) == alpha) {
                return Ok(Some(AffineHyperplane { v: self.point(d), alpha }));
            }
        }
        Ok(None)
    }
}
