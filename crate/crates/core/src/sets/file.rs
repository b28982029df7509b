//! Text format for point sets.
//!
//! ```text
//! # comment
//! q n
//! c_1 c_2 ... c_n
//! ...
//! ```
//!
//! Every non-comment line after the header holds one point as `n`
//! space-separated element encodings. `#` starts a comment anywhere on a line.
//! Duplicate points are rejected.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{Point, Space};

use super::PointSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFile {
    pub q: usize,
    pub n: usize,
    pub points: Vec<Point>,
}

impl SetFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing `q n` header".into() })?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse { line: hl, msg: format!("bad header token {t:?}") }))
            .collect::<Result<_>>()?;
        let [q, n] = nums[..] else {
            return Err(Error::Parse { line: hl, msg: "header must be `q n`".into() });
        };

        let mut points = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (ln, line) in lines {
            let coords: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse { line: ln, msg: format!("bad element {t:?}") }))
                .collect::<Result<_>>()?;
            if coords.len() != n {
                return Err(Error::Parse { line: ln, msg: format!("expected {n} coordinates, found {}", coords.len()) });
            }
            if let Some(&bad) = coords.iter().find(|&&c| c >= q) {
                return Err(Error::Parse { line: ln, msg: format!("element {bad} out of range for q = {q}") });
            }
            let p = Point::new(coords.into_iter().map(|c| c as u8).collect());
            if !seen.insert(p.clone()) {
                return Err(Error::DuplicatePoint(p.coords().to_vec()));
            }
            points.push(p);
        }
        Ok(SetFile { q, n, points })
    }

    pub fn into_point_set(self, allows_origin: bool) -> Result<PointSet> {
        let space = Arc::new(Space::new(self.q, self.n)?);
        PointSet::new(space, &self.points, allows_origin)
    }
}

/// Renders a set in canonical index order, optionally preceded by comment
/// lines.
pub fn render(set: &PointSet, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "{} {}", set.q(), set.n());
    for p in set.points() {
        let _ = writeln!(out, "{p}");
    }
    out
}
