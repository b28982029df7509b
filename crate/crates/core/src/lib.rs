//! Minimal linear codes `C_f` built from indicator functions of point sets
//! over finite fields.

pub mod codes;
pub mod error;
pub mod geometry;
pub mod gf;
pub mod linalg;
pub mod mask;
pub mod parallel;
pub mod report;
pub mod search;
pub mod sets;

pub use error::{Error, Result};
pub use geometry::{AffineHyperplane, Point, Space};
pub use gf::{Elem, Field};
