//! Exact region representations and the containment / emptiness / projection
//! algebra the satisfaction checkers reduce to.
//!
//! Five region families are provided, matching the payloads of the embedding
//! methods: closed boxes ([`BoxRegion`]), open balls ([`OpenBall`]),
//! axis-aligned cones ([`AlCone`]), H-polyhedra with possibly strict faces
//! ([`HPolyhedron`]) and per-dimension stacks of planar slices
//! ([`BandStack`]). Diagonal affine maps ([`AffineDiagMap`]) cover role
//! transformations. Everything is exact over rationals; the only square
//! roots appear inside ball comparisons and are resolved by sign tests.

mod affine;
mod ball;
mod boxes;
mod cone;
mod hpoly;
mod vector;

pub mod band;

pub use affine::AffineDiagMap;
pub use ball::{ball_subset, ball_translate, balls_disjoint, lens_empty, lens_subset_ball, OpenBall};
pub use boxes::BoxRegion;
pub use cone::{AlCone, ConeAxis};
pub use hpoly::{FmBudget, HPolyhedron, LinearConstraint, Rel};
pub use band::BandStack;
pub use vector::RVector;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("operation requires an even dimension, got {0}")]
    OddDimension(usize),
    #[error("Fourier-Motzkin row cap exceeded: {rows} rows against cap {cap}")]
    RowCapExceeded { rows: usize, cap: usize },
    #[error("{0}")]
    Invalid(String),
}

pub(crate) fn check_dims(a: usize, b: usize) -> Result<(), GeomError> {
    if a == b {
        Ok(())
    } else {
        Err(GeomError::DimMismatch(a, b))
    }
}
