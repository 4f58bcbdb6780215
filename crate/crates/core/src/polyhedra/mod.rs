//! Exact polyhedral cones in `R^n x R` over the ordered field.

mod complex;
mod cone;
mod dd;
pub mod linalg;
pub mod lp;

pub use complex::{first_bad_intersection, meets_properly, polyhedron_contains};
pub(crate) use cone::last_coordinate_normal;
pub use cone::{primitive_integer, Cone, Face, FaceLattice, HalfSpace, SlicePolyhedron};
pub use dd::double_description;

use thiserror::Error;

use linalg::Vector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("lattice rank must be at least 1")]
    ZeroRank,
    #[error("expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("half-space {0} has zero normal")]
    DegenerateHalfSpace(usize),
    #[error("cone contains a line")]
    NotPointed,
    #[error("cone leaves the half-space s >= 0")]
    NotInUpperHalfSpace,
    #[error("recession direction is not rational")]
    IrrationalRecession,
}

/// Rays and lineality basis of the half-spaces together with `s >= 0`.
pub fn dd_convert(
    halfspaces: &[HalfSpace],
    n: usize,
) -> Result<(Vec<Vector>, Vec<Vector>), PolyError> {
    let c = Cone::from_halfspaces(n, halfspaces)?;
    Ok((c.rays().to_vec(), c.lineality().to_vec()))
}
