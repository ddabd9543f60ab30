//! Correspondences between categories: a kernel `K(c, d)` that is a
//! presheaf in `c` and covariant in `d`, its encoding as a category over
//! the segment `[1]`, representability, and the comparison categories
//! `ℰ_φ(s)` built from segment categories.

mod correspondence;
mod ephi;

pub mod random;
mod represent;

pub use correspondence::{
    correspondence_iso, from_over_segment, over_segment_iso, to_over_segment, Correspondence, CorrespondenceJson, OverSegment,
    OverSegmentJson,
};

pub use ephi::{build_e_phi, cartesian_functors, e_phi_restriction_check, extend, EPhi, ProductCone, RestrictionReport};
pub use represent::{graph_correspondence, right_representable, Represented};

use thiserror::Error;

use crate::fincat::CatError;
use crate::quiv::QuivError;
use crate::shapes::ShapeError;
use crate::yoneda::YonedaError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorrError {
    #[error("arrow from the target side back to the source side: {0}")]
    BackwardArrow(String),
    #[error("category is not complete: {0}")]
    NotComplete(String),
    #[error("{0} is not in LM")]
    NotInLm(String),
    #[error("invalid correspondence: {0}")]
    Invalid(String),
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error(transparent)]
    Quiv(#[from] QuivError),
    #[error(transparent)]
    Yoneda(#[from] YonedaError),
    #[error(transparent)]
    Shape(#[from] ShapeError),
}
