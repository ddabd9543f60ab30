//! Words over `[1]`, arrows and simplices between them, and the labeled
//! planar posets they generate.
//!
//! A word is a monotone bit string `w: [n] → [1]`. An arrow `w → w'`
//! is a monotone `φ: [n'] → [n]` with `w' = w ∘ φ`. Each word gives a
//! discrete set of `x`/`y` vertices, each arrow a set of disjoint edges
//! between two floors, and a simplex the free poset on the glued floors.

mod arrow;
mod components;
mod emit;
mod eval;
mod flat;
mod fold;
mod involution;
mod laws;
mod poset;
mod simplex;
mod syntax;
mod word;

pub use arrow::BmArrow;
pub use components::{classify_components, Component, ComponentKind, ComponentReport};
pub use emit::{shape_to_dot, ShapeJson, VertexJson};
pub use eval::{eval_shape, segal_fibrous_check, FibrousBounds, FibrousReport};
pub use flat::{correspondence_poset, flat_compose_check, middle_only_components, shape_glues_over_2};
pub use fold::{fold_shape, psi, Folded, Psi};
pub use involution::{ass_op_compare, piass_compare, OrderIso};
pub use laws::{check_cap_cup, check_dual_segal, check_inner_faces, check_structure, inner_face, loses_multiplication, InnerFace, StructureCounts};
pub use poset::{shape, shape_arrow, shape_vertex, ShapePoset};
pub use simplex::{for_each_extension, monotone_maps, simplices, words_up_to, BmSimplex};
pub use syntax::{parse_simplex, SIMPLEX_EBNF};
pub use word::BmWord;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::CatError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("invalid word: {0}")]
    BadWord(String),
    #[error("invalid map: {0}")]
    BadMap(String),
    #[error("vertex {0} has two incoming or two outgoing covering arrows")]
    Degree(String),
    #[error("covering graph has a cycle")]
    Cycle,
    #[error("simplex is not in Ass: {0}")]
    NotInAss(String),
    #[error("simplex is not in LM: {0}")]
    NotInLm(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("law violated: {0}")]
    Law(String),
    #[error("parse error at {pos}: {message} (found {token:?})")]
    Parse { pos: usize, token: String, message: String },
    #[error(transparent)]
    Cat(#[from] CatError),
}

/// Vertex kinds: white `x_r`, black `y_r`, and the black `m`-vertex `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    X,
    Y,
    M,
}

impl Kind {
    /// `y`-type in the component classification (black points).
    pub fn is_black(self) -> bool {
        self != Kind::X
    }
}

/// A vertex label: floor, kind and 1-based index (`0` for the `m`-vertex).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub floor: usize,
    pub kind: Kind,
    pub r: usize,
}

impl Vertex {
    pub fn x(floor: usize, r: usize) -> Self {
        Vertex { floor, kind: Kind::X, r }
    }

    pub fn y(floor: usize, r: usize) -> Self {
        Vertex { floor, kind: Kind::Y, r }
    }

    pub fn m(floor: usize) -> Self {
        Vertex { floor, kind: Kind::M, r: 0 }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::X => write!(f, "x{}@{}", self.r, self.floor),
            Kind::Y => write!(f, "y{}@{}", self.r, self.floor),
            Kind::M => write!(f, "y@{}", self.floor),
        }
    }
}
