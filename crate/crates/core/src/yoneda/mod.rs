//! Modules over precategories, presheaves as modules over the opposite,
//! the Yoneda embedding and lemma, endomorphism precategories, completion
//! and the folding of bimodules into left modules.
//!
//! Everything is set-valued: presheaf isomorphisms are bijections, spaces
//! of objects are finite sets.

mod complete;
mod fold;
mod module;
mod presheaf;
pub mod random;

pub use complete::{completeness_check, completion, endomorphism_precat, jay, Completion, Endomorphisms};
pub use fold::{fold_algebra_check, monoid_table, FoldReport};
pub use module::{module_iso, module_maps, opposite_precat, Module, ModuleJson, ModuleMap};
pub use presheaf::{
    free_adjunction_counts, free_module, fully_faithful_check, representable, representable_is_free, yoneda_lemma_check, yoneda_map,
    yoneda_presheaf, Presheaves, YonedaReport,
};

use thiserror::Error;

use crate::fincat::CatError;
use crate::quiv::QuivError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum YonedaError {
    #[error("modules over different precategories")]
    Mismatch,
    #[error("not a module: {0}")]
    NotAModule(String),
    #[error("objects must form a discrete category: {0}")]
    NotDiscrete(String),
    #[error("expected a one-object precategory")]
    NotMonoid,
    #[error(transparent)]
    Quiv(#[from] QuivError),
    #[error(transparent)]
    Cat(#[from] CatError),
}
