use crate::fincat::{colim_set, Cocone, SetValuedFunctor};

/// A finite cartesian base: objects are finite sets of elements, with
/// products, a terminal object and colimits of set-valued diagrams.
pub trait CartBase {
    fn name(&self) -> &'static str;

    /// Cardinality of the product; the pair `(a, b)` sits at `a·|B| + b`.
    fn product(&self, a: usize, b: usize) -> usize {
        a * b
    }

    fn pair(&self, a: usize, b: usize, size_b: usize) -> usize {
        a * size_b + b
    }

    fn unpair(&self, e: usize, size_b: usize) -> (usize, usize) {
        (e / size_b, e % size_b)
    }

    fn terminal(&self) -> usize {
        1
    }

    fn colimit(&self, f: &SetValuedFunctor) -> Cocone;
}

/// Finite sets, the reference base.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FinSets;

impl CartBase for FinSets {
    fn name(&self) -> &'static str {
        "finite sets"
    }

    fn colimit(&self, f: &SetValuedFunctor) -> Cocone {
        colim_set(f)
    }
}
