//! Quivers over a finite category `X` with values in finite sets: the
//! coend tensor, its unit and coherence maps, precategories, Segal
//! objects, the slice model and the segment categories `ℰ(s)`.
//!
//! A quiver `A` is a set-valued functor on `X^op × X`; `A(x, y)` plays the
//! role of arrows `x → y`. Elements are indices `0..|A(x, y)|`.

mod base;
pub mod json;
mod monoidal;
mod precat;
pub mod random;
mod segal;
mod segment;
mod slice;
mod tensor;

pub use base::{CartBase, FinSets};
pub use json::QuiverJson;
pub use monoidal::{associator, Associator, left_unitor, pentagon_holds, right_unitor, tensor_map, triangle_holds};
pub use precat::{check_precategory, LawFailure, PrecatReport, Precategory};
pub use segal::{check_segal_object, from_segal, segal_round_trip, to_segal, RoundTrip, SegalObject, SegalReport};
pub use segment::{ArrowKind, modot_check, preserves_squares, segment_cat, segment_functor, spans_to_segment_functor, SegmentCat, Square};
pub use slice::{check_slice_monoidal, compare_slice_model, convolution, slice_naturality, totalize, SliceIso, Span};
pub use tensor::{act, lift, tensor, unit_quiver, Act, Tensor};

use std::sync::Arc;

use thiserror::Error;

use crate::fincat::{opposite, product, twisted_arrows, Arr, CatError, FinCat, Obj, SetValuedFunctor, Twisted};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuivError {
    #[error("quivers live over different categories")]
    Mismatch,
    #[error("objects must form a discrete category: {0}")]
    NotDiscrete(String),
    #[error("map is not well defined on colimit classes at {0}")]
    NotWellDefined(String),
    #[error("map is not a bijection at {0}")]
    NotBijective(String),
    #[error("not a Segal object: {0}")]
    NotSegal(String),
    #[error("invalid data: {0}")]
    Invalid(String),
    #[error(transparent)]
    Cat(#[from] CatError),
}

/// The category `X` together with `X^op × X` and `Tw(X)^op`, shared by
/// every quiver over `X`.
#[derive(Debug)]
pub struct Ambient {
    pub x: Arc<FinCat>,
    /// `X^op × X`; object `(x, y)` at `x·|X| + y`, arrow `(p, q)` at `p·|X₁| + q`.
    pub xx: Arc<FinCat>,
    pub tw: Twisted,
    pub tw_op: Arc<FinCat>,
}

impl Ambient {
    pub fn new(x: Arc<FinCat>) -> Arc<Ambient> {
        let xx = Arc::new(product(&opposite(&x), &x));
        let tw = twisted_arrows(&x);
        let tw_op = Arc::new(opposite(&tw.cat));
        Arc::new(Ambient { x, xx, tw, tw_op })
    }

    pub fn n(&self) -> usize {
        self.x.num_objects()
    }

    pub fn cell(&self, x: Obj, y: Obj) -> usize {
        x * self.n() + y
    }

    /// The arrow of `X^op × X` acting by `p: x' → x` on the left and
    /// `q: y → y'` on the right.
    pub fn arrow(&self, p: Arr, q: Arr) -> Arr {
        p * self.x.num_arrows() + q
    }

    pub fn same(&self, other: &Ambient) -> bool {
        std::ptr::eq(self, other) || self.x == other.x
    }

    pub fn is_discrete(&self) -> bool {
        self.x.is_discrete()
    }
}

/// A set-valued functor on `X^op × X`.
#[derive(Debug, Clone)]
pub struct Quiver {
    pub amb: Arc<Ambient>,
    pub body: SetValuedFunctor,
}

impl Quiver {
    pub fn new(amb: Arc<Ambient>, body: SetValuedFunctor) -> Result<Self, QuivError> {
        if *body.dom != *amb.xx {
            return Err(QuivError::Mismatch);
        }
        body.validate()?;
        Ok(Quiver { amb, body })
    }

    /// A quiver over a discrete `X` from a table of cell sizes.
    pub fn discrete(amb: Arc<Ambient>, sizes: &[Vec<usize>]) -> Result<Self, QuivError> {
        if !amb.is_discrete() {
            return Err(QuivError::NotDiscrete("table quivers need discrete objects".into()));
        }
        let n = amb.n();
        if sizes.len() != n || sizes.iter().any(|r| r.len() != n) {
            return Err(QuivError::Invalid(format!("size table must be {n}×{n}")));
        }
        let flat: Vec<usize> = sizes.iter().flatten().copied().collect();
        let maps = (0..amb.xx.num_arrows()).map(|f| (0..flat[amb.xx.src(f)]).collect()).collect();
        Quiver::new(amb.clone(), SetValuedFunctor::new(amb.xx.clone(), flat, maps)?)
    }

    pub fn size(&self, x: Obj, y: Obj) -> usize {
        self.body.sizes[self.amb.cell(x, y)]
    }

    /// Action of `p: x' → x` and `q: y → y'` on `e ∈ A(x, y)`.
    pub fn act(&self, p: Arr, q: Arr, e: usize) -> usize {
        self.body.maps[self.amb.arrow(p, q)][e]
    }

    pub fn total(&self) -> usize {
        self.body.total()
    }

    pub fn same_shape(&self, other: &Quiver) -> bool {
        self.amb.same(&other.amb) && self.body.sizes == other.body.sizes
    }
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.amb.same(&other.amb) && self.body == other.body
    }
}

/// Componentwise functions `A(x, y) → B(x, y)`, indexed by cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverMap {
    pub comps: Vec<Vec<usize>>,
}

impl QuiverMap {
    pub fn identity(a: &Quiver) -> Self {
        QuiverMap { comps: a.body.sizes.iter().map(|&n| (0..n).collect()).collect() }
    }

    pub fn then(&self, other: &QuiverMap) -> QuiverMap {
        QuiverMap {
            comps: self.comps.iter().zip(&other.comps).map(|(f, g)| f.iter().map(|&e| g[e]).collect()).collect(),
        }
    }

    pub fn is_natural(&self, a: &Quiver, b: &Quiver) -> bool {
        a.amb.same(&b.amb) && a.body.is_natural(&b.body, &self.comps)
    }

    pub fn is_bijective(&self, b: &Quiver) -> bool {
        self.comps.iter().zip(&b.body.sizes).all(|(f, &n)| {
            let mut hit = vec![false; n];
            f.len() == n && f.iter().all(|&e| !std::mem::replace(&mut hit[e], true))
        })
    }

    pub fn inverse(&self) -> QuiverMap {
        QuiverMap {
            comps: self
                .comps
                .iter()
                .map(|f| {
                    let mut inv = vec![0; f.len()];
                    for (e, &t) in f.iter().enumerate() {
                        inv[t] = e;
                    }
                    inv
                })
                .collect(),
        }
    }
}
