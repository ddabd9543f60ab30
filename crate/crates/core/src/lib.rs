//! Finite models of enriched category theory.
//!
//! Everything is a finite table: categories, set-valued functors, shape
//! posets, quivers and precategories. Laws are checked by enumeration.

pub mod corr;
pub mod fincat;
pub mod quiv;
pub mod shapes;
pub mod suite;
pub mod yoneda;
