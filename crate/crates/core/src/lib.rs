//! Finitely generated subgroups of free groups via Stallings foldings.
//!
//! The crate builds foldings from generating sets, intersects subgroups
//! through the product automaton, applies endomorphisms to foldings, and
//! evaluates the quantities that enter the Hanna Neumann inequality
//! `rank(H ∩ K) - 1 <= (rank(H) - 1)(rank(K) - 1)`: degree censuses, the
//! `δ`/`μ` statistics, and the classical upper bounds.

pub mod experiment;
pub mod folding;
pub mod freegroup;
pub mod hnc;
pub mod intersect;
pub mod morphisms;

pub use folding::{canonical_form, CanonicalForm, CoreMode, DegreeCensus, Folding};
pub use freegroup::{Alphabet, GeneratorMap, Letter, Word};
