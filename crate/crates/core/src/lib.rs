//! Saturation engine and proof checker for geometric propositional theories.
//!
//! A theory over a finite symbol universe `A` has a classifying topos built
//! from the poset K(A) of finite subsets of `A`. This crate decides whether
//! that topos is degenerate by computing a covering-closure fixpoint, turns
//! a positive answer into a derivation of `⊤ → ⊥` in the three-rule
//! Grothendieck calculus, and checks such derivations independently.

pub(crate) mod bits;
pub mod certificate;
pub mod cli;
pub mod dsl;
pub mod error;
pub mod gallery;
pub mod inductive;
pub mod logic;
pub mod proof;
pub mod site;

pub use error::{Error, Result};
