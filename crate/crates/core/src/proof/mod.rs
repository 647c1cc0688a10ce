//! The Grothendieck deduction calculus: rule application, refutation
//! extraction from a degeneracy trace, and an independent checker.

mod check;
mod derivation;
mod extract;

pub use check::{check_derivation, check_refutation, CheckFailure, FailureReason};
pub use derivation::{
    axiom, rule_absorb, rule_compose, rule_identity, rule_weaken, Derivation, Rule,
};
pub use extract::{extract_refutation, refuted_nodes};
