//! Symbol universes, finite conjunctions, sequents, theories and their
//! two-valued models.

mod semantics;
mod sequent;
mod universe;

pub use semantics::{find_models, has_model, is_model, satisfies};
pub(crate) use sequent::TheoryBuilder;
pub use sequent::{Sequent, Theory};
pub use universe::{KSet, Universe, DEFAULT_MAX_UNIVERSE, HARD_MAX_UNIVERSE};
