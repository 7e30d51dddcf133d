//! Monoid actions on posets, the construction `P ⋊ M`, the amalgamation axioms
//! and recovery of the action from an abstract category.

mod action;
mod axioms;
mod groth;
mod random;
mod recover;
mod witness;

pub use action::{
    check_action, permutation_action_on_pn, pullback_action_on_pn, ActionError, ActionJson, ActionSide, ActionVerdict,
    MonoidAction,
};
pub use axioms::{
    check_amalgamation_with, check_group_amalgamation, check_monoid_amalgamation, evaluate, search_witness, AmalgamCaps,
    AmalgamOptions, AxiomReport, Mode,
};
pub use groth::{canonical_witness, grothendieck, grothendieck_from_table, Convention, Grothendieck};
pub use random::{random_monotone_action, random_poset_with_bottom};
pub use recover::{build_equivalence, check_cstar_characterization, recover_action, CstarVerdict, Equivalence};
pub use witness::{AmalgamWitness, WitnessJson};

use crate::fincat::{CategoryError, FunctorError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AmalgamError {
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("{what} exceeded cap {cap}")]
    SearchCapExceeded { what: &'static str, cap: usize },
    #[error("element {m} on poset element {p} recovers to several values {images:?}")]
    AmbiguousRecovery { m: usize, p: usize, images: Vec<usize> },
    #[error("no witness morphism for element {m} at poset element {p}")]
    MissingWitnessMorphism { m: usize, p: usize },
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error(transparent)]
    Action(#[from] ActionError),
}
