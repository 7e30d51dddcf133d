//! Finite models of categories of commutative subalgebras.
//!
//! The crate works at desk scale: everything is a finite table that can be
//! checked exhaustively. The main pieces are
//!
//! - [`poset`]: finite posets and lattices, Möbius functions, characteristic
//!   polynomials, order isomorphism search;
//! - [`partition`]: set partitions, the partition lattice P(n), permutation
//!   and pullback actions;
//! - [`recog`]: recognizing partition lattices (the Yoon axioms and Firby's
//!   1-point axioms with space reconstruction);
//! - [`fincat`]: finite categories, functors, presheaves, isomorphism search;
//! - [`amalgam`]: monoid actions on posets, the Grothendieck construction
//!   P ⋊ M, amalgamation axiom checkers and action recovery;
//! - [`cstar`]: the subalgebra categories of ℂⁿ as supported partitions and
//!   block maps;
//! - [`invsemi`]: the inverse semigroup of partial isomorphisms into ℂⁿ and the
//!   structures derived from it;
//! - [`selftest`]: the acceptance corpus as a callable routine;
//! - [`cli`]: the command-line front end used by the `csub` binary.

pub(crate) mod bits;
pub mod amalgam;
pub mod cli;
pub mod cstar;
pub mod fincat;
pub mod invsemi;
pub mod partition;
pub mod poset;
pub mod recog;
pub mod report;
pub mod selftest;
