//! Exact and numerical tools for continuous-variable GHZ paradoxes built
//! from phase-space translation operators `X^α = exp(iα x̃)` and
//! `Y^β = exp(iβ p̃)`.
//!
//! - [`weyl`]: exact lattice Weyl algebra with rational phases.
//! - [`paradox`]: paradox verification, hidden-variable values, search.
//! - [`oracle`]: dense clock-and-shift matrices as numerical ground truth.
//! - [`comb`]: finitely squeezed comb states and closed-form expectations.
//! - [`format`]: operator-set files and reports.
//! - [`cli`]: the `cvghz` command line.

pub mod cli;
pub mod comb;
pub mod format;
pub mod oracle;
pub mod paradox;
pub mod weyl;

pub use paradox::{builtin, verify, Builtin, OperatorSet, ParadoxReport};
pub use weyl::{LatticeParams, PartyExponent, RationalPhase, WeylWord};
