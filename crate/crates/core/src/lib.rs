//! Quantum invariants of 3-manifolds and links from the modular data of
//! compact simple Lie groups at level k.
//!
//! - [`lie`]: root systems, Weyl groups, level-k labels, alcove folding
//! - [`weights`]: weight multiplicities, characters, Adams decompositions
//! - [`affine`]: the ∗-action, signed multiplicity sums, Rosso-Jones coefficients
//! - [`modular`]: S, C, θ, quantum dimensions, Verlinde and fusion numbers
//! - [`linkmodel`]: double-point-free links in Σ×S¹ and their shadow invariant
//! - [`invariants`]: fiber links, Verlinde dimensions, torus knots, surgery
//! - [`identities`]: the cross-validation suite

// Matrix entries are addressed by label index throughout.
#![allow(clippy::needless_range_loop)]

pub mod affine;
pub mod error;
pub mod exec;
pub mod identities;
pub mod invariants;
pub mod lie;
pub mod linkmodel;
pub mod modular;
pub mod weights;

pub use error::{Error, Result};
pub use exec::Exec;
