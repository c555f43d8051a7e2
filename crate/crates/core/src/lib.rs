//! Exact Littelmann path crystals for simple Lie algebras and their untwisted
//! affine extensions.
//!
//! The crate is organised bottom-up:
//!
//! * [`rootsystem`]: Cartan data, Weyl group words, minuscule coweights and the
//!   diagram automorphisms attached to them.
//! * [`pathspace`]: piecewise-linear paths modulo reparametrization and the
//!   root operators `f_i`, `e_i` (including the affine node `0`).
//! * [`crystal`]: crystals generated by closure or Demazure words, the
//!   Lakshmibai–Seshadri enumeration, characters and isomorphism checks.
//! * [`affine`]: the extended affine Weyl group action modulo `δ`, twisted
//!   Demazure operators and the Demazure/tensor product verifiers.
//! * [`skein`]: finitely presented semi-infinite paths and the level-one
//!   basic crystal checks.
//! * [`cli`]: the command-line surface, reports and the on-disk cache.
//!
//! All arithmetic is exact ([`rational::Q`] is a reduced `i64` fraction).

pub mod affine;
pub mod cli;
pub mod crystal;
pub mod error;
pub mod par;
pub mod pathspace;
pub mod rational;
pub mod rootsystem;
pub mod skein;

pub use error::{Error, Result};
pub use pathspace::{AffineWeight, Path};
pub use rational::Q;
pub use rootsystem::{CartanType, RootSystem, SigmaAut, Weight};
