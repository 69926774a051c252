//! Generalized upper Sugeno integrals over monotone measures, fusion
//! functions, dependence notions for function pairs and Chebyshev type
//! inequalities with witness search.
//!
//! Values live in `[0, ∞]` ([`value::NonNegExt`]); functions, shapes and
//! custom operations are written in a small expression language
//! ([`exprlang`]). Sampled checks report a [`verdict::Verdict`] that carries
//! its evidence class.

pub mod chebyshev;
pub mod dependence;
pub mod exprlang;
pub mod fusion;
pub mod grid;
pub mod integral;
pub mod measure;
pub mod properties;
pub mod random;
pub mod value;
pub mod verdict;

pub use fusion::{Builtin, Flags, FusionOp};
pub use grid::GridSpec;
pub use value::NonNegExt;
pub use verdict::{Evidence, Verdict};
