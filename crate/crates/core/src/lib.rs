//! Fuzzy sets as idempotent semimodules over `(R+, max, *)`.
//!
//! - [`grade`]: membership values, external multiplication and the `c_k` complement.
//! - [`fuzzy_set`]: discrete and sampled fuzzy sets with union, scaling,
//!   complement and De Morgan intersection.
//! - [`algebra`]: the law catalog and a randomized checker for any [`algebra::Mnesor`].
//! - [`instances`]: grade and fuzzy-set instances, plus reference mutants.
//! - [`expr`]: expression language, evaluator and identity-driven simplifier.
//! - [`setfile`]: the JSON set-definition format.
//! - [`cli`]: the `mnesor` command-line front end.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod expr;
pub mod fuzzy_set;
pub mod grade;
pub mod instances;
pub mod setfile;

pub use error::{Error, Result};
pub use fuzzy_set::{Carrier, FuzzySet, Grid, Shape};
pub use grade::{ComplementConfig, Grade, Scalar};
