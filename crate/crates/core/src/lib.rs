//! Means and mean-parameterized refinements of the Cauchy-Bunyakovsky
//! inequality, the Young-inequality comparator, and elementary two-sided
//! bounds for the complete elliptic integral `K`.

// `!(v > 0.0)` is used on purpose throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cbs_discrete;
pub mod cbs_integral;
pub mod chain;
pub mod cli;
pub mod elliptic;
pub mod error;
pub mod function;
pub mod iterated;
pub mod means;
pub mod quadrature;
pub mod sampling;
pub mod young;

pub use chain::{ChainDirection, ChainReport};
pub use error::{Error, Result};
pub use means::MeanSpec;
