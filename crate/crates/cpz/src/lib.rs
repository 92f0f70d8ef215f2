//! Constrained polynomial zonotopes (CPZs): a non-convex set representation
//! that is closed under linear map, Minkowski sum, Cartesian product, convex
//! hull, quadratic map, intersection, and union, with closed-form expressions
//! for every operation.
//!
//! A CPZ is the set
//!
//! ```text
//! { c + sum_i (prod_k a_k^E(k,i)) G(:,i) | sum_i (prod_k a_k^R(k,i)) A(:,i) = b, a_k in [-1,1] }
//! ```
//!
//! Crate layout:
//! - [`linalg`]: dense matrices/vectors, integer exponent matrices, symmetric
//!   eigendecomposition, interval arithmetic
//! - [`sets`]: the CPZ type and the other supported set representations
//! - [`regularize`]: duplicate-column merging (`compact_gen` / `compact_con`)
//! - [`convert`]: embeddings of the other representations into CPZs
//! - [`ops`]: the seven closed-form set operations
//! - [`oracle`]: witness sampling and factor-lifting validation
//! - [`enclosure`]: order-2 Taylor abstraction of nonlinear maps
//! - [`setfile`] / [`cli`]: serialization and the command-line front end

// index loops mirror the matrix formulas; iterator rewrites would obscure them
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod convert;
pub mod enclosure;
mod error;
pub mod linalg;
pub mod ops;
pub mod oracle;
pub mod regularize;
pub mod setfile;
pub mod sets;

pub use error::{CpzError, Result};

/// Constraint satisfaction tolerance (infinity norm of the residual) used
/// throughout the crate to decide whether a factor assignment is a witness.
pub const WITNESS_TOL: f64 = 1e-9;

/// Tolerance on factor bounds; absorbs round-off in sampled witnesses.
pub const FACTOR_TOL: f64 = 1e-12;
