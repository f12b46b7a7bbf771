//! Functional graphs of Chebyshev polynomials `T_n` acting on finite fields.
//!
//! The crate computes the cycle/tree decomposition of `x ↦ T_n(x)` on F_q in
//! closed form from the arithmetic of `q - 1`, `q + 1` and `n`, and checks it
//! against a brute-force iteration oracle.
//!
//! - [`ff`]: F_{p^k} and F_{q^2} arithmetic, `η(α) = α + α^{-1}`, `T_n`.
//! - [`numth`]: factorization, orders, n-decompositions, ν-series.
//! - [`trees`]: canonical rooted trees and their sum/bisection algebra.
//! - [`structure`]: the closed-form graph and its statistics.
//! - [`oracle`]: brute-force graphs and structural cross-checks.
//! - [`render`]: text, JSON and Graphviz output.

pub mod error;
pub mod ff;
pub mod numth;
pub mod oracle;
pub mod render;
pub mod structure;
pub mod trees;

pub use error::{Error, Result};
