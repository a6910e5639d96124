//! Exact real computation with discrete advice.
//!
//! Reals, vectors, matrices and functions are handled through names: query
//! interfaces returning rational approximations to any requested precision.
//! Algorithms that are discontinuous over names take a small piece of
//! discrete advice (a parity, a rank, a cluster count) and either return a
//! validated answer or report why they could not.

pub mod advice;
pub mod basics;
pub mod cli;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod interval;
pub mod io;
pub mod linalg;
pub mod name;
pub mod rational;
pub mod rootfind;
pub mod search;
pub mod witness;

pub use error::{Error, Outcome, Result};
pub use name::{Fuel, MatrixName, Precision, RealName, VectorName};
pub use rational::Rational;
