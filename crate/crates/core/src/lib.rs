//! Exact arithmetic for division superalgebras, superhermitian forms,
//! orthosymplectic dual pairs and the Weyl–Clifford algebra.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod division;
pub mod dual_pairs;
pub mod error;
pub mod forms;
pub mod graded;
pub mod invariants;
pub mod linsolve;
pub mod matrix;
pub mod realizations;
pub mod wc;
pub mod scalars;

pub use error::{Error, Result};
pub use matrix::{FieldTag, Mat, Parity};
pub use scalars::{Gaussian, Rational, Scalar};
