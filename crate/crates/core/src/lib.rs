//! L²-parameterized bifurcation curves of the nonlocal logistic problem
//!
//! ```text
//!     -(a1 ‖u‖_q² + a2 ‖u‖_2²) u'' + u^p = λ u  on (0, 1),   u > 0,   u(0) = u(1) = 0.
//! ```

// Argument checks are written as `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod constants;
pub mod error;
pub mod local_logistic;
pub mod nonlocal;
pub mod oracle;
pub mod quadrature;
mod roots;
pub mod verify;

pub use error::{Error, Result};
