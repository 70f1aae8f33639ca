//! Symplectic Kloosterman sums, Salié sums, Bessel kernels, L-values and the
//! pieces of the second-moment computation for spinor L-functions of Siegel
//! modular forms of degree two.

pub mod cli;
pub mod error;
pub mod expsums;
pub(crate) mod json;
pub mod kernels;
pub mod lfun;
pub mod matcore;
pub mod petersson;
pub mod sp4;

pub use error::{Error, Result};
