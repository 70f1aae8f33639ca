//! Archimedean ingredients: Bessel functions, the double-Bessel kernel, the
//! smooth weight `W`, and the rank-2 truncation.

pub mod bessel;
pub mod gamma;
pub mod kernel;
pub mod quad;
pub mod truncation;
pub mod weight;

pub use bessel::{bessel_j, BesselOrder};
pub use kernel::{script_j, script_j_fixed, KernelArg};
pub use truncation::{
    default_beta, shell_sum, tail_diagnostic, truncation_set, truncation_stream, MinkowskiSample, Shell, TailReport,
    TruncationBox,
};
pub use weight::{archimedean_ratio, weight_w, Damping, WeightValue};
