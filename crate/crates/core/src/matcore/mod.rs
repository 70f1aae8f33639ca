//! Exact 2×2 integer matrices, binary forms and elementary arithmetic.

pub mod arith;
pub mod form;
pub mod gaussian;
pub mod mat;
pub mod smith;

pub use arith::{euler_phi, gcd, kronecker, lcm, mod_inv};
pub use form::{
    aut_count, gl2_equivalence, minkowski_reduce, HalfIntegralForm, HalfIntegralMatrix, SymRat2,
};
pub use gaussian::{gaussian_totient, is_go2, GaussianInt};
pub use mat::{IntMat2, RatMat2};
pub use smith::elementary_divisors;
