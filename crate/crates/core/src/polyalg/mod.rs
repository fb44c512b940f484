//! Exact and floating complex polynomial algebra: sparse multivariate
//! polynomials, Hermite polynomials, polynomial-times-Gaussian functions and
//! normal-ordered differential operators acting on them.

pub mod coeff;
pub mod diffop;
pub mod expfn;
pub mod hermite;
pub mod poly;

pub use coeff::{Coeff, ExactComplex};
pub use diffop::{exp_diff_apply, DiffOp};
pub use expfn::{coeff_max_norm, ExpPolyFn, QuadExponent};
pub use hermite::{hermite, hermite_linear, hermite_sequence};
pub use poly::{Exponent, MultiPoly, Registry};

pub use num_complex::Complex64;
