//! Gaussian variational ansatz for the quartic-coupled Hamiltonian.
//!
//! The trial state is `φ = exp(−A q²/2 − i B x q − C x²/2)`. Its energy has a
//! closed form ([`energy_closed_form`]) which is checked against an
//! independent evaluation ([`energy_quadrature`]) that applies the operator
//! symbolically and integrates with exact Gaussian moments.

mod ansatz;
mod moments;
mod search;

pub use ansatz::{energy_closed_form, gradient, AnsatzParams, Couplings};
pub use moments::{energy_quadrature, expectation, GaussianMoments};
pub use search::{unbounded_search, UnboundednessCertificate, MAX_SEARCH_MOVES};
