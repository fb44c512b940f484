//! Classical phase-space algebra: Hamiltonians as polynomials, Poisson
//! brackets and linear canonical transformations.

mod hamiltonians;
mod maps;
mod space;

pub use hamiltonians::{Hamiltonian, ParamRecord, HAMILTONIAN_NAMES};
pub use maps::{transform_equals, transform_interaction, CanonicalMap, InteractionSplit, MapKind, SymplecticReport};
pub use space::{hamiltonian_vector_field, lie_derivative, poisson_bracket, PhasePoly, PhaseSpace};

use crate::error::Result;
use crate::polyalg::{Coeff, MultiPoly};

/// Residual of `q⁗ + (Ω1²+Ω2²) q̈ + Ω1²Ω2² q` where each time derivative is a
/// Poisson bracket with the Ostrogradsky Hamiltonian. Zero means Hamilton's
/// equations reproduce the fourth-order equation of motion identically.
pub fn fourth_order_identity<C: Coeff>(omega1: f64, omega2: f64) -> Result<f64> {
    let h = Hamiltonian::Pu { omega1, omega2 }.build::<C>()?;
    let q = h.space.var::<C>("q")?;
    let mut derivs = vec![q];
    for k in 0..4 {
        let next = lie_derivative(&derivs[k], &h)?;
        derivs.push(next);
    }
    let a = C::from_f64(omega1);
    let b = C::from_f64(omega2);
    let s = a.clone() * a.clone() + b.clone() * b.clone();
    let p = a.clone() * a * b.clone() * b;
    let res: MultiPoly<C> = &(&derivs[4].poly + &derivs[2].poly.scale(&s)) + &derivs[0].poly.scale(&p);
    Ok(res.max_norm())
}
