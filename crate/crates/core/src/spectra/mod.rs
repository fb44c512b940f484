//! Quantum side: operators as differential operators, eigenfunction
//! families and their residuals, the equal-frequency Jordan structure and
//! the Hermite identities underneath.

mod eigen;
mod identities;
mod nonstationary;
mod operators;

pub use eigen::{
    degenerate_family, eigen_residual, energy, equal_frequency_exponent, ghost_eigenfunction, ghost_exponent,
    ghost_polynomial, positive_eigenfunction, positive_polynomial, positive_polynomial_zw, EigenResult, EnergyKind,
    Labels, SpectrumParams,
};
pub use identities::{density_scan, exp_hermite_identity, gram_degeneracy, hermite_sum_identity, DensityHit};
pub use nonstationary::{
    commutator_check, continuum_eigenfunction, descendant, free_particle_descendant, jordan_matrix_evolve,
    jordan_state, qxt_registry, time_residual, JordanMetric,
};
pub use operators::{qx_registry, time_derivative, xy_registry, zw_registry, Operator, OPERATOR_NAMES};

use crate::error::Result;
use crate::polyalg::{hermite, Coeff, MultiPoly};

/// Result of checking `O_xy(Ω,Ω) H_N(√Ω(x+Ωy)) = Ω(N+1) H_N` together with the
/// eigenvalue the printed z-form `Ω[−∂z² + 2z∂z + 1]` assigns to `H_N(z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EqualFrequencyCheck {
    pub deviation: f64,
    pub expected_eigenvalue: f64,
    pub z_form_eigenvalue: f64,
    pub z_form_deviation: f64,
}

pub fn equal_frequency_check<C: Coeff>(level: u32, omega: f64) -> Result<EqualFrequencyCheck> {
    let r = xy_registry();
    let w = C::from_f64(omega);
    let sw = w.sqrt()?;
    let arg = MultiPoly::linear(&r, &[("x", sw.clone()), ("y", sw * w.clone())])?;
    let h = hermite(level, &arg);
    let o = Operator::OXy {
        omega1: omega,
        omega2: omega,
    }
    .build::<C>()?;
    let expected = w.clone() * C::from_i64(level as i64 + 1);
    let deviation = o.apply_poly(&h)?.max_deviation(&h.scale(&expected));

    let zr = crate::polyalg::Registry::new(&["z"]);
    let hz = hermite(level, &MultiPoly::var(&zr, "z")?);
    let oe = Operator::OEq { omega }.build::<C>()?;
    let z_value = w * C::from_i64(2 * level as i64 + 1);
    let z_form_deviation = oe.apply_poly(&hz)?.max_deviation(&hz.scale(&z_value));
    Ok(EqualFrequencyCheck {
        deviation,
        expected_eigenvalue: expected.to_c64().re,
        z_form_eigenvalue: z_value.to_c64().re,
        z_form_deviation,
    })
}
