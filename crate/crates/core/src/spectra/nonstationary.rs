//! Equal-frequency structure: time-dependent descendants, the truncated
//! continuum series, the conserved charge and the 2×2 Jordan toy model.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eigen::{equal_frequency_exponent, EigenResult, Labels};
use super::operators::{qx_registry, time_derivative, Operator};
use crate::error::{Error, Result};
use crate::polyalg::{coeff_max_norm, hermite_sequence, Coeff, DiffOp, ExpPolyFn, MultiPoly, Registry};

pub fn qxt_registry() -> Registry {
    Registry::new(&["q", "x", "t"])
}

fn positive(omega: f64) -> Result<()> {
    if omega > 0.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("omega must be positive, got {omega}")))
    }
}

/// The l = 0 non-stationary solutions of order k⁰, k², k⁴ (`order` 0, 1, 2),
/// as polynomials in `q, x, t` times `e^{−iΩ²qx}`.
pub fn descendant<C: Coeff>(order: u32, omega: f64) -> Result<ExpPolyFn<C>> {
    positive(omega)?;
    let r = qxt_registry();
    let w2 = C::from_f64(omega) * C::from_f64(omega);
    let i = C::imag_unit();
    let t = MultiPoly::var(&r, "t")?;
    let q = MultiPoly::var(&r, "q")?;
    let x = MultiPoly::var(&r, "x")?;
    // s = x² + Ω² q²
    let s = &(&x * &x) + &(&q * &q).scale(&w2);
    let poly = match order {
        0 => MultiPoly::one(&r),
        1 => &t - &s.scale(&i),
        2 => {
            let konst = C::one() / (C::from_i64(8) * w2.clone());
            let mut p = &t * &t;
            p = &p - &(&t * &s).scale(&(C::from_i64(2) * i.clone()));
            p = &p - &(&s * &s).scale(&C::from_ratio(1, 2));
            p = &p - &(&q * &x).scale(&i);
            &p + &MultiPoly::constant(&r, konst)
        }
        _ => {
            return Err(Error::InvalidParameter(format!(
                "descendants are provided for orders 0..=2, got {order}"
            )))
        }
    };
    ExpPolyFn::new(poly, equal_frequency_exponent(&r, omega)?)
}

/// Free-particle solutions Ψ₀..Ψ₄ in `x, t`.
pub fn free_particle_descendant<C: Coeff>(order: u32) -> Result<MultiPoly<C>> {
    let r = Registry::new(&["x", "t"]);
    let x = MultiPoly::var(&r, "x")?;
    let t = MultiPoly::var(&r, "t")?;
    let i = C::imag_unit();
    Ok(match order {
        0 => MultiPoly::one(&r),
        1 => x,
        2 => &t - &x.pow(2).scale(&i),
        3 => &(&x * &t) - &x.pow(3).scale(&(i / C::from_i64(3))),
        4 => {
            let a = &(&t * &t) - &(&t * &x.pow(2)).scale(&(C::from_i64(2) * i));
            &a - &x.pow(4).scale(&C::from_ratio(1, 3))
        }
        _ => {
            return Err(Error::InvalidParameter(format!(
                "free-particle descendants are provided for orders 0..=4, got {order}"
            )))
        }
    })
}

/// `coeff_max_norm(i ∂f/∂t − H f)`.
pub fn time_residual<C: Coeff>(f: &ExpPolyFn<C>, h: &DiffOp<C>) -> Result<f64> {
    let lhs = time_derivative::<C>(f.registry())?.apply(f)?;
    let rhs = h.apply(f)?;
    Ok(coeff_max_norm(&lhs.sub(&rhs)?))
}

/// Truncated continuum eigenfunction through `m = truncation`, with energy `lΩ + k²/4`.
/// Negative `l` swaps the roles of `z` and `w`.
pub fn continuum_eigenfunction<C: Coeff>(l: i64, k: f64, omega: f64, truncation: u32) -> Result<EigenResult<C>> {
    positive(omega)?;
    if !(k >= 0.0 && k.is_finite()) {
        return Err(Error::InvalidParameter(format!("k must be non-negative, got {k}")));
    }
    if truncation == 0 {
        return Err(Error::InvalidParameter("truncation order must be at least 1".into()));
    }
    let r = qx_registry();
    let w = C::from_f64(omega);
    let sw = w.sqrt()?;
    let i = C::imag_unit();
    // z = √Ω(x + iΩq), w = √Ω(ix + Ωq)
    let z = MultiPoly::linear(&r, &[("x", sw.clone()), ("q", i.clone() * sw.clone() * w.clone())])?;
    let wv = MultiPoly::linear(&r, &[("x", i.clone() * sw.clone()), ("q", sw * w.clone())])?;
    let (lead, other) = if l >= 0 { (&z, &wv) } else { (&wv, &z) };
    let la = l.unsigned_abs() as u32;
    let hl = hermite_sequence(la + truncation, lead);
    let ho = hermite_sequence(truncation, other);
    let k2 = C::from_f64(k) * C::from_f64(k);
    let ratio = i * k2.clone() / w.clone();
    let mut poly = MultiPoly::zero(&r);
    let mut pw = C::one();
    for m in 0..=truncation {
        // 4^{2m+l} m! (l+m)!
        let mut den = C::from_i64(4).pow(2 * m + la);
        for j in 1..=m {
            den = den * C::from_i64(j as i64);
        }
        for j in 1..=(la + m) {
            den = den * C::from_i64(j as i64);
        }
        let term = &hl[(la + m) as usize] * &ho[m as usize];
        poly = &poly + &term.scale(&(pw.clone() / den));
        pw = pw * ratio.clone();
    }
    let psi = ExpPolyFn::new(poly, equal_frequency_exponent(&r, omega)?)?;
    let energy = w * C::from_i64(l) + k2 / C::from_i64(4);
    EigenResult::evaluate(
        psi,
        energy,
        Operator::HPu {
            omega1: omega,
            omega2: omega,
        },
        Labels::Continuum { l, k, truncation },
    )
}

/// `max-coefficient-norm of [H_pu(Ω,Ω), L]`.
pub fn commutator_check<C: Coeff>(omega: f64) -> Result<f64> {
    let h = Operator::HPu {
        omega1: omega,
        omega2: omega,
    }
    .build::<C>()?;
    let l = Operator::LCharge { omega }.build::<C>()?;
    Ok(h.commutator(&l).max_norm())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JordanMetric {
    Euclidean,
    /// `M = diag(0, 1)`
    Degenerate,
}

/// `ψ(t) = e^{−it} (a − ibt, b)`: the general solution for the 2×2 Jordan block
/// `H = [[1, 1], [0, 1]]`.
pub fn jordan_state(a: Complex64, b: Complex64, t: f64) -> [Complex64; 2] {
    let phase = Complex64::new(0.0, -t).exp();
    [phase * (a - Complex64::i() * b * t), phase * b]
}

pub fn jordan_matrix_evolve(a: Complex64, b: Complex64, t: f64, metric: JordanMetric) -> f64 {
    let [p1, p2] = jordan_state(a, b, t);
    match metric {
        JordanMetric::Euclidean => p1.norm_sqr() + p2.norm_sqr(),
        JordanMetric::Degenerate => p2.norm_sqr(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::ExactComplex;

    type Q = ExactComplex;

    fn h_pu(omega: f64) -> DiffOp<Q> {
        Operator::HPu {
            omega1: omega,
            omega2: omega,
        }
        .build()
        .unwrap()
    }

    #[test]
    fn descendants_solve_schrodinger() {
        for omega in [1.0, 2.0, 0.5] {
            for order in 0..=2 {
                let f = descendant::<Q>(order, omega).unwrap();
                assert_eq!(
                    time_residual(&f, &h_pu(omega)).unwrap(),
                    0.0,
                    "order {order}, Ω={omega}"
                );
            }
        }
    }

    #[test]
    fn free_particle_family() {
        let h = Operator::HFreeParticle.build::<Q>().unwrap();
        for order in 0..=4 {
            let f = ExpPolyFn::polynomial(free_particle_descendant::<Q>(order).unwrap());
            assert_eq!(time_residual(&f, &h).unwrap(), 0.0, "Ψ{order}");
        }
    }

    #[test]
    fn continuum_at_zero_momentum_is_the_ground_phase() {
        let r = continuum_eigenfunction::<Complex64>(0, 0.0, 1.0, 6).unwrap();
        assert_eq!(r.wavefunction.poly, MultiPoly::one(&qx_registry()));
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn continuum_l1_leading_term() {
        let r = continuum_eigenfunction::<Complex64>(1, 1.0, 1.0, 1).unwrap();
        assert_eq!(r.energy, Complex64::new(1.25, 0.0));
        // at k = 0 only the m = 0 term H1(z)/4 = z/2 survives
        let r = continuum_eigenfunction::<Complex64>(1, 0.0, 1.0, 3).unwrap();
        let z = MultiPoly::linear(
            &qx_registry(),
            &[("x", Complex64::new(0.5, 0.0)), ("q", Complex64::new(0.0, 0.5))],
        )
        .unwrap();
        assert!(r.wavefunction.poly.max_deviation(&z) < 1e-15);
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn charge_commutes_exactly() {
        assert_eq!(commutator_check::<Q>(1.0).unwrap(), 0.0);
        assert_eq!(commutator_check::<Q>(2.0).unwrap(), 0.0);
    }

    #[test]
    fn jordan_examples() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert!((jordan_matrix_evolve(zero, one, 2.0, JordanMetric::Euclidean) - 5.0).abs() < 1e-14);
        let a = Complex64::new(0.3, -1.2);
        for t in [0.0, 1.0, 10.0] {
            assert!((jordan_matrix_evolve(a, zero, t, JordanMetric::Euclidean) - a.norm_sqr()).abs() < 1e-14);
            assert!((jordan_matrix_evolve(a, one, t, JordanMetric::Degenerate) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn jordan_state_solves_the_block_equation() {
        let (a, b) = (Complex64::new(0.4, 0.1), Complex64::new(-0.7, 0.9));
        let (t, h) = (1.3, 1e-5);
        let [p1, p2] = jordan_state(a, b, t);
        let fwd = jordan_state(a, b, t + h);
        let bwd = jordan_state(a, b, t - h);
        let d1 = (fwd[0] - bwd[0]) / (2.0 * h);
        let d2 = (fwd[1] - bwd[1]) / (2.0 * h);
        // i ψ' = [[1,1],[0,1]] ψ
        assert!((Complex64::i() * d1 - (p1 + p2)).norm() < 1e-8);
        assert!((Complex64::i() * d2 - p2).norm() < 1e-8);
    }
}
