//! Quantum operators, built as normal-ordered differential operators with
//! `p_v = -i d/dv`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyalg::{Coeff, DiffOp, MultiPoly, Registry};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Operator {
    /// Ostrogradsky Hamiltonian on `Ψ(q, x)`.
    HPu { omega1: f64, omega2: f64 },
    /// Equal-frequency Hamiltonian acting on the phase-stripped `φ(q, x)`.
    HTilde { omega: f64 },
    /// `H̃` plus `α q⁴ + β q² x² + γ x⁴`.
    HInteracting {
        omega: f64,
        alpha: f64,
        beta: f64,
        gamma: f64,
    },
    /// Operator on the polynomial part `φ(x, y)` of the positive-spectrum realization.
    OXy { omega1: f64, omega2: f64 },
    /// `O_xy` rewritten in `z = √Ω1 (x + Ω2 y)`, `w = √Ω2 (x + Ω1 y)`.
    OZw { omega1: f64, omega2: f64 },
    /// Printed equal-frequency limit `Ω [−∂z² + 2z ∂z + 1]`.
    OEq { omega: f64 },
    /// Conserved "angular momentum" of the equal-frequency oscillator.
    LCharge { omega: f64 },
    /// `−½ ∂x²`
    HFreeParticle,
}

pub const OPERATOR_NAMES: &[&str] = &[
    "H_pu",
    "H_tilde",
    "H_interacting",
    "O_xy",
    "O_zw",
    "O_eq",
    "L_charge",
    "H_free_particle",
];

fn check_positive(v: f64, what: &str) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("`{what}` must be positive, got {v}")))
    }
}

pub fn qx_registry() -> Registry {
    Registry::new(&["q", "x"])
}

pub fn xy_registry() -> Registry {
    Registry::new(&["x", "y"])
}

pub fn zw_registry() -> Registry {
    Registry::new(&["z", "w"])
}

impl Operator {
    pub fn name(&self) -> &'static str {
        match self {
            Operator::HPu { .. } => "H_pu",
            Operator::HTilde { .. } => "H_tilde",
            Operator::HInteracting { .. } => "H_interacting",
            Operator::OXy { .. } => "O_xy",
            Operator::OZw { .. } => "O_zw",
            Operator::OEq { .. } => "O_eq",
            Operator::LCharge { .. } => "L_charge",
            Operator::HFreeParticle => "H_free_particle",
        }
    }

    pub fn build<C: Coeff>(&self) -> Result<DiffOp<C>> {
        let c = |v: f64| C::from_f64(v);
        let half = C::from_ratio(1, 2);
        let i = C::imag_unit();
        match *self {
            Operator::HPu { omega1, omega2 } => {
                check_positive(omega1, "omega1")?;
                check_positive(omega2, "omega2")?;
                let r = qx_registry();
                let (a, b) = (c(omega1), c(omega2));
                let s = a.clone() * a.clone() + b.clone() * b.clone();
                let p = a.clone() * a * b.clone() * b;
                // p_q x + p_x²/2 + s x²/2 − p q²/2
                let kin = &(&DiffOp::var(&r, "x")? * &DiffOp::deriv(&r, "q", 1)?).scale(&-i)
                    + &DiffOp::deriv(&r, "x", 2)?.scale(&-half.clone());
                let x = MultiPoly::var(&r, "x")?;
                let q = MultiPoly::var(&r, "q")?;
                let pot = &(&x * &x).scale(&(s * half.clone())) - &(&q * &q).scale(&(p * half));
                Ok(&kin + &DiffOp::multiply(&pot))
            }
            Operator::HTilde { omega } => Operator::HInteracting {
                omega,
                alpha: 0.0,
                beta: 0.0,
                gamma: 0.0,
            }
            .build(),
            Operator::HInteracting {
                omega,
                alpha,
                beta,
                gamma,
            } => {
                check_positive(omega, "omega")?;
                let r = qx_registry();
                let w2 = c(omega) * c(omega);
                // −½∂x² + iΩ² q ∂x − i x ∂q + α q⁴ + β q² x² + γ x⁴
                let a = DiffOp::deriv(&r, "x", 2)?.scale(&-half);
                let b = (&DiffOp::var(&r, "q")? * &DiffOp::deriv(&r, "x", 1)?).scale(&(i.clone() * w2));
                let d = (&DiffOp::var(&r, "x")? * &DiffOp::deriv(&r, "q", 1)?).scale(&-i);
                let q = MultiPoly::var(&r, "q")?;
                let x = MultiPoly::var(&r, "x")?;
                let q2 = &q * &q;
                let x2 = &x * &x;
                let pot =
                    &(&(&q2 * &q2).scale(&c(alpha)) + &(&q2 * &x2).scale(&c(beta))) + &(&x2 * &x2).scale(&c(gamma));
                Ok(&(&(&a + &b) + &d) + &DiffOp::multiply(&pot))
            }
            Operator::OXy { omega1, omega2 } => {
                check_positive(omega1, "omega1")?;
                check_positive(omega2, "omega2")?;
                let r = xy_registry();
                let (a, b) = (c(omega1), c(omega2));
                let sum = a.clone() + b.clone();
                // −½∂x² − x∂y + [x(Ω1+Ω2) + yΩ1Ω2]∂x + (Ω1+Ω2)/2
                let coef = MultiPoly::linear(&r, &[("x", sum.clone()), ("y", a * b)])?;
                let d2 = DiffOp::deriv(&r, "x", 2)?.scale(&-half.clone());
                let xdy = (&DiffOp::var(&r, "x")? * &DiffOp::deriv(&r, "y", 1)?).scale(&-C::one());
                let drift = &DiffOp::multiply(&coef) * &DiffOp::deriv(&r, "x", 1)?;
                let konst = DiffOp::scalar(&r, sum * half);
                Ok(&(&(&d2 + &xdy) + &drift) + &konst)
            }
            Operator::OZw { omega1, omega2 } => {
                check_positive(omega1, "omega1")?;
                check_positive(omega2, "omega2")?;
                let r = zw_registry();
                let (a, b) = (c(omega1), c(omega2));
                let osc = |v: &str, w: C| -> Result<DiffOp<C>> {
                    let d2 = DiffOp::deriv(&r, v, 2)?.scale(&-half.clone());
                    let drift = &DiffOp::var(&r, v)? * &DiffOp::deriv(&r, v, 1)?;
                    Ok((&d2 + &drift).scale(&w))
                };
                let root = (a.clone() * b.clone()).sqrt()?;
                let mixed = (&DiffOp::deriv(&r, "z", 1)? * &DiffOp::deriv(&r, "w", 1)?).scale(&-root);
                let konst = DiffOp::scalar(&r, (a.clone() + b.clone()) * half.clone());
                Ok(&(&(&osc("z", a)? + &osc("w", b)?) + &mixed) + &konst)
            }
            Operator::OEq { omega } => {
                check_positive(omega, "omega")?;
                let r = Registry::new(&["z"]);
                let d2 = DiffOp::deriv(&r, "z", 2)?.scale(&-C::one());
                let drift = (&DiffOp::var(&r, "z")? * &DiffOp::deriv(&r, "z", 1)?).scale(&C::from_i64(2));
                Ok((&(&d2 + &drift) + &DiffOp::identity(&r)).scale(&c(omega)))
            }
            Operator::LCharge { omega } => {
                check_positive(omega, "omega")?;
                let r = qx_registry();
                let w = c(omega);
                let two = C::from_i64(2);
                let four = C::from_i64(4);
                let pq = DiffOp::momentum(&r, "q")?;
                let px = DiffOp::momentum(&r, "x")?;
                let x = DiffOp::var(&r, "x")?;
                let q = DiffOp::var(&r, "q")?;
                // x p_q/(2Ω) − (Ω/2) q p_x + (p_x² − p_q²/Ω²)/(4Ω) + 3Ω x²/4 − 3Ω³ q²/4
                let t1 = (&x * &pq).scale(&(C::one() / (two.clone() * w.clone())));
                let t2 = (&q * &px).scale(&-(w.clone() / two));
                let t3 = (&(&px * &px) - &(&pq * &pq).scale(&(C::one() / (w.clone() * w.clone()))))
                    .scale(&(C::one() / (four.clone() * w.clone())));
                let xm = MultiPoly::var(&r, "x")?;
                let qm = MultiPoly::var(&r, "q")?;
                let three = C::from_i64(3);
                let pot = &(&xm * &xm).scale(&(three.clone() * w.clone() / four.clone()))
                    - &(&qm * &qm).scale(&(three * w.pow(3) / four));
                Ok(&(&(&t1 + &t2) + &t3) + &DiffOp::multiply(&pot))
            }
            Operator::HFreeParticle => {
                let r = Registry::new(&["x"]);
                Ok(DiffOp::deriv(&r, "x", 2)?.scale(&-half))
            }
        }
    }

    pub fn from_name(name: &str, omega1: f64, omega2: f64, couplings: (f64, f64, f64)) -> Result<Self> {
        let (alpha, beta, gamma) = couplings;
        Ok(match name {
            "H_pu" => Operator::HPu { omega1, omega2 },
            "H_tilde" => Operator::HTilde { omega: omega1 },
            "H_interacting" => Operator::HInteracting {
                omega: omega1,
                alpha,
                beta,
                gamma,
            },
            "O_xy" => Operator::OXy { omega1, omega2 },
            "O_zw" => Operator::OZw { omega1, omega2 },
            "O_eq" => Operator::OEq { omega: omega1 },
            "L_charge" => Operator::LCharge { omega: omega1 },
            "H_free_particle" => Operator::HFreeParticle,
            other => return Err(Error::UnknownName(other.to_string())),
        })
    }
}

/// `i ∂/∂t` over the given registry, which must contain `t`.
pub fn time_derivative<C: Coeff>(vars: &Registry) -> Result<DiffOp<C>> {
    Ok(DiffOp::deriv(vars, "t", 1)?.scale(&C::imag_unit()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{hermite, ExactComplex};

    type Q = ExactComplex;

    #[test]
    fn h_pu_unit_frequencies() {
        let h = Operator::HPu {
            omega1: 1.0,
            omega2: 1.0,
        }
        .build::<Q>()
        .unwrap();
        assert_eq!(h.num_terms(), 4);
        assert_eq!(h.coeff_of(&[("x", 1)], &[("q", 1)]).unwrap(), -Q::imag_unit());
        assert_eq!(h.coeff_of(&[], &[("x", 2)]).unwrap(), Q::from_ratio(-1, 2));
        assert_eq!(h.coeff_of(&[("x", 2)], &[]).unwrap(), Q::one());
        assert_eq!(h.coeff_of(&[("q", 2)], &[]).unwrap(), Q::from_ratio(-1, 2));
    }

    #[test]
    fn interacting_without_couplings() {
        let h = Operator::HInteracting {
            omega: 1.0,
            alpha: 0.0,
            beta: 0.0,
            gamma: 0.0,
        }
        .build::<Q>()
        .unwrap();
        assert_eq!(h.num_terms(), 3);
        assert_eq!(h.coeff_of(&[], &[("x", 2)]).unwrap(), Q::from_ratio(-1, 2));
        assert_eq!(h.coeff_of(&[("q", 1)], &[("x", 1)]).unwrap(), Q::imag_unit());
        assert_eq!(h.coeff_of(&[("x", 1)], &[("q", 1)]).unwrap(), -Q::imag_unit());
    }

    #[test]
    fn ozw_has_no_cross_term_on_w_free_input() {
        let o = Operator::OZw {
            omega1: 4.0,
            omega2: 1.0,
        }
        .build::<Q>()
        .unwrap();
        let r = zw_registry();
        let z = MultiPoly::var(&r, "z").unwrap();
        let h3 = hermite(3, &z);
        // Ω1·3 + (Ω1+Ω2)/2
        let out = o.apply_poly(&h3).unwrap();
        assert_eq!(out, h3.scale(&Q::from_ratio(29, 2)));
    }

    #[test]
    fn unknown_operator_name() {
        assert!(matches!(
            Operator::from_name("H_bogus", 1.0, 1.0, (0.0, 0.0, 0.0)),
            Err(Error::UnknownName(_))
        ));
    }
}
