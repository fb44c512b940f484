//! The catalogue of classical Hamiltonians, as exact phase-space polynomials.

use serde::{Deserialize, Serialize};

use super::space::{PhasePoly, PhaseSpace};
use crate::error::{Error, Result};
use crate::polyalg::{Coeff, MultiPoly};

/// Every named Hamiltonian, with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Hamiltonian {
    /// `p_q x + p_x²/2 + (Ω1²+Ω2²) x²/2 − Ω1²Ω2² q²/2`
    Pu { omega1: f64, omega2: f64 },
    /// `(P1² + Ω1² X1²)/2 − (P2² + Ω2² X2²)/2`
    PuDiagGhost { omega1: f64, omega2: f64 },
    /// `p_x²/2 + x p_q − Ω² q p_x`, the phase-stripped equal-frequency operator
    Htild { omega: f64 },
    /// `(p_x² + p_q²)/4 + Ω (x p_q − q p_x)`
    Hprime { omega: f64 },
    /// `p_x²/2 − i x p_y + (Ω1²+Ω2²) x²/2 + Ω1²Ω2² y²/2`, the `q = i y` realization
    Rot { omega1: f64, omega2: f64 },
    /// `(P1² + Ω1² X1²)/2 + (P2² + Ω2² X2²)/2`
    DiagPositive { omega1: f64, omega2: f64 },
    /// ghost pair plus `λ (X1 − X2)(X1 + X2)³`, λ > 0
    DiagGhostPlusV1 { omega1: f64, omega2: f64, lambda: f64 },
    /// ghost pair plus `λ (X1 − X2)³(X1 + X2)`
    DiagGhostPlusV2 { omega1: f64, omega2: f64, lambda: f64 },
    /// Ostrogradsky Hamiltonian plus `α q⁴ + β q² x² + γ x⁴`
    PuQuartic {
        omega1: f64,
        omega2: f64,
        alpha: f64,
        beta: f64,
        gamma: f64,
    },
    /// `p P + D (Ω² x + λ x³)`
    Robert { omega: f64, lambda: f64 },
    /// `p P + D (Ω² x + λ x³) − (γ/2)(D² + P²)`
    RobertGamma { omega: f64, lambda: f64, gamma: f64 },
}

/// Loose parameter record used when a Hamiltonian is selected by name.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ParamRecord {
    pub omega1: Option<f64>,
    pub omega2: Option<f64>,
    pub omega: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub lambda: Option<f64>,
}

fn need(v: Option<f64>, what: &str) -> Result<f64> {
    v.ok_or_else(|| Error::InvalidParameter(format!("missing parameter `{what}`")))
}

fn positive(v: f64, what: &str) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("`{what}` must be positive, got {v}")))
    }
}

fn finite(v: f64, what: &str) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("`{what}` must be finite")))
    }
}

pub const HAMILTONIAN_NAMES: &[&str] = &[
    "pu",
    "pu_diag_ghost",
    "htild",
    "hprime",
    "rot",
    "diag_positive",
    "diag_ghost_plus_V1",
    "diag_ghost_plus_V2",
    "pu_quartic",
    "robert",
    "robert_gamma",
];

impl Hamiltonian {
    /// Selects a Hamiltonian by its catalogue name. Frequencies default as
    /// `omega1 = omega2 = omega` when only `omega` is supplied.
    pub fn from_name(name: &str, p: &ParamRecord) -> Result<Self> {
        let o1 = || need(p.omega1.or(p.omega), "omega1");
        let o2 = || need(p.omega2.or(p.omega), "omega2");
        let om = || need(p.omega.or(p.omega1), "omega");
        let zero = |v: Option<f64>| v.unwrap_or(0.0);
        let h = match name {
            "pu" => Hamiltonian::Pu {
                omega1: o1()?,
                omega2: o2()?,
            },
            "pu_diag_ghost" => Hamiltonian::PuDiagGhost {
                omega1: o1()?,
                omega2: o2()?,
            },
            "htild" => Hamiltonian::Htild { omega: om()? },
            "hprime" => Hamiltonian::Hprime { omega: om()? },
            "rot" => Hamiltonian::Rot {
                omega1: o1()?,
                omega2: o2()?,
            },
            "diag_positive" => Hamiltonian::DiagPositive {
                omega1: o1()?,
                omega2: o2()?,
            },
            "diag_ghost_plus_V1" => Hamiltonian::DiagGhostPlusV1 {
                omega1: o1()?,
                omega2: o2()?,
                lambda: need(p.lambda, "lambda")?,
            },
            "diag_ghost_plus_V2" => Hamiltonian::DiagGhostPlusV2 {
                omega1: o1()?,
                omega2: o2()?,
                lambda: need(p.lambda, "lambda")?,
            },
            "pu_quartic" => Hamiltonian::PuQuartic {
                omega1: o1()?,
                omega2: o2()?,
                alpha: zero(p.alpha),
                beta: zero(p.beta),
                gamma: zero(p.gamma),
            },
            "robert" => Hamiltonian::Robert {
                omega: om()?,
                lambda: zero(p.lambda),
            },
            "robert_gamma" => Hamiltonian::RobertGamma {
                omega: om()?,
                lambda: zero(p.lambda),
                gamma: zero(p.gamma),
            },
            other => return Err(Error::UnknownName(other.to_string())),
        };
        h.validate()?;
        Ok(h)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Hamiltonian::Pu { .. } => "pu",
            Hamiltonian::PuDiagGhost { .. } => "pu_diag_ghost",
            Hamiltonian::Htild { .. } => "htild",
            Hamiltonian::Hprime { .. } => "hprime",
            Hamiltonian::Rot { .. } => "rot",
            Hamiltonian::DiagPositive { .. } => "diag_positive",
            Hamiltonian::DiagGhostPlusV1 { .. } => "diag_ghost_plus_V1",
            Hamiltonian::DiagGhostPlusV2 { .. } => "diag_ghost_plus_V2",
            Hamiltonian::PuQuartic { .. } => "pu_quartic",
            Hamiltonian::Robert { .. } => "robert",
            Hamiltonian::RobertGamma { .. } => "robert_gamma",
        }
    }

    pub fn space(&self) -> PhaseSpace {
        match self {
            Hamiltonian::Pu { .. }
            | Hamiltonian::Htild { .. }
            | Hamiltonian::Hprime { .. }
            | Hamiltonian::PuQuartic { .. } => PhaseSpace::ostrogradsky(),
            Hamiltonian::PuDiagGhost { .. }
            | Hamiltonian::DiagPositive { .. }
            | Hamiltonian::DiagGhostPlusV1 { .. }
            | Hamiltonian::DiagGhostPlusV2 { .. } => PhaseSpace::diagonal(),
            Hamiltonian::Rot { .. } => PhaseSpace::rotated(),
            Hamiltonian::Robert { .. } | Hamiltonian::RobertGamma { .. } => PhaseSpace::robert(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Hamiltonian::Pu { omega1, omega2 }
            | Hamiltonian::PuDiagGhost { omega1, omega2 }
            | Hamiltonian::Rot { omega1, omega2 }
            | Hamiltonian::DiagPositive { omega1, omega2 } => {
                positive(omega1, "omega1")?;
                positive(omega2, "omega2")
            }
            Hamiltonian::Htild { omega } | Hamiltonian::Hprime { omega } => positive(omega, "omega"),
            Hamiltonian::DiagGhostPlusV1 { omega1, omega2, lambda } => {
                positive(omega1, "omega1")?;
                positive(omega2, "omega2")?;
                positive(lambda, "lambda")
            }
            Hamiltonian::DiagGhostPlusV2 { omega1, omega2, lambda } => {
                positive(omega1, "omega1")?;
                positive(omega2, "omega2")?;
                finite(lambda, "lambda")
            }
            Hamiltonian::PuQuartic {
                omega1,
                omega2,
                alpha,
                beta,
                gamma,
            } => {
                positive(omega1, "omega1")?;
                positive(omega2, "omega2")?;
                finite(alpha, "alpha")?;
                finite(beta, "beta")?;
                finite(gamma, "gamma")
            }
            Hamiltonian::Robert { omega, lambda } => {
                positive(omega, "omega")?;
                finite(lambda, "lambda")
            }
            Hamiltonian::RobertGamma { omega, lambda, gamma } => {
                positive(omega, "omega")?;
                finite(lambda, "lambda")?;
                finite(gamma, "gamma")
            }
        }
    }

    /// The Hamiltonian as an exact polynomial with the given coefficient field.
    pub fn build<C: Coeff>(&self) -> Result<PhasePoly<C>> {
        self.validate()?;
        let space = self.space();
        let r = space.registry().clone();
        let v = |n: &str| MultiPoly::<C>::var(&r, n).expect("variable in space");
        let c = |x: f64| C::from_f64(x);
        let half = C::from_ratio(1, 2);
        let poly = match *self {
            Hamiltonian::Pu { omega1, omega2 } => pu_poly(&r, c(omega1), c(omega2)),
            Hamiltonian::PuDiagGhost { omega1, omega2 } => diag_pair(&r, c(omega1), c(omega2), -C::one()),
            Hamiltonian::DiagPositive { omega1, omega2 } => diag_pair(&r, c(omega1), c(omega2), C::one()),
            Hamiltonian::Htild { omega } => {
                let (q, x, px, pq) = (v("q"), v("x"), v("p_x"), v("p_q"));
                let w2 = c(omega) * c(omega);
                &(&(&px * &px).scale(&half) + &(&x * &pq)) - &(&q * &px).scale(&w2)
            }
            Hamiltonian::Hprime { omega } => {
                let (q, x, px, pq) = (v("q"), v("x"), v("p_x"), v("p_q"));
                let quarter = C::from_ratio(1, 4);
                let kin = (&(&px * &px) + &(&pq * &pq)).scale(&quarter);
                &kin + &(&(&x * &pq) - &(&q * &px)).scale(&c(omega))
            }
            Hamiltonian::Rot { omega1, omega2 } => {
                let (x, px, y, py) = (v("x"), v("p_x"), v("y"), v("p_y"));
                let (a, b) = (c(omega1), c(omega2));
                let s = a.clone() * a.clone() + b.clone() * b.clone();
                let p = a.clone() * a * b.clone() * b;
                let kin = (&px * &px).scale(&half);
                let cross = (&x * &py).scale(&-C::imag_unit());
                let pot = &(&x * &x).scale(&(s * half.clone())) + &(&y * &y).scale(&(p * half));
                &(&kin + &cross) + &pot
            }
            Hamiltonian::DiagGhostPlusV1 { omega1, omega2, lambda } => {
                let base = diag_pair(&r, c(omega1), c(omega2), -C::one());
                let (x1, x2) = (v("X1"), v("X2"));
                let vpot = (&(&x1 - &x2) * &(&x1 + &x2).pow(3)).scale(&c(lambda));
                &base + &vpot
            }
            Hamiltonian::DiagGhostPlusV2 { omega1, omega2, lambda } => {
                let base = diag_pair(&r, c(omega1), c(omega2), -C::one());
                let (x1, x2) = (v("X1"), v("X2"));
                let vpot = (&(&x1 - &x2).pow(3) * &(&x1 + &x2)).scale(&c(lambda));
                &base + &vpot
            }
            Hamiltonian::PuQuartic {
                omega1,
                omega2,
                alpha,
                beta,
                gamma,
            } => {
                let (q, x) = (v("q"), v("x"));
                let base = pu_poly(&r, c(omega1), c(omega2));
                let q2 = &q * &q;
                let x2 = &x * &x;
                let quartic =
                    &(&(&q2 * &q2).scale(&c(alpha)) + &(&q2 * &x2).scale(&c(beta))) + &(&x2 * &x2).scale(&c(gamma));
                &base + &quartic
            }
            Hamiltonian::Robert { omega, lambda } => robert_poly(&r, c(omega), c(lambda)),
            Hamiltonian::RobertGamma { omega, lambda, gamma } => {
                let (d, pp) = (v("D"), v("P"));
                let extra = (&(&d * &d) + &(&pp * &pp)).scale(&(c(gamma) * half));
                &robert_poly(&r, c(omega), c(lambda)) - &extra
            }
        };
        PhasePoly::new(space, poly)
    }
}

fn pu_poly<C: Coeff>(r: &crate::polyalg::Registry, o1: C, o2: C) -> MultiPoly<C> {
    let v = |n: &str| MultiPoly::<C>::var(r, n).expect("variable");
    let (q, x, px, pq) = (v("q"), v("x"), v("p_x"), v("p_q"));
    let half = C::from_ratio(1, 2);
    let s = o1.clone() * o1.clone() + o2.clone() * o2.clone();
    let p = o1.clone() * o1 * o2.clone() * o2;
    let kin = &(&pq * &x) + &(&px * &px).scale(&half);
    let pot = &(&x * &x).scale(&(s * half.clone())) - &(&q * &q).scale(&(p * half));
    &kin + &pot
}

/// `(P1² + Ω1² X1²)/2 + sign (P2² + Ω2² X2²)/2`
fn diag_pair<C: Coeff>(r: &crate::polyalg::Registry, o1: C, o2: C, sign: C) -> MultiPoly<C> {
    let v = |n: &str| MultiPoly::<C>::var(r, n).expect("variable");
    let (x1, p1, x2, p2) = (v("X1"), v("P1"), v("X2"), v("P2"));
    let half = C::from_ratio(1, 2);
    let osc1 = &(&p1 * &p1) + &(&x1 * &x1).scale(&(o1.clone() * o1));
    let osc2 = &(&p2 * &p2) + &(&x2 * &x2).scale(&(o2.clone() * o2));
    (&osc1 + &osc2.scale(&sign)).scale(&half)
}

fn robert_poly<C: Coeff>(r: &crate::polyalg::Registry, omega: C, lambda: C) -> MultiPoly<C> {
    let v = |n: &str| MultiPoly::<C>::var(r, n).expect("variable");
    let (x, p, d, pp) = (v("x"), v("p"), v("D"), v("P"));
    let force = &x.scale(&(omega.clone() * omega)) + &x.pow(3).scale(&lambda);
    &(&p * &pp) + &(&d * &force)
}
