//! Classical systems: closed-form Hamilton equations plus an evaluator for the
//! Poisson-bracket vector field they must agree with.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phasespace::{hamiltonian_vector_field, Hamiltonian, PhaseSpace};
use crate::polyalg::{Complex64, MultiPoly};

/// Canonical coordinates in the registry order of the system's phase space:
/// `(q, x, p_x, p_q)`, `(X1, P1, X2, P2)` or `(x, p, D, P)`.
pub type State4 = [f64; 4];

/// Names with a real classical interpretation.
pub const CLASSICAL_SYSTEMS: &[&str] = &[
    "pu",
    "pu_quartic",
    "diag_ghost_plus_V1",
    "diag_ghost_plus_V2",
    "robert",
    "robert_gamma",
];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SystemSpec {
    pub hamiltonian: Hamiltonian,
}

impl SystemSpec {
    pub fn new(hamiltonian: Hamiltonian) -> Result<Self> {
        if !CLASSICAL_SYSTEMS.contains(&hamiltonian.name()) {
            return Err(Error::InvalidParameter(format!(
                "`{}` has no classical trajectory interpretation",
                hamiltonian.name()
            )));
        }
        hamiltonian.validate()?;
        Ok(SystemSpec { hamiltonian })
    }

    pub fn name(&self) -> &'static str {
        self.hamiltonian.name()
    }

    pub fn space(&self) -> PhaseSpace {
        self.hamiltonian.space()
    }

    /// Labels of the four state components.
    pub fn labels(&self) -> Vec<String> {
        self.space().registry().names().to_vec()
    }

    /// Hamilton's equations, written out by hand.
    pub fn rhs(&self, s: &State4) -> State4 {
        match self.hamiltonian {
            Hamiltonian::Pu { omega1, omega2 } => pu_rhs(omega1, omega2, 0.0, 0.0, 0.0, s),
            Hamiltonian::PuQuartic {
                omega1,
                omega2,
                alpha,
                beta,
                gamma,
            } => pu_rhs(omega1, omega2, alpha, beta, gamma, s),
            Hamiltonian::DiagGhostPlusV1 { omega1, omega2, lambda } => {
                let [x1, p1, x2, p2] = *s;
                let (d, u) = (x1 - x2, x1 + x2);
                // V = λ d u³
                let g1 = lambda * (u.powi(3) + 3.0 * d * u * u);
                let g2 = lambda * (-u.powi(3) + 3.0 * d * u * u);
                ghost_rhs(omega1, omega2, g1, g2, x1, p1, x2, p2)
            }
            Hamiltonian::DiagGhostPlusV2 { omega1, omega2, lambda } => {
                let [x1, p1, x2, p2] = *s;
                let (d, u) = (x1 - x2, x1 + x2);
                // V = λ d³ u
                let g1 = lambda * (3.0 * d * d * u + d.powi(3));
                let g2 = lambda * (-3.0 * d * d * u + d.powi(3));
                ghost_rhs(omega1, omega2, g1, g2, x1, p1, x2, p2)
            }
            Hamiltonian::Robert { omega, lambda } => robert_rhs(omega, lambda, 0.0, s),
            Hamiltonian::RobertGamma { omega, lambda, gamma } => robert_rhs(omega, lambda, gamma, s),
            _ => unreachable!("SystemSpec::new admits classical systems only"),
        }
    }

    pub fn energy(&self, s: &State4) -> f64 {
        match self.hamiltonian {
            Hamiltonian::Pu { omega1, omega2 } => pu_energy(omega1, omega2, 0.0, 0.0, 0.0, s),
            Hamiltonian::PuQuartic {
                omega1,
                omega2,
                alpha,
                beta,
                gamma,
            } => pu_energy(omega1, omega2, alpha, beta, gamma, s),
            Hamiltonian::DiagGhostPlusV1 { omega1, omega2, lambda } => {
                let [x1, p1, x2, p2] = *s;
                let v = lambda * (x1 - x2) * (x1 + x2).powi(3);
                0.5 * (p1 * p1 + omega1 * omega1 * x1 * x1) - 0.5 * (p2 * p2 + omega2 * omega2 * x2 * x2) + v
            }
            Hamiltonian::DiagGhostPlusV2 { omega1, omega2, lambda } => {
                let [x1, p1, x2, p2] = *s;
                let v = lambda * (x1 - x2).powi(3) * (x1 + x2);
                0.5 * (p1 * p1 + omega1 * omega1 * x1 * x1) - 0.5 * (p2 * p2 + omega2 * omega2 * x2 * x2) + v
            }
            Hamiltonian::Robert { omega, lambda } => robert_energy(omega, lambda, 0.0, s),
            Hamiltonian::RobertGamma { omega, lambda, gamma } => robert_energy(omega, lambda, gamma, s),
            _ => unreachable!("SystemSpec::new admits classical systems only"),
        }
    }

    /// The Poisson-bracket vector field `{v, H}` compiled for evaluation.
    pub fn bracket_field(&self) -> Result<BracketField> {
        let h = self.hamiltonian.build::<Complex64>()?;
        let comps = hamiltonian_vector_field(&h)?;
        let compile = |p: &MultiPoly<Complex64>| -> Result<Vec<(f64, [i32; 4])>> {
            p.terms()
                .map(|(e, c)| {
                    if c.im != 0.0 {
                        return Err(Error::InvalidParameter("vector field is not real".into()));
                    }
                    Ok((c.re, [e[0] as i32, e[1] as i32, e[2] as i32, e[3] as i32]))
                })
                .collect()
        };
        Ok(BracketField {
            components: [
                compile(&comps[0])?,
                compile(&comps[1])?,
                compile(&comps[2])?,
                compile(&comps[3])?,
            ],
        })
    }
}

fn pu_rhs(o1: f64, o2: f64, alpha: f64, beta: f64, gamma: f64, s: &State4) -> State4 {
    let [q, x, px, pq] = *s;
    let sum = o1 * o1 + o2 * o2;
    let prod = o1 * o1 * o2 * o2;
    [
        x,
        px,
        -pq - sum * x - 2.0 * beta * q * q * x - 4.0 * gamma * x.powi(3),
        prod * q - 4.0 * alpha * q.powi(3) - 2.0 * beta * q * x * x,
    ]
}

fn pu_energy(o1: f64, o2: f64, alpha: f64, beta: f64, gamma: f64, s: &State4) -> f64 {
    let [q, x, px, pq] = *s;
    let sum = o1 * o1 + o2 * o2;
    let prod = o1 * o1 * o2 * o2;
    pq * x + 0.5 * px * px + 0.5 * sum * x * x - 0.5 * prod * q * q
        + alpha * q.powi(4)
        + beta * q * q * x * x
        + gamma * x.powi(4)
}

#[allow(clippy::too_many_arguments)]
fn ghost_rhs(o1: f64, o2: f64, g1: f64, g2: f64, x1: f64, p1: f64, x2: f64, p2: f64) -> State4 {
    [p1, -o1 * o1 * x1 - g1, -p2, o2 * o2 * x2 - g2]
}

fn robert_rhs(omega: f64, lambda: f64, gamma: f64, s: &State4) -> State4 {
    let [x, p, d, pp] = *s;
    let w2 = omega * omega;
    [
        pp,
        -d * (w2 + 3.0 * lambda * x * x),
        p - gamma * pp,
        -(w2 * x + lambda * x.powi(3)) + gamma * d,
    ]
}

fn robert_energy(omega: f64, lambda: f64, gamma: f64, s: &State4) -> f64 {
    let [x, p, d, pp] = *s;
    p * pp + d * (omega * omega * x + lambda * x.powi(3)) - 0.5 * gamma * (d * d + pp * pp)
}

/// Sparse real polynomial components of `v ↦ {v, H}`.
#[derive(Clone, Debug)]
pub struct BracketField {
    components: [Vec<(f64, [i32; 4])>; 4],
}

impl BracketField {
    pub fn eval(&self, s: &State4) -> State4 {
        let mut out = [0.0; 4];
        for (k, comp) in self.components.iter().enumerate() {
            out[k] = comp
                .iter()
                .map(|(c, e)| c * s[0].powi(e[0]) * s[1].powi(e[1]) * s[2].powi(e[2]) * s[3].powi(e[3]))
                .sum();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_pu_example() {
        let spec = SystemSpec::new(Hamiltonian::Pu {
            omega1: 1.0,
            omega2: 1.0,
        })
        .unwrap();
        assert_eq!(spec.rhs(&[1.0, 0.0, 0.0, 0.0]), [0.0, 0.0, 0.0, 1.0]);
        assert_eq!(spec.rhs(&[0.0, 1.0, 0.0, 0.0]), [1.0, 0.0, -2.0, 0.0]);
    }

    #[test]
    fn ghost_vacuum_is_fixed() {
        let spec = SystemSpec::new(Hamiltonian::DiagGhostPlusV1 {
            omega1: 1.2,
            omega2: 1.0,
            lambda: 0.1,
        })
        .unwrap();
        assert_eq!(spec.rhs(&[0.0; 4]), [0.0; 4]);
    }

    #[test]
    fn robert_linear_example() {
        let spec = SystemSpec::new(Hamiltonian::Robert {
            omega: 1.5,
            lambda: 0.0,
        })
        .unwrap();
        assert_eq!(spec.rhs(&[1.0, 0.0, 0.0, 0.0]), [0.0, 0.0, 0.0, -2.25]);
    }

    #[test]
    fn rejects_non_classical_systems() {
        assert!(SystemSpec::new(Hamiltonian::Rot {
            omega1: 2.0,
            omega2: 1.0
        })
        .is_err());
        assert!(SystemSpec::new(Hamiltonian::DiagGhostPlusV1 {
            omega1: 2.0,
            omega2: 1.0,
            lambda: -1.0
        })
        .is_err());
    }
}
