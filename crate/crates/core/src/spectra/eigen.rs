//! Discrete eigenfunction families and their energies.

use serde::{Deserialize, Serialize};

use super::operators::{qx_registry, xy_registry, zw_registry, Operator};
use crate::error::{Error, Result};
use crate::polyalg::{coeff_max_norm, hermite_sequence, Coeff, DiffOp, ExpPolyFn, MultiPoly, QuadExponent, Registry};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumParams {
    pub omega1: f64,
    pub omega2: f64,
}

impl SpectrumParams {
    pub fn new(omega1: f64, omega2: f64) -> Result<Self> {
        if !(omega1 > 0.0 && omega2 > 0.0 && omega1.is_finite() && omega2.is_finite()) {
            return Err(Error::InvalidParameter("frequencies must be positive".into()));
        }
        if omega1 < omega2 {
            return Err(Error::InvalidParameter(format!(
                "frequencies are ordered omega1 >= omega2, got {omega1} < {omega2}"
            )));
        }
        Ok(SpectrumParams { omega1, omega2 })
    }

    pub fn delta(&self) -> f64 {
        self.omega1 - self.omega2
    }

    fn distinct(&self, what: &str) -> Result<()> {
        if self.omega1 == self.omega2 {
            Err(Error::EqualFrequency(what.to_string()))
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyKind {
    /// `(n+½)Ω1 − (m+½)Ω2`
    Ghost,
    /// `(n+½)Ω1 + (m+½)Ω2`
    Positive,
    /// `Ω(n − m)` at equal frequencies
    Degenerate,
}

pub fn energy(kind: EnergyKind, n: u32, m: u32, p: &SpectrumParams) -> Result<f64> {
    let (n, m) = (n as f64, m as f64);
    match kind {
        EnergyKind::Ghost => Ok((n + 0.5) * p.omega1 - (m + 0.5) * p.omega2),
        EnergyKind::Positive => Ok((n + 0.5) * p.omega1 + (m + 0.5) * p.omega2),
        EnergyKind::Degenerate => {
            if p.omega1 != p.omega2 {
                return Err(Error::InvalidParameter(
                    "degenerate energies need omega1 == omega2".into(),
                ));
            }
            Ok(p.omega1 * (n - m))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Labels {
    Levels { n: u32, m: u32 },
    JordanLevel { n_minus_m: i64 },
    Continuum { l: i64, k: f64, truncation: u32 },
}

/// A wavefunction with its claimed energy and verification residual.
#[derive(Clone, Debug)]
pub struct EigenResult<C: Coeff> {
    pub wavefunction: ExpPolyFn<C>,
    pub energy: C,
    /// `coeff_max_norm((H − E)Ψ)`
    pub residual: f64,
    /// `residual / coeff_max_norm(EΨ)` for `E ≠ 0`, otherwise the absolute residual.
    pub relative_residual: f64,
    pub labels: Labels,
    pub operator: Operator,
}

impl<C: Coeff> EigenResult<C> {
    pub(crate) fn evaluate(wavefunction: ExpPolyFn<C>, energy: C, operator: Operator, labels: Labels) -> Result<Self> {
        let (residual, relative_residual) = eigen_residual(&operator.build()?, &wavefunction, &energy)?;
        Ok(EigenResult {
            wavefunction,
            energy,
            residual,
            relative_residual,
            labels,
            operator,
        })
    }

    /// Re-applies the operator and returns the absolute residual.
    pub fn recompute_residual(&self) -> Result<f64> {
        Ok(eigen_residual(&self.operator.build()?, &self.wavefunction, &self.energy)?.0)
    }
}

/// `(|(H − E)Ψ|, relative)` in the coefficient max-norm.
pub fn eigen_residual<C: Coeff>(op: &DiffOp<C>, psi: &ExpPolyFn<C>, e: &C) -> Result<(f64, f64)> {
    let hpsi = op.apply(psi)?;
    let epsi = psi.scale(e);
    let res = coeff_max_norm(&hpsi.sub(&epsi)?);
    let scale = coeff_max_norm(&epsi);
    let rel = if e.is_exact_zero() || scale == 0.0 {
        res
    } else {
        res / scale
    };
    Ok((res, rel))
}

/// `m!(n−m)! / ((m−k)! k! (n−m+k)!)` = `C(m,k) (n−m)!/(n−m+k)!` for `m ≤ n`.
fn mixing_weight<C: Coeff>(small: u32, gap: u32, k: u32) -> C {
    let mut binom: i64 = 1;
    for j in 0..k as i64 {
        binom = binom * (small as i64 - j) / (j + 1);
    }
    let mut rising = C::one();
    for j in 1..=k {
        rising = rising * C::from_i64((gap + j) as i64);
    }
    C::from_i64(binom) / rising
}

/// `sum_k c^k w_k H_{gap+k}(a) H_k(b)` (or with roles swapped when `m > n`):
/// the shared structure of both discrete families.
fn mixed_hermite_sum<C: Coeff>(n: u32, m: u32, c: &C, first: &MultiPoly<C>, second: &MultiPoly<C>) -> MultiPoly<C> {
    let ha = hermite_sequence(n.max(m), first);
    let hb = hermite_sequence(n.max(m), second);
    let (small, gap) = if m <= n { (m, n - m) } else { (n, m - n) };
    let mut acc = MultiPoly::zero(first.registry());
    for k in 0..=small {
        let w = c.pow(k) * mixing_weight::<C>(small, gap, k);
        let prod = if m <= n {
            &ha[(gap + k) as usize] * &hb[k as usize]
        } else {
            &ha[k as usize] * &hb[(gap + k) as usize]
        };
        acc = &acc + &prod.scale(&w);
    }
    acc
}

/// Polynomial part `φ_nm(q, x)` of the ghost-realization eigenfunction.
pub fn ghost_polynomial<C: Coeff>(n: u32, m: u32, p: &SpectrumParams) -> Result<MultiPoly<C>> {
    p.distinct("ghost eigenfunction")?;
    let r = qx_registry();
    let (a, b) = (C::from_f64(p.omega1), C::from_f64(p.omega2));
    let i = C::imag_unit();
    let sa = a.sqrt()?;
    let sb = b.sqrt()?;
    // H⁺ argument i√Ω1(Ω2 q − i x), H⁻ argument √Ω2(Ω1 q + i x)
    let plus = MultiPoly::linear(&r, &[("q", i.clone() * sa.clone() * b.clone()), ("x", sa.clone())])?;
    let minus = MultiPoly::linear(&r, &[("q", sb.clone() * a.clone()), ("x", i.clone() * sb.clone())])?;
    let delta = a.clone() - b.clone();
    let c = i * delta / (C::from_i64(4) * sa * sb);
    Ok(mixed_hermite_sum(n, m, &c, &plus, &minus))
}

/// `exp{−iΩ1Ω2 qx − Δ/2 (x² + Ω1Ω2 q²)}`
pub fn ghost_exponent<C: Coeff>(p: &SpectrumParams) -> Result<QuadExponent<C>> {
    let r = qx_registry();
    let (a, b) = (C::from_f64(p.omega1), C::from_f64(p.omega2));
    let prod = a.clone() * b.clone();
    let half = C::from_ratio(1, 2);
    let delta = a - b;
    let qq = -(delta.clone() * half.clone() * prod.clone());
    let xx = -(delta * half.clone());
    let qx = -(C::imag_unit() * prod * half);
    QuadExponent::from_matrix(&r, &["q", "x"], &[vec![qq, qx.clone()], vec![qx, xx]])
}

/// Ghost-family eigenfunction `Ψ_nm` of the Ostrogradsky Hamiltonian, verified against `H_pu`.
pub fn ghost_eigenfunction<C: Coeff>(n: u32, m: u32, p: &SpectrumParams) -> Result<EigenResult<C>> {
    let psi = ExpPolyFn::new(ghost_polynomial(n, m, p)?, ghost_exponent(p)?)?;
    let e = C::from_f64(energy(EnergyKind::Ghost, n, m, p)?);
    EigenResult::evaluate(
        psi,
        e,
        Operator::HPu {
            omega1: p.omega1,
            omega2: p.omega2,
        },
        Labels::Levels { n, m },
    )
}

/// Positive-realization polynomial `φ_nm` over the given two-variable registry,
/// with `z`, `w` supplied as linear forms.
fn positive_sum<C: Coeff>(
    n: u32,
    m: u32,
    p: &SpectrumParams,
    z: &MultiPoly<C>,
    w: &MultiPoly<C>,
) -> Result<MultiPoly<C>> {
    let (a, b) = (C::from_f64(p.omega1), C::from_f64(p.omega2));
    let root = (a.clone() * b.clone()).sqrt()?;
    let c = -(a + b) / (C::from_i64(4) * root);
    Ok(mixed_hermite_sum(n, m, &c, z, w))
}

/// `φ_nm(x, y)` with `z = √Ω1(x + Ω2 y)` and `w = √Ω2(x + Ω1 y)`.
pub fn positive_polynomial<C: Coeff>(n: u32, m: u32, p: &SpectrumParams) -> Result<MultiPoly<C>> {
    let r = xy_registry();
    let (a, b) = (C::from_f64(p.omega1), C::from_f64(p.omega2));
    let (sa, sb) = (a.sqrt()?, b.sqrt()?);
    let z = MultiPoly::linear(&r, &[("x", sa.clone()), ("y", sa * b)])?;
    let w = MultiPoly::linear(&r, &[("x", sb.clone()), ("y", sb * a)])?;
    positive_sum(n, m, p, &z, &w)
}

/// `φ_nm(z, w)` expressed directly in the `z, w` variables.
pub fn positive_polynomial_zw<C: Coeff>(n: u32, m: u32, p: &SpectrumParams) -> Result<MultiPoly<C>> {
    let r = zw_registry();
    let z = MultiPoly::var(&r, "z")?;
    let w = MultiPoly::var(&r, "w")?;
    positive_sum(n, m, p, &z, &w)
}

/// Positive-spectrum family, verified against `O_xy` with eigenvalue `(n+½)Ω1 + (m+½)Ω2`.
pub fn positive_eigenfunction<C: Coeff>(n: u32, m: u32, p: &SpectrumParams) -> Result<EigenResult<C>> {
    p.distinct("positive eigenfunction")?;
    let phi = ExpPolyFn::polynomial(positive_polynomial(n, m, p)?);
    let e = C::from_f64(energy(EnergyKind::Positive, n, m, p)?);
    EigenResult::evaluate(
        phi,
        e,
        Operator::OXy {
            omega1: p.omega1,
            omega2: p.omega2,
        },
        Labels::Levels { n, m },
    )
}

/// `e^{−iΩ² qx}` over `vars` (which must contain `q` and `x`).
pub fn equal_frequency_exponent<C: Coeff>(vars: &Registry, omega: f64) -> Result<QuadExponent<C>> {
    let w = C::from_f64(omega);
    let half = C::from_ratio(1, 2);
    let qx = -(C::imag_unit() * w.clone() * w * half);
    QuadExponent::from_matrix(vars, &["q", "x"], &[vec![C::zero(), qx.clone()], vec![qx, C::zero()]])
}

/// Jordan-level representative `e^{−iΩ²qx} H⁺_N` (or `H⁻_{|N|}` for `N < 0`),
/// with energy `ΩN`.
pub fn degenerate_family<C: Coeff>(n_minus_m: i64, omega: f64) -> Result<EigenResult<C>> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::InvalidParameter("omega must be positive".into()));
    }
    let r = qx_registry();
    let w = C::from_f64(omega);
    let sw = w.sqrt()?;
    let i = C::imag_unit();
    let arg = if n_minus_m >= 0 {
        // i√Ω(Ω q − i x)
        MultiPoly::linear(&r, &[("q", i.clone() * sw.clone() * w.clone()), ("x", sw)])?
    } else {
        // √Ω(Ω q + i x)
        MultiPoly::linear(&r, &[("q", sw.clone() * w.clone()), ("x", i * sw)])?
    };
    let order = n_minus_m.unsigned_abs() as u32;
    let poly = hermite_sequence(order, &arg).pop().expect("non-empty");
    let psi = ExpPolyFn::new(poly, equal_frequency_exponent(&r, omega)?)?;
    EigenResult::evaluate(
        psi,
        C::from_f64(omega * n_minus_m as f64),
        Operator::HPu {
            omega1: omega,
            omega2: omega,
        },
        Labels::JordanLevel { n_minus_m },
    )
}
