//! Hermite identities and the spectral scans (Jordan-limit Gram matrices,
//! density of the ghost spectrum).

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use super::eigen::{energy, positive_polynomial, EnergyKind, SpectrumParams};
use crate::error::{Error, Result};
use crate::polyalg::{exp_diff_apply, hermite_sequence, Coeff, DiffOp, ExactComplex, Exponent, MultiPoly, Registry};

fn z_registry() -> Registry {
    Registry::new(&["z"])
}

/// `H_{n+m}(z) == Σ_j (−2)^j n! m! / (j!(n−j)!(m−j)!) H_{n−j}(z) H_{m−j}(z)`,
/// both sides expanded in rational arithmetic.
pub fn hermite_sum_identity(n: u32, m: u32) -> bool {
    let r = z_registry();
    let z = MultiPoly::<ExactComplex>::var(&r, "z").expect("z is registered");
    let h = hermite_sequence(n + m, &z);
    let mut rhs = MultiPoly::zero(&r);
    for j in 0..=n.min(m) {
        // n!m!/(j!(n−j)!(m−j)!) = C(n,j) · m!/(m−j)!
        let mut w: i64 = 1;
        for s in 0..j as i64 {
            w = w * (n as i64 - s) / (s + 1);
        }
        for s in 0..j as i64 {
            w *= m as i64 - s;
        }
        let c = ExactComplex::from_i64(w) * ExactComplex::from_i64(-2).pow(j);
        rhs = &rhs + &(&h[(n - j) as usize] * &h[(m - j) as usize]).scale(&c);
    }
    rhs == h[(n + m) as usize]
}

/// `exp{−¼ ∂²} zⁿ == 2⁻ⁿ H_n(z)` in rational arithmetic.
pub fn exp_hermite_identity(n: u32) -> Result<bool> {
    let r = z_registry();
    let z = MultiPoly::<ExactComplex>::var(&r, "z")?;
    let d2 = DiffOp::deriv(&r, "z", 2)?;
    let lhs = exp_diff_apply(&d2, &ExactComplex::from_ratio(-1, 4), &z.pow(n))?;
    let rhs = hermite_sequence(n, &z)
        .pop()
        .expect("non-empty")
        .scale(&(ExactComplex::one() / ExactComplex::from_i64(2).pow(n)));
    Ok(lhs == rhs)
}

/// For each `Δ`, the smallest singular value of the Gram matrix of the
/// normalized coefficient vectors of `{φ_nm : n + m = level}` at
/// `Ω1 = base + Δ`, `Ω2 = base`.
pub fn gram_degeneracy(level: u32, deltas: &[f64], base: f64) -> Result<Vec<f64>> {
    if !(base > 0.0 && base.is_finite()) {
        return Err(Error::InvalidParameter("base frequency must be positive".into()));
    }
    let mut out = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::InvalidParameter(format!("Δ must be positive, got {delta}")));
        }
        if level == 0 {
            out.push(1.0);
            continue;
        }
        let p = SpectrumParams::new(base + delta, base)?;
        let family: Vec<MultiPoly<Complex64>> = (0..=level)
            .map(|n| positive_polynomial(n, level - n, &p))
            .collect::<Result<_>>()?;
        out.push(smallest_gram_singular_value(&family));
    }
    Ok(out)
}

fn smallest_gram_singular_value(family: &[MultiPoly<Complex64>]) -> f64 {
    let mut index: BTreeMap<Exponent, usize> = BTreeMap::new();
    for p in family {
        for (e, _) in p.terms() {
            let next = index.len();
            index.entry(e.clone()).or_insert(next);
        }
    }
    let mut v = DMatrix::<Complex64>::zeros(index.len(), family.len());
    for (col, p) in family.iter().enumerate() {
        for (e, c) in p.terms() {
            v[(index[e], col)] = *c;
        }
        let norm = v.column(col).norm();
        v.column_mut(col).unscale_mut(norm);
    }
    let gram = v.adjoint() * &v;
    gram.singular_values().min()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityHit {
    pub gap: f64,
    pub n: u32,
    pub m: u32,
}

/// Exhaustive `min_{n,m ≤ cutoff} |E_nm − E*|` over the ghost spectrum.
/// Ties keep the lexicographically smallest `(n, m)`.
pub fn density_scan(omega1: f64, omega2: f64, target: f64, cutoff: u32) -> Result<DensityHit> {
    let p = SpectrumParams::new(omega1, omega2)?;
    let mut best = DensityHit {
        gap: f64::INFINITY,
        n: 0,
        m: 0,
    };
    for n in 0..=cutoff {
        for m in 0..=cutoff {
            let gap = (energy(EnergyKind::Ghost, n, m, &p)? - target).abs();
            if gap < best.gap {
                best = DensityHit { gap, n, m };
            }
        }
    }
    Ok(best)
}
