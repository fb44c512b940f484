use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::polyalg::{Coeff, DiffOp, ExpPolyFn, Exponent, MultiPoly, QuadExponent};
use crate::spectra::{qx_registry, Operator};

use super::ansatz::AnsatzParams;

/// Normalized moments `E[v^α]` of the weight `exp(−½ vᵀ M v)`, computed from
/// the covariance `Σ = M⁻¹` by the Wick recursion
/// `E[v_i v^β] = Σ_j Σ_ij β_j E[v^(β − e_j)]`. `M` may be complex as long as
/// its real part is positive definite.
#[derive(Clone, Debug)]
pub struct GaussianMoments<C: Coeff> {
    cov: Vec<Vec<C>>,
    memo: HashMap<Exponent, C>,
}

impl<C: Coeff> GaussianMoments<C> {
    pub fn from_precision(m: &[Vec<C>]) -> Result<Self> {
        let n = m.len();
        if m.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("precision matrix must be square".into()));
        }
        let re: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|c| c.to_c64().re).collect()).collect();
        if !positive_definite(&re) {
            return Err(Error::InvalidParameter("Gaussian weight is not normalizable".into()));
        }
        Ok(GaussianMoments {
            cov: invert(m)?,
            memo: HashMap::new(),
        })
    }

    /// Reads `M` off a weight `exp(W)` with `W` a quadratic form: `M_ii = −2 w_ii`, `M_ij = −w_ij`.
    pub fn from_weight(w: &QuadExponent<C>) -> Result<Self> {
        let n = w.registry().len();
        let mut m = vec![vec![C::zero(); n]; n];
        for (e, c) in w.form().terms() {
            let idx: Vec<usize> = (0..n).filter(|&k| e[k] > 0).collect();
            match idx[..] {
                [i] => m[i][i] = c.clone() * C::from_i64(-2),
                [i, j] => {
                    m[i][j] = -c.clone();
                    m[j][i] = -c.clone();
                }
                _ => unreachable!("quadratic form"),
            }
        }
        Self::from_precision(&m)
    }

    pub fn covariance(&self) -> &[Vec<C>] {
        &self.cov
    }

    pub fn moment(&mut self, alpha: &[u16]) -> C {
        if alpha.iter().map(|&a| a as u32).sum::<u32>() % 2 == 1 {
            return C::zero();
        }
        let Some(i) = alpha.iter().position(|&a| a > 0) else {
            return C::one();
        };
        if let Some(v) = self.memo.get(alpha) {
            return v.clone();
        }
        let mut beta = alpha.to_vec();
        beta[i] -= 1;
        let mut acc = C::zero();
        for j in 0..beta.len() {
            if beta[j] == 0 || self.cov[i][j].is_exact_zero() {
                continue;
            }
            let mut g = beta.clone();
            g[j] -= 1;
            let sub = self.moment(&g);
            acc = acc + self.cov[i][j].clone() * C::from_i64(beta[j] as i64) * sub;
        }
        self.memo.insert(alpha.to_vec(), acc.clone());
        acc
    }

    /// `E[p]` for a polynomial `p`.
    pub fn expect(&mut self, p: &MultiPoly<C>) -> C {
        let mut acc = C::zero();
        for (e, c) in p.terms() {
            acc = acc + c.clone() * self.moment(e);
        }
        acc
    }
}

fn positive_definite(m: &[Vec<f64>]) -> bool {
    let n = m.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = m[i][i] - s;
                if d.is_nan() || d <= 0.0 {
                    return false;
                }
                l[i][i] = d.sqrt();
            } else {
                l[i][j] = (0.5 * (m[i][j] + m[j][i]) - s) / l[j][j];
            }
        }
    }
    true
}

fn invert<C: Coeff>(m: &[Vec<C>]) -> Result<Vec<Vec<C>>> {
    let n = m.len();
    let mut a: Vec<Vec<C>> = m.to_vec();
    let mut inv: Vec<Vec<C>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { C::one() } else { C::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&r, &s| a[r][col].magnitude().total_cmp(&a[s][col].magnitude()))
            .filter(|&r| !a[r][col].is_exact_zero())
            .ok_or(Error::Singular)?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let d = a[col][col].clone();
        for k in 0..n {
            a[col][k] = a[col][k].clone() / d.clone();
            inv[col][k] = inv[col][k].clone() / d.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_exact_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for k in 0..n {
                a[r][k] = a[r][k].clone() - f.clone() * a[col][k].clone();
                inv[r][k] = inv[r][k].clone() - f.clone() * inv[col][k].clone();
            }
        }
    }
    Ok(inv)
}

/// `⟨ψ|H|ψ⟩ / ⟨ψ|ψ⟩` for real variables, where `|ψ|²` is Gaussian.
pub fn expectation<C: Coeff>(op: &DiffOp<C>, psi: &ExpPolyFn<C>) -> Result<C> {
    let hpsi = op.apply(psi)?;
    let form = psi.exponent.form();
    let weight = QuadExponent::from_form(form + &form.map_coeffs(|c| c.conj()))?;
    let mut g = GaussianMoments::from_weight(&weight)?;
    let bra = psi.poly.map_coeffs(|c| c.conj());
    let norm = g.expect(&(&bra * &psi.poly));
    if norm.is_exact_zero() {
        return Err(Error::InvalidParameter("zero state".into()));
    }
    Ok(g.expect(&(&bra * &hpsi.poly)) / norm)
}

/// Energy of the ansatz by symbolic application of the interacting
/// Hamiltonian and exact Gaussian moments. Complex in general; the imaginary
/// part vanishes for valid parameters.
pub fn energy_quadrature<C: Coeff>(p: &AnsatzParams) -> Result<C> {
    p.validate()?;
    let k = p.couplings;
    let op = Operator::HInteracting {
        omega: p.omega,
        alpha: k.alpha,
        beta: k.beta,
        gamma: k.gamma,
    }
    .build::<C>()?;
    let r = qx_registry();
    let half = C::from_ratio(-1, 2);
    let cross = C::imag_unit() * C::from_f64(p.b) * half.clone();
    let exponent = QuadExponent::from_matrix(
        &r,
        &["q", "x"],
        &[
            vec![C::from_f64(p.a) * half.clone(), cross.clone()],
            vec![cross, C::from_f64(p.c) * half],
        ],
    )?;
    let psi = ExpPolyFn::new(MultiPoly::one(&r), exponent)?;
    expectation(&op, &psi)
}
