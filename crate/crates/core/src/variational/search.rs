use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fsutil::write_atomic;

use super::ansatz::{energy_closed_form, AnsatzParams, Couplings};

/// Upper bound on ramp moves before the search is declared stuck.
pub const MAX_SEARCH_MOVES: usize = 10_000;

/// A parameter path with strictly decreasing variational energies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnboundednessCertificate {
    pub couplings: Couplings,
    pub omega: f64,
    pub threshold: f64,
    pub path: Vec<AnsatzParams>,
    pub energies: Vec<f64>,
    pub terminal: f64,
}

impl UnboundednessCertificate {
    /// Re-evaluates every energy and checks monotonicity and the terminal bound.
    pub fn verify(&self) -> Result<bool> {
        let mut prev = f64::INFINITY;
        for (p, &e) in self.path.iter().zip(&self.energies) {
            let fresh = energy_closed_form(p)?;
            if fresh != e || e.partial_cmp(&prev) != Some(std::cmp::Ordering::Less) {
                return Ok(false);
            }
            prev = e;
        }
        Ok(self.path.len() == self.energies.len() && self.terminal == prev && prev <= self.threshold)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_json().as_bytes())
    }
}

/// Drives the energy below `threshold` along the two-stage path: with `C = 1`
/// fixed, `B ← 10B` is taken whenever it lowers the energy, otherwise
/// `A ← 10A`. Only points that improve on the last recorded energy enter the
/// certificate, so the recorded energies are strictly decreasing.
pub fn unbounded_search(couplings: Couplings, omega: f64, threshold: f64) -> Result<UnboundednessCertificate> {
    if !threshold.is_finite() || threshold >= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "threshold must be negative, got {threshold}"
        )));
    }
    let mut cur = AnsatzParams::new(1.0, 0.0, 1.0, couplings, omega)?;
    let mut e_cur = energy_closed_form(&cur)?;
    let mut path = vec![cur];
    let mut energies = vec![e_cur];

    for _ in 0..MAX_SEARCH_MOVES {
        let last = *energies.last().unwrap();
        if last <= threshold {
            return Ok(UnboundednessCertificate {
                couplings,
                omega,
                threshold,
                path,
                energies,
                terminal: last,
            });
        }
        let b_next = if cur.b == 0.0 { 1.0 } else { 10.0 * cur.b };
        let trial = cur.with_abc(cur.a, b_next, cur.c)?;
        let e_trial = energy_closed_form(&trial)?;
        (cur, e_cur) = if e_trial < e_cur {
            (trial, e_trial)
        } else {
            let ramped = cur.with_abc(10.0 * cur.a, cur.b, cur.c)?;
            let e = energy_closed_form(&ramped)?;
            (ramped, e)
        };
        if e_cur < last {
            path.push(cur);
            energies.push(e_cur);
        }
    }
    Err(Error::InvalidParameter(format!(
        "no certificate within {MAX_SEARCH_MOVES} moves for threshold {threshold}"
    )))
}
