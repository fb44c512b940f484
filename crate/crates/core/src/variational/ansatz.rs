use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Quartic couplings `α q⁴ + β q² x² + γ x⁴`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Couplings {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl Couplings {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let c = Couplings { alpha, beta, gamma };
        if [alpha, beta, gamma].iter().all(|v| v.is_finite()) {
            Ok(c)
        } else {
            Err(Error::InvalidParameter(format!("couplings must be finite: {c:?}")))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnsatzParams {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub couplings: Couplings,
    pub omega: f64,
}

impl AnsatzParams {
    pub fn new(a: f64, b: f64, c: f64, couplings: Couplings, omega: f64) -> Result<Self> {
        let p = AnsatzParams {
            a,
            b,
            c,
            couplings,
            omega,
        };
        p.validate()?;
        Ok(p)
    }

    /// The Gaussian is normalizable only for `A, C > 0`.
    pub fn validate(&self) -> Result<()> {
        let ok = self.a > 0.0
            && self.c > 0.0
            && self.a.is_finite()
            && self.c.is_finite()
            && self.b.is_finite()
            && self.omega > 0.0
            && self.omega.is_finite();
        if !ok {
            return Err(Error::InvalidParameter(format!(
                "ansatz needs A, C > 0, finite B and Ω > 0 (got A={}, B={}, C={}, Ω={})",
                self.a, self.b, self.c, self.omega
            )));
        }
        Couplings::new(self.couplings.alpha, self.couplings.beta, self.couplings.gamma)?;
        Ok(())
    }

    pub fn with_abc(&self, a: f64, b: f64, c: f64) -> Result<Self> {
        AnsatzParams::new(a, b, c, self.couplings, self.omega)
    }
}

/// `C/4 + B²/(4A) + BΩ²/(2A) − B/(2C) + 3α/(4A²) + 3γ/(4C²) + β/(4AC)`
pub fn energy_closed_form(p: &AnsatzParams) -> Result<f64> {
    p.validate()?;
    let AnsatzParams {
        a,
        b,
        c,
        omega,
        couplings: k,
    } = *p;
    let w2 = omega * omega;
    Ok(c / 4.0 + b * b / (4.0 * a) + b * w2 / (2.0 * a) - b / (2.0 * c)
        + 3.0 * k.alpha / (4.0 * a * a)
        + 3.0 * k.gamma / (4.0 * c * c)
        + k.beta / (4.0 * a * c))
}

/// Analytic `(∂E/∂A, ∂E/∂B, ∂E/∂C)` of the closed form.
pub fn gradient(p: &AnsatzParams) -> Result<[f64; 3]> {
    p.validate()?;
    let AnsatzParams {
        a,
        b,
        c,
        omega,
        couplings: k,
    } = *p;
    let w2 = omega * omega;
    let da = -b * b / (4.0 * a * a)
        - b * w2 / (2.0 * a * a)
        - 3.0 * k.alpha / (2.0 * a.powi(3))
        - k.beta / (4.0 * a * a * c);
    let db = b / (2.0 * a) + w2 / (2.0 * a) - 1.0 / (2.0 * c);
    let dc = 0.25 + b / (2.0 * c * c) - 3.0 * k.gamma / (2.0 * c.powi(3)) - k.beta / (4.0 * a * c * c);
    Ok([da, db, dc])
}
