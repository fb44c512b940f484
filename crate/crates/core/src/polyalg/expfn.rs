//! Polynomial times Gaussian-type exponential: the function class that every
//! wavefunction in this crate lives in.

use super::coeff::Coeff;
use super::poly::{MultiPoly, Registry};
use crate::error::{Error, Result};

/// A homogeneous quadratic form `Q(v) = sum_{ij} a_ij v_i v_j`, the exponent of
/// `exp(Q)`. No linear or constant part.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadExponent<C: Coeff> {
    form: MultiPoly<C>,
}

impl<C: Coeff> QuadExponent<C> {
    pub fn zero(vars: &Registry) -> Self {
        QuadExponent {
            form: MultiPoly::zero(vars),
        }
    }

    /// Builds the exponent from a homogeneous quadratic polynomial.
    pub fn from_form(form: MultiPoly<C>) -> Result<Self> {
        if form.terms().any(|(e, _)| e.iter().sum::<u16>() != 2) {
            return Err(Error::InvalidParameter(
                "exponent must be a homogeneous quadratic form".into(),
            ));
        }
        Ok(QuadExponent { form })
    }

    /// Builds `sum_{ij} m[i][j] v_i v_j` over the named variables; `m` must be symmetric.
    pub fn from_matrix(vars: &Registry, names: &[&str], m: &[Vec<C>]) -> Result<Self> {
        if m.len() != names.len() || m.iter().any(|row| row.len() != names.len()) {
            return Err(Error::InvalidParameter("matrix shape".into()));
        }
        let mut form = MultiPoly::zero(vars);
        for (i, a) in names.iter().enumerate() {
            for (j, b) in names.iter().enumerate() {
                if m[i][j] != m[j][i] {
                    return Err(Error::InvalidParameter("matrix is not symmetric".into()));
                }
                let va = MultiPoly::var(vars, a)?;
                let vb = MultiPoly::var(vars, b)?;
                form = &form + &(&va * &vb).scale(&m[i][j]);
            }
        }
        Ok(QuadExponent { form })
    }

    pub fn form(&self) -> &MultiPoly<C> {
        &self.form
    }

    pub fn registry(&self) -> &Registry {
        self.form.registry()
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    /// `dQ/dv_index`, a linear form.
    pub fn gradient(&self, index: usize) -> MultiPoly<C> {
        self.form.derivative(index)
    }

    pub fn embed(&self, target: &Registry) -> Result<Self> {
        Ok(QuadExponent {
            form: self.form.embed(target)?,
        })
    }
}

/// `poly * exp(exponent)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpPolyFn<C: Coeff> {
    pub poly: MultiPoly<C>,
    pub exponent: QuadExponent<C>,
}

impl<C: Coeff> ExpPolyFn<C> {
    pub fn new(poly: MultiPoly<C>, exponent: QuadExponent<C>) -> Result<Self> {
        if poly.registry() != exponent.registry() {
            return Err(Error::RegistryMismatch(format!(
                "polynomial over {:?}, exponent over {:?}",
                poly.registry(),
                exponent.registry()
            )));
        }
        Ok(ExpPolyFn { poly, exponent })
    }

    /// A bare polynomial (zero exponent).
    pub fn polynomial(poly: MultiPoly<C>) -> Self {
        let exponent = QuadExponent::zero(poly.registry());
        ExpPolyFn { poly, exponent }
    }

    pub fn registry(&self) -> &Registry {
        self.poly.registry()
    }

    /// `d/dv_index (poly e^Q) = (dpoly + poly dQ) e^Q`, returned as the new polynomial factor.
    pub fn derivative_poly(&self, poly: &MultiPoly<C>, index: usize) -> MultiPoly<C> {
        let d = poly.derivative(index);
        if self.exponent.is_zero() {
            d
        } else {
            &d + &(poly * &self.exponent.gradient(index))
        }
    }

    pub fn derivative(&self, index: usize) -> Self {
        ExpPolyFn {
            poly: self.derivative_poly(&self.poly, index),
            exponent: self.exponent.clone(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        ExpPolyFn {
            poly: self.poly.scale(c),
            exponent: self.exponent.clone(),
        }
    }

    /// Sum of two functions sharing one exponent.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_class(other)?;
        Ok(ExpPolyFn {
            poly: &self.poly + &other.poly,
            exponent: self.exponent.clone(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_class(other)?;
        Ok(ExpPolyFn {
            poly: &self.poly - &other.poly,
            exponent: self.exponent.clone(),
        })
    }

    fn same_class(&self, other: &Self) -> Result<()> {
        if self.exponent != other.exponent {
            return Err(Error::RegistryMismatch("functions carry different exponents".into()));
        }
        Ok(())
    }

    pub fn embed(&self, target: &Registry) -> Result<Self> {
        Ok(ExpPolyFn {
            poly: self.poly.embed(target)?,
            exponent: self.exponent.embed(target)?,
        })
    }

    pub fn to_float(&self) -> ExpPolyFn<num_complex::Complex64> {
        ExpPolyFn {
            poly: self.poly.to_float(),
            exponent: QuadExponent {
                form: self.exponent.form.to_float(),
            },
        }
    }
}

/// Largest coefficient magnitude of the polynomial factor; the residual metric
/// used throughout the verification suites.
pub fn coeff_max_norm<C: Coeff>(f: &ExpPolyFn<C>) -> f64 {
    f.poly.max_norm()
}
