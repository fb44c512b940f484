//! Coefficient fields for the polynomial algebra.
//!
//! Two fields are supported: double-precision complex numbers and exact
//! complex rationals (the Gaussian rationals Q(i) with arbitrary-precision
//! numerators and denominators). All algebra in this crate is generic over
//! [`Coeff`], so the same construction can be run in either mode.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact complex rational.
pub type ExactComplex = Complex<BigRational>;

/// Magnitude below which a floating coefficient is treated as an exact zero.
pub const PRUNE_THRESHOLD: f64 = 1e-300;

pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic in this field is exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn imag_unit() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// Embeds a real double. For the exact field this is the exact binary value.
    fn from_f64(x: f64) -> Self;
    fn from_c64(z: Complex64) -> Self;
    fn to_c64(&self) -> Complex64;
    /// Whether a coefficient should be dropped from a sparse representation.
    fn is_negligible(&self) -> bool;
    fn magnitude(&self) -> f64;
    fn conj(&self) -> Self;
    /// Principal square root. The exact field only supports perfect squares of
    /// real rationals.
    fn sqrt(&self) -> Result<Self>;

    fn is_exact_zero(&self) -> bool {
        self.magnitude() == 0.0
    }

    fn real(x: f64) -> Self {
        Self::from_f64(x)
    }

    fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

impl Coeff for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn from_c64(z: Complex64) -> Self {
        z
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn is_negligible(&self) -> bool {
        self.norm() < PRUNE_THRESHOLD
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn sqrt(&self) -> Result<Self> {
        Ok(Complex::sqrt(*self))
    }
}

fn exact_rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

fn rat_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(|| panic!("non-finite value {x} in exact arithmetic"))
}

impl Coeff for ExactComplex {
    const EXACT: bool = true;

    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Complex::new(BigRational::one(), BigRational::zero())
    }
    fn imag_unit() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }
    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }
    fn from_f64(x: f64) -> Self {
        Complex::new(rat_from_f64(x), BigRational::zero())
    }
    fn from_c64(z: Complex64) -> Self {
        Complex::new(rat_from_f64(z.re), rat_from_f64(z.im))
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
    fn is_negligible(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn magnitude(&self) -> f64 {
        if self.is_negligible() {
            0.0
        } else {
            self.to_c64().norm()
        }
    }
    fn is_exact_zero(&self) -> bool {
        self.is_negligible()
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn sqrt(&self) -> Result<Self> {
        if !self.im.is_zero() {
            return Err(Error::Inexact(format!("{self}")));
        }
        if let Some(s) = exact_rational_sqrt(&self.re) {
            return Ok(Complex::new(s, BigRational::zero()));
        }
        if let Some(s) = exact_rational_sqrt(&-self.re.clone()) {
            return Ok(Complex::new(BigRational::zero(), s));
        }
        Err(Error::Inexact(format!("{self}")))
    }
}
