use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use super::coeff::Coeff;
use crate::error::{Error, Result};

/// Exponent multi-index, one entry per registry variable.
pub type Exponent = Vec<u16>;

/// An ordered, immutable list of variable names.
///
/// Polynomials and operators only combine when their registries are equal;
/// moving to a larger registry is an explicit [`MultiPoly::embed`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Registry(Arc<[String]>);

impl Registry {
    pub fn new(names: &[&str]) -> Self {
        for (i, a) in names.iter().enumerate() {
            assert!(!names[..i].contains(a), "duplicate variable `{a}` in registry");
        }
        Registry(names.iter().map(|s| s.to_string()).collect())
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::VariableMismatch(name.to_string()))
    }

    pub fn contains_all(&self, other: &Registry) -> bool {
        other.0.iter().all(|n| self.index_of(n).is_some())
    }

    /// Variables of `self` followed by the variables of `other` not already present.
    pub fn union(&self, other: &Registry) -> Registry {
        let mut names: Vec<&str> = self.0.iter().map(String::as_str).collect();
        for n in other.0.iter() {
            if !names.contains(&n.as_str()) {
                names.push(n);
            }
        }
        Registry::new(&names)
    }
}

impl fmt::Debug for Registry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0[..])
    }
}

/// Sparse multivariate polynomial with coefficients in `C`.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<C> {
    vars: Registry,
    terms: BTreeMap<Exponent, C>,
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(vars: &Registry) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Registry, c: C) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn one(vars: &Registry) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn var(vars: &Registry, name: &str) -> Result<Self> {
        let i = vars.require(name)?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Ok(Self::monomial(vars, e, C::one()))
    }

    pub fn monomial(vars: &Registry, exp: Exponent, c: C) -> Self {
        assert_eq!(exp.len(), vars.len(), "exponent length mismatch");
        let mut p = Self::zero(vars);
        p.add_term(exp, c);
        p
    }

    /// Linear form `sum c_i * v_i`.
    pub fn linear(vars: &Registry, parts: &[(&str, C)]) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (name, c) in parts {
            let i = vars.require(name)?;
            let mut e = vec![0; vars.len()];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        Ok(p)
    }

    pub fn from_terms(vars: &Registry, terms: impl IntoIterator<Item = (Exponent, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn registry(&self) -> &Registry {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: &[u16]) -> C {
        self.terms.get(exp).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of a monomial given by `(name, power)` pairs.
    pub fn coeff_of(&self, powers: &[(&str, u16)]) -> Result<C> {
        let mut e = vec![0; self.vars.len()];
        for (name, k) in powers {
            e[self.vars.require(name)?] = *k;
        }
        Ok(self.coeff(&e))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&k| k as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// Largest coefficient magnitude.
    pub fn max_norm(&self) -> f64 {
        self.terms.values().map(Coeff::magnitude).fold(0.0, f64::max)
    }

    pub(crate) fn add_term(&mut self, exp: Exponent, c: C) {
        if c.is_negligible() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_negligible() {
                    self.terms.remove(&exp);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    fn check_same(&self, other: &Self) {
        assert!(
            self.vars == other.vars,
            "registry mismatch: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut p = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            p.add_term(e.clone(), v.clone() * c.clone());
        }
        p
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut p = MultiPoly::zero(&self.vars);
        for (e, v) in &self.terms {
            p.add_term(e.clone(), f(v));
        }
        p
    }

    pub fn to_float(&self) -> MultiPoly<Complex64> {
        self.map_coeffs(|c| c.to_c64())
    }

    pub fn mul_monomial(&self, exp: &[u16]) -> Self {
        let mut p = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            let ne: Exponent = e.iter().zip(exp).map(|(a, b)| a + b).collect();
            p.terms.insert(ne, v.clone());
        }
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to the variable at `index`.
    pub fn derivative(&self, index: usize) -> Self {
        let mut p = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            let k = e[index];
            if k == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[index] = k - 1;
            p.add_term(ne, v.clone() * C::from_i64(k as i64));
        }
        p
    }

    pub fn derivative_by(&self, name: &str) -> Result<Self> {
        Ok(self.derivative(self.vars.require(name)?))
    }

    /// Re-expresses the polynomial over a registry containing every current variable.
    pub fn embed(&self, target: &Registry) -> Result<Self> {
        if *target == self.vars {
            return Ok(self.clone());
        }
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| target.require(n))
            .collect::<Result<_>>()?;
        let mut p = Self::zero(target);
        for (e, v) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] = k;
            }
            p.terms.insert(ne, v.clone());
        }
        Ok(p)
    }

    /// Substitutes `images[i]` for the i-th registry variable. All images must
    /// share one registry, which becomes the registry of the result.
    pub fn substitute(&self, images: &[MultiPoly<C>]) -> Result<Self> {
        if images.len() != self.vars.len() {
            return Err(Error::RegistryMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.vars.len()
            )));
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => return Ok(self.clone()),
        };
        if images.iter().any(|p| p.vars != target) {
            return Err(Error::RegistryMismatch(
                "substitution images over different registries".into(),
            ));
        }
        let mut powers: Vec<Vec<MultiPoly<C>>> = images
            .iter()
            .map(|img| vec![MultiPoly::one(&target), img.clone()])
            .collect();
        let mut out = MultiPoly::zero(&target);
        for (e, v) in &self.terms {
            let mut term = MultiPoly::constant(&target, v.clone());
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    term = &term * &powers[i][k];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = C::zero();
        for (e, v) in &self.terms {
            let mut t = v.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = t * x.pow(k as u32);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Splits into the monomials with purely real and with non-real coefficients:
    /// returns `(real part, imaginary part)` such that `self = re + i*im`.
    pub fn split_re_im(&self) -> (Self, Self) {
        let i = C::imag_unit();
        let half = C::from_ratio(1, 2);
        let conj = self.map_coeffs(|c| c.conj());
        let re = (self + &conj).scale(&half);
        let im = (self - &conj).scale(&(half * -i));
        (re, im)
    }

    /// Coefficient-wise maximum deviation between two polynomials on the same registry.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        (self - other).max_norm()
    }
}

impl<C: Coeff> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        self.check_same(rhs);
        let mut p = self.clone();
        for (e, v) in &rhs.terms {
            p.add_term(e.clone(), v.clone());
        }
        p
    }
}

impl<C: Coeff> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        self.check_same(rhs);
        let mut p = self.clone();
        for (e, v) in &rhs.terms {
            p.add_term(e.clone(), -v.clone());
        }
        p
    }
}

impl<C: Coeff> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        self.check_same(rhs);
        let mut p = MultiPoly::zero(&self.vars);
        for (ea, va) in &self.terms {
            for (eb, vb) in &rhs.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                p.add_term(e, va.clone() * vb.clone());
            }
        }
        p
    }
}

impl<C: Coeff> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $m(self, rhs: MultiPoly<C>) -> MultiPoly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn fmt_coeff(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else {
        format!("({}{:+}i)", c.re, c.im)
    }
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, v) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", fmt_coeff(v.to_c64()))?;
            for (name, &k) in self.vars.names().iter().zip(e) {
                match k {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly{:?}[{}]", self.vars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::coeff::ExactComplex;

    type P = MultiPoly<ExactComplex>;

    fn reg() -> Registry {
        Registry::new(&["x", "y"])
    }

    #[test]
    fn cancellation_removes_terms() {
        let r = reg();
        let x = P::var(&r, "x").unwrap();
        let d = &x - &x;
        assert!(d.is_zero());
        assert_eq!(d.num_terms(), 0);
    }

    #[test]
    fn max_norm_of_linear_form() {
        let r = Registry::new(&["z"]);
        let p = MultiPoly::<Complex64>::linear(&r, &[("z", Complex64::new(3.0, 0.0))]).unwrap()
            + MultiPoly::constant(&r, Complex64::new(0.0, -4.0));
        assert_eq!(p.max_norm(), 4.0);
        assert_eq!(MultiPoly::<Complex64>::zero(&r).max_norm(), 0.0);
    }

    #[test]
    fn substitution_matches_direct_expansion() {
        let r = reg();
        let x = P::var(&r, "x").unwrap();
        let y = P::var(&r, "y").unwrap();
        let p = &(&x * &x) + &y;
        // x -> x + y, y -> x - y
        let img = vec![&x + &y, &x - &y];
        let s = p.substitute(&img).unwrap();
        let expect = &(&(&x + &y) * &(&x + &y)) + &(&x - &y);
        assert_eq!(s, expect);
    }

    #[test]
    fn embed_requires_superset() {
        let r = reg();
        let x = P::var(&r, "x").unwrap();
        let big = Registry::new(&["t", "y", "x"]);
        let e = x.embed(&big).unwrap();
        assert_eq!(e.coeff_of(&[("x", 1)]).unwrap(), ExactComplex::from_i64(1));
        assert!(x.embed(&Registry::new(&["y"])).is_err());
    }

    #[test]
    fn split_real_imaginary() {
        let r = reg();
        let i = ExactComplex::imag_unit();
        let p = P::linear(&r, &[("x", ExactComplex::from_i64(2) + i.clone()), ("y", i)]).unwrap();
        let (re, im) = p.split_re_im();
        assert_eq!(re, P::linear(&r, &[("x", ExactComplex::from_i64(2))]).unwrap());
        assert_eq!(
            im,
            P::linear(&r, &[("x", ExactComplex::one()), ("y", ExactComplex::one())]).unwrap()
        );
    }
}
