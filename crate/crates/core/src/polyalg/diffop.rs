//! Normal-ordered polynomial differential operators (Weyl algebra elements).
//!
//! Every term is `c * v^a * d^b`: multiplications on the left, derivatives on
//! the right. Composition re-normalizes with the generalized Leibniz rule
//! `d^b v^c = sum_k C(b,k) c!/(c-k)! v^(c-k) d^(b-k)` per variable, which makes
//! the representation canonical and zero-testing a coefficient check.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use super::coeff::Coeff;
use super::expfn::ExpPolyFn;
use super::poly::{Exponent, MultiPoly, Registry};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp<C: Coeff> {
    vars: Registry,
    /// (multiplication exponent, derivative exponent) -> coefficient
    terms: BTreeMap<(Exponent, Exponent), C>,
}

impl<C: Coeff> DiffOp<C> {
    pub fn zero(vars: &Registry) -> Self {
        DiffOp {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(vars: &Registry) -> Self {
        Self::scalar(vars, C::one())
    }

    pub fn scalar(vars: &Registry, c: C) -> Self {
        let n = vars.len();
        Self::term(vars, c, vec![0; n], vec![0; n])
    }

    pub fn term(vars: &Registry, c: C, mult: Exponent, deriv: Exponent) -> Self {
        assert_eq!(mult.len(), vars.len());
        assert_eq!(deriv.len(), vars.len());
        let mut op = Self::zero(vars);
        op.add_term(mult, deriv, c);
        op
    }

    /// Multiplication by a polynomial.
    pub fn multiply(p: &MultiPoly<C>) -> Self {
        let vars = p.registry();
        let mut op = Self::zero(vars);
        for (e, c) in p.terms() {
            op.add_term(e.clone(), vec![0; vars.len()], c.clone());
        }
        op
    }

    /// Multiplication by a single variable.
    pub fn var(vars: &Registry, name: &str) -> Result<Self> {
        Ok(Self::multiply(&MultiPoly::var(vars, name)?))
    }

    /// `d^order / d name^order`.
    pub fn deriv(vars: &Registry, name: &str, order: u16) -> Result<Self> {
        let i = vars.require(name)?;
        let mut d = vec![0; vars.len()];
        d[i] = order;
        Ok(Self::term(vars, C::one(), vec![0; vars.len()], d))
    }

    /// Canonical momentum `p_v = -i d/dv`.
    pub fn momentum(vars: &Registry, name: &str) -> Result<Self> {
        Ok(Self::deriv(vars, name, 1)?.scale(&-C::imag_unit()))
    }

    pub fn registry(&self) -> &Registry {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Exponent, &C)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_norm(&self) -> f64 {
        self.terms.values().map(Coeff::magnitude).fold(0.0, f64::max)
    }

    /// Coefficient of `v^mult d^deriv`, with exponents given by name.
    pub fn coeff_of(&self, mult: &[(&str, u16)], deriv: &[(&str, u16)]) -> Result<C> {
        let mut a = vec![0; self.vars.len()];
        let mut b = vec![0; self.vars.len()];
        for (n, k) in mult {
            a[self.vars.require(n)?] = *k;
        }
        for (n, k) in deriv {
            b[self.vars.require(n)?] = *k;
        }
        Ok(self.terms.get(&(a, b)).cloned().unwrap_or_else(C::zero))
    }

    fn add_term(&mut self, mult: Exponent, deriv: Exponent, c: C) {
        if c.is_negligible() {
            return;
        }
        let key = (mult, deriv);
        match self.terms.get_mut(&key) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_negligible() {
                    self.terms.remove(&key);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut op = Self::zero(&self.vars);
        for ((a, b), v) in &self.terms {
            op.add_term(a.clone(), b.clone(), v.clone() * c.clone());
        }
        op
    }

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
        let mut op = Self::zero(target);
        for ((a, b), v) in &self.terms {
            let mut na = vec![0; target.len()];
            let mut nb = vec![0; target.len()];
            for i in 0..a.len() {
                na[map[i]] = a[i];
                nb[map[i]] = b[i];
            }
            op.terms.insert((na, nb), v.clone());
        }
        Ok(op)
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let u = self.vars.union(&other.vars);
        (
            self.embed(&u).expect("union contains both"),
            other.embed(&u).expect("union contains both"),
        )
    }

    /// Operator composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let n = a.vars.len();
        let mut out = Self::zero(&a.vars);
        for ((ma, da), ca) in &a.terms {
            for ((mb, db), cb) in &b.terms {
                let base = ca.clone() * cb.clone();
                // Enumerate k-vectors with 0 <= k_v <= min(da_v, mb_v).
                let mut k = vec![0u16; n];
                loop {
                    let mut c = base.clone();
                    let mut mult = Vec::with_capacity(n);
                    let mut deriv = Vec::with_capacity(n);
                    for v in 0..n {
                        c = c * C::from_i64(leibniz_factor(da[v], mb[v], k[v]));
                        mult.push(ma[v] + mb[v] - k[v]);
                        deriv.push(da[v] - k[v] + db[v]);
                    }
                    out.add_term(mult, deriv, c);
                    // odometer increment
                    let mut v = 0;
                    loop {
                        if v == n {
                            break;
                        }
                        if k[v] < da[v].min(mb[v]) {
                            k[v] += 1;
                            break;
                        }
                        k[v] = 0;
                        v += 1;
                    }
                    if v == n {
                        break;
                    }
                }
            }
        }
        out
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.compose(other) - &other.compose(self)
    }

    /// True when the operator has no multiplication part and every term lowers
    /// polynomial degree.
    pub fn is_pure_derivative(&self) -> bool {
        self.terms
            .keys()
            .all(|(a, b)| a.iter().all(|&k| k == 0) && b.iter().any(|&k| k > 0))
    }

    /// Applies the operator to `poly * exp(Q)`. The exponent is preserved; the
    /// operator's variables must all exist in `f`'s registry.
    pub fn apply(&self, f: &ExpPolyFn<C>) -> Result<ExpPolyFn<C>> {
        let op = self.embed(f.registry())?;
        let n = f.registry().len();
        let mut cache: HashMap<Exponent, MultiPoly<C>> = HashMap::new();
        cache.insert(vec![0; n], f.poly.clone());
        let mut out = MultiPoly::zero(f.registry());
        for ((a, b), c) in &op.terms {
            let db = derivative_cached(f, b, &mut cache);
            out = &out + &db.mul_monomial(a).scale(c);
        }
        Ok(ExpPolyFn {
            poly: out,
            exponent: f.exponent.clone(),
        })
    }

    /// Applies the operator to a bare polynomial.
    pub fn apply_poly(&self, p: &MultiPoly<C>) -> Result<MultiPoly<C>> {
        Ok(self.apply(&ExpPolyFn::polynomial(p.clone()))?.poly)
    }
}

fn derivative_cached<C: Coeff>(
    f: &ExpPolyFn<C>,
    b: &[u16],
    cache: &mut HashMap<Exponent, MultiPoly<C>>,
) -> MultiPoly<C> {
    if let Some(p) = cache.get(b) {
        return p.clone();
    }
    let v = b.iter().position(|&k| k > 0).expect("nonzero index");
    let mut parent = b.to_vec();
    parent[v] -= 1;
    let pp = derivative_cached(f, &parent, cache);
    let d = f.derivative_poly(&pp, v);
    cache.insert(b.to_vec(), d.clone());
    d
}

/// `C(b,k) * c!/(c-k)!`
fn leibniz_factor(b: u16, c: u16, k: u16) -> i64 {
    let mut binom: i64 = 1;
    for j in 0..k as i64 {
        binom = binom * (b as i64 - j) / (j + 1);
    }
    let mut falling: i64 = 1;
    for j in 0..k as i64 {
        falling *= c as i64 - j;
    }
    binom * falling
}

/// `exp(scale * op) p` for a degree-lowering operator; the series terminates on
/// polynomials and the sum is exact in exact arithmetic.
pub fn exp_diff_apply<C: Coeff>(op: &DiffOp<C>, scale: &C, p: &MultiPoly<C>) -> Result<MultiPoly<C>> {
    if !op.is_pure_derivative() {
        return Err(Error::NonTerminatingSeries);
    }
    let mut term = p.clone();
    let mut acc = p.clone();
    let mut k: i64 = 1;
    while !term.is_zero() {
        term = op.apply_poly(&term)?.scale(&(scale.clone() / C::from_i64(k)));
        acc = &acc + &term;
        k += 1;
    }
    Ok(acc)
}

impl<C: Coeff> Add for &DiffOp<C> {
    type Output = DiffOp<C>;
    fn add(self, rhs: &DiffOp<C>) -> DiffOp<C> {
        let (mut a, b) = self.aligned(rhs);
        for ((m, d), c) in b.terms {
            a.add_term(m, d, c);
        }
        a
    }
}

impl<C: Coeff> Sub for &DiffOp<C> {
    type Output = DiffOp<C>;
    fn sub(self, rhs: &DiffOp<C>) -> DiffOp<C> {
        let (mut a, b) = self.aligned(rhs);
        for ((m, d), c) in b.terms {
            a.add_term(m, d, -c);
        }
        a
    }
}

impl<C: Coeff> Mul for &DiffOp<C> {
    type Output = DiffOp<C>;
    fn mul(self, rhs: &DiffOp<C>) -> DiffOp<C> {
        self.compose(rhs)
    }
}

impl<C: Coeff> Neg for &DiffOp<C> {
    type Output = DiffOp<C>;
    fn neg(self) -> DiffOp<C> {
        self.scale(&-C::one())
    }
}

impl<C: Coeff> Add for DiffOp<C> {
    type Output = DiffOp<C>;
    fn add(self, rhs: DiffOp<C>) -> DiffOp<C> {
        &self + &rhs
    }
}

impl<C: Coeff> Sub for DiffOp<C> {
    type Output = DiffOp<C>;
    fn sub(self, rhs: DiffOp<C>) -> DiffOp<C> {
        &self - &rhs
    }
}

impl<C: Coeff> Mul for DiffOp<C> {
    type Output = DiffOp<C>;
    fn mul(self, rhs: DiffOp<C>) -> DiffOp<C> {
        self.compose(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::coeff::ExactComplex;
    use crate::polyalg::expfn::QuadExponent;
    use crate::polyalg::hermite::hermite;
    use num_complex::Complex64;

    type Q = ExactComplex;

    #[test]
    fn canonical_commutator() {
        let r = Registry::new(&["q"]);
        let q = DiffOp::<Q>::var(&r, "q").unwrap();
        let p = DiffOp::momentum(&r, "q").unwrap();
        let c = q.commutator(&p);
        assert_eq!(c, DiffOp::scalar(&r, Q::imag_unit()));
    }

    #[test]
    fn mixed_partials_commute() {
        let r = Registry::new(&["q", "x"]);
        let dx = DiffOp::<Q>::deriv(&r, "x", 1).unwrap();
        let dq = DiffOp::<Q>::deriv(&r, "q", 1).unwrap();
        assert!(dx.commutator(&dq).is_zero());
    }

    #[test]
    fn hermite_ode_eigenvalue() {
        let r = Registry::new(&["z"]);
        let z = MultiPoly::<Q>::var(&r, "z").unwrap();
        let op = &DiffOp::deriv(&r, "z", 2).unwrap().scale(&Q::from_ratio(-1, 2))
            + &(&DiffOp::var(&r, "z").unwrap() * &DiffOp::deriv(&r, "z", 1).unwrap());
        let h4 = hermite(4, &z);
        assert_eq!(op.apply_poly(&h4).unwrap(), h4.scale(&Q::from_i64(4)));
    }

    #[test]
    fn derivative_of_polynomial_with_imaginary_factor() {
        let r = Registry::new(&["q", "x"]);
        let op = (&DiffOp::<Complex64>::var(&r, "x").unwrap() * &DiffOp::deriv(&r, "q", 1).unwrap())
            .scale(&Complex64::new(0.0, -1.0));
        let f = MultiPoly::var(&r, "q").unwrap();
        let out = op.apply_poly(&f).unwrap();
        let expect = MultiPoly::linear(&r, &[("x", Complex64::new(0.0, -1.0))]).unwrap();
        assert_eq!(out, expect);
    }

    #[test]
    fn apply_preserves_exponent_and_matches_gaussian() {
        let r = Registry::new(&["x"]);
        let e = QuadExponent::from_matrix(&r, &["x"], &[vec![Q::from_ratio(-1, 2)]]).unwrap();
        let f = ExpPolyFn::new(MultiPoly::one(&r), e.clone()).unwrap();
        let out = DiffOp::deriv(&r, "x", 1).unwrap().apply(&f).unwrap();
        assert_eq!(out.exponent, e);
        assert_eq!(out.poly, MultiPoly::linear(&r, &[("x", Q::from_i64(-1))]).unwrap());
    }

    #[test]
    fn variable_mismatch_is_reported() {
        let r = Registry::new(&["q"]);
        let op = DiffOp::<Q>::deriv(&Registry::new(&["w"]), "w", 1).unwrap();
        let f = ExpPolyFn::polynomial(MultiPoly::var(&r, "q").unwrap());
        assert!(matches!(op.apply(&f), Err(Error::VariableMismatch(_))));
    }

    #[test]
    fn exp_identity_small_cases() {
        let r = Registry::new(&["z"]);
        let z = MultiPoly::<Q>::var(&r, "z").unwrap();
        let d2 = DiffOp::deriv(&r, "z", 2).unwrap();
        let s = Q::from_ratio(-1, 4);
        let out = exp_diff_apply(&d2, &s, &z.pow(2)).unwrap();
        assert_eq!(out, &z.pow(2) - &MultiPoly::constant(&r, Q::from_ratio(1, 2)));
        assert_eq!(
            exp_diff_apply(&d2, &s, &MultiPoly::one(&r)).unwrap(),
            MultiPoly::one(&r)
        );
        let out5 = exp_diff_apply(&d2, &s, &z.pow(5)).unwrap();
        assert_eq!(out5, hermite(5, &z).scale(&Q::from_ratio(1, 32)));
        let bad = &d2 + &DiffOp::var(&r, "z").unwrap();
        assert_eq!(exp_diff_apply(&bad, &s, &z), Err(Error::NonTerminatingSeries));
    }
}
