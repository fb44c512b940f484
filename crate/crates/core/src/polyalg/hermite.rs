//! Physicists' Hermite polynomials of a polynomial argument.

use super::coeff::Coeff;
use super::poly::{MultiPoly, Registry};
use crate::error::{Error, Result};

/// `H_n(arg)` expanded over the registry of `arg`, built by the three-term
/// recurrence `H_{k+1} = 2 arg H_k - 2k H_{k-1}`.
pub fn hermite<C: Coeff>(n: u32, arg: &MultiPoly<C>) -> MultiPoly<C> {
    hermite_sequence(n, arg).pop().expect("sequence is never empty")
}

/// `[H_0(arg), ..., H_n(arg)]`.
pub fn hermite_sequence<C: Coeff>(n: u32, arg: &MultiPoly<C>) -> Vec<MultiPoly<C>> {
    let vars = arg.registry();
    let two_arg = arg.scale(&C::from_i64(2));
    let mut seq = vec![MultiPoly::one(vars)];
    if n == 0 {
        return seq;
    }
    seq.push(two_arg.clone());
    for k in 1..n {
        let next = &(&two_arg * &seq[k as usize]) - &seq[k as usize - 1].scale(&C::from_i64(2 * k as i64));
        seq.push(next);
    }
    seq
}

/// `H_n` of a linear form `sum c_i v_i`. The form must have a nonzero coefficient.
pub fn hermite_linear<C: Coeff>(n: u32, vars: &Registry, form: &[(&str, C)]) -> Result<MultiPoly<C>> {
    let arg = MultiPoly::linear(vars, form)?;
    if arg.is_zero() {
        return Err(Error::InvalidParameter(
            "Hermite argument must be a nonzero linear form".into(),
        ));
    }
    Ok(hermite(n, &arg))
}
