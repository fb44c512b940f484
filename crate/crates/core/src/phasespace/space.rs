use crate::error::{Error, Result};
use crate::polyalg::{Coeff, MultiPoly, Registry};

/// A registry of canonical variables together with its (coordinate, momentum) pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseSpace {
    vars: Registry,
    pairs: Vec<(usize, usize)>,
}

impl PhaseSpace {
    /// `names` lists every variable; `pairs` gives (coordinate, momentum) by name.
    /// Every variable must occur in exactly one pair.
    pub fn new(names: &[&str], pairs: &[(&str, &str)]) -> Result<Self> {
        let vars = Registry::new(names);
        let mut seen = vec![false; vars.len()];
        let mut idx = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let ia = vars.require(a)?;
            let ib = vars.require(b)?;
            for i in [ia, ib] {
                if seen[i] {
                    return Err(Error::PairingMismatch(format!(
                        "`{}` appears in more than one pair",
                        vars.names()[i]
                    )));
                }
                seen[i] = true;
            }
            idx.push((ia, ib));
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::PairingMismatch(format!("`{}` is not paired", vars.names()[i])));
        }
        Ok(PhaseSpace { vars, pairs: idx })
    }

    /// `(q, x, p_x, p_q)`: the Ostrogradsky phase space.
    pub fn ostrogradsky() -> Self {
        Self::new(&["q", "x", "p_x", "p_q"], &[("q", "p_q"), ("x", "p_x")]).unwrap()
    }

    /// `(X1, P1, X2, P2)`: the two decoupled oscillators.
    pub fn diagonal() -> Self {
        Self::new(&["X1", "P1", "X2", "P2"], &[("X1", "P1"), ("X2", "P2")]).unwrap()
    }

    /// `(x, p_x, y, p_y)` with `q = i y`.
    pub fn rotated() -> Self {
        Self::new(&["x", "p_x", "y", "p_y"], &[("x", "p_x"), ("y", "p_y")]).unwrap()
    }

    /// `(x, p, D, P)` for `H = pP + D(...)`.
    pub fn robert() -> Self {
        Self::new(&["x", "p", "D", "P"], &[("x", "p"), ("D", "P")]).unwrap()
    }

    pub fn registry(&self) -> &Registry {
        &self.vars
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn var<C: Coeff>(&self, name: &str) -> Result<PhasePoly<C>> {
        Ok(PhasePoly {
            space: self.clone(),
            poly: MultiPoly::var(&self.vars, name)?,
        })
    }

    /// The canonical bracket `{v_i, v_j}` of two registry variables: +1, -1 or 0.
    pub fn structure(&self, i: usize, j: usize) -> i64 {
        for &(a, b) in &self.pairs {
            if a == i && b == j {
                return 1;
            }
            if b == i && a == j {
                return -1;
            }
        }
        0
    }
}

/// A polynomial function on a phase space.
#[derive(Clone, Debug, PartialEq)]
pub struct PhasePoly<C: Coeff> {
    pub space: PhaseSpace,
    pub poly: MultiPoly<C>,
}

impl<C: Coeff> PhasePoly<C> {
    pub fn new(space: PhaseSpace, poly: MultiPoly<C>) -> Result<Self> {
        if poly.registry() != space.registry() {
            return Err(Error::RegistryMismatch(format!(
                "polynomial over {:?}, phase space {:?}",
                poly.registry(),
                space.registry()
            )));
        }
        Ok(PhasePoly { space, poly })
    }

    pub fn zero(space: &PhaseSpace) -> Self {
        PhasePoly {
            space: space.clone(),
            poly: MultiPoly::zero(space.registry()),
        }
    }

    pub fn max_deviation(&self, other: &Self) -> Result<f64> {
        if self.space != other.space {
            return Err(Error::PairingMismatch("different phase spaces".into()));
        }
        Ok(self.poly.max_deviation(&other.poly))
    }

    pub fn derivative(&self, name: &str) -> Result<MultiPoly<C>> {
        self.poly.derivative_by(name)
    }
}

/// `{f, g} = sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i)`.
pub fn poisson_bracket<C: Coeff>(f: &PhasePoly<C>, g: &PhasePoly<C>) -> Result<PhasePoly<C>> {
    if f.space != g.space {
        return Err(Error::PairingMismatch(format!(
            "{:?} vs {:?}",
            f.space.registry(),
            g.space.registry()
        )));
    }
    let mut acc = MultiPoly::zero(f.space.registry());
    for &(q, p) in f.space.pairs() {
        let a = &f.poly.derivative(q) * &g.poly.derivative(p);
        let b = &f.poly.derivative(p) * &g.poly.derivative(q);
        acc = &acc + &(&a - &b);
    }
    Ok(PhasePoly {
        space: f.space.clone(),
        poly: acc,
    })
}

/// Time derivative along the flow of `h`: `df/dt = {f, h}`.
pub fn lie_derivative<C: Coeff>(f: &PhasePoly<C>, h: &PhasePoly<C>) -> Result<PhasePoly<C>> {
    poisson_bracket(f, h)
}

/// Hamilton's vector field `(dv_1/dt, ..., dv_n/dt)` of `h` in registry order.
pub fn hamiltonian_vector_field<C: Coeff>(h: &PhasePoly<C>) -> Result<Vec<MultiPoly<C>>> {
    let space = &h.space;
    space
        .registry()
        .names()
        .iter()
        .map(|n| Ok(poisson_bracket(&space.var(n)?, h)?.poly))
        .collect()
}
