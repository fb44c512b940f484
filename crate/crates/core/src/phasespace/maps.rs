//! Linear (possibly complex) canonical transformations.
//!
//! A map is stored as the substitution `old := linear(new)`: one image
//! polynomial over the new phase space for every old variable. Substituting
//! the images into a function of the old variables rewrites it in the new ones.

use serde::{Deserialize, Serialize};

use super::space::{poisson_bracket, PhasePoly, PhaseSpace};
use crate::error::{Error, Result};
use crate::polyalg::{Coeff, MultiPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    /// `(q, p_q, x, p_x) := linear(X1, P1, X2, P2)`: brings the Ostrogradsky
    /// Hamiltonian into decoupled ghost form.
    Diag,
    /// `(X1, P1, X2, P2) := linear(q, p_q, x, p_x)`, the printed inverse of `Diag`.
    DiagInverse,
    /// Scale plus shear taking `H̃` to the rotation form `H'`.
    Rotation,
    /// `(X1, P1, X2, P2) := linear(x, p_x, y, p_y)` with complex coefficients.
    Complexified,
    Identity,
    /// A derived inverse of another map.
    Inverse,
}

impl MapKind {
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "diag" => MapKind::Diag,
            "diag_inverse" => MapKind::DiagInverse,
            "rotation" => MapKind::Rotation,
            "complexified" => MapKind::Complexified,
            "identity" => MapKind::Identity,
            other => return Err(Error::UnknownName(other.to_string())),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalMap<C: Coeff> {
    pub kind: MapKind,
    /// Kind of the map this one was inverted from, if any.
    pub inverted: Option<MapKind>,
    pub old: PhaseSpace,
    pub new: PhaseSpace,
    /// Image of each old variable (registry order) as a linear polynomial over `new`.
    pub images: Vec<MultiPoly<C>>,
}

/// Maximum deviations of the transformed brackets from the canonical structure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymplecticReport {
    /// `max |{X_i, P_j} - δ_ij|`
    pub xp: f64,
    /// `max |{X_i, X_j}|`
    pub xx: f64,
    /// `max |{P_i, P_j}|`
    pub pp: f64,
    /// Every bracket `{old_i, old_j}` with its deviation, by name.
    pub entries: Vec<(String, String, f64)>,
}

impl SymplecticReport {
    pub fn max_deviation(&self) -> f64 {
        self.xp.max(self.xx).max(self.pp)
    }
}

fn freq_pair<C: Coeff>(omega1: f64, omega2: Option<f64>, what: &str) -> Result<(C, C, C)> {
    let omega2 = omega2.ok_or_else(|| Error::InvalidParameter(format!("`{what}` needs omega2")))?;
    if !(omega1 > 0.0 && omega2 > 0.0) || !omega1.is_finite() || !omega2.is_finite() {
        return Err(Error::InvalidParameter("frequencies must be positive".into()));
    }
    if omega1 == omega2 {
        return Err(Error::EqualFrequency(what.to_string()));
    }
    if omega1 < omega2 {
        return Err(Error::InvalidParameter(format!(
            "`{what}` assumes omega1 > omega2, got {omega1} <= {omega2}"
        )));
    }
    let a = C::from_f64(omega1);
    let b = C::from_f64(omega2);
    let s = (a.clone() * a.clone() - b.clone() * b.clone()).sqrt()?;
    Ok((a, b, s))
}

impl<C: Coeff> CanonicalMap<C> {
    /// Builds one of the printed transformation blocks. `omega2` is ignored by `Rotation`,
    /// which uses `omega1` as its single frequency.
    pub fn build(kind: MapKind, omega1: f64, omega2: Option<f64>) -> Result<Self> {
        let ost = PhaseSpace::ostrogradsky();
        let diag = PhaseSpace::diagonal();
        let rot = PhaseSpace::rotated();
        let lin = |space: &PhaseSpace, parts: &[(&str, C)]| MultiPoly::linear(space.registry(), parts);
        let i = C::imag_unit();
        match kind {
            MapKind::Diag => {
                let (a, b, s) = freq_pair::<C>(omega1, omega2, "diag")?;
                let b2 = b.clone() * b;
                // q = (Ω1 X2 − P1)/(Ω1 s), x = (Ω1 X1 − P2)/s,
                // p_x = (Ω1 P1 − Ω2² X2)/s, p_q = Ω1 (Ω1 P2 − Ω2² X1)/s
                let q = lin(
                    &diag,
                    &[
                        ("X2", C::one() / s.clone()),
                        ("P1", -C::one() / (a.clone() * s.clone())),
                    ],
                )?;
                let x = lin(&diag, &[("X1", a.clone() / s.clone()), ("P2", -C::one() / s.clone())])?;
                let px = lin(&diag, &[("P1", a.clone() / s.clone()), ("X2", -b2.clone() / s.clone())])?;
                let pq = lin(
                    &diag,
                    &[("P2", a.clone() * a.clone() / s.clone()), ("X1", -(a * b2) / s)],
                )?;
                Self::from_named(kind, ost, diag, vec![("q", q), ("x", x), ("p_x", px), ("p_q", pq)])
            }
            MapKind::DiagInverse => {
                let (a, b, s) = freq_pair::<C>(omega1, omega2, "diag_inverse")?;
                let a2 = a.clone() * a.clone();
                let b2 = b.clone() * b;
                // X1 = (p_q + Ω1² x)/(Ω1 s), X2 = (p_x + Ω1² q)/s,
                // P1 = Ω1 (p_x + Ω2² q)/s, P2 = (p_q + Ω2² x)/s
                let x1 = lin(
                    &ost,
                    &[
                        ("p_q", C::one() / (a.clone() * s.clone())),
                        ("x", a.clone() / s.clone()),
                    ],
                )?;
                let x2 = lin(&ost, &[("p_x", C::one() / s.clone()), ("q", a2 / s.clone())])?;
                let p1 = lin(
                    &ost,
                    &[("p_x", a.clone() / s.clone()), ("q", a * b2.clone() / s.clone())],
                )?;
                let p2 = lin(&ost, &[("p_q", C::one() / s.clone()), ("x", b2 / s)])?;
                Self::from_named(kind, diag, ost, vec![("X1", x1), ("P1", p1), ("X2", x2), ("P2", p2)])
            }
            MapKind::Rotation => {
                if !(omega1 > 0.0 && omega1.is_finite()) {
                    return Err(Error::InvalidParameter("rotation needs omega > 0".into()));
                }
                let w = C::from_f64(omega1);
                let four = C::from_i64(4);
                // p_x → p_x, p_q → Ω p_q, x → x + p_q/(4Ω), q → q/Ω + p_x/(4Ω²)
                let x = lin(&ost, &[("x", C::one()), ("p_q", C::one() / (four.clone() * w.clone()))])?;
                let q = lin(
                    &ost,
                    &[
                        ("q", C::one() / w.clone()),
                        ("p_x", C::one() / (four * w.clone() * w.clone())),
                    ],
                )?;
                let px = lin(&ost, &[("p_x", C::one())])?;
                let pq = lin(&ost, &[("p_q", w)])?;
                Self::from_named(
                    kind,
                    ost.clone(),
                    ost,
                    vec![("q", q), ("x", x), ("p_x", px), ("p_q", pq)],
                )
            }
            MapKind::Complexified => {
                let (a, b, s) = freq_pair::<C>(omega1, omega2, "complexified")?;
                let a2 = a.clone() * a.clone();
                let b2 = b.clone() * b;
                // X1 = (Ω1² x − i p_y)/(Ω1 s), X2 = (Ω1² y − i p_x)/s,
                // P1 = Ω1 (p_x + i Ω2² y)/s, P2 = (p_y + i Ω2² x)/s
                let x1 = lin(
                    &rot,
                    &[
                        ("x", a2.clone() / (a.clone() * s.clone())),
                        ("p_y", -i.clone() / (a.clone() * s.clone())),
                    ],
                )?;
                let x2 = lin(&rot, &[("y", a2 / s.clone()), ("p_x", -i.clone() / s.clone())])?;
                let p1 = lin(
                    &rot,
                    &[
                        ("p_x", a.clone() / s.clone()),
                        ("y", a * i.clone() * b2.clone() / s.clone()),
                    ],
                )?;
                let p2 = lin(&rot, &[("p_y", C::one() / s.clone()), ("x", i * b2 / s)])?;
                Self::from_named(kind, diag, rot, vec![("X1", x1), ("P1", p1), ("X2", x2), ("P2", p2)])
            }
            MapKind::Identity => Ok(Self::identity(&ost)),
            MapKind::Inverse => Err(Error::InvalidParameter(
                "inverse maps are derived with `CanonicalMap::inverse`".into(),
            )),
        }
    }

    pub fn identity(space: &PhaseSpace) -> Self {
        let images = space
            .registry()
            .names()
            .iter()
            .map(|n| MultiPoly::var(space.registry(), n).expect("own variable"))
            .collect();
        CanonicalMap {
            kind: MapKind::Identity,
            inverted: None,
            old: space.clone(),
            new: space.clone(),
            images,
        }
    }

    fn from_named(kind: MapKind, old: PhaseSpace, new: PhaseSpace, named: Vec<(&str, MultiPoly<C>)>) -> Result<Self> {
        let mut images = vec![None; old.dim()];
        for (n, p) in named {
            images[old.registry().require(n)?] = Some(p);
        }
        let images = images
            .into_iter()
            .map(|p| p.ok_or_else(|| Error::InvalidParameter("incomplete map".into())))
            .collect::<Result<Vec<_>>>()?;
        let m = CanonicalMap {
            kind,
            inverted: None,
            old,
            new,
            images,
        };
        m.coefficient_matrix()?;
        Ok(m)
    }

    /// Image of the named old variable.
    pub fn image(&self, old_name: &str) -> Result<&MultiPoly<C>> {
        Ok(&self.images[self.old.registry().require(old_name)?])
    }

    /// `M[i][j]` = coefficient of new variable j in the image of old variable i.
    pub fn coefficient_matrix(&self) -> Result<Vec<Vec<C>>> {
        let n = self.new.dim();
        self.images
            .iter()
            .map(|img| {
                if img.terms().any(|(e, _)| e.iter().sum::<u16>() != 1) {
                    return Err(Error::InvalidParameter("map is not linear".into()));
                }
                Ok((0..n)
                    .map(|j| {
                        let mut e = vec![0; n];
                        e[j] = 1;
                        img.coeff(&e)
                    })
                    .collect())
            })
            .collect()
    }

    /// The inverse substitution `new := linear(old)`, by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        let m = self.coefficient_matrix()?;
        let n = m.len();
        if n != self.new.dim() {
            return Err(Error::Singular);
        }
        let inv = invert(m)?;
        let images = (0..n)
            .map(|j| {
                let mut p = MultiPoly::zero(self.old.registry());
                for (i, row) in inv[j].iter().enumerate() {
                    let mut e = vec![0; n];
                    e[i] = 1;
                    p = &p + &MultiPoly::monomial(self.old.registry(), e, row.clone());
                }
                p
            })
            .collect();
        Ok(CanonicalMap {
            kind: MapKind::Inverse,
            inverted: Some(self.kind),
            old: self.new.clone(),
            new: self.old.clone(),
            images,
        })
    }

    /// Rewrites a function of the old variables in terms of the new ones.
    pub fn apply(&self, h: &PhasePoly<C>) -> Result<PhasePoly<C>> {
        if h.space != self.old {
            return Err(Error::RegistryMismatch(format!(
                "function over {:?}, map expects {:?}",
                h.space.registry(),
                self.old.registry()
            )));
        }
        PhasePoly::new(self.new.clone(), h.poly.substitute(&self.images)?)
    }

    /// Brackets of the images in the new variables compared with the canonical
    /// structure of the old pairing.
    pub fn verify_symplectic(&self) -> Result<SymplecticReport> {
        let imgs: Vec<PhasePoly<C>> = self
            .images
            .iter()
            .map(|p| PhasePoly::new(self.new.clone(), p.clone()))
            .collect::<Result<_>>()?;
        let names = self.old.registry().names();
        let is_momentum: Vec<bool> = (0..self.old.dim())
            .map(|i| self.old.pairs().iter().any(|&(_, p)| p == i))
            .collect();
        let mut rep = SymplecticReport {
            xp: 0.0,
            xx: 0.0,
            pp: 0.0,
            entries: Vec::new(),
        };
        for i in 0..imgs.len() {
            for j in (i + 1)..imgs.len() {
                let b = poisson_bracket(&imgs[i], &imgs[j])?;
                let target = MultiPoly::constant(self.new.registry(), C::from_i64(self.old.structure(i, j)));
                let dev = b.poly.max_deviation(&target);
                let slot = match (is_momentum[i], is_momentum[j]) {
                    (false, false) => &mut rep.xx,
                    (true, true) => &mut rep.pp,
                    _ => &mut rep.xp,
                };
                *slot = slot.max(dev);
                rep.entries.push((names[i].clone(), names[j].clone(), dev));
            }
        }
        Ok(rep)
    }
}

fn invert<C: Coeff>(mut a: Vec<Vec<C>>) -> Result<Vec<Vec<C>>> {
    let n = a.len();
    let mut inv: Vec<Vec<C>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { C::one() } else { C::zero() }).collect())
        .collect();
    for col in 0..n {
        // largest pivot by magnitude; exact fields only need nonzero
        let piv = (col..n)
            .filter(|&r| !a[r][col].is_exact_zero())
            .max_by(|&x, &y| a[x][col].magnitude().total_cmp(&a[y][col].magnitude()))
            .ok_or(Error::Singular)?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = a[col][j].clone() / p.clone();
            inv[col][j] = inv[col][j].clone() / p.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_exact_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                a[r][j] = a[r][j].clone() - f.clone() * a[col][j].clone();
                inv[r][j] = inv[r][j].clone() - f.clone() * inv[col][j].clone();
            }
        }
    }
    Ok(inv)
}

/// `|h ∘ m − target|`: coefficient deviation after substituting the map into `h`.
pub fn transform_equals<C: Coeff>(h: &PhasePoly<C>, m: &CanonicalMap<C>, target: &PhasePoly<C>) -> Result<f64> {
    let t = m.apply(h)?;
    if t.space != target.space {
        return Err(Error::RegistryMismatch(format!(
            "transformed function over {:?}, target over {:?}",
            t.space.registry(),
            target.space.registry()
        )));
    }
    Ok(t.poly.max_deviation(&target.poly))
}

/// The interaction `λ y⁴` rewritten in diagonal variables, split by coefficient type.
#[derive(Clone, Debug)]
pub struct InteractionSplit<C: Coeff> {
    pub full: PhasePoly<C>,
    /// Monomials with real coefficients.
    pub real_part: PhasePoly<C>,
    /// `im` such that `full = real_part + i im` (only the non-real monomials).
    pub imag_part: PhasePoly<C>,
}

impl<C: Coeff> InteractionSplit<C> {
    /// Imaginary coefficients of `P1 X2³` and `P1³ X2`.
    pub fn marked_coefficients(&self) -> Result<(C, C)> {
        let p = &self.imag_part.poly;
        Ok((
            p.coeff_of(&[("P1", 1), ("X2", 3)])?,
            p.coeff_of(&[("P1", 3), ("X2", 1)])?,
        ))
    }
}

/// Rewrites `λ y⁴` through the complexified map (which must be the printed
/// `Complexified` block; its inverse gives `y` in diagonal variables).
pub fn transform_interaction<C: Coeff>(lambda: f64, m: &CanonicalMap<C>) -> Result<InteractionSplit<C>> {
    if m.kind != MapKind::Complexified {
        return Err(Error::InvalidParameter(format!(
            "interaction transform needs the complexified map, got {:?}",
            m.kind
        )));
    }
    let inv = m.inverse()?;
    let rot = &m.new;
    let y = MultiPoly::<C>::var(rot.registry(), "y")?;
    let v = PhasePoly::new(rot.clone(), y.pow(4).scale(&C::from_f64(lambda)))?;
    let full = inv.apply(&v)?;
    let (re, im) = full.poly.split_re_im();
    Ok(InteractionSplit {
        real_part: PhasePoly::new(full.space.clone(), re)?,
        imag_part: PhasePoly::new(full.space.clone(), im)?,
        full,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phasespace::Hamiltonian;
    use crate::polyalg::{Complex64, ExactComplex};

    type Q = ExactComplex;

    #[test]
    fn rotation_unit_frequency_images() {
        let m = CanonicalMap::<Q>::build(MapKind::Rotation, 1.0, None).unwrap();
        let ost = PhaseSpace::ostrogradsky();
        let r = ost.registry();
        let x = MultiPoly::linear(r, &[("x", Q::one()), ("p_q", Q::from_ratio(1, 4))]).unwrap();
        let q = MultiPoly::linear(r, &[("q", Q::one()), ("p_x", Q::from_ratio(1, 4))]).unwrap();
        assert_eq!(m.image("x").unwrap(), &x);
        assert_eq!(m.image("q").unwrap(), &q);
    }

    #[test]
    fn equal_frequency_is_singular() {
        for k in [MapKind::Diag, MapKind::DiagInverse, MapKind::Complexified] {
            assert!(matches!(
                CanonicalMap::<Complex64>::build(k, 1.0, Some(1.0)),
                Err(Error::EqualFrequency(_))
            ));
        }
    }

    #[test]
    fn complexified_x1_coefficient() {
        let m = CanonicalMap::<Complex64>::build(MapKind::Complexified, 2.0, Some(1.0)).unwrap();
        let c = m.image("X1").unwrap().coeff_of(&[("x", 1)]).unwrap();
        assert!((c - Complex64::new(2.0 / 3f64.sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn identity_map_is_symplectic() {
        let m = CanonicalMap::<Q>::identity(&PhaseSpace::ostrogradsky());
        assert_eq!(m.verify_symplectic().unwrap().max_deviation(), 0.0);
    }

    #[test]
    fn htild_to_hprime_unit_frequency() {
        let m = CanonicalMap::<Q>::build(MapKind::Rotation, 1.0, None).unwrap();
        let h = Hamiltonian::Htild { omega: 1.0 }.build::<Q>().unwrap();
        let t = Hamiltonian::Hprime { omega: 1.0 }.build::<Q>().unwrap();
        assert_eq!(transform_equals(&h, &m, &t).unwrap(), 0.0);
    }

    #[test]
    fn interaction_needs_complexified_map() {
        let m = CanonicalMap::<Q>::build(MapKind::Diag, 5.0, Some(3.0)).unwrap();
        assert!(transform_interaction(1.0, &m).is_err());
    }

    #[test]
    fn zero_coupling_gives_zero_interaction() {
        let m = CanonicalMap::<Q>::build(MapKind::Complexified, 5.0, Some(3.0)).unwrap();
        let s = transform_interaction(0.0, &m).unwrap();
        assert!(s.full.poly.is_zero());
    }
}
