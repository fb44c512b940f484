use pais_uhlenbeck::polyalg::*;
use proptest::prelude::*;

type Q = ExactComplex;

fn reg() -> Registry {
    Registry::new(&["x", "y"])
}

fn q(re: (i64, i64), im: (i64, i64)) -> Q {
    Q::from_ratio(re.0, re.1) + Q::imag_unit() * Q::from_ratio(im.0, im.1)
}

prop_compose! {
    fn coeff()(a in -9i64..10, b in 1i64..5, c in -9i64..10, d in 1i64..5) -> Q {
        q((a, b), (c, d))
    }
}

prop_compose! {
    fn poly()(terms in prop::collection::vec(((0u16..4, 0u16..4), coeff()), 0..6)) -> MultiPoly<Q> {
        MultiPoly::from_terms(&reg(), terms.into_iter().map(|((i, j), c)| (vec![i, j], c)))
    }
}

prop_compose! {
    fn diffop()(terms in prop::collection::vec(((0u16..3, 0u16..3, 0u16..3, 0u16..3), coeff()), 1..4)) -> DiffOp<Q> {
        terms.into_iter().fold(DiffOp::zero(&reg()), |acc, ((a, b, c, d), k)| {
            &acc + &DiffOp::term(&reg(), k, vec![a, b], vec![c, d])
        })
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MultiPoly::one(&reg()), a.clone());
    }

    #[test]
    fn leibniz_rule(a in poly(), b in poly()) {
        for i in 0..2 {
            let lhs = (&a * &b).derivative(i);
            let rhs = &(&a.derivative(i) * &b) + &(&a * &b.derivative(i));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), x in coeff(), y in coeff()) {
        let pt = [x, y];
        prop_assert_eq!((&a * &b).eval(&pt), a.eval(&pt) * b.eval(&pt));
        prop_assert_eq!((&a + &b).eval(&pt), a.eval(&pt) + b.eval(&pt));
    }

    #[test]
    fn composition_matches_sequential_application(l in diffop(), r in diffop(), p in poly()) {
        let composed = (&l * &r).apply_poly(&p).unwrap();
        let sequential = l.apply_poly(&r.apply_poly(&p).unwrap()).unwrap();
        prop_assert_eq!(composed, sequential);
    }

    #[test]
    fn composition_is_associative(a in diffop(), b in diffop(), c in diffop()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn commutator_jacobi(a in diffop(), b in diffop(), c in diffop()) {
        let j = &(&a.commutator(&b.commutator(&c)) + &b.commutator(&c.commutator(&a))) + &c.commutator(&a.commutator(&b));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn apply_on_gaussian_matches_product_rule(p in poly(), k in coeff()) {
        // ∂x (p e^{k x y}) = (∂x p + k y p) e^{k x y}
        let e = QuadExponent::from_matrix(&reg(), &["x", "y"], &[
            vec![Q::zero(), k.clone() / Q::from_i64(2)],
            vec![k.clone() / Q::from_i64(2), Q::zero()],
        ]).unwrap();
        let f = ExpPolyFn::new(p.clone(), e).unwrap();
        let got = DiffOp::deriv(&reg(), "x", 1).unwrap().apply(&f).unwrap();
        let y = MultiPoly::var(&reg(), "y").unwrap();
        let expected = &p.derivative(0) + &(&y * &p).scale(&k);
        prop_assert_eq!(got.poly, expected);
    }
}

/// Explicit sum `H_n(z) = n! Σ_m (−1)^m (2z)^{n−2m} / (m! (n−2m)!)`.
fn hermite_explicit(n: u32, z: &MultiPoly<Q>) -> MultiPoly<Q> {
    let fact = |k: u32| (1..=k as i64).fold(Q::one(), |a, j| a * Q::from_i64(j));
    let two_z = z.scale(&Q::from_i64(2));
    let mut acc = MultiPoly::zero(z.registry());
    for m in 0..=n / 2 {
        let sign = if m % 2 == 0 { Q::one() } else { -Q::one() };
        let c = sign * fact(n) / (fact(m) * fact(n - 2 * m));
        acc = &acc + &two_z.pow(n - 2 * m).scale(&c);
    }
    acc
}

#[test]
fn hermite_matches_explicit_sum() {
    let r = Registry::new(&["z"]);
    let z = MultiPoly::var(&r, "z").unwrap();
    for n in 0..=25 {
        assert_eq!(hermite(n, &z), hermite_explicit(n, &z), "H_{n}");
    }
}

#[test]
fn hermite_of_linear_form_is_substitution() {
    let r = reg();
    let arg = MultiPoly::linear(&r, &[("x", Q::from_ratio(3, 2)), ("y", Q::from_i64(-2))]).unwrap();
    let zr = Registry::new(&["z"]);
    let z = MultiPoly::var(&zr, "z").unwrap();
    for n in 0..=8 {
        let direct = hermite_linear(n, &r, &[("x", Q::from_ratio(3, 2)), ("y", Q::from_i64(-2))]).unwrap();
        let subst = hermite(n, &z).substitute(std::slice::from_ref(&arg)).unwrap();
        assert_eq!(direct, subst);
    }
}

#[test]
fn exponential_of_laplacian_terminates_exactly() {
    // exp(−¼ ∂²) z² = z² − ½
    let r = Registry::new(&["z"]);
    let z = MultiPoly::<Q>::var(&r, "z").unwrap();
    let lap = DiffOp::deriv(&r, "z", 2).unwrap();
    let got = exp_diff_apply(&lap, &Q::from_ratio(-1, 4), &z.pow(2)).unwrap();
    let expected = &z.pow(2) - &MultiPoly::constant(&r, Q::from_ratio(1, 2));
    assert_eq!(got, expected);
    let x = DiffOp::<Q>::var(&r, "z").unwrap();
    assert_eq!(
        exp_diff_apply(&x, &Q::one(), &z),
        Err(pais_uhlenbeck::Error::NonTerminatingSeries)
    );
}

#[test]
fn float_and_exact_agree() {
    let r = reg();
    let p = MultiPoly::from_terms(&r, [(vec![2, 1], q((1, 3), (2, 7))), (vec![0, 3], q((-5, 2), (0, 1)))]);
    let f = p.to_float();
    let pt = [Complex64::new(0.3, -0.1), Complex64::new(1.7, 0.2)];
    let exact_pt = [Q::from_c64(pt[0]), Q::from_c64(pt[1])];
    let diff = f.eval(&pt) - p.eval(&exact_pt).to_c64();
    assert!(diff.norm() < 1e-14);
}
