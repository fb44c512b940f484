// Exact sparse polynomials, Hermite polynomials and normal-ordered
// differential operators.

use pais_uhlenbeck::polyalg::*;

type Q = ExactComplex;

pub fn run() -> pais_uhlenbeck::Result<()> {
    let r = Registry::new(&["x", "y"]);
    let x = MultiPoly::<Q>::var(&r, "x")?;
    let y = MultiPoly::<Q>::var(&r, "y")?;
    let p = &(&x + &y.scale(&Q::imag_unit())).pow(3) - &MultiPoly::constant(&r, Q::from_ratio(1, 2));
    println!("(x + iy)^3 - 1/2 = {p}");
    println!("d/dx of that     = {}", p.derivative_by("x")?);

    // [d/dx, x] = 1 after normal ordering
    let dx = DiffOp::<Q>::deriv(&r, "x", 1)?;
    let xm = DiffOp::<Q>::var(&r, "x")?;
    println!(
        "[d/dx, x] is the identity: {}",
        dx.commutator(&xm) == DiffOp::identity(&r)
    );

    let z = Registry::new(&["z"]);
    let zv = MultiPoly::<Q>::var(&z, "z")?;
    for n in 0..=4 {
        println!("H_{n}(z) = {}", hermite(n, &zv));
    }

    // exp(-1/4 d^2) z^5 = 2^-5 H_5(z), summed exactly
    let lap = DiffOp::<Q>::deriv(&z, "z", 2)?;
    let lhs = exp_diff_apply(&lap, &Q::from_ratio(-1, 4), &zv.pow(5))?;
    let rhs = hermite(5, &zv).scale(&Q::from_ratio(1, 32));
    println!("exp(-d^2/4) z^5 == H_5(z)/32: {}", lhs == rhs);

    // an operator acting on polynomial x Gaussian
    let e = QuadExponent::from_matrix(
        &r,
        &["x", "y"],
        &[
            vec![Q::from_ratio(-1, 2), Q::zero()],
            vec![Q::zero(), Q::from_ratio(-1, 2)],
        ],
    )?;
    let f = ExpPolyFn::new(x.clone(), e)?;
    let h = &DiffOp::deriv(&r, "x", 2)?.scale(&Q::from_ratio(-1, 2))
        + &DiffOp::multiply(&(&x * &x).scale(&Q::from_ratio(1, 2)));
    let hf = h.apply(&f)?;
    println!("oscillator on x e^(-r^2/2) gives ({}) e^(-r^2/2)", hf.poly);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
