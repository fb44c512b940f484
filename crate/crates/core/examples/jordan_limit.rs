// The equal-frequency limit: Jordan-block dynamics, degenerate families,
// vanishing Gram determinants, the conserved charge and non-stationary states.

use pais_uhlenbeck::polyalg::{Complex64, ExactComplex};
use pais_uhlenbeck::spectra::*;

pub fn run() -> pais_uhlenbeck::Result<()> {
    let (a, b) = (Complex64::new(1.0, 0.5), Complex64::new(0.5, -1.0));
    for t in [0.0, 1.0, 10.0] {
        println!(
            "t = {t:>4}: |ψ|² = {:.6}, degenerate-metric norm = {:.6}",
            jordan_matrix_evolve(a, b, t, JordanMetric::Euclidean),
            jordan_matrix_evolve(a, b, t, JordanMetric::Degenerate)
        );
    }

    for n in [-2, 0, 3] {
        let r = degenerate_family::<ExactComplex>(n, 1.0)?;
        println!(
            "degenerate family N = {n:>2}: energy {}, residual {}",
            r.energy.re, r.residual
        );
    }

    for level in [1, 2] {
        let s = gram_degeneracy(level, &[0.5, 0.1, 0.02], 1.0)?;
        println!(
            "Gram smallest singular value, N={level}: {s:?}",
            s = s.iter().map(|v| format!("{v:.3e}")).collect::<Vec<_>>()
        );
    }

    println!(
        "[H(Ω,Ω), L] = 0 at Ω=2: {}",
        commutator_check::<ExactComplex>(2.0)? == 0.0
    );

    let h = Operator::HPu {
        omega1: 1.5,
        omega2: 1.5,
    }
    .build::<Complex64>()?;
    for order in 0..=2 {
        let f = descendant::<Complex64>(order, 1.5)?;
        println!(
            "descendant {order}: Schrödinger residual {:.1e}",
            time_residual(&f, &h)?
        );
    }
    for m in [5, 10, 20] {
        let r = continuum_eigenfunction::<Complex64>(0, 1.0, 1.0, m)?;
        println!(
            "continuum (l,k,Ω)=(0,1,1), truncation {m:>2}: residual {:.3e}",
            r.residual
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
