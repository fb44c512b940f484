// The positive-definite realization, its equal-frequency limit and the
// density of the ghost spectrum for an irrational frequency ratio.

use pais_uhlenbeck::polyalg::{Complex64, ExactComplex};
use pais_uhlenbeck::spectra::*;

pub fn run() -> pais_uhlenbeck::Result<()> {
    let p = SpectrumParams::new(9.0, 4.0)?;
    for (n, m) in [(0, 0), (2, 1), (3, 3), (1, 4)] {
        let r = positive_eigenfunction::<ExactComplex>(n, m, &p)?;
        println!(
            "O_xy φ_{n}{m} = {} φ_{n}{m}  (exact residual {})",
            r.energy.re, r.residual
        );
    }
    let r = positive_eigenfunction::<Complex64>(10, 7, &SpectrumParams::new(1.9, 0.7)?)?;
    println!(
        "float (10,7) at (1.9,0.7): relative residual {:.1e}",
        r.relative_residual
    );

    for level in [0, 3, 12] {
        let c = equal_frequency_check::<ExactComplex>(level, 1.0)?;
        println!(
            "equal frequencies, N={level}: eigenvalue {} (deviation {}), z-form gives {}",
            c.expected_eigenvalue, c.deviation, c.z_form_eigenvalue
        );
    }

    for cutoff in [0, 3, 20, 100] {
        let hit = density_scan(2f64.sqrt(), 1.0, 0.0, cutoff)?;
        println!(
            "Ω1/Ω2 = √2, n,m ≤ {cutoff:>3}: min |E| = {:.4e} at ({}, {})",
            hit.gap, hit.n, hit.m
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
