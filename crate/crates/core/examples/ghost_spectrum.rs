// Eigenfunctions of the quantum Ostrogradsky Hamiltonian with the unbounded
// ghost spectrum, checked by applying the operator symbolically.

use pais_uhlenbeck::polyalg::{Complex64, ExactComplex};
use pais_uhlenbeck::spectra::*;

pub fn run() -> pais_uhlenbeck::Result<()> {
    let p = SpectrumParams::new(3.0, 1.0)?;
    println!("Ω1 = 3, Ω2 = 1: E_nm = (n+½)Ω1 − (m+½)Ω2");
    for (n, m) in [(0, 0), (1, 0), (0, 1), (2, 3), (8, 8)] {
        let r = ghost_eigenfunction::<Complex64>(n, m, &p)?;
        println!(
            "  (n,m)=({n},{m})  E = {:>6}  terms = {:>3}  relative residual = {:.1e}",
            r.energy.re,
            r.wavefunction.poly.num_terms(),
            r.relative_residual
        );
    }

    // frequencies with rational square roots allow an exact check
    let exact = SpectrumParams::new(4.0, 1.0)?;
    let r = ghost_eigenfunction::<ExactComplex>(3, 2, &exact)?;
    println!("exact residual at (4,1), (n,m)=(3,2): {}", r.residual);
    println!("wavefunction polynomial: {}", r.wavefunction.poly);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
