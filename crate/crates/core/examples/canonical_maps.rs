// Linear canonical maps: symplecticity, Hamiltonian rewriting and the
// complex terms a quartic interaction picks up.

use pais_uhlenbeck::phasespace::*;
use pais_uhlenbeck::polyalg::ExactComplex;

type Q = ExactComplex;

pub fn run() -> pais_uhlenbeck::Result<()> {
    let (a, b) = (5.0, 3.0);
    for kind in [MapKind::Diag, MapKind::DiagInverse, MapKind::Complexified] {
        let m = CanonicalMap::<Q>::build(kind, a, Some(b))?;
        println!(
            "{kind:?}: symplectic deviation {}",
            m.verify_symplectic()?.max_deviation()
        );
    }

    let pu = Hamiltonian::Pu { omega1: a, omega2: b }.build::<Q>()?;
    let diag = CanonicalMap::<Q>::build(MapKind::Diag, a, Some(b))?;
    let h = diag.apply(&pu)?;
    println!("Ostrogradsky Hamiltonian in diagonal variables: {}", h.poly);
    let ghost = Hamiltonian::PuDiagGhost { omega1: a, omega2: b }.build::<Q>()?;
    println!(
        "equals the ghost pair exactly: {}",
        transform_equals(&pu, &diag, &ghost)? == 0.0
    );

    println!(
        "fourth-order law from Hamilton's equations: residual {}",
        fourth_order_identity::<Q>(a, b)?
    );

    let cm = CanonicalMap::<Q>::build(MapKind::Complexified, a, Some(b))?;
    let split = transform_interaction(1.0, &cm)?;
    let (c1, c3) = split.marked_coefficients()?;
    println!("λ y⁴ in diagonal variables: imaginary P1 X2³ {c1}, P1³ X2 {c3}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
