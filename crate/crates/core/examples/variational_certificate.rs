// The Gaussian variational energy, its moment-integral oracle and a
// certificate that it is unbounded below.

use pais_uhlenbeck::polyalg::{Coeff, Complex64, ExactComplex};
use pais_uhlenbeck::variational::*;

pub fn run() -> pais_uhlenbeck::Result<()> {
    let k = Couplings::new(0.1, 0.2, 0.3)?;
    let p = AnsatzParams::new(2.0, 1.0, 3.0, k, 1.0)?;
    let oracle: Complex64 = energy_quadrature(&p)?;
    let exact: ExactComplex = energy_quadrature(&p)?;
    println!("E(A=2,B=1,C=3) closed form {:.15}", energy_closed_form(&p)?);
    println!("               moment oracle {:.15}", oracle.re);
    println!(
        "               exact oracle  {:.15} (imaginary part {})",
        exact.to_c64().re,
        exact.to_c64().im
    );
    println!("gradient {:?}", gradient(&p)?);

    let cert = unbounded_search(Couplings::default(), 1.0, -1e6)?;
    for (q, e) in cert.path.iter().zip(&cert.energies) {
        println!("  A = {:>8.1e}  B = {:>8.1e}  E = {e:.6e}", q.a, q.b);
    }
    println!("certificate verifies: {}", cert.verify()?);
    let path = std::env::temp_dir().join("pu_certificate.json");
    cert.write_json(&path)?;
    println!("written to {}", path.display());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
