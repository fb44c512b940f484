// Linear envelope growth in the integrable nonlinear higher-derivative system.

use pais_uhlenbeck::dynamics::*;
use pais_uhlenbeck::phasespace::Hamiltonian;

pub fn run() -> pais_uhlenbeck::Result<()> {
    let opts = IntegrateOptions::new(1e-10, 1e-12)?;
    for lambda in [0.0, 1.0] {
        let spec = SystemSpec::new(Hamiltonian::Robert { omega: 1.0, lambda })?;
        let env = robert_envelope(&spec, [0.5, 0.0, 0.5, 0.0], 500.0, 25.0, &opts)?;
        println!(
            "λ = {lambda}: slope {:.4e}, correlation {:.4}",
            env.slope, env.correlation
        );
        for (t, a) in env.windows.iter().step_by(5) {
            println!("  t ≈ {t:>5.1}  max amplitude {a:.4}");
        }
    }
    let damped = SystemSpec::new(Hamiltonian::RobertGamma {
        omega: 1.0,
        lambda: 1.0,
        gamma: 0.01,
    })?;
    let env = robert_envelope(&damped, [0.5, 0.0, 0.5, 0.0], 200.0, 10.0, &opts)?;
    println!("with γ = 0.01: slope {:.4e}", env.slope);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
