// Adaptive integration of the free oscillator against its closed form, the
// benign ghost benchmark and CSV export.

use pais_uhlenbeck::dynamics::*;
use pais_uhlenbeck::phasespace::Hamiltonian;

pub fn run() -> pais_uhlenbeck::Result<()> {
    let opts = IntegrateOptions::new(1e-10, 1e-12)?;

    let pu = SystemSpec::new(Hamiltonian::Pu {
        omega1: 2.0,
        omega2: 1.0,
    })?;
    let (traj, verdict) = integrate(&pu, [1.0, 0.0, -4.0, 0.0], 100.0, &opts)?;
    println!(
        "free oscillator: {:?}, {} steps, max deviation from closed form {:.2e}",
        verdict.outcome,
        traj.stats.steps,
        analytic_deviation(&traj)?
    );

    let v1 = SystemSpec::new(Hamiltonian::DiagGhostPlusV1 {
        omega1: 1.2,
        omega2: 1.0,
        lambda: 0.1,
    })?;
    let (traj, verdict) = integrate(&v1, [0.1, 0.0, 0.1, 0.0], 1000.0, &opts)?;
    let peak = traj.samples.iter().map(|s| s.state[0].abs()).fold(0.0, f64::max);
    println!(
        "benign ghost potential to t=1000: {:?}, energy drift {:.2e}, peak |X1| {peak:.4}",
        verdict.outcome, traj.stats.max_energy_drift
    );

    let path = std::env::temp_dir().join("pu_free_oscillator.csv");
    let short = integrate(&pu, [1.0, 0.0, -4.0, 0.0], 1.0, &opts.with_sample_dt(0.25)?)?.0;
    short.write_csv(&path)?;
    print!("{}", std::fs::read_to_string(&path)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
