// Driving the report machinery from code, as the `pu-verify` binary does.

use pais_uhlenbeck::cli::{dispatch, Mode, Params};

pub fn run() -> pais_uhlenbeck::Result<()> {
    let p = Params {
        mode: Some(Mode::Rational),
        omegas: Some(vec![1.0, 3.0]),
        ..Default::default()
    };
    let report = dispatch("verify commutator", &p)?;
    print!("{}", report.to_json());

    let p = Params {
        nmax: Some(3),
        expect: Some(0.0355),
        tol: Some(1e-3),
        ..Default::default()
    };
    let report = dispatch("spectrum density", &p)?;
    for c in &report.checks {
        println!("{:<24} pass={} value={}", c.name, c.pass, c.value);
    }
    println!("overall pass: {}", report.pass);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
