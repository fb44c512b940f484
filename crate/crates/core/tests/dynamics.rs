use pais_uhlenbeck::dynamics::*;
use pais_uhlenbeck::phasespace::Hamiltonian;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn opts(rtol: f64) -> IntegrateOptions {
    IntegrateOptions::new(rtol, rtol * 1e-2).unwrap()
}

fn all_systems() -> Vec<SystemSpec> {
    [
        Hamiltonian::Pu {
            omega1: 2.0,
            omega2: 1.0,
        },
        Hamiltonian::PuQuartic {
            omega1: 1.3,
            omega2: 0.8,
            alpha: 0.3,
            beta: -0.7,
            gamma: 0.2,
        },
        Hamiltonian::DiagGhostPlusV1 {
            omega1: 1.2,
            omega2: 1.0,
            lambda: 0.1,
        },
        Hamiltonian::DiagGhostPlusV2 {
            omega1: 1.2,
            omega2: 1.0,
            lambda: 0.4,
        },
        Hamiltonian::Robert {
            omega: 1.0,
            lambda: 1.0,
        },
        Hamiltonian::RobertGamma {
            omega: 1.1,
            lambda: 0.5,
            gamma: 0.05,
        },
    ]
    .into_iter()
    .map(|h| SystemSpec::new(h).unwrap())
    .collect()
}

#[test]
fn closed_form_rhs_matches_bracket_field() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for spec in all_systems() {
        let field = spec.bracket_field().unwrap();
        for _ in 0..50 {
            let s: State4 = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
            let (a, b) = (spec.rhs(&s), field.eval(&s));
            for k in 0..4 {
                assert!(
                    (a[k] - b[k]).abs() <= 1e-12 * (1.0 + b[k].abs()),
                    "{}: {a:?} vs {b:?}",
                    spec.name()
                );
            }
        }
    }
}

#[test]
fn free_pu_pure_mode_matches_cosine() {
    let spec = SystemSpec::new(Hamiltonian::Pu {
        omega1: 2.0,
        omega2: 1.0,
    })
    .unwrap();
    let (traj, v) = integrate(&spec, [1.0, 0.0, -4.0, 0.0], 100.0, &opts(1e-10)).unwrap();
    assert!(!v.is_collapsed());
    let worst = traj
        .samples
        .iter()
        .map(|s| (s.state[0] - (2.0 * s.t).cos()).abs())
        .fold(0.0, f64::max);
    assert!(worst <= 1e-6, "{worst}");
    assert!(analytic_deviation(&traj).unwrap() <= 1e-6);
}

#[test]
fn free_pu_random_states_match_analytic_solution() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for &(a, b) in &[(2.0, 1.0), (3.0, 1.0), (1.7, 0.4)] {
        let spec = SystemSpec::new(Hamiltonian::Pu { omega1: a, omega2: b }).unwrap();
        let s0: State4 = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let (traj, _) = integrate(&spec, s0, 100.0, &opts(1e-10)).unwrap();
        assert!(analytic_deviation(&traj).unwrap() <= 1e-6, "({a},{b})");
    }
}

#[test]
fn fourth_order_law_along_trajectories() {
    let fine = opts(1e-10).with_sample_dt(0.01).unwrap();
    let spec = SystemSpec::new(Hamiltonian::Pu {
        omega1: 2.0,
        omega2: 1.0,
    })
    .unwrap();
    let (traj, _) = integrate(&spec, [1.0, 0.0, -4.0, 0.0], 20.0, &fine).unwrap();
    assert!(fourth_order_residual(&traj).unwrap() <= 1e-5);

    let (zero, _) = integrate(&spec, [0.0; 4], 5.0, &fine).unwrap();
    assert_eq!(fourth_order_residual(&zero).unwrap(), 0.0);

    let spec = SystemSpec::new(Hamiltonian::Pu {
        omega1: 3.0,
        omega2: 1.0,
    })
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s0: State4 = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
    let (traj, _) = integrate(&spec, s0, 20.0, &fine).unwrap();
    let qmax = traj.samples.iter().map(|s| s.state[0].abs()).fold(0.0, f64::max);
    let r = fourth_order_residual(&traj).unwrap();
    assert!(r <= 1e-4 * qmax, "{r} vs {qmax}");
}

#[test]
fn stencil_needs_five_samples() {
    let spec = SystemSpec::new(Hamiltonian::Pu {
        omega1: 2.0,
        omega2: 1.0,
    })
    .unwrap();
    let coarse = opts(1e-8).with_sample_dt(1.0).unwrap();
    let (traj, _) = integrate(&spec, [1.0, 0.0, 0.0, 0.0], 2.0, &coarse).unwrap();
    assert!(fourth_order_residual(&traj).is_err());
}

#[test]
fn integrator_converges_at_fifth_order() {
    // endpoint error against step count across tolerances
    let spec = SystemSpec::new(Hamiltonian::Pu {
        omega1: 2.0,
        omega2: 1.0,
    })
    .unwrap();
    let s0 = [0.3, -0.2, 0.5, 0.1];
    let sol = TwoFrequencySolution::from_state(2.0, 1.0, &s0).unwrap();
    let mut pts = Vec::new();
    for rtol in [1e-5, 1e-6, 1e-7, 1e-8, 1e-9] {
        let o = IntegrateOptions::new(rtol, rtol).unwrap().with_sample_dt(10.0).unwrap();
        let (traj, _) = integrate(&spec, s0, 10.0, &o).unwrap();
        let end = traj.final_sample();
        let err = (end.state[0] - sol.q(end.t)).abs();
        pts.push(((traj.stats.steps as f64).ln(), err.ln()));
    }
    let (slope, _, _) = linear_fit(&pts).unwrap();
    assert!(-slope >= 4.5, "observed order {}", -slope);
}

#[test]
fn benign_ghost_benchmark() {
    let spec = SystemSpec::new(Hamiltonian::DiagGhostPlusV1 {
        omega1: 1.2,
        omega2: 1.0,
        lambda: 0.1,
    })
    .unwrap();
    let (traj, v) = integrate(&spec, [0.1, 0.0, 0.1, 0.0], 1000.0, &opts(1e-10)).unwrap();
    assert!(!v.is_collapsed());
    assert!(traj.stats.max_energy_drift <= 1e-6, "{}", traj.stats.max_energy_drift);
    let amp = traj
        .samples
        .iter()
        .map(|s| s.state[0].abs().max(s.state[2].abs()))
        .fold(0.0, f64::max);
    assert!(amp < 1.0, "{amp}");
}

#[test]
fn second_benign_potential() {
    let spec = SystemSpec::new(Hamiltonian::DiagGhostPlusV2 {
        omega1: 1.2,
        omega2: 1.0,
        lambda: 0.1,
    })
    .unwrap();
    let (traj, v) = integrate(&spec, [0.1, 0.0, 0.1, 0.0], 1000.0, &opts(1e-10)).unwrap();
    assert!(!v.is_collapsed());
    assert!(traj.stats.max_energy_drift <= 1e-6, "{}", traj.stats.max_energy_drift);
}

#[test]
fn robert_amplitude_grows_linearly() {
    let spec = SystemSpec::new(Hamiltonian::Robert {
        omega: 1.0,
        lambda: 1.0,
    })
    .unwrap();
    let env = robert_envelope(&spec, [0.5, 0.0, 0.5, 0.0], 500.0, 25.0, &opts(1e-10)).unwrap();
    assert!(env.slope > 0.0 && env.correlation > 0.9, "{env:?}");

    let free = SystemSpec::new(Hamiltonian::Robert {
        omega: 1.0,
        lambda: 0.0,
    })
    .unwrap();
    let env = robert_envelope(&free, [0.5, 0.0, 0.5, 0.0], 500.0, 25.0, &opts(1e-10)).unwrap();
    assert!(env.slope.abs() < 1e-6, "{env:?}");
}

#[test]
fn robert_gamma_is_reported() {
    let spec = SystemSpec::new(Hamiltonian::RobertGamma {
        omega: 1.0,
        lambda: 1.0,
        gamma: 0.01,
    })
    .unwrap();
    let env = robert_envelope(&spec, [0.5, 0.0, 0.5, 0.0], 200.0, 10.0, &opts(1e-9)).unwrap();
    assert_eq!(env.windows.len(), 20);
    assert!(env.windows.iter().all(|w| w.1.is_finite()));
}

#[test]
fn envelope_needs_ten_windows() {
    let spec = SystemSpec::new(Hamiltonian::Robert {
        omega: 1.0,
        lambda: 1.0,
    })
    .unwrap();
    assert!(robert_envelope(&spec, [0.5, 0.0, 0.5, 0.0], 50.0, 10.0, &opts(1e-8)).is_err());
}

#[test]
fn vacuum_and_small_grid_are_bounded() {
    let spec = SystemSpec::new(Hamiltonian::PuQuartic {
        omega1: 1.0,
        omega2: 1.0,
        alpha: 0.0,
        beta: 0.5,
        gamma: 0.0,
    })
    .unwrap();
    let map = stability_scan(&spec, &ScanGrid::square(0.05, 5), 50.0, &opts(1e-9)).unwrap();
    assert_eq!(map.collapsed_count(), 0);
    assert_eq!(map.island_size(), 25);
    let (_, v) = integrate(&spec, [0.0; 4], 100.0, &opts(1e-9)).unwrap();
    assert!(!v.is_collapsed());
}

#[test]
fn negative_coupling_has_exterior_finite_time_escape() {
    let spec = SystemSpec::new(Hamiltonian::PuQuartic {
        omega1: 1.0,
        omega2: 1.0,
        alpha: 0.0,
        beta: -0.5,
        gamma: 0.0,
    })
    .unwrap();
    let map = stability_scan(&spec, &ScanGrid::square(3.0, 13), 20.0, &opts(1e-9)).unwrap();
    assert!(map.island[6][6]);
    assert!(map.collapsed_count() > 0);
    let (q, x) = map.exterior_collapse().unwrap();
    let c = confirm_escape(&spec, [q, x, 0.0, 0.0], 20.0, &opts(1e-9)).unwrap();
    assert!(c.finite_time, "{c:?}");
    let t_star = c.low.escape_time.unwrap();
    assert!(t_star >= c.low.trigger_time.unwrap() && t_star < 20.0);
}

#[test]
fn positive_mixed_coupling_grows_without_escaping() {
    // from a large initial state the 1e8 threshold is crossed, but by linear growth
    let spec = SystemSpec::new(Hamiltonian::PuQuartic {
        omega1: 1.0,
        omega2: 1.0,
        alpha: 0.0,
        beta: 0.5,
        gamma: 0.0,
    })
    .unwrap();
    let s0 = [
        78.2894620670381,
        88.88115127047587,
        -62.07978477275673,
        -96.82387438627664,
    ];
    let c = confirm_escape(&spec, s0, 150.0, &opts(1e-9)).unwrap();
    assert!(c.low.is_collapsed());
    assert!(!c.finite_time, "{c:?}");
}

#[test]
fn verdicts_are_deterministic() {
    let spec = SystemSpec::new(Hamiltonian::PuQuartic {
        omega1: 1.0,
        omega2: 1.0,
        alpha: 0.5,
        beta: 0.0,
        gamma: 0.0,
    })
    .unwrap();
    let a = integrate(&spec, [-3.0, -3.0, 0.0, 0.0], 10.0, &opts(1e-9)).unwrap();
    let b = integrate(&spec, [-3.0, -3.0, 0.0, 0.0], 10.0, &opts(1e-9)).unwrap();
    assert_eq!(a.1, b.1);
    assert_eq!(a.0.samples, b.0.samples);
    assert!(a.1.is_collapsed());
}

#[test]
fn csv_export_to_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let spec = SystemSpec::new(Hamiltonian::Pu {
        omega1: 2.0,
        omega2: 1.0,
    })
    .unwrap();
    let (traj, _) = integrate(
        &spec,
        [1.0, 0.0, -4.0, 0.0],
        1.0,
        &opts(1e-8).with_sample_dt(0.25).unwrap(),
    )
    .unwrap();
    traj.write_csv(&path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text.starts_with("t,v1,v2,v3,v4,H\n0,1,0,-4,0,"));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn invalid_inputs_rejected() {
    let spec = SystemSpec::new(Hamiltonian::Pu {
        omega1: 2.0,
        omega2: 1.0,
    })
    .unwrap();
    assert!(IntegrateOptions::new(0.0, 1e-9).is_err());
    assert!(integrate(&spec, [0.0; 4], -1.0, &opts(1e-8)).is_err());
    assert!(integrate(&spec, [f64::NAN, 0.0, 0.0, 0.0], 1.0, &opts(1e-8)).is_err());
}
