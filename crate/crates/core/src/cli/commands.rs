use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{Mode, Params};
use super::report::Report;
use crate::dynamics::{
    analytic_deviation, confirm_escape, integrate, robert_envelope, stability_scan, IntegrateOptions, ScanGrid,
    SystemSpec,
};
use crate::error::{Error, Result};
use crate::phasespace::{fourth_order_identity, transform_equals, CanonicalMap, Hamiltonian, MapKind, ParamRecord};
use crate::polyalg::{Coeff, ExactComplex, ExpPolyFn};
use crate::spectra::{
    commutator_check, continuum_eigenfunction, density_scan, descendant, equal_frequency_check, exp_hermite_identity,
    free_particle_descendant, ghost_eigenfunction, gram_degeneracy, hermite_sum_identity, jordan_matrix_evolve,
    positive_eigenfunction, time_residual, JordanMetric, Operator, SpectrumParams,
};
use crate::variational::{energy_closed_form, energy_quadrature, gradient, unbounded_search, AnsatzParams, Couplings};

/// Claim identifiers attached to report checks.
pub const ANCHORS: &[&str] = &[
    "ghost-spectrum-eigenfunctions",
    "positive-spectrum-eigenfunctions",
    "equal-frequency-hermite-limit",
    "diagonalizing-canonical-map",
    "rotation-canonical-map",
    "complex-canonical-map",
    "fourth-order-equation",
    "conserved-angular-momentum",
    "nonstationary-descendants",
    "free-particle-descendants",
    "truncated-continuum-wavefunctions",
    "hermite-sum-identity",
    "exp-laplacian-hermite-identity",
    "spectrum-density",
    "jordan-block-solution",
    "jordan-limit-degeneracy",
    "classical-equations-of-motion",
    "stability-island",
    "finite-time-collapse",
    "integrable-bosonic-envelope",
    "variational-energy",
    "variational-unboundedness",
];

pub const SUBCOMMANDS: &[&str] = &[
    "verify eigen",
    "verify positive",
    "verify identities",
    "verify commutator",
    "verify maps",
    "verify descendants",
    "continuum residual",
    "spectrum density",
    "jordan demo",
    "gram limit",
    "classical run",
    "classical scan",
    "classical envelope",
    "variational check",
    "variational descend",
];

pub fn dispatch(subcommand: &str, p: &Params) -> Result<Report> {
    let mut r = Report::new(subcommand);
    match subcommand {
        "verify eigen" => verify_eigen(p, &mut r)?,
        "verify positive" => verify_positive(p, &mut r)?,
        "verify identities" => verify_identities(p, &mut r)?,
        "verify commutator" => verify_commutator(p, &mut r)?,
        "verify maps" => verify_maps(p, &mut r)?,
        "verify descendants" => verify_descendants(p, &mut r)?,
        "continuum residual" => continuum_residual(p, &mut r)?,
        "spectrum density" => spectrum_density(p, &mut r)?,
        "jordan demo" => jordan_demo(p, &mut r)?,
        "gram limit" => gram_limit(p, &mut r)?,
        "classical run" => classical_run(p, &mut r)?,
        "classical scan" => classical_scan(p, &mut r)?,
        "classical envelope" => classical_envelope(p, &mut r)?,
        "variational check" => variational_check(p, &mut r)?,
        "variational descend" => variational_descend(p, &mut r)?,
        other => return Err(Error::UnknownName(other.to_string())),
    }
    Ok(r)
}

fn mode(p: &Params, default: Mode, r: &mut Report) -> Mode {
    let m = p.mode.unwrap_or(default);
    r.input("mode", m);
    m
}

/// Default tolerance: exact zero in rational mode.
fn tol(p: &Params, m: Mode, float: f64, r: &mut Report) -> f64 {
    let t = p.tol.unwrap_or(if m == Mode::Rational { 0.0 } else { float });
    r.input("tol", t);
    t
}

fn pair(p: &Params, d1: f64, d2: f64, r: &mut Report) -> (f64, f64) {
    let v = (p.omega1.unwrap_or(d1), p.omega2.unwrap_or(d2));
    r.input("omega1", v.0);
    r.input("omega2", v.1);
    v
}

fn ghost_residual<C: Coeff>(n: u32, m: u32, sp: &SpectrumParams) -> Result<f64> {
    Ok(ghost_eigenfunction::<C>(n, m, sp)?.relative_residual)
}

fn verify_eigen(p: &Params, r: &mut Report) -> Result<()> {
    let (o1, o2) = pair(p, 3.0, 1.0, r);
    let m = mode(p, Mode::Float, r);
    let tol = tol(p, m, 1e-9, r);
    let nmax = p.nmax.unwrap_or(8);
    r.input("nmax", nmax);
    let sp = SpectrumParams::new(o1, o2)?;
    for n in 0..=nmax {
        for k in 0..=nmax {
            let v = match m {
                Mode::Float => ghost_residual::<Complex64>(n, k, &sp)?,
                Mode::Rational => ghost_residual::<ExactComplex>(n, k, &sp)?,
            };
            r.at_most(
                format!("ghost_residual[{n},{k}]"),
                "ghost-spectrum-eigenfunctions",
                v,
                tol,
            );
        }
    }
    Ok(())
}

fn positive_residual<C: Coeff>(n: u32, m: u32, sp: &SpectrumParams) -> Result<f64> {
    Ok(positive_eigenfunction::<C>(n, m, sp)?.relative_residual)
}

/// Highest level of the equal-frequency Hermite check.
pub const EQUAL_FREQUENCY_LEVELS: u32 = 12;

fn verify_positive(p: &Params, r: &mut Report) -> Result<()> {
    let (o1, o2) = pair(p, 4.0, 1.0, r);
    let m = mode(p, Mode::Float, r);
    let tol = tol(p, m, 1e-12, r);
    let nmax = p.nmax.unwrap_or(10);
    let omega = p.omega.unwrap_or(1.0);
    r.input("nmax", nmax);
    r.input("omega", omega);
    r.input("equal_frequency_levels", EQUAL_FREQUENCY_LEVELS);
    let sp = SpectrumParams::new(o1, o2)?;
    for n in 0..=nmax {
        for k in 0..=nmax {
            let v = match m {
                Mode::Float => positive_residual::<Complex64>(n, k, &sp)?,
                Mode::Rational => positive_residual::<ExactComplex>(n, k, &sp)?,
            };
            r.at_most(
                format!("positive_residual[{n},{k}]"),
                "positive-spectrum-eigenfunctions",
                v,
                tol,
            );
        }
    }
    for level in 0..=EQUAL_FREQUENCY_LEVELS {
        let c = match m {
            Mode::Float => equal_frequency_check::<Complex64>(level, omega)?,
            Mode::Rational => equal_frequency_check::<ExactComplex>(level, omega)?,
        };
        let anchor = "equal-frequency-hermite-limit";
        let scale = c.expected_eigenvalue.abs().max(1.0);
        r.at_most(
            format!("equal_frequency_deviation[{level}]"),
            anchor,
            c.deviation / scale,
            tol,
        );
        r.info(
            format!("z_form_eigenvalue_discrepancy[{level}]"),
            anchor,
            serde_json::json!({
                "expected": c.expected_eigenvalue,
                "z_form": c.z_form_eigenvalue,
                "z_form_self_consistency": c.z_form_deviation,
            }),
        );
    }
    Ok(())
}

fn verify_identities(p: &Params, r: &mut Report) -> Result<()> {
    let sum_max = p.nmax.unwrap_or(14);
    let exp_max = p.nmax.unwrap_or(20);
    r.input("mode", Mode::Rational);
    r.input("sum_degree_max", sum_max);
    r.input("exp_order_max", exp_max);
    for s in 0..=sum_max {
        let ok = (0..=s).all(|n| hermite_sum_identity(n, s - n));
        r.holds(format!("hermite_sum[n+m={s}]"), "hermite-sum-identity", ok, ok);
    }
    for n in 0..=exp_max {
        let ok = exp_hermite_identity(n)?;
        r.holds(
            format!("exp_laplacian_hermite[{n}]"),
            "exp-laplacian-hermite-identity",
            ok,
            ok,
        );
    }
    Ok(())
}

fn verify_commutator(p: &Params, r: &mut Report) -> Result<()> {
    let m = mode(p, Mode::Rational, r);
    let tol = tol(p, m, 1e-12, r);
    let omegas = p.omegas.clone().unwrap_or_else(|| vec![1.0, 2.0]);
    r.input("omegas", &omegas);
    for w in omegas {
        let v = match m {
            Mode::Float => commutator_check::<Complex64>(w)?,
            Mode::Rational => commutator_check::<ExactComplex>(w)?,
        };
        r.at_most(format!("commutator_norm[{w}]"), "conserved-angular-momentum", v, tol);
    }
    Ok(())
}

/// Frequency pairs with `Ω1² − Ω2²` a perfect square, so every map is exact
/// in rational arithmetic. Scaled by powers of two to stay exactly representable.
pub fn pythagorean_pairs(seed: u64, count: usize) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let u: u32 = rng.gen_range(2..=7);
            let v: u32 = rng.gen_range(1..u);
            let (a, b, c) = (u * u - v * v, 2 * u * v, u * u + v * v);
            let leg = if rng.gen_bool(0.5) { a } else { b };
            let s = f64::from(1u32 << rng.gen_range(0..4));
            (c as f64 / s, leg as f64 / s)
        })
        .collect()
}

fn map_checks<C: Coeff>(pairs: &[(f64, f64)], tol: f64, r: &mut Report) -> Result<()> {
    for &(a, b) in pairs {
        let tag = format!("{a},{b}");
        for (kind, anchor) in [
            (MapKind::Diag, "diagonalizing-canonical-map"),
            (MapKind::DiagInverse, "diagonalizing-canonical-map"),
            (MapKind::Complexified, "complex-canonical-map"),
        ] {
            let dev = CanonicalMap::<C>::build(kind, a, Some(b))?
                .verify_symplectic()?
                .max_deviation();
            r.at_most(format!("symplectic[{kind:?}@{tag}]"), anchor, dev, tol);
        }
        let rot = CanonicalMap::<C>::build(MapKind::Rotation, a, None)?;
        r.at_most(
            format!("symplectic[Rotation@{a}]"),
            "rotation-canonical-map",
            rot.verify_symplectic()?.max_deviation(),
            tol,
        );

        let pu = Hamiltonian::Pu { omega1: a, omega2: b }.build::<C>()?;
        let ghost = Hamiltonian::PuDiagGhost { omega1: a, omega2: b }.build::<C>()?;
        let diag = CanonicalMap::<C>::build(MapKind::Diag, a, Some(b))?;
        r.at_most(
            format!("pu_to_diag_ghost[{tag}]"),
            "diagonalizing-canonical-map",
            transform_equals(&pu, &diag, &ghost)?,
            tol,
        );

        let ht = Hamiltonian::Htild { omega: a }.build::<C>()?;
        let hp = Hamiltonian::Hprime { omega: a }.build::<C>()?;
        r.at_most(
            format!("htilde_to_hprime[{a}]"),
            "rotation-canonical-map",
            transform_equals(&ht, &rot, &hp)?,
            tol,
        );

        let rh = Hamiltonian::Rot { omega1: a, omega2: b }.build::<C>()?;
        let pos = Hamiltonian::DiagPositive { omega1: a, omega2: b }.build::<C>()?;
        let cm = CanonicalMap::<C>::build(MapKind::Complexified, a, Some(b))?.inverse()?;
        r.at_most(
            format!("rot_to_positive_diagonal[{tag}]"),
            "complex-canonical-map",
            transform_equals(&rh, &cm, &pos)?,
            tol,
        );

        r.at_most(
            format!("fourth_order_identity[{tag}]"),
            "fourth-order-equation",
            fourth_order_identity::<C>(a, b)?,
            tol,
        );
    }
    Ok(())
}

fn verify_maps(p: &Params, r: &mut Report) -> Result<()> {
    let m = mode(p, Mode::Rational, r);
    let tol = tol(p, m, 1e-12, r);
    let seed = p.seed.unwrap_or(1);
    let count = p.count.unwrap_or(5);
    let pairs = pythagorean_pairs(seed, count);
    r.input("seed", seed);
    r.input("pairs", &pairs);
    match m {
        Mode::Float => map_checks::<Complex64>(&pairs, tol, r),
        Mode::Rational => map_checks::<ExactComplex>(&pairs, tol, r),
    }
}

fn descendant_checks<C: Coeff>(omegas: &[f64], tol: f64, r: &mut Report) -> Result<()> {
    for &w in omegas {
        let h = Operator::HPu { omega1: w, omega2: w }.build::<C>()?;
        for order in 0..=2 {
            let f = descendant::<C>(order, w)?;
            r.at_most(
                format!("descendant[{order}@{w}]"),
                "nonstationary-descendants",
                time_residual(&f, &h)?,
                tol,
            );
        }
    }
    let h = Operator::HFreeParticle.build::<C>()?;
    for order in 0..=4 {
        let f = ExpPolyFn::polynomial(free_particle_descendant::<C>(order)?);
        r.at_most(
            format!("free_particle[{order}]"),
            "free-particle-descendants",
            time_residual(&f, &h)?,
            tol,
        );
    }
    Ok(())
}

fn verify_descendants(p: &Params, r: &mut Report) -> Result<()> {
    let m = mode(p, Mode::Float, r);
    let tol = tol(p, m, 1e-12, r);
    let omegas = p.omegas.clone().unwrap_or_else(|| vec![1.0, 2.0, 0.5]);
    r.input("omegas", &omegas);
    match m {
        Mode::Float => descendant_checks::<Complex64>(&omegas, tol, r),
        Mode::Rational => descendant_checks::<ExactComplex>(&omegas, tol, r),
    }
}

fn continuum_residual(p: &Params, r: &mut Report) -> Result<()> {
    let l = p.l.unwrap_or(0);
    let k = p.k.unwrap_or(1.0);
    let omega = p.omega.unwrap_or(1.0);
    let ms = p.truncations.clone().unwrap_or_else(|| vec![5, 10, 20]);
    let tol = p.tol.unwrap_or(1e-6);
    if ms.len() < 2 {
        return Err(Error::InvalidParameter("need at least two truncations".into()));
    }
    for (key, v) in [("l", l as f64), ("k", k), ("omega", omega), ("tol", tol)] {
        r.input(key, v);
    }
    r.input("truncations", &ms);
    let anchor = "truncated-continuum-wavefunctions";
    let res = ms
        .iter()
        .map(|&m| Ok(continuum_eigenfunction::<Complex64>(l, k, omega, m)?.residual))
        .collect::<Result<Vec<f64>>>()?;
    for (m, v) in ms.iter().zip(&res) {
        r.info(format!("residual[M={m}]"), anchor, super::report::num(*v));
    }
    let decreasing = res.windows(2).all(|w| w[1] < w[0]);
    r.holds("residual_decreasing", anchor, decreasing, decreasing);
    let ratio = if res[0] == 0.0 {
        0.0
    } else {
        res[res.len() - 1] / res[0]
    };
    r.at_most("residual_ratio_last_over_first", anchor, ratio, tol);
    Ok(())
}

/// Cutoff used as the coarse reference in the density report.
pub const DENSITY_REFERENCE_CUTOFF: u32 = 3;

fn spectrum_density(p: &Params, r: &mut Report) -> Result<()> {
    let (o1, o2) = pair(p, 2f64.sqrt(), 1.0, r);
    let target = p.target.unwrap_or(0.0);
    let nmax = p.nmax.unwrap_or(100);
    r.input("target", target);
    r.input("nmax", nmax);
    let anchor = "spectrum-density";
    let hit = density_scan(o1, o2, target, nmax)?;
    r.info("min_gap", anchor, hit);
    if nmax > DENSITY_REFERENCE_CUTOFF {
        let coarse = density_scan(o1, o2, target, DENSITY_REFERENCE_CUTOFF)?;
        let ok = hit.gap < coarse.gap;
        r.holds(
            format!("gap_below_cutoff_{DENSITY_REFERENCE_CUTOFF}"),
            anchor,
            serde_json::json!({ "coarse": coarse.gap, "fine": hit.gap }),
            ok,
        );
    }
    if let Some(e) = p.expect {
        let tol = p.tol.unwrap_or(1e-4);
        r.input("expect", e);
        r.input("tol", tol);
        r.at_most("gap_matches_expected", anchor, (hit.gap - e).abs(), tol);
    }
    Ok(())
}

fn complex_arg(v: &Option<Vec<f64>>, default: Complex64, what: &str) -> Result<Complex64> {
    match v.as_deref() {
        None => Ok(default),
        Some([re]) => Ok(Complex64::new(*re, 0.0)),
        Some([re, im]) => Ok(Complex64::new(*re, *im)),
        Some(_) => Err(Error::InvalidParameter(format!("`{what}` takes re or re,im"))),
    }
}

fn jordan_demo(p: &Params, r: &mut Report) -> Result<()> {
    let a = complex_arg(&p.a, Complex64::new(1.0, 0.5), "a")?;
    let b = complex_arg(&p.b, Complex64::new(0.5, -1.0), "b")?;
    let times = p
        .times
        .clone()
        .unwrap_or_else(|| vec![0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0]);
    let tol = p.tol.unwrap_or(1e-14);
    r.input("a", [a.re, a.im]);
    r.input("b", [b.re, b.im]);
    r.input("times", &times);
    r.input("tol", tol);
    let anchor = "jordan-block-solution";
    for &t in &times {
        let closed = (a - Complex64::i() * b * t).norm_sqr() + b.norm_sqr();
        let got = jordan_matrix_evolve(a, b, t, JordanMetric::Euclidean);
        r.at_most(
            format!("euclidean_norm[t={t}]"),
            anchor,
            (got - closed).abs() / closed.max(1.0),
            tol,
        );
        let d = jordan_matrix_evolve(a, b, t, JordanMetric::Degenerate);
        r.at_most(
            format!("degenerate_norm_constant[t={t}]"),
            anchor,
            (d - b.norm_sqr()).abs(),
            tol,
        );
    }
    Ok(())
}

fn gram_limit(p: &Params, r: &mut Report) -> Result<()> {
    let levels = p.levels.clone().unwrap_or_else(|| vec![1, 2]);
    let deltas = p.deltas.clone().unwrap_or_else(|| vec![0.5, 0.1, 0.02]);
    let base = p.base.unwrap_or(1.0);
    r.input("levels", &levels);
    r.input("deltas", &deltas);
    r.input("base", base);
    for level in levels {
        let s = gram_degeneracy(level, &deltas, base)?;
        let ok = s.windows(2).all(|w| w[1] < w[0]);
        r.holds(
            format!("smallest_singular_value_decreasing[N={level}]"),
            "jordan-limit-degeneracy",
            &s,
            ok,
        );
    }
    Ok(())
}

fn param_record(p: &Params) -> ParamRecord {
    ParamRecord {
        omega1: p.omega1,
        omega2: p.omega2,
        omega: p.omega,
        alpha: p.alpha,
        beta: p.beta,
        gamma: p.gamma,
        lambda: p.lambda,
    }
}

fn system(p: &Params, default: &str, defaults: ParamRecord, r: &mut Report) -> Result<SystemSpec> {
    let name = p.system.as_deref().unwrap_or(default);
    let rec = param_record(p);
    let merged = ParamRecord {
        omega1: rec.omega1.or(defaults.omega1),
        omega2: rec.omega2.or(defaults.omega2),
        omega: rec.omega.or(defaults.omega),
        alpha: rec.alpha.or(defaults.alpha),
        beta: rec.beta.or(defaults.beta),
        gamma: rec.gamma.or(defaults.gamma),
        lambda: rec.lambda.or(defaults.lambda),
    };
    let spec = SystemSpec::new(Hamiltonian::from_name(name, &merged)?)?;
    r.input("hamiltonian", spec.hamiltonian);
    Ok(spec)
}

fn state(p: &Params, default: [f64; 4], r: &mut Report) -> Result<[f64; 4]> {
    let s = match p.ic.as_deref() {
        None => default,
        Some(v) => v
            .try_into()
            .map_err(|_| Error::InvalidParameter(format!("`ic` needs 4 components, got {}", v.len())))?,
    };
    r.input("ic", s);
    Ok(s)
}

fn options(p: &Params, rtol: f64, r: &mut Report) -> Result<IntegrateOptions> {
    let rtol = p.rtol.unwrap_or(rtol);
    let atol = p.atol.unwrap_or(rtol * 1e-2);
    let dt = p.dt.unwrap_or(0.05);
    r.input("rtol", rtol);
    r.input("atol", atol);
    r.input("dt", dt);
    IntegrateOptions::new(rtol, atol)?.with_sample_dt(dt)
}

fn classical_run(p: &Params, r: &mut Report) -> Result<()> {
    let defaults = ParamRecord {
        omega1: Some(2.0),
        omega2: Some(1.0),
        omega: Some(1.0),
        ..Default::default()
    };
    let spec = system(p, "pu", defaults, r)?;
    let s0 = state(p, [1.0, 0.0, 0.0, 0.0], r)?;
    let t_end = p.t_end.unwrap_or(100.0);
    r.input("t_end", t_end);
    let opts = options(p, 1e-10, r)?;
    let (traj, verdict) = integrate(&spec, s0, t_end, &opts)?;
    let anchor = "classical-equations-of-motion";
    r.info("verdict", anchor, verdict);
    r.info("stats", anchor, traj.stats);
    if let Some(path) = &p.out {
        r.input("out", path);
        traj.write_csv(path)?;
    }
    if let Hamiltonian::Pu { omega1, omega2 } = spec.hamiltonian {
        if omega1 != omega2 {
            let tol = p.tol.unwrap_or(1e-6);
            r.input("tol", tol);
            r.at_most("analytic_deviation", anchor, analytic_deviation(&traj)?, tol);
        }
    }
    if let Some(limit) = p.threshold {
        r.input("threshold", limit);
        r.at_most("max_energy_drift", anchor, traj.stats.max_energy_drift, limit);
    }
    Ok(())
}

fn classical_scan(p: &Params, r: &mut Report) -> Result<()> {
    let defaults = ParamRecord {
        omega1: Some(1.0),
        omega2: Some(1.0),
        alpha: Some(0.0),
        beta: Some(0.5),
        gamma: Some(0.0),
        ..Default::default()
    };
    let spec = system(p, "pu_quartic", defaults, r)?;
    let radius = p.radius.unwrap_or(3.0);
    let n = p.grid.unwrap_or(13);
    let t_probe = p.t_probe.unwrap_or(20.0);
    r.input("radius", radius);
    r.input("grid", n);
    r.input("t_probe", t_probe);
    let opts = options(p, 1e-9, r)?;
    let grid = ScanGrid::square(radius, n);
    let map = stability_scan(&spec, &grid, t_probe, &opts)?;
    r.info("island_size", "stability-island", map.island_size());
    r.info("collapsed_count", "stability-island", map.collapsed_count());
    let (_, origin) = integrate(&spec, [0.0; 4], t_probe, &opts)?;
    r.holds(
        "origin_bounded",
        "stability-island",
        origin.outcome,
        !origin.is_collapsed(),
    );
    let anchor = "finite-time-collapse";
    match map.exterior_collapse() {
        None => r.holds("exterior_collapse_found", anchor, serde_json::Value::Null, false),
        Some((q, x)) => {
            r.holds("exterior_collapse_found", anchor, [q, x], true);
            let c = confirm_escape(&spec, [q, x, 0.0, 0.0], t_probe, &opts)?;
            r.holds("finite_time_escape", anchor, c, c.finite_time);
        }
    }
    Ok(())
}

fn classical_envelope(p: &Params, r: &mut Report) -> Result<()> {
    let defaults = ParamRecord {
        omega: Some(1.0),
        lambda: Some(1.0),
        ..Default::default()
    };
    let spec = system(p, "robert", defaults, r)?;
    let s0 = state(p, [0.5, 0.0, 0.5, 0.0], r)?;
    let t_end = p.t_end.unwrap_or(500.0);
    let window = p.window.unwrap_or(25.0);
    let min_corr = p.tol.unwrap_or(0.9);
    r.input("t_end", t_end);
    r.input("window", window);
    r.input("min_correlation", min_corr);
    let opts = options(p, 1e-10, r)?;
    let env = robert_envelope(&spec, s0, t_end, window, &opts)?;
    let anchor = "integrable-bosonic-envelope";
    r.holds("slope_positive", anchor, super::report::num(env.slope), env.slope > 0.0);
    r.at_least("correlation", anchor, env.correlation, min_corr);
    Ok(())
}

fn couplings(p: &Params, r: &mut Report) -> Result<Couplings> {
    let k = Couplings::new(p.alpha.unwrap_or(0.0), p.beta.unwrap_or(0.0), p.gamma.unwrap_or(0.0))?;
    r.input("couplings", k);
    Ok(k)
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn variational_point(p: &AnsatzParams, m: Mode, tol: f64, tag: &str, r: &mut Report) -> Result<()> {
    let anchor = "variational-energy";
    let closed = energy_closed_form(p)?;
    let oracle = match m {
        Mode::Float => energy_quadrature::<Complex64>(p)?,
        Mode::Rational => energy_quadrature::<ExactComplex>(p)?.to_c64(),
    };
    r.at_most(
        format!("closed_vs_oracle[{tag}]"),
        anchor,
        relative(oracle.re, closed).max(oracle.im.abs()),
        tol,
    );
    let g = gradient(p)?;
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for (k, s) in [[h, 0.0, 0.0], [0.0, h, 0.0], [0.0, 0.0, h]].iter().enumerate() {
        let plus = energy_closed_form(&p.with_abc(p.a + s[0], p.b + s[1], p.c + s[2])?)?;
        let minus = energy_closed_form(&p.with_abc(p.a - s[0], p.b - s[1], p.c - s[2])?)?;
        let fd = (plus - minus) / (2.0 * h);
        worst = worst.max((fd - g[k]).abs() / g[k].abs().max(1.0));
    }
    r.at_most(format!("gradient_vs_finite_difference[{tag}]"), anchor, worst, tol);
    Ok(())
}

fn variational_check(p: &Params, r: &mut Report) -> Result<()> {
    let m = mode(p, Mode::Float, r);
    let tol = p.tol.unwrap_or(1e-6);
    let seed = p.seed.unwrap_or(2024);
    let count = p.count.unwrap_or(10);
    r.input("tol", tol);
    r.input("seed", seed);
    r.input("count", count);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let k = Couplings::new(
            rng.gen_range(0.0..1.0),
            rng.gen_range(0.0..1.0),
            rng.gen_range(0.0..1.0),
        )?;
        let a = rng.gen_range(0.2..5.0);
        let b = rng.gen_range(-3.0..3.0);
        let c = rng.gen_range(0.2..5.0);
        let omega = rng.gen_range(0.3..3.0);
        variational_point(&AnsatzParams::new(a, b, c, k, omega)?, m, tol, &format!("random{i}"), r)?;
    }
    if let Some(abc) = &p.abc {
        let [a, b, c] = abc[..] else {
            return Err(Error::InvalidParameter("`abc` needs three values".into()));
        };
        let k = couplings(p, r)?;
        let omega = p.omega.unwrap_or(1.0);
        r.input("abc", abc);
        r.input("omega", omega);
        variational_point(&AnsatzParams::new(a, b, c, k, omega)?, m, tol, "requested", r)?;
    }
    Ok(())
}

fn variational_descend(p: &Params, r: &mut Report) -> Result<()> {
    let k = couplings(p, r)?;
    let omega = p.omega.unwrap_or(1.0);
    let threshold = p.threshold.unwrap_or(-1e6);
    r.input("omega", omega);
    r.input("threshold", threshold);
    let cert = unbounded_search(k, omega, threshold)?;
    let anchor = "variational-unboundedness";
    let ok = cert.verify()?;
    r.holds("energies_strictly_decreasing", anchor, cert.energies.len(), ok);
    r.at_most("terminal_energy", anchor, cert.terminal, threshold);
    if let Some(path) = &p.out {
        r.input("out", path);
        cert.write_json(path)?;
    }
    Ok(())
}
