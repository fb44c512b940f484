//! Post-processing of trajectories: analytic free solution, fourth-order
//! residual, stability scans and envelope growth.

use serde::{Deserialize, Serialize};

use super::system::{State4, SystemSpec};
use super::trajectory::{integrate, linear_fit, CollapseVerdict, IntegrateOptions, Trajectory, AMPLITUDE_THRESHOLD};
use crate::error::{Error, Result};
use crate::phasespace::Hamiltonian;

/// `q(t) = a cos Ω1t + b sin Ω1t + c cos Ω2t + d sin Ω2t` for the free system.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoFrequencySolution {
    pub omega1: f64,
    pub omega2: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl TwoFrequencySolution {
    /// Matches `q, q̇, q̈, q⃛` at `t = 0` from an Ostrogradsky state `(q, x, p_x, p_q)`:
    /// `q̇ = x`, `q̈ = p_x`, `q⃛ = −p_q − (Ω1² + Ω2²) x`.
    pub fn from_state(omega1: f64, omega2: f64, s: &State4) -> Result<Self> {
        if omega1 == omega2 {
            return Err(Error::EqualFrequency("two-frequency solution".into()));
        }
        let [q0, q1, q2, pq] = *s;
        let (w1, w2) = (omega1, omega2);
        let q3 = -pq - (w1 * w1 + w2 * w2) * q1;
        let den = w2 * w2 - w1 * w1;
        let a = (q2 + w2 * w2 * q0) / den;
        let b = (q3 + w2 * w2 * q1) / (w1 * den);
        let c = q0 - a;
        let d = (q1 - b * w1) / w2;
        Ok(TwoFrequencySolution {
            omega1,
            omega2,
            a,
            b,
            c,
            d,
        })
    }

    pub fn q(&self, t: f64) -> f64 {
        let (s1, c1) = (self.omega1 * t).sin_cos();
        let (s2, c2) = (self.omega2 * t).sin_cos();
        self.a * c1 + self.b * s1 + self.c * c2 + self.d * s2
    }
}

/// Maximum `|q_num − q_analytic|` over the samples of a free-PU trajectory.
pub fn analytic_deviation(traj: &Trajectory) -> Result<f64> {
    let Hamiltonian::Pu { omega1, omega2 } = traj.spec.hamiltonian else {
        return Err(Error::InvalidParameter(
            "analytic comparison needs the free `pu` system".into(),
        ));
    };
    let sol = TwoFrequencySolution::from_state(omega1, omega2, &traj.samples[0].state)?;
    Ok(traj
        .samples
        .iter()
        .map(|s| (s.state[0] - sol.q(s.t)).abs())
        .fold(0.0, f64::max))
}

/// Residual of `q⁗ + (Ω1²+Ω2²) q̈ + Ω1²Ω2² q` on the interior of the sample grid.
///
/// `q̈` is the 5-point stencil on `q`; `q⁗` is the same stencil applied to
/// `p_x`, which equals `q̈` along any solution of Hamilton's equations.
/// Differencing `q` four times would amplify integration noise by `h⁻⁴`.
pub fn fourth_order_residual(traj: &Trajectory) -> Result<f64> {
    let Hamiltonian::Pu { omega1, omega2 } = traj.spec.hamiltonian else {
        return Err(Error::InvalidParameter(
            "fourth-order residual needs the free `pu` system".into(),
        ));
    };
    let s = &traj.samples;
    if s.len() < 5 {
        return Err(Error::Trajectory("trajectory too short for the 5-point stencil".into()));
    }
    let h = traj.sample_dt;
    let uniform = s
        .windows(2)
        .all(|w| ((w[1].t - w[0].t) - h).abs() <= 1e-9 * h.max(w[1].t));
    if !uniform {
        return Err(Error::Trajectory("stencil needs a uniform sample grid".into()));
    }
    let d2 = |f: &dyn Fn(usize) -> f64, i: usize| {
        (-f(i - 2) + 16.0 * f(i - 1) - 30.0 * f(i) + 16.0 * f(i + 1) - f(i + 2)) / (12.0 * h * h)
    };
    let q = |i: usize| s[i].state[0];
    let px = |i: usize| s[i].state[2];
    let sum = omega1 * omega1 + omega2 * omega2;
    let prod = omega1 * omega1 * omega2 * omega2;
    Ok((2..s.len() - 2)
        .map(|i| (d2(&px, i) + sum * d2(&q, i) + prod * q(i)).abs())
        .fold(0.0, f64::max))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanGrid {
    pub q_min: f64,
    pub q_max: f64,
    pub x_min: f64,
    pub x_max: f64,
    /// Points per axis.
    pub n: usize,
}

impl ScanGrid {
    pub fn square(radius: f64, n: usize) -> Self {
        ScanGrid {
            q_min: -radius,
            q_max: radius,
            x_min: -radius,
            x_max: radius,
            n,
        }
    }

    fn axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        if n == 1 {
            return vec![0.5 * (lo + hi)];
        }
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    }

    pub fn q_values(&self) -> Vec<f64> {
        Self::axis(self.q_min, self.q_max, self.n)
    }

    pub fn x_values(&self) -> Vec<f64> {
        Self::axis(self.x_min, self.x_max, self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityMap {
    pub q_values: Vec<f64>,
    pub x_values: Vec<f64>,
    /// `bounded[i][j]` for initial `(q_values[i], x_values[j])` with zero momenta.
    pub bounded: Vec<Vec<bool>>,
    /// Bounded cells 4-connected to the cell nearest the origin.
    pub island: Vec<Vec<bool>>,
    pub t_probe: f64,
}

impl StabilityMap {
    pub fn island_size(&self) -> usize {
        self.island.iter().flatten().filter(|&&b| b).count()
    }

    pub fn collapsed_count(&self) -> usize {
        self.bounded.iter().flatten().filter(|&&b| !b).count()
    }
}

/// Probes each grid cell up to `t_probe`. Rows run on separate threads.
pub fn stability_scan(
    spec: &SystemSpec,
    grid: &ScanGrid,
    t_probe: f64,
    opts: &IntegrateOptions,
) -> Result<StabilityMap> {
    if !matches!(spec.hamiltonian, Hamiltonian::PuQuartic { .. } | Hamiltonian::Pu { .. }) {
        return Err(Error::InvalidParameter(
            "stability scans run on the Ostrogradsky family".into(),
        ));
    }
    if grid.n == 0 {
        return Err(Error::InvalidParameter("scan grid is empty".into()));
    }
    let qs = grid.q_values();
    let xs = grid.x_values();
    // only verdicts are needed, so keep the sample grid coarse
    let opts = IntegrateOptions {
        sample_dt: t_probe,
        ..*opts
    };
    let rows: Vec<Result<Vec<bool>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = qs
            .iter()
            .map(|&q| {
                let xs = &xs;
                let opts = &opts;
                scope.spawn(move || {
                    xs.iter()
                        .map(|&x| Ok(!integrate(spec, [q, x, 0.0, 0.0], t_probe, opts)?.1.is_collapsed()))
                        .collect()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scan worker panicked"))
            .collect()
    });
    let bounded = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let island = connected_island(&bounded, &qs, &xs);
    Ok(StabilityMap {
        q_values: qs,
        x_values: xs,
        bounded,
        island,
        t_probe,
    })
}

fn nearest(v: &[f64]) -> usize {
    (0..v.len())
        .min_by(|&a, &b| v[a].abs().total_cmp(&v[b].abs()))
        .expect("non-empty axis")
}

fn connected_island(bounded: &[Vec<bool>], qs: &[f64], xs: &[f64]) -> Vec<Vec<bool>> {
    let (n, m) = (qs.len(), xs.len());
    let mut island = vec![vec![false; m]; n];
    let start = (nearest(qs), nearest(xs));
    if !bounded[start.0][start.1] {
        return island;
    }
    let mut stack = vec![start];
    island[start.0][start.1] = true;
    while let Some((i, j)) = stack.pop() {
        let nbrs = [(i.wrapping_sub(1), j), (i + 1, j), (i, j.wrapping_sub(1)), (i, j + 1)];
        for (a, b) in nbrs {
            if a < n && b < m && bounded[a][b] && !island[a][b] {
                island[a][b] = true;
                stack.push((a, b));
            }
        }
    }
    island
}

impl StabilityMap {
    /// A collapsed cell outside the island, preferring the largest radius.
    pub fn exterior_collapse(&self) -> Option<(f64, f64)> {
        let mut best: Option<(f64, f64)> = None;
        for (i, &q) in self.q_values.iter().enumerate() {
            for (j, &x) in self.x_values.iter().enumerate() {
                if !self.bounded[i][j] && best.is_none_or(|(bq, bx)| q.hypot(x) > bq.hypot(bx)) {
                    best = Some((q, x));
                }
            }
        }
        best
    }
}

/// Two runs of one initial condition at amplitude thresholds `1e8` and `1e12`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EscapeConfirmation {
    pub initial: State4,
    pub low: CollapseVerdict,
    pub high: CollapseVerdict,
    /// `|t_high − t_low| / t_low` for the two trigger times.
    pub trigger_shift: f64,
    pub finite_time: bool,
}

/// Relative trigger-time shift below which a collapse counts as finite-time.
pub const ESCAPE_SHIFT_TOLERANCE: f64 = 0.1;

/// Tells a finite-time escape from unbounded but slow growth: a true
/// singularity crosses `1e12` almost as soon as `1e8`, while polynomial growth
/// needs orders of magnitude longer.
pub fn confirm_escape(
    spec: &SystemSpec,
    s0: State4,
    t_end: f64,
    opts: &IntegrateOptions,
) -> Result<EscapeConfirmation> {
    let low_opts = IntegrateOptions {
        sample_dt: t_end,
        amplitude_threshold: AMPLITUDE_THRESHOLD,
        ..*opts
    };
    let high_opts = IntegrateOptions {
        amplitude_threshold: 1e4 * AMPLITUDE_THRESHOLD,
        ..low_opts
    };
    let low = integrate(spec, s0, t_end, &low_opts)?.1;
    let high = integrate(spec, s0, t_end, &high_opts)?.1;
    let trigger_shift = match (low.trigger_time, high.trigger_time) {
        (Some(a), Some(b)) => (b - a).abs() / a,
        _ => f64::INFINITY,
    };
    let finite_time = low.is_collapsed()
        && high.is_collapsed()
        && low.escape_time.is_some_and(f64::is_finite)
        && trigger_shift <= ESCAPE_SHIFT_TOLERANCE;
    Ok(EscapeConfirmation {
        initial: s0,
        low,
        high,
        trigger_shift,
        finite_time,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    /// `(window midpoint, max amplitude in window)`
    pub windows: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub correlation: f64,
}

/// Windowed maxima of `max(|x|, |D|)` for the Robert-family systems, with a
/// least-squares line through them.
pub fn envelope_growth(traj: &Trajectory, window: f64) -> Result<Envelope> {
    if !matches!(
        traj.spec.hamiltonian,
        Hamiltonian::Robert { .. } | Hamiltonian::RobertGamma { .. }
    ) {
        return Err(Error::InvalidParameter(
            "envelope analysis needs a robert-family system".into(),
        ));
    }
    if !(window > 0.0 && window.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "window must be positive, got {window}"
        )));
    }
    let t_end = traj.final_sample().t;
    let count = (t_end / window).floor() as usize;
    if count < 10 {
        return Err(Error::Trajectory(format!("{count} windows; at least 10 are needed")));
    }
    let mut windows = vec![(0.0, 0.0f64); count];
    for (k, w) in windows.iter_mut().enumerate() {
        w.0 = (k as f64 + 0.5) * window;
    }
    for s in &traj.samples {
        let k = ((s.t / window) as usize).min(count - 1);
        let a = s.state[0].abs().max(s.state[2].abs());
        windows[k].1 = windows[k].1.max(a);
    }
    let (slope, intercept, correlation) =
        linear_fit(&windows).ok_or_else(|| Error::Trajectory("degenerate envelope fit".into()))?;
    Ok(Envelope {
        windows,
        slope,
        intercept,
        correlation,
    })
}

/// Integrates and insists on a bounded run before computing the envelope.
pub fn robert_envelope(
    spec: &SystemSpec,
    s0: State4,
    t_end: f64,
    window: f64,
    opts: &IntegrateOptions,
) -> Result<Envelope> {
    let (traj, verdict) = integrate(spec, s0, t_end, opts)?;
    if verdict.is_collapsed() {
        return Err(Error::Trajectory("collapsed trajectory has no envelope".into()));
    }
    envelope_growth(&traj, window)
}
