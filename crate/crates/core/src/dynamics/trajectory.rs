//! Integration of a classical system into a sampled trajectory, with collapse
//! detection and energy-drift bookkeeping.

use std::fmt::Write as _;
use std::ops::ControlFlow;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::dopri::{Dopri5, Termination, Tolerances};
use super::system::{State4, SystemSpec};
use crate::error::{Error, Result};

pub const AMPLITUDE_THRESHOLD: f64 = 1e8;
/// Step-size underflow threshold as a fraction of `t_end`.
pub const STEP_UNDERFLOW_FRACTION: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegrateOptions {
    pub tol: Tolerances,
    /// Spacing of the dense-output sample grid.
    pub sample_dt: f64,
    pub amplitude_threshold: f64,
}

impl IntegrateOptions {
    pub fn new(rtol: f64, atol: f64) -> Result<Self> {
        Ok(IntegrateOptions {
            tol: Tolerances::new(rtol, atol)?,
            sample_dt: 0.05,
            amplitude_threshold: AMPLITUDE_THRESHOLD,
        })
    }

    pub fn with_sample_dt(mut self, dt: f64) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "sample spacing must be positive, got {dt}"
            )));
        }
        self.sample_dt = dt;
        Ok(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub state: State4,
    pub energy: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegratorStats {
    pub steps: usize,
    pub rejects: usize,
    pub min_step: f64,
    /// `max |H(t) − H(0)| / (1 + |H(0)|)` over accepted steps.
    pub max_energy_drift: f64,
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub spec: SystemSpec,
    pub samples: Vec<Sample>,
    pub stats: IntegratorStats,
    pub sample_dt: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Bounded,
    Collapsed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trigger {
    AmplitudeThreshold,
    StepUnderflow,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollapseVerdict {
    pub outcome: Outcome,
    pub trigger: Option<Trigger>,
    pub trigger_time: Option<f64>,
    pub escape_time: Option<f64>,
}

impl CollapseVerdict {
    pub fn bounded() -> Self {
        CollapseVerdict {
            outcome: Outcome::Bounded,
            trigger: None,
            trigger_time: None,
            escape_time: None,
        }
    }

    pub fn is_collapsed(&self) -> bool {
        self.outcome == Outcome::Collapsed
    }
}

fn max_norm(s: &[f64]) -> f64 {
    s.iter().fold(
        0.0f64,
        |m, v| if v.is_finite() { m.max(v.abs()) } else { f64::INFINITY },
    )
}

/// Watches a running integration for finite-time escape and keeps the
/// amplitude history needed for the escape-time fit.
#[derive(Clone, Debug)]
pub struct CollapseDetector {
    pub threshold: f64,
    history: Vec<(f64, f64)>,
    fired: Option<(Trigger, f64)>,
}

impl CollapseDetector {
    pub fn new(threshold: f64) -> Self {
        CollapseDetector {
            threshold,
            history: Vec::new(),
            fired: None,
        }
    }

    /// Records an accepted state; returns the trigger once it fires.
    pub fn observe(&mut self, t: f64, state: &[f64]) -> Option<Trigger> {
        let a = max_norm(state);
        self.history.push((t, a));
        if a > self.threshold && self.fired.is_none() {
            self.fired = Some((Trigger::AmplitudeThreshold, t));
        }
        self.fired.map(|(tr, _)| tr)
    }

    pub fn step_underflow(&mut self, t: f64) {
        if self.fired.is_none() {
            self.fired = Some((Trigger::StepUnderflow, t));
        }
    }

    pub fn history(&self) -> &[(f64, f64)] {
        &self.history
    }

    pub fn verdict(&self) -> CollapseVerdict {
        match self.fired {
            None => CollapseVerdict::bounded(),
            Some((trigger, t)) => CollapseVerdict {
                outcome: Outcome::Collapsed,
                trigger: Some(trigger),
                trigger_time: Some(t),
                escape_time: Some(estimate_escape_time(&self.history).unwrap_or(t)),
            },
        }
    }
}

/// Escape time from `(t, amplitude)` pairs growing like `(t* − t)^{−p}`.
///
/// Over the last decade of amplitude, `Δt / Δ ln A ≈ (t* − t)/p` is linear in
/// `t`; the root of its least-squares line is `t*`. For `p = 1` this is the
/// usual fit of `1/A` against time. Returns `None` with fewer than 8 usable
/// points or a fit that does not point forward in time.
pub fn estimate_escape_time(history: &[(f64, f64)]) -> Option<f64> {
    let &(t_last, a_last) = history.last()?;
    if !(a_last.is_finite() && a_last > 0.0) {
        return estimate_escape_time(&history[..history.len() - 1]);
    }
    let start = history
        .iter()
        .rposition(|&(_, a)| a < a_last / 10.0)
        .map_or(0, |i| i + 1);
    let tail = &history[start..];
    let pts: Vec<(f64, f64)> = tail
        .windows(2)
        .filter_map(|w| {
            let (t0, a0) = w[0];
            let (t1, a1) = w[1];
            let dl = (a1 / a0).ln();
            (t1 > t0 && dl > 0.0 && a0 > 0.0).then(|| (0.5 * (t0 + t1), (t1 - t0) / dl))
        })
        .collect();
    if pts.len() < 8 {
        return None;
    }
    let (slope, intercept, _) = linear_fit(&pts)?;
    if slope >= 0.0 {
        return None;
    }
    let t_star = -intercept / slope;
    (t_star.is_finite() && t_star >= t_last).then_some(t_star)
}

/// Least-squares line `y = slope·x + intercept` with Pearson correlation.
pub fn linear_fit(pts: &[(f64, f64)]) -> Option<(f64, f64, f64)> {
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return None;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in pts {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let corr = if syy == 0.0 { 0.0 } else { sxy / (sxx * syy).sqrt() };
    Some((slope, my - slope * mx, corr))
}

/// Integrates `spec` from `s0` over `[0, t_end]`.
pub fn integrate(
    spec: &SystemSpec,
    s0: State4,
    t_end: f64,
    opts: &IntegrateOptions,
) -> Result<(Trajectory, CollapseVerdict)> {
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidParameter(format!("t_end must be positive, got {t_end}")));
    }
    if s0.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("initial state must be finite".into()));
    }
    let mut solver = Dopri5::new(opts.tol, t_end);
    solver.h_min = STEP_UNDERFLOW_FRACTION * t_end;
    let h0 = spec.energy(&s0);
    let mut detector = CollapseDetector::new(opts.amplitude_threshold);
    detector.observe(0.0, &s0);
    let mut samples = vec![Sample {
        t: 0.0,
        state: s0,
        energy: h0,
    }];
    let mut next_k: u64 = 1;
    let mut drift: f64 = 0.0;
    let dt = opts.sample_dt;
    let run = solver.run(
        |_, y| spec.rhs(y),
        0.0,
        s0,
        t_end,
        |step| {
            loop {
                let ts = (next_k as f64 * dt).min(t_end);
                if ts > step.t1() || samples.last().is_some_and(|s| s.t >= t_end) {
                    break;
                }
                let y = if ts == step.t1() { step.y1 } else { step.eval(ts) };
                samples.push(Sample {
                    t: ts,
                    state: y,
                    energy: spec.energy(&y),
                });
                next_k += 1;
            }
            drift = drift.max((spec.energy(&step.y1) - h0).abs() / (1.0 + h0.abs()));
            match detector.observe(step.t1(), &step.y1) {
                Some(_) => ControlFlow::Break(()),
                None => ControlFlow::Continue(()),
            }
        },
    );
    match run.termination {
        Termination::StepUnderflow => detector.step_underflow(run.t_reached),
        Termination::MaxSteps => {
            return Err(Error::Trajectory(format!(
                "step budget exhausted at t = {}",
                run.t_reached
            )))
        }
        Termination::Completed | Termination::Stopped => {}
    }
    let traj = Trajectory {
        spec: *spec,
        samples,
        stats: IntegratorStats {
            steps: run.steps,
            rejects: run.rejects,
            min_step: run.min_step,
            max_energy_drift: drift,
        },
        sample_dt: dt,
    };
    Ok((traj, detector.verdict()))
}

impl Trajectory {
    pub fn final_sample(&self) -> &Sample {
        self.samples
            .last()
            .expect("a trajectory always holds its initial sample")
    }

    /// CSV with header `t,v1,v2,v3,v4,H`; floats use shortest round-trip formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,v1,v2,v3,v4,H\n");
        for s in &self.samples {
            let [a, b, c, d] = s.state;
            let _ = writeln!(out, "{},{},{},{},{},{}", s.t, a, b, c, d, s.energy);
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        crate::fsutil::write_atomic(path, self.to_csv().as_bytes())
    }
}
