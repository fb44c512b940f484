//! Dormand–Prince 5(4) with the standard fourth-order continuous extension.

use std::ops::ControlFlow;

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
}

impl Tolerances {
    pub fn new(rtol: f64, atol: f64) -> Result<Self> {
        let ok = |v: f64| v > 0.0 && v < 1.0;
        if !ok(rtol) || !ok(atol) {
            return Err(Error::InvalidParameter(format!(
                "tolerances must lie in (0, 1), got rtol={rtol}, atol={atol}"
            )));
        }
        Ok(Tolerances { rtol, atol })
    }
}

/// An accepted step with its dense-output interpolant.
#[derive(Clone, Debug)]
pub struct Step<const N: usize> {
    pub t0: f64,
    pub h: f64,
    pub y0: [f64; N],
    pub y1: [f64; N],
    cont: [[f64; N]; 4],
}

impl<const N: usize> Step<N> {
    pub fn t1(&self) -> f64 {
        self.t0 + self.h
    }

    /// Interpolated state at `t` in `[t0, t0 + h]`.
    pub fn eval(&self, t: f64) -> [f64; N] {
        let th = (t - self.t0) / self.h;
        let th1 = 1.0 - th;
        let [r2, r3, r4, r5] = &self.cont;
        std::array::from_fn(|i| self.y0[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i]))))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    Completed,
    /// The observer asked to stop.
    Stopped,
    StepUnderflow,
    MaxSteps,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunStats {
    pub steps: usize,
    pub rejects: usize,
    pub min_step: f64,
    pub t_reached: f64,
    pub termination: Termination,
}

#[derive(Clone, Copy, Debug)]
pub struct Dopri5 {
    pub tol: Tolerances,
    /// Steps below this size end the run with `StepUnderflow`.
    pub h_min: f64,
    pub h_max: f64,
    pub max_steps: usize,
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    std::array::from_fn(|i| y[i] + h * terms.iter().map(|(c, k)| c * k[i]).sum::<f64>())
}

impl Dopri5 {
    pub fn new(tol: Tolerances, t_span: f64) -> Self {
        Dopri5 {
            tol,
            h_min: 1e-14 * t_span.abs(),
            h_max: t_span.abs(),
            max_steps: 50_000_000,
        }
    }

    fn error_norm<const N: usize>(&self, y0: &[f64; N], y1: &[f64; N], err: &[f64; N]) -> f64 {
        let s: f64 = (0..N)
            .map(|i| {
                let sc = self.tol.atol + self.tol.rtol * y0[i].abs().max(y1[i].abs());
                (err[i] / sc).powi(2)
            })
            .sum();
        (s / N as f64).sqrt()
    }

    fn initial_step<const N: usize, F: Fn(f64, &[f64; N]) -> [f64; N]>(
        &self,
        f: &F,
        t0: f64,
        y0: &[f64; N],
        f0: &[f64; N],
    ) -> f64 {
        let sc: [f64; N] = std::array::from_fn(|i| self.tol.atol + self.tol.rtol * y0[i].abs());
        let rms = |v: &[f64; N]| ((0..N).map(|i| (v[i] / sc[i]).powi(2)).sum::<f64>() / N as f64).sqrt();
        let (d0, d1) = (rms(y0), rms(f0));
        let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        let h0 = h0.min(self.h_max);
        let y1 = axpy(y0, h0, &[(1.0, f0)]);
        let f1 = f(t0 + h0, &y1);
        let df: [f64; N] = std::array::from_fn(|i| f1[i] - f0[i]);
        let d2 = rms(&df) / h0;
        let h1 = if d1.max(d2) <= 1e-15 {
            (h0 * 1e-3).max(1e-6)
        } else {
            (0.01 / d1.max(d2)).powf(0.2)
        };
        (100.0 * h0).min(h1).min(self.h_max)
    }

    /// Integrates from `t0` to `t_end`, handing every accepted step to `observe`.
    pub fn run<const N: usize, F, O>(&self, f: F, t0: f64, y0: [f64; N], t_end: f64, mut observe: O) -> RunStats
    where
        F: Fn(f64, &[f64; N]) -> [f64; N],
        O: FnMut(&Step<N>) -> ControlFlow<()>,
    {
        let mut t = t0;
        let mut y = y0;
        let mut k1 = f(t, &y);
        let mut h = self.initial_step(&f, t, &y, &k1);
        let mut stats = RunStats {
            steps: 0,
            rejects: 0,
            min_step: f64::INFINITY,
            t_reached: t0,
            termination: Termination::Completed,
        };
        let mut last_rejected = false;
        while t < t_end {
            if stats.steps + stats.rejects >= self.max_steps {
                stats.termination = Termination::MaxSteps;
                break;
            }
            let last = t + h >= t_end;
            if last {
                h = t_end - t;
            }
            let k2 = f(t + C2 * h, &axpy(&y, h, &[(A21, &k1)]));
            let k3 = f(t + C3 * h, &axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
            let k4 = f(t + C4 * h, &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
            let k5 = f(
                t + C5 * h,
                &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
            );
            let k6 = f(
                t + h,
                &axpy(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
            );
            let y1 = axpy(&y, h, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
            let k7 = f(t + h, &y1);
            let err: [f64; N] = std::array::from_fn(|i| {
                h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i])
            });
            let en = self.error_norm(&y, &y1, &err);
            let finite = en.is_finite() && y1.iter().all(|v| v.is_finite());

            if finite && en <= 1.0 {
                let diff: [f64; N] = std::array::from_fn(|i| y1[i] - y[i]);
                let bspl: [f64; N] = std::array::from_fn(|i| h * k1[i] - diff[i]);
                let r4: [f64; N] = std::array::from_fn(|i| diff[i] - h * k7[i] - bspl[i]);
                let r5: [f64; N] = std::array::from_fn(|i| {
                    h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i])
                });
                let step = Step {
                    t0: t,
                    h,
                    y0: y,
                    y1,
                    cont: [diff, bspl, r4, r5],
                };
                stats.steps += 1;
                stats.min_step = stats.min_step.min(h);
                t = if last { t_end } else { t + h };
                y = y1;
                k1 = k7;
                stats.t_reached = t;
                if observe(&step).is_break() {
                    stats.termination = Termination::Stopped;
                    return stats;
                }
                let fac = if en == 0.0 {
                    10.0
                } else {
                    (0.9 * en.powf(-0.2)).clamp(0.2, 10.0)
                };
                let fac = if last_rejected { fac.min(1.0) } else { fac };
                h = (h * fac).min(self.h_max);
                last_rejected = false;
            } else {
                stats.rejects += 1;
                let fac = if finite {
                    (0.9 * en.powf(-0.2)).clamp(0.1, 1.0)
                } else {
                    0.1
                };
                h *= fac;
                last_rejected = true;
            }
            if h < self.h_min && t < t_end {
                stats.termination = Termination::StepUnderflow;
                break;
            }
        }
        stats
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        let d = Dopri5::new(Tolerances::new(1e-10, 1e-12).unwrap(), 5.0);
        let mut last = [1.0];
        let stats = d.run(
            |_, y: &[f64; 1]| [-y[0]],
            0.0,
            [1.0],
            5.0,
            |s| {
                last = s.y1;
                ControlFlow::Continue(())
            },
        );
        assert_eq!(stats.termination, Termination::Completed);
        assert!((last[0] - (-5f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn dense_output_is_accurate_inside_steps() {
        let d = Dopri5::new(Tolerances::new(1e-10, 1e-12).unwrap(), 10.0);
        let mut worst: f64 = 0.0;
        d.run(
            |_, y: &[f64; 2]| [y[1], -y[0]],
            0.0,
            [0.0, 1.0],
            10.0,
            |s| {
                for j in 0..=10 {
                    let t = s.t0 + s.h * j as f64 / 10.0;
                    worst = worst.max((s.eval(t)[0] - t.sin()).abs());
                }
                ControlFlow::Continue(())
            },
        );
        assert!(worst < 1e-8, "{worst}");
    }

    #[test]
    fn blow_up_underflows() {
        // y' = y², y(0) = 1 explodes at t = 1
        let d = Dopri5::new(Tolerances::new(1e-10, 1e-12).unwrap(), 2.0);
        let stats = d.run(
            |_, y: &[f64; 1]| [y[0] * y[0]],
            0.0,
            [1.0],
            2.0,
            |_| ControlFlow::Continue(()),
        );
        assert_eq!(stats.termination, Termination::StepUnderflow);
        assert!((stats.t_reached - 1.0).abs() < 1e-3);
    }

    #[test]
    fn invalid_tolerances() {
        assert!(Tolerances::new(0.0, 1e-9).is_err());
        assert!(Tolerances::new(1e-9, 1.5).is_err());
    }
}
