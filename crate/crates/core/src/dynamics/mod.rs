//! Classical trajectories: adaptive integration, collapse detection and the
//! analyses built on top of it.

mod analysis;
mod dopri;
mod system;
mod trajectory;

pub use analysis::{
    analytic_deviation, confirm_escape, envelope_growth, fourth_order_residual, robert_envelope, stability_scan,
    Envelope, EscapeConfirmation, ScanGrid, StabilityMap, TwoFrequencySolution, ESCAPE_SHIFT_TOLERANCE,
};
pub use dopri::{Dopri5, RunStats, Step, Termination, Tolerances};
pub use system::{BracketField, State4, SystemSpec, CLASSICAL_SYSTEMS};
pub use trajectory::{
    estimate_escape_time, integrate, linear_fit, CollapseDetector, CollapseVerdict, IntegrateOptions, IntegratorStats,
    Outcome, Sample, Trajectory, Trigger, AMPLITUDE_THRESHOLD, STEP_UNDERFLOW_FRACTION,
};
