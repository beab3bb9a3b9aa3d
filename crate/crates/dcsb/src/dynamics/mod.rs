//! ⟨σ_z(λ)⟩ = 1/(λ + Σ(λ)): poles, residues and three reconstructions of
//! ⟨σ_z(t)⟩, plus coherence-time extraction and mode tracking in γ.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod coherence;
mod poles;
mod rational;
mod talbot;
mod volterra;

pub use coherence::{
    coherence_report, continuation_grid, label_modes, pole_set_at, track_modes, transition_scan,
    CoherenceReport, Mode, ModeSelector, TrackedMode, COHERENT_RESIDUE,
};
pub use poles::{find_poles, reconstruct_time, refine_poles_exact, PoleSet, RefinedPoles};
pub use rational::{build_rational, RationalKernel};
pub use talbot::{invert_talbot, talbot_invert_fn, TalbotOptions};
pub use volterra::{
    max_step as volterra_max_step, solve_volterra, solve_volterra_kernel, MemoryKernel,
    VolterraOptions,
};

/// Uniform time grid t_i = i·t_max/(n−1), i = 0..n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub t_max: f64,
    pub n_points: usize,
}

impl TimeGrid {
    pub fn new(t_max: f64, n_points: usize) -> Result<Self> {
        if !(t_max > 0.0 && t_max.is_finite()) {
            return Err(Error::domain(format!("t_max must be > 0, got {t_max}")));
        }
        if n_points < 2 {
            return Err(Error::domain("n_points must be >= 2"));
        }
        Ok(TimeGrid { t_max, n_points })
    }

    pub fn step(&self) -> f64 {
        self.t_max / (self.n_points - 1) as f64
    }

    pub fn times(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.n_points).map(|i| i as f64 * h).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceMethod {
    PoleResidue,
    Talbot,
    Volterra,
}

impl std::fmt::Display for TraceMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TraceMethod::PoleResidue => "pole_residue",
            TraceMethod::Talbot => "talbot",
            TraceMethod::Volterra => "volterra",
        };
        f.write_str(s)
    }
}

/// Tolerance band on |⟨σ_z⟩|; the blip approximation may overshoot mildly.
pub const TRACE_BAND: f64 = 1.05;

/// Sampled ⟨σ_z(t)⟩.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub method: TraceMethod,
}

impl Trace {
    pub fn new(times: Vec<f64>, values: Vec<f64>, method: TraceMethod) -> Result<Self> {
        if times.len() != values.len() || times.is_empty() {
            return Err(Error::Invariant("trace times and values differ in length".into()));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Invariant("trace times must be strictly ascending".into()));
        }
        for (t, v) in times.iter().zip(&values) {
            if !v.is_finite() || v.abs() > TRACE_BAND {
                return Err(Error::Invariant(format!("sigma_z({t}) = {v} outside the tolerance band")));
            }
        }
        Ok(Trace { times, values, method })
    }

    /// |values[0] − 1|.
    pub fn initial_deviation(&self) -> f64 {
        (self.values[0] - 1.0).abs()
    }

    /// max |a − b| over a shared grid.
    pub fn max_abs_diff(&self, other: &Trace) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Number of sign changes at or after `t_from`.
    pub fn zero_crossings(&self, t_from: f64, t_to: f64) -> usize {
        let pts: Vec<f64> = self
            .times
            .iter()
            .zip(&self.values)
            .filter(|(t, _)| **t >= t_from && **t <= t_to)
            .map(|(_, v)| *v)
            .filter(|v| *v != 0.0)
            .collect();
        pts.windows(2).filter(|w| (w[0] > 0.0) != (w[1] > 0.0)).count()
    }
}

pub(crate) fn is_complex(z: Complex64) -> bool {
    z.im.abs() > 1e-9 * z.norm().max(1.0)
}
