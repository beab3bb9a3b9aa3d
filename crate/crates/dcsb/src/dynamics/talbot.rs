//! Numerical inverse Laplace transform on Talbot's contour
//! λ(θ) = r(θ cot θ + iνθ), θ ∈ (0, π), r = a/t.
//!
//! The steepness ν is raised until the contour's asymptotic height rνπ
//! clears the largest oscillation frequency of the transform; the trapezoid
//! node count grows with ν.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{Trace, TraceMethod};
use crate::bath::PhysParams;
use crate::error::{Error, Result};
use crate::kernels::{epsilon_zeta, FMode, KernelConfig, LaplaceKernel};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TalbotOptions {
    /// Contour scale: r = a/t.
    pub a: f64,
    /// Upper bound on |Im| of the singularities to enclose, rad/ps.
    /// `None` derives it from the physical parameters.
    pub omega_bound: Option<f64>,
    /// Extra trapezoid nodes on top of the automatic count.
    pub extra_nodes: usize,
    /// Node-count doublings allowed after a contour failure.
    pub max_doublings: u32,
}

impl Default for TalbotOptions {
    fn default() -> Self {
        TalbotOptions { a: 7.0, omega_bound: None, extra_nodes: 0, max_doublings: 3 }
    }
}

fn talbot_once<F>(f: &F, t: f64, omega_bound: f64, a: f64, extra: usize) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let r = a / t;
    let nu = (2.5 * omega_bound / (r * PI / 2.0)).max(1.0);
    let n = (2.0 * a * nu + 40.0).ceil() as usize + extra;
    let mut acc = {
        let l = Complex64::new(r, 0.0);
        let g0 = (r * t).exp() * f(l)? * Complex64::new(0.0, r * nu);
        0.5 * g0.im
    };
    for k in 1..n {
        let th = k as f64 * PI / n as f64;
        let (s, co) = th.sin_cos();
        let cot = co / s;
        let lam = Complex64::new(r * th * cot, r * nu * th);
        // e^{λt} underflows long before the transform could compensate.
        if lam.re * t < -745.0 {
            continue;
        }
        let dl = Complex64::new(r * (cot - th / (s * s)), r * nu);
        let v = (lam * t).exp() * f(lam)? * dl;
        acc += v.im;
    }
    let out = acc / n as f64;
    if !out.is_finite() {
        return Err(Error::ContourFailure(format!("non-finite inverse at t = {t}")));
    }
    Ok(out)
}

/// Invert F at each t > 0. `initial` supplies the t = 0 value.
pub fn talbot_invert_fn<F>(
    f: F,
    times: &[f64],
    initial: f64,
    omega_bound: f64,
    opts: &TalbotOptions,
) -> Result<Vec<f64>>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        if t == 0.0 {
            out.push(initial);
            continue;
        }
        if !(t > 0.0) {
            return Err(Error::domain("talbot: times must be >= 0"));
        }
        let mut extra = opts.extra_nodes;
        let mut attempt = 0;
        let v = loop {
            // Failures come from Σ being unevaluable at a node; a slightly
            // moved, denser contour avoids an isolated bad point.
            let a = opts.a * (1.0 + 0.07 * attempt as f64);
            match talbot_once(&f, t, omega_bound, a, extra) {
                Ok(v) => break v,
                Err(e) if attempt >= opts.max_doublings => {
                    return Err(Error::ContourFailure(format!("t = {t}: {e}")))
                }
                Err(_) => {
                    attempt += 1;
                    extra = 2 * extra + 64;
                }
            }
        };
        out.push(v);
    }
    Ok(out)
}

/// Frequency bound used for the contour: beyond every pole of 1/(λ+Σ).
pub fn default_omega_bound(p: &PhysParams) -> f64 {
    1.7 * p.delta_freq() + 2.0 * epsilon_zeta(p)
}

/// ⟨σ_z(t)⟩ from 1/(λ + Σ(λ)) on the configured kernel.
pub fn invert_talbot(
    p: &PhysParams,
    cfg: &KernelConfig,
    times: &[f64],
    opts: &TalbotOptions,
) -> Result<Trace> {
    let k = LaplaceKernel::new(p, cfg)?;
    let f = |l: Complex64| k.sigma_z(l);
    let initial = match cfg.f_mode {
        // Σ_exact grows slower than λ, so λ/(λ+Σ) → 1.
        FMode::Exact => 1.0,
        FMode::HighT => {
            let big = Complex64::new(1e10 * (1.0 + 1.0 / k.scalars.mu), 0.0);
            (big * f(big)?).re
        }
    };
    let bound = opts.omega_bound.unwrap_or_else(|| default_omega_bound(&cfg.effective_params(p)));
    let values = talbot_invert_fn(f, times, initial, bound, opts)?;
    Trace::new(times.to_vec(), values, TraceMethod::Talbot)
}
