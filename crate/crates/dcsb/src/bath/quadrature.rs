//! Direct quadrature of the bath correlation integrals. This is a cross-check
//! of the closed forms, not the production path.
//!
//! Q′(t) = γ ∫ e^(−ω/ω_c) sin(ωt)/ω dω
//! Q″(t) = γ ∫ e^(−ω/ω_c) coth(βħω/2)(1 − cos ωt)/ω dω

use std::f64::consts::PI;

use super::PhysParams;
use crate::error::{Error, Result};
use crate::numerics::quad::{gk15, integrate, wynn_epsilon};

const TOL: f64 = 1e-10;
const MAX_EVALS: usize = 1_000_000;
const DIRECT_HALF_PERIODS: f64 = 400.0;

struct Budget {
    used: usize,
}

impl Budget {
    fn spend(&mut self, n: usize) -> Result<()> {
        self.used += n;
        if self.used > MAX_EVALS {
            Err(Error::QuadratureFailure(format!(
                "evaluation budget of {MAX_EVALS} exhausted"
            )))
        } else {
            Ok(())
        }
    }
}

/// (Q′(t), Q″(t)) by adaptive quadrature of the defining integrals.
pub fn q_quadrature(p: &PhysParams, t: f64) -> Result<(f64, f64)> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::domain(format!("q_quadrature: requires t >= 0, got {t}")));
    }
    if t == 0.0 || p.gamma == 0.0 {
        return Ok((0.0, 0.0));
    }
    let wc = p.omega_c_freq();
    let bh = p.beta_hbar();
    let upper = 50.0 * wc;
    let damp = move |w: f64| (-w / wc).exp() / w;
    let coth = move |w: f64| 1.0 / (0.5 * bh * w).tanh();
    let f1 = move |w: f64| damp(w) * (w * t).sin();
    let f2 = move |w: f64| {
        let s = (0.5 * w * t).sin();
        damp(w) * coth(w) * 2.0 * s * s
    };

    let half = PI / t;
    let mut budget = Budget { used: 0 };
    let (q1, q2) = if upper / half <= DIRECT_HALF_PERIODS {
        let mut pts = vec![0.0];
        let mut w = half;
        while w < upper {
            pts.push(w);
            w += half;
        }
        for extra in [1.0 / bh, wc, 5.0 * wc, 20.0 * wc] {
            if extra < upper {
                pts.push(extra);
            }
        }
        pts.push(upper);
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        let a = integrate(f1, &pts, TOL * 0.1, 0.0, MAX_EVALS)?;
        budget.spend(a.evals)?;
        let b = integrate(f2, &pts, TOL * 0.1, 0.0, MAX_EVALS - budget.used)?;
        budget.spend(b.evals)?;
        (a.value, b.value)
    } else {
        // Head [0, ω_s] directly, then smooth part and oscillatory tail apart.
        let ws = 20.0 * half;
        let head_pts: Vec<f64> = (0..=20).map(|k| k as f64 * half).collect();
        let a = integrate(f1, &head_pts, TOL * 0.05, 0.0, MAX_EVALS)?;
        budget.spend(a.evals)?;
        let b = integrate(f2, &head_pts, TOL * 0.05, 0.0, MAX_EVALS - budget.used)?;
        budget.spend(b.evals)?;

        let mut smooth_pts = vec![ws];
        let mut w = ws;
        while w * 2.0 < upper {
            w *= 2.0;
            smooth_pts.push(w);
        }
        smooth_pts.push(upper);
        let smooth = integrate(
            move |w| damp(w) * coth(w),
            &smooth_pts,
            TOL * 0.05,
            0.0,
            MAX_EVALS - budget.used,
        )?;
        budget.spend(smooth.evals)?;

        let tail_sin = oscillatory_tail(move |w| damp(w) * (w * t).sin(), ws, half, &mut budget)?;
        let tail_cos =
            oscillatory_tail(move |w| damp(w) * coth(w) * (w * t).cos(), ws, half, &mut budget)?;
        (a.value + tail_sin, b.value + smooth.value - tail_cos)
    };
    Ok((p.gamma * q1, p.gamma * q2))
}

/// ∫_{start}^{∞} f over half-period panels, accelerated with Wynn epsilon.
fn oscillatory_tail<F: FnMut(f64) -> f64>(
    mut f: F,
    start: f64,
    half: f64,
    budget: &mut Budget,
) -> Result<f64> {
    let mut sums = Vec::new();
    let mut acc = 0.0;
    let mut last = f64::NAN;
    for k in 0..2000 {
        let a = start + k as f64 * half;
        let (v, _) = gk15(&mut f, a, a + half);
        budget.spend(15)?;
        acc += v;
        sums.push(acc);
        if sums.len() >= 12 && sums.len() % 6 == 0 {
            let window = &sums[sums.len() - 12..];
            let (est, err) = wynn_epsilon(window);
            if err < TOL * 0.1 && (est - last).abs() < TOL * 0.1 {
                return Ok(est);
            }
            last = est;
        }
    }
    Err(Error::QuadratureFailure("oscillatory tail did not converge".into()))
}
