use std::f64::consts::PI;

use super::{KernelConfig, KernelScalars, ModelVariant, TimeKernelForm};
use crate::bath::{q_double_prime, q_prime, PhysParams};
use crate::error::{Error, Result};

/// Time-domain DC kernel
///
/// Σ(t) = s·Δ²{ I cos(εt) + 𝔹²ρ(t)[cos(εt)cos Θ(t)/(1+ζ²)² − sin(εt) sin Θ(t)/(1+ζ²)] }
///
/// split into separable cosine terms and a decaying memory part.
#[derive(Debug, Clone)]
pub struct TimeKernel {
    params: PhysParams,
    form: TimeKernelForm,
    g: f64,
    mu: f64,
    eps: f64,
    /// s·Δ²·I
    amp_i: f64,
    /// s·Δ²·𝔹²/(1+ζ²)²
    amp_cos: f64,
    /// s·Δ²·𝔹²/(1+ζ²)
    amp_sin: f64,
    /// (ω_cμ)^(2g), finite-cutoff normalization
    norm_fc: f64,
}

impl TimeKernel {
    pub fn new(p: &PhysParams, cfg: &KernelConfig) -> Result<Self> {
        match cfg.variant {
            ModelVariant::Dc | ModelVariant::Sb => {}
            v => return Err(Error::domain(format!("no time-domain kernel for variant {v:?}"))),
        }
        let ep = cfg.effective_params(p);
        let s: KernelScalars = KernelScalars::new(&ep, cfg)?;
        let g = s.gamma_eff;
        if cfg.time_form == TimeKernelForm::Scaling && g >= 0.5 {
            return Err(Error::domain("scaling time kernel requires gamma_eff < 1/2"));
        }
        let d2 = s.scale * s.delta_freq * s.delta_freq;
        let z2 = 1.0 + s.zeta * s.zeta;
        let b2 = s.fc * s.fc;
        Ok(TimeKernel {
            params: ep.with_gamma(g),
            form: cfg.time_form,
            g,
            mu: s.mu,
            eps: s.eps_zeta,
            amp_i: d2 * s.i_term,
            amp_cos: d2 * b2 / (z2 * z2),
            amp_sin: d2 * b2 / z2,
            norm_fc: (ep.omega_c_freq() * s.mu).powf(2.0 * g),
        })
    }

    pub fn gamma_eff(&self) -> f64 {
        self.g
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn form(&self) -> TimeKernelForm {
        self.form
    }

    /// Cosine terms (amplitude, angular frequency) that need no memory:
    /// the I-term, and the whole kernel when g = 0.
    pub fn separable_terms(&self) -> Vec<(f64, f64)> {
        let mut v = Vec::new();
        if self.amp_i != 0.0 {
            v.push((self.amp_i, self.eps));
        }
        if self.g == 0.0 {
            v.push((self.amp_cos, self.eps));
        }
        v
    }

    /// Exponent p of the t^(−p) short-time singularity of the memory part.
    pub fn singular_exponent(&self) -> f64 {
        match self.form {
            TimeKernelForm::Scaling => 2.0 * self.g,
            TimeKernelForm::FiniteCutoff => 0.0,
        }
    }

    /// Asymptotic decay rate of the memory part, 1/ps.
    pub fn decay_rate(&self) -> f64 {
        self.g / self.mu
    }

    /// ρ(t) and the phase Θ(t).
    fn bath_factor(&self, t: f64) -> Result<(f64, f64)> {
        match self.form {
            TimeKernelForm::Scaling => {
                if t == 0.0 {
                    return Err(Error::domain("scaling kernel is singular at t = 0"));
                }
                let u = t / (2.0 * self.mu);
                // ln(2 sinh u)
                let l = if u > 1.0 {
                    u + (-(-2.0 * u).exp()).ln_1p()
                } else {
                    (2.0 * u.sinh()).ln()
                };
                Ok(((-2.0 * self.g * l).exp(), PI * self.g))
            }
            TimeKernelForm::FiniteCutoff => {
                let q1 = q_prime(&self.params, t)?;
                let q2 = q_double_prime(&self.params, t)?;
                Ok((self.norm_fc * (-2.0 * q2).exp(), 2.0 * q1))
            }
        }
    }

    /// The non-separable part of the kernel at t.
    pub fn memory(&self, t: f64) -> Result<f64> {
        if self.g == 0.0 {
            return Ok(0.0);
        }
        let (rho, theta) = self.bath_factor(t)?;
        let (se, ce) = (self.eps * t).sin_cos();
        Ok(rho * (self.amp_cos * ce * theta.cos() - self.amp_sin * se * theta.sin()))
    }

    /// Σ(t) in rad²/ps².
    pub fn eval(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t < 0.0 {
            return Err(Error::domain(format!("sigma_dc_time: requires t >= 0, got {t}")));
        }
        let sep: f64 = self.separable_terms().iter().map(|(a, w)| a * (w * t).cos()).sum();
        Ok(sep + self.memory(t)?)
    }
}

/// Σ(t) of the DC kernel (SB when ζ = 0).
pub fn sigma_dc_time(p: &PhysParams, cfg: &KernelConfig, t: f64) -> Result<f64> {
    TimeKernel::new(p, &cfg.with_variant(ModelVariant::Dc))?.eval(t)
}
