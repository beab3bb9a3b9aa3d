//! Self-energies of the dual-coupling model and its limits.
//!
//! Conventions: g = γ_eff = γ√(1+ζ²), x = μλ, Δ and ε in rad/ps.
//! The Laplace-domain kernel is
//!
//! Σ(λ) = s·{ 𝔹²Δ²Γ(1−2g)/2 · [cos(πg)/(1+ζ²)² (f₊+f₋) − i sin(πg)/(1+ζ²) (f₊−f₋)]
//!            + IΔ²λ/(λ²+ε²) },    f± = f(λ ± iε),
//!
//! with f(λ) = μΓ(g+μλ)/Γ(1−g+μλ) (exact) or its second-order expansion
//! (high-T). s = 1 for the calibrated scale, ½ for the literal one.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bath::{franck_condon, ExponentMode, PhysParams};
use crate::error::{Error, Result};
use crate::specfun;

mod laplace;
mod time;

pub use laplace::{
    f_exact, f_high_t, self_energy, sigma_dc_laplace, sigma_nn_laplace, sigma_sb_laplace,
    LaplaceKernel,
};
pub use time::{sigma_dc_time, TimeKernel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelVariant {
    #[default]
    Dc,
    Sb,
    Nn,
    Ib,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FMode {
    Exact,
    #[default]
    HighT,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelScale {
    /// Exact free limit: Σ → Δ²/λ as γ, ζ → 0.
    #[default]
    Calibrated,
    /// Half of the calibrated kernel.
    PaperLiteral,
}

impl KernelScale {
    pub fn factor(self) -> f64 {
        match self {
            KernelScale::Calibrated => 1.0,
            KernelScale::PaperLiteral => 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaEffMode {
    /// ν, Λ, Θ evaluated at γ√(1+ζ²).
    #[default]
    Scaled,
    /// ν, Λ, Θ evaluated at plain γ.
    Literal,
}

/// Shape of the bath factor in the time-domain kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeKernelForm {
    /// ρ(t) = (2 sinh(t/2μ))^(−2g), phase πg. Exact inverse of the exact-f kernel.
    #[default]
    Scaling,
    /// ρ(t) = (ω_cμ)^(2g) e^(−2Q″(t)), phase 2Q′(t), from the closed-form bath functions.
    FiniteCutoff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct KernelConfig {
    pub variant: ModelVariant,
    pub f_mode: FMode,
    pub kernel_scale: KernelScale,
    pub gamma_eff_mode: GammaEffMode,
    pub exponent_mode: ExponentMode,
    pub time_form: TimeKernelForm,
}

impl KernelConfig {
    pub fn with_variant(mut self, v: ModelVariant) -> Self {
        self.variant = v;
        self
    }

    pub fn with_f_mode(mut self, m: FMode) -> Self {
        self.f_mode = m;
        self
    }

    pub fn with_scale(mut self, s: KernelScale) -> Self {
        self.kernel_scale = s;
        self
    }

    /// Parameters as seen by this variant: SB and NN live at ζ = 0.
    pub fn effective_params(&self, p: &PhysParams) -> PhysParams {
        match self.variant {
            ModelVariant::Sb | ModelVariant::Nn => p.with_zeta(0.0),
            _ => *p,
        }
    }
}

/// ε_ζ = ζΔ/(2(1+ζ²)) in rad/ps.
pub fn epsilon_zeta(p: &PhysParams) -> f64 {
    p.zeta * p.delta_freq() / (2.0 * (1.0 + p.zeta * p.zeta))
}

/// I = (1−2𝔹)/(1+ζ²)² − 2(1−𝔹)/(1+ζ²) + 1.
pub fn i_term(p: &PhysParams, fc: f64) -> f64 {
    let z2 = 1.0 + p.zeta * p.zeta;
    // Grouped so that ζ = 0 gives exactly zero.
    let a = (1.0 - 2.0 * fc) / (z2 * z2) + 1.0;
    a - 2.0 * (1.0 - fc) / z2
}

/// Ω = ζ²(2/π)γħω_c in meV, the tunneling renormalization of the IB limit.
pub fn omega_ib(p: &PhysParams) -> f64 {
    p.zeta * p.zeta * (2.0 / PI) * p.gamma * p.omega_c
}

/// Scalars shared by every evaluation of one kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelScalars {
    pub eps_zeta: f64,
    pub i_term: f64,
    pub fc: f64,
    /// cos(πc)Γ(1+c)Γ(1−2c)/Γ(1−c), reported only.
    pub nu: f64,
    /// Γ(1+c)/Γ(1−c), the normalization used inside f_high_t.
    pub nu_ratio: f64,
    pub lambda_coeff: f64,
    pub theta_coeff: f64,
    pub gamma_eff: f64,
    /// Argument c of ν, Λ, Θ.
    pub gamma_coeff: f64,
    pub mu: f64,
    pub delta_freq: f64,
    pub zeta: f64,
    pub scale: f64,
    /// cos(πg)Γ(1−2g)
    pub cos_gamma: f64,
    /// sin(πg)Γ(1−2g)
    pub sin_gamma: f64,
}

/// cos(πg)Γ(1−2g) = π/(2 sin(πg) Γ(2g)), regular at g = 0.
fn cos_gamma_product(g: f64) -> Result<f64> {
    if g == 0.0 {
        return Ok(1.0);
    }
    Ok(PI / (2.0 * (PI * g).sin() * specfun::gamma_real(2.0 * g)?))
}

/// sin(πg)Γ(1−2g) = π/(2 cos(πg) Γ(2g)); pole at g = ½.
fn sin_gamma_product(g: f64) -> Result<f64> {
    if g == 0.0 {
        return Ok(0.0);
    }
    Ok(PI / (2.0 * (PI * g).cos() * specfun::gamma_real(2.0 * g)?))
}

/// Λ = ψ₀(1+c) − ψ₀(1−c) and the second-order coefficient
/// Θ = Λ² + ψ₁(1+c) − ψ₁(1−c) of (g+x)Γ(g+x)/Γ(1−g+x) at c = g.
pub fn high_t_coefficients(c: f64) -> Result<(f64, f64, f64)> {
    if c == 0.0 {
        return Ok((1.0, 0.0, 0.0));
    }
    let lam = specfun::digamma(1.0 + c)? - specfun::digamma(1.0 - c)?;
    let theta = lam * lam + specfun::trigamma(1.0 + c)? - specfun::trigamma(1.0 - c)?;
    let nu_r = specfun::gamma_real(1.0 + c)? / specfun::gamma_real(1.0 - c)?;
    Ok((nu_r, lam, theta))
}

/// Tolerance around g = ½ where sin(πg)Γ(1−2g) has its pole.
pub const HALF_POLE_TOL: f64 = 1e-9;

impl KernelScalars {
    pub fn new(p: &PhysParams, cfg: &KernelConfig) -> Result<Self> {
        p.validate()?;
        let g = p.gamma_eff();
        let c = match cfg.gamma_eff_mode {
            GammaEffMode::Scaled => g,
            GammaEffMode::Literal => p.gamma,
        };
        if g >= 1.0 {
            return Err(Error::domain(format!("gamma_eff = {g} must be < 1")));
        }
        let eps = epsilon_zeta(p);
        if eps > 0.0 && (g - 0.5).abs() < HALF_POLE_TOL {
            return Err(Error::domain("gamma_eff = 1/2 is a pole of sin(pi g) Gamma(1 - 2g)"));
        }
        let fc = franck_condon(p, cfg.exponent_mode);
        let (nu_ratio, lambda_coeff, theta_coeff) = high_t_coefficients(c)?;
        let cos_c = cos_gamma_product(c)?;
        let nu = cos_c * nu_ratio;
        let cos_gamma = cos_gamma_product(g)?;
        let sin_gamma = if eps > 0.0 { sin_gamma_product(g)? } else { 0.0 };
        Ok(KernelScalars {
            eps_zeta: eps,
            i_term: i_term(p, fc),
            fc,
            nu,
            nu_ratio,
            lambda_coeff,
            theta_coeff,
            gamma_eff: g,
            gamma_coeff: c,
            mu: p.mu(),
            delta_freq: p.delta_freq(),
            zeta: p.zeta,
            scale: cfg.kernel_scale.factor(),
            cos_gamma,
            sin_gamma,
        })
    }

    /// f in the requested mode at complex λ, in ps.
    pub fn f(&self, mode: FMode, lam: Complex64) -> Result<Complex64> {
        let x = lam * self.mu;
        let g = self.gamma_eff;
        match mode {
            FMode::Exact => {
                let a = x + g;
                let n = a.re.round();
                if n <= 0.0 && (a - n).norm() < 1e-10 {
                    return Err(Error::PoleOfGamma { re: a.re, im: a.im });
                }
                if g == 0.0 {
                    return Ok(lam.inv());
                }
                Ok(specfun::gamma_ratio(a, x + (1.0 - g))? * self.mu)
            }
            FMode::HighT => {
                let d = x + g;
                if d.norm() == 0.0 {
                    return Err(Error::domain("f_high_t evaluated at its pole"));
                }
                let poly = 1.0 + x * self.lambda_coeff + x * x * (0.5 * self.theta_coeff);
                Ok(poly * (self.mu * self.nu_ratio) / d)
            }
        }
    }

    /// Prefactors (A, B) of f₊ and f₋ in Σ, so that
    /// Σ = s[(A − iB)f₊ + (A + iB)f₋] + I-term, before the scale s.
    pub(crate) fn branch_weights(&self) -> (f64, f64) {
        let z2 = 1.0 + self.zeta * self.zeta;
        let pref = 0.5 * self.fc * self.fc * self.delta_freq * self.delta_freq;
        (pref * self.cos_gamma / (z2 * z2), pref * self.sin_gamma / z2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_term_vanishes_without_zeta() {
        let p = PhysParams::paper_defaults(0.1, 0.0);
        for fc in [0.3, 0.9368, 1.0] {
            assert_eq!(i_term(&p, fc), 0.0);
        }
    }

    #[test]
    fn products_are_regular() {
        assert!((cos_gamma_product(1e-12).unwrap() - 1.0).abs() < 1e-10);
        let g = 0.1;
        let direct = (PI * g).cos() * specfun::gamma_real(1.0 - 2.0 * g).unwrap();
        assert!((cos_gamma_product(g).unwrap() - direct).abs() < 1e-14);
        let direct = (PI * g).sin() * specfun::gamma_real(1.0 - 2.0 * g).unwrap();
        assert!((sin_gamma_product(g).unwrap() - direct).abs() < 1e-14);
        // finite at g = 1/2
        assert!((cos_gamma_product(0.5).unwrap() - PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn gamma_eff_at_half_rejected_only_with_zeta() {
        let cfg = KernelConfig::default();
        let p = PhysParams::paper_defaults(0.5 / (1.01f64).sqrt(), 0.1);
        assert!(KernelScalars::new(&p, &cfg).is_err());
        let p = PhysParams::paper_defaults(0.5, 0.0);
        assert!(KernelScalars::new(&p, &cfg).is_ok());
        let p = PhysParams::paper_defaults(1.0, 0.0);
        assert!(KernelScalars::new(&p, &cfg).is_err());
    }
}
