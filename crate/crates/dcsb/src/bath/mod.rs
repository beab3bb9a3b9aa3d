//! Physical parameters, the Ohmic bath and its correlation functions.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun;

mod quadrature;

pub use quadrature::q_quadrature;

/// Reduced Planck constant in meV·ps.
pub const HBAR_MEV_PS: f64 = 0.658_211_956_9;

/// Physical inputs. Energies are in meV, couplings are dimensionless.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysParams {
    /// Thermal energy k_BT.
    pub kt: f64,
    /// Tunneling energy Δ.
    pub delta: f64,
    /// Bath cutoff ħω_c.
    pub omega_c: f64,
    /// Diagonal coupling γ.
    pub gamma: f64,
    /// Ratio ζ of non-diagonal to diagonal coupling.
    pub zeta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamWarning {
    /// Δ/kT > 0.2: the high-temperature treatment is questionable.
    LowTemperature,
    /// πμω_c ≤ 1: the Franck-Condon factor exceeds one.
    FranckCondonAboveOne,
}

impl std::fmt::Display for ParamWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamWarning::LowTemperature => write!(f, "delta/kT > 0.2, high-temperature treatment is questionable"),
            ParamWarning::FranckCondonAboveOne => write!(f, "pi*mu*omega_c <= 1, Franck-Condon factor exceeds one"),
        }
    }
}

/// Exponent convention for the Franck-Condon factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExponentMode {
    /// (πμω_c)^(−γ)
    Paper,
    /// (πμω_c)^(−γ(1+ζ²))
    #[default]
    Rederived,
}

impl PhysParams {
    pub fn new(kt: f64, delta: f64, omega_c: f64, gamma: f64, zeta: f64) -> Result<Self> {
        let p = PhysParams { kt, delta, omega_c, gamma, zeta };
        p.validate()?;
        Ok(p)
    }

    /// kT = 26 meV, Δ = 1 meV, ħω_c = 100 meV.
    pub fn paper_defaults(gamma: f64, zeta: f64) -> Self {
        PhysParams { kt: 26.0, delta: 1.0, omega_c: 100.0, gamma, zeta }
    }

    pub fn validate(&self) -> Result<()> {
        let checks = [
            (self.kt > 0.0, "kT must be > 0"),
            (self.delta > 0.0, "delta must be > 0"),
            (self.omega_c > 0.0, "omega_c must be > 0"),
            (self.gamma >= 0.0, "gamma must be >= 0"),
            (self.zeta >= 0.0, "zeta must be >= 0"),
        ];
        for (ok, msg) in checks {
            if !ok {
                return Err(Error::domain(msg));
            }
        }
        for v in [self.kt, self.delta, self.omega_c, self.gamma, self.zeta] {
            if !v.is_finite() {
                return Err(Error::domain("parameters must be finite"));
            }
        }
        Ok(())
    }

    pub fn warnings(&self) -> Vec<ParamWarning> {
        let mut w = Vec::new();
        if self.delta / self.kt > 0.2 {
            w.push(ParamWarning::LowTemperature);
        }
        if PI * self.mu() * self.omega_c_freq() <= 1.0 {
            w.push(ParamWarning::FranckCondonAboveOne);
        }
        w
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_zeta(mut self, zeta: f64) -> Self {
        self.zeta = zeta;
        self
    }

    pub fn hbar(&self) -> f64 {
        HBAR_MEV_PS
    }

    /// μ = ħ/(2πkT) in ps.
    pub fn mu(&self) -> f64 {
        HBAR_MEV_PS / (2.0 * PI * self.kt)
    }

    /// βħ = ħ/kT in ps.
    pub fn beta_hbar(&self) -> f64 {
        HBAR_MEV_PS / self.kt
    }

    /// Δ/ħ in rad/ps.
    pub fn delta_freq(&self) -> f64 {
        self.delta / HBAR_MEV_PS
    }

    /// ω_c in rad/ps.
    pub fn omega_c_freq(&self) -> f64 {
        self.omega_c / HBAR_MEV_PS
    }

    /// γ√(1+ζ²)
    pub fn gamma_eff(&self) -> f64 {
        self.gamma * (1.0 + self.zeta * self.zeta).sqrt()
    }
}

fn check_time(t: f64, what: &str) -> Result<()> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::domain(format!("{what}: requires t >= 0, got {t}")));
    }
    Ok(())
}

/// J(ω) = γħω e^(−ω/ω_c) in meV, ω in rad/ps.
pub fn spectral_density(p: &PhysParams, omega: f64) -> Result<f64> {
    if omega.is_nan() || omega < 0.0 {
        return Err(Error::domain(format!("spectral_density: requires omega >= 0, got {omega}")));
    }
    Ok(p.gamma * HBAR_MEV_PS * omega * (-omega / p.omega_c_freq()).exp())
}

/// Q′(t) = γ arctan(ω_c t).
pub fn q_prime(p: &PhysParams, t: f64) -> Result<f64> {
    check_time(t, "q_prime")?;
    Ok(p.gamma * (p.omega_c_freq() * t).atan())
}

/// ln(sinh x / x), even in x.
pub fn ln_sinhc(x: f64) -> f64 {
    let x = x.abs();
    if x < 0.1 {
        let x2 = x * x;
        x2 * (1.0 / 6.0
            + x2 * (-1.0 / 180.0 + x2 * (1.0 / 2835.0 + x2 * (-1.0 / 37800.0 + x2 * 2.137_779_915_557_693_5e-6))))
    } else if x < 20.0 {
        (x.sinh() / x).ln()
    } else {
        x + (-(-2.0 * x).exp()).ln_1p() - (2.0 * x).ln()
    }
}

/// Q″(t) = (γ/2)ln(1+ω_c²t²) + γ ln[(βħ/πt) sinh(πt/βħ)].
///
/// This is the large-cutoff (ω_cβħ → ∞) form; see
/// [`q_double_prime_finite_cutoff`] for the exact integral at finite cutoff.
pub fn q_double_prime(p: &PhysParams, t: f64) -> Result<f64> {
    q_double_prime_with_beta_hbar(p, p.beta_hbar(), t)
}

/// Q″ with an explicit βħ, which may be negative; the expression is even in βħ.
pub fn q_double_prime_with_beta_hbar(p: &PhysParams, beta_hbar: f64, t: f64) -> Result<f64> {
    check_time(t, "q_double_prime")?;
    if beta_hbar == 0.0 || !beta_hbar.is_finite() {
        return Err(Error::domain("beta_hbar must be finite and nonzero"));
    }
    let wt = p.omega_c_freq() * t;
    Ok(p.gamma * (0.5 * (wt * wt).ln_1p() + ln_sinhc(PI * t / beta_hbar)))
}

/// Q″(t) for the exponential cutoff at finite ω_cβħ:
/// (γ/2)ln(1+ω_c²t²) + γ ln[Γ(1+κ)²/|Γ(1+κ+it/βħ)|²], κ = 1/(βħω_c).
pub fn q_double_prime_finite_cutoff(p: &PhysParams, t: f64) -> Result<f64> {
    check_time(t, "q_double_prime_finite_cutoff")?;
    let kappa = 1.0 / (p.beta_hbar() * p.omega_c_freq());
    let wt = p.omega_c_freq() * t;
    let g0 = specfun::ln_gamma(Complex64::new(1.0 + kappa, 0.0))?.re;
    let gt = specfun::ln_gamma(Complex64::new(1.0 + kappa, t / p.beta_hbar()))?.re;
    Ok(p.gamma * (0.5 * (wt * wt).ln_1p() + 2.0 * (g0 - gt)))
}

/// Franck-Condon factor 𝔹.
pub fn franck_condon(p: &PhysParams, mode: ExponentMode) -> f64 {
    let base = PI * p.mu() * p.omega_c_freq();
    let exponent = match mode {
        ExponentMode::Paper => p.gamma,
        ExponentMode::Rederived => p.gamma * (1.0 + p.zeta * p.zeta),
    };
    base.powf(-exponent)
}
