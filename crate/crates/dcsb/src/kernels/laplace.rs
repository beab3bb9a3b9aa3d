use num_complex::Complex64;

use super::{FMode, KernelConfig, KernelScalars, ModelVariant};
use crate::bath::PhysParams;
use crate::error::{Error, Result};

/// f(λ) = μ Γ(g+μλ)/Γ(1−g+μλ) in ps.
pub fn f_exact(p: &PhysParams, gamma_eff: f64, lam: Complex64) -> Result<Complex64> {
    let s = KernelScalars {
        gamma_eff,
        mu: p.mu(),
        ..scalars_for_f(gamma_eff, gamma_eff)?
    };
    s.f(FMode::Exact, lam)
}

/// μν_r/(g+μλ)·(1 + Λμλ + Θμ²λ²/2), with ν_r, Λ, Θ evaluated at `gamma_for_coeffs`.
pub fn f_high_t(
    p: &PhysParams,
    gamma_eff: f64,
    gamma_for_coeffs: f64,
    lam: Complex64,
) -> Result<Complex64> {
    let s = KernelScalars { mu: p.mu(), ..scalars_for_f(gamma_eff, gamma_for_coeffs)? };
    s.f(FMode::HighT, lam)
}

fn scalars_for_f(g: f64, c: f64) -> Result<KernelScalars> {
    if !(0.0..1.0).contains(&g) || !(0.0..1.0).contains(&c) {
        return Err(Error::domain("couplings must lie in [0, 1)"));
    }
    let (nu_ratio, lambda_coeff, theta_coeff) = super::high_t_coefficients(c)?;
    Ok(KernelScalars {
        eps_zeta: 0.0,
        i_term: 0.0,
        fc: 1.0,
        nu: f64::NAN,
        nu_ratio,
        lambda_coeff,
        theta_coeff,
        gamma_eff: g,
        gamma_coeff: c,
        mu: f64::NAN,
        delta_freq: 0.0,
        zeta: 0.0,
        scale: 1.0,
        cos_gamma: 1.0,
        sin_gamma: 0.0,
    })
}

/// A Laplace-domain self-energy with its scalars precomputed, for repeated
/// evaluation on contours and in root polishing.
#[derive(Debug, Clone)]
pub struct LaplaceKernel {
    pub scalars: KernelScalars,
    pub config: KernelConfig,
}

impl LaplaceKernel {
    pub fn new(p: &PhysParams, cfg: &KernelConfig) -> Result<Self> {
        let ep = cfg.effective_params(p);
        match cfg.variant {
            ModelVariant::Ib => {
                return Err(Error::domain("the IB limit exposes only the tunneling renormalization"))
            }
            ModelVariant::Nn if p.zeta != 0.0 => {
                return Err(Error::domain("the NN correction is defined for zeta = 0 only"))
            }
            _ => {}
        }
        Ok(LaplaceKernel { scalars: KernelScalars::new(&ep, cfg)?, config: *cfg })
    }

    /// Calibrated (s = 1) DC/SB kernel.
    fn sigma_unit(&self, lam: Complex64) -> Result<Complex64> {
        let s = &self.scalars;
        let mode = self.config.f_mode;
        let (a, b) = s.branch_weights();
        let d2 = s.delta_freq * s.delta_freq;
        if s.eps_zeta == 0.0 {
            return Ok(s.f(mode, lam)? * (2.0 * a));
        }
        let ie = Complex64::new(0.0, s.eps_zeta);
        let fp = s.f(mode, lam + ie)?;
        let fm = s.f(mode, lam - ie)?;
        let core = fp * Complex64::new(a, -b) + fm * Complex64::new(a, b);
        let i_part = lam * (s.i_term * d2) / (lam * lam + s.eps_zeta * s.eps_zeta);
        Ok(core + i_part)
    }

    /// Σ(λ) in rad/ps.
    pub fn sigma(&self, lam: Complex64) -> Result<Complex64> {
        let s = self.scalars.scale;
        let v = match self.config.variant {
            ModelVariant::Dc | ModelVariant::Sb => self.sigma_unit(lam)? * s,
            ModelVariant::Nn => {
                let sb = self.sigma_unit(lam)?;
                let dt = self.scalars.fc * self.scalars.delta_freq;
                let denom = lam + sb;
                if denom.norm() == 0.0 {
                    return Err(Error::domain("NN correction denominator vanishes"));
                }
                (sb + dt * dt / denom) * s
            }
            ModelVariant::Ib => unreachable!(),
        };
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Overflow(format!("self-energy at lambda = {lam}")));
        }
        Ok(v)
    }

    /// ⟨σ_z(λ)⟩ = 1/(λ + Σ(λ)).
    pub fn sigma_z(&self, lam: Complex64) -> Result<Complex64> {
        Ok((lam + self.sigma(lam)?).inv())
    }
}

/// Σ for the configured variant.
pub fn self_energy(p: &PhysParams, cfg: &KernelConfig, lam: Complex64) -> Result<Complex64> {
    LaplaceKernel::new(p, cfg)?.sigma(lam)
}

pub fn sigma_dc_laplace(p: &PhysParams, cfg: &KernelConfig, lam: Complex64) -> Result<Complex64> {
    self_energy(p, &cfg.with_variant(ModelVariant::Dc), lam)
}

pub fn sigma_sb_laplace(p: &PhysParams, cfg: &KernelConfig, lam: Complex64) -> Result<Complex64> {
    self_energy(p, &cfg.with_variant(ModelVariant::Sb), lam)
}

pub fn sigma_nn_laplace(p: &PhysParams, cfg: &KernelConfig, lam: Complex64) -> Result<Complex64> {
    self_energy(p, &cfg.with_variant(ModelVariant::Nn), lam)
}
