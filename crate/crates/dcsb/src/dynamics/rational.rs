use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bath::PhysParams;
use crate::error::{Error, Result};
use crate::kernels::{FMode, KernelConfig, KernelScalars, ModelVariant};
use crate::numerics::poly::{self, CPoly};

/// ⟨σ_z(λ)⟩ = D(λ)/N(λ), real coefficients in ascending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalKernel {
    pub num_coeffs: Vec<f64>,
    pub den_coeffs: Vec<f64>,
}

impl RationalKernel {
    pub fn new(num_coeffs: Vec<f64>, den_coeffs: Vec<f64>) -> Result<Self> {
        let num_coeffs = poly::trim(num_coeffs);
        let den_coeffs = poly::trim(den_coeffs);
        if num_coeffs.iter().chain(&den_coeffs).any(|c| !c.is_finite()) {
            return Err(Error::Invariant("non-finite rational coefficient".into()));
        }
        if *num_coeffs.last().unwrap_or(&0.0) == 0.0 {
            return Err(Error::Invariant("leading numerator coefficient is zero".into()));
        }
        if num_coeffs.len() != den_coeffs.len() + 1 {
            return Err(Error::Invariant(format!(
                "deg N = {} but deg D = {}",
                num_coeffs.len() - 1,
                den_coeffs.len() as isize - 1
            )));
        }
        Ok(RationalKernel { num_coeffs, den_coeffs })
    }

    pub fn eval(&self, lam: Complex64) -> Complex64 {
        poly::eval_real(&self.den_coeffs, lam) / poly::eval_real(&self.num_coeffs, lam)
    }

    /// lim λ→∞ λD/N, the value of the reconstructed trace at t = 0.
    pub fn initial_value(&self) -> f64 {
        self.den_coeffs.last().unwrap() / self.num_coeffs.last().unwrap()
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Numerator and denominator of f_high_t(λ + shift) as polynomials in λ.
fn shifted_f(s: &KernelScalars, shift: Complex64) -> (CPoly, CPoly) {
    let mu = s.mu;
    let l = s.lambda_coeff;
    let th = s.theta_coeff;
    let k = mu * s.nu_ratio;
    let num = vec![
        (1.0 + shift * (l * mu) + shift * shift * (0.5 * th * mu * mu)) * k,
        (c(l * mu) + shift * (th * mu * mu)) * k,
        c(0.5 * th * mu * mu * k),
    ];
    let den = vec![shift * mu + s.gamma_eff, c(mu)];
    (num, den)
}

/// Calibrated (s = 1) DC/SB kernel as num/den polynomials.
fn unit_kernel(s: &KernelScalars) -> (CPoly, CPoly) {
    let d2 = s.delta_freq * s.delta_freq;
    let eps = s.eps_zeta;
    let (a, b) = s.branch_weights();
    if s.gamma_eff == 0.0 {
        // f = 1/λ exactly, so the kernel collapses to Δ²λ(·)/(λ²+ε²) or Δ²/λ.
        let weight = 2.0 * a + s.i_term * d2;
        return if eps == 0.0 {
            (vec![c(weight)], vec![c(0.0), c(1.0)])
        } else {
            (vec![c(0.0), c(weight)], vec![c(eps * eps), c(0.0), c(1.0)])
        };
    }
    if eps == 0.0 {
        let (n, d) = shifted_f(s, c(0.0));
        return (poly::scale(&n, c(2.0 * a)), d);
    }
    let ie = Complex64::new(0.0, eps);
    let (np, dp) = shifted_f(s, ie);
    let (nm, dm) = shifted_f(s, -ie);
    let q = vec![c(eps * eps), c(0.0), c(1.0)];
    let dd = poly::mul(&dp, &dm);
    let core = poly::add(
        &poly::mul(&poly::scale(&np, Complex64::new(a, -b)), &dm),
        &poly::mul(&poly::scale(&nm, Complex64::new(a, b)), &dp),
    );
    let num = poly::add(&poly::mul(&core, &q), &poly::mul(&dd, &[c(0.0), c(s.i_term * d2)]));
    (num, poly::mul(&dd, &q))
}

fn to_real(p: &[Complex64], what: &str) -> Result<Vec<f64>> {
    let scale = p.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for z in p {
        if z.im.abs() > 1e-12 * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::Invariant(format!("{what} has complex coefficients")));
        }
    }
    Ok(p.iter().map(|z| z.re).collect())
}

/// Assemble ⟨σ_z(λ)⟩ = D/N for the high-T kernel.
pub fn build_rational(p: &PhysParams, cfg: &KernelConfig) -> Result<RationalKernel> {
    if cfg.f_mode != FMode::HighT {
        return Err(Error::domain("build_rational requires the high-T f-mode"));
    }
    match cfg.variant {
        ModelVariant::Ib => return Err(Error::domain("the IB limit has no self-energy")),
        ModelVariant::Nn if p.zeta != 0.0 => {
            return Err(Error::domain("the NN correction is defined for zeta = 0 only"))
        }
        _ => {}
    }
    let ep = cfg.effective_params(p);
    let s = KernelScalars::new(&ep, cfg)?;
    let (num_c, den) = unit_kernel(&s);
    let sc = s.scale;
    let (n, d) = match cfg.variant {
        ModelVariant::Dc | ModelVariant::Sb => {
            // N = λD + s·num
            let n = poly::add(&poly::shift_up(&den), &poly::scale(&num_c, c(sc)));
            (n, den)
        }
        ModelVariant::Nn => {
            // Σ_NN = s(num/den + Δ̃²den/u), u = λden + num
            let u = poly::add(&poly::shift_up(&den), &num_c);
            let dt2 = (s.fc * s.delta_freq).powi(2);
            let n = poly::add(
                &poly::add(&poly::shift_up(&poly::mul(&den, &u)), &poly::scale(&poly::mul(&num_c, &u), c(sc))),
                &poly::scale(&poly::mul(&den, &den), c(sc * dt2)),
            );
            (n, poly::mul(&den, &u))
        }
        ModelVariant::Ib => unreachable!(),
    };
    RationalKernel::new(to_real(&n, "N")?, to_real(&d, "D")?)
}
