//! Special functions: complex Gamma, real digamma and trigamma.
//!
//! Gamma uses Stirling's series after an upward shift to Re z ≥ 15, with the
//! reflection formula for Re z < 1/2. Digamma and trigamma use the asymptotic
//! series with the same upward shift; digamma switches to a Taylor series around
//! its positive root, where the shifted sum would lose all relative precision.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

/// Distance from a nonpositive integer at which Gamma reports a pole.
pub const POLE_TOL: f64 = 1e-12;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const SHIFT_TO: f64 = 15.0;

// B_2k / (2k (2k-1)), k = 1..8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

// B_2k for k = 1..8
const BERNOULLI: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

fn check_finite(z: Complex64, what: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{what}: non-finite argument {z}")))
    }
}

fn check_pole(z: Complex64) -> Result<()> {
    if z.re < 0.5 {
        let n = z.re.round();
        if n <= 0.0 && (z - Complex64::new(n, 0.0)).norm() < POLE_TOL {
            return Err(Error::PoleOfGamma { re: z.re, im: z.im });
        }
    }
    Ok(())
}

/// sin(πz), with the argument reduced by the nearest integer first so that
/// values close to the zeros keep full relative precision.
fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let r = Complex64::new(z.re - n, z.im);
    let s = (r * PI).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// A logarithm of sin(πz) that stays finite when |Im z| is large.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im.abs() < 100.0 {
        return sin_pi(z).ln();
    }
    // sin(πz) = e^{∓iπz}(1 − e^{±2iπz})/(±2i); take the growing exponential out.
    let i = Complex64::i();
    if z.im > 0.0 {
        -i * PI * z - (2.0 * i).ln() + (1.0 - (2.0 * i * PI * z).exp()).ln()
    } else {
        i * PI * z - (-2.0 * i).ln() + (1.0 - (-2.0 * i * PI * z).exp()).ln()
    }
}

/// Stirling series for ln Γ(w), Re w ≥ SHIFT_TO.
fn ln_gamma_stirling(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for c in STIRLING {
        series += p * c;
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + LN_SQRT_2PI + series
}

fn ln_gamma_right(z: Complex64) -> Complex64 {
    if z.re >= SHIFT_TO {
        return ln_gamma_stirling(z);
    }
    let n = (SHIFT_TO - z.re).ceil() as usize;
    let mut prod = Complex64::new(1.0, 0.0);
    let mut log_acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        prod *= z + k as f64;
        if prod.norm() > 1e150 {
            log_acc += prod.ln();
            prod = Complex64::new(1.0, 0.0);
        }
    }
    ln_gamma_stirling(z + n as f64) - log_acc - prod.ln()
}

/// A logarithm of Γ(z).
///
/// The imaginary part is not forced onto the principal branch; only
/// `exp(ln_gamma(z))` and differences taken inside one exponential are meaningful.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    check_finite(z, "ln_gamma")?;
    check_pole(z)?;
    if z.re >= 0.5 {
        Ok(ln_gamma_right(z))
    } else {
        Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma_right(1.0 - z))
    }
}

fn finite_or_overflow(v: Complex64, what: &str, z: Complex64) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("{what}({z}) is not representable")))
    }
}

/// Γ(z) for complex z.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    check_finite(z, "gamma")?;
    check_pole(z)?;
    let v = if z.re >= 0.5 {
        let l = ln_gamma_right(z);
        if l.re > 709.0 {
            return Err(Error::Overflow(format!("gamma({z})")));
        }
        l.exp()
    } else if z.im.abs() < 100.0 && z.re > -150.0 {
        let s = sin_pi(z);
        let g = gamma(1.0 - z)?;
        PI / (s * g)
    } else {
        let l = ln_gamma(z)?;
        if l.re > 709.0 {
            return Err(Error::Overflow(format!("gamma({z})")));
        }
        l.exp()
    };
    finite_or_overflow(v, "gamma", z)
}

/// Γ(a)/Γ(b), evaluated through one exponential so that both factors may be
/// individually huge or tiny.
pub fn gamma_ratio(a: Complex64, b: Complex64) -> Result<Complex64> {
    let d = ln_gamma(a)? - ln_gamma(b)?;
    if d.re > 709.0 {
        return Err(Error::Overflow(format!("gamma_ratio({a}, {b})")));
    }
    finite_or_overflow(d.exp(), "gamma_ratio", a)
}

/// Γ(x) for real x.
pub fn gamma_real(x: f64) -> Result<f64> {
    Ok(gamma(Complex64::new(x, 0.0))?.re)
}

// Positive root of digamma, split into a double and its residual.
const PSI_ROOT_HI: f64 = 1.461_632_144_968_362_2;
const PSI_ROOT_LO: f64 = 9.549_995_429_965_698e-17;
// ψ_k(x0)/k!, k = 1..11
const PSI_ROOT_TAYLOR: [f64; 11] = [
    0.967_672_245_447_621_2,
    -0.442_763_168_983_592_1,
    0.258_499_760_955_650_6,
    -0.163_942_705_442_406_5,
    0.107_824_050_691_262_4,
    -0.072_199_561_256_454_71,
    0.048_804_288_164_143_11,
    -0.033_161_126_474_847_36,
    0.022_597_648_232_218_1,
    -0.015_424_765_904_948_96,
    0.010_538_791_616_612_18,
];

fn check_real_arg(x: f64, what: &str) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::domain(format!("{what}: non-finite argument {x}")));
    }
    if x <= 0.0 {
        return Err(Error::domain(format!("{what}: requires x > 0, got {x}")));
    }
    Ok(())
}

/// Digamma ψ₀(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    check_real_arg(x, "digamma")?;
    let d = (x - PSI_ROOT_HI) - PSI_ROOT_LO;
    if d.abs() < 0.02 {
        let mut acc = 0.0;
        for c in PSI_ROOT_TAYLOR.iter().rev() {
            acc = acc * d + c;
        }
        return Ok(acc * d);
    }
    let mut w = x;
    let mut shift = 0.0;
    while w < 10.0 {
        shift += 1.0 / w;
        w += 1.0;
    }
    let inv2 = 1.0 / (w * w);
    let mut series = 0.0;
    let mut p = inv2;
    for (k, b) in BERNOULLI.iter().enumerate() {
        series += b / (2.0 * (k + 1) as f64) * p;
        p *= inv2;
    }
    Ok(w.ln() - 0.5 / w - series - shift)
}

/// Trigamma ψ₁(x) for x > 0.
pub fn trigamma(x: f64) -> Result<f64> {
    check_real_arg(x, "trigamma")?;
    let mut w = x;
    let mut shift = 0.0;
    while w < 10.0 {
        shift += 1.0 / (w * w);
        w += 1.0;
    }
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv2 * inv;
    for b in BERNOULLI {
        series += b * p;
        p *= inv2;
    }
    Ok(inv + 0.5 * inv2 + series + shift)
}
