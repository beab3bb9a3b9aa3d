use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{is_complex, RationalKernel, Trace, TraceMethod};
use crate::bath::PhysParams;
use crate::error::{Error, Result};
use crate::kernels::{FMode, KernelConfig, LaplaceKernel};
use crate::numerics::poly;

/// Largest allowed real part of a pole (stability).
pub const STABILITY_TOL: f64 = 1e-10;

/// Poles λᵢ and residues rᵢ with ⟨σ_z(t)⟩ = Σ rᵢ e^(λᵢ t).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleSet {
    pub poles: Vec<Complex64>,
    pub residues: Vec<Complex64>,
}

impl PoleSet {
    /// Checks conjugate closure and stability.
    pub fn new(poles: Vec<Complex64>, residues: Vec<Complex64>) -> Result<Self> {
        if poles.len() != residues.len() {
            return Err(Error::Invariant("poles and residues differ in length".into()));
        }
        for (i, (p, r)) in poles.iter().zip(&residues).enumerate() {
            if !(p.re.is_finite() && p.im.is_finite() && r.re.is_finite() && r.im.is_finite()) {
                return Err(Error::Invariant(format!("non-finite pole or residue at {i}")));
            }
            if p.re > STABILITY_TOL {
                return Err(Error::Invariant(format!("unstable pole {p}")));
            }
            if is_complex(*p) {
                let tol = 1e-9 * p.norm().max(1.0);
                let partner = poles
                    .iter()
                    .zip(&residues)
                    .any(|(q, s)| (q - p.conj()).norm() <= tol && (s - r.conj()).norm() <= 1e-8 * r.norm().max(1e-12));
                if !partner {
                    return Err(Error::Invariant(format!("pole {p} lacks its conjugate")));
                }
            }
        }
        Ok(PoleSet { poles, residues })
    }

    pub fn residue_sum(&self) -> Complex64 {
        self.residues.iter().sum()
    }

    /// Residue sum against an expected initial value.
    pub fn check_residue_sum(&self, expected: f64, tol: f64) -> Result<()> {
        let s = self.residue_sum();
        let diff = (s - expected).norm();
        if diff > tol {
            return Err(Error::Invariant(format!(
                "residue sum {s} differs from {expected} by {diff:e}"
            )));
        }
        Ok(())
    }

    pub fn max_real_part(&self) -> f64 {
        self.poles.iter().map(|p| p.re).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Indices sorted by descending residue magnitude, ties by pole ordering.
    pub fn order_by_residue(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.poles.len()).collect();
        idx.sort_by(|&a, &b| {
            self.residues[b]
                .norm()
                .total_cmp(&self.residues[a].norm())
                .then(self.poles[a].re.total_cmp(&self.poles[b].re))
                .then(self.poles[b].im.total_cmp(&self.poles[a].im))
        });
        idx
    }
}

/// Roots of N with residues D/N′.
pub fn find_poles(rk: &RationalKernel) -> Result<PoleSet> {
    let roots = poly::roots(&rk.num_coeffs)?;
    let dn = poly::derivative(&rk.num_coeffs);
    let mut residues = Vec::with_capacity(roots.len());
    for (i, z) in roots.iter().enumerate() {
        let scale = z.norm().max(1.0);
        let (n, dnz) = poly::eval_real_with_derivative(&rk.num_coeffs, *z);
        let resid = (n / dnz).norm();
        if !(resid <= 1e-10 * scale) {
            return Err(Error::RootFindingFailure(format!(
                "polished residual {resid:e} at root {z}"
            )));
        }
        for w in &roots[i + 1..] {
            if (z - w).norm() < 1e-8 * scale {
                return Err(Error::DegeneratePole(format!("roots {z} and {w} coincide")));
            }
        }
        residues.push(poly::eval_real(&rk.den_coeffs, *z) / poly::eval_real(&dn, *z));
    }
    // Exact conjugate residues for exact conjugate poles.
    for i in 0..roots.len() {
        if roots[i].im > 0.0 {
            if let Some(j) = roots.iter().position(|w| *w == roots[i].conj()) {
                let r = 0.5 * (residues[i] + residues[j].conj());
                residues[i] = r;
                residues[j] = r.conj();
            }
        } else if roots[i].im == 0.0 {
            residues[i].im = 0.0;
        }
    }
    let ps = PoleSet::new(roots, residues)?;
    ps.check_residue_sum(rk.initial_value(), 1e-8)?;
    Ok(ps)
}

/// Exact-f poles by Newton iteration from seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefinedPoles {
    pub poles: PoleSet,
    /// Indices (into `poles`) of seeds that did not converge and were kept.
    pub unconverged: Vec<usize>,
}

pub fn refine_poles_exact(p: &PhysParams, cfg: &KernelConfig, seeds: &PoleSet) -> Result<RefinedPoles> {
    if cfg.f_mode != FMode::Exact {
        return Err(Error::domain("refine_poles_exact requires the exact f-mode"));
    }
    let k = LaplaceKernel::new(p, cfg)?;
    let g = |l: Complex64| -> Result<Complex64> { Ok(l + k.sigma(l)?) };
    let h = 1e-6;
    let deriv = |l: Complex64| -> Result<Complex64> {
        Ok((g(l + h)? - g(l - h)?) / (2.0 * h))
    };
    let mut poles = Vec::new();
    let mut residues = Vec::new();
    let mut unconverged = Vec::new();
    for seed in seeds.poles.iter().filter(|z| z.im >= 0.0) {
        let real = !is_complex(*seed);
        let mut z = if real { Complex64::new(seed.re, 0.0) } else { *seed };
        let mut ok = false;
        for _ in 0..100 {
            let (v, dv) = match (g(z), deriv(z)) {
                (Ok(v), Ok(dv)) => (v, dv),
                _ => break,
            };
            let mut step = v / dv;
            if real {
                step.im = 0.0;
            }
            // Damp steps that would jump across the plane.
            let lim = 0.5 * z.norm().max(1.0);
            if step.norm() > lim {
                step *= lim / step.norm();
            }
            z -= step;
            if step.norm() <= 1e-13 * z.norm().max(1.0) {
                ok = true;
                break;
            }
        }
        let res = if ok { deriv(z).map(|d| d.inv()) } else { Err(Error::NoConvergence(String::new())) };
        let (z, r) = match res {
            Ok(r) if r.re.is_finite() && r.im.is_finite() => (z, r),
            _ => {
                unconverged.push(poles.len());
                let r = seeds.residues[seeds.poles.iter().position(|w| w == seed).unwrap()];
                (*seed, r)
            }
        };
        if real || !is_complex(z) {
            poles.push(Complex64::new(z.re, 0.0));
            residues.push(Complex64::new(r.re, 0.0));
        } else {
            poles.push(z);
            residues.push(r);
            poles.push(z.conj());
            residues.push(r.conj());
        }
    }
    Ok(RefinedPoles { poles: PoleSet::new(poles, residues)?, unconverged })
}

/// ⟨σ_z(t)⟩ = Σ rᵢ e^(λᵢ t) on the given times.
pub fn reconstruct_time(ps: &PoleSet, times: &[f64]) -> Result<Trace> {
    let mut values = Vec::with_capacity(times.len());
    for &t in times {
        let s: Complex64 = ps.poles.iter().zip(&ps.residues).map(|(l, r)| r * (l * t).exp()).sum();
        if s.im.abs() > 1e-8 {
            return Err(Error::ImaginaryLeak { t, im: s.im });
        }
        values.push(s.re);
    }
    Trace::new(times.to_vec(), values, TraceMethod::PoleResidue)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_poles() {
        let d: f64 = 1.5;
        let rk = RationalKernel::new(vec![d * d, 0.0, 1.0], vec![0.0, 1.0]).unwrap();
        let ps = find_poles(&rk).unwrap();
        assert_eq!(ps.poles.len(), 2);
        for (p, r) in ps.poles.iter().zip(&ps.residues) {
            assert!((p.im.abs() - d).abs() < 1e-14);
            assert!(p.re.abs() < 1e-15);
            assert!((r - 0.5).norm() < 1e-14);
        }
    }

    #[test]
    fn partial_fractions() {
        // (λ+c)/((λ+a)(λ+b)) = (c−a)/(b−a)/(λ+a) + (c−b)/(a−b)/(λ+b)
        let (a, b, c) = (0.5, 2.0, 1.25);
        let rk = RationalKernel::new(vec![a * b, a + b, 1.0], vec![c, 1.0]).unwrap();
        let ps = find_poles(&rk).unwrap();
        for (p, r) in ps.poles.iter().zip(&ps.residues) {
            let expected = if (p.re + a).abs() < 1e-9 { (c - a) / (b - a) } else { (c - b) / (a - b) };
            assert!((r.re - expected).abs() < 1e-13);
        }
    }

    #[test]
    fn unstable_pole_rejected() {
        let ps = PoleSet::new(vec![Complex64::new(0.1, 0.0)], vec![Complex64::new(1.0, 0.0)]);
        assert!(ps.is_err());
    }

    #[test]
    fn missing_conjugate_rejected() {
        let ps = PoleSet::new(vec![Complex64::new(-0.1, 1.0)], vec![Complex64::new(1.0, 0.0)]);
        assert!(ps.is_err());
    }
}
