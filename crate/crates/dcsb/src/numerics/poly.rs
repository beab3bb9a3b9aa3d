//! Dense polynomials in ascending-coefficient form and their roots.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CPoly = Vec<Complex64>;

pub fn mul(a: &[Complex64], b: &[Complex64]) -> CPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn add(a: &[Complex64], b: &[Complex64]) -> CPoly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or_default() + b.get(i).copied().unwrap_or_default())
        .collect()
}

pub fn scale(a: &[Complex64], s: Complex64) -> CPoly {
    a.iter().map(|x| x * s).collect()
}

/// Multiply by λ.
pub fn shift_up(a: &[Complex64]) -> CPoly {
    let mut out = vec![Complex64::new(0.0, 0.0)];
    out.extend_from_slice(a);
    out
}

pub fn eval_real(c: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &k in c.iter().rev() {
        acc = acc * z + k;
    }
    acc
}

/// Value and first derivative at z.
pub fn eval_real_with_derivative(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &k in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + k;
    }
    (p, dp)
}

pub fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(k, v)| k as f64 * v).collect()
}

/// Drop trailing coefficients that are exactly zero.
pub fn trim(mut c: Vec<f64>) -> Vec<f64> {
    while c.len() > 1 && *c.last().unwrap() == 0.0 {
        c.pop();
    }
    c
}

/// All roots of a real polynomial by Aberth-Ehrlich iteration followed by
/// Newton polishing. Returns roots with conjugate pairs made exact.
pub fn roots(c: &[f64]) -> Result<Vec<Complex64>> {
    let c = trim(c.to_vec());
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    if lead == 0.0 || !lead.is_finite() {
        return Err(Error::RootFindingFailure("leading coefficient is zero".into()));
    }
    // Cauchy-type radius bounds for the initial circle.
    let upper = 1.0 + c[..n].iter().map(|v| (v / lead).abs()).fold(0.0, f64::max);
    let lower = if c[0] != 0.0 {
        let inv = 1.0 + c[1..].iter().map(|v| (v / c[0]).abs()).fold(0.0, f64::max);
        1.0 / inv
    } else {
        0.0
    };
    let radius = (upper * lower.max(1e-300)).sqrt().clamp(lower.max(1e-12), upper);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(radius * (1.0 + 0.01 * k as f64), th)
        })
        .collect();
    // Aberth iterations.
    let dc = derivative(&c);
    let mut converged = vec![false; n];
    for _ in 0..500 {
        let mut all = true;
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let p = eval_real(&c, z[i]);
            if p == Complex64::new(0.0, 0.0) {
                converged[i] = true;
                continue;
            }
            let dp = eval_real(&dc, z[i]);
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += (z[i] - z[j]).inv();
                }
            }
            let w = ratio / (1.0 - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[i] -= w;
            if w.norm() <= 1e-15 * z[i].norm().max(1e-300) {
                converged[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }
    // Newton polish.
    for zi in z.iter_mut() {
        for _ in 0..8 {
            let (p, dp) = eval_real_with_derivative(&c, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            *zi -= step;
            if step.norm() <= 1e-16 * zi.norm() {
                break;
            }
        }
    }
    Ok(symmetrize(z))
}

/// Pair each root with its closest conjugate partner and make the pair exact;
/// roots whose imaginary part is at noise level become real.
fn symmetrize(mut z: Vec<Complex64>) -> Vec<Complex64> {
    let n = z.len();
    let mut used = vec![false; n];
    let mut out = Vec::with_capacity(n);
    // sort for determinism
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    for i in 0..n {
        if used[i] {
            continue;
        }
        used[i] = true;
        let zi = z[i];
        if zi.im.abs() <= 1e-13 * zi.norm().max(1e-300) {
            out.push(Complex64::new(zi.re, 0.0));
            continue;
        }
        let mut best = None;
        let mut best_d = f64::INFINITY;
        for j in 0..n {
            if !used[j] {
                let d = (z[j] - zi.conj()).norm();
                if d < best_d {
                    best_d = d;
                    best = Some(j);
                }
            }
        }
        match best {
            Some(j) if best_d <= 1e-6 * zi.norm().max(1e-12) => {
                used[j] = true;
                let re = 0.5 * (zi.re + z[j].re);
                let im = 0.5 * (zi.im.abs() + z[j].im.abs());
                out.push(Complex64::new(re, im));
                out.push(Complex64::new(re, -im));
            }
            _ => out.push(zi),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_roots(r: &[f64]) -> Vec<f64> {
        let mut c = vec![1.0];
        for &x in r {
            let mut n = vec![0.0; c.len() + 1];
            for (i, v) in c.iter().enumerate() {
                n[i] -= x * v;
                n[i + 1] += v;
            }
            c = n;
        }
        c
    }

    #[test]
    fn real_roots() {
        let c = from_roots(&[-1.0, -2.5, 3.0, -24.0]);
        let mut r: Vec<f64> = roots(&c).unwrap().iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        for (a, b) in r.iter().zip([-24.0, -2.5, -1.0, 3.0]) {
            assert!((a - b).abs() < 1e-12 * b.abs().max(1.0));
        }
    }

    #[test]
    fn conjugate_pairs_are_exact() {
        // (λ² + 2.25)(λ + 0.1)
        let c = vec![0.225, 2.25, 0.1, 1.0];
        let r = roots(&c).unwrap();
        let pos: Vec<_> = r.iter().filter(|z| z.im > 0.0).collect();
        let neg: Vec<_> = r.iter().filter(|z| z.im < 0.0).collect();
        assert_eq!(pos.len(), 1);
        assert_eq!(*pos[0], neg[0].conj());
        assert!((pos[0].im - 1.5).abs() < 1e-13);
    }

    #[test]
    fn widely_scaled_roots() {
        let c = from_roots(&[-1e-3, -0.08, -25.0, -300.0]);
        let mut r: Vec<f64> = roots(&c).unwrap().iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        for (a, b) in r.iter().zip([-300.0, -25.0, -0.08, -1e-3]) {
            assert!((a - b).abs() < 1e-10 * b.abs());
        }
    }
}
