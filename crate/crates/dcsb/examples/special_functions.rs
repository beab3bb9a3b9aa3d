//! Complex Gamma, digamma and trigamma at a few points, with the identities
//! they are tested against.

use std::f64::consts::PI;

use dcsb::specfun::{digamma, gamma, trigamma};
use num_complex::Complex64;

fn main() -> dcsb::Result<()> {
    for z in [Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.5), Complex64::new(-1.5, 0.2), Complex64::new(10.0, 10.0)] {
        let g = gamma(z)?;
        let rec = (gamma(z + 1.0)? - z * g).norm() / g.norm().max(1e-300);
        let refl = (g * gamma(1.0 - z)? * (PI * z).sin() - PI).norm() / PI;
        println!("Gamma({z}) = {g:.15}   recurrence {rec:.1e}   reflection {refl:.1e}");
    }
    for x in [0.1, 0.9, 1.0, 1.4616321449683622, 2.5, 19.5] {
        println!("psi({x}) = {:+.16e}   psi1({x}) = {:.16e}", digamma(x)?, trigamma(x)?);
    }
    match gamma(Complex64::new(-2.0, 0.0)) {
        Err(e) => println!("Gamma(-2): {e}"),
        Ok(v) => println!("Gamma(-2) = {v}?"),
    }
    Ok(())
}
