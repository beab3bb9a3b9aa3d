//! Bath correlation functions: closed forms against direct quadrature of the
//! Ohmic spectral density.

use dcsb::bath::{q_double_prime, q_double_prime_finite_cutoff, q_prime, q_quadrature};
use dcsb::prelude::*;

fn main() -> dcsb::Result<()> {
    let p = PhysParams::paper_defaults(0.1, 0.0);
    println!("Franck-Condon factor: {:.6}", franck_condon(&p, ExponentMode::Rederived));
    println!("{:>8} {:>12} {:>12} {:>12} {:>12} {:>10}", "t_ps", "Q'", "Q''", "Q''_cutoff", "Q''_quad", "|diff|");
    for t in [1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0] {
        let (q1, q2) = q_quadrature(&p, t)?;
        let fc = q_double_prime_finite_cutoff(&p, t)?;
        assert!((q1 - q_prime(&p, t)?).abs() < 1e-8);
        println!(
            "{t:>8} {:>12.6} {:>12.6} {:>12.6} {:>12.6} {:>10.1e}",
            q1,
            q_double_prime(&p, t)?,
            fc,
            q2,
            (q2 - fc).abs()
        );
    }
    Ok(())
}
