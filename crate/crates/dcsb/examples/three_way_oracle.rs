//! Reconstruct ⟨σ_z(t)⟩ three independent ways and print the disagreements.
//!
//! Pole residues and Talbot both work on the rational high-T kernel and
//! should agree to round-off. The Volterra solver works in the time domain
//! on the kernel whose transform is the exact-f kernel, so it is compared
//! with Talbot in exact mode.
//!
//!     cargo run --release --example three_way_oracle -- 0.1 0.1

use dcsb::prelude::*;

fn main() -> dcsb::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let gamma = args.first().copied().unwrap_or(0.1);
    let zeta = args.get(1).copied().unwrap_or(0.1);
    let p = PhysParams::paper_defaults(gamma, zeta);
    let grid = TimeGrid::new(200.0, 2001)?;
    let times = grid.times();

    let ht = KernelConfig::default();
    let poles = find_poles(&build_rational(&p, &ht)?)?;
    let by_poles = reconstruct_time(&poles, &times)?;
    let by_talbot = invert_talbot(&p, &ht, &times, &TalbotOptions::default())?;

    let exact = ht.with_f_mode(FMode::Exact);
    let t0 = std::time::Instant::now();
    let by_volterra = solve_volterra(&p, &exact, &grid, &Default::default())?;
    let dt_volterra = t0.elapsed();
    let by_talbot_exact = invert_talbot(&p, &exact, &times, &TalbotOptions::default())?;

    println!("gamma = {gamma}, zeta = {zeta}");
    for (z, r) in poles.poles.iter().zip(&poles.residues) {
        println!("  pole {:+.6} {:+.6}i   residue {:+.6} {:+.6}i", z.re, z.im, r.re, r.im);
    }
    println!("poles   vs talbot (high-T): {:.3e}", by_poles.max_abs_diff(&by_talbot));
    println!("volterra vs talbot (exact): {:.3e}  ({:.2?})", by_volterra.max_abs_diff(&by_talbot_exact), dt_volterra);
    println!("high-T vs exact (talbot):   {:.3e}", by_talbot.max_abs_diff(&by_talbot_exact));
    Ok(())
}
