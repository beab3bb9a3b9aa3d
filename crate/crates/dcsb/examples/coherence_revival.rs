//! Poles at γ = 0.1 with and without the non-diagonal coupling. At ζ = 0 the
//! dynamics is overdamped; ζ > 0 brings back a slowly decaying oscillation.

use dcsb::prelude::*;

fn show(label: &str, p: &PhysParams) -> dcsb::Result<()> {
    let ps = find_poles(&build_rational(p, &KernelConfig::default())?)?;
    let r = coherence_report(&ps);
    println!("{label}");
    for m in r.coherent() {
        println!("  mode: tau_phi = {:9.3} ps  freq = {:.4} rad/ps  |res| = {:.3e}", m.tau_phi, m.freq, m.residue_magnitude);
    }
    println!("  relaxation rates: {:?}", r.relaxation_rates);
    let tr = reconstruct_time(&ps, &TimeGrid::new(500.0, 5001)?.times())?;
    println!("  zero crossings in [0, 500] ps: {}", tr.zero_crossings(0.0, 500.0));
    Ok(())
}

fn main() -> dcsb::Result<()> {
    show("gamma = 0.1, zeta = 0", &PhysParams::paper_defaults(0.1, 0.0))?;
    show("gamma = 0.1, zeta = 0.1", &PhysParams::paper_defaults(0.1, 0.1))?;
    Ok(())
}
