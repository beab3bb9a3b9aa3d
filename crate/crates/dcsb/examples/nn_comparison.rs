//! Next-neighbour correlations on top of the spin-boson kernel, against the
//! dual-coupling kernel at the same γ.

use dcsb::prelude::*;

fn main() -> dcsb::Result<()> {
    let gamma = 0.1;
    let runs = [
        ("sb", PhysParams::paper_defaults(gamma, 0.0), ModelVariant::Sb),
        ("nn", PhysParams::paper_defaults(gamma, 0.0), ModelVariant::Nn),
        ("dc", PhysParams::paper_defaults(gamma, 0.1), ModelVariant::Dc),
    ];
    let times = TimeGrid::new(100.0, 2001)?.times();
    for (name, p, v) in runs {
        let cfg = KernelConfig::default().with_variant(v);
        let ps = find_poles(&build_rational(&p, &cfg)?)?;
        let r = coherence_report(&ps);
        let tr = reconstruct_time(&ps, &times)?;
        println!(
            "{name}: dominant freq {:?} rad/ps, longest tau_phi {:?} ps, {} zero crossings in 100 ps",
            r.dominant_frequency(),
            r.longest_tau(),
            tr.zero_crossings(0.0, 100.0)
        );
    }
    Ok(())
}
