//! Coherent-incoherent transition of the plain spin-boson kernel, and of the
//! first mode of the dual-coupling kernel for a few ζ.

use dcsb::prelude::*;

fn main() -> dcsb::Result<()> {
    let sb = KernelConfig::default().with_variant(ModelVariant::Sb);
    let p = PhysParams::paper_defaults(0.0, 0.0);
    let g = transition_scan(&p, &sb, (1e-3, 0.3), ModeSelector::Any)?;
    println!("SB: last coherent pair disappears at gamma* = {g:.4}");

    match transition_scan(&p, &sb, (0.3, 0.5), ModeSelector::Any) {
        Err(Error::NoBracket(msg)) => println!("SB on [0.3, 0.5]: {msg}"),
        other => println!("SB on [0.3, 0.5]: unexpected {other:?}"),
    }

    for zeta in [0.0, 0.05, 0.1] {
        let p = PhysParams::paper_defaults(0.0, zeta);
        let g = transition_scan(&p, &KernelConfig::default(), (1e-3, 0.5), ModeSelector::Tracked(1))?;
        println!("DC zeta = {zeta:<4}: mode 1 dies at gamma* = {g:.4}");
    }
    Ok(())
}
