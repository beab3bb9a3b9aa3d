//! Follow the pole pairs from γ = 0 and print each mode's coherence time at
//! a few couplings. Indices are assigned by continuation: mode 1 starts at
//! ±i√(Δ²+ε²), later pairs get the next index when they appear.

use dcsb::dynamics::track_modes;
use dcsb::prelude::*;

fn main() -> dcsb::Result<()> {
    let zeta: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(0.1);
    let p = PhysParams::paper_defaults(0.0, zeta);
    let gammas = [0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5];
    let rows = track_modes(&p, &KernelConfig::default(), &gammas)?;
    println!("zeta = {zeta}");
    for (g, row) in gammas.iter().zip(rows) {
        let cells: Vec<String> = row
            .iter()
            .filter(|m| m.coherent)
            .map(|m| format!("#{} tau={:.1}ps w={:.3}", m.index, 1.0 / m.pole.re.abs(), m.pole.im))
            .collect();
        println!("gamma = {g:<6} {}", cells.join("   "));
    }
    Ok(())
}
