use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{build_rational, find_poles, is_complex, refine_poles_exact, PoleSet};
use crate::bath::PhysParams;
use crate::error::{Error, Result};
use crate::kernels::{FMode, KernelConfig};

/// Minimum residue magnitude for a pole pair to count as a coherent mode.
pub const COHERENT_RESIDUE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    /// 1/|Re λ| in ps; infinite for an undamped mode.
    pub tau_phi: f64,
    /// |Im λ| in rad/ps.
    pub freq: f64,
    pub residue_magnitude: f64,
    pub pole: Complex64,
}

impl Mode {
    pub fn is_undamped(&self) -> bool {
        self.tau_phi.is_infinite()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoherenceReport {
    /// Oscillatory modes, by descending residue magnitude.
    pub modes: Vec<Mode>,
    /// |Re λ| of the purely real poles, ascending.
    pub relaxation_rates: Vec<f64>,
}

impl CoherenceReport {
    /// Modes above the coherence residue threshold.
    pub fn coherent(&self) -> impl Iterator<Item = &Mode> {
        self.modes.iter().filter(|m| m.residue_magnitude > COHERENT_RESIDUE)
    }

    /// Frequency of the coherent mode with the largest residue.
    pub fn dominant_frequency(&self) -> Option<f64> {
        self.coherent().next().map(|m| m.freq)
    }

    /// Longest coherence time among coherent modes.
    pub fn longest_tau(&self) -> Option<f64> {
        self.coherent().map(|m| m.tau_phi).fold(None, |a, t| Some(a.map_or(t, |a: f64| a.max(t))))
    }
}

fn tau_of(p: Complex64) -> f64 {
    if p.re.abs() < 1e-12 {
        f64::INFINITY
    } else {
        1.0 / p.re.abs()
    }
}

pub fn coherence_report(ps: &PoleSet) -> CoherenceReport {
    let mut modes = Vec::new();
    let mut rates = Vec::new();
    for (p, r) in ps.poles.iter().zip(&ps.residues) {
        if is_complex(*p) {
            if p.im > 0.0 {
                modes.push(Mode { tau_phi: tau_of(*p), freq: p.im, residue_magnitude: r.norm(), pole: *p });
            }
        } else {
            rates.push(p.re.abs());
        }
    }
    modes.sort_by(|a, b| {
        b.residue_magnitude
            .total_cmp(&a.residue_magnitude)
            .then(b.freq.total_cmp(&a.freq))
    });
    rates.sort_by(f64::total_cmp);
    CoherenceReport { modes, relaxation_rates: rates }
}

/// Pole set of the configured kernel at these parameters. Exact f-mode poles
/// are refined from the high-T rational seeds.
pub fn pole_set_at(p: &PhysParams, cfg: &KernelConfig) -> Result<PoleSet> {
    let ht = KernelConfig { f_mode: FMode::HighT, ..*cfg };
    let seeds = find_poles(&build_rational(p, &ht)?)?;
    match cfg.f_mode {
        FMode::HighT => Ok(seeds),
        FMode::Exact => Ok(refine_poles_exact(p, cfg, &seeds)?.poles),
    }
}

/// A mode identified by continuation in γ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrackedMode {
    pub index: usize,
    /// Upper-half-plane member of the pair (or the real pole it collapsed onto).
    pub pole: Complex64,
    pub residue_magnitude: f64,
    pub coherent: bool,
}

/// Continuation points from γ = 0 through the requested values: a graded
/// start (the small-γ poles move fast) then steps of at most 0.0025.
pub fn continuation_grid(targets: &[f64]) -> Vec<f64> {
    let top = targets.iter().cloned().fold(0.0, f64::max);
    let mut g = vec![0.0, 1e-5, 2e-5, 5e-5, 1e-4, 2e-4, 5e-4, 1e-3, 1.5e-3, 2e-3];
    let mut x = 2.5e-3;
    while x < top {
        g.push(x);
        x += 2.5e-3;
    }
    // Requested values win over nearby fill points so callers can look them up exactly.
    g.retain(|v| *v <= top && targets.iter().all(|t| (t - v).abs() > 1e-9));
    g.extend(targets.iter().cloned().filter(|v| *v >= 0.0));
    g.sort_by(f64::total_cmp);
    g.dedup();
    g
}

#[derive(Debug, Clone)]
struct Track {
    index: usize,
    pole: Complex64,
    alive: bool,
}

/// Assign mode indices along a γ path from precomputed pole sets
/// (`None` for points that failed; they are skipped).
///
/// Mode 1 is the pair present at the first point; pairs that appear later get
/// the next index. A mode that meets the real axis is dead from then on.
pub fn label_modes(sets: &[Option<PoleSet>]) -> Vec<Option<Vec<TrackedMode>>> {
    let mut tracks: Vec<Track> = Vec::new();
    let mut next_index = 1;
    let mut out = Vec::with_capacity(sets.len());
    for set in sets {
        let Some(ps) = set else {
            out.push(None);
            continue;
        };
        // Candidates: upper-half-plane and real poles.
        let cands: Vec<(Complex64, f64)> = ps
            .poles
            .iter()
            .zip(&ps.residues)
            .filter(|(p, _)| p.im >= 0.0 || !is_complex(**p))
            .map(|(p, r)| (if is_complex(*p) { *p } else { Complex64::new(p.re, 0.0) }, r.norm()))
            .collect();
        let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
        for (ti, t) in tracks.iter().enumerate().filter(|(_, t)| t.alive) {
            for (ci, c) in cands.iter().enumerate() {
                pairs.push(((t.pole - c.0).norm(), ti, ci));
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut t_used = vec![false; tracks.len()];
        let mut c_used = vec![false; cands.len()];
        let mut row = Vec::new();
        for (_, ti, ci) in pairs {
            if t_used[ti] || c_used[ci] {
                continue;
            }
            t_used[ti] = true;
            c_used[ci] = true;
            let (pole, res) = cands[ci];
            let coherent = is_complex(pole) && res > COHERENT_RESIDUE;
            tracks[ti].pole = pole;
            tracks[ti].alive = coherent;
            row.push(TrackedMode { index: tracks[ti].index, pole, residue_magnitude: res, coherent });
        }
        // Births, highest frequency first.
        let mut born: Vec<usize> = (0..cands.len())
            .filter(|&ci| !c_used[ci] && is_complex(cands[ci].0) && cands[ci].1 > COHERENT_RESIDUE)
            .collect();
        born.sort_by(|&a, &b| cands[b].0.im.total_cmp(&cands[a].0.im));
        for ci in born {
            let (pole, res) = cands[ci];
            tracks.push(Track { index: next_index, pole, alive: true });
            row.push(TrackedMode { index: next_index, pole, residue_magnitude: res, coherent: true });
            next_index += 1;
        }
        row.sort_by_key(|m| m.index);
        out.push(Some(row));
    }
    out
}

/// Tracked modes at each requested γ (ascending order of `gammas` is not
/// required; results follow the input order).
pub fn track_modes(
    template: &PhysParams,
    cfg: &KernelConfig,
    gammas: &[f64],
) -> Result<Vec<Vec<TrackedMode>>> {
    let grid = continuation_grid(gammas);
    let sets: Vec<Option<PoleSet>> =
        grid.iter().map(|g| pole_set_at(&template.with_gamma(*g), cfg).ok()).collect();
    let labels = label_modes(&sets);
    gammas
        .iter()
        .map(|g| {
            let i = grid.iter().position(|x| x == g).expect("grid contains targets");
            labels[i].clone().ok_or_else(|| {
                Error::RootFindingFailure(format!("no pole set at gamma = {g}"))
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModeSelector {
    /// Any conjugate pair above the residue threshold.
    Any,
    /// The mode with this continuation index.
    Tracked(usize),
}

fn any_coherent(p: &PhysParams, cfg: &KernelConfig) -> Result<bool> {
    let ps = pole_set_at(p, cfg)?;
    Ok(coherence_report(&ps).coherent().next().is_some())
}

/// Coupling γ* at which the selected mode stops being coherent, by bisection
/// to width 1e-4.
pub fn transition_scan(
    template: &PhysParams,
    cfg: &KernelConfig,
    range: (f64, f64),
    selector: ModeSelector,
) -> Result<f64> {
    let (lo, hi) = range;
    if !(lo < hi) || lo < 0.0 {
        return Err(Error::domain("gamma range must satisfy 0 <= lo < hi"));
    }
    const WIDTH: f64 = 1e-4;
    match selector {
        ModeSelector::Any => {
            let at = |g: f64| any_coherent(&template.with_gamma(g), cfg);
            let (mut a, mut b) = (lo, hi);
            let pa = at(a)?;
            if pa == at(b)? {
                return Err(Error::NoBracket(format!(
                    "coherence predicate is {pa} at both ends of [{lo}, {hi}]"
                )));
            }
            while b - a > WIDTH {
                let m = 0.5 * (a + b);
                if at(m)? == pa {
                    a = m;
                } else {
                    b = m;
                }
            }
            Ok(0.5 * (a + b))
        }
        ModeSelector::Tracked(k) => {
            // Continue on the fine grid until the mode dies, then bisect the last step.
            let grid: Vec<f64> = continuation_grid(&[hi]);
            let mut sets = Vec::new();
            let mut last_alive: Option<f64> = None;
            for &g in &grid {
                sets.push(pole_set_at(&template.with_gamma(g), cfg).ok());
                let labels = label_modes(&sets);
                let alive = labels
                    .last()
                    .and_then(|r| r.as_ref())
                    .map(|row| row.iter().any(|m| m.index == k && m.coherent));
                match alive {
                    Some(true) => last_alive = Some(g),
                    Some(false) if last_alive.is_some() => {
                        let a0 = last_alive.unwrap();
                        if a0 < lo {
                            return Err(Error::NoBracket(format!("mode {k} is dead at gamma = {lo}")));
                        }
                        let base = &sets[..sets.len() - 1];
                        let alive_at = |x: f64| -> bool {
                            let mut s = base.to_vec();
                            s.push(pole_set_at(&template.with_gamma(x), cfg).ok());
                            label_modes(&s)
                                .last()
                                .and_then(|r| r.clone())
                                .map(|row| row.iter().any(|m| m.index == k && m.coherent))
                                .unwrap_or(false)
                        };
                        let (mut a, mut b) = (a0, g);
                        while b - a > WIDTH {
                            let m = 0.5 * (a + b);
                            if alive_at(m) {
                                a = m;
                            } else {
                                b = m;
                            }
                        }
                        return Ok(0.5 * (a + b));
                    }
                    _ => {}
                }
            }
            Err(Error::NoBracket(format!("mode {k} stays coherent (or never appears) up to gamma = {hi}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_arithmetic() {
        let ps = PoleSet::new(
            vec![Complex64::new(-0.01, 0.5), Complex64::new(-0.01, -0.5), Complex64::new(-2.0, 0.0)],
            vec![Complex64::new(0.4, 0.1), Complex64::new(0.4, -0.1), Complex64::new(0.2, 0.0)],
        )
        .unwrap();
        let r = coherence_report(&ps);
        assert_eq!(r.modes.len(), 1);
        assert!((r.modes[0].tau_phi - 100.0).abs() < 1e-9);
        assert_eq!(r.modes[0].freq, 0.5);
        assert_eq!(r.relaxation_rates, vec![2.0]);
    }

    #[test]
    fn undamped_mode_marked() {
        let ps = PoleSet::new(
            vec![Complex64::new(0.0, 1.5), Complex64::new(0.0, -1.5)],
            vec![Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0)],
        )
        .unwrap();
        assert!(coherence_report(&ps).modes[0].is_undamped());
    }

    #[test]
    fn grid_contains_targets() {
        let near = 0.01 + 0.49 * 2.0 / 49.0; // 0.030000000000000002
        let g = continuation_grid(&[0.1, 0.0123, near]);
        assert!(g.contains(&0.1) && g.contains(&0.0123) && g.contains(&near) && g[0] == 0.0);
        assert!(!g.iter().any(|x| *x != near && (x - near).abs() < 1e-9));
        assert!(g.windows(2).all(|w| w[1] - w[0] <= 2.5e-3 + 1e-12));
    }
}
