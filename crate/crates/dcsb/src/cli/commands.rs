use std::time::Instant;

use rayon::prelude::*;

use super::config::{model_name, RunConfig};
use super::output::{write_outputs, Csv, OracleSummary, RunMetadata};
use crate::bath::PhysParams;
use crate::dynamics::{
    build_rational, continuation_grid, find_poles, invert_talbot, label_modes, pole_set_at,
    reconstruct_time, PoleSet, TalbotOptions, Trace,
};
use crate::error::{Error, Result};
use crate::kernels::{FMode, KernelConfig, ModelVariant};

/// Pole-residue and Talbot traces must agree this well in `simulate`.
pub const SIMULATE_ORACLE_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Simulate,
    Poles,
    Sweep,
    Compare,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Simulate => "simulate",
            Command::Poles => "poles",
            Command::Sweep => "sweep",
            Command::Compare => "compare",
        }
    }
}

/// What a command produced, before anything is written.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub csv: Csv,
    pub method: String,
    pub oracle: OracleSummary,
    pub warnings: Vec<String>,
}

fn param_warnings(p: &PhysParams) -> Vec<String> {
    p.warnings().iter().map(|w| w.to_string()).collect()
}

/// Parameters seen by `variant`, with a warning when ζ is dropped.
fn variant_params(p: &PhysParams, kernel: &KernelConfig, warnings: &mut Vec<String>) -> PhysParams {
    let ep = kernel.effective_params(p);
    if ep.zeta != p.zeta {
        warnings.push(format!(
            "model {} has no non-diagonal coupling; zeta = {} ignored",
            model_name(kernel.variant),
            p.zeta
        ));
    }
    ep
}

/// ⟨σ_z(t)⟩ for one model: pole residues (high-T) or Talbot (exact).
fn model_trace(
    p: &PhysParams,
    kernel: &KernelConfig,
    times: &[f64],
    oracle: &mut OracleSummary,
    cross_check: bool,
) -> Result<Trace> {
    match kernel.f_mode {
        FMode::HighT => {
            let ps = find_poles(&build_rational(p, kernel)?)?;
            let trace = reconstruct_time(&ps, times)?;
            oracle.residue_sum_deviation = Some((ps.residue_sum() - 1.0).norm());
            oracle.max_pole_real_part = Some(ps.max_real_part());
            oracle.initial_value_deviation = Some(trace.initial_deviation());
            if cross_check {
                let tal = invert_talbot(p, kernel, times, &TalbotOptions::default())?;
                let diff = trace.max_abs_diff(&tal);
                oracle.talbot_max_abs_diff = Some(diff);
                if diff > SIMULATE_ORACLE_TOL {
                    return Err(Error::OracleMismatch {
                        what: "pole-residue vs talbot trace".into(),
                        diff,
                        tol: SIMULATE_ORACLE_TOL,
                    });
                }
            }
            Ok(trace)
        }
        FMode::Exact => {
            // Poles alone miss the Γ-function structure; Talbot is the result
            // and the pole-only remainder is reported.
            let trace = invert_talbot(p, kernel, times, &TalbotOptions::default())?;
            oracle.initial_value_deviation = Some(trace.initial_deviation());
            if let Ok(ps) = pole_set_at(p, kernel) {
                oracle.max_pole_real_part = Some(ps.max_real_part());
                if let Ok(poles_only) = reconstruct_time(&ps, times) {
                    oracle.non_pole_contribution_max = Some(trace.max_abs_diff(&poles_only));
                }
            }
            Ok(trace)
        }
    }
}

pub fn cmd_simulate(cfg: &RunConfig) -> Result<CommandOutput> {
    let mut warnings = param_warnings(&cfg.params);
    let p = variant_params(&cfg.params, &cfg.kernel, &mut warnings);
    let times = cfg.grid.times();
    let mut oracle = OracleSummary::default();
    let trace = model_trace(&p, &cfg.kernel, &times, &mut oracle, true)?;
    let mut csv = Csv::new(&["t_ps", "sigma_z"]);
    for (t, v) in trace.times.iter().zip(&trace.values) {
        csv.push_nums(&[*t, *v]);
    }
    Ok(CommandOutput { csv, method: trace.method.to_string(), oracle, warnings })
}

pub fn cmd_poles(cfg: &RunConfig) -> Result<CommandOutput> {
    let mut warnings = param_warnings(&cfg.params);
    let p = variant_params(&cfg.params, &cfg.kernel, &mut warnings);
    let ps = pole_set_at(&p, &cfg.kernel)?;
    let mut csv = Csv::new(&["re_per_ps", "im_per_ps", "residue_re", "residue_im", "tau_ps", "freq_per_ps"]);
    for i in ps.order_by_residue() {
        let (z, r) = (ps.poles[i], ps.residues[i]);
        let tau = if z.re.abs() < 1e-12 { f64::INFINITY } else { 1.0 / z.re.abs() };
        csv.push_nums(&[z.re, z.im, r.re, r.im, tau, z.im.abs()]);
    }
    let oracle = OracleSummary {
        residue_sum_deviation: Some((ps.residue_sum() - 1.0).norm()),
        max_pole_real_part: Some(ps.max_real_part()),
        ..Default::default()
    };
    let method = match cfg.kernel.f_mode {
        FMode::HighT => "rational_roots",
        FMode::Exact => "newton_refined",
    };
    Ok(CommandOutput { csv, method: method.into(), oracle, warnings })
}

/// One sweep row: (γ, ζ, mode index, τ, frequency, |residue|).
type SweepRow = (f64, f64, usize, f64, f64, f64);

pub fn cmd_sweep(cfg: &RunConfig) -> Result<CommandOutput> {
    let spec = cfg.sweep.as_ref().ok_or_else(|| Error::config("sweep needs gamma-range"))?;
    let mut warnings = param_warnings(&cfg.params);
    let gammas = spec.gamma_range.values();
    let mut zetas: Vec<f64> = spec.zetas.clone();
    if matches!(cfg.kernel.variant, ModelVariant::Sb | ModelVariant::Nn) && zetas.iter().any(|z| *z != 0.0) {
        warnings.push(format!("model {} has no non-diagonal coupling; zeta-list replaced by 0", model_name(cfg.kernel.variant)));
        zetas = vec![0.0];
    }
    zetas.sort_by(f64::total_cmp);
    zetas.dedup();

    let grid = continuation_grid(&gammas);
    let points: Vec<(usize, f64)> = (0..zetas.len()).flat_map(|zi| grid.iter().map(move |g| (zi, *g))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::config(format!("thread pool: {e}")))?;
    // Each point is independent; collect keeps input order, so the result
    // does not depend on scheduling.
    let sets: Vec<Option<PoleSet>> = pool.install(|| {
        points
            .par_iter()
            .map(|(zi, g)| pole_set_at(&cfg.params.with_zeta(zetas[*zi]).with_gamma(*g), &cfg.kernel).ok())
            .collect()
    });

    let mut rows: Vec<SweepRow> = Vec::new();
    let mut omitted = 0;
    let mut failed = 0;
    let mut max_re = f64::NEG_INFINITY;
    let mut max_sum_dev: f64 = 0.0;
    for (zi, zeta) in zetas.iter().enumerate() {
        let slice = &sets[zi * grid.len()..(zi + 1) * grid.len()];
        let labels = label_modes(slice);
        let mut known = 0;
        for (gi, g) in grid.iter().enumerate() {
            let Some(row) = &labels[gi] else {
                if gammas.contains(g) {
                    failed += 1;
                }
                continue;
            };
            known = known.max(row.iter().map(|m| m.index).max().unwrap_or(0));
            if !gammas.contains(g) {
                continue;
            }
            if let Some(ps) = &slice[gi] {
                max_re = max_re.max(ps.max_real_part());
                max_sum_dev = max_sum_dev.max((ps.residue_sum() - 1.0).norm());
            }
            let coherent: Vec<_> = row.iter().filter(|m| m.coherent).collect();
            omitted += known - coherent.len();
            for m in coherent {
                let tau = if m.pole.re.abs() < 1e-12 { f64::INFINITY } else { 1.0 / m.pole.re.abs() };
                rows.push((*g, *zeta, m.index, tau, m.pole.im.abs(), m.residue_magnitude));
            }
        }
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut csv = Csv::new(&["gamma", "zeta", "mode_index", "tau_ps", "freq_per_ps", "residue_mag"]);
    for (g, z, k, tau, f, r) in rows {
        csv.push_row(&[
            super::output::format_num(g),
            super::output::format_num(z),
            k.to_string(),
            super::output::format_num(tau),
            super::output::format_num(f),
            super::output::format_num(r),
        ]);
    }
    let oracle = OracleSummary {
        omitted_rows: Some(omitted),
        failed_points: Some(failed),
        max_pole_real_part: max_re.is_finite().then_some(max_re),
        residue_sum_deviation: Some(max_sum_dev),
        ..Default::default()
    };
    Ok(CommandOutput { csv, method: "mode_continuation".into(), oracle, warnings })
}

pub fn cmd_compare(cfg: &RunConfig) -> Result<CommandOutput> {
    let mut warnings = param_warnings(&cfg.params);
    let mut models = cfg.models.clone();
    models.dedup();
    let times = cfg.grid.times();
    let mut columns = Vec::new();
    let mut oracle = OracleSummary::default();
    let mut method = String::new();
    for m in &models {
        let kernel = cfg.kernel.with_variant(*m);
        let p = variant_params(&cfg.params, &kernel, &mut warnings);
        let mut o = OracleSummary::default();
        let trace = model_trace(&p, &kernel, &times, &mut o, false)?;
        method = trace.method.to_string();
        let worst = |a: Option<f64>, b: Option<f64>| match (a, b) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, y) => x.or(y),
        };
        oracle.initial_value_deviation = worst(oracle.initial_value_deviation, o.initial_value_deviation);
        oracle.residue_sum_deviation = worst(oracle.residue_sum_deviation, o.residue_sum_deviation);
        oracle.max_pole_real_part = worst(oracle.max_pole_real_part, o.max_pole_real_part);
        oracle.non_pole_contribution_max = worst(oracle.non_pole_contribution_max, o.non_pole_contribution_max);
        columns.push(trace.values);
    }
    let mut header = vec!["t_ps"];
    header.extend(models.iter().map(|m| model_name(*m)));
    let mut csv = Csv::new(&header);
    for (i, t) in times.iter().enumerate() {
        let mut row = vec![*t];
        row.extend(columns.iter().map(|c| c[i]));
        csv.push_nums(&row);
    }
    Ok(CommandOutput { csv, method, oracle, warnings })
}

pub fn run_command(cmd: Command, cfg: &RunConfig) -> Result<CommandOutput> {
    match cmd {
        Command::Simulate => cmd_simulate(cfg),
        Command::Poles => cmd_poles(cfg),
        Command::Sweep => cmd_sweep(cfg),
        Command::Compare => cmd_compare(cfg),
    }
}

/// Run a command, write `cfg.out` and its metadata when set, and return
/// both the output and the metadata record.
pub fn execute(cmd: Command, cfg: &RunConfig) -> Result<(CommandOutput, RunMetadata)> {
    let start = Instant::now();
    let out = run_command(cmd, cfg)?;
    let meta = RunMetadata {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: cmd.name().into(),
        config: cfg.clone(),
        config_text: cfg.to_config_text(),
        duration_s: start.elapsed().as_secs_f64(),
        method: out.method.clone(),
        rows: out.csv.rows(),
        oracle: out.oracle.clone(),
        warnings: out.warnings.clone(),
    };
    if let Some(path) = &cfg.out {
        write_outputs(path, &out.csv, &meta)?;
    }
    Ok((out, meta))
}
