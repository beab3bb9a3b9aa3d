//! Run configuration: `key = value` files, flag overrides and defaults.
//!
//! Precedence is flags > file > defaults. Every key is also accepted with
//! dashes (`kt-mev`), so flag names and file keys share one table.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::bath::{ExponentMode, PhysParams};
use crate::dynamics::TimeGrid;
use crate::error::{Error, Result};
use crate::kernels::{FMode, GammaEffMode, KernelConfig, KernelScale, ModelVariant};

pub const DEFAULT_T_MAX: f64 = 200.0;
pub const DEFAULT_N_POINTS: usize = 2001;

/// Inclusive γ range `start:stop:count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaRange {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GammaRange {
    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub gamma_range: GammaRange,
    pub zetas: Vec<f64>,
}

/// Fully resolved configuration of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub params: PhysParams,
    pub kernel: KernelConfig,
    pub grid: TimeGrid,
    pub sweep: Option<SweepSpec>,
    /// Models for `compare`.
    pub models: Vec<ModelVariant>,
    pub out: Option<PathBuf>,
    /// Worker threads for sweeps; does not affect results.
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            params: PhysParams::paper_defaults(0.0, 0.0),
            kernel: KernelConfig::default(),
            grid: TimeGrid { t_max: DEFAULT_T_MAX, n_points: DEFAULT_N_POINTS },
            sweep: None,
            models: vec![ModelVariant::Dc, ModelVariant::Sb, ModelVariant::Nn],
            out: None,
            jobs: 1,
        }
    }
}

/// Settings collected from one source, each remembering where it came from.
#[derive(Debug, Clone, Default)]
pub struct ConfigOverrides {
    entries: Vec<(String, String, String)>,
}

const KEYS: &[&str] = &[
    "gamma",
    "zeta",
    "kt_mev",
    "delta_mev",
    "omega_c_mev",
    "model",
    "f_mode",
    "kernel_scale",
    "gamma_eff",
    "fc_exponent",
    "t_max",
    "n_points",
    "out",
    "jobs",
    "gamma_range",
    "zeta_list",
    "models",
];

fn canonical_key(key: &str) -> String {
    key.trim().trim_start_matches("--").replace('-', "_")
}

impl ConfigOverrides {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record `key = value`; `origin` names the line or flag for error messages.
    pub fn set(&mut self, key: &str, value: &str, origin: &str) -> Result<()> {
        let k = canonical_key(key);
        if !KEYS.contains(&k.as_str()) {
            return Err(Error::config(format!("{origin}: unknown key '{}'", key.trim())));
        }
        self.entries.push((k, value.trim().to_string(), origin.to_string()));
        Ok(())
    }

    /// Parse a config file body.
    pub fn parse_file(text: &str, name: &str) -> Result<Self> {
        let mut o = Self::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let origin = format!("{name}:{}", i + 1);
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::config(format!("{origin}: expected 'key = value'")))?;
            if v.trim().is_empty() {
                return Err(Error::config(format!("{origin}: missing value for '{}'", k.trim())));
            }
            o.set(k, v, &origin)?;
        }
        Ok(o)
    }

    fn apply(&self, cfg: &mut RunConfig) -> Result<()> {
        for (k, v, origin) in &self.entries {
            apply_one(cfg, k, v).map_err(|e| Error::config(format!("{origin}: {e}")))?;
        }
        Ok(())
    }
}

fn num(v: &str) -> std::result::Result<f64, String> {
    let x: f64 = v.parse().map_err(|_| format!("'{v}' is not a number"))?;
    if !x.is_finite() {
        return Err(format!("'{v}' is not finite"));
    }
    Ok(x)
}

fn count(v: &str) -> std::result::Result<usize, String> {
    v.parse().map_err(|_| format!("'{v}' is not a non-negative integer"))
}

pub fn parse_model(v: &str) -> std::result::Result<ModelVariant, String> {
    match v.trim() {
        "dc" => Ok(ModelVariant::Dc),
        "sb" => Ok(ModelVariant::Sb),
        "nn" => Ok(ModelVariant::Nn),
        other => Err(format!("model '{other}' is not one of dc, sb, nn")),
    }
}

pub fn model_name(m: ModelVariant) -> &'static str {
    match m {
        ModelVariant::Dc => "dc",
        ModelVariant::Sb => "sb",
        ModelVariant::Nn => "nn",
        ModelVariant::Ib => "ib",
    }
}

fn apply_one(cfg: &mut RunConfig, key: &str, v: &str) -> std::result::Result<(), String> {
    let p = &mut cfg.params;
    let k = &mut cfg.kernel;
    match key {
        "gamma" => p.gamma = num(v)?,
        "zeta" => p.zeta = num(v)?,
        "kt_mev" => p.kt = num(v)?,
        "delta_mev" => p.delta = num(v)?,
        "omega_c_mev" => p.omega_c = num(v)?,
        "model" => k.variant = parse_model(v)?,
        "f_mode" => {
            k.f_mode = match v {
                "exact" => FMode::Exact,
                "high-t" | "high_t" => FMode::HighT,
                _ => return Err(format!("f-mode '{v}' is not one of exact, high-t")),
            }
        }
        "kernel_scale" => {
            k.kernel_scale = match v {
                "calibrated" => KernelScale::Calibrated,
                "paper" => KernelScale::PaperLiteral,
                _ => return Err(format!("kernel-scale '{v}' is not one of calibrated, paper")),
            }
        }
        "gamma_eff" => {
            k.gamma_eff_mode = match v {
                "scaled" => GammaEffMode::Scaled,
                "literal" => GammaEffMode::Literal,
                _ => return Err(format!("gamma-eff '{v}' is not one of scaled, literal")),
            }
        }
        "fc_exponent" => {
            k.exponent_mode = match v {
                "paper" => ExponentMode::Paper,
                "rederived" => ExponentMode::Rederived,
                _ => return Err(format!("fc-exponent '{v}' is not one of paper, rederived")),
            }
        }
        "t_max" => cfg.grid.t_max = num(v)?,
        "n_points" => cfg.grid.n_points = count(v)?,
        "out" => cfg.out = Some(PathBuf::from(v)),
        "jobs" => cfg.jobs = count(v)?,
        "gamma_range" => {
            let parts: Vec<&str> = v.split(':').collect();
            if parts.len() != 3 {
                return Err(format!("gamma-range '{v}' is not start:stop:count"));
            }
            let r = GammaRange { start: num(parts[0])?, stop: num(parts[1])?, count: count(parts[2])? };
            let zetas = cfg.sweep.take().map(|s| s.zetas).unwrap_or_else(|| vec![0.0]);
            cfg.sweep = Some(SweepSpec { gamma_range: r, zetas });
        }
        "zeta_list" => {
            let zetas = v.split(',').map(|s| num(s.trim())).collect::<std::result::Result<Vec<_>, _>>()?;
            match &mut cfg.sweep {
                Some(s) => s.zetas = zetas,
                None => {
                    // Range may follow later; keep the list with a placeholder range.
                    cfg.sweep = Some(SweepSpec {
                        gamma_range: GammaRange { start: f64::NAN, stop: f64::NAN, count: 0 },
                        zetas,
                    })
                }
            }
        }
        "models" => {
            cfg.models = v.split(',').map(|s| parse_model(s.trim())).collect::<std::result::Result<Vec<_>, _>>()?;
        }
        _ => unreachable!("keys are checked on insertion"),
    }
    Ok(())
}

impl RunConfig {
    /// Defaults, then the file, then the flags; the result is validated.
    pub fn resolve(file: Option<&ConfigOverrides>, flags: &ConfigOverrides) -> Result<Self> {
        let mut cfg = RunConfig {
            jobs: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            ..RunConfig::default()
        };
        if let Some(f) = file {
            f.apply(&mut cfg)?;
        }
        flags.apply(&mut cfg)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate().map_err(|e| Error::config(format!("parameters: {e}")))?;
        TimeGrid::new(self.grid.t_max, self.grid.n_points).map_err(|e| Error::config(format!("grid: {e}")))?;
        if self.kernel.variant == ModelVariant::Ib {
            return Err(Error::config("model 'ib' has no self-energy to simulate"));
        }
        if self.jobs == 0 {
            return Err(Error::config("jobs must be >= 1"));
        }
        if self.models.is_empty() {
            return Err(Error::config("models must not be empty"));
        }
        if let Some(s) = &self.sweep {
            let r = s.gamma_range;
            if r.count == 0 && r.start.is_nan() {
                return Err(Error::config("zeta-list given without gamma-range"));
            }
            if r.count < 2 {
                return Err(Error::config("gamma-range count must be >= 2"));
            }
            if !(r.start >= 0.0 && r.stop > r.start) {
                return Err(Error::config("gamma-range must satisfy 0 <= start < stop"));
            }
            if s.zetas.is_empty() || s.zetas.iter().any(|z| *z < 0.0) {
                return Err(Error::config("zeta-list must hold values >= 0"));
            }
        }
        Ok(())
    }

    /// Config file text that reproduces this run (minus `out` and `jobs`).
    pub fn to_config_text(&self) -> String {
        let p = &self.params;
        let k = &self.kernel;
        let mut s = String::new();
        let _ = writeln!(s, "gamma = {}", p.gamma);
        let _ = writeln!(s, "zeta = {}", p.zeta);
        let _ = writeln!(s, "kt_mev = {}", p.kt);
        let _ = writeln!(s, "delta_mev = {}", p.delta);
        let _ = writeln!(s, "omega_c_mev = {}", p.omega_c);
        let _ = writeln!(s, "model = {}", model_name(k.variant));
        let f = match k.f_mode {
            FMode::Exact => "exact",
            FMode::HighT => "high-t",
        };
        let _ = writeln!(s, "f_mode = {f}");
        let ks = match k.kernel_scale {
            KernelScale::Calibrated => "calibrated",
            KernelScale::PaperLiteral => "paper",
        };
        let _ = writeln!(s, "kernel_scale = {ks}");
        let ge = match k.gamma_eff_mode {
            GammaEffMode::Scaled => "scaled",
            GammaEffMode::Literal => "literal",
        };
        let _ = writeln!(s, "gamma_eff = {ge}");
        let fe = match k.exponent_mode {
            ExponentMode::Paper => "paper",
            ExponentMode::Rederived => "rederived",
        };
        let _ = writeln!(s, "fc_exponent = {fe}");
        let _ = writeln!(s, "t_max = {}", self.grid.t_max);
        let _ = writeln!(s, "n_points = {}", self.grid.n_points);
        if let Some(sw) = &self.sweep {
            let r = sw.gamma_range;
            let _ = writeln!(s, "gamma_range = {}:{}:{}", r.start, r.stop, r.count);
            let z: Vec<String> = sw.zetas.iter().map(|z| z.to_string()).collect();
            let _ = writeln!(s, "zeta_list = {}", z.join(","));
        }
        let m: Vec<&str> = self.models.iter().map(|m| model_name(*m)).collect();
        let _ = writeln!(s, "models = {}", m.join(","));
        s
    }

    pub fn time_grid(&self) -> TimeGrid {
        self.grid
    }
}
