use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dcsb::cli::{execute, Command, ConfigOverrides, RunConfig};
use dcsb::Error;

#[derive(Parser)]
#[command(name = "dcsb", version, about = "Dual-coupling spin-boson dynamics")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// ⟨σ_z(t)⟩ on a time grid (t_ps,sigma_z)
    Simulate(Common),
    /// Poles and residues of ⟨σ_z(λ)⟩
    Poles(Common),
    /// Coherence times of continued modes over a γ range and ζ list
    Sweep(Common),
    /// ⟨σ_z(t)⟩ of several models on one grid
    Compare(Common),
}

#[derive(Args)]
struct Common {
    /// key = value file; flags override it
    #[arg(long, allow_hyphen_values = true)]
    config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    zeta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    kt_mev: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    delta_mev: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    omega_c_mev: Option<String>,
    /// dc | sb | nn
    #[arg(long, allow_hyphen_values = true)]
    model: Option<String>,
    /// exact | high-t
    #[arg(long, allow_hyphen_values = true)]
    f_mode: Option<String>,
    /// calibrated | paper
    #[arg(long, allow_hyphen_values = true)]
    kernel_scale: Option<String>,
    /// scaled | literal
    #[arg(long, allow_hyphen_values = true)]
    gamma_eff: Option<String>,
    /// paper | rederived
    #[arg(long, allow_hyphen_values = true)]
    fc_exponent: Option<String>,
    /// ps
    #[arg(long, allow_hyphen_values = true)]
    t_max: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    n_points: Option<String>,
    /// CSV path; `<out>.meta.json` is written next to it. Without it the CSV goes to stdout.
    #[arg(long, allow_hyphen_values = true)]
    out: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    jobs: Option<String>,
    /// start:stop:count, inclusive (sweep)
    #[arg(long, allow_hyphen_values = true)]
    gamma_range: Option<String>,
    /// comma-separated ζ values (sweep)
    #[arg(long, allow_hyphen_values = true)]
    zeta_list: Option<String>,
    /// comma-separated models (compare)
    #[arg(long, allow_hyphen_values = true)]
    models: Option<String>,
}

impl Common {
    fn flags(&self) -> dcsb::Result<ConfigOverrides> {
        let mut o = ConfigOverrides::new();
        let pairs = [
            ("gamma", &self.gamma),
            ("zeta", &self.zeta),
            ("kt-mev", &self.kt_mev),
            ("delta-mev", &self.delta_mev),
            ("omega-c-mev", &self.omega_c_mev),
            ("model", &self.model),
            ("f-mode", &self.f_mode),
            ("kernel-scale", &self.kernel_scale),
            ("gamma-eff", &self.gamma_eff),
            ("fc-exponent", &self.fc_exponent),
            ("t-max", &self.t_max),
            ("n-points", &self.n_points),
            ("out", &self.out),
            ("jobs", &self.jobs),
            ("gamma-range", &self.gamma_range),
            ("zeta-list", &self.zeta_list),
            ("models", &self.models),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                o.set(k, v, &format!("--{k}"))?;
            }
        }
        Ok(o)
    }

    fn resolve(&self) -> dcsb::Result<RunConfig> {
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::config(format!("{}: {e}", path.display())))?;
                Some(ConfigOverrides::parse_file(&text, &path.display().to_string())?)
            }
            None => None,
        };
        RunConfig::resolve(file.as_ref(), &self.flags()?)
    }
}

fn run(cli: Cli) -> dcsb::Result<()> {
    let (cmd, common) = match &cli.command {
        Cmd::Simulate(c) => (Command::Simulate, c),
        Cmd::Poles(c) => (Command::Poles, c),
        Cmd::Sweep(c) => (Command::Sweep, c),
        Cmd::Compare(c) => (Command::Compare, c),
    };
    let cfg = common.resolve()?;
    let (out, _) = execute(cmd, &cfg)?;
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    if cfg.out.is_none() {
        std::io::stdout().write_all(out.csv.as_str().as_bytes())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dcsb: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
