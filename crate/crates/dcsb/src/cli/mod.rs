//! Command-line front end as a library: configuration, the four commands
//! and their CSV/metadata outputs. The `dcsb` binary only parses argv.

mod commands;
mod config;
mod output;

pub use commands::{
    cmd_compare, cmd_poles, cmd_simulate, cmd_sweep, execute, run_command, Command, CommandOutput,
    SIMULATE_ORACLE_TOL,
};
pub use config::{
    model_name, parse_model, ConfigOverrides, GammaRange, RunConfig, SweepSpec, DEFAULT_N_POINTS,
    DEFAULT_T_MAX,
};
pub use output::{format_num, meta_path, write_outputs, Csv, OracleSummary, RunMetadata};
