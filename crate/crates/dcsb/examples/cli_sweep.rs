//! The `sweep` command driven from the library: build a configuration the
//! way the binary does, run it, and print the CSV and metadata.

use dcsb::cli::{execute, Command, ConfigOverrides, RunConfig};

fn main() -> dcsb::Result<()> {
    let file = ConfigOverrides::parse_file(
        "# Coherence times over a coarse grid\n\
         gamma_range = 0.05:0.5:10\n\
         zeta_list = 0, 0.05, 0.1\n",
        "inline",
    )?;
    let mut flags = ConfigOverrides::new();
    flags.set("jobs", "2", "--jobs")?;
    let cfg = RunConfig::resolve(Some(&file), &flags)?;
    let (out, meta) = execute(Command::Sweep, &cfg)?;
    print!("{}", out.csv.as_str());
    println!("{}", meta.to_json()?);
    Ok(())
}
