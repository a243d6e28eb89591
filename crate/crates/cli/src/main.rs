use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aqft_fft::compare::{CompareConfig, Report};
use aqft_fft::suites::{self, Sampling, Suite};
use aqft_fft::Fraction;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

#[derive(Debug, Parser)]
#[command(name = "aqft-fft", version, about = "Run exact verification suites for the lattice AQFT/FFT comparison")]
struct Cli {
    #[command(subcommand)]
    suite: Command,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pseudo-category laws on generated instances and the lattice bordism instance.
    Coherence,
    /// The truncation / inclusion adjunction between categories and pseudo-categories.
    Adjunction,
    /// Companions, weak inverses and the homotopy category of lattice bordisms.
    Bordism,
    /// Green operators and the Poisson isomorphisms of the Klein-Gordon field.
    Kg,
    /// AQFT axioms, the FFT comparison, reconstruction and non-fullness witnesses.
    Compare,
    /// Every suite.
    All,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// TOML or JSON file with `L`, `T_max`, `mass_squared`, `seed`, `max_degree`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Squared mass as a rational `p/q`.
    #[arg(long = "mass-squared", global = true, allow_hyphen_values = true)]
    mass_squared: Option<Fraction>,
    /// Spatial circumference (0 for one spatial point).
    #[arg(long = "L", global = true)]
    l: Option<u32>,
    #[arg(long = "t-max", global = true, allow_hyphen_values = true)]
    t_max: Option<i64>,
    #[arg(long, global = true, default_value_t = Sampling::default().samples)]
    samples: usize,
    #[arg(long = "element-probes", global = true, default_value_t = Sampling::default().element_probes)]
    element_probes: usize,
    /// Print every failed check to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
}

fn load_config(args: &RunArgs) -> Result<CompareConfig, String> {
    let mut config = match &args.config {
        None => CompareConfig::default(),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let parsed = if path.extension().is_some_and(|x| x == "json") {
                CompareConfig::from_json(&text)
            } else {
                CompareConfig::from_toml(&text)
            };
            parsed.map_err(|e| format!("{}: {e}", path.display()))?
        }
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(m) = &args.mass_squared {
        config.mass_squared = m.clone();
    }
    if let Some(l) = args.l {
        config.l = l;
    }
    if let Some(t) = args.t_max {
        config.t_max = t;
    }
    config.validate().map_err(|e| e.to_string())?;
    Ok(config)
}

fn write_report(out: Option<&Path>, body: &serde_json::Value) -> Result<(), String> {
    let text = serde_json::to_string_pretty(body).map_err(|e| e.to_string())? + "\n";
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match load_config(&cli.run) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let selected: Vec<Suite> = match cli.suite {
        Command::Coherence => vec![Suite::Coherence],
        Command::Adjunction => vec![Suite::Adjunction],
        Command::Bordism => vec![Suite::Bordism],
        Command::Kg => vec![Suite::Kg],
        Command::Compare => vec![Suite::Compare],
        Command::All => Suite::ALL.to_vec(),
    };
    let sampling = Sampling { samples: cli.run.samples, element_probes: cli.run.element_probes };

    let mut suites_json = serde_json::Map::new();
    let mut all_pass = true;
    for suite in selected {
        let report: Report = match suites::run(suite, &config, sampling) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {} suite: {e}", suite.name());
                return ExitCode::from(2);
            }
        };
        let failed = report.failures().count();
        all_pass &= failed == 0;
        eprintln!("{:<10} {:>5} checks, {failed} failed", suite.name(), report.len());
        if cli.run.verbose {
            for f in report.failures() {
                eprintln!("  FAIL {} [{}]: {} vs {}", f.check, f.instance_key, f.lhs, f.rhs);
            }
        }
        suites_json.insert(
            suite.name().to_string(),
            json!({ "passed": failed == 0, "checks": report.len(), "failed": failed, "records": report }),
        );
    }
    let body = json!({
        "config": config,
        "samples": sampling.samples,
        "element_probes": sampling.element_probes,
        "passed": all_pass,
        "suites": suites_json,
    });
    if let Err(e) = write_report(cli.run.out.as_deref(), &body) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
