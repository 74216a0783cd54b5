//! Command line interface: `run` a simulation, `check` the property suite,
//! `green` build and cache the projector's Green fields.

use clap::{Args, Parser, Subcommand};
use lattice_euler::hodge::{build_green_set, PoissonRoute};
use lattice_euler::io::{read_green_cache, run_to_dir, write_green_cache};
use lattice_euler::{config, Error, Lattice};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "lattice-euler", version, about = "Incompressible Euler flow on a periodic cubic lattice")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the lattice Euler equation and write diagnostics/snapshots.
    Run(RunArgs),
    /// Run the property suite (algebra axioms, solver cross-checks); exit
    /// nonzero on any failed invariant.
    Check,
    /// Build the Green fields of the projector for a given period and cache
    /// them to a file.
    Green(GreenArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Plain-text key=value config file; flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "N")]
    n: Option<String>,
    #[arg(long)]
    dt: Option<String>,
    #[arg(long)]
    steps: Option<String>,
    #[arg(long)]
    integrator: Option<String>,
    #[arg(long)]
    midpoint_tol: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    init: Option<String>,
    #[arg(long)]
    diag_every: Option<String>,
    #[arg(long)]
    snapshot_every: Option<String>,
    #[arg(long)]
    out_dir: Option<String>,
    #[arg(long)]
    scalar_mode: Option<String>,
    /// Load the Green set from this cache if it exists, else build and store it.
    #[arg(long)]
    green_cache: Option<PathBuf>,
}

#[derive(Args)]
struct GreenArgs {
    /// Lattice period (odd, >= 3).
    #[arg(long = "N")]
    n: usize,
    /// Output cache path.
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch() -> Result<ExitCode, Error> {
    match Cli::parse().command {
        Command::Run(args) => cmd_run(args),
        Command::Check => Ok(cmd_check()),
        Command::Green(args) => cmd_green(args),
    }
}

fn collect_overrides(a: &RunArgs) -> Vec<(String, String)> {
    let mut v = Vec::new();
    let mut push = |k: &str, val: &Option<String>| {
        if let Some(s) = val {
            v.push((k.to_string(), s.clone()));
        }
    };
    push("N", &a.n);
    push("dt", &a.dt);
    push("steps", &a.steps);
    push("integrator", &a.integrator);
    push("midpoint_tol", &a.midpoint_tol);
    push("seed", &a.seed);
    push("init", &a.init);
    push("diag_every", &a.diag_every);
    push("snapshot_every", &a.snapshot_every);
    push("out_dir", &a.out_dir);
    push("scalar_mode", &a.scalar_mode);
    v
}

fn cmd_run(args: RunArgs) -> Result<ExitCode, Error> {
    let overrides = collect_overrides(&args);
    let cfg = config::parse_config(args.config.as_deref(), &overrides)?;
    let lat = Lattice::new(cfg.n)?;
    let green = match &args.green_cache {
        Some(path) if path.exists() => {
            let g = read_green_cache(path)?;
            if g.lattice().n() != cfg.n {
                return Err(Error::GreenCacheFormat(format!(
                    "cache is for N={}, run wants N={}",
                    g.lattice().n(),
                    cfg.n
                )));
            }
            Some(g)
        }
        Some(path) => {
            let g = build_green_set(lat, PoissonRoute::ConjugateGradient)?;
            write_green_cache(path, &g)?;
            Some(g)
        }
        None => None,
    };
    let summary = run_to_dir(&cfg, green.as_ref())?;
    println!(
        "ran {} steps ({}) at N={}; diagnostics in {}",
        cfg.steps,
        cfg.integrator.name(),
        cfg.n,
        summary.diag_path.display()
    );
    for p in &summary.snapshots {
        println!("snapshot {}", p.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check() -> ExitCode {
    let results = lattice_euler::checks::run_all();
    let mut failed = 0;
    for (name, res) in &results {
        match res {
            Ok(msg) => println!("PASS {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name}: {msg}");
            }
        }
    }
    println!("{} passed, {} failed", results.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn cmd_green(args: GreenArgs) -> Result<ExitCode, Error> {
    let lat = Lattice::new(args.n)?;
    let t0 = std::time::Instant::now();
    let g = build_green_set(lat, PoissonRoute::ConjugateGradient)?;
    write_green_cache(&args.out, &g)?;
    println!(
        "green set for N={} built in {:.2?} and cached at {}",
        args.n,
        t0.elapsed(),
        args.out.display()
    );
    Ok(ExitCode::SUCCESS)
}
