//! Command-line front end: state analysis, built-in example states, the
//! harmonic-trap computation and the freeze map.
//!
//! Exit codes: 0 success, 2 malformed state file, 3 norm deviation beyond
//! 1e-6, 4 invalid bipartition size, 5 write failure, 6 grid too coarse,
//! 7 state incompatible with the freeze map, 1 anything else.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fermitangle::error::Error;
use fermitangle::fock::FermionState;
use fermitangle::io::load_state;

use report::{analyze_report, freeze_report, trap_json, CliError};

pub const DEFAULT_SEED: u64 = 42;
pub const SEED_ENV: &str = "FERMITANGLE_SEED";

#[derive(Parser)]
#[command(
    name = "fermitangle",
    version,
    about = "Entanglement analysis for pure states of identical fermions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a state file: purities, criterion verdicts and concurrences.
    Analyze {
        /// State file in the JSON amplitude-list format.
        path: PathBuf,
        /// Analyze a single bipartition size M.
        #[arg(long, conflicts_with = "all")]
        bipartition: Option<usize>,
        /// Analyze every valid M (the default).
        #[arg(long)]
        all: bool,
        /// Classification tolerance on the purity.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Emit a machine-readable report.
        #[arg(long)]
        json: bool,
    },
    /// Write the built-in example state files into a directory.
    Examples {
        /// Output directory (created if missing).
        outdir: PathBuf,
    },
    /// Compute the fermionized two-particle trap entropies.
    Trap {
        #[arg(long = "grid-points", default_value_t = 600)]
        grid_points: usize,
        /// Half-width of the quadrature box in oscillator units.
        #[arg(long, default_value_t = 6.0)]
        extent: f64,
        /// Also write kernel and density CSV files into this directory.
        #[arg(long = "emit-kernels")]
        emit_kernels: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Map a two-site state onto distinguishable parties and compare measures.
    Freeze {
        path: PathBuf,
        /// Per-mode site assignment, e.g. L0,L1,R0,R1.
        #[arg(long, default_value = "L0,L1,R0,R1")]
        sites: String,
        #[arg(long)]
        json: bool,
    },
}

fn load(path: &std::path::Path) -> Result<(FermionState, f64), CliError> {
    load_state(path).map_err(|e| match e {
        Error::NormDeviation { .. } => CliError::new(3, e.to_string()),
        other => CliError::new(2, other.to_string()),
    })
}

fn run() -> Result<(), CliError> {
    match Cli::parse().command {
        Command::Analyze {
            path,
            bipartition,
            all,
            tol,
            json,
        } => {
            let (state, norm) = load(&path)?;
            let selection = if all { None } else { bipartition };
            let report = analyze_report(&path, &state, norm, selection, tol)?;
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{report}");
            }
            Ok(())
        }
        Command::Examples { outdir } => cmd_examples(&outdir),
        Command::Trap {
            grid_points,
            extent,
            emit_kernels,
            json,
        } => cmd_trap(grid_points, extent, emit_kernels.as_deref(), json),
        Command::Freeze { path, sites, json } => {
            let (state, norm) = load(&path)?;
            let report = freeze_report(&path, &state, norm, &sites)?;
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{report}");
            }
            Ok(())
        }
    }
}

fn cmd_examples(outdir: &std::path::Path) -> Result<(), CliError> {
    use fermitangle::fock::reference_state;
    use fermitangle::io::save_state;
    use fermitangle::sample::{random_slater_rank1, rng_from_seed};

    let seed = match std::env::var(SEED_ENV) {
        Ok(text) => text
            .parse::<u64>()
            .map_err(|_| CliError::new(1, format!("{SEED_ENV} must be an integer, got `{text}`")))?,
        Err(_) => DEFAULT_SEED,
    };
    let write = |name: &str, state: &FermionState, seed: Option<u64>| -> Result<PathBuf, CliError> {
        let path = outdir.join(name);
        save_state(state, seed, &path)
            .map_err(|e| CliError::new(5, format!("cannot write {}: {e}", path.display())))?;
        Ok(path)
    };

    std::fs::create_dir_all(outdir)
        .map_err(|e| CliError::new(5, format!("cannot create {}: {e}", outdir.display())))?;
    let mut rng = rng_from_seed(seed);
    let random = random_slater_rank1(4, 2, &mut rng)
        .map_err(|e| CliError::new(1, e.to_string()))?;

    for (name, state, tag) in [
        ("slater-AB.json", reference_state("slater-AB").unwrap(), None),
        (
            "non-slater-AB.json",
            reference_state("non-slater-AB").unwrap(),
            None,
        ),
        ("random-rank1.json", random, Some(seed)),
    ] {
        let path = write(name, &state, tag)?;
        println!("wrote {}", path.display());
    }
    println!("random example seed: {seed}");
    Ok(())
}

fn cmd_trap(
    grid_points: usize,
    extent: f64,
    emit_kernels: Option<&std::path::Path>,
    json: bool,
) -> Result<(), CliError> {
    use fermitangle::trap::{
        one_body_kernel, trap_report, write_density_csv, write_kernel_csv, KernelKind, TrapGrid,
    };

    if grid_points < 50 || extent < 4.0 {
        return Err(CliError::new(
            6,
            format!("grid too coarse: need at least 50 points and extent 4, got n = {grid_points}, L = {extent}"),
        ));
    }
    let grid = TrapGrid::new(extent, grid_points).map_err(|e| CliError::new(6, e.to_string()))?;
    let report = trap_report(&grid).map_err(|e| match e {
        Error::GridTooCoarse(_) => CliError::new(6, e.to_string()),
        other => CliError::new(1, other.to_string()),
    })?;

    let mut emitted = Vec::new();
    if let Some(dir) = emit_kernels {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::new(5, format!("cannot create {}: {e}", dir.display())))?;
        let labeled = one_body_kernel(KernelKind::Labeled, &grid)
            .map_err(|e| CliError::new(6, e.to_string()))?;
        let ordered = one_body_kernel(KernelKind::Ordered, &grid)
            .map_err(|e| CliError::new(6, e.to_string()))?;
        for (name, kernel) in [("kernel_labeled.csv", &labeled), ("kernel_ordered.csv", &ordered)] {
            let path = dir.join(name);
            write_kernel_csv(kernel, &path)
                .map_err(|e| CliError::new(5, format!("cannot write {}: {e}", path.display())))?;
            emitted.push(path.display().to_string());
        }
        let density_path = dir.join("density.csv");
        write_density_csv(&labeled, &density_path)
            .map_err(|e| CliError::new(5, format!("cannot write {}: {e}", density_path.display())))?;
        emitted.push(density_path.display().to_string());
    }

    if json {
        println!("{}", trap_json(&report, &emitted));
    } else {
        println!("trap ground state (hard-core limit), L = {extent}, n = {grid_points}");
        println!("  S_L labeled  = {:.12}   (Tr rho^2 = {:.12})", report.s_l_labeled, report.purity_labeled);
        println!("  S_L ordered  = {:.12}   (Tr rho^2 = {:.12})", report.s_l_ordered, report.purity_ordered);
        println!(
            "  convergence estimate vs n = {}: {:.3e}",
            report.coarse_grid_points, report.convergence_estimate
        );
        for path in &emitted {
            println!("  wrote {path}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
