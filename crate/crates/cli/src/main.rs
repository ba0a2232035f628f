use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand};

use qrm_core::output::{scan_records, write_crossing_csv, write_spectrum_csv};
use qrm_core::scan::{parse_range, resolve_jobs};
use qrm_core::{
    emit_figure_data, report_crossings, run_scan, Axis, FigureId, FigureOptions, Method,
    ModelParams, ScanRequest,
};

/// Spectra, Juddian points and figure data for the quantum Rabi model
/// H = Δ/2 σz + ω a†a + g σx (a + a†).
#[derive(Parser, Debug)]
#[command(name = "qrm", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Scan the spectrum over g or Δ with one or more methods.
    Spectrum(SpectrumArgs),
    /// List level crossings (Juddian points) of pairs 0..=n-max.
    Crossings(CrossingArgs),
    /// Write the dataset behind a figure (2a, 2b, 2c, 3a, 3b, 3c, 4 or all).
    Figure(FigureArgs),
}

#[derive(clap::Args, Debug)]
struct SpectrumArgs {
    /// Scanned parameter.
    #[arg(long, default_value = "g")]
    axis: Axis,
    /// Grid as start:end:points, inclusive.
    #[arg(long, default_value = "0:2:101")]
    range: String,
    /// Qubit splitting Δ (ignored when scanning Δ).
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    /// Coupling g (ignored when scanning g).
    #[arg(long, default_value_t = 0.0)]
    g: f64,
    /// Oscillator frequency ω.
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    /// Number of lowest levels per grid point (at most 40).
    #[arg(long, default_value_t = 12)]
    levels: usize,
    /// Comma-separated methods: EXACT, AA, GAA_K, GAA_L, GRWA, GRWA_GAA.
    #[arg(long, default_value = "EXACT,AA,GAA_K", value_delimiter = ',')]
    methods: Vec<Method>,
    /// Exact-solver convergence tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit a JSON document of the whole scan instead of CSV.
    #[arg(long)]
    json: bool,
    /// Worker threads (default: all cores). QRM_JOBS overrides this flag.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(clap::Args, Debug)]
struct CrossingArgs {
    /// Highest pair index to search (at most 10).
    #[arg(long, default_value_t = 5)]
    n_max: usize,
    #[arg(long, default_value_t = 1.2)]
    delta: f64,
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    /// Confirm each point with exact diagonalization and report the gap.
    #[arg(long)]
    refine_exact: bool,
    /// Output CSV file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct FigureArgs {
    /// Figure id, or `all`.
    id: String,
    /// Output CSV file; with `all`, a directory receiving fig<id>.csv files.
    #[arg(long)]
    out: PathBuf,
    /// Levels per grid point (default: 8 for 3b, 24 for 3c, 12 otherwise).
    #[arg(long)]
    levels: Option<usize>,
    /// Worker threads (default: all cores). QRM_JOBS overrides this flag.
    #[arg(long)]
    jobs: Option<usize>,
}

fn jobs(flag: Option<usize>) -> Result<Option<usize>> {
    let env = std::env::var("QRM_JOBS").ok();
    Ok(resolve_jobs(flag, env.as_deref())?)
}

fn with_output(out: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match out {
        Some(path) => {
            let file = std::fs::File::create(path)
                .map_err(|e| anyhow!("cannot create {}: {e}", path.display()))?;
            let mut w = io::BufWriter::new(file);
            body(&mut w)?;
            w.flush().map_err(|e| anyhow!("cannot write {}: {e}", path.display()))
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            body(&mut w)
        }
    }
}

fn spectrum(args: SpectrumArgs) -> Result<()> {
    let grid = parse_range(&args.range)?;
    let fixed = ModelParams {
        delta: args.delta,
        omega: args.omega,
        g: args.g,
    };
    let mut request = ScanRequest::new(args.axis, grid, fixed, args.methods, args.levels);
    request.tol = args.tol;
    request.jobs = jobs(args.jobs)?;
    let scan = run_scan(&request)?;
    with_output(args.out.as_deref(), |w| {
        if args.json {
            writeln!(w, "{}", qrm_core::output::scan_json(&scan)?)?;
        } else {
            write_spectrum_csv(&scan_records(&scan), w)?;
        }
        Ok(())
    })
}

fn crossings(args: CrossingArgs) -> Result<()> {
    let rows = report_crossings(args.n_max, args.delta, args.omega, args.refine_exact)?;
    with_output(args.out.as_deref(), |w| Ok(write_crossing_csv(&rows, w)?))
}

fn figure(args: FigureArgs) -> Result<()> {
    let options = FigureOptions {
        levels: args.levels,
        jobs: jobs(args.jobs)?,
    };
    if args.id.eq_ignore_ascii_case("all") {
        std::fs::create_dir_all(&args.out)
            .map_err(|e| anyhow!("cannot create directory {}: {e}", args.out.display()))?;
        for id in FigureId::ALL {
            let path = args.out.join(format!("fig{id}.csv"));
            emit_figure_data(id, &path, &options)?;
        }
        return Ok(());
    }
    let id: FigureId = args.id.parse()?;
    if args.out.is_dir() {
        bail!("{} is a directory; pass a file path", args.out.display());
    }
    emit_figure_data(id, &args.out, &options)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Spectrum(a) => spectrum(a),
        Command::Crossings(a) => crossings(a),
        Command::Figure(a) => figure(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            // Core errors already embed their causes in the message.
            eprintln!("qrm: error: {e}");
            ExitCode::FAILURE
        }
    }
}
