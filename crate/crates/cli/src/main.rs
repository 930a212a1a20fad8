//! Command-line front end for the delta-well bound-state solver.
//!
//! Subcommands: `solve` (spectrum), `wavefunction` (position samples),
//! `momentum` (momentum-space samples), `verify` (finite-difference
//! cross-check report), `bands` (lattice dispersion sweep).
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 internal solver error.

use clap::{Args, Parser, Subcommand};
use deltabound::model::{energy_physical, PhysicalSpec};
use deltabound::ndelta::{scan_bound_states, ScanParams, ScanResult};
use deltabound::oracle::{compare, GridParams, OracleError};
use deltabound::periodic::solve_at_k;
use deltabound::{momentum, ndelta, BoundState, DeltaPotential, Parity, PotentialInput};
use serde::Serialize;
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "deltabound", version, about = "Bound states of 1D delta-well potentials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the bound-state spectrum of a potential
    Solve(SolveArgs),
    /// Sample a normalized bound-state wavefunction on a uniform grid
    Wavefunction(WavefunctionArgs),
    /// Sample the momentum-space profile of a bound state
    Momentum(MomentumArgs),
    /// Cross-check the spectrum against a finite-difference grid solver
    Verify(VerifyArgs),
    /// Sweep the negative-energy band of an infinite lattice of equal wells
    Bands(BandsArgs),
}

#[derive(Args)]
struct ScanArgs {
    /// Potential JSON file, or '-' to read from stdin
    input: String,
    /// Root-refinement tolerance for decay rates
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Scan ceiling for decay rates (default: half the total |strength| + 1)
    #[arg(long)]
    b_max: Option<f64>,
    /// Scan step (default: min(tol * 1e6, b_max / 1000))
    #[arg(long)]
    scan_step: Option<f64>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    scan: ScanArgs,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct WavefunctionArgs {
    #[command(flatten)]
    scan: ScanArgs,
    /// Left edge of the sample grid
    #[arg(long, allow_hyphen_values = true, default_value_t = -5.0)]
    x_lo: f64,
    /// Right edge of the sample grid
    #[arg(long, allow_hyphen_values = true, default_value_t = 5.0)]
    x_hi: f64,
    /// Number of uniform samples
    #[arg(long, default_value_t = 101)]
    samples: usize,
    /// Bound-state index (0 = ground state)
    #[arg(long, default_value_t = 0)]
    state: usize,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct MomentumArgs {
    #[command(flatten)]
    scan: ScanArgs,
    /// Left edge of the wavenumber grid
    #[arg(long, allow_hyphen_values = true, default_value_t = -5.0)]
    k_lo: f64,
    /// Right edge of the wavenumber grid
    #[arg(long, allow_hyphen_values = true, default_value_t = 5.0)]
    k_hi: f64,
    /// Number of uniform samples
    #[arg(long, default_value_t = 101)]
    samples: usize,
    /// Bound-state index (0 = ground state)
    #[arg(long, default_value_t = 0)]
    state: usize,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Potential JSON file, or '-' to read from stdin
    input: String,
    /// Grid spacing (default: min(5e-3, closest well spacing / 10))
    #[arg(long)]
    grid_h: Option<f64>,
    /// Domain padding beyond the outermost wells (default: 25 / b_expected)
    #[arg(long)]
    padding: Option<f64>,
    /// Number of grid eigenvalues to extract (default: one per bound state)
    #[arg(long)]
    count: Option<usize>,
    /// Largest acceptable relative energy disagreement
    #[arg(long, default_value_t = 1e-2)]
    max_rel_error: f64,
}

#[derive(Args)]
struct BandsArgs {
    /// Well strength a (natural units)
    a: f64,
    /// Lattice spacing d
    d: f64,
    /// Number of Bloch wavenumbers sampled uniformly on [0, pi/d]
    #[arg(long, default_value_t = 21)]
    k_samples: usize,
    /// Root-refinement tolerance for decay rates
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, clap::ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum CliError {
    Input(String),
    Verification(String),
    Solver(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) => 2,
            CliError::Solver(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Verification(m) | CliError::Solver(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Wavefunction(args) => cmd_wavefunction(args),
        Command::Momentum(args) => cmd_momentum(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bands(args) => cmd_bands(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

/// Formats a float with 17 significant digits, locale-independent.
fn g17(x: f64) -> String {
    format!("{x:.16e}")
}

fn read_input(path: &str) -> Result<(DeltaPotential, Option<PhysicalSpec>), CliError> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))?
    };
    let input =
        PotentialInput::from_json(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    input.resolve().map_err(|e| CliError::Input(format!("{path}: {e}")))
}

/// Runs the decay-rate scan with CLI overrides applied to the defaults;
/// warnings go to stderr.
fn run_scan(pot: &DeltaPotential, args: &ScanArgs) -> Result<ScanResult, CliError> {
    let defaults = ScanParams::defaults_for(pot);
    let tol = args.tol;
    let b_max = args.b_max.unwrap_or(defaults.b_max);
    let step = args.scan_step.unwrap_or_else(|| (tol * 1e6).min(b_max / 1000.0));
    let result =
        scan_bound_states(pot, b_max, step, tol).map_err(|e| CliError::Input(e.to_string()))?;
    for warning in &result.warnings {
        eprintln!("warning: {warning}");
    }
    Ok(result)
}

fn pick_state(states: &[BoundState], index: usize) -> Result<&BoundState, CliError> {
    states.get(index).ok_or_else(|| {
        CliError::Input(format!(
            "state index {index} out of range: spectrum has {} state(s)",
            states.len()
        ))
    })
}

#[derive(Serialize)]
struct StateRecord {
    index: usize,
    b: f64,
    energy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    energy_physical: Option<f64>,
    parity: Parity,
    coeffs: Vec<f64>,
}

#[derive(Serialize)]
struct SpectrumOutput {
    states: Vec<StateRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    message: Option<&'static str>,
}

fn cmd_solve(args: SolveArgs) -> Result<(), CliError> {
    let (pot, physical) = read_input(&args.scan.input)?;
    let result = run_scan(&pot, &args.scan)?;
    let records: Vec<StateRecord> = result
        .states
        .iter()
        .enumerate()
        .map(|(index, st)| StateRecord {
            index,
            b: st.b(),
            energy: st.energy(),
            energy_physical: physical.as_ref().map(|spec| energy_physical(st, spec)),
            parity: st.parity(),
            coeffs: st.coeffs().to_vec(),
        })
        .collect();

    match args.format {
        Format::Json => {
            let message = records.is_empty().then_some("no bound states");
            let out = SpectrumOutput { states: records, message };
            println!("{}", serde_json::to_string(&out).expect("spectrum serializes"));
        }
        Format::Csv => {
            let n = pot.len();
            let mut header = vec!["index".into(), "b".into(), "energy".into()];
            if physical.is_some() {
                header.push("energy_physical".into());
            }
            header.push("parity".into());
            header.extend((0..n).map(|j| format!("c{j}")));
            println!("{}", header.join(","));
            if records.is_empty() {
                println!("no bound states");
            }
            for r in &records {
                let mut fields = vec![r.index.to_string(), g17(r.b), g17(r.energy)];
                if let Some(ep) = r.energy_physical {
                    fields.push(g17(ep));
                }
                fields.push(r.parity.to_string());
                fields.extend(r.coeffs.iter().map(|&c| g17(c)));
                println!("{}", fields.join(","));
            }
        }
    }
    Ok(())
}

/// Uniform grid with `samples` points on [lo, hi]; a single sample sits at lo.
fn sample_grid(lo: f64, hi: f64, samples: usize) -> Result<Vec<f64>, CliError> {
    if samples == 0 {
        return Err(CliError::Input("samples must be at least 1".into()));
    }
    if !(lo.is_finite() && hi.is_finite()) || hi < lo {
        return Err(CliError::Input(format!("invalid sample range [{lo}, {hi}]")));
    }
    if samples == 1 {
        return Ok(vec![lo]);
    }
    let h = (hi - lo) / (samples - 1) as f64;
    Ok((0..samples).map(|i| lo + i as f64 * h).collect())
}

#[derive(Serialize)]
struct WavefunctionRow {
    x: f64,
    phi: f64,
}

fn cmd_wavefunction(args: WavefunctionArgs) -> Result<(), CliError> {
    let (pot, _) = read_input(&args.scan.input)?;
    let result = run_scan(&pot, &args.scan)?;
    let state = pick_state(&result.states, args.state)?;
    let rows: Vec<WavefunctionRow> = sample_grid(args.x_lo, args.x_hi, args.samples)?
        .into_iter()
        .map(|x| WavefunctionRow { x, phi: ndelta::reconstruct(state, &pot, x) })
        .collect();
    match args.format {
        Format::Json => println!("{}", serde_json::to_string(&rows).expect("rows serialize")),
        Format::Csv => {
            println!("x,phi");
            for row in &rows {
                println!("{},{}", g17(row.x), g17(row.phi));
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct MomentumRow {
    k: f64,
    re_phi: f64,
    im_phi: f64,
}

fn cmd_momentum(args: MomentumArgs) -> Result<(), CliError> {
    let (pot, _) = read_input(&args.scan.input)?;
    let result = run_scan(&pot, &args.scan)?;
    let state = pick_state(&result.states, args.state)?;
    let rows: Vec<MomentumRow> = sample_grid(args.k_lo, args.k_hi, args.samples)?
        .into_iter()
        .map(|k| {
            let phi = momentum::phi_k(state, &pot, k);
            MomentumRow { k, re_phi: phi.re, im_phi: phi.im }
        })
        .collect();
    match args.format {
        Format::Json => println!("{}", serde_json::to_string(&rows).expect("rows serialize")),
        Format::Csv => {
            println!("k,re_phi,im_phi");
            for row in &rows {
                println!("{},{},{}", g17(row.k), g17(row.re_phi), g17(row.im_phi));
            }
        }
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let (pot, _) = read_input(&args.input)?;
    let defaults = GridParams::defaults_for(&pot);
    let params = GridParams {
        h: args.grid_h.unwrap_or(defaults.h),
        padding: args.padding.unwrap_or(defaults.padding),
    };
    let report = compare(&pot, args.count, params).map_err(|e| match e {
        OracleError::Scan(inner) => CliError::Solver(inner.to_string()),
        other => CliError::Input(other.to_string()),
    })?;
    println!("{}", serde_json::to_string(&report).expect("report serializes"));
    if let Some(worst) = report.max_rel_error() {
        if worst > args.max_rel_error {
            return Err(CliError::Verification(format!(
                "verification failed: max relative error {worst:.3e} exceeds {:.3e}",
                args.max_rel_error
            )));
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct BandRow {
    k_bloch: f64,
    b: f64,
    energy: f64,
}

fn cmd_bands(args: BandsArgs) -> Result<(), CliError> {
    if !(args.d.is_finite() && args.d > 0.0) {
        return Err(CliError::Input(format!("lattice spacing must be positive, got {}", args.d)));
    }
    if !(args.a.is_finite() && args.a > 0.0) {
        return Err(CliError::Input(format!("well strength must be positive, got {}", args.a)));
    }
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(CliError::Input(format!("tolerance must be positive, got {}", args.tol)));
    }
    if args.k_samples == 0 {
        return Err(CliError::Input("k-samples must be at least 1".into()));
    }

    let k_edge = std::f64::consts::PI / args.d;
    let ks: Vec<f64> = if args.k_samples == 1 {
        vec![0.0]
    } else {
        (0..args.k_samples)
            .map(|i| k_edge * i as f64 / (args.k_samples - 1) as f64)
            .collect()
    };
    let mut rows = Vec::with_capacity(ks.len());
    let mut omitted = 0usize;
    for k in ks {
        match solve_at_k(args.a, args.d, k, args.tol) {
            Some(point) => {
                rows.push(BandRow { k_bloch: point.k_bloch, b: point.b, energy: point.energy() })
            }
            None => omitted += 1,
        }
    }
    if omitted > 0 {
        eprintln!(
            "warning: band merges into the continuum before K = pi/d; {omitted} row(s) omitted"
        );
    }
    match args.format {
        Format::Json => println!("{}", serde_json::to_string(&rows).expect("rows serialize")),
        Format::Csv => {
            println!("k_bloch,b,energy");
            for row in &rows {
                println!("{},{},{}", g17(row.k_bloch), g17(row.b), g17(row.energy));
            }
        }
    }
    Ok(())
}
