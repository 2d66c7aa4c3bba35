//! The `cvghz` command line.
//!
//! Exit codes: 0 success (or paradox found), 1 well-formed but negative
//! result, 2 input error, 3 resource refusal.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::comb::{convergence_study, CombParams, SimError};
use crate::format::{emit_set, oracle_json, oracle_text, verify_json, verify_text};
use crate::oracle::{self, OracleConfig, OracleError, DEFAULT_MAX_DIM, DEFAULT_SEED};
use crate::paradox::{self, OperatorSet, SearchError, SearchSpace};
use crate::weyl::LatticeParams;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;

/// Oracle confirmations of exact algebra.
pub const ALGEBRA_TOL: f64 = 1e-10;
/// Eigensolver outputs.
pub const EIGEN_TOL: f64 = 1e-8;
/// Largest acceptable final deviation in `simulate`.
pub const SIMULATE_TOL: f64 = 0.05;

#[derive(Debug, Parser)]
#[command(name = "cvghz", version, about = "Continuous-variable GHZ paradoxes from phase-space translations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exactly verify that an operator set is a GHZ paradox.
    Verify {
        #[command(flatten)]
        input: SetInput,
        /// Print JSON instead of the aligned text report.
        #[arg(long)]
        json: bool,
    },
    /// Exhaustively search for paradoxes on a bounded exponent box.
    Search {
        #[arg(long)]
        parties: usize,
        /// Lattice dimension parameter d.
        #[arg(long)]
        dim: i64,
        #[arg(long)]
        operators: usize,
        #[arg(long = "max-exp")]
        max_exp: i64,
        /// Write each canonical set as an operator-set file in this directory.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Refuse when the enumeration estimate exceeds this.
        #[arg(long = "max-nodes", default_value_t = paradox::DEFAULT_MAX_NODES)]
        max_nodes: u128,
    },
    /// Re-check a set with dense clock-and-shift matrices.
    Oracle {
        #[command(flatten)]
        input: SetInput,
        #[arg(long = "max-dim", default_value_t = DEFAULT_MAX_DIM)]
        max_dim: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Convergence of the GHZ comb state towards the joint eigenvalues.
    Simulate {
        /// Comma-separated peak widths, descending.
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        #[arg(long, default_value_t = CombParams::default().n_peaks)]
        peaks: usize,
        #[arg(long, default_value_t = CombParams::default().envelope_width)]
        envelope: f64,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct SetInput {
    /// Built-in set: v4 or w6.
    #[arg(long)]
    set: Option<String>,
    /// Operator-set JSON file.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl SetInput {
    fn load(&self) -> Result<(OperatorSet, Option<String>), String> {
        if let Some(name) = &self.set {
            let set = paradox::builtin(name).map_err(|e| e.to_string())?;
            return Ok((set, Some(name.to_ascii_lowercase())));
        }
        let path = self.file.as_deref().expect("clap enforces one input");
        load_file(path)
    }
}

fn load_file(path: &Path) -> Result<(OperatorSet, Option<String>), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file = crate::format::OperatorSetFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let set = file.to_set().map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((set, file.name))
}

/// Parse and run one invocation, writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match cli.command {
        Command::Verify { input, json } => cmd_verify(&input, json, out, err),
        Command::Search { parties, dim, operators, max_exp, emit, max_nodes } => {
            cmd_search(parties, dim, operators, max_exp, emit.as_deref(), max_nodes, out, err)
        }
        Command::Oracle { input, max_dim, seed, json } => cmd_oracle(&input, max_dim, seed, json, out, err),
        Command::Simulate { delta, peaks, envelope, out: path, seed } => {
            cmd_simulate(&delta, peaks, envelope, path.as_deref(), seed, out, err)
        }
    }
}

fn fail(err: &mut dyn Write, code: i32, msg: impl std::fmt::Display) -> i32 {
    let _ = writeln!(err, "error: {msg}");
    code
}

fn cmd_verify(input: &SetInput, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (set, name) = match input.load() {
        Ok(v) => v,
        Err(e) => return fail(err, EXIT_INPUT, e),
    };
    let report = match paradox::verify(&set) {
        Ok(r) => r,
        Err(e) => return fail(err, EXIT_INPUT, e),
    };
    let text =
        if json { verify_json(&set, name.as_deref(), &report) } else { verify_text(&set, name.as_deref(), &report) };
    let _ = out.write_all(text.as_bytes());
    if report.is_paradox {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    parties: usize,
    dim: i64,
    operators: usize,
    max_exp: i64,
    emit: Option<&Path>,
    max_nodes: u128,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let params = match LatticeParams::new(dim) {
        Ok(p) => p,
        Err(e) => return fail(err, EXIT_INPUT, e),
    };
    let space = match SearchSpace::boxed(params, parties, operators, max_exp) {
        Ok(s) => s.with_max_nodes(max_nodes),
        Err(e) => return fail(err, EXIT_INPUT, e),
    };
    let outcome = match space.run() {
        Ok(o) => o,
        Err(e @ SearchError::TooLarge { .. }) => return fail(err, EXIT_REFUSED, e),
        Err(e) => return fail(err, EXIT_INPUT, e),
    };
    let _ = writeln!(out, "search: {parties} parties, d = {dim}, {operators} operators, |exponent| <= {max_exp}");
    let _ = writeln!(
        out,
        "estimate {} sets, {} nodes visited, {} raw hits",
        space.estimate(),
        outcome.nodes,
        outcome.raw_hits
    );
    let _ = writeln!(out, "found {} canonical paradox classes", outcome.sets.len());
    for (i, set) in outcome.sets.iter().enumerate() {
        let _ = writeln!(out, "\n#{}", i + 1);
        let _ = write!(out, "{set}");
    }
    if let Some(dir) = emit {
        if let Err(e) = std::fs::create_dir_all(dir) {
            return fail(err, EXIT_INPUT, format!("{}: {e}", dir.display()));
        }
        for (i, set) in outcome.sets.iter().enumerate() {
            let name = format!("search-p{parties}-d{dim}-k{operators}-e{max_exp}-{:04}", i + 1);
            let path = dir.join(format!("{name}.json"));
            if let Err(e) = std::fs::write(&path, emit_set(set, Some(&name))) {
                return fail(err, EXIT_INPUT, format!("{}: {e}", path.display()));
            }
        }
    }
    EXIT_OK
}

fn cmd_oracle(
    input: &SetInput,
    max_dim: usize,
    seed: u64,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let (set, name) = match input.load() {
        Ok(v) => v,
        Err(e) => return fail(err, EXIT_INPUT, e),
    };
    let config = OracleConfig { max_dim, seed };
    let numeric = match oracle::check_set(&set, &config) {
        Ok(r) => r,
        Err(e @ OracleError::DimensionCeiling { .. }) => return fail(err, EXIT_REFUSED, e),
        Err(e) => return fail(err, EXIT_INPUT, e),
    };
    let eigen = match oracle::joint_eigenvector(&set, &config) {
        Ok(e) => Some(e),
        Err(OracleError::NotCommuting { .. }) => None,
        Err(e) => return fail(err, EXIT_INPUT, e),
    };
    let eigen_ok = eigen.as_ref().is_some_and(|e| {
        let unit = e.eigenvalues.iter().all(|l| (l.norm() - 1.0).abs() < EIGEN_TOL);
        let product_ok = numeric.symbolic_product_phase.is_none_or(|p| {
            let (re, im) = p.to_unit();
            (e.eigenvalue_product() - num_complex::Complex64::new(re, im)).norm() < EIGEN_TOL
        });
        unit && product_ok && e.residual < EIGEN_TOL
    });
    let pass = numeric.agrees(ALGEBRA_TOL) && eigen_ok;
    let text = if json {
        oracle_json(name.as_deref(), &numeric, eigen.as_ref(), pass)
    } else {
        oracle_text(name.as_deref(), &numeric, eigen.as_ref(), pass)
    };
    let _ = out.write_all(text.as_bytes());
    if pass {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn parse_deltas(list: &str) -> Result<Vec<f64>, String> {
    let deltas = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|e| format!("--delta: `{s}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    if deltas.is_empty() {
        return Err("--delta: need at least one width".into());
    }
    Ok(deltas)
}

fn cmd_simulate(
    delta: &str,
    peaks: usize,
    envelope: f64,
    path: Option<&Path>,
    seed: u64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let deltas = match parse_deltas(delta) {
        Ok(d) => d,
        Err(e) => return fail(err, EXIT_INPUT, e),
    };
    let params = CombParams { width: deltas[0], n_peaks: peaks, envelope_width: envelope };
    let config = OracleConfig { max_dim: DEFAULT_MAX_DIM, seed };
    let table = match convergence_study(&deltas, &params, &config) {
        Ok(t) => t,
        Err(e @ (SimError::Oracle(_) | SimError::ZeroNorm)) => return fail(err, EXIT_NEGATIVE, e),
        Err(e) => return fail(err, EXIT_INPUT, e),
    };
    let csv = table.to_csv();
    match path {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &csv) {
                return fail(err, EXIT_INPUT, format!("{}: {e}", p.display()));
            }
        }
        None => {
            let _ = out.write_all(csv.as_bytes());
        }
    }
    let monotone = table.is_monotone();
    let final_ok = table.final_deviation().is_some_and(|d| d < SIMULATE_TOL);
    if !monotone {
        let _ = writeln!(err, "deviation is not non-increasing over the widths given");
    }
    if !final_ok {
        let _ = writeln!(err, "final deviation is not below {SIMULATE_TOL}");
    }
    if monotone && final_ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}
