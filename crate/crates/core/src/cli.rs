//! Command-line frontend.
//!
//! Exit codes: 0 success, 1 verification failure, 2 malformed input,
//! 3 dimension mismatch, 4 I/O failure.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::coherence::{chain_split, theorem1_split};
use crate::correlations::{bd_report, bell_diagonal, bell_spectrum, discord_oracle, BellDiagonalParams};
use crate::duality::duality_budget;
use crate::entropy::von_neumann;
use crate::error::{QcohError, Result};
use crate::figures::{figure_rows, to_csv, Figure};
use crate::io::{matrix_to_rows, read_state, resolve_basis, MatrixFile};
use crate::verify::{run_with_backend, Backend, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "qcoh", version, about = "Basis-independent quantum coherence toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// BI coherence of a state and its split against one basis.
    Compute {
        #[arg(long)]
        state: PathBuf,
        /// `computational`, `fourier` or a basis file.
        #[arg(long, default_value = "computational")]
        basis: String,
    },
    /// Successive dephasing through several bases.
    Decompose {
        #[arg(long)]
        state: PathBuf,
        /// Comma-separated list of `computational`, `fourier` or basis files.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        bases: Vec<String>,
    },
    /// Wave / particle / entanglement budget.
    Duality {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value = "computational")]
        basis: String,
    },
    /// Closed-form report for a Bell-diagonal state.
    BellDiagonal {
        /// `c1,c2,c3`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        c: Vec<f64>,
        /// Also run the brute-force discord search with this many grid steps.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Emit a figure dataset as CSV.
    Figure {
        #[arg(value_parser = parse_figure)]
        which: Figure,
    },
    /// Run every property suite.
    Verify {
        #[arg(long, env = "QCOH_SEED", default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Grid steps for the discord oracle suite.
        #[arg(long, default_value_t = 60)]
        grid: usize,
        /// Negative control: swap in an entropy computed in nats.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn parse_figure(s: &str) -> std::result::Result<Figure, String> {
    s.parse().map_err(|e: QcohError| e.to_string())
}

#[derive(Debug, Serialize)]
struct ComputeReport {
    dim: usize,
    entropy: f64,
    bi_coherence: f64,
    basis_coherence: f64,
    residual: f64,
}

#[derive(Debug, Serialize)]
struct DecomposeReport {
    dim: usize,
    bi_coherence: f64,
    contributions: Vec<f64>,
    residuals: Vec<f64>,
    terminal_residual: f64,
    telescoped: f64,
    states: Vec<MatrixFile>,
}

#[derive(Debug, Serialize)]
struct DualityReport {
    dim: usize,
    wave: f64,
    particle: f64,
    entanglement: f64,
    total: f64,
}

#[derive(Debug, Serialize)]
struct BellReport {
    c: [f64; 3],
    spectrum: Vec<f64>,
    bi_coherence: f64,
    comp_coherence: f64,
    discord: f64,
    entanglement: f64,
    hierarchy_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    discord_oracle: Option<f64>,
}

/// One header line and one value line.
fn flat_csv(pairs: &[(&str, f64)]) -> String {
    let header: Vec<&str> = pairs.iter().map(|(k, _)| *k).collect();
    to_csv(&header, &[pairs.iter().map(|(_, v)| *v).collect()])
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

/// What a command produced: text plus the exit code to report.
struct Output {
    text: String,
    code: i32,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Output { text, code: EXIT_OK }
    }
}

fn execute(cli: &Cli) -> Result<Output> {
    let csv = cli.format == Some(Format::Csv);
    Ok(match &cli.command {
        Command::Compute { state, basis } => {
            let rho = read_state(state)?;
            let b = resolve_basis(basis, rho.dim())?;
            let split = theorem1_split(&rho, &b)?;
            let r = ComputeReport {
                dim: rho.dim(),
                entropy: von_neumann(&rho),
                bi_coherence: split.total,
                basis_coherence: split.basis_part,
                residual: split.residual,
            };
            if csv {
                flat_csv(&[
                    ("dim", r.dim as f64),
                    ("entropy", r.entropy),
                    ("bi_coherence", r.bi_coherence),
                    ("basis_coherence", r.basis_coherence),
                    ("residual", r.residual),
                ])
            } else {
                json(&r)
            }
            .into()
        }
        Command::Decompose { state, bases } => {
            let rho = read_state(state)?;
            let bases = bases.iter().map(|s| resolve_basis(s, rho.dim())).collect::<Result<Vec<_>>>()?;
            let rep = chain_split(&rho, &bases)?;
            if csv {
                let rows: Vec<Vec<f64>> = rep
                    .contributions
                    .iter()
                    .zip(&rep.residuals)
                    .enumerate()
                    .map(|(k, (c, r))| vec![(k + 1) as f64, *c, *r])
                    .collect();
                to_csv(&["step", "contribution", "residual"], &rows).into()
            } else {
                json(&DecomposeReport {
                    dim: rho.dim(),
                    bi_coherence: rep.total,
                    terminal_residual: rep.terminal_residual(),
                    telescoped: rep.telescoped(),
                    states: rep
                        .states
                        .iter()
                        .map(|s| MatrixFile { dim: s.dim(), rows: matrix_to_rows(s.matrix()) })
                        .collect(),
                    contributions: rep.contributions,
                    residuals: rep.residuals,
                })
                .into()
            }
        }
        Command::Duality { state, basis } => {
            let rho = read_state(state)?;
            let b = resolve_basis(basis, rho.dim())?;
            let bud = duality_budget(&rho, &b)?;
            let r = DualityReport {
                dim: rho.dim(),
                wave: bud.wave,
                particle: bud.particle,
                entanglement: bud.entanglement,
                total: bud.total,
            };
            if csv {
                flat_csv(&[
                    ("dim", r.dim as f64),
                    ("wave", r.wave),
                    ("particle", r.particle),
                    ("entanglement", r.entanglement),
                    ("total", r.total),
                ])
            } else {
                json(&r)
            }
            .into()
        }
        Command::BellDiagonal { c, grid } => {
            if c.len() != 3 {
                return Err(QcohError::InvalidArgument(format!("--c takes three values c1,c2,c3, got {}", c.len())));
            }
            let p = BellDiagonalParams::new(c[0], c[1], c[2])?;
            let rep = bd_report(&p);
            let oracle = grid.map(|g| discord_oracle(&bell_diagonal(&p), g)).transpose()?;
            let r = BellReport {
                c: p.c(),
                spectrum: bell_spectrum(&p),
                bi_coherence: rep.bi_coherence,
                comp_coherence: rep.comp_coherence,
                discord: rep.discord,
                entanglement: rep.entanglement,
                hierarchy_ok: rep.hierarchy_ok,
                discord_oracle: oracle,
            };
            if csv {
                let mut pairs = vec![
                    ("c1", r.c[0]),
                    ("c2", r.c[1]),
                    ("c3", r.c[2]),
                    ("bi_coherence", r.bi_coherence),
                    ("comp_coherence", r.comp_coherence),
                    ("discord", r.discord),
                    ("entanglement", r.entanglement),
                    ("hierarchy_ok", if r.hierarchy_ok { 1.0 } else { 0.0 }),
                ];
                if let Some(o) = r.discord_oracle {
                    pairs.push(("discord_oracle", o));
                }
                flat_csv(&pairs)
            } else {
                json(&r)
            }
            .into()
        }
        Command::Figure { which } => {
            let (header, rows) = figure_rows(*which)?;
            if cli.format == Some(Format::Json) {
                json(&serde_json::json!({ "columns": header, "rows": rows })).into()
            } else {
                to_csv(header, &rows).into()
            }
        }
        Command::Verify { seed, trials, grid, inject_fault } => {
            if *trials == 0 {
                return Err(QcohError::InvalidArgument("trials must be positive".into()));
            }
            if *grid < 2 {
                return Err(QcohError::InvalidArgument("grid must be >= 2".into()));
            }
            let backend = if *inject_fault { Backend::broken_natural_log() } else { Backend::default() };
            let summary =
                run_with_backend(&VerifyConfig { seed: *seed, trials: *trials, discord_grid: *grid }, &backend);
            Output { text: json(&summary), code: if summary.all_passed { EXIT_OK } else { EXIT_VERIFY_FAILED } }
        }
    })
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| QcohError::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(QcohError::from)
        }
    }
}

/// Run a parsed command, print its output and return the exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli).and_then(|o| emit(&o.text, cli.out.as_deref()).map(|_| o.code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Entry point for the binary. Argument errors exit with code 2.
pub fn main_from_env() -> i32 {
    match Cli::try_parse() {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}
