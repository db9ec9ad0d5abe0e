use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use multimodal_core::analysis::{
    analytic_cr_limit, audit_min_growth, audit_odd_lower_bound, empirical_cr, extract_witness,
    grid_targets, worst_case_targets, DEFAULT_ETA,
};
use multimodal_core::solver::{self, is_odd};
use multimodal_core::strategies::{build, compliant_plan, StrategyParams, Variant};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::report::{AuditOutput, AuditRecord, ReportFile};
use crate::table::{table_csv, table_rows};
use crate::trace::TraceFile;

#[derive(Debug, Parser)]
#[command(
    name = "multimodal",
    version,
    about = "Linear search with multiple search modes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal competitive ratio for p = 1..=p_max, as CSV.
    Table {
        #[arg(long, default_value_t = 16)]
        p_max: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a strategy and write its trace.
    Simulate {
        #[arg(long)]
        p: u32,
        /// OddOptimal, EvenOptimal, PracticalOdd or PracticalEven. Defaults
        /// to the optimal variant for the parity of p, practical if --eps is given.
        #[arg(long)]
        variant: Option<String>,
        #[arg(long)]
        eps: Option<f64>,
        /// Growth factor override for the idealized variants.
        #[arg(long)]
        a: Option<f64>,
        /// Split override for EvenOptimal.
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        rounds: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the competitive ratio of a trace at its critical targets.
    Evaluate {
        #[arg(long)]
        trace: PathBuf,
        /// Rounds to evaluate; defaults to all rounds in the trace.
        #[arg(long)]
        rounds: Option<usize>,
        /// Relative outward offset of critical targets.
        #[arg(long, default_value_t = DEFAULT_ETA)]
        eta: f64,
        /// Extra uniformly spaced targets per round.
        #[arg(long, default_value_t = 1000)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract the witness sequences of a trace and check necessary conditions.
    Audit {
        #[arg(long)]
        trace: PathBuf,
        /// Ratio to test the growth condition against; defaults to the
        /// analytic ratio of the trace parameters.
        #[arg(long)]
        claimed_cr: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Optimal parameters for p.
    Params {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Compliant cell plan for one thorough search.
    Cells {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        eps: f64,
        /// Target ratio; defaults to the optimal ratio for p.
        #[arg(long)]
        c: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long)]
        delta: f64,
    },
}

/// Runs the tool and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Table { p_max, out } => emit(out.as_deref(), &table_csv(&table_rows(p_max)?)),
        Command::Simulate {
            p,
            variant,
            eps,
            a,
            r,
            rounds,
            out,
        } => {
            let params = simulate_params(p, variant.as_deref(), eps, a, r)?;
            let trace = TraceFile::from_strategy(&build(&params, rounds)?);
            match out {
                Some(path) => trace.save(&path),
                None => {
                    let mut buf = Vec::new();
                    trace
                        .write_to(&mut buf)
                        .map_err(|e| CliError::io("<stdout>", e))?;
                    emit(None, &String::from_utf8(buf).expect("JSON is UTF-8"))
                }
            }
        }
        Command::Evaluate {
            trace,
            rounds,
            eta,
            grid,
            out,
        } => {
            let t = TraceFile::load(&trace)?;
            let rounds = rounds.unwrap_or(t.header.rounds);
            if rounds == 0 || rounds > t.header.rounds {
                return Err(CliError::Validation(format!(
                    "rounds must lie in 1..={}",
                    t.header.rounds
                )));
            }
            let mut targets = worst_case_targets(&t.params, rounds, eta)?;
            if grid > 0 {
                targets.extend(grid_targets(&t.params, rounds, grid)?);
            }
            let report = empirical_cr(&t.params, &t.trajectory, rounds, &targets)?;
            emit(out.as_deref(), &to_json(&ReportFile::from(&report)))
        }
        Command::Audit {
            trace,
            claimed_cr,
            out,
        } => {
            let t = TraceFile::load(&trace)?;
            let claimed_cr = match claimed_cr {
                Some(c) => c,
                None => analytic_cr_limit(&t.params)?,
            };
            let w = extract_witness(&t.trajectory, t.trajectory.end_time())
                .map_err(|e| CliError::Validation(format!("witness extraction failed: {e}")))?;
            let mut audits = Vec::new();
            if is_odd(t.params.p) {
                audits.push(audit_odd_lower_bound(&w, t.params.p)?);
            }
            audits.push(audit_min_growth(&w, claimed_cr)?);
            let output = AuditOutput {
                p: t.params.p,
                claimed_cr,
                periods: w.horizon,
                x_seq: w.x_seq.clone(),
                t_seq: w.t_seq.clone(),
                audits: audits.iter().map(AuditRecord::from).collect(),
            };
            emit(out.as_deref(), &to_json(&output))?;
            let failed: Vec<String> = audits
                .iter()
                .filter_map(|a| {
                    a.first_violation
                        .map(|i| format!("{} violated at index {i}", a.name))
                })
                .collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::AuditViolation(failed.join("; ")))
            }
        }
        Command::Params { p, eps } => emit(None, &to_json(&params_json(p, eps)?)),
        Command::Cells {
            p,
            eps,
            c,
            x,
            delta,
        } => {
            let c = match c {
                Some(c) => c,
                None => solver::optimal_cr(p)?,
            };
            let plan = compliant_plan(x, delta, p, c, eps)?;
            let value = json!({
                "p": p,
                "c": c,
                "eps": eps,
                "x": x,
                "delta": delta,
                "n": plan.n,
                "p_prime": plan.p_prime,
                "first_width": plan.first_width,
                "ratio": plan.ratio,
                "widths": plan.widths,
                "ceiling": solver::practical_cell_ceiling(p, eps),
            });
            emit(None, &to_json(&value))
        }
    }
}

fn simulate_params(
    p: u32,
    variant: Option<&str>,
    eps: Option<f64>,
    a: Option<f64>,
    r: Option<f64>,
) -> Result<StrategyParams, CliError> {
    if p == 0 {
        return Err(CliError::Validation("p must be at least 1".into()));
    }
    let variant = match variant {
        Some(name) => Variant::from_name(name)
            .ok_or_else(|| CliError::Validation(format!("unknown variant {name:?}")))?,
        None => match (eps.is_some(), is_odd(p)) {
            (true, true) => Variant::PracticalOdd,
            (true, false) => Variant::PracticalEven,
            (false, true) => Variant::OddOptimal,
            (false, false) => Variant::EvenOptimal,
        },
    };
    if variant.for_odd_p() != is_odd(p) {
        return Err(multimodal_core::Error::ParityMismatch {
            p,
            expected_odd: variant.for_odd_p(),
        }
        .into());
    }
    if variant.is_practical() {
        if a.is_some() || r.is_some() {
            return Err(CliError::Validation(
                "--a and --r apply to the idealized variants only".into(),
            ));
        }
        let eps =
            eps.ok_or_else(|| CliError::Validation("practical variants need --eps".into()))?;
        return Ok(StrategyParams::practical(p, eps)?);
    }
    if eps.is_some() {
        return Err(CliError::Validation(
            "--eps applies to practical variants only".into(),
        ));
    }
    if variant.for_odd_p() {
        if r.is_some() {
            return Err(CliError::Validation("--r applies to even p only".into()));
        }
        let a = match a {
            Some(a) => a,
            None => solver::odd_optimal(p)?.a,
        };
        return Ok(StrategyParams::odd(p, a)?);
    }
    let (a, r) = match (a, r) {
        (None, None) => {
            let e = solver::even_optimal(p, solver::DEFAULT_ROOT_TOL)?;
            (e.a, e.r)
        }
        (Some(a), None) => (a, solver::balanced_split(p, a)),
        (None, Some(r)) => (solver::even_optimal(p, solver::DEFAULT_ROOT_TOL)?.a, r),
        (Some(a), Some(r)) => (a, r),
    };
    Ok(StrategyParams::even(p, a, r)?)
}

fn params_json(p: u32, eps: Option<f64>) -> Result<Value, CliError> {
    if p == 0 {
        return Err(CliError::Validation("p must be at least 1".into()));
    }
    let mut value = if is_odd(p) {
        let o = solver::odd_optimal(p)?;
        json!({ "p": p, "cr": o.cr, "a": o.a })
    } else {
        let e = solver::even_optimal(p, solver::DEFAULT_ROOT_TOL)?;
        json!({
            "p": p,
            "cr": e.c_star,
            "a": e.a,
            "r": e.r,
            "bracket": [e.bracket.0, e.bracket.1],
        })
    };
    if let Some(eps) = eps {
        let params = StrategyParams::practical(p, eps)?;
        value["eps"] = json!(eps);
        value["variant"] = json!(params.variant.name());
        value["cell_ceiling"] = json!(solver::practical_cell_ceiling(p, eps));
    }
    Ok(value)
}
