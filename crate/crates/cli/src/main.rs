//! `degforest`: evaluate, build, solve and verify extremal forest realizations.
//!
//! Exit codes: 0 success, 1 input error, 2 verification mismatch,
//! 3 enumeration size cap exceeded.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use degforest::construct::extremal_build;
use degforest::forest::Forest;
use degforest::formulas::extremal_values;
use degforest::oracle::{
    empirical_extremes, swap_search_gamma, sweep_sequences, DEFAULT_SIZE_CAP, DEFAULT_SWEEP_MAX_N,
};
use degforest::{DegreeSequence, Error};

#[derive(Parser)]
#[command(
    name = "degforest",
    version,
    about = "Extremal domination and independence numbers of forests with a given degree sequence"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SequenceArg {
    /// Degrees, comma or whitespace separated (e.g. 3,2,2,1,1,1).
    #[arg(required = true, num_args = 1..)]
    sequence: Vec<String>,
}

impl SequenceArg {
    fn parse(&self) -> Result<DegreeSequence, CliError> {
        Ok(self.sequence.join(" ").parse::<DegreeSequence>()?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form gamma_max and alpha_min of a sequence.
    Eval(SequenceArg),
    /// Build an extremal realization and certify it with the exact solvers.
    Build {
        #[command(flatten)]
        seq: SequenceArg,
        /// Write the forest document here.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Exact domination and independence numbers of a forest file.
    Solve { path: PathBuf },
    /// Compare the closed formulas against exhaustive enumeration.
    Verify {
        #[command(flatten)]
        seq: SequenceArg,
        /// Largest number of non-zero entries to enumerate.
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        cap: usize,
        /// Write the enumeration report here.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Verify every admissible sequence up to a length bound.
    Sweep {
        #[arg(long, default_value_t = DEFAULT_SWEEP_MAX_N)]
        max_n: usize,
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        cap: usize,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
    },
    /// Edge-swap local search for a realization with large domination number.
    SwapSearch {
        #[command(flatten)]
        seq: SequenceArg,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Mismatch(String),
    Cap(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Mismatch(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = format!("{}: {e}", e.kind());
        match e {
            Error::SizeCapExceeded { .. } => CliError::Cap(msg),
            _ => CliError::Input(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(format!("Io: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err((out, err)) => {
            print!("{out}");
            match &err {
                CliError::Input(m) | CliError::Mismatch(m) | CliError::Cap(m) => {
                    eprintln!("error: {m}")
                }
            }
            ExitCode::from(err.exit_code())
        }
    }
}

/// Output produced so far plus the failure, so mismatch reports still print.
type RunResult = Result<String, (String, CliError)>;

fn run(cli: &Cli) -> RunResult {
    let fail = |e: CliError| (String::new(), e);
    match &cli.command {
        Command::Eval(seq) => cmd_eval(&seq.parse().map_err(fail)?, cli.json).map_err(fail),
        Command::Build { seq, out } => {
            cmd_build(&seq.parse().map_err(fail)?, out.as_ref(), cli.json)
        }
        Command::Solve { path } => cmd_solve(path, cli.json).map_err(fail),
        Command::Verify { seq, cap, out } => {
            cmd_verify(&seq.parse().map_err(fail)?, *cap, out.as_ref(), cli.json)
        }
        Command::Sweep {
            max_n,
            cap,
            parallel,
        } => cmd_sweep(*max_n, *cap, *parallel, cli.json),
        Command::SwapSearch {
            seq,
            restarts,
            seed,
            out,
        } => cmd_swap_search(
            &seq.parse().map_err(fail)?,
            *restarts,
            *seed,
            out.as_ref(),
            cli.json,
        )
        .map_err(fail),
    }
}

/// Renders `key=value` lines, or one JSON object.
fn render<T: Serialize>(json_mode: bool, value: &T, lines: &[(&str, String)]) -> String {
    if json_mode {
        let mut s = serde_json::to_string_pretty(value).expect("output serializes");
        s.push('\n');
        s
    } else {
        let mut s = String::new();
        for (k, v) in lines {
            let _ = writeln!(s, "{k}={v}");
        }
        s
    }
}

fn cmd_eval(seq: &DegreeSequence, json_mode: bool) -> Result<String, CliError> {
    let stats = seq.validate()?;
    let values = extremal_values(seq)?;
    let doc = json!({
        "sequence": seq,
        "n": stats.n,
        "n0": stats.n0,
        "n1": stats.n1,
        "n_ge2": stats.n_ge2,
        "c": stats.c,
        "branch": values.branch.to_string(),
        "gamma_max": values.gamma_max,
        "alpha_min": values.alpha_min,
    });
    Ok(render(
        json_mode,
        &doc,
        &[
            ("sequence", seq.to_string()),
            ("n", stats.n.to_string()),
            ("n0", stats.n0.to_string()),
            ("n1", stats.n1.to_string()),
            ("n_ge2", stats.n_ge2.to_string()),
            ("c", stats.c.to_string()),
            ("branch", values.branch.to_string()),
            ("gamma_max", values.gamma_max.to_string()),
            ("alpha_min", values.alpha_min.to_string()),
        ],
    ))
}

fn cmd_build(seq: &DegreeSequence, out: Option<&PathBuf>, json_mode: bool) -> RunResult {
    let cert = extremal_build(seq).map_err(|e| (String::new(), e.into()))?;
    if let Some(path) = out {
        fs::write(path, cert.forest.to_json()).map_err(|e| (String::new(), e.into()))?;
    }
    let doc = json!({
        "sequence": seq,
        "branch": cert.branch.to_string(),
        "gamma": cert.gamma,
        "alpha": cert.alpha,
        "gamma_max": cert.expected_gamma_max,
        "alpha_min": cert.expected_alpha_min,
        "match": cert.is_tight(),
        "forest": cert.forest,
    });
    let mut lines = vec![
        ("sequence", seq.to_string()),
        ("branch", cert.branch.to_string()),
        ("gamma", cert.gamma.to_string()),
        ("alpha", cert.alpha.to_string()),
        ("gamma_max", cert.expected_gamma_max.to_string()),
        ("alpha_min", cert.expected_alpha_min.to_string()),
        ("match", cert.is_tight().to_string()),
    ];
    if out.is_none() {
        lines.push(("forest", cert.forest.to_json().trim_end().to_string()));
    }
    let text = render(json_mode, &doc, &lines);
    if cert.is_tight() {
        Ok(text)
    } else {
        Err((
            text,
            CliError::Mismatch(format!(
                "certificate for {seq} has gamma {} alpha {}, expected {} {}",
                cert.gamma, cert.alpha, cert.expected_gamma_max, cert.expected_alpha_min
            )),
        ))
    }
}

fn cmd_solve(path: &PathBuf, json_mode: bool) -> Result<String, CliError> {
    let text = fs::read_to_string(path)?;
    let forest = Forest::parse(&text)?;
    let (gamma, dominating) = forest.domination_number();
    let (alpha, independent) = forest.independence_number();
    let seq = forest.degree_sequence();
    let values = extremal_values(&seq)?;
    let doc = json!({
        "n": forest.order(),
        "degree_sequence": seq,
        "gamma": gamma,
        "alpha": alpha,
        "dominating_set": dominating,
        "independent_set": independent,
        "gamma_max": values.gamma_max,
        "alpha_min": values.alpha_min,
    });
    Ok(render(
        json_mode,
        &doc,
        &[
            ("n", forest.order().to_string()),
            ("degree_sequence", seq.to_string()),
            ("gamma", gamma.to_string()),
            ("alpha", alpha.to_string()),
            ("dominating_set", dominating.to_string()),
            ("independent_set", independent.to_string()),
            ("gamma_max", values.gamma_max.to_string()),
            ("alpha_min", values.alpha_min.to_string()),
        ],
    ))
}

fn cmd_verify(
    seq: &DegreeSequence,
    cap: usize,
    out: Option<&PathBuf>,
    json_mode: bool,
) -> RunResult {
    let fail = |e: CliError| (String::new(), e);
    let values = extremal_values(seq).map_err(|e| fail(e.into()))?;
    let report = empirical_extremes(seq, cap).map_err(|e| fail(e.into()))?;
    if let Some(path) = out {
        fs::write(path, report.to_json() + "\n").map_err(|e| fail(e.into()))?;
    }
    let matched = report.gamma_max == values.gamma_max && report.alpha_min == values.alpha_min;
    let verdict = if matched { "MATCH" } else { "MISMATCH" };
    let doc = json!({
        "report": report,
        "formula_gamma_max": values.gamma_max,
        "formula_alpha_min": values.alpha_min,
        "match": matched,
    });
    let text = render(
        json_mode,
        &doc,
        &[
            ("sequence", seq.to_string()),
            (
                "realizations_labeled",
                report.realization_count_labeled.to_string(),
            ),
            ("realizations_iso", report.realization_count_iso.to_string()),
            ("gamma_min", report.gamma_min.to_string()),
            (
                "gamma_max",
                format!("{} formula={}", report.gamma_max, values.gamma_max),
            ),
            (
                "alpha_min",
                format!("{} formula={}", report.alpha_min, values.alpha_min),
            ),
            ("alpha_max", report.alpha_max.to_string()),
            ("verdict", verdict.to_string()),
        ],
    );
    if matched {
        Ok(text)
    } else {
        Err((
            text,
            CliError::Mismatch(format!("formula disagrees with enumeration for {seq}")),
        ))
    }
}

#[derive(Serialize)]
struct SweepRow {
    sequence: DegreeSequence,
    gamma_max: usize,
    alpha_min: usize,
    formula_gamma_max: usize,
    formula_alpha_min: usize,
}

fn cmd_sweep(max_n: usize, cap: usize, parallel: usize, json_mode: bool) -> RunResult {
    if max_n > cap {
        return Err((
            String::new(),
            CliError::Cap(format!("SizeCapExceeded: max-n {max_n} exceeds cap {cap}")),
        ));
    }
    let sequences = sweep_sequences(max_n);
    let check = |s: &DegreeSequence| -> Result<SweepRow, Error> {
        let r = empirical_extremes(s, cap)?;
        let v = extremal_values(s)?;
        Ok(SweepRow {
            sequence: s.clone(),
            gamma_max: r.gamma_max,
            alpha_min: r.alpha_min,
            formula_gamma_max: v.gamma_max,
            formula_alpha_min: v.alpha_min,
        })
    };
    let rows: Vec<Result<SweepRow, Error>> = if parallel > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(parallel)
            .build()
            .map_err(|e| (String::new(), CliError::Input(format!("thread pool: {e}"))))?;
        // collect() keeps generation order
        pool.install(|| sequences.par_iter().map(check).collect())
    } else {
        sequences.iter().map(check).collect()
    };
    let rows = rows
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| (String::new(), e.into()))?;
    let mismatches: Vec<&SweepRow> = rows
        .iter()
        .filter(|r| r.gamma_max != r.formula_gamma_max || r.alpha_min != r.formula_alpha_min)
        .collect();
    let text = if json_mode {
        let doc = json!({
            "max_n": max_n,
            "checked": rows.len(),
            "mismatches": mismatches,
        });
        serde_json::to_string_pretty(&doc).expect("output serializes") + "\n"
    } else {
        let mut s = String::new();
        for r in &mismatches {
            let _ = writeln!(
                s,
                "MISMATCH {} empirical=({}, {}) formula=({}, {})",
                r.sequence, r.gamma_max, r.alpha_min, r.formula_gamma_max, r.formula_alpha_min
            );
        }
        let _ = writeln!(
            s,
            "checked {} sequences, {} mismatches",
            rows.len(),
            mismatches.len()
        );
        s
    };
    if mismatches.is_empty() {
        Ok(text)
    } else {
        let count = mismatches.len();
        Err((
            text,
            CliError::Mismatch(format!("{count} sequences disagree")),
        ))
    }
}

fn cmd_swap_search(
    seq: &DegreeSequence,
    restarts: usize,
    seed: u64,
    out: Option<&PathBuf>,
    json_mode: bool,
) -> Result<String, CliError> {
    let values = extremal_values(seq)?;
    let forest = swap_search_gamma(seq, restarts, seed)?;
    if let Some(path) = out {
        fs::write(path, forest.to_json())?;
    }
    let gamma = forest.domination_number().0;
    let doc = json!({
        "sequence": seq,
        "gamma": gamma,
        "gamma_max": values.gamma_max,
        "attained": gamma == values.gamma_max,
        "forest": forest,
    });
    let mut lines = vec![
        ("sequence", seq.to_string()),
        ("gamma", gamma.to_string()),
        ("gamma_max", values.gamma_max.to_string()),
        ("attained", (gamma == values.gamma_max).to_string()),
    ];
    if out.is_none() {
        lines.push(("forest", forest.to_json().trim_end().to_string()));
    }
    Ok(render(json_mode, &doc, &lines))
}
