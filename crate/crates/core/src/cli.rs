//! Command-line front end. [`run_command`] does all the work and returns
//! the exit code with the rendered output, so the binary is a thin shell.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::catalog::{self, ClassicalSubcanonical};
use crate::diagnostics::{self, Input, Report, RunOptions, VerifyRun};
use crate::error::{Error, Result};
use crate::exactalg::FieldMode;
use crate::groebner::parse_ideal;
use crate::rootsys::{build_root_system, parse_weight, RootType};

#[derive(Debug, Parser)]
#[command(
    name = "gorfro",
    version,
    about = "Koszul homology, Gorenstein and Frobenius verdicts"
)]
struct Cli {
    /// Coefficient field: `q` (rationals), `p` (default prime) or `p:<prime>`.
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<FieldMode>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Fixed internal-degree bound for the Koszul homology.
    #[arg(long = "q-max", global = true)]
    q_max: Option<usize>,
    /// Wall-clock limit per example.
    #[arg(long = "max-seconds", global = true)]
    max_seconds: Option<u64>,
    /// Largest differential block, in nonzero entries.
    #[arg(long = "max-nonzeros", global = true)]
    max_nonzeros: Option<usize>,
    /// Include `runtime_ms` in reports (output is then not reproducible).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List or export built-in entries.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Full report for a catalog entry or an ideal file.
    Check(Selector),
    /// Betti table only.
    Betti(Selector),
    /// Root-theoretic subcanonicity of a highest-weight orbit.
    Subcanonical {
        /// Semisimple type, e.g. `A3` or `A1xA2`.
        #[arg(long = "type")]
        root_type: String,
        /// Fundamental-weight coordinates, e.g. `0,1,0`.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Check the theorem statements on the catalog.
    VerifyTheorems {
        #[arg(long, conflicts_with = "example")]
        all: bool,
        #[arg(long)]
        example: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    List,
    Export { id: String },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Selector {
    #[arg(long)]
    example: Option<String>,
    #[arg(long)]
    ideal: Option<PathBuf>,
}

fn parse_field(s: &str) -> std::result::Result<FieldMode, String> {
    s.parse::<FieldMode>().map_err(|e| e.to_string())
}

/// Parsed configuration of one invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub options: RunOptions,
    pub json: bool,
}

/// Runs one command line (including the program name) and returns the exit
/// code and the text to print: 0 success, 1 a theorem assertion failed,
/// 2 usage, parse or resource error.
pub fn run_command<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let config = RunConfig {
        options: RunOptions {
            field: cli.field,
            q_max: cli.q_max,
            max_seconds: cli.max_seconds,
            max_nonzeros: cli.max_nonzeros,
            timings: cli.timings,
        },
        json: cli.json,
    };
    match execute(cli.command, &config) {
        Ok(out) => out,
        Err(e) => (2, format!("error: {e}\n")),
    }
}

fn execute(command: Command, config: &RunConfig) -> Result<(i32, String)> {
    match command {
        Command::Catalog { action } => catalog_command(action, config),
        Command::Check(sel) => {
            let report = diagnostics::analyze(&select(&sel)?, &config.options)?;
            let code = if report.failed() { 1 } else { 0 };
            Ok((code, render_report(&report, config.json)))
        }
        Command::Betti(sel) => {
            let report = diagnostics::analyze(&select(&sel)?, &config.options)?;
            Ok((0, render_betti(&report, config.json)))
        }
        Command::Subcanonical { root_type, weight } => {
            subcanonical_command(&root_type, &weight, config.json)
        }
        Command::VerifyTheorems { all, example } => {
            let run = match (all, example) {
                (_, Some(id)) => {
                    let entry = catalog::lookup(&id)?;
                    VerifyRun::single(&id, diagnostics::verify_entry(&entry, &config.options))
                }
                (true, None) => diagnostics::verify_all(&config.options),
                (false, None) => {
                    return Err(Error::Parse(
                        "verify-theorems needs --all or --example <id>".into(),
                    ))
                }
            };
            Ok((run.exit_code(), render_verify(&run, config.json)))
        }
    }
}

fn select(sel: &Selector) -> Result<Input> {
    match (&sel.example, &sel.ideal) {
        (Some(id), _) => Ok(Input::Entry(catalog::lookup(id)?)),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            let label = path
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string());
            Ok(Input::Ideal {
                label,
                ideal: parse_ideal(&text)?,
            })
        }
        (None, None) => Err(Error::Parse("give --example <id> or --ideal <path>".into())),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ListItem {
    id: String,
    n: usize,
    gens: usize,
    dim: usize,
    subcanonical: ClassicalSubcanonical,
}

fn catalog_command(action: CatalogAction, config: &RunConfig) -> Result<(i32, String)> {
    match action {
        CatalogAction::List => {
            if config.json {
                let items: Vec<ListItem> = catalog::standard()
                    .into_iter()
                    .map(|e| ListItem {
                        n: e.nvars,
                        gens: e.generators.len(),
                        dim: e.expected_dim,
                        subcanonical: e.classical,
                        id: e.id,
                    })
                    .collect();
                Ok((0, to_json(&items)))
            } else {
                Ok((0, catalog::list()))
            }
        }
        CatalogAction::Export { id } => Ok((0, catalog::lookup(&id)?.export())),
    }
}

#[derive(Serialize)]
struct SubcanonicalOutput {
    #[serde(rename = "type")]
    root_type: String,
    weight: Vec<i64>,
    /// 1-based simple-root indices.
    levi: Vec<usize>,
    kappa: Vec<i64>,
    holds: bool,
    #[serde(rename = "N")]
    n: Option<u64>,
}

fn subcanonical_command(root_type: &str, weight: &str, json: bool) -> Result<(i32, String)> {
    let t: RootType = root_type.parse()?;
    let lambda = parse_weight(weight)?;
    let rs = build_root_system(&t)?;
    let levi = rs.parabolic_levi(&lambda)?;
    let verdict = rs.subcanonicity_test(&lambda)?;
    if json {
        return Ok((
            0,
            to_json(&SubcanonicalOutput {
                root_type: t.to_string(),
                weight: lambda,
                levi: levi.iter().map(|i| i + 1).collect(),
                holds: verdict.holds(),
                n: verdict.n,
                kappa: verdict.kappa,
            }),
        ));
    }
    Ok((0, format!("{}\n", verdict.summary())))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn theorem_word(t: &diagnostics::TheoremCheck) -> &'static str {
    match t.holds {
        None => "n/a",
        Some(true) => "holds",
        Some(false) => "FAILED",
    }
}

fn format_numerator(c: &[i64]) -> String {
    let mut out = String::new();
    for (q, &v) in c.iter().enumerate() {
        if v == 0 {
            continue;
        }
        let mono = match q {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{q}"),
        };
        let abs = v.unsigned_abs();
        let body = match (abs, mono.is_empty()) {
            (_, true) => abs.to_string(),
            (1, false) => mono,
            (_, false) => format!("{abs}*{mono}"),
        };
        if out.is_empty() {
            if v < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if v < 0 { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn betti_grid(report: &Report) -> String {
    let table = crate::koszul::BettiTable::new(
        report.n,
        report.q_max,
        report.betti.iter().map(|[p, q, b]| ((*p, *q), *b)),
    );
    table.render()
}

/// Text or JSON rendering of a single report. Text has one `key=value` line
/// per field followed by the Betti grid.
pub fn render_report(report: &Report, json: bool) -> String {
    if json {
        return to_json(report);
    }
    let mut out = String::new();
    let failures = report.failures();
    if !failures.is_empty() {
        let _ = writeln!(out, "FAILED: {}", report.example);
        for f in &failures {
            let _ = writeln!(out, "  {f}");
        }
    }
    let _ = writeln!(out, "example={}", report.example);
    let _ = writeln!(out, "field_mode={}", report.field_mode);
    let _ = writeln!(out, "n={}", report.n);
    let _ = writeln!(out, "dim={}", report.dim);
    let _ = writeln!(out, "codim={}", report.codim);
    let _ = writeln!(out, "pd={}", report.pd);
    let _ = writeln!(out, "type={}", report.cm_type);
    let _ = writeln!(out, "regularity={}", report.regularity);
    let _ = writeln!(out, "socle_degree={}", report.socle_degree);
    let _ = writeln!(
        out,
        "hilbert_numerator={}",
        format_numerator(&report.hilbert_numerator)
    );
    let _ = writeln!(out, "cohen_macaulay={}", yes_no(report.cohen_macaulay));
    let _ = writeln!(out, "gorenstein={}", yes_no(report.gorenstein));
    let _ = writeln!(out, "frobenius={}", yes_no(report.frobenius));
    for w in &report.witnesses {
        let _ = writeln!(out, "witness: {w}");
    }
    let s = &report.subcanonical;
    if s.applies {
        let mut line = match s.n {
            Some(n) => format!("subcanonical=yes, N={n}"),
            None => "subcanonical=no".to_string(),
        };
        if let Some(src) = &s.source {
            let _ = write!(line, " ({src})");
        }
        if let Some(k) = &s.kappa {
            let _ = write!(line, ", kappa={k}");
        }
        let _ = writeln!(out, "{line}");
    } else {
        let _ = writeln!(out, "subcanonical=n/a");
    }
    let t = &report.theorems;
    let _ = writeln!(out, "avramov_golod={}", theorem_word(&t.avramov_golod));
    let _ = writeln!(out, "theorem1={}", theorem_word(&t.theorem1));
    let _ = writeln!(out, "theorem2={}", theorem_word(&t.theorem2));
    if let Some(pc) = &report.prime_check {
        let _ = writeln!(
            out,
            "prime_check={} betti_agree={} avramov_golod={}{}",
            pc.field_mode,
            yes_no(pc.betti_agree),
            yes_no(pc.avramov_golod),
            if pc.unlucky_prime {
                " (default prime was unlucky)"
            } else {
                ""
            }
        );
    }
    if let Some(ms) = report.runtime_ms {
        let _ = writeln!(out, "runtime_ms={ms}");
    }
    for note in &report.notes {
        let _ = writeln!(out, "note: {note}");
    }
    out.push_str("betti:\n");
    out.push_str(&betti_grid(report));
    out
}

#[derive(Serialize)]
struct BettiOutput<'a> {
    example: &'a str,
    field_mode: &'a str,
    betti: &'a [[usize; 3]],
    pd: usize,
    regularity: usize,
    socle_degree: usize,
    #[serde(rename = "type")]
    cm_type: usize,
}

fn render_betti(report: &Report, json: bool) -> String {
    if json {
        return to_json(&BettiOutput {
            example: &report.example,
            field_mode: &report.field_mode,
            betti: &report.betti,
            pd: report.pd,
            regularity: report.regularity,
            socle_degree: report.socle_degree,
            cm_type: report.cm_type,
        });
    }
    betti_grid(report)
}

fn render_verify(run: &VerifyRun, json: bool) -> String {
    if json {
        return to_json(run);
    }
    let mut out = String::new();
    if run.summary.failed > 0 {
        let _ = writeln!(
            out,
            "FAILED: {} of {} entries",
            run.summary.failed, run.summary.entries
        );
    }
    for r in &run.reports {
        let t = &r.theorems;
        let _ = write!(
            out,
            "{} {:<14} {:<8} gorenstein={} frobenius={} avramov_golod={} theorem1={} theorem2={}",
            if r.failed() { "FAIL" } else { "ok  " },
            r.example,
            r.field_mode,
            yes_no(r.gorenstein),
            yes_no(r.frobenius),
            theorem_word(&t.avramov_golod),
            theorem_word(&t.theorem1),
            theorem_word(&t.theorem2),
        );
        if let Some(pc) = &r.prime_check {
            let _ = write!(
                out,
                " {}={}",
                pc.field_mode,
                if pc.betti_agree && pc.avramov_golod {
                    "agrees"
                } else {
                    "DISAGREES"
                }
            );
        }
        out.push('\n');
        for f in r.failures() {
            let _ = writeln!(out, "     {f}");
        }
    }
    for e in &run.errors {
        let _ = writeln!(out, "ERR  {:<14} {}", e.example, e.error);
    }
    let s = &run.summary;
    let _ = writeln!(
        out,
        "summary: {} entries, {} passed, {} failed, {} errors",
        s.entries, s.passed, s.failed, s.errors
    );
    out
}
