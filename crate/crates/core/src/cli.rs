//! The `ruled` command-line front end.
//!
//! Every subcommand prints plain text by default and JSON with `--json`.
//! Exit codes: 0 success, 1 usage or parse error, 2 fixture failure,
//! 3 internal convention violation.

use std::ffi::OsString;
use std::fmt::Display;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::braid::{BraidError, BraidWord};
use crate::comb::{self, CombError, WeightedComb};
use crate::fixtures::{self, ReproReport};
use crate::invariants::{self, InvariantsError, InvariantsReport};
use crate::lscheme::{self, LScheme, LSchemeError, RuleSet};
use crate::schemes7::{self, Category, RealSchemeCode, SchemesError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FIXTURE: i32 = 2;
pub const EXIT_CONVENTION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ruled", version, about = "Braids, invariants and combs of real curves on ruled surfaces")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MuMode {
    Exists,
    Count,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Rules {
    Pseudo,
    Alg,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compile every L-scheme in a file (one per line, `#` comments) to its braid.
    Braid {
        /// Path to the scheme file, or `-` for standard input.
        file: PathBuf,
    },
    /// Exponent sum, Alexander polynomial, determinant and triviality of a braid.
    Invariants { braid: String },
    /// Run the quasipositivity obstructions on a braid.
    Obstruct { braid: String },
    /// Root scheme of a trigonal L-scheme.
    Rootscheme { scheme: String },
    /// Weighted comb of a trigonal L-scheme.
    Comb { scheme: String },
    /// Decide or count chains from a weighted comb to a closed comb.
    Mu {
        /// `comb | alpha beta gamma` or `(comb, alpha, beta, gamma)`.
        weighted_comb: String,
        #[arg(long, value_enum, default_value = "exists")]
        mode: MuMode,
    },
    /// Apply one local rewrite to an L-scheme.
    Rewrite {
        scheme: String,
        #[arg(long, value_enum)]
        rules: Rules,
        /// Rule id, e.g. `cancel-tangents` or `alg-descend`.
        rule: String,
        /// Zero-based index of the first event matched by the rule.
        position: usize,
    },
    /// List the rewrite rules.
    Rules,
    /// Whether a degree-7 real scheme is realizable in a category.
    Classify { scheme: String, category: String },
    /// All degree-7 real schemes of a category.
    Enumerate { category: String },
    /// Run the fixture registry and report.
    Repro {
        /// Alternative registry file.
        #[arg(long)]
        registry: Option<PathBuf>,
        /// Include wall-clock times (makes the output run-dependent).
        #[arg(long)]
        timings: bool,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn err(code: i32, stderr: String) -> Self {
        Self { code, stdout: String::new(), stderr }
    }
}

struct Failure {
    code: i32,
    msg: String,
}

/// Formats a parse error with the input and a caret under the offending byte.
fn parse_failure(input: &str, pos: usize, msg: impl Display) -> Failure {
    let caret = " ".repeat(input[..pos.min(input.len())].chars().count());
    Failure { code: EXIT_USAGE, msg: format!("parse error at byte {pos}: {msg}\n  {input}\n  {caret}^") }
}

fn usage(msg: impl Display) -> Failure {
    Failure { code: EXIT_USAGE, msg: msg.to_string() }
}

fn from_invariants(e: InvariantsError) -> Failure {
    Failure { code: EXIT_CONVENTION, msg: e.to_string() }
}

fn parse_braid(s: &str) -> Result<BraidWord, Failure> {
    s.parse().map_err(|e| match e {
        BraidError::Parse { pos, msg } => parse_failure(s, pos, msg),
        other => usage(other),
    })
}

fn parse_scheme(s: &str) -> Result<LScheme, Failure> {
    s.parse().map_err(|e| match e {
        LSchemeError::Parse { pos, msg } => parse_failure(s, pos, msg),
        other => usage(format!("invalid L-scheme: {other}")),
    })
}

fn parse_weighted_comb(s: &str) -> Result<WeightedComb, Failure> {
    s.parse().map_err(|e| match e {
        CombError::Parse { pos, msg } => parse_failure(s, pos, msg),
    })
}

fn parse_real_scheme(s: &str) -> Result<RealSchemeCode, Failure> {
    s.parse().map_err(|e| match e {
        SchemesError::Parse { pos, msg } => parse_failure(s, pos, msg),
        other => usage(other),
    })
}

fn parse_category(s: &str) -> Result<Category, Failure> {
    s.parse().map_err(|e| {
        let names: Vec<&str> = Category::ALL.iter().map(|c| c.name()).collect();
        usage(format!("{e}; expected one of {}", names.join(", ")))
    })
}

fn check_convention() -> Result<(), Failure> {
    invariants::check_burau_convention(5).map_err(from_invariants)
}

fn render(json: bool, value: Value, text: String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(&value).expect("JSON values serialize");
        s.push('\n');
        s
    } else {
        text + "\n"
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| usage(format!("reading standard input: {e}")))
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("reading {}: {e}", path.display())))
    }
}

fn report_output(json: bool, report: &ReproReport) -> Outcome {
    let stdout = render(json, serde_json::to_value(report).expect("report serializes"), report.to_string());
    let code = if report.all_passed() { EXIT_OK } else { EXIT_FIXTURE };
    let stderr = report
        .failures()
        .map(|f| format!("FAIL {}: computed {}, expected {}\n", f.name, f.computed, f.expected))
        .collect();
    Outcome { code, stdout, stderr }
}

fn execute(cli: Cli) -> Result<Outcome, Failure> {
    let json = cli.json;
    let out = match cli.command {
        Command::Braid { file } => {
            let text = read_input(&file)?;
            let schemes = LScheme::parse_many(&text).map_err(|(line, e)| usage(format!("line {line}: {e}")))?;
            let mut rows = Vec::new();
            let mut lines = Vec::new();
            for ls in &schemes {
                let c = ls.compile().map_err(|e| usage(format!("{ls}: {e}")))?;
                rows.push(json!({
                    "scheme": ls.to_string(),
                    "braid": c.to_string(),
                    "real_part": c.real.body(),
                    "delta_power": c.delta_power,
                    "strands": ls.strands(),
                    "exponent_sum": c.word().exponent_sum(),
                }));
                lines.push(c.to_string());
            }
            render(json, Value::Array(rows), lines.join("\n"))
        }
        Command::Invariants { braid } => {
            check_convention()?;
            let b = parse_braid(&braid)?;
            let r = InvariantsReport::of(&b).map_err(from_invariants)?;
            render(json, serde_json::to_value(&r).expect("report serializes"), r.to_string())
        }
        Command::Obstruct { braid } => {
            check_convention()?;
            let b = parse_braid(&braid)?;
            let v = invariants::quasipositivity_verdict(&b).map_err(from_invariants)?;
            let mut value = serde_json::to_value(&v).expect("verdict serializes");
            value["braid"] = json!(b.to_string());
            render(json, value, v.to_string())
        }
        Command::Rootscheme { scheme } => {
            let ls = parse_scheme(&scheme)?;
            let rs = ls.root_scheme().map_err(usage)?;
            let entries: Vec<Value> = rs.entries().iter().map(|(c, m)| json!([c.to_string(), m])).collect();
            render(
                json,
                json!({"scheme": ls.to_string(), "root_scheme": rs.to_string(), "entries": entries}),
                rs.to_string(),
            )
        }
        Command::Comb { scheme } => {
            let ls = parse_scheme(&scheme)?;
            let w = ls.weighted_comb().map_err(usage)?;
            let (a, b, g) = w.weights();
            render(
                json,
                json!({"scheme": ls.to_string(), "weighted_comb": w.to_string(), "comb": w.comb.to_string(),
                       "alpha": a, "beta": b, "gamma": g}),
                w.to_string(),
            )
        }
        Command::Mu { weighted_comb, mode } => {
            let w = parse_weighted_comb(&weighted_comb)?;
            match mode {
                MuMode::Exists => {
                    let v = comb::mu_exists(&w);
                    render(json, json!({"weighted_comb": w.to_string(), "mode": "exists", "exists": v}), v.to_string())
                }
                MuMode::Count => {
                    let v = comb::mu_count(&w);
                    render(
                        json,
                        json!({"weighted_comb": w.to_string(), "mode": "count", "count": v.to_string()}),
                        v.to_string(),
                    )
                }
            }
        }
        Command::Rewrite { scheme, rules, rule, position } => {
            let ls = parse_scheme(&scheme)?;
            let set = match rules {
                Rules::Pseudo => RuleSet::Pseudo,
                Rules::Alg => RuleSet::Alg,
            };
            let out = lscheme::rewrite(&ls, set, &rule, position).map_err(usage)?;
            render(
                json,
                json!({"input": ls.to_string(), "rules": set, "rule": rule, "position": position, "output": out.to_string()}),
                out.to_string(),
            )
        }
        Command::Rules => {
            let rows: Vec<Value> = lscheme::RULES
                .iter()
                .map(|r| json!({"id": r.id, "rules": r.set, "pattern": r.pattern, "event_delta": r.event_delta}))
                .collect();
            let text: Vec<String> = lscheme::RULES
                .iter()
                .map(|r| {
                    let set = if r.set == RuleSet::Pseudo { "pseudo" } else { "alg" };
                    format!("{set:<7}{:<20}{}", r.id, r.pattern)
                })
                .collect();
            render(json, Value::Array(rows), text.join("\n"))
        }
        Command::Classify { scheme, category } => {
            let s = parse_real_scheme(&scheme)?;
            let c = parse_category(&category)?;
            let v = schemes7::realizable(&s, c).map_err(usage)?;
            render(json, json!({"scheme": s.to_string(), "category": c, "realizable": v}), v.to_string())
        }
        Command::Enumerate { category } => {
            let c = parse_category(&category)?;
            let list: Vec<String> = schemes7::enumerate(c).iter().map(|s| s.to_string()).collect();
            render(json, json!({"category": c, "count": list.len(), "schemes": list}), list.join("\n"))
        }
        Command::Repro { registry, timings } => {
            check_convention()?;
            let list = match registry {
                Some(path) => {
                    let text = read_input(&path)?;
                    fixtures::parse_registry(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?
                }
                None => fixtures::builtin_registry(),
            };
            return Ok(report_output(json, &fixtures::run_fixtures(&list, timings)));
        }
    };
    Ok(Outcome::ok(out))
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::err(EXIT_USAGE, text) } else { Outcome::ok(text) };
        }
    };
    match execute(cli) {
        Ok(o) => o,
        Err(f) => Outcome::err(f.code, format!("error: {}\n", f.msg)),
    }
}
