//! The fixture registry and the reproduction report.
//!
//! A registry is a text file with one record per line,
//! `name | kind | input | expectation | provenance`, where `kind` is one of
//! `braid`, `comb`, `lscheme` or `scheme-query` and the input is written in
//! the grammar of the corresponding module. Blank lines and lines starting
//! with `#` are ignored.
//!
//! Expectations are `key=value` pairs:
//!
//! | kind | keys |
//! |------|------|
//! | braid | `alexander`, `alexander-same`, `det`, `exponent-sum`, `trivial`, `equals`, `fires`, `silent` |
//! | comb | `closed`, `mu-exists`, `mu` |
//! | lscheme | `braid`, `rootscheme`, `comb`, `alg-realizable` |
//! | scheme-query | `realizable` (input `<scheme> in <category>`), `count` (input `enumerate <category>` or `complex-m-schemes`) |

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::BraidWord;
use crate::comb::{self, WeightedComb};
use crate::invariants::{self, Obstruction};
use crate::laurent::LaurentPolynomial;
use crate::lscheme::{LScheme, RootScheme};
use crate::schemes7::{self, Category, RealSchemeCode};

pub const FIXTURES_TXT: &str = include_str!("../data/fixtures.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct RegistryError {
    pub line: usize,
    pub msg: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixtureKind {
    Braid,
    Comb,
    Lscheme,
    SchemeQuery,
}

impl FixtureKind {
    pub fn name(self) -> &'static str {
        match self {
            FixtureKind::Braid => "braid",
            FixtureKind::Comb => "comb",
            FixtureKind::Lscheme => "lscheme",
            FixtureKind::SchemeQuery => "scheme-query",
        }
    }
}

impl FromStr for FixtureKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [FixtureKind::Braid, FixtureKind::Comb, FixtureKind::Lscheme, FixtureKind::SchemeQuery]
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown fixture kind '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expectation {
    Alexander(LaurentPolynomial),
    AlexanderSameAs(BraidWord),
    Determinant(BigInt),
    ExponentSum(i64),
    Trivial(bool),
    Equals(BraidWord),
    Fires(Obstruction),
    Silent(Obstruction),
    Closed(bool),
    MuExists(bool),
    Mu(BigUint),
    CompiledBraid(String),
    RootScheme(RootScheme),
    WeightedComb(WeightedComb),
    AlgRealizable(bool),
    Realizable(bool),
    Count(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Input {
    Braid(BraidWord),
    Comb(WeightedComb),
    Lscheme(LScheme),
    Membership(RealSchemeCode, Category),
    Enumerate(Category),
    ComplexMSchemes,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub kind: FixtureKind,
    pub input: String,
    pub expectation: String,
    pub provenance: String,
    parsed_input: Input,
    parsed_expectation: Expectation,
}

fn parse_bool(v: &str) -> Result<bool, String> {
    v.parse().map_err(|_| format!("expected true or false, got '{v}'"))
}

fn parse_input(kind: FixtureKind, s: &str) -> Result<Input, String> {
    let e = |x: &dyn fmt::Display| x.to_string();
    Ok(match kind {
        FixtureKind::Braid => Input::Braid(s.parse().map_err(|x| e(&x))?),
        FixtureKind::Comb => Input::Comb(s.parse().map_err(|x| e(&x))?),
        FixtureKind::Lscheme => Input::Lscheme(s.parse().map_err(|x| e(&x))?),
        FixtureKind::SchemeQuery => {
            if s == "complex-m-schemes" {
                Input::ComplexMSchemes
            } else if let Some(c) = s.strip_prefix("enumerate ") {
                Input::Enumerate(c.trim().parse().map_err(|x| e(&x))?)
            } else if let Some((scheme, c)) = s.rsplit_once(" in ") {
                Input::Membership(scheme.trim().parse().map_err(|x| e(&x))?, c.trim().parse().map_err(|x| e(&x))?)
            } else {
                return Err(format!("unrecognised scheme query '{s}'"));
            }
        }
    })
}

fn parse_expectation(kind: FixtureKind, input: &Input, s: &str) -> Result<Expectation, String> {
    let (key, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got '{s}'"))?;
    let (key, v) = (key.trim(), v.trim());
    let e = |x: &dyn fmt::Display| x.to_string();
    let exp = match (kind, key) {
        (FixtureKind::Braid, "alexander") => Expectation::Alexander(v.parse().map_err(|x| e(&x))?),
        (FixtureKind::Braid, "alexander-same") => Expectation::AlexanderSameAs(v.parse().map_err(|x| e(&x))?),
        (FixtureKind::Braid, "det") => Expectation::Determinant(v.parse().map_err(|x| e(&x))?),
        (FixtureKind::Braid, "exponent-sum") => Expectation::ExponentSum(v.parse().map_err(|x| e(&x))?),
        (FixtureKind::Braid, "trivial") => Expectation::Trivial(parse_bool(v)?),
        (FixtureKind::Braid, "equals") => Expectation::Equals(v.parse().map_err(|x| e(&x))?),
        (FixtureKind::Braid, "fires") => Expectation::Fires(v.parse()?),
        (FixtureKind::Braid, "silent") => Expectation::Silent(v.parse()?),
        (FixtureKind::Comb, "closed") => Expectation::Closed(parse_bool(v)?),
        (FixtureKind::Comb, "mu-exists") => Expectation::MuExists(parse_bool(v)?),
        (FixtureKind::Comb, "mu") => Expectation::Mu(v.parse().map_err(|x| e(&x))?),
        (FixtureKind::Lscheme, "braid") => {
            Expectation::CompiledBraid(v.split_whitespace().collect::<Vec<_>>().join(" "))
        }
        (FixtureKind::Lscheme, "rootscheme") => Expectation::RootScheme(v.parse().map_err(|x| e(&x))?),
        (FixtureKind::Lscheme, "comb") => Expectation::WeightedComb(v.parse().map_err(|x| e(&x))?),
        (FixtureKind::Lscheme, "alg-realizable") => Expectation::AlgRealizable(parse_bool(v)?),
        (FixtureKind::SchemeQuery, "realizable") if matches!(input, Input::Membership(..)) => {
            Expectation::Realizable(parse_bool(v)?)
        }
        (FixtureKind::SchemeQuery, "count") if !matches!(input, Input::Membership(..)) => {
            Expectation::Count(v.parse().map_err(|x| e(&x))?)
        }
        _ => return Err(format!("expectation '{key}' does not apply to this {} input", kind.name())),
    };
    Ok(exp)
}

impl Fixture {
    pub fn parse_line(line: &str) -> Result<Fixture, String> {
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        let [name, kind, input, expectation, provenance] = fields[..] else {
            return Err(format!("expected 5 '|'-separated fields, found {}", fields.len()));
        };
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(format!("invalid fixture name '{name}'"));
        }
        if provenance.is_empty() {
            return Err(format!("fixture {name} has no provenance"));
        }
        let kind: FixtureKind = kind.parse()?;
        let parsed_input = parse_input(kind, input).map_err(|m| format!("{name}: input: {m}"))?;
        let parsed_expectation =
            parse_expectation(kind, &parsed_input, expectation).map_err(|m| format!("{name}: expectation: {m}"))?;
        Ok(Fixture {
            name: name.to_string(),
            kind,
            input: input.to_string(),
            expectation: expectation.to_string(),
            provenance: provenance.to_string(),
            parsed_input,
            parsed_expectation,
        })
    }

    pub fn expected(&self) -> &Expectation {
        &self.parsed_expectation
    }

    /// Evaluates the fixture, returning whether it passed and the computed
    /// value as text.
    pub fn evaluate(&self) -> Result<(bool, String), String> {
        let s = |x: &dyn fmt::Display| x.to_string();
        match (&self.parsed_input, &self.parsed_expectation) {
            (Input::Braid(b), exp) => {
                let alex = || invariants::alexander_polynomial(b).map_err(|x| s(&x));
                match exp {
                    Expectation::Alexander(p) => {
                        let a = alex()?.normalize_unit();
                        Ok((a.unit_equivalent(p), a.to_string()))
                    }
                    Expectation::AlexanderSameAs(other) => {
                        let a = alex()?.normalize_unit();
                        let o = invariants::alexander_polynomial(other).map_err(|x| s(&x))?.normalize_unit();
                        Ok((a == o, format!("{a} vs {o}")))
                    }
                    Expectation::Determinant(d) => {
                        let v = invariants::determinant_of_closure(b).map_err(|x| s(&x))?;
                        Ok((&v == d, v.to_string()))
                    }
                    Expectation::ExponentSum(e) => Ok((b.exponent_sum() == *e, b.exponent_sum().to_string())),
                    Expectation::Trivial(t) => {
                        let nf = b.garside_normal_form();
                        Ok((nf.is_identity() == *t, nf.to_string()))
                    }
                    Expectation::Equals(other) => {
                        let (x, y) = (b.garside_normal_form(), other.garside_normal_form());
                        Ok((x == y, x.to_string()))
                    }
                    Expectation::Fires(o) | Expectation::Silent(o) => {
                        let v = invariants::quasipositivity_verdict(b).map_err(|x| s(&x))?;
                        let fired = v.fired().contains(o);
                        let want = matches!(exp, Expectation::Fires(_));
                        let names: Vec<String> = v.fired().iter().map(|f| f.to_string()).collect();
                        Ok((fired == want, format!("fired [{}]", names.join(", "))))
                    }
                    _ => unreachable!("checked when parsing"),
                }
            }
            (Input::Comb(w), exp) => match exp {
                Expectation::Closed(c) => Ok((w.comb.is_closed() == *c, w.comb.is_closed().to_string())),
                Expectation::MuExists(m) => {
                    let v = comb::mu_exists(w);
                    Ok((v == *m, v.to_string()))
                }
                Expectation::Mu(m) => {
                    let v = comb::mu_count(w);
                    Ok((&v == m, v.to_string()))
                }
                _ => unreachable!("checked when parsing"),
            },
            (Input::Lscheme(ls), exp) => match exp {
                Expectation::CompiledBraid(t) => {
                    let c = ls.compile().map_err(|x| s(&x))?.to_string();
                    Ok((&c == t, c))
                }
                Expectation::RootScheme(r) => {
                    let v = ls.root_scheme().map_err(|x| s(&x))?;
                    Ok((&v == r, v.to_string()))
                }
                Expectation::WeightedComb(w) => {
                    let v = ls.weighted_comb().map_err(|x| s(&x))?;
                    Ok((&v == w, v.to_string()))
                }
                Expectation::AlgRealizable(b) => {
                    let v = comb::algebraic_realizability_verdict(ls).map_err(|x| s(&x))?;
                    Ok((v == *b, v.to_string()))
                }
                _ => unreachable!("checked when parsing"),
            },
            (Input::Membership(scheme, c), Expectation::Realizable(r)) => {
                let v = schemes7::realizable(scheme, *c).map_err(|x| s(&x))?;
                Ok((v == *r, v.to_string()))
            }
            (Input::Enumerate(c), Expectation::Count(n)) => {
                let v = schemes7::enumerate(*c).len();
                Ok((v == *n, v.to_string()))
            }
            (Input::ComplexMSchemes, Expectation::Count(n)) => {
                let v = schemes7::symmetric_m_complex_schemes().len();
                Ok((v == *n, v.to_string()))
            }
            _ => unreachable!("checked when parsing"),
        }
    }

    pub fn run(&self, timings: bool) -> FixtureResult {
        let start = Instant::now();
        let (status, computed) = match self.evaluate() {
            Ok((true, c)) => (Status::Pass, c),
            Ok((false, c)) => (Status::Fail, c),
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        FixtureResult {
            name: self.name.clone(),
            kind: self.kind,
            status,
            computed,
            expected: self.expectation.clone(),
            provenance: self.provenance.clone(),
            wall_time_ms: timings.then(|| start.elapsed().as_secs_f64() * 1e3),
        }
    }
}

/// Parses a registry file.
pub fn parse_registry(text: &str) -> Result<Vec<Fixture>, RegistryError> {
    let mut out = Vec::new();
    let mut names = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let f = Fixture::parse_line(t).map_err(|msg| RegistryError { line: i + 1, msg })?;
        if !names.insert(f.name.clone()) {
            return Err(RegistryError { line: i + 1, msg: format!("duplicate fixture name '{}'", f.name) });
        }
        out.push(f);
    }
    Ok(out)
}

/// The registry shipped with the library.
pub fn builtin_registry() -> Vec<Fixture> {
    parse_registry(FIXTURES_TXT).expect("embedded fixture registry is valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureResult {
    pub name: String,
    pub kind: FixtureKind,
    pub status: Status,
    pub computed: String,
    pub expected: String,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproReport {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub fixtures: Vec<FixtureResult>,
}

impl ReproReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &FixtureResult> {
        self.fixtures.iter().filter(|r| r.status == Status::Fail)
    }
}

impl fmt::Display for ReproReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.fixtures {
            write!(f, "{} {:<16} {}", r.status, r.name, r.computed)?;
            if r.status == Status::Fail {
                write!(f, "  (expected {})", r.expected)?;
            }
            if let Some(ms) = r.wall_time_ms {
                write!(f, "  [{ms:.1} ms]")?;
            }
            writeln!(f)?;
        }
        write!(f, "{} fixtures: {} passed, {} failed, {} skipped", self.total, self.passed, self.failed, self.skipped)
    }
}

/// Runs fixtures in parallel; results are ordered by name.
pub fn run_fixtures(fixtures: &[Fixture], timings: bool) -> ReproReport {
    let mut results: Vec<FixtureResult> = fixtures.par_iter().map(|f| f.run(timings)).collect();
    results.sort_by(|a, b| a.name.cmp(&b.name));
    let count = |s| results.iter().filter(|r| r.status == s).count();
    ReproReport {
        total: results.len(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skip),
        fixtures: results,
    }
}

pub fn repro(timings: bool) -> ReproReport {
    run_fixtures(&builtin_registry(), timings)
}
