//! L-scheme encodings: the event model, its text grammar, local rewrites,
//! and the compilers to braids, root schemes and weighted combs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::braid::{tokens, BraidError, BraidWord, Letter};
use crate::comb::{Comb, Gen, WeightedComb};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LSchemeError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("event {pos} ({event}): index out of range with {count} real points")]
    IndexOutOfRange { pos: usize, event: Event, count: usize },
    #[error("event {pos} ({event}): real point count would leave 0..={strands}")]
    InconsistentCount { pos: usize, event: Event, strands: usize },
    #[error("scheme ends with {count} real points instead of {strands}")]
    UnbalancedEnd { count: usize, strands: usize },
    #[error("need at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("no substitution rule for event {pos} ({event})")]
    NoMatchingRule { pos: usize, event: Event },
    #[error("expected a trigonal scheme (m = 3), got m = {0}")]
    NotTrigonal(usize),
    #[error("divisor events have no trigonal counterpart (event {0})")]
    DivisorInTrigonal(usize),
    #[error("unknown rule '{0}'")]
    UnknownRule(String),
    #[error("rule '{rule}' does not match at position {pos}")]
    PatternMismatch { rule: String, pos: usize },
    #[error("rewrite result is not a valid scheme: {0}")]
    InvalidResult(Box<LSchemeError>),
    #[error("final weight {name} = {value} is odd")]
    OddWeight { name: &'static str, value: i64 },
    #[error("weight {name} became negative at tangency {step}")]
    NegativeWeight { name: &'static str, step: usize },
    #[error(transparent)]
    Braid(#[from] BraidError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Event {
    /// `>k`: the pencil is tangent with `m` real points before it.
    TangencyDescend(usize),
    /// `<k`: tangency with `m - 2` real points before it.
    TangencyAscend(usize),
    /// `xk`: a real crossing.
    Crossing(usize),
    /// `ok`: shorthand for `<k >k`.
    SolitaryOval(usize),
    /// `\`.
    DivisorDescend,
    /// `/`.
    DivisorAscend,
}

impl Event {
    pub fn index(self) -> Option<usize> {
        match self {
            Event::TangencyDescend(k) | Event::TangencyAscend(k) | Event::Crossing(k) | Event::SolitaryOval(k) => {
                Some(k)
            }
            Event::DivisorDescend | Event::DivisorAscend => None,
        }
    }

    fn is_u(self) -> bool {
        matches!(self, Event::TangencyDescend(_) | Event::TangencyAscend(_) | Event::Crossing(_))
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::TangencyDescend(k) => write!(f, ">{k}"),
            Event::TangencyAscend(k) => write!(f, "<{k}"),
            Event::Crossing(k) => write!(f, "x{k}"),
            Event::SolitaryOval(k) => write!(f, "o{k}"),
            Event::DivisorDescend => write!(f, "\\"),
            Event::DivisorAscend => write!(f, "/"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LScheme {
    surface_index: u32,
    strands: usize,
    events: Vec<Event>,
}

impl LScheme {
    pub fn new(surface_index: u32, strands: usize, events: Vec<Event>) -> Result<Self, LSchemeError> {
        let ls = Self { surface_index, strands, events };
        ls.validate()?;
        Ok(ls)
    }

    pub fn surface_index(&self) -> u32 {
        self.surface_index
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    /// Running real-point count before each event, followed by the final one.
    pub fn counts(&self) -> Result<Vec<usize>, LSchemeError> {
        let m = self.strands;
        if m < 2 {
            return Err(LSchemeError::TooFewStrands(m));
        }
        let mut c = m;
        let mut out = Vec::with_capacity(self.events.len() + 1);
        for (pos, &e) in self.events.iter().enumerate() {
            out.push(c);
            let bad_index = LSchemeError::IndexOutOfRange { pos, event: e, count: c };
            let bad_count = LSchemeError::InconsistentCount { pos, event: e, strands: m };
            match e {
                Event::TangencyDescend(k) => {
                    if c < 2 {
                        return Err(bad_count);
                    }
                    if k == 0 || k > c - 1 {
                        return Err(bad_index);
                    }
                    c -= 2;
                }
                Event::TangencyAscend(k) | Event::SolitaryOval(k) => {
                    if c + 2 > m {
                        return Err(bad_count);
                    }
                    if k == 0 || k > c + 1 {
                        return Err(bad_index);
                    }
                    if matches!(e, Event::TangencyAscend(_)) {
                        c += 2;
                    }
                }
                Event::Crossing(k) => {
                    if k == 0 || k + 1 > c {
                        return Err(bad_index);
                    }
                }
                Event::DivisorDescend | Event::DivisorAscend => {}
            }
        }
        if c != m {
            return Err(LSchemeError::UnbalancedEnd { count: c, strands: m });
        }
        out.push(c);
        Ok(out)
    }

    pub fn validate(&self) -> Result<(), LSchemeError> {
        self.counts().map(|_| ())
    }

    /// The word obtained from the substitution rules, before cancellation
    /// and without the `Δ^n` factor.
    pub fn substituted_word(&self) -> Result<BraidWord, LSchemeError> {
        let m = self.strands;
        let mut word: Vec<Letter> = Vec::new();
        let mut low = false;
        for (pos, &e) in self.events.iter().enumerate() {
            let no_rule = LSchemeError::NoMatchingRule { pos, event: e };
            match (low, e) {
                (_, Event::Crossing(j)) => word.push(Letter::neg(j)),
                (false, Event::DivisorDescend) => word.extend((1..m).map(Letter::pos)),
                (false, Event::DivisorAscend) => word.extend((1..m).rev().map(Letter::pos)),
                (false, Event::TangencyDescend(s)) => {
                    word.push(Letter::neg(s));
                    word.extend(tau(s, m - 1));
                    low = true;
                }
                (true, Event::DivisorDescend) => {
                    if m < 3 {
                        return Err(no_rule);
                    }
                    word.extend((1..m - 2).map(Letter::pos));
                    word.extend([Letter::pos(m - 2), Letter::pos(m - 2)]);
                }
                (true, Event::DivisorAscend) => {
                    if m < 3 {
                        return Err(no_rule);
                    }
                    word.push(Letter::neg(m - 2));
                    word.extend([Letter::pos(m - 1), Letter::pos(m - 1)]);
                    word.extend((1..=m - 2).rev().map(Letter::pos));
                }
                (true, Event::TangencyAscend(t)) => {
                    word.extend(tau(m - 1, t));
                    low = false;
                }
                (true, Event::SolitaryOval(k)) => {
                    word.extend(tau(m - 1, k));
                    word.push(Letter::neg(k));
                    word.extend(tau(k, m - 1));
                }
                _ => return Err(no_rule),
            }
        }
        if low {
            return Err(LSchemeError::UnbalancedEnd { count: m - 2, strands: m });
        }
        Ok(BraidWord::new(m, word)?)
    }

    /// The braid `b_R Δ^n` split into its two factors, with `b_R` freely
    /// reduced.
    pub fn compile(&self) -> Result<CompiledBraid, LSchemeError> {
        Ok(CompiledBraid { real: self.substituted_word()?.free_reduce(), delta_power: self.surface_index as i64 })
    }

    pub fn to_braid(&self) -> Result<BraidWord, LSchemeError> {
        Ok(self.compile()?.word())
    }

    /// Tangency sequence `r_1 … r_q` with crossings and solitary ovals
    /// expanded; `true` marks `>`.
    pub fn tangencies(&self) -> Result<Vec<(bool, usize)>, LSchemeError> {
        if self.strands != 3 {
            return Err(LSchemeError::NotTrigonal(self.strands));
        }
        let mut r = Vec::new();
        for (pos, e) in self.events.iter().enumerate() {
            match *e {
                Event::TangencyDescend(k) => r.push((true, k)),
                Event::TangencyAscend(k) => r.push((false, k)),
                Event::Crossing(k) => r.extend([(true, k), (false, k)]),
                Event::SolitaryOval(k) => r.extend([(false, k), (true, k)]),
                Event::DivisorDescend | Event::DivisorAscend => return Err(LSchemeError::DivisorInTrigonal(pos)),
            }
        }
        Ok(r)
    }

    fn first_block_is_short(&self, r: &[(bool, usize)]) -> bool {
        let (Some(&(true, k1)), Some(&(false, kq))) = (r.first(), r.last()) else {
            return false;
        };
        if self.surface_index.is_multiple_of(2) {
            k1 == kq
        } else {
            k1.abs_diff(kq) == 1
        }
    }

    pub fn root_scheme(&self) -> Result<RootScheme, LSchemeError> {
        self.root_scheme_with(RootSchemeTable::Calibrated)
    }

    pub fn root_scheme_with(&self, table: RootSchemeTable) -> Result<RootScheme, LSchemeError> {
        use RootLetter::{P, Q, R};
        let r = self.tangencies()?;
        let mut out = Vec::new();
        if r.is_empty() {
            return Ok(RootScheme(out));
        }
        if !self.first_block_is_short(&r) {
            out.push(Q);
        }
        out.push(R);
        let long = [P, Q, P, R];
        let short = [Q, R];
        for w in r.windows(2) {
            let ((_, kp), (descend, k)) = (w[0], w[1]);
            if k == kp {
                out.push(R);
                continue;
            }
            let ascend_block: &[RootLetter] = match table {
                RootSchemeTable::Calibrated => &long,
                RootSchemeTable::Literal => &short,
            };
            let descend_block: &[RootLetter] = match table {
                RootSchemeTable::Calibrated => &short,
                RootSchemeTable::Literal => &long,
            };
            out.extend_from_slice(if descend { descend_block } else { ascend_block });
        }
        Ok(RootScheme(out))
    }

    /// The weighted comb with halved weights; the empty encoding gives
    /// `(1, 6n, 3n, 2n)`.
    pub fn weighted_comb(&self) -> Result<WeightedComb, LSchemeError> {
        let r = self.tangencies()?;
        let n = self.surface_index as i64;
        let (mut a, mut b, mut g) = (6 * n, 3 * n, 2 * n);
        if r.is_empty() {
            return Ok(WeightedComb::new(Comb::unit(), a as u32, b as u32, g as u32));
        }
        let mut comb = Vec::new();
        if self.first_block_is_short(&r) {
            comb.push(Gen::G3);
            a -= 1;
        } else {
            comb.push(Gen::G5);
            a -= 1;
            b -= 1;
        }
        for (step, w) in r.windows(2).enumerate() {
            let ((_, kp), (descend, k)) = (w[0], w[1]);
            match (descend, k == kp) {
                (false, true) => {
                    comb.push(Gen::G2);
                    a -= 1;
                }
                (true, true) => {
                    comb.push(Gen::G3);
                    a -= 1;
                }
                (true, false) => {
                    comb.push(Gen::G5);
                    a -= 1;
                    b -= 1;
                }
                (false, false) => {
                    comb.extend([Gen::G6, Gen::G1, Gen::G4, Gen::G1, Gen::G6]);
                    a -= 1;
                    b -= 1;
                    g -= 2;
                }
            }
            for (name, v) in [("alpha", a), ("beta", b), ("gamma", g)] {
                if v < 0 {
                    return Err(LSchemeError::NegativeWeight { name, step: step + 2 });
                }
            }
        }
        for (name, v) in [("alpha", a), ("beta", b), ("gamma", g)] {
            if v < 0 {
                return Err(LSchemeError::NegativeWeight { name, step: 1 });
            }
            if v % 2 != 0 {
                return Err(LSchemeError::OddWeight { name, value: v });
            }
        }
        Ok(WeightedComb::new(Comb(comb), (a / 2) as u32, (b / 2) as u32, (g / 2) as u32))
    }

    /// Parses a file with one scheme per line; `#` starts a comment.
    pub fn parse_many(text: &str) -> Result<Vec<LScheme>, (usize, LSchemeError)> {
        text.lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .map(|(i, l)| l.parse().map_err(|e| (i, e)))
            .collect()
    }
}

/// `τ_{s,t}` as a list of letters.
fn tau(s: usize, t: usize) -> Vec<Letter> {
    let mut out = Vec::new();
    if t > s {
        for j in s..t {
            out.push(Letter::neg(j + 1));
            out.push(Letter::pos(j));
        }
    } else {
        for j in (t + 1..=s).rev() {
            out.push(Letter::neg(j - 1));
            out.push(Letter::pos(j));
        }
    }
    out
}

impl fmt::Display for LScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} m={};", self.surface_index, self.strands)?;
        let mut i = 0;
        while i < self.events.len() {
            let e = self.events[i];
            let run = self.events[i..].iter().take_while(|&&x| x == e).count();
            if run == 1 {
                write!(f, " {e}")?;
            } else {
                write!(f, " {e}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

impl FromStr for LScheme {
    type Err = LSchemeError;

    /// `n=<int> m=<int>;` followed by `>k <k xk ok / \` tokens, each with an
    /// optional `^<count>`.
    fn from_str(s: &str) -> Result<Self, LSchemeError> {
        let perr = |pos: usize, msg: &str| LSchemeError::Parse { pos, msg: msg.to_string() };
        let semi = s.find(';').ok_or_else(|| perr(s.len(), "expected 'n=<int> m=<int>;' header"))?;
        let mut n = None;
        let mut m = None;
        for (pos, tok) in tokens(&s[..semi]) {
            let (key, val) = tok.split_once('=').ok_or_else(|| perr(pos, "expected key=value"))?;
            let v: u32 = val.parse().map_err(|_| perr(pos + key.len() + 1, "expected an integer"))?;
            match key {
                "n" => n = Some(v),
                "m" => m = Some(v as usize),
                _ => return Err(perr(pos, "unknown header key")),
            }
        }
        let (Some(n), Some(m)) = (n, m) else {
            return Err(perr(0, "header needs both n and m"));
        };
        let mut events = Vec::new();
        for (off, tok) in tokens(&s[semi + 1..]) {
            let pos = semi + 1 + off;
            let (head, count) = match tok.split_once('^') {
                Some((h, c)) => {
                    let c: usize = c.parse().map_err(|_| perr(pos + h.len() + 1, "invalid repetition count"))?;
                    (h, c)
                }
                None => (tok, 1),
            };
            let idx = |rest: &str| -> Result<usize, LSchemeError> {
                rest.parse().ok().filter(|k| *k >= 1).ok_or_else(|| perr(pos + 1, "expected a positive index"))
            };
            let e = match head.as_bytes().first() {
                Some(b'>') => Event::TangencyDescend(idx(&head[1..])?),
                Some(b'<') => Event::TangencyAscend(idx(&head[1..])?),
                Some(b'x') => Event::Crossing(idx(&head[1..])?),
                Some(b'o') => Event::SolitaryOval(idx(&head[1..])?),
                Some(b'\\') if head.len() == 1 => Event::DivisorDescend,
                Some(b'/') if head.len() == 1 => Event::DivisorAscend,
                _ => return Err(perr(pos, "unknown token")),
            };
            events.extend(std::iter::repeat_n(e, count));
        }
        LScheme::new(n, m, events)
    }
}

impl Serialize for LScheme {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LScheme {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `b_R · Δ^n` with the two factors kept apart for display.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledBraid {
    pub real: BraidWord,
    pub delta_power: i64,
}

impl CompiledBraid {
    pub fn word(&self) -> BraidWord {
        let d = BraidWord::delta_power(self.real.strands(), self.delta_power).expect("strands validated");
        self.real.compose(&d).expect("same strand count")
    }
}

impl fmt::Display for CompiledBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "strands={};", self.real.strands())?;
        if !self.real.is_empty() {
            write!(f, " {}", self.real.body())?;
        }
        match self.delta_power {
            0 => Ok(()),
            1 => write!(f, " D"),
            k => write!(f, " D^{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootLetter {
    P,
    Q,
    R,
}

impl RootLetter {
    pub fn multiplicity(self) -> u8 {
        match self {
            RootLetter::P => 3,
            RootLetter::Q => 2,
            RootLetter::R => 1,
        }
    }
}

/// Which of the two disagreeing block orders to use for tangencies whose
/// index changes by one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootSchemeTable {
    /// `<k` after `>k±1` gives `(p,3),(q,2),(p,3),(r,1)`; `>k` after `<k±1`
    /// gives `(q,2),(r,1)`. This order reproduces the worked example.
    Calibrated,
    /// The two blocks exchanged.
    Literal,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootScheme(pub Vec<RootLetter>);

impl RootScheme {
    pub fn entries(&self) -> Vec<(char, u8)> {
        self.0
            .iter()
            .map(|l| {
                let c = match l {
                    RootLetter::P => 'p',
                    RootLetter::Q => 'q',
                    RootLetter::R => 'r',
                };
                (c, l.multiplicity())
            })
            .collect()
    }
}

impl fmt::Display for RootScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries().iter().map(|(c, m)| format!("({c},{m})")).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for RootScheme {
    type Err = LSchemeError;

    fn from_str(s: &str) -> Result<Self, LSchemeError> {
        let body = s.trim();
        let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(body);
        let mut out = Vec::new();
        let mut rest = body;
        while let Some(open) = rest.find('(') {
            let close = rest[open..]
                .find(')')
                .map(|c| c + open)
                .ok_or(LSchemeError::Parse { pos: s.len() - rest.len() + open, msg: "unclosed pair".into() })?;
            let inner: String = rest[open + 1..close].chars().filter(|c| !c.is_whitespace()).collect();
            let letter = match inner.as_str() {
                "p,3" => RootLetter::P,
                "q,2" => RootLetter::Q,
                "r,1" => RootLetter::R,
                _ => {
                    return Err(LSchemeError::Parse {
                        pos: s.len() - rest.len() + open,
                        msg: format!("invalid root-scheme entry ({inner})"),
                    })
                }
            };
            out.push(letter);
            rest = &rest[close + 1..];
        }
        Ok(RootScheme(out))
    }
}

impl Serialize for RootScheme {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The two families of local rewrites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleSet {
    /// Moves that preserve realizability by pseudoholomorphic curves.
    Pseudo,
    /// Moves that preserve realizability by real algebraic trigonal curves.
    Alg,
}

impl FromStr for RuleSet {
    type Err = LSchemeError;
    fn from_str(s: &str) -> Result<Self, LSchemeError> {
        match s {
            "pseudo" => Ok(RuleSet::Pseudo),
            "alg" => Ok(RuleSet::Alg),
            _ => Err(LSchemeError::UnknownRule(s.to_string())),
        }
    }
}

/// Matches at the start of a slice, given the strand count, and returns the
/// number of events consumed with their replacement.
type Matcher = fn(&[Event], usize) -> Option<(usize, Vec<Event>)>;

/// A named local rewrite.
#[derive(Debug, Clone, Copy)]
pub struct Rule {
    pub id: &'static str,
    pub set: RuleSet,
    /// Pattern in event notation, for display.
    pub pattern: &'static str,
    /// Change in the number of events.
    pub event_delta: isize,
    apply: Matcher,
}

use Event::{
    Crossing as X, DivisorAscend as Slash, DivisorDescend as Back, SolitaryOval as O, TangencyAscend as Up,
    TangencyDescend as Down,
};

fn adjacent(a: usize, b: usize) -> bool {
    a.abs_diff(b) == 1
}

fn far(a: usize, b: usize) -> bool {
    a.abs_diff(b) > 1
}

fn swap_divisor(w: &[Event], div: Event) -> Option<(usize, Vec<Event>)> {
    match *w {
        [d, u, ..] if d == div && u.is_u() => Some((2, vec![u, d])),
        [u, d, ..] if d == div && u.is_u() => Some((2, vec![d, u])),
        _ => None,
    }
}

pub const RULES: &[Rule] = &[
    Rule {
        id: "cross-descend",
        set: RuleSet::Pseudo,
        pattern: "xj >j±1 -> xj±1 >j",
        event_delta: 0,
        apply: |w, _| match *w {
            [X(j), Down(k), ..] if adjacent(j, k) => Some((2, vec![X(k), Down(j)])),
            _ => None,
        },
    },
    Rule {
        id: "ascend-cross",
        set: RuleSet::Pseudo,
        pattern: "<j±1 xj -> <j xj±1",
        event_delta: 0,
        apply: |w, _| match *w {
            [Up(k), X(j), ..] if adjacent(j, k) => Some((2, vec![Up(j), X(k)])),
            _ => None,
        },
    },
    Rule {
        id: "cross-commute",
        set: RuleSet::Pseudo,
        pattern: "xj uk -> uk xj, |k-j|>1",
        event_delta: 0,
        apply: |w, _| match *w {
            [X(j), u, ..] if u.is_u() && far(j, u.index().unwrap_or(j)) => Some((2, vec![u, X(j)])),
            _ => None,
        },
    },
    Rule {
        id: "divisor-descend",
        set: RuleSet::Pseudo,
        pattern: "\\ >m-1 <-> / >1",
        event_delta: 0,
        apply: |w, m| match *w {
            [Back, Down(k), ..] if k == m - 1 => Some((2, vec![Slash, Down(1)])),
            [Slash, Down(1), ..] => Some((2, vec![Back, Down(m - 1)])),
            _ => None,
        },
    },
    Rule {
        id: "ascend-divisor",
        set: RuleSet::Pseudo,
        pattern: "<m-1 / <-> <1 \\",
        event_delta: 0,
        apply: |w, m| match *w {
            [Up(k), Slash, ..] if k == m - 1 => Some((2, vec![Up(1), Back])),
            [Up(1), Back, ..] => Some((2, vec![Up(m - 1), Slash])),
            _ => None,
        },
    },
    Rule {
        id: "backslash-commute",
        set: RuleSet::Pseudo,
        pattern: "\\ uk <-> uk \\",
        event_delta: 0,
        apply: |w, _| swap_divisor(w, Back),
    },
    Rule {
        id: "slash-commute",
        set: RuleSet::Pseudo,
        pattern: "/ uk <-> uk /",
        event_delta: 0,
        apply: |w, _| swap_divisor(w, Slash),
    },
    Rule {
        id: "oval-slide-left",
        set: RuleSet::Pseudo,
        pattern: "ok <k >k-1 <-> <k xk-1 >k",
        event_delta: 0,
        apply: |w, _| match *w {
            [O(k), Up(k2), Down(k3), ..] if k == k2 && k3 + 1 == k => Some((3, vec![Up(k), X(k - 1), Down(k)])),
            [Up(k), X(k2), Down(k3), ..] if k3 == k && k2 + 1 == k => Some((3, vec![O(k), Up(k), Down(k - 1)])),
            _ => None,
        },
    },
    Rule {
        id: "oval-slide-right",
        set: RuleSet::Pseudo,
        pattern: "<k xk-1 >k <-> <k-1 >k ok",
        event_delta: 0,
        apply: |w, _| match *w {
            [Up(k), X(k2), Down(k3), ..] if k3 == k && k2 + 1 == k => Some((3, vec![Up(k - 1), Down(k), O(k)])),
            [Up(k1), Down(k), O(k2), ..] if k2 == k && k1 + 1 == k => Some((3, vec![Up(k), X(k - 1), Down(k)])),
            _ => None,
        },
    },
    Rule {
        id: "cancel-tangents",
        set: RuleSet::Pseudo,
        pattern: "<j >j±1 -> (empty)",
        event_delta: -2,
        apply: |w, _| match *w {
            [Up(j), Down(k), ..] if adjacent(j, k) => Some((2, vec![])),
            _ => None,
        },
    },
    Rule {
        id: "tangent-swap",
        set: RuleSet::Pseudo,
        pattern: "<j >k -> >k <j, |k-j|>1",
        event_delta: 0,
        apply: |w, _| match *w {
            [Up(j), Down(k), ..] if far(j, k) => Some((2, vec![Down(k), Up(j)])),
            _ => None,
        },
    },
    Rule {
        id: "remove-oval",
        set: RuleSet::Pseudo,
        pattern: "oj -> (empty)",
        event_delta: -1,
        apply: |w, _| match *w {
            [O(_), ..] => Some((1, vec![])),
            _ => None,
        },
    },
    Rule {
        id: "remove-expanded-oval",
        set: RuleSet::Pseudo,
        pattern: "<j >j -> (empty)",
        event_delta: -2,
        apply: |w, _| match *w {
            [Up(j), Down(k), ..] if j == k => Some((2, vec![])),
            _ => None,
        },
    },
    Rule {
        id: "alg-descend",
        set: RuleSet::Alg,
        pattern: ">j <j±1 >j -> >j",
        event_delta: -2,
        apply: |w, _| match *w {
            [Down(j), Up(k), Down(j2), ..] if j == j2 && adjacent(j, k) => Some((3, vec![Down(j)])),
            _ => None,
        },
    },
    Rule {
        id: "alg-ascend",
        set: RuleSet::Alg,
        pattern: "<j >j±1 <j -> <j",
        event_delta: -2,
        apply: |w, _| match *w {
            [Up(j), Down(k), Up(j2), ..] if j == j2 && adjacent(j, k) => Some((3, vec![Up(j)])),
            _ => None,
        },
    },
];

pub fn rule(set: RuleSet, id: &str) -> Result<&'static Rule, LSchemeError> {
    RULES.iter().find(|r| r.set == set && r.id == id).ok_or_else(|| LSchemeError::UnknownRule(id.to_string()))
}

impl Rule {
    /// Applies the rule at event `pos`, returning the new scheme and the
    /// number of events removed and inserted.
    pub fn apply_at(&self, ls: &LScheme, pos: usize) -> Result<(LScheme, usize, usize), LSchemeError> {
        let mismatch = || LSchemeError::PatternMismatch { rule: self.id.to_string(), pos };
        if pos >= ls.events.len() {
            return Err(mismatch());
        }
        let (used, repl) = (self.apply)(&ls.events[pos..], ls.strands).ok_or_else(mismatch)?;
        let inserted = repl.len();
        let mut events = ls.events[..pos].to_vec();
        events.extend(repl);
        events.extend_from_slice(&ls.events[pos + used..]);
        let out =
            LScheme::new(ls.surface_index, ls.strands, events).map_err(|e| LSchemeError::InvalidResult(Box::new(e)))?;
        Ok((out, used, inserted))
    }
}

pub fn rewrite(ls: &LScheme, set: RuleSet, rule_id: &str, pos: usize) -> Result<LScheme, LSchemeError> {
    Ok(rule(set, rule_id)?.apply_at(ls, pos)?.0)
}

pub fn rewrite_pseudo(ls: &LScheme, rule_id: &str, pos: usize) -> Result<LScheme, LSchemeError> {
    rewrite(ls, RuleSet::Pseudo, rule_id, pos)
}

pub fn rewrite_alg(ls: &LScheme, rule_id: &str, pos: usize) -> Result<LScheme, LSchemeError> {
    rewrite(ls, RuleSet::Alg, rule_id, pos)
}

/// Every `(rule id, position)` whose rewrite yields a valid scheme.
pub fn applicable_rewrites(ls: &LScheme, set: RuleSet) -> Vec<(&'static str, usize)> {
    let mut out = Vec::new();
    for r in RULES.iter().filter(|r| r.set == set) {
        for pos in 0..ls.events.len() {
            if r.apply_at(ls, pos).is_ok() {
                out.push((r.id, pos));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ls(s: &str) -> LScheme {
        s.parse().unwrap()
    }

    const EXAMPLE: &str = "n=2 m=4; >3 o3^2 x1 o2^2 x1^4 / <3 x2^2 >3 <3";

    #[test]
    fn parse_render() {
        let a = ls(EXAMPLE);
        assert_eq!(a.events().len(), 16);
        assert_eq!(a.to_string(), EXAMPLE);
        assert_eq!(ls("n=0 m=3;").events().len(), 0);
        assert!(matches!("n=0 m=4; >5 <3".parse::<LScheme>(), Err(LSchemeError::IndexOutOfRange { pos: 0, .. })));
        assert!(matches!("n=0 m=4; >3 q3".parse::<LScheme>(), Err(LSchemeError::Parse { pos: 12, .. })));
        assert!(matches!("n=0 m=3; >1".parse::<LScheme>(), Err(LSchemeError::UnbalancedEnd { .. })));
        assert!(matches!("n=0 m=3; <1".parse::<LScheme>(), Err(LSchemeError::InconsistentCount { .. })));
        let many = LScheme::parse_many("# two schemes\nn=1 m=3; >2 <2\n\nn=0 m=3; x1 # trailing\n").unwrap();
        assert_eq!(many.len(), 2);
        assert_eq!(LScheme::parse_many("n=1 m=3; >2\n").unwrap_err().0, 1);
    }

    #[test]
    fn example_braid() {
        let c = ls(EXAMPLE).compile().unwrap();
        assert_eq!(
            c.to_string(),
            "strands=4; s3^-3 s1^-1 s2^-1 s3 s2^-2 s3^-1 s2 s1^-4 s2^-1 s3^2 s2 s1 s2^-2 s3^-1 D^2"
        );
        let printed: BraidWord = c.to_string().parse().unwrap();
        assert_eq!(ls(EXAMPLE).to_braid().unwrap(), printed);
    }

    #[test]
    fn taus() {
        let w = |v: Vec<Letter>| BraidWord::new(5, v).unwrap().body();
        assert_eq!(w(tau(1, 3)), "s2^-1 s1 s3^-1 s2");
        assert_eq!(w(tau(3, 1)), "s2^-1 s3 s1^-1 s2");
        assert_eq!(w(tau(2, 2)), "");
    }

    #[test]
    fn oval_between_full_regions() {
        // ⊃3 o2 ⊂3 in B_4: σ3⁻¹ τ(3,3) | τ(3,2) σ2⁻¹ τ(2,3) | τ(3,3)
        let w = ls("n=0 m=4; >3 o2 <3").substituted_word().unwrap();
        assert_eq!(w.body(), "s3^-1 s2^-1 s3 s2^-1 s3^-1 s2");
        assert!(ls("n=0 m=3;").to_braid().unwrap().is_empty());
    }

    #[test]
    fn divisor_substitutions() {
        let full = ls("n=0 m=4; \\ /").substituted_word().unwrap();
        assert_eq!(full.body(), "s1 s2 s3^2 s2 s1");
        let low = ls("n=0 m=4; >3 \\ / <3").substituted_word().unwrap();
        assert_eq!(low.body(), "s3^-1 s1 s2^2 s2^-1 s3^2 s2 s1");
        assert!(matches!(ls("n=0 m=2; >1 / <1").substituted_word(), Err(LSchemeError::NoMatchingRule { pos: 1, .. })));
    }

    #[test]
    fn root_schemes() {
        let a = ls("n=1 m=3; >2 <1 >2 o2 <2");
        assert_eq!(
            a.root_scheme().unwrap().to_string(),
            "((q,2),(r,1),(p,3),(q,2),(p,3),(r,1),(q,2),(r,1),(r,1),(r,1),(r,1))"
        );
        assert_ne!(a.root_scheme_with(RootSchemeTable::Literal).unwrap(), a.root_scheme().unwrap());
        let same = ls("n=2 m=3; >1 <1 >1 <1").root_scheme().unwrap();
        assert_eq!(same.to_string(), "((r,1),(r,1),(r,1),(r,1))");
        assert!(matches!(ls(EXAMPLE).root_scheme(), Err(LSchemeError::NotTrigonal(4))));
        let rs = a.root_scheme().unwrap();
        assert_eq!(rs.to_string().parse::<RootScheme>().unwrap(), rs);
    }

    #[test]
    fn weighted_combs() {
        assert_eq!(ls("n=1 m=3; >2 <2").weighted_comb().unwrap().to_string(), "g5 g2 | 2 1 1");
        assert_eq!(
            ls("n=1 m=3; >2 <1 >2 o2 <2").weighted_comb().unwrap().to_string(),
            "g5 g6 g1 g4 g1 g6 g5 g2 g3 g2 | 0 0 0"
        );
        assert_eq!(ls("n=2 m=3;").weighted_comb().unwrap().to_string(), "1 | 12 6 4");
        assert!(matches!(ls("n=0 m=3; >1 <2").weighted_comb(), Err(LSchemeError::NegativeWeight { .. })));
    }

    #[test]
    fn pseudo_rewrites() {
        assert_eq!(rewrite_pseudo(&ls("n=0 m=3; >1 <1 >2 <2"), "cancel-tangents", 1).unwrap(), ls("n=0 m=3; >1 <2"));
        assert_eq!(rewrite_pseudo(&ls("n=0 m=3; >2 o2 <2"), "remove-oval", 1).unwrap(), ls("n=0 m=3; >2 <2"));
        assert_eq!(
            rewrite_pseudo(&ls("n=0 m=3; >2 <2 >2 <2"), "remove-expanded-oval", 1).unwrap(),
            ls("n=0 m=3; >2 <2")
        );
        assert_eq!(rewrite_pseudo(&ls("n=0 m=4; x1 >3 <3"), "cross-commute", 0).unwrap(), ls("n=0 m=4; >3 x1 <3"));
        assert!(matches!(
            rewrite_pseudo(&ls("n=0 m=4; x1 >2 <2"), "cross-commute", 0),
            Err(LSchemeError::PatternMismatch { .. })
        ));
        assert!(matches!(rewrite_pseudo(&ls("n=0 m=3;"), "nope", 0), Err(LSchemeError::UnknownRule(_))));
        let slid = rewrite_pseudo(&ls("n=0 m=4; >3 <3 x2 >3 <3"), "oval-slide-left", 1).unwrap();
        assert_eq!(slid, ls("n=0 m=4; >3 o3 <3 >2 <3"));
        let back = rewrite_pseudo(&slid, "oval-slide-left", 1).unwrap();
        assert_eq!(back, ls("n=0 m=4; >3 <3 x2 >3 <3"));
    }

    #[test]
    fn alg_rewrites() {
        assert_eq!(rewrite_alg(&ls("n=0 m=3; >2 <1 >2 <2"), "alg-descend", 0).unwrap(), ls("n=0 m=3; >2 <2"));
        assert_eq!(rewrite_alg(&ls("n=0 m=3; >1 <2 >1 <2"), "alg-ascend", 1).unwrap(), ls("n=0 m=3; >1 <2"));
        assert!(matches!(
            rewrite_alg(&ls("n=0 m=4; >1 <3 >1 <1"), "alg-descend", 0),
            Err(LSchemeError::PatternMismatch { .. })
        ));
        assert!(rewrite_alg(&ls("n=0 m=3; >2 <1 >2 <2"), "cancel-tangents", 1).is_err());
    }
}
