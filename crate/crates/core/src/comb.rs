//! Combs (words over `g1 … g6`), weighted combs, closures, chains and the
//! multiplicity `μ(w)`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::lscheme::{LScheme, LSchemeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
}

impl Gen {
    pub const ALL: [Gen; 6] = [Gen::G1, Gen::G2, Gen::G3, Gen::G4, Gen::G5, Gen::G6];

    pub fn from_index(i: usize) -> Option<Gen> {
        Self::ALL.get(i.checked_sub(1)?).copied()
    }

    pub fn index(self) -> usize {
        self as usize + 1
    }

    /// The generator this one may be joined to in a closure.
    pub fn partner(self) -> Gen {
        match self {
            Gen::G1 => Gen::G2,
            Gen::G2 => Gen::G1,
            Gen::G3 => Gen::G4,
            Gen::G4 => Gen::G3,
            Gen::G5 => Gen::G6,
            Gen::G6 => Gen::G5,
        }
    }

    /// Letters of types 1 to 4 determine the parity classes of a comb.
    pub fn is_low(self) -> bool {
        matches!(self, Gen::G1 | Gen::G2 | Gen::G3 | Gen::G4)
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.index())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Comb(pub Vec<Gen>);

impl Comb {
    pub fn unit() -> Self {
        Self(Vec::new())
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, g: Gen) -> usize {
        self.0.iter().filter(|&&x| x == g).count()
    }

    pub fn counts(&self) -> [usize; 6] {
        let mut c = [0; 6];
        for g in &self.0 {
            c[*g as usize] += 1;
        }
        c
    }

    pub fn concat(&self, other: &Comb) -> Comb {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Comb(v)
    }

    pub fn is_closed(&self) -> bool {
        self.find_closure().is_some()
    }

    /// A non-crossing matching of every letter with its partner type, if one
    /// exists. Adjacent partners cancel like inverse letters in a free
    /// product, so a single stack pass decides existence.
    pub fn find_closure(&self) -> Option<ClosureMatching> {
        let mut stack: Vec<usize> = Vec::new();
        let mut pairs = Vec::with_capacity(self.0.len() / 2);
        for (j, g) in self.0.iter().enumerate() {
            match stack.last() {
                Some(&i) if self.0[i] == g.partner() => {
                    stack.pop();
                    pairs.push((i, j));
                }
                _ => stack.push(j),
            }
        }
        if !stack.is_empty() {
            return None;
        }
        pairs.sort_unstable();
        Some(ClosureMatching { pairs })
    }

    /// Parity class (0 or 1) of every `g1`/`g2` position: the number of type
    /// 1..4 letters before it, mod 2.
    pub fn parity_classes(&self) -> Vec<(usize, u8)> {
        let mut before = 0usize;
        let mut out = Vec::new();
        for (j, g) in self.0.iter().enumerate() {
            if matches!(g, Gen::G1 | Gen::G2) {
                out.push((j, (before % 2) as u8));
            }
            if g.is_low() {
                before += 1;
            }
        }
        out
    }

    /// `| #E_1 - #E_2 |`.
    pub fn parity_imbalance(&self) -> usize {
        let cls = self.parity_classes();
        let ones = cls.iter().filter(|(_, c)| *c == 1).count();
        ones.abs_diff(cls.len() - ones)
    }

    fn replace(&self, pos: usize, with: &[Gen]) -> Comb {
        let mut v = Vec::with_capacity(self.0.len() + with.len());
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(with);
        v.extend_from_slice(&self.0[pos + 1..]);
        Comb(v)
    }
}

impl fmt::Display for Comb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let s: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        f.write_str(&s.join(" "))
    }
}

impl FromStr for Comb {
    type Err = CombError;

    /// Whitespace-separated `g<i>` tokens, `1` for the unit, and
    /// parenthesised groups with an optional `^<k>` power. Juxtaposed
    /// generators such as `g3g2` are accepted too.
    fn from_str(s: &str) -> Result<Self, CombError> {
        let mut p = CombParser { src: s.as_bytes(), pos: 0 };
        let v = p.seq()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected input"));
        }
        Ok(Comb(v))
    }
}

struct CombParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl CombParser<'_> {
    fn err(&self, msg: &str) -> CombError {
        CombError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn number(&mut self) -> Result<usize, CombError> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| CombError::Parse { pos: start, msg: "expected a number".into() })
    }

    fn power(&mut self) -> Result<usize, CombError> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&b'^') {
            self.pos += 1;
            self.skip_ws();
            self.number()
        } else {
            Ok(1)
        }
    }

    fn seq(&mut self) -> Result<Vec<Gen>, CombError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.src.get(self.pos) {
                Some(b'g') => {
                    let start = self.pos;
                    self.pos += 1;
                    let g = self
                        .number()
                        .ok()
                        .and_then(Gen::from_index)
                        .ok_or(CombError::Parse { pos: start, msg: "expected g1..g6".into() })?;
                    let k = self.power()?;
                    out.extend(std::iter::repeat_n(g, k));
                }
                Some(b'1') => {
                    self.pos += 1;
                }
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.seq()?;
                    self.skip_ws();
                    if self.src.get(self.pos) != Some(&b')') {
                        return Err(self.err("expected ')'"));
                    }
                    self.pos += 1;
                    let k = self.power()?;
                    for _ in 0..k {
                        out.extend_from_slice(&inner);
                    }
                }
                _ => return Ok(out),
            }
        }
    }
}

impl Serialize for Comb {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Comb {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Pairs `(i, j)`, `i < j`, of joined positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureMatching {
    pub pairs: Vec<(usize, usize)>,
}

impl ClosureMatching {
    /// Checks the matching against `comb` from scratch: every position used
    /// once, partner types, no two chords interleaving.
    pub fn is_valid_for(&self, comb: &Comb) -> bool {
        let n = comb.len();
        let mut seen = vec![false; n];
        for &(i, j) in &self.pairs {
            if i >= j || j >= n || seen[i] || seen[j] || comb.0[i].partner() != comb.0[j] {
                return false;
            }
            seen[i] = true;
            seen[j] = true;
        }
        if seen.iter().any(|s| !s) {
            return false;
        }
        self.pairs.iter().all(|&(a, b)| self.pairs.iter().all(|&(c, d)| !(a < c && c < b && b < d)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedComb {
    pub comb: Comb,
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
}

impl WeightedComb {
    pub fn new(comb: Comb, alpha: u32, beta: u32, gamma: u32) -> Self {
        Self { comb, alpha, beta, gamma }
    }

    pub fn weights(&self) -> (u32, u32, u32) {
        (self.alpha, self.beta, self.gamma)
    }

    pub fn is_terminal(&self) -> bool {
        self.weights() == (0, 0, 0)
    }
}

impl fmt::Display for WeightedComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {} {} {}", self.comb, self.alpha, self.beta, self.gamma)
    }
}

impl FromStr for WeightedComb {
    type Err = CombError;

    /// `comb | alpha beta gamma`, or the tuple form `(comb, alpha, beta, gamma)`.
    fn from_str(s: &str) -> Result<Self, CombError> {
        let t = s.trim();
        if t.starts_with('(') && t.ends_with(')') && t.contains(',') {
            let start = s.len() - s.trim_start().len() + 1;
            let inner = &t[1..t.len() - 1];
            let parts: Vec<&str> = inner.rsplitn(4, ',').collect();
            let [g, b, a, comb] = parts[..] else {
                return Err(CombError::Parse { pos: start, msg: "expected (comb, alpha, beta, gamma)".into() });
            };
            let comb: Comb = comb.parse().map_err(|e| match e {
                CombError::Parse { pos, msg } => CombError::Parse { pos: pos + start, msg },
            })?;
            let mut ws = [0u32; 3];
            for (w, part) in ws.iter_mut().zip([a, b, g]) {
                *w = part.trim().parse().map_err(|_| CombError::Parse {
                    pos: part.trim_start().as_ptr() as usize - s.as_ptr() as usize,
                    msg: "expected a non-negative integer weight".into(),
                })?;
            }
            return Ok(Self { comb, alpha: ws[0], beta: ws[1], gamma: ws[2] });
        }
        let bar = s.find('|').ok_or(CombError::Parse { pos: s.len(), msg: "expected '|'".into() })?;
        let comb: Comb = s[..bar].parse()?;
        let rest = &s[bar + 1..];
        let mut ws = Vec::new();
        for (off, tok) in rest.split_whitespace().map(|t| (t.as_ptr() as usize - s.as_ptr() as usize, t)) {
            ws.push(
                tok.parse::<u32>()
                    .map_err(|_| CombError::Parse { pos: off, msg: "expected a non-negative integer weight".into() })?,
            );
        }
        let [alpha, beta, gamma] = ws[..] else {
            return Err(CombError::Parse { pos: bar + 1, msg: "expected three weights".into() });
        };
        Ok(Self { comb, alpha, beta, gamma })
    }
}

impl Serialize for WeightedComb {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for WeightedComb {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

const GAMMA_G2: [Gen; 5] = [Gen::G6, Gen::G1, Gen::G6, Gen::G1, Gen::G6];
const GAMMA_G5: [Gen; 5] = [Gen::G3, Gen::G6, Gen::G3, Gen::G6, Gen::G3];
const BETA_G5: [Gen; 3] = [Gen::G4, Gen::G5, Gen::G4];

/// Which chain operation produced a successor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChainRule {
    /// `g2 → (g6 g1)^2 g6`, `γ - 1`.
    GammaG2,
    /// `g5 → (g3 g6)^2 g3`, `α - 3`, `γ - 1`.
    GammaG5,
    /// `g1 → g3`, `α - 1`.
    Alpha,
    /// `g5 → g4 g5 g4`, `β - 1`.
    Beta,
}

/// One-step successors in chain order, each tagged with its rule and the
/// rewritten position.
pub fn chain_steps(w: &WeightedComb) -> Vec<(ChainRule, usize, WeightedComb)> {
    let mut out = Vec::new();
    let positions = |g: Gen| w.comb.0.iter().enumerate().filter(move |(_, x)| **x == g).map(|(j, _)| j);
    if w.gamma > 0 {
        for j in positions(Gen::G2) {
            let c = w.comb.replace(j, &GAMMA_G2);
            out.push((ChainRule::GammaG2, j, WeightedComb::new(c, w.alpha, w.beta, w.gamma - 1)));
        }
        if w.alpha >= 3 {
            for j in positions(Gen::G5) {
                let c = w.comb.replace(j, &GAMMA_G5);
                out.push((ChainRule::GammaG5, j, WeightedComb::new(c, w.alpha - 3, w.beta, w.gamma - 1)));
            }
        }
    } else if w.alpha > 0 {
        for j in positions(Gen::G1) {
            let c = w.comb.replace(j, &[Gen::G3]);
            out.push((ChainRule::Alpha, j, WeightedComb::new(c, w.alpha - 1, w.beta, 0)));
        }
    } else if w.beta > 0 {
        for j in positions(Gen::G5) {
            let c = w.comb.replace(j, &BETA_G5);
            out.push((ChainRule::Beta, j, WeightedComb::new(c, 0, w.beta - 1, 0)));
        }
    }
    out
}

pub fn chain_successors(w: &WeightedComb) -> Vec<WeightedComb> {
    chain_steps(w).into_iter().map(|(_, _, s)| s).collect()
}

/// Necessary conditions for some chain from `w` to end in a closed comb:
/// the final letter counts must balance for some split of the `γ` steps,
/// and when `γ = 0` the parity classes may differ by at most `α`.
pub fn may_reach_closed(w: &WeightedComb) -> bool {
    let c = w.comb.counts().map(|x| x as i64);
    let (alpha, beta, gamma) = (w.alpha as i64, w.beta as i64, w.gamma as i64);
    let balanced = (0..=gamma).any(|b| {
        let a = gamma - b;
        if 3 * b > alpha {
            return false;
        }
        let rest = alpha - 3 * b;
        let g1 = c[0] + 2 * a - rest;
        let g2 = c[1] - a;
        let g3 = c[2] + 3 * b + rest;
        let g4 = c[3] + 2 * beta;
        let g5 = c[4] - b;
        let g6 = c[5] + 3 * a + 2 * b;
        g2 >= 0 && g5 >= 0 && g1 == g2 && g3 == g4 && g5 == g6 && (beta == 0 || g5 >= 1)
    });
    if !balanced {
        return false;
    }
    gamma > 0 || w.comb.parity_imbalance() as i64 <= alpha
}

/// Memoised chain counter; reuse one across calls to share work.
#[derive(Debug, Default)]
pub struct MuCounter {
    pruning: bool,
    memo: HashMap<WeightedComb, BigUint>,
}

impl MuCounter {
    pub fn new(pruning: bool) -> Self {
        Self { pruning, memo: HashMap::new() }
    }

    pub fn count(&mut self, w: &WeightedComb) -> BigUint {
        if let Some(v) = self.memo.get(w) {
            return v.clone();
        }
        let v = if self.pruning && !may_reach_closed(w) {
            BigUint::zero()
        } else {
            let mut total = if w.is_terminal() && w.comb.is_closed() { BigUint::one() } else { BigUint::zero() };
            for s in chain_successors(w) {
                total += self.count(&s);
            }
            total
        };
        self.memo.insert(w.clone(), v.clone());
        v
    }
}

/// `μ(w)`: the number of chains starting at `w`, counting position-distinct
/// rewrites separately.
pub fn mu_count(w: &WeightedComb) -> BigUint {
    MuCounter::new(true).count(w)
}

pub fn mu_count_with(w: &WeightedComb, pruning: bool) -> BigUint {
    MuCounter::new(pruning).count(w)
}

/// Whether `μ(w) > 0`, searching depth-first and remembering dead states.
pub fn mu_exists(w: &WeightedComb) -> bool {
    find_chain(w).is_some()
}

/// One chain from `w` to a closed comb with zero weights, if any exists.
pub fn find_chain(w: &WeightedComb) -> Option<Vec<WeightedComb>> {
    fn go(w: &WeightedComb, dead: &mut HashSet<WeightedComb>, path: &mut Vec<WeightedComb>) -> bool {
        if dead.contains(w) || !may_reach_closed(w) {
            return false;
        }
        path.push(w.clone());
        if w.is_terminal() && w.comb.is_closed() {
            return true;
        }
        for s in chain_successors(w) {
            if go(&s, dead, path) {
                return true;
            }
        }
        path.pop();
        dead.insert(w.clone());
        false
    }
    let mut path = Vec::new();
    go(w, &mut HashSet::new(), &mut path).then_some(path)
}

/// Necessary condition for a trigonal L-scheme to come from a real
/// algebraic curve: its weighted comb is the degenerate empty one or has a
/// chain to a closed comb.
pub fn algebraic_realizability_verdict(ls: &LScheme) -> Result<bool, LSchemeError> {
    let w = ls.weighted_comb()?;
    let n = ls.surface_index();
    if w.comb.is_empty() && w.weights() == (6 * n, 3 * n, 2 * n) {
        return Ok(true);
    }
    Ok(mu_exists(&w))
}
