//! Braid words in the Artin group `B_m`, and the left-greedy Garside normal
//! form used to decide equality.
//!
//! Words are kept exactly as written: nothing is cancelled on construction,
//! so a compiled word can be compared letter-for-letter with a printed one.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("a braid needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("generator s{index} is out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("cannot combine braids on {0} and {1} strands")]
    StrandMismatch(usize, usize),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A single letter `σ_i^{±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub index: usize,
    pub positive: bool,
}

impl Letter {
    pub fn pos(index: usize) -> Self {
        Self { index, positive: true }
    }

    pub fn neg(index: usize) -> Self {
        Self { index, positive: false }
    }

    pub fn inverse(self) -> Self {
        Self { index: self.index, positive: !self.positive }
    }

    pub fn sign(self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        if let Some(l) = letters.iter().find(|l| l.index == 0 || l.index >= strands) {
            return Err(BraidError::IndexOutOfRange { index: l.index, strands });
        }
        Ok(Self { strands, letters })
    }

    /// Builds a word from syllables `(i, k)` meaning `σ_i^k`.
    pub fn from_syllables(strands: usize, syllables: &[(usize, i64)]) -> Result<Self, BraidError> {
        let letters = syllables
            .iter()
            .flat_map(|&(i, k)| {
                let l = if k > 0 { Letter::pos(i) } else { Letter::neg(i) };
                std::iter::repeat_n(l, k.unsigned_abs() as usize)
            })
            .collect();
        Self::new(strands, letters)
    }

    pub fn identity(strands: usize) -> Result<Self, BraidError> {
        Self::new(strands, Vec::new())
    }

    /// The positive half twist `Δ_m = (σ_1 … σ_{m-1})(σ_1 … σ_{m-2}) … (σ_1)`.
    pub fn delta(strands: usize) -> Result<Self, BraidError> {
        let letters = (1..strands).rev().flat_map(|top| (1..=top).map(Letter::pos)).collect();
        Self::new(strands, letters)
    }

    pub fn delta_power(strands: usize, k: i64) -> Result<Self, BraidError> {
        let d = Self::delta(strands)?;
        Ok(if k >= 0 { d.pow(k as usize) } else { d.inverse().pow(k.unsigned_abs() as usize) })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    pub fn compose(&self, other: &Self) -> Result<Self, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { strands: self.strands, letters })
    }

    pub fn inverse(&self) -> Self {
        Self { strands: self.strands, letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// `a · self · a⁻¹`.
    pub fn conjugate_by(&self, a: &Self) -> Result<Self, BraidError> {
        a.compose(self)?.compose(&a.inverse())
    }

    pub fn pow(&self, k: usize) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().copied().cycle().take(self.letters.len() * k).collect(),
        }
    }

    /// Cancels adjacent `σ_i σ_i⁻¹` pairs until none remain.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self { strands: self.strands, letters: out }
    }

    /// Maximal runs `(i, k)` of equal letters, `σ_i^k` with signed `k`.
    pub fn syllables(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for l in &self.letters {
            match out.last_mut() {
                Some((i, k)) if *i == l.index && (*k > 0) == l.positive => *k += l.sign(),
                _ => out.push((l.index, l.sign())),
            }
        }
        out
    }

    pub fn garside_normal_form(&self) -> GarsideNormalForm {
        GarsideNormalForm::of(self)
    }

    pub fn is_trivial(&self) -> bool {
        self.garside_normal_form().is_identity()
    }

    /// Equality in the braid group.
    pub fn equals(&self, other: &Self) -> bool {
        self.strands == other.strands
            && self.exponent_sum() == other.exponent_sum()
            && self.garside_normal_form() == other.garside_normal_form()
    }

    /// The word body without the `strands=` header.
    pub fn body(&self) -> String {
        render_syllables(&self.syllables())
    }
}

fn render_syllables(syl: &[(usize, i64)]) -> String {
    syl.iter().map(|&(i, k)| if k == 1 { format!("s{i}") } else { format!("s{i}^{k}") }).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "strands={};", self.strands)?;
        if !self.letters.is_empty() {
            write!(f, " {}", self.body())?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    /// Parses `strands=<m>; <tokens>` where tokens are `s<i>`, `s<i>^<k>`
    /// and `D^<k>` (or `D`). Letters are kept verbatim, never cancelled.
    fn from_str(s: &str) -> Result<Self, BraidError> {
        let perr = |pos: usize, msg: &str| BraidError::Parse { pos, msg: msg.to_string() };
        let lead = s.len() - s.trim_start().len();
        let rest = s.trim_start();
        let rest = rest.strip_prefix("strands").ok_or_else(|| perr(lead, "expected 'strands=<m>;' header"))?;
        let rest = rest.trim_start().strip_prefix('=').ok_or_else(|| perr(lead + 7, "expected '='"))?;
        let semi = rest.find(';').ok_or_else(|| perr(s.len(), "expected ';' after strand count"))?;
        let header_end = s.len() - rest.len();
        let strands: usize = rest[..semi].trim().parse().map_err(|_| perr(header_end, "invalid strand count"))?;
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        let body_start = header_end + semi + 1;
        let mut letters = Vec::new();
        for (off, tok) in tokens(&s[body_start..]) {
            let pos = body_start + off;
            let (head, exp) = match tok.split_once('^') {
                Some((h, e)) => {
                    let e: i64 = e.parse().map_err(|_| perr(pos + h.len() + 1, "invalid exponent"))?;
                    (h, e)
                }
                None => (tok, 1),
            };
            if head == "D" {
                letters.extend(BraidWord::delta_power(strands, exp)?.letters);
                continue;
            }
            let idx: usize =
                head.strip_prefix('s').and_then(|d| d.parse().ok()).ok_or_else(|| perr(pos, "expected s<i> or D"))?;
            if idx == 0 || idx >= strands {
                return Err(BraidError::IndexOutOfRange { index: idx, strands });
            }
            if exp == 0 {
                return Err(perr(pos, "zero exponent"));
            }
            let l = if exp > 0 { Letter::pos(idx) } else { Letter::neg(idx) };
            letters.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
        }
        BraidWord::new(strands, letters)
    }
}

/// Whitespace-separated tokens with their byte offsets.
pub(crate) fn tokens(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.split_whitespace().map(move |tok| (tok.as_ptr() as usize - s.as_ptr() as usize, tok))
}

/// A permutation of `{0, …, m-1}` standing for a positive permutation braid.
/// Composition is `(u·v)[j] = u[v[j]]`, and `σ_i` swaps positions `i-1, i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleBraid(Vec<u8>);

impl SimpleBraid {
    pub fn identity(m: usize) -> Self {
        Self((0..m as u8).collect())
    }

    pub fn delta(m: usize) -> Self {
        Self((0..m as u8).rev().collect())
    }

    pub fn generator(m: usize, i: usize) -> Self {
        let mut p = Self::identity(m);
        p.0.swap(i - 1, i);
        p
    }

    pub fn perm(&self) -> &[u8] {
        &self.0
    }

    fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&j| self.0[j as usize]).collect())
    }

    fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.0.len()];
        for (j, &v) in self.0.iter().enumerate() {
            inv[v as usize] = j as u8;
        }
        Self(inv)
    }

    /// `Δ x Δ⁻¹`, i.e. `σ_i ↦ σ_{m-i}`.
    fn flip(&self) -> Self {
        let m = self.0.len() as u8;
        Self(self.0.iter().rev().map(|&v| m - 1 - v).collect())
    }

    fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(j, &v)| j == v as usize)
    }

    fn is_delta(&self) -> bool {
        let m = self.0.len();
        self.0.iter().enumerate().all(|(j, &v)| v as usize == m - 1 - j)
    }

    /// Generators `i` with `self = x·σ_i` and `|x| < |self|`.
    pub fn right_descents(&self) -> Vec<usize> {
        (1..self.0.len()).filter(|&i| self.0[i - 1] > self.0[i]).collect()
    }

    /// Generators `i` with `self = σ_i·x` and `|x| < |self|`.
    pub fn left_descents(&self) -> Vec<usize> {
        self.inverse().right_descents()
    }

    fn has_right_descent(&self, i: usize) -> bool {
        self.0[i - 1] > self.0[i]
    }

    fn has_left_descent(&self, i: usize) -> bool {
        let inv = self.inverse();
        inv.0[i - 1] > inv.0[i]
    }

    /// Number of inversions, i.e. the length of the positive braid.
    pub fn length(&self) -> usize {
        let p = &self.0;
        (0..p.len()).map(|a| (a + 1..p.len()).filter(|&b| p[a] > p[b]).count()).sum()
    }

    /// A reduced positive word for this permutation braid.
    pub fn word(&self) -> Vec<usize> {
        let mut p = self.0.clone();
        let mut rev = Vec::new();
        while let Some(i) = (1..p.len()).find(|&i| p[i - 1] > p[i]) {
            p.swap(i - 1, i);
            rev.push(i);
        }
        rev.reverse();
        rev
    }
}

/// Left normal form `Δ^inf · A_1 ⋯ A_k` with every `A_j` a proper simple
/// braid and each pair `(A_j, A_{j+1})` left-weighted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GarsideNormalForm {
    pub strands: usize,
    pub infimum: i64,
    pub factors: Vec<SimpleBraid>,
}

impl GarsideNormalForm {
    pub fn of(b: &BraidWord) -> Self {
        let m = b.strands;
        let w0 = SimpleBraid::delta(m);
        let mut infimum = 0i64;
        let mut factors: Vec<SimpleBraid> = Vec::with_capacity(b.letters.len());
        for l in &b.letters {
            if l.positive {
                factors.push(SimpleBraid::generator(m, l.index));
            } else {
                for f in factors.iter_mut() {
                    *f = f.flip();
                }
                infimum -= 1;
                factors.push(w0.compose(&SimpleBraid::generator(m, l.index)));
            }
        }
        left_weight(&mut factors);
        let leading = factors.iter().take_while(|f| f.is_delta()).count();
        infimum += leading as i64;
        factors.drain(..leading);
        while factors.last().is_some_and(|f| f.is_identity()) {
            factors.pop();
        }
        Self { strands: m, infimum, factors }
    }

    pub fn is_identity(&self) -> bool {
        self.infimum == 0 && self.factors.is_empty()
    }

    /// Number of non-Δ factors (the canonical length).
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn to_word(&self) -> BraidWord {
        let mut letters =
            BraidWord::delta_power(self.strands, self.infimum).expect("strand count already validated").letters;
        for f in &self.factors {
            letters.extend(f.word().into_iter().map(Letter::pos));
        }
        BraidWord { strands: self.strands, letters }
    }

    /// Whether every adjacent pair is left-weighted.
    pub fn is_left_weighted(&self) -> bool {
        self.factors.windows(2).all(|w| pair_is_left_weighted(&w[0], &w[1]))
    }
}

impl fmt::Display for GarsideNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}", self.infimum)?;
        for a in &self.factors {
            let w: Vec<String> = a.word().iter().map(|i| format!("s{i}")).collect();
            write!(f, " [{}]", w.join(" "))?;
        }
        Ok(())
    }
}

fn pair_is_left_weighted(a: &SimpleBraid, b: &SimpleBraid) -> bool {
    (1..a.0.len()).all(|i| !b.has_left_descent(i) || a.has_right_descent(i))
}

/// Moves generators from the front of `b` to the back of `a` until the pair
/// is left-weighted. Returns whether anything moved.
fn left_weight_pair(a: &mut SimpleBraid, b: &mut SimpleBraid) -> bool {
    let m = a.0.len();
    let mut moved = false;
    loop {
        let Some(i) = (1..m).find(|&i| b.has_left_descent(i) && !a.has_right_descent(i)) else {
            return moved;
        };
        let s = SimpleBraid::generator(m, i);
        *a = a.compose(&s);
        *b = s.compose(b);
        moved = true;
    }
}

fn left_weight(factors: &mut [SimpleBraid]) {
    loop {
        let mut changed = false;
        for j in (0..factors.len().saturating_sub(1)).rev() {
            let (lo, hi) = factors.split_at_mut(j + 1);
            changed |= left_weight_pair(&mut lo[j], &mut hi[0]);
        }
        if !changed {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(BraidWord::delta(3).unwrap().exponent_sum(), 3);
        assert_eq!(b("strands=3; s2^-7 s1 s2 D^2").exponent_sum(), 1);
        assert_eq!(BraidWord::delta(4).unwrap().exponent_sum(), 6);
    }

    #[test]
    fn deltas() {
        assert_eq!(BraidWord::delta(2).unwrap().body(), "s1");
        assert_eq!(BraidWord::delta(3).unwrap().body(), "s1 s2 s1");
        assert_eq!(BraidWord::delta(4).unwrap().body(), "s1 s2 s3 s1 s2 s1");
    }

    #[test]
    fn inverse_and_compose() {
        assert_eq!(b("strands=3; s1 s2").inverse(), b("strands=3; s2^-1 s1^-1"));
        let x = b("strands=3; s1 s2");
        assert!(x.compose(&b("strands=4; s1")).is_err());
        assert!(x.compose(&x.inverse()).unwrap().is_trivial());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("strands=3; s3".parse::<BraidWord>(), Err(BraidError::IndexOutOfRange { .. })));
        assert!(matches!("s1 s2".parse::<BraidWord>(), Err(BraidError::Parse { pos: 0, .. })));
        assert!(matches!("strands=3; s1 q2".parse::<BraidWord>(), Err(BraidError::Parse { pos: 14, .. })));
        assert!(matches!("strands=1;".parse::<BraidWord>(), Err(BraidError::TooFewStrands(1))));
    }

    #[test]
    fn parse_keeps_letters_verbatim() {
        let w = b("strands=4; s1^-3 s1 s2");
        assert_eq!(w.len(), 5);
        assert_eq!(w.syllables(), vec![(1, -3), (1, 1), (2, 1)]);
        assert_eq!(w.to_string(), "strands=4; s1^-3 s1 s2");
    }

    #[test]
    fn braid_relations() {
        assert!(b("strands=3; s1 s2 s1").equals(&b("strands=3; s2 s1 s2")));
        assert!(b("strands=4; s1 s3").equals(&b("strands=4; s3 s1")));
        assert!(!b("strands=3; s1 s2").equals(&b("strands=3; s2 s1")));
        assert!(b("strands=3; D^2").equals(&b("strands=3; s1 s2 s1 s2 s1 s2")));
    }

    #[test]
    fn trivial_words() {
        assert!(BraidWord::identity(3).unwrap().is_trivial());
        assert!(!b("strands=2; s1").is_trivial());
        assert!(b("strands=3; s1 s2 s1 s2^-1 s1^-1 s2^-1").is_trivial());
    }

    #[test]
    fn normal_form_shape() {
        let nf = b("strands=3; s1^-1").garside_normal_form();
        assert_eq!(nf.infimum, -1);
        assert_eq!(nf.factors.len(), 1);
        assert_eq!(nf.factors[0].length(), 2);
        let nf = b("strands=4; D^3 s2 s1 s3 s2 s2 s1 s3^-1").garside_normal_form();
        assert!(nf.is_left_weighted());
        assert!(nf.factors.iter().all(|f| !f.is_identity() && !f.is_delta()));
        assert_eq!(nf.to_word().garside_normal_form(), nf);
    }

    #[test]
    fn descents() {
        let d = SimpleBraid::delta(4);
        assert_eq!(d.left_descents(), vec![1, 2, 3]);
        assert_eq!(d.right_descents(), vec![1, 2, 3]);
        let s = SimpleBraid::generator(4, 2).compose(&SimpleBraid::generator(4, 1));
        assert_eq!(s.word(), vec![2, 1]);
        assert_eq!(s.right_descents(), vec![1]);
        assert_eq!(s.left_descents(), vec![2]);
    }

    #[test]
    fn free_reduction() {
        let w = b("strands=3; s1 s2 s2^-1 s1^-1 s1");
        assert_eq!(w.free_reduce(), b("strands=3; s1"));
    }
}
