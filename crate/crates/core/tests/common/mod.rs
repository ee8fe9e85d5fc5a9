//! Strategies and independent oracles shared by the integration tests.

#![allow(dead_code)]

use proptest::prelude::*;
use ruled_braids::braid::{BraidWord, Letter};
use ruled_braids::comb::{Comb, Gen};
use ruled_braids::laurent::LaurentPolynomial;

pub fn letter(strands: usize) -> impl Strategy<Value = Letter> {
    (1..strands, any::<bool>()).prop_map(|(index, positive)| Letter { index, positive })
}

pub fn word_on(strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(letter(strands), 0..=max_len).prop_map(move |l| BraidWord::new(strands, l).unwrap())
}

/// A random word with 2 to `max_strands` strands.
pub fn word(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |m| word_on(m, max_len))
}

/// Two words on the same number of strands.
pub fn word_pair(max_strands: usize, max_len: usize) -> impl Strategy<Value = (BraidWord, BraidWord)> {
    (2..=max_strands).prop_flat_map(move |m| (word_on(m, max_len), word_on(m, max_len)))
}

pub fn laurent() -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((-6i64..=6, -20i64..=20), 0..6)
        .prop_map(|terms| LaurentPolynomial::from_terms(terms.into_iter().map(|(k, c)| (k, c.into()))))
}

pub fn nonzero_laurent() -> impl Strategy<Value = LaurentPolynomial> {
    laurent().prop_filter("nonzero", |p| !p.is_zero())
}

pub fn gen() -> impl Strategy<Value = Gen> {
    prop::sample::select(Gen::ALL.to_vec())
}

pub fn comb(max_len: usize) -> impl Strategy<Value = Comb> {
    prop::collection::vec(gen(), 0..=max_len).prop_map(Comb)
}

/// Every comb of length exactly `len`.
pub fn all_combs(len: usize) -> Vec<Comb> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w: Vec<Gen>| {
                Gen::ALL.iter().map(move |g| {
                    let mut v = w.clone();
                    v.push(*g);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Comb).collect()
}

fn partners(a: Gen, b: Gen) -> bool {
    matches!(
        (a, b),
        (Gen::G1, Gen::G2)
            | (Gen::G2, Gen::G1)
            | (Gen::G3, Gen::G4)
            | (Gen::G4, Gen::G3)
            | (Gen::G5, Gen::G6)
            | (Gen::G6, Gen::G5)
    )
}

/// Backtracking closure search stated directly from the three constraints:
/// typed pairs, non-crossing chords, and `g1`/`g2` chords joining the two
/// parity classes (parity of the number of type 1..4 letters before a
/// position).
pub fn closure_by_backtracking(c: &Comb) -> bool {
    let g = c.gens();
    let low = |x: Gen| matches!(x, Gen::G1 | Gen::G2 | Gen::G3 | Gen::G4);
    let parity: Vec<usize> = g
        .iter()
        .scan(0usize, |n, x| {
            let p = *n % 2;
            if low(*x) {
                *n += 1;
            }
            Some(p)
        })
        .collect();
    fn go(g: &[Gen], parity: &[usize], lo: usize, hi: usize) -> bool {
        if lo >= hi {
            return true;
        }
        if (hi - lo) % 2 == 1 {
            return false;
        }
        for j in (lo + 1..hi).step_by(2) {
            if !partners(g[lo], g[j]) {
                continue;
            }
            if matches!(g[lo], Gen::G1 | Gen::G2) && parity[lo] == parity[j] {
                continue;
            }
            if go(g, parity, lo + 1, j) && go(g, parity, j + 1, hi) {
                return true;
            }
        }
        false
    }
    go(g, &parity, 0, g.len())
}

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Unreduced Burau matrix of `b` at the integer point `t`.
pub fn unreduced_burau_at(b: &BraidWord, t: i64) -> Vec<Vec<BigRational>> {
    let m = b.strands();
    let t = q(t);
    let mut acc: Vec<Vec<BigRational>> =
        (0..m).map(|i| (0..m).map(|j| if i == j { q(1) } else { q(0) }).collect()).collect();
    for l in b.letters() {
        let i = l.index - 1;
        let block = if l.positive {
            [[q(1) - &t, t.clone()], [q(1), q(0)]]
        } else {
            let ti = t.recip();
            [[q(0), q(1)], [ti.clone(), q(1) - ti]]
        };
        let mut next = acc.clone();
        for row in next.iter_mut().zip(&acc) {
            let (out, old) = row;
            out[i] = &old[i] * &block[0][0] + &old[i + 1] * &block[1][0];
            out[i + 1] = &old[i] * &block[0][1] + &old[i + 1] * &block[1][1];
        }
        acc = next;
    }
    acc
}

pub fn det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut d = q(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return q(0);
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let pivot = a[c][c].clone();
        d *= &pivot;
        for r in c + 1..n {
            let f = &a[r][c] / &pivot;
            let (top, bottom) = a.split_at_mut(r);
            for (x, y) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                *x -= &f * y;
            }
        }
    }
    d
}

/// The Alexander polynomial of the closure at `t`, up to a unit, from the
/// leading minor of `I - ψ(b)` for the unreduced Burau matrix `ψ(b)`.
pub fn alexander_value_oracle(b: &BraidWord, t: i64) -> BigRational {
    let m = b.strands();
    let psi = unreduced_burau_at(b, t);
    let minor = (1..m).map(|i| (1..m).map(|j| if i == j { q(1) } else { q(0) } - &psi[i][j]).collect()).collect();
    det(minor)
}

/// Whether `p` agrees with the oracle up to a common unit `±t^k`, checked
/// at `t = 2` and `t = 3`.
pub fn agrees_with_oracle(b: &BraidWord, p: &LaurentPolynomial) -> bool {
    let mut unit: Option<(bool, i64)> = None;
    for t in [2i64, 3] {
        let want = alexander_value_oracle(b, t);
        let got = p.eval_int(t).unwrap();
        if want.is_zero() || got.is_zero() {
            if !(want.is_zero() && got.is_zero()) {
                return false;
            }
            continue;
        }
        let r = want / got;
        let neg = r.is_negative();
        let mut r = r.abs();
        let mut k = 0i64;
        let tq = q(t);
        while r > q(1) && r.numer() % BigInt::from(t) == BigInt::zero() {
            r /= &tq;
            k += 1;
        }
        while r < q(1) && r.denom() % BigInt::from(t) == BigInt::zero() {
            r *= &tq;
            k -= 1;
        }
        if !r.is_one() || unit.is_some_and(|u| u != (neg, k)) {
            return false;
        }
        unit = Some((neg, k));
    }
    true
}
