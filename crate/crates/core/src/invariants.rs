//! Reduced Burau matrices, the Alexander polynomial and determinant of a
//! braid closure, and quasipositivity obstructions built on them.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{BraidWord, Letter};
use crate::laurent::{LaurentError, LaurentPolynomial, UNIT_CIRCLE_TOL};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantsError {
    #[error("det(B - I) is not divisible by 1 + t + ... + t^{}: {source}", .strands - 1)]
    InexactAlexanderDivision { strands: usize, source: LaurentError },
    #[error("Alexander polynomial has a non-integral value at t = -1")]
    NonIntegralDeterminant,
    #[error("Burau convention check failed: {0}")]
    Convention(String),
}

/// Square matrix over `Z[t, t⁻¹]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurauMatrix {
    rows: Vec<Vec<LaurentPolynomial>>,
}

impl BurauMatrix {
    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n).map(|j| if i == j { LaurentPolynomial::one() } else { LaurentPolynomial::zero() }).collect()
            })
            .collect();
        Self { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPolynomial {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<LaurentPolynomial>] {
        &self.rows
    }

    /// Reduced Burau image of a single letter in `B_m`.
    pub fn generator(strands: usize, letter: Letter) -> Self {
        let n = strands - 1;
        let i0 = letter.index - 1;
        let mut m = Self::identity(n);
        let t = if letter.positive { LaurentPolynomial::t() } else { LaurentPolynomial::monomial(1, -1) };
        if letter.positive {
            m.rows[i0][i0] = -&t;
            if i0 > 0 {
                m.rows[i0][i0 - 1] = t.clone();
            }
            if i0 + 1 < n {
                m.rows[i0][i0 + 1] = LaurentPolynomial::one();
            }
        } else {
            m.rows[i0][i0] = -&t;
            if i0 > 0 {
                m.rows[i0][i0 - 1] = LaurentPolynomial::one();
            }
            if i0 + 1 < n {
                m.rows[i0][i0 + 1] = t;
            }
        }
        m
    }

    pub fn minus_identity(&self) -> Self {
        let mut out = self.clone();
        for (i, row) in out.rows.iter_mut().enumerate() {
            row[i] = &row[i] - &LaurentPolynomial::one();
        }
        out
    }

    /// Fraction-free Gaussian elimination with exact division by the
    /// previous pivot.
    pub fn determinant(&self) -> LaurentPolynomial {
        let n = self.dim();
        if n == 0 {
            return LaurentPolynomial::one();
        }
        let mut a = self.rows.clone();
        let mut negate = false;
        let mut prev = LaurentPolynomial::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return LaurentPolynomial::zero();
                };
                a.swap(k, r);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.divide_exact(&prev).expect("Bareiss division is exact");
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }
}

impl Mul<&BurauMatrix> for &BurauMatrix {
    type Output = BurauMatrix;
    fn mul(self, rhs: &BurauMatrix) -> BurauMatrix {
        let n = self.dim();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = LaurentPolynomial::zero();
                        for k in 0..n {
                            if !self.rows[i][k].is_zero() && !rhs.rows[k][j].is_zero() {
                                acc += &(&self.rows[i][k] * &rhs.rows[k][j]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        BurauMatrix { rows }
    }
}

pub fn reduced_burau(b: &BraidWord) -> BurauMatrix {
    let m = b.strands();
    b.letters().iter().fold(BurauMatrix::identity(m - 1), |acc, &l| &acc * &BurauMatrix::generator(m, l))
}

/// Checks the representation on `B_2 … B_max_strands`: each generator has
/// determinant `-t`, generator images are mutually inverse, and the braid
/// relations hold.
pub fn check_burau_convention(max_strands: usize) -> Result<(), InvariantsError> {
    let minus_t = -LaurentPolynomial::t();
    for m in 2..=max_strands {
        let n = m - 1;
        for i in 1..m {
            let g = BurauMatrix::generator(m, Letter::pos(i));
            let gi = BurauMatrix::generator(m, Letter::neg(i));
            if g.determinant() != minus_t {
                return Err(InvariantsError::Convention(format!("det of s{i} in B_{m} is not -t")));
            }
            if &g * &gi != BurauMatrix::identity(n) {
                return Err(InvariantsError::Convention(format!("s{i}^-1 in B_{m} is not inverse")));
            }
            for j in 1..m {
                let h = BurauMatrix::generator(m, Letter::pos(j));
                let ok = if i.abs_diff(j) == 1 { &(&g * &h) * &g == &(&h * &g) * &h } else { &g * &h == &h * &g };
                if !ok {
                    return Err(InvariantsError::Convention(format!(
                        "braid relation between s{i} and s{j} fails in B_{m}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Alexander polynomial of the closure, in `normalize_unit` form; zero when
/// `det(B - I)` vanishes.
pub fn alexander_polynomial(b: &BraidWord) -> Result<LaurentPolynomial, InvariantsError> {
    let m = b.strands();
    let d = reduced_burau(b).minus_identity().determinant();
    if d.is_zero() {
        return Ok(d);
    }
    d.divide_exact(&LaurentPolynomial::geometric(m))
        .map(|q| q.normalize_unit())
        .map_err(|source| InvariantsError::InexactAlexanderDivision { strands: m, source })
}

/// `|Δ(-1)|`.
pub fn determinant_of_closure(b: &BraidWord) -> Result<BigInt, InvariantsError> {
    determinant_from_alexander(&alexander_polynomial(b)?)
}

fn determinant_from_alexander(p: &LaurentPolynomial) -> Result<BigInt, InvariantsError> {
    let v = p.eval_int(-1).expect("-1 is nonzero");
    if !v.is_integer() {
        return Err(InvariantsError::NonIntegralDeterminant);
    }
    Ok(v.to_integer().abs())
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

mod bigint_text {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Obstruction {
    /// `e(b) < m - 1` while the Alexander polynomial is nonzero.
    Alex,
    /// `e(b) = m - 1` and the Alexander polynomial has a simple root on the
    /// unit circle.
    DoubleAlex,
    /// `e(b) = m - 1` and `det(b)` is not a perfect square.
    Square,
    /// `e(b) < 0`: a product of conjugates of `σ_1` has `e ≥ 0`.
    NegativeExponentSum,
    /// `e(b) = 0` but the braid is not trivial.
    NontrivialZeroExponent,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Obstruction::Alex => "alex",
            Obstruction::DoubleAlex => "double-alex",
            Obstruction::Square => "square",
            Obstruction::NegativeExponentSum => "negative-exponent-sum",
            Obstruction::NontrivialZeroExponent => "nontrivial-zero-exponent",
        };
        f.write_str(s)
    }
}

impl Obstruction {
    pub const ALL: [Obstruction; 5] = [
        Obstruction::Alex,
        Obstruction::DoubleAlex,
        Obstruction::Square,
        Obstruction::NegativeExponentSum,
        Obstruction::NontrivialZeroExponent,
    ];
}

impl std::str::FromStr for Obstruction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Obstruction::ALL.into_iter().find(|o| o.to_string() == s).ok_or_else(|| format!("unknown obstruction '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum Witness {
    Polynomial(LaurentPolynomial),
    #[serde(with = "bigint_text")]
    Determinant(BigInt),
    NormalForm(String),
    ExponentSum(i64),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Polynomial(p) => write!(f, "alexander = {p}"),
            Witness::Determinant(d) => write!(f, "det = {d}"),
            Witness::NormalForm(s) => write!(f, "normal form = {s}"),
            Witness::ExponentSum(e) => write!(f, "e = {e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub test: Obstruction,
    pub exponent_sum: i64,
    pub strands: usize,
    pub witness: Witness,
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (e={}, m={}, {})", self.test, self.exponent_sum, self.strands, self.witness)
    }
}

fn report(b: &BraidWord, test: Obstruction, witness: Witness) -> ObstructionReport {
    ObstructionReport { test, exponent_sum: b.exponent_sum(), strands: b.strands(), witness }
}

pub fn test_alex(b: &BraidWord) -> Result<Option<ObstructionReport>, InvariantsError> {
    if b.exponent_sum() >= b.strands() as i64 - 1 {
        return Ok(None);
    }
    let p = alexander_polynomial(b)?;
    Ok((!p.is_zero()).then(|| report(b, Obstruction::Alex, Witness::Polynomial(p))))
}

pub fn test_double_alex(b: &BraidWord) -> Result<Option<ObstructionReport>, InvariantsError> {
    if b.exponent_sum() != b.strands() as i64 - 1 {
        return Ok(None);
    }
    let p = alexander_polynomial(b)?;
    let fires = !p.is_zero() && p.has_simple_unit_circle_root(UNIT_CIRCLE_TOL);
    Ok(fires.then(|| report(b, Obstruction::DoubleAlex, Witness::Polynomial(p))))
}

pub fn test_square(b: &BraidWord) -> Result<Option<ObstructionReport>, InvariantsError> {
    if b.exponent_sum() != b.strands() as i64 - 1 {
        return Ok(None);
    }
    let d = determinant_of_closure(b)?;
    Ok((!is_perfect_square(&d)).then(|| report(b, Obstruction::Square, Witness::Determinant(d))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum QuasipositivityVerdict {
    /// At least one obstruction fired; all that fired are listed.
    NotQuasipositive {
        fired: Vec<ObstructionReport>,
    },
    /// The braid is trivial, hence the empty product of conjugates of `σ_1`.
    QuasipositiveCertified {
        exponent_sum: i64,
    },
    Unknown {
        exponent_sum: i64,
        strands: usize,
    },
}

impl QuasipositivityVerdict {
    pub fn is_not_quasipositive(&self) -> bool {
        matches!(self, Self::NotQuasipositive { .. })
    }

    pub fn fired(&self) -> Vec<Obstruction> {
        match self {
            Self::NotQuasipositive { fired } => fired.iter().map(|r| r.test).collect(),
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for QuasipositivityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotQuasipositive { fired } => {
                write!(f, "not quasipositive")?;
                for r in fired {
                    write!(f, "\n  {r}")?;
                }
                Ok(())
            }
            Self::QuasipositiveCertified { exponent_sum } => {
                write!(f, "quasipositive (trivial braid, e={exponent_sum})")
            }
            Self::Unknown { exponent_sum, strands } => {
                write!(f, "unknown (no obstruction applies; e={exponent_sum}, m={strands})")
            }
        }
    }
}

pub fn quasipositivity_verdict(b: &BraidWord) -> Result<QuasipositivityVerdict, InvariantsError> {
    let e = b.exponent_sum();
    let mut fired = Vec::new();
    if e == 0 {
        let nf = b.garside_normal_form();
        if nf.is_identity() {
            return Ok(QuasipositivityVerdict::QuasipositiveCertified { exponent_sum: 0 });
        }
        fired.push(report(b, Obstruction::NontrivialZeroExponent, Witness::NormalForm(nf.to_string())));
    }
    if e < 0 {
        fired.push(report(b, Obstruction::NegativeExponentSum, Witness::ExponentSum(e)));
    }
    for test in [test_alex, test_double_alex, test_square] {
        fired.extend(test(b)?);
    }
    Ok(if fired.is_empty() {
        QuasipositivityVerdict::Unknown { exponent_sum: e, strands: b.strands() }
    } else {
        QuasipositivityVerdict::NotQuasipositive { fired }
    })
}

/// Everything the invariants module computes for one braid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub braid: String,
    pub strands: usize,
    pub exponent_sum: i64,
    pub alexander: LaurentPolynomial,
    #[serde(with = "bigint_text")]
    pub determinant: BigInt,
    pub trivial: bool,
}

impl InvariantsReport {
    pub fn of(b: &BraidWord) -> Result<Self, InvariantsError> {
        let alexander = alexander_polynomial(b)?;
        let determinant = determinant_from_alexander(&alexander)?;
        Ok(Self {
            braid: b.to_string(),
            strands: b.strands(),
            exponent_sum: b.exponent_sum(),
            alexander,
            determinant,
            trivial: b.is_trivial(),
        })
    }
}

impl fmt::Display for InvariantsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "braid: {}", self.braid)?;
        writeln!(f, "e = {}", self.exponent_sum)?;
        writeln!(f, "alexander = {}", self.alexander)?;
        writeln!(f, "det = {}", self.determinant)?;
        write!(f, "trivial = {}", self.trivial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    fn p(s: &str) -> LaurentPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn convention_holds() {
        check_burau_convention(6).unwrap();
    }

    #[test]
    fn burau_small_cases() {
        assert_eq!(reduced_burau(&BraidWord::identity(4).unwrap()), BurauMatrix::identity(3));
        let m = reduced_burau(&b("strands=2; s1"));
        assert_eq!(m.dim(), 1);
        assert_eq!(m.entry(0, 0), &p("-t"));
    }

    #[test]
    fn determinant_by_cofactors() {
        let rows: Vec<Vec<LaurentPolynomial>> = [["t", "1", "0"], ["2", "t^-1", "t"], ["1", "1", "1"]]
            .iter()
            .map(|r| r.iter().map(|s| p(s)).collect())
            .collect();
        let m = BurauMatrix { rows: rows.clone() };
        let e = |i: usize, j: usize| &rows[i][j];
        let cof = &(e(0, 0) * &(&(e(1, 1) * e(2, 2)) - &(e(1, 2) * e(2, 1))))
            - &(e(0, 1) * &(&(e(1, 0) * e(2, 2)) - &(e(1, 2) * e(2, 0))));
        assert_eq!(m.determinant(), cof);
        let zero_pivot = BurauMatrix { rows: vec![vec![p("0"), p("1")], vec![p("1"), p("0")]] };
        assert_eq!(zero_pivot.determinant(), p("-1"));
    }

    #[test]
    fn alexander_values() {
        assert_eq!(alexander_polynomial(&b("strands=3; s2^-7 s1 s2 D^2")).unwrap(), p("(t-1)(t^4-t^3+t^2-t+1)"));
        assert!(alexander_polynomial(&BraidWord::identity(3).unwrap()).unwrap().is_zero());
        // trefoil as the closure of s1^3
        assert_eq!(alexander_polynomial(&b("strands=2; s1^3")).unwrap(), p("t^2 - t + 1"));
        assert_eq!(determinant_of_closure(&b("strands=2; s1^3")).unwrap(), BigInt::from(3));
        // figure eight knot
        assert_eq!(alexander_polynomial(&b("strands=3; s1 s2^-1 s1 s2^-1")).unwrap(), p("t^2 - 3t + 1"));
        // Hopf link: Δ = t - 1 up to units, det 2
        assert_eq!(determinant_of_closure(&b("strands=2; s1^2")).unwrap(), BigInt::from(2));
    }

    #[test]
    fn cli_example_invariants() {
        let r = InvariantsReport::of(&b("strands=3; s2^-7 s1 s2 D^2")).unwrap();
        assert_eq!(r.exponent_sum, 1);
        assert_eq!(r.determinant, BigInt::from(10));
    }

    #[test]
    fn squares() {
        for (n, sq) in [(0, true), (1, true), (976, false), (592, false), (400, true), (301, false)] {
            assert_eq!(is_perfect_square(&BigInt::from(n)), sq, "{n}");
        }
    }

    #[test]
    fn obstructions_and_verdicts() {
        let sigma = b("strands=2; s1");
        assert!(test_alex(&sigma).unwrap().is_none());
        assert_eq!(
            quasipositivity_verdict(&sigma).unwrap(),
            QuasipositivityVerdict::Unknown { exponent_sum: 1, strands: 2 }
        );
        let b5 = b("strands=3; s1^-4 s2^2 s1^-3 s2^-1 s1 D^2");
        let v = quasipositivity_verdict(&b5).unwrap();
        assert_eq!(v.fired(), vec![Obstruction::Alex]);
    }

    #[test]
    fn double_alex_needs_simple_root() {
        let w = b("strands=3; s2 s1^-2 s2 s1^2");
        assert_eq!(w.exponent_sum(), 2);
        assert_eq!(alexander_polynomial(&w).unwrap(), p("(t-1)^2"));
        assert!(test_double_alex(&w).unwrap().is_none());
    }

    #[test]
    fn verdict_json_round_trip() {
        let b5 = b("strands=3; s1^-4 s2^2 s1^-3 s2^-1 s1 D^2");
        let v = quasipositivity_verdict(&b5).unwrap();
        let j = serde_json::to_string(&v).unwrap();
        let back: QuasipositivityVerdict = serde_json::from_str(&j).unwrap();
        assert_eq!(back, v);
    }
}
