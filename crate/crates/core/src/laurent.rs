//! Exact integer Laurent polynomials in one variable `t`.
//!
//! Coefficients are [`BigInt`]s stored sparsely by exponent, so the zero
//! polynomial is the empty map and no stored coefficient is ever zero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Default tolerance for deciding that a numeric root lies on the unit circle.
pub const UNIT_CIRCLE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("evaluation point must be nonzero")]
    ZeroEvaluationPoint,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^k`.
    pub fn monomial(c: impl Into<BigInt>, k: i64) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        Self { coeffs }
    }

    /// Builds `c[0] + c[1] t + c[2] t^2 + ...`.
    pub fn from_coeffs<C: Into<BigInt> + Clone>(c: &[C]) -> Self {
        Self::from_terms(c.iter().enumerate().map(|(k, v)| (k as i64, v.clone().into())))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    /// `1 + t + ... + t^(n-1)`.
    pub fn geometric(n: usize) -> Self {
        Self::from_terms((0..n as i64).map(|k| (k, BigInt::one())))
    }

    fn add_term(&mut self, k: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Difference between the largest and smallest exponent; `None` for zero.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.values().next_back()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    /// Non-negative gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content; the zero polynomial is returned unchanged.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Self { coeffs: self.coeffs.iter().map(|(e, c)| (*e, c / &g)).collect() }
    }

    /// Multiplies by `±t^k` so that the lowest exponent is zero and the
    /// leading coefficient is positive.
    pub fn normalize_unit(&self) -> Self {
        let Some(lo) = self.min_exp() else {
            return Self::zero();
        };
        let p = self.shift(-lo);
        if p.leading_coeff().is_some_and(|c| c.is_negative()) {
            -p
        } else {
            p
        }
    }

    /// True when `self` and `other` differ by a unit `±t^k`.
    pub fn unit_equivalent(&self, other: &Self) -> bool {
        self.normalize_unit() == other.normalize_unit()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Formal derivative with respect to `t`.
    pub fn derivative(&self) -> Self {
        Self::from_terms(self.coeffs.iter().filter(|(e, _)| **e != 0).map(|(e, c)| (e - 1, c * BigInt::from(*e))))
    }

    /// Exact evaluation at a nonzero integer.
    pub fn eval_int(&self, x: i64) -> Result<BigRational, LaurentError> {
        if x == 0 {
            return Err(LaurentError::ZeroEvaluationPoint);
        }
        let x = BigRational::from_integer(BigInt::from(x));
        let mut sum = BigRational::zero();
        for (e, c) in &self.coeffs {
            let xe = if *e >= 0 {
                num_traits::pow(x.clone(), *e as usize)
            } else {
                num_traits::pow(x.recip(), e.unsigned_abs() as usize)
            };
            sum += BigRational::from_integer(c.clone()) * xe;
        }
        Ok(sum)
    }

    /// Quotient `p / q` when it is again an integer Laurent polynomial.
    pub fn divide_exact(&self, q: &Self) -> Result<Self, LaurentError> {
        let (Some(qlo), Some(_)) = (q.min_exp(), q.max_exp()) else {
            return Err(LaurentError::DivisionByZero);
        };
        let Some(plo) = self.min_exp() else {
            return Ok(Self::zero());
        };
        let not_divisible = || LaurentError::NotDivisible { dividend: self.to_string(), divisor: q.to_string() };
        let mut rem = self.shift(-plo);
        let den = q.shift(-qlo);
        let dhi = den.max_exp().unwrap_or(0);
        let dlc = den.leading_coeff().cloned().unwrap_or_default();
        let mut quot = Self::zero();
        while let Some(rhi) = rem.max_exp() {
            if rhi < dhi {
                return Err(not_divisible());
            }
            let (c, r) = rem.coeffs[&rhi].div_rem(&dlc);
            if !r.is_zero() {
                return Err(not_divisible());
            }
            let k = rhi - dhi;
            rem = &rem - &den.scale(&c).shift(k);
            quot.add_term(k, c);
        }
        Ok(quot.shift(plo - qlo))
    }

    /// Polynomial pseudo-remainder of `a` by `b`, both with lowest exponent 0.
    fn pseudo_rem(a: &Self, b: &Self) -> Self {
        let bhi = b.max_exp().unwrap_or(0);
        let blc = b.leading_coeff().cloned().unwrap_or_default();
        let mut r = a.clone();
        while let Some(rhi) = r.max_exp() {
            if rhi < bhi {
                break;
            }
            let rlc = r.coeffs[&rhi].clone();
            r = &r.scale(&blc) - &b.scale(&rlc).shift(rhi - bhi);
        }
        r
    }

    /// Greatest common divisor over the rationals, returned as a primitive
    /// integer polynomial in [`normalize_unit`](Self::normalize_unit) form.
    pub fn gcd_primitive(&self, other: &Self) -> Result<Self, LaurentError> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Err(LaurentError::GcdOfZeros),
            (true, false) => return Ok(other.primitive_part().normalize_unit()),
            (false, true) => return Ok(self.primitive_part().normalize_unit()),
            _ => {}
        }
        let mut a = self.primitive_part().normalize_unit();
        let mut b = other.primitive_part().normalize_unit();
        if a.span() < b.span() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = Self::pseudo_rem(&a, &b);
            a = b;
            b = r.primitive_part();
            if let Some(lo) = b.min_exp() {
                b = b.shift(-lo);
            }
        }
        Ok(a.primitive_part().normalize_unit())
    }

    /// The product of the irreducible factors that occur with multiplicity
    /// exactly one, up to a unit. Powers of `t` are discarded.
    pub fn multiplicity_one_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let p = self.primitive_part().normalize_unit();
        let dp = p.derivative();
        if dp.is_zero() {
            return Self::one();
        }
        let g = p.gcd_primitive(&dp).expect("p is nonzero");
        let h = p.divide_exact(&g).expect("gcd divides p");
        let common = h.gcd_primitive(&g).expect("h is nonzero");
        h.divide_exact(&common).expect("gcd divides h").primitive_part().normalize_unit()
    }

    /// Numeric complex roots of `self` (after removing powers of `t`),
    /// computed as companion-matrix eigenvalues and polished by Newton steps.
    pub fn complex_roots(&self) -> Vec<Complex<f64>> {
        let p = self.normalize_unit();
        let Some(deg) = p.max_exp().filter(|d| *d > 0) else {
            return Vec::new();
        };
        let deg = deg as usize;
        let coeffs: Vec<f64> = (0..=deg).map(|k| p.coeff(k as i64).to_f64().unwrap_or(f64::NAN)).collect();
        let lead = coeffs[deg];
        let mut companion = DMatrix::<f64>::zeros(deg, deg);
        for i in 1..deg {
            companion[(i, i - 1)] = 1.0;
        }
        for i in 0..deg {
            companion[(i, deg - 1)] = -coeffs[i] / lead;
        }
        companion.complex_eigenvalues().iter().map(|z| newton_polish(&coeffs, *z)).collect()
    }

    /// Whether some root of multiplicity exactly one lies within `tol` of
    /// the unit circle.
    pub fn has_simple_unit_circle_root(&self, tol: f64) -> bool {
        self.multiplicity_one_part().complex_roots().iter().any(|z| (z.norm() - 1.0).abs() < tol)
    }

    /// Coefficients of `self` as a dense vector starting at `min_exp`.
    pub fn dense(&self) -> (i64, Vec<BigInt>) {
        let Some(lo) = self.min_exp() else {
            return (0, Vec::new());
        };
        let hi = self.max_exp().unwrap_or(lo);
        (lo, (lo..=hi).map(|k| self.coeff(k)).collect())
    }
}

fn newton_polish(coeffs: &[f64], mut z: Complex<f64>) -> Complex<f64> {
    for _ in 0..8 {
        let mut f = Complex::new(0.0, 0.0);
        let mut df = Complex::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            df = df * z + f;
            f = f * z + Complex::new(c, 0.0);
        }
        if df.norm() == 0.0 {
            break;
        }
        let step = f / df;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        z -= step;
        if step.norm() < 1e-15 * z.norm().max(1.0) {
            break;
        }
    }
    z
}

impl From<i64> for LaurentPolynomial {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        for (k, c) in &rhs.coeffs {
            self.add_term(*k, c.clone());
        }
    }
}

impl Sub<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Mul<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (i, a) in &self.coeffs {
            for (j, b) in &rhs.coeffs {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag.is_one();
            match *e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "t")?,
                1 => write!(f, "{mag}*t")?,
                k if unit => write!(f, "t^{k}")?,
                k => write!(f, "{mag}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for LaurentPolynomial {
    type Err = LaurentError;

    /// Parses expressions built from integers, `t`, `+`, `-`, `*`, `^` and
    /// parentheses. Juxtaposed factors multiply, so `(t-1)(t+1)` and `2t` work.
    fn from_str(s: &str) -> Result<Self, LaurentError> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(v)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> LaurentError {
        LaurentError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LaurentPolynomial, LaurentError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPolynomial, LaurentError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(b'(' | b't' | b'0'..=b'9') => acc = acc * self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentPolynomial, LaurentError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<LaurentPolynomial, LaurentError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let start = self.pos;
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            _ => false,
        };
        let n = self.integer()?;
        let n = n.to_i64().ok_or_else(|| LaurentError::Parse { pos: start, msg: "exponent too large".into() })?;
        if !neg {
            return Ok(base.pow(n as u32));
        }
        if base.num_terms() == 1 && base.leading_coeff().is_some_and(|c| c.abs().is_one()) {
            let (e, c) = base.terms().next().map(|(e, c)| (e, c.clone())).unwrap_or_default();
            let sign = if c.is_negative() && n % 2 == 1 { -1 } else { 1 };
            return Ok(LaurentPolynomial::monomial(sign, -e * n));
        }
        Err(LaurentError::Parse { pos: start, msg: "negative powers are only allowed for units".into() })
    }

    fn integer(&mut self) -> Result<BigInt, LaurentError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("validated digits"))
    }

    fn atom(&mut self) -> Result<LaurentPolynomial, LaurentError> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(LaurentPolynomial::t())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'0'..=b'9') => Ok(LaurentPolynomial::constant(self.integer()?)),
            _ => Err(self.err("expected a number, 't' or '('")),
        }
    }
}
