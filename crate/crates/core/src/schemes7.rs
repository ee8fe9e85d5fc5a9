//! Real and complex schemes of degree-7 curves in the projective plane, the
//! classification tables as queryable data, and the Rokhlin–Mischachev
//! orientation formula.
//!
//! The tables are read from `data/classification.toml`, which is embedded
//! at compile time; [`Classification::from_toml`] loads an alternative copy.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemesError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0} is outside the degree-7 grammar")]
    NotDegreeSeven(String),
    #[error("unknown category '{0}'")]
    UnknownCategory(String),
    #[error("complex scheme of type {kind} must {} carry oval signs", if *.kind == ComplexType::I { "" } else { "not" })]
    Signs { kind: ComplexType },
    #[error("classification data: {0}")]
    Data(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// An oval together with the ovals in its interior.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Oval {
    pub inside: Vec<Oval>,
    pub sign: Option<Sign>,
}

impl Oval {
    pub fn empty() -> Self {
        Self { inside: Vec::new(), sign: None }
    }

    pub fn containing(inside: Vec<Oval>) -> Self {
        let mut o = Self { inside, sign: None };
        o.canonicalize();
        o
    }

    fn canonicalize(&mut self) {
        for c in &mut self.inside {
            c.canonicalize();
        }
        self.inside.sort();
    }

    fn unsigned(&self) -> Oval {
        Oval { inside: self.inside.iter().map(Oval::unsigned).collect(), sign: None }.canonical()
    }

    fn canonical(mut self) -> Self {
        self.canonicalize();
        self
    }

    fn is_empty(&self) -> bool {
        self.inside.is_empty()
    }

    fn count(&self) -> usize {
        1 + self.inside.iter().map(Oval::count).sum::<usize>()
    }

    fn all_signed(&self, signed: bool) -> bool {
        self.sign.is_some() == signed && self.inside.iter().all(|o| o.all_signed(signed))
    }
}

/// A real scheme: an optional one-sided component `J` and a forest of ovals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RealSchemeCode {
    pub has_pseudoline: bool,
    pub ovals: Vec<Oval>,
}

/// The four shapes of degree-7 real schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "shape")]
pub enum Shape {
    /// `<J + a>`
    Empty { a: u32 },
    /// `<J + a + 1<b>>`, `b ≥ 1`
    Nest { a: u32, b: u32 },
    /// `<J + 1<1<1>>>`
    Deep,
    /// `<J + 1 + 1<1<1>>>`
    Deep1,
}

impl RealSchemeCode {
    pub fn new(has_pseudoline: bool, mut ovals: Vec<Oval>) -> Self {
        for o in &mut ovals {
            o.canonicalize();
        }
        ovals.sort();
        Self { has_pseudoline, ovals }
    }

    pub fn empty(a: u32) -> Self {
        Self::new(true, vec![Oval::empty(); a as usize])
    }

    pub fn nest(a: u32, b: u32) -> Self {
        let mut ovals = vec![Oval::empty(); a as usize];
        ovals.push(Oval::containing(vec![Oval::empty(); b as usize]));
        Self::new(true, ovals)
    }

    pub fn deep() -> Self {
        Self::new(true, vec![Oval::containing(vec![Oval::containing(vec![Oval::empty()])])])
    }

    pub fn deep1() -> Self {
        let mut s = Self::deep();
        s.ovals.push(Oval::empty());
        Self::new(true, s.ovals)
    }

    pub fn oval_count(&self) -> usize {
        self.ovals.iter().map(Oval::count).sum()
    }

    pub fn shape(&self) -> Result<Shape, SchemesError> {
        let outside = || SchemesError::NotDegreeSeven(self.to_string());
        if !self.has_pseudoline {
            return Err(outside());
        }
        let empties = self.ovals.iter().filter(|o| o.is_empty()).count() as u32;
        let nests: Vec<&Oval> = self.ovals.iter().filter(|o| !o.is_empty()).collect();
        match nests.as_slice() {
            [] => Ok(Shape::Empty { a: empties }),
            [n] if n.inside.iter().all(Oval::is_empty) => Ok(Shape::Nest { a: empties, b: n.inside.len() as u32 }),
            [n] if n.inside.len() == 1 && n.inside[0].inside.len() == 1 && n.inside[0].inside[0].is_empty() => {
                match empties {
                    0 => Ok(Shape::Deep),
                    1 => Ok(Shape::Deep1),
                    _ => Err(outside()),
                }
            }
            _ => Err(outside()),
        }
    }

    pub fn from_shape(s: Shape) -> Self {
        match s {
            Shape::Empty { a } => Self::empty(a),
            Shape::Nest { a, b } => Self::nest(a, b),
            Shape::Deep => Self::deep(),
            Shape::Deep1 => Self::deep1(),
        }
    }
}

fn write_ovals(f: &mut fmt::Formatter<'_>, pseudoline: bool, ovals: &[Oval]) -> fmt::Result {
    let mut items = Vec::new();
    if pseudoline {
        items.push("J".to_string());
    }
    let mut i = 0;
    while i < ovals.len() {
        let run = ovals[i..].iter().take_while(|o| **o == ovals[i]).count();
        let o = &ovals[i];
        let mut s = run.to_string();
        match o.sign {
            Some(Sign::Plus) => s.push('p'),
            Some(Sign::Minus) => s.push('m'),
            None => {}
        }
        if !o.inside.is_empty() {
            s.push_str(&OvalList(&o.inside).to_string());
        }
        items.push(s);
        i += run;
    }
    write!(f, "<{}>", items.join(" + "))
}

struct OvalList<'a>(&'a [Oval]);

impl fmt::Display for OvalList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ovals(f, false, self.0)
    }
}

impl fmt::Display for RealSchemeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ovals(f, self.has_pseudoline, &self.ovals)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> SchemesError {
        SchemesError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), SchemesError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    /// `'<' item ('+' item)* '>'`; returns whether `J` occurred.
    fn list(&mut self, allow_j: bool) -> Result<(bool, Vec<Oval>), SchemesError> {
        self.expect(b'<')?;
        let mut j = false;
        let mut ovals = Vec::new();
        loop {
            match self.peek() {
                Some(b'J') if allow_j && !j => {
                    self.pos += 1;
                    j = true;
                }
                Some(c) if c.is_ascii_digit() => {
                    let start = self.pos;
                    while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let n: usize = std::str::from_utf8(&self.s[start..self.pos])
                        .unwrap()
                        .parse()
                        .map_err(|_| SchemesError::Parse { pos: start, msg: "count too large".into() })?;
                    let sign = match self.s.get(self.pos) {
                        Some(b'p') => Some(Sign::Plus),
                        Some(b'm') => Some(Sign::Minus),
                        _ => None,
                    };
                    if sign.is_some() {
                        self.pos += 1;
                    }
                    let inside = if self.peek() == Some(b'<') { self.list(false)?.1 } else { Vec::new() };
                    ovals.extend(std::iter::repeat_n(Oval { inside, sign }, n));
                }
                _ => return Err(self.err("expected 'J', a count or '>'")),
            }
            match self.peek() {
                Some(b'+') => self.pos += 1,
                Some(b'>') => {
                    self.pos += 1;
                    return Ok((j, ovals));
                }
                _ => return Err(self.err("expected '+' or '>'")),
            }
        }
    }

    fn finish(&mut self) -> Result<(), SchemesError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.err("trailing input")),
        }
    }
}

fn parse_tree(s: &str) -> Result<(bool, Vec<Oval>, Option<ComplexType>), SchemesError> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let (j, ovals) = p.list(true)?;
    let kind = if p.peek() == Some(b':') {
        p.pos += 1;
        p.skip_ws();
        let rest = &s[p.pos..];
        let (kind, len) = if rest.starts_with("II") {
            (ComplexType::II, 2)
        } else if rest.starts_with('I') {
            (ComplexType::I, 1)
        } else {
            return Err(p.err("expected 'I' or 'II'"));
        };
        p.pos += len;
        Some(kind)
    } else {
        None
    };
    p.finish()?;
    Ok((j, ovals, kind))
}

impl FromStr for RealSchemeCode {
    type Err = SchemesError;

    fn from_str(s: &str) -> Result<Self, SchemesError> {
        let (j, ovals, kind) = parse_tree(s)?;
        if kind.is_some() || !ovals.iter().all(|o| o.all_signed(false)) {
            return Err(SchemesError::Parse { pos: 0, msg: "signs and types belong to complex schemes".into() });
        }
        Ok(Self::new(j, ovals))
    }
}

impl Serialize for RealSchemeCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RealSchemeCode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComplexType {
    I,
    II,
}

impl fmt::Display for ComplexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexType::I => "I",
            ComplexType::II => "II",
        })
    }
}

/// A real scheme with complex orientation data: signed ovals for type I.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComplexSchemeCode {
    pub has_pseudoline: bool,
    pub ovals: Vec<Oval>,
    pub kind: ComplexType,
}

impl ComplexSchemeCode {
    pub fn real(&self) -> RealSchemeCode {
        RealSchemeCode::new(self.has_pseudoline, self.ovals.iter().map(Oval::unsigned).collect())
    }

    /// Numbers of positive and negative ovals.
    pub fn sign_counts(&self) -> (usize, usize) {
        fn go(o: &Oval, acc: &mut (usize, usize)) {
            match o.sign {
                Some(Sign::Plus) => acc.0 += 1,
                Some(Sign::Minus) => acc.1 += 1,
                None => {}
            }
            o.inside.iter().for_each(|c| go(c, acc));
        }
        let mut acc = (0, 0);
        self.ovals.iter().for_each(|o| go(o, &mut acc));
        acc
    }

    /// Injective pairs of ovals as `(Π₊, Π₋)`. Oval signs are taken relative
    /// to `J`, so a pair bounds a coherently oriented annulus exactly when the
    /// two signs differ.
    pub fn injective_pairs(&self) -> (usize, usize) {
        fn go(o: &Oval, outer: &[Sign], acc: &mut (usize, usize)) {
            let s = o.sign.expect("type I ovals are signed");
            for &t in outer {
                if t != s {
                    acc.0 += 1;
                } else {
                    acc.1 += 1;
                }
            }
            let mut next = outer.to_vec();
            next.push(s);
            o.inside.iter().for_each(|c| go(c, &next, acc));
        }
        let mut acc = (0, 0);
        self.ovals.iter().for_each(|o| go(o, &[], &mut acc));
        acc
    }
}

impl fmt::Display for ComplexSchemeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ovals(f, self.has_pseudoline, &self.ovals)?;
        write!(f, ":{}", self.kind)
    }
}

impl FromStr for ComplexSchemeCode {
    type Err = SchemesError;

    fn from_str(s: &str) -> Result<Self, SchemesError> {
        let (j, ovals, kind) = parse_tree(s)?;
        let kind = kind.ok_or(SchemesError::Parse { pos: s.len(), msg: "expected ':I' or ':II'".into() })?;
        let signed = kind == ComplexType::I;
        if !ovals.iter().all(|o| o.all_signed(signed)) {
            return Err(SchemesError::Signs { kind });
        }
        let real = RealSchemeCode::new(j, ovals);
        Ok(Self { has_pseudoline: real.has_pseudoline, ovals: real.ovals, kind })
    }
}

impl Serialize for ComplexSchemeCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    Any,
    Dividing,
    NonDividing,
    Symmetric,
    SymmetricDividingPseudoholomorphic,
    SymmetricDividingAlgebraic,
    SymmetricNonDividing,
}

impl Category {
    pub const ALL: [Category; 7] = [
        Category::Any,
        Category::Dividing,
        Category::NonDividing,
        Category::Symmetric,
        Category::SymmetricDividingPseudoholomorphic,
        Category::SymmetricDividingAlgebraic,
        Category::SymmetricNonDividing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::Any => "any",
            Category::Dividing => "dividing",
            Category::NonDividing => "non-dividing",
            Category::Symmetric => "symmetric",
            Category::SymmetricDividingPseudoholomorphic => "symmetric-dividing-pseudoholomorphic",
            Category::SymmetricDividingAlgebraic => "symmetric-dividing-algebraic",
            Category::SymmetricNonDividing => "symmetric-non-dividing",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Category {
    type Err = SchemesError;

    fn from_str(s: &str) -> Result<Self, SchemesError> {
        Category::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| SchemesError::UnknownCategory(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum ShapeKind {
    Empty,
    Nest,
    Deep,
    Deep1,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct Family {
    shape: ShapeKind,
    a: Option<[u32; 2]>,
    b: Option<[u32; 2]>,
    sum_max: Option<u32>,
    sum_mod2: Option<u32>,
    a_mod2: Option<u32>,
    #[serde(default)]
    exclude: Vec<[u32; 2]>,
}

impl Family {
    fn admits(&self, s: Shape) -> bool {
        let in_range = |r: Option<[u32; 2]>, v: u32| r.is_none_or(|[lo, hi]| lo <= v && v <= hi);
        let (kind, a, b) = match s {
            Shape::Empty { a } => (ShapeKind::Empty, a, 0),
            Shape::Nest { a, b } => (ShapeKind::Nest, a, b),
            Shape::Deep => (ShapeKind::Deep, 0, 0),
            Shape::Deep1 => (ShapeKind::Deep1, 0, 0),
        };
        kind == self.shape
            && in_range(self.a, a)
            && in_range(self.b, b)
            && self.sum_max.is_none_or(|m| a + b <= m)
            && self.sum_mod2.is_none_or(|p| (a + b) % 2 == p)
            && self.a_mod2.is_none_or(|p| a % 2 == p)
            && !self.exclude.contains(&[a, b])
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct CategoryDef {
    #[serde(default)]
    families: Vec<Family>,
    #[serde(default)]
    base: Vec<Category>,
    #[serde(default)]
    remove: Vec<RealSchemeCode>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexTable {
    symmetric_m_curves: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct DataFile {
    version: u32,
    categories: BTreeMap<Category, CategoryDef>,
    complex: ComplexTable,
}

/// The classification tables.
#[derive(Debug, Clone)]
pub struct Classification {
    version: u32,
    categories: BTreeMap<Category, CategoryDef>,
    complex: Vec<ComplexSchemeCode>,
}

pub const CLASSIFICATION_TOML: &str = include_str!("../data/classification.toml");

impl Classification {
    pub fn from_toml(text: &str) -> Result<Self, SchemesError> {
        let data: DataFile = toml::from_str(text).map_err(|e| SchemesError::Data(e.to_string()))?;
        for c in Category::ALL {
            if !data.categories.contains_key(&c) {
                return Err(SchemesError::Data(format!("missing category {c}")));
            }
        }
        let complex = data.complex.symmetric_m_curves.iter().map(|s| s.parse()).collect::<Result<Vec<_>, _>>()?;
        let out = Self { version: data.version, categories: data.categories, complex };
        let mut seen = HashSet::new();
        for c in Category::ALL {
            out.check_acyclic(c, &mut seen, &mut Vec::new())?;
        }
        Ok(out)
    }

    fn check_acyclic(
        &self,
        c: Category,
        done: &mut HashSet<Category>,
        stack: &mut Vec<Category>,
    ) -> Result<(), SchemesError> {
        if done.contains(&c) {
            return Ok(());
        }
        if stack.contains(&c) {
            return Err(SchemesError::Data(format!("category {c} is defined in terms of itself")));
        }
        stack.push(c);
        for &b in &self.categories[&c].base {
            self.check_acyclic(b, done, stack)?;
        }
        stack.pop();
        done.insert(c);
        Ok(())
    }

    /// The tables embedded in the library.
    pub fn builtin() -> &'static Classification {
        static DATA: OnceLock<Classification> = OnceLock::new();
        DATA.get_or_init(|| {
            Classification::from_toml(CLASSIFICATION_TOML).expect("embedded classification data is valid")
        })
    }

    pub fn version(&self) -> u32 {
        self.version
    }

    fn contains(&self, s: &RealSchemeCode, shape: Shape, c: Category) -> bool {
        let def = &self.categories[&c];
        let included =
            def.families.iter().any(|f| f.admits(shape)) || def.base.iter().any(|&b| self.contains(s, shape, b));
        included && !def.remove.contains(s)
    }

    pub fn realizable(&self, s: &RealSchemeCode, c: Category) -> Result<bool, SchemesError> {
        let shape = s.shape()?;
        Ok(self.contains(s, shape, c))
    }

    /// Members of `c`: `<J + a>` by `a`, then `<J + a + 1<b>>` by `(a, b)`,
    /// then `<J + 1<1<1>>>` and `<J + 1 + 1<1<1>>>`.
    pub fn enumerate(&self, c: Category) -> Vec<RealSchemeCode> {
        grammar()
            .into_iter()
            .filter(|&s| self.contains(&RealSchemeCode::from_shape(s), s, c))
            .map(RealSchemeCode::from_shape)
            .collect()
    }

    pub fn symmetric_m_complex_schemes(&self) -> &[ComplexSchemeCode] {
        &self.complex
    }
}

/// Every degree-7 shape with `a ≤ 15` and `1 ≤ b ≤ 13`, in canonical order.
pub fn grammar() -> Vec<Shape> {
    let mut out: Vec<Shape> = (0..=15).map(|a| Shape::Empty { a }).collect();
    for a in 0..=15 {
        out.extend((1..=13).map(|b| Shape::Nest { a, b }));
    }
    out.extend([Shape::Deep, Shape::Deep1]);
    out
}

pub fn realizable(s: &RealSchemeCode, c: Category) -> Result<bool, SchemesError> {
    Classification::builtin().realizable(s, c)
}

pub fn enumerate(c: Category) -> Vec<RealSchemeCode> {
    Classification::builtin().enumerate(c)
}

pub fn symmetric_m_complex_schemes() -> &'static [ComplexSchemeCode] {
    Classification::builtin().symmetric_m_complex_schemes()
}

/// `Λ₊ − Λ₋ + 2(Π₊ − Π₋) = l − k(k+1)` for a dividing curve of degree `2k+1`
/// with `l` ovals.
pub fn rokhlin_mischachev(lambda_plus: i64, lambda_minus: i64, pi_plus: i64, pi_minus: i64, l: i64, k: i64) -> bool {
    lambda_plus - lambda_minus + 2 * (pi_plus - pi_minus) == l - k * (k + 1)
}
