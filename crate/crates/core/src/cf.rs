//! Exact rationals, simple continued fractions, convergents and mediants.
//!
//! Everything here is integer arithmetic on [`BigInt`]; nothing is ever
//! rounded. Convergent tables carry the two virtual rows `p_{-2}/q_{-2} = 0/1`
//! and `p_{-1}/q_{-1} = 1/0` so index arithmetic stays uniform at `n = 0`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision reduced fraction `p/q` with `q >= 1`.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    #[error("invalid rational literal `{0}` (expected p/q or an integer)")]
    BadRational(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("invalid continued fraction literal `{0}`")]
    BadLiteral(String),
    #[error("continued fraction must have at least one term")]
    Empty,
    #[error("partial quotient a_{index} = {value} must be positive")]
    NonPositiveTerm { index: usize, value: BigInt },
    #[error("last partial quotient of a finite expansion must be at least 2")]
    NonCanonical,
    #[error("partial quotient a_{needed} is not available ({known} terms known)")]
    IndexOutOfRange { needed: usize, known: usize },
}

/// Parses `p/q`, `-p/q` or a bare integer and reduces it.
pub fn parse_rational(s: &str) -> Result<Rational, CfError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| CfError::BadRational(s.to_string()))?;
    let den = BigInt::from_str(den).map_err(|_| CfError::BadRational(s.to_string()))?;
    if den.is_zero() {
        return Err(CfError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(num, den))
}

/// Always prints `p/q`, including `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Non-authoritative decimal rendering with `digits` fractional digits
/// (truncated toward negative infinity).
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (r * Rational::from_integer(scale.clone())).floor().to_integer();
    let (int, frac) = scaled.div_mod_floor(&scale);
    if digits == 0 {
        return int.to_string();
    }
    // floor semantics: -0.25 -> int -1, frac 75 -> "-0.25" needs care
    if int.is_negative() && !frac.is_zero() {
        let pos = scale.clone() - &frac;
        let whole = -(int + BigInt::one());
        let prefix = if whole.is_zero() { "-0".to_string() } else { format!("-{whole}") };
        return format!("{prefix}.{:0>width$}", pos, width = digits);
    }
    format!("{int}.{:0>width$}", frac, width = digits)
}

fn check_prefix(terms: &[BigInt]) -> Result<(), CfError> {
    if terms.is_empty() {
        return Err(CfError::Empty);
    }
    for (index, value) in terms.iter().enumerate().skip(1) {
        if !value.is_positive() {
            return Err(CfError::NonPositiveTerm { index, value: value.clone() });
        }
    }
    Ok(())
}

/// Parses `[a0]` or `[a0;a1,a2,...]` into raw terms. Whitespace is ignored.
/// The result is a valid prefix (a_i >= 1 for i >= 1) but need not be
/// canonical.
pub fn parse_terms(s: &str) -> Result<Vec<BigInt>, CfError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| CfError::BadLiteral(s.to_string()))?;
    let (head, tail) = match inner.split_once(';') {
        Some((h, t)) => (h, Some(t)),
        None => (inner, None),
    };
    let bad = || CfError::BadLiteral(s.to_string());
    let mut terms = vec![BigInt::from_str(head).map_err(|_| bad())?];
    if let Some(tail) = tail {
        for t in tail.split(',') {
            terms.push(BigInt::from_str(t).map_err(|_| bad())?);
        }
    }
    check_prefix(&terms)?;
    Ok(terms)
}

/// Writes `[a0;a1,...]`.
pub fn format_terms(terms: &[BigInt]) -> String {
    let mut out = format!("[{}", terms[0]);
    for (i, t) in terms.iter().enumerate().skip(1) {
        out.push(if i == 1 { ';' } else { ',' });
        out.push_str(&t.to_string());
    }
    out.push(']');
    out
}

/// Value of a (possibly non-canonical) finite continued fraction.
pub fn evaluate_terms(terms: &[BigInt]) -> Rational {
    let table = ConvergentTable::new(terms);
    table.convergent(table.len() - 1)
}

/// Folds a trailing `1` into the previous term, giving the canonical form.
pub fn canonicalize(mut terms: Vec<BigInt>) -> Vec<BigInt> {
    if terms.len() >= 2 && terms.last().is_some_and(One::is_one) {
        terms.pop();
        *terms.last_mut().unwrap() += 1;
    }
    terms
}

/// Canonical finite simple continued fraction `[a0; a1, ..., ak]`.
///
/// `a0` may be any integer, every later term is positive, and when there is
/// more than one term the last is at least 2. Every rational has exactly one
/// such representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CfExpansion {
    terms: Vec<BigInt>,
}

impl CfExpansion {
    pub fn new(terms: Vec<BigInt>) -> Result<Self, CfError> {
        check_prefix(&terms)?;
        if terms.len() >= 2 && terms.last().unwrap() < &BigInt::from(2) {
            return Err(CfError::NonCanonical);
        }
        Ok(Self { terms })
    }

    /// Floor-based Euclidean expansion, valid for negative values too.
    pub fn from_rational(r: &Rational) -> Self {
        let mut num = r.numer().clone();
        let mut den = r.denom().clone();
        let mut terms = Vec::new();
        loop {
            let (a, rem) = num.div_mod_floor(&den);
            terms.push(a);
            if rem.is_zero() {
                break;
            }
            num = den;
            den = rem;
        }
        Self { terms }
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<BigInt> {
        self.terms
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn a0(&self) -> &BigInt {
        &self.terms[0]
    }

    pub fn value(&self) -> Rational {
        evaluate_terms(&self.terms)
    }

    pub fn convergents(&self) -> ConvergentTable {
        ConvergentTable::new(&self.terms)
    }
}

impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(&self.terms))
    }
}

impl FromStr for CfExpansion {
    type Err = CfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(parse_terms(s)?)
    }
}

pub fn expand_rational(r: &Rational) -> CfExpansion {
    CfExpansion::from_rational(r)
}

pub fn evaluate(cf: &CfExpansion) -> Rational {
    cf.value()
}

/// Numerators and denominators of the convergents of a term list.
///
/// Row `n` (for `n >= -2`) is stored at offset `n + 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentTable {
    rows: Vec<(BigInt, BigInt)>,
}

impl Default for ConvergentTable {
    fn default() -> Self {
        Self::empty()
    }
}

impl ConvergentTable {
    /// Only the two virtual rows.
    pub fn empty() -> Self {
        Self {
            rows: vec![(BigInt::zero(), BigInt::one()), (BigInt::one(), BigInt::zero())],
        }
    }

    pub fn new(terms: &[BigInt]) -> Self {
        let mut table = Self::empty();
        for t in terms {
            table.push(t);
        }
        table
    }

    /// Appends the next partial quotient.
    pub fn push(&mut self, term: &BigInt) {
        let k = self.rows.len();
        let (p1, q1) = &self.rows[k - 1];
        let (p2, q2) = &self.rows[k - 2];
        let row = (term * p1 + p2, term * q1 + q2);
        self.rows.push(row);
    }

    /// Number of real (non-virtual) convergents.
    pub fn len(&self) -> usize {
        self.rows.len() - 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn row(&self, n: isize) -> &(BigInt, BigInt) {
        &self.rows[usize::try_from(n + 2).expect("convergent index below -2")]
    }

    pub fn p(&self, n: isize) -> &BigInt {
        &self.row(n).0
    }

    pub fn q(&self, n: isize) -> &BigInt {
        &self.row(n).1
    }

    /// `p_n / q_n` for a real row.
    pub fn convergent(&self, n: usize) -> Rational {
        let (p, q) = &self.rows[n + 2];
        Rational::new(p.clone(), q.clone())
    }

    /// `q_{n+1} p_n - p_{n+1} q_n`, which must be `(-1)^{n+1}`.
    pub fn determinant(&self, n: isize) -> BigInt {
        self.q(n + 1) * self.p(n) - self.p(n + 1) * self.q(n)
    }

    /// Iterates `(n, p_n, q_n)` over the real rows.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt, &BigInt)> + '_ {
        self.rows[2..].iter().enumerate().map(|(n, (p, q))| (n, p, q))
    }
}

pub fn convergent_table(terms: &[BigInt]) -> Result<ConvergentTable, CfError> {
    check_prefix(terms)?;
    Ok(ConvergentTable::new(terms))
}

/// The mediant `(b p_n + p_{n-1}) / (b q_n + q_{n-1})` with `1 <= b < a_{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MediantRef {
    pub n: usize,
    pub b: BigInt,
    pub value: Rational,
    /// `b = 1` or `b = a_{n+1} - 1`.
    pub nearest: bool,
    /// `b = 1`; this crate's reading of a "first mediant".
    pub first: bool,
}

impl MediantRef {
    fn build(table: &ConvergentTable, n: usize, b: BigInt, next_term: &BigInt) -> Self {
        let ni = n as isize;
        let p = &b * table.p(ni) + table.p(ni - 1);
        let q = &b * table.q(ni) + table.q(ni - 1);
        let first = b.is_one();
        let nearest = first || b == next_term - 1;
        Self {
            n,
            b,
            // already coprime by the determinant identity; new_raw skips the gcd
            value: Rational::new_raw(p, q),
            nearest,
            first,
        }
    }
}

/// All mediants between the `n`-th and `(n+1)`-th convergents, ordered by `b`.
pub fn mediants_at(terms: &[BigInt], n: usize) -> Result<Vec<MediantRef>, CfError> {
    check_prefix(terms)?;
    let next = terms.get(n + 1).ok_or(CfError::IndexOutOfRange {
        needed: n + 1,
        known: terms.len(),
    })?;
    let table = ConvergentTable::new(&terms[..=n]);
    let mut out = Vec::new();
    let mut b = BigInt::one();
    while &b < next {
        out.push(MediantRef::build(&table, n, b.clone(), next));
        b += 1;
    }
    Ok(out)
}

/// Finds the mediant slot at index `n` equal to `target`, if any, without
/// enumerating every `b`. `table` must contain rows up to `n`.
pub fn find_mediant(
    table: &ConvergentTable,
    n: usize,
    next_term: &BigInt,
    target: &Rational,
) -> Option<MediantRef> {
    let ni = n as isize;
    let q_n = table.q(ni);
    if q_n.is_zero() {
        return None;
    }
    let (b, rem) = (target.denom() - table.q(ni - 1)).div_mod_floor(q_n);
    if !rem.is_zero() || !b.is_positive() || &b >= next_term {
        return None;
    }
    if &b * table.p(ni) + table.p(ni - 1) != *target.numer() {
        return None;
    }
    Some(MediantRef::build(table, n, b, next_term))
}

/// Longest common prefix of two expansions and the convergent it ends on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharedPrefix {
    pub len: usize,
    /// `p_{len-1}`; `1` when `len = 0`.
    pub p: BigInt,
    /// `q_{len-1}`; `0` when `len = 0`.
    pub q: BigInt,
}

pub fn shared_prefix(x: &CfExpansion, y: &CfExpansion) -> SharedPrefix {
    shared_prefix_terms(x.terms(), y.terms())
}

pub fn shared_prefix_terms(x: &[BigInt], y: &[BigInt]) -> SharedPrefix {
    let len = x.iter().zip(y).take_while(|(a, b)| a == b).count();
    let table = ConvergentTable::new(&x[..len]);
    let last = len as isize - 1;
    SharedPrefix { len, p: table.p(last).clone(), q: table.q(last).clone() }
}
