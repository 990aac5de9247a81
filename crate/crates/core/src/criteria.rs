//! Hypothesis bounds, classification of `p/q` against `alpha`, exception
//! catalogs and per-pair verdicts for the Legendre-type criteria.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alpha::{AlphaError, AlphaSource};
use crate::cf::{
    expand_rational, find_mediant, format_rational, shared_prefix_terms, CfExpansion,
    ConvergentTable, MediantRef, Rational,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    Legendre,
    Koksma,
    BarbolosiJager,
    RefinedT1,
    RefinedT2,
    RefinedT3,
    RefinedT6,
}

impl TheoremId {
    pub const ALL: [TheoremId; 7] = [
        Self::Legendre,
        Self::Koksma,
        Self::BarbolosiJager,
        Self::RefinedT1,
        Self::RefinedT2,
        Self::RefinedT3,
        Self::RefinedT6,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Self::Legendre => "legendre",
            Self::Koksma => "koksma",
            Self::BarbolosiJager => "barbolosi-jager",
            Self::RefinedT1 => "refined-t1",
            Self::RefinedT2 => "refined-t2",
            Self::RefinedT3 => "refined-t3",
            Self::RefinedT6 => "refined-t6",
        }
    }

    /// The classical statements use `<`, the refined ones `<=`.
    pub fn strict(self) -> bool {
        matches!(self, Self::Legendre | Self::Koksma | Self::BarbolosiJager)
    }

    /// Number of listed exceptional cases.
    pub fn exception_count(self) -> u8 {
        match self {
            Self::Legendre | Self::Koksma | Self::BarbolosiJager => 0,
            Self::RefinedT1 => 1,
            Self::RefinedT2 => 5,
            Self::RefinedT3 => 3,
            Self::RefinedT6 => 7,
        }
    }

    /// Whether `classification` belongs to the theorem's conclusion set.
    pub fn concludes(self, classification: &Classification) -> bool {
        match (self, classification) {
            (_, Classification::Convergent { .. }) => true,
            (Self::Koksma, c) => c.is_first_mediant(),
            (Self::RefinedT6, Classification::NearestMediant(_)) => true,
            _ => false,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for TheoremId {
    type Err = CheckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        Self::ALL
            .into_iter()
            .find(|t| t.tag() == norm)
            .or(match norm.as_str() {
                "bj" => Some(Self::BarbolosiJager),
                "t1" => Some(Self::RefinedT1),
                "t2" => Some(Self::RefinedT2),
                "t3" => Some(Self::RefinedT3),
                "t6" => Some(Self::RefinedT6),
                _ => None,
            })
            .ok_or_else(|| CheckError::UnknownTheorem(s.to_string()))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

impl<'de> Deserialize<'de> for TheoremId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Error)]
pub enum CheckError {
    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),
    #[error("denominator must be at least 1")]
    BadDenominator,
    #[error("q_prev is required for refined-t3")]
    MissingPrev,
    #[error("q_prev is only meaningful for refined-t3")]
    ExtraneousPrev,
    #[error("q_prev = {q_prev} must satisfy 0 <= q_prev <= q = {q}")]
    PrevOutOfRange { q: BigInt, q_prev: BigInt },
    #[error("refined-t3 is inapplicable: {0}")]
    Inapplicable(String),
    #[error(transparent)]
    Alpha(#[from] AlphaError),
}

/// The right-hand side of the theorem's inequality on `|alpha - p/q|`.
///
/// Koksma and Barbolosi-Jager state `q |q alpha - p| < 2/3`, which is the
/// same as `|alpha - p/q| < (2/3) / q^2`.
pub fn bound(theorem: TheoremId, q: &BigInt, q_prev: Option<&BigInt>) -> Result<Rational, CheckError> {
    if !q.is_positive() {
        return Err(CheckError::BadDenominator);
    }
    match (theorem, q_prev) {
        (TheoremId::RefinedT3, None) => return Err(CheckError::MissingPrev),
        (TheoremId::RefinedT3, Some(qp)) if qp.is_negative() || qp > q => {
            return Err(CheckError::PrevOutOfRange { q: q.clone(), q_prev: qp.clone() })
        }
        (TheoremId::RefinedT3, _) => {}
        (_, Some(_)) => return Err(CheckError::ExtraneousPrev),
        _ => {}
    }
    let q2 = q * q;
    let two = BigInt::from(2);
    let one = BigInt::one();
    let b = match theorem {
        TheoremId::Legendre => Rational::new(one, &two * &q2),
        // 1 / ((2 - (q-1)/q^2) q^2)
        TheoremId::RefinedT1 => Rational::new(one, &two * &q2 - q + 1),
        // 1 / ((2 - 1/q) q^2)
        TheoremId::RefinedT2 => Rational::new(one, &two * &q2 - q),
        // 1 / ((2 - q_prev/q) q^2)
        TheoremId::RefinedT3 => Rational::new(one, &two * &q2 - q * q_prev.unwrap()),
        // 1 / ((1 - 1/(2q)) q^2)
        TheoremId::RefinedT6 => Rational::new(two.clone(), &two * &q2 - q),
        TheoremId::Koksma | TheoremId::BarbolosiJager => Rational::new(two, BigInt::from(3) * &q2),
    };
    Ok(b)
}

/// Where `p/q` sits relative to the convergents and mediants of `alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Convergent { n: usize },
    /// `b = 1` or `b = a_{n+1} - 1`; `b = 1` is also a first mediant.
    NearestMediant(MediantRef),
    InteriorMediant(MediantRef),
    Other,
}

impl Classification {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Convergent { .. } => "convergent",
            Self::NearestMediant(_) => "nearest_mediant",
            Self::InteriorMediant(_) => "interior_mediant",
            Self::Other => "other",
        }
    }

    pub fn n(&self) -> Option<usize> {
        match self {
            Self::Convergent { n } => Some(*n),
            Self::NearestMediant(m) | Self::InteriorMediant(m) => Some(m.n),
            Self::Other => None,
        }
    }

    pub fn mediant(&self) -> Option<&MediantRef> {
        match self {
            Self::NearestMediant(m) | Self::InteriorMediant(m) => Some(m),
            _ => None,
        }
    }

    pub fn is_first_mediant(&self) -> bool {
        self.mediant().is_some_and(|m| m.first)
    }
}

/// Convergent index or mediant slot of `pq`, searching only while convergent
/// denominators stay at or below `q`.
pub fn classify(pq: &Rational, alpha: &AlphaSource) -> Result<Classification, AlphaError> {
    let q = pq.denom();
    let mut table = ConvergentTable::empty();
    table.push(&alpha.term(0)?.expect("every source has a0"));
    let mut n = 0usize;
    loop {
        let ni = n as isize;
        if table.q(ni) > q {
            return Ok(Classification::Other);
        }
        if table.q(ni) == q && table.p(ni) == pq.numer() {
            return Ok(Classification::Convergent { n });
        }
        let Some(next) = alpha.term(n + 1)? else {
            return Ok(Classification::Other);
        };
        if let Some(m) = find_mediant(&table, n, &next, pq) {
            return Ok(if m.nearest {
                Classification::NearestMediant(m)
            } else {
                Classification::InteriorMediant(m)
            });
        }
        table.push(&next);
        n += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Hypothesis {
    HoldsStrict,
    HoldsEquality,
    Fails,
}

impl Hypothesis {
    pub fn holds(self) -> bool {
        self != Self::Fails
    }

    pub fn tag(self) -> &'static str {
        match self {
            Self::HoldsStrict => "HOLDS_STRICT",
            Self::HoldsEquality => "HOLDS_EQUALITY",
            Self::Fails => "FAILS",
        }
    }
}

/// A matched exceptional case together with everything else that matched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionMatch {
    /// Lowest matching case number.
    pub case: u8,
    pub all: Vec<u8>,
    /// How the inequality behaves on this case: equality or strict.
    pub expected: Hypothesis,
    pub notes: Vec<String>,
}

struct Shape<'a> {
    // leading terms of alpha; shorter than `fetched` only when alpha ends
    alpha: &'a [BigInt],
    fetched: usize,
    pq: &'a [BigInt],
}

impl Shape<'_> {
    fn a0(&self) -> &BigInt {
        &self.alpha[0]
    }

    fn alpha_len_is(&self, len: usize) -> bool {
        self.alpha.len() == len && len < self.fetched
    }

    fn alpha_is(&self, terms: &[BigInt]) -> bool {
        self.alpha_len_is(terms.len()) && self.alpha == terms
    }

    fn a(&self, i: usize) -> Option<&BigInt> {
        self.alpha.get(i)
    }

    fn pq_is(&self, terms: &[BigInt]) -> bool {
        self.pq == terms
    }

    fn pq_is_int(&self, offset: i64) -> bool {
        self.pq.len() == 1 && self.pq[0] == self.a0() + offset
    }
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Every listed exceptional case of `theorem` whose pattern fits, in list
/// order, with the inequality behaviour the case is stated to have.
fn matching_cases(theorem: TheoremId, s: &Shape<'_>) -> Vec<(u8, Hypothesis, Option<String>)> {
    use Hypothesis::{HoldsEquality as Eq, HoldsStrict as Strict};
    let a0 = s.a0().clone();
    let mut out = Vec::new();
    match theorem {
        TheoremId::Legendre | TheoremId::Koksma | TheoremId::BarbolosiJager => {}
        TheoremId::RefinedT1 => {
            if s.alpha_is(&[a0.clone(), int(2)]) && s.pq_is_int(1) {
                out.push((1, Eq, None));
            }
        }
        TheoremId::RefinedT2 => {
            if s.alpha_len_is(1) && s.pq_is_int(-1) {
                out.push((1, Eq, None));
            }
            if s.alpha_len_is(1) && s.pq_is_int(1) {
                out.push((2, Eq, None));
            }
            if s.a(1).is_some_and(|a1| a1 >= &int(2)) && s.pq_is_int(1) {
                out.push((3, Strict, None));
            }
            if s.alpha_is(&[a0.clone(), int(3)]) && s.pq_is(&[a0.clone(), int(2)]) {
                out.push((4, Eq, None));
            }
            if s.alpha_len_is(3) && s.alpha[2] == int(2) && s.pq_is(&[a0.clone(), &s.alpha[1] + 1]) {
                out.push((5, Eq, None));
            }
        }
        TheoremId::RefinedT3 => {
            if s.alpha_is(&[a0.clone(), int(2)]) && s.pq_is_int(1) {
                out.push((1, Eq, None));
            }
            if s.alpha_is(&[a0.clone(), int(3)]) && s.pq_is(&[a0.clone(), int(2)]) {
                out.push((2, Eq, None));
            }
            // alpha = [a0; a1, ..., a_n, 2], p/q = [a0; a1, ..., a_n + 1], n >= 1
            let len = s.alpha.len();
            if len >= 3 && s.alpha_len_is(len) && s.alpha[len - 1] == int(2) && s.pq.len() == len - 1 {
                let n = len - 2;
                if s.pq[..n] == s.alpha[..n] && s.pq[n] == &s.alpha[n] + 1 {
                    out.push((3, Eq, Some(format!("case 3 with n = {n}"))));
                }
            }
        }
        TheoremId::RefinedT6 => {
            if s.alpha_len_is(1) && s.pq_is_int(-2) {
                out.push((1, Eq, None));
            }
            if s.pq_is_int(2) {
                if s.alpha_len_is(1) {
                    out.push((2, Eq, Some("case 2 sub-shape: a1 does not exist".into())));
                } else {
                    out.push((2, Strict, Some("case 2 sub-shape: a1 exists".into())));
                }
            }
            if s.alpha_is(&[a0.clone(), int(6)]) && s.pq_is(&[a0.clone(), int(2)]) {
                out.push((3, Eq, None));
            }
            let two_terms_then = |a1: i64| s.a(1) == Some(&int(a1)) && s.pq_is(&[a0.clone(), int(2)]);
            let a2_note = |case: u8| {
                if s.alpha_len_is(2) {
                    format!("case {case} sub-shape: a2 does not exist")
                } else {
                    format!("case {case} sub-shape: a2 exists")
                }
            };
            if two_terms_then(5) {
                out.push((4, Strict, Some(a2_note(4))));
            }
            if s.alpha_len_is(3) && s.alpha[2] == int(4) && s.pq_is(&[a0.clone(), s.alpha[1].clone(), int(2)]) {
                out.push((5, Eq, None));
            }
            if s.alpha_is(&[a0.clone(), int(5)]) && s.pq_is(&[a0.clone(), int(3)]) {
                out.push((6, Eq, None));
            }
            if two_terms_then(4) {
                out.push((7, Strict, Some(a2_note(7))));
            }
        }
    }
    out
}

/// Structural match of `(p/q, alpha)` against the theorem's exception list.
pub fn exception_details(
    theorem: TheoremId,
    pq_cf: &CfExpansion,
    alpha: &AlphaSource,
) -> Result<Option<ExceptionMatch>, AlphaError> {
    if theorem.exception_count() == 0 {
        return Ok(None);
    }
    let fetched = pq_cf.len().max(3) + 2;
    let terms = alpha.terms(fetched)?;
    let shape = Shape { alpha: &terms, fetched, pq: pq_cf.terms() };
    let cases = matching_cases(theorem, &shape);
    let Some((case, expected, _)) = cases.first().cloned() else {
        return Ok(None);
    };
    let all: Vec<u8> = cases.iter().map(|c| c.0).collect();
    let mut notes: Vec<String> = cases.into_iter().filter_map(|c| c.2).collect();
    if all.len() > 1 {
        notes.push(format!("matched cases {all:?}; lowest wins"));
    }
    Ok(Some(ExceptionMatch { case, all, expected, notes }))
}

/// Lowest-numbered exceptional case matching `(p/q, alpha)`.
pub fn exception_match(theorem: TheoremId, pq_cf: &CfExpansion, alpha: &AlphaSource) -> Result<Option<u8>, AlphaError> {
    Ok(exception_details(theorem, pq_cf, alpha)?.map(|m| m.case))
}

/// `(-1)^n sgn(alpha - p/q)` where `p/q = [b0; ..., b_n]` is canonical.
pub fn bj_sign(pq_cf: &CfExpansion, alpha: &AlphaSource) -> Result<i8, AlphaError> {
    let sign = match alpha.cmp_rational(&pq_cf.value())? {
        Ordering::Less => -1,
        Ordering::Equal => return Ok(0),
        Ordering::Greater => 1,
    };
    let n = pq_cf.len() - 1;
    Ok(if n.is_multiple_of(2) { sign } else { -sign })
}

/// Outcome of checking one theorem on one `(p/q, alpha)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub theorem: TheoremId,
    pub hypothesis: Hypothesis,
    /// The bound `|alpha - p/q|` was compared against.
    pub bound: Rational,
    pub classification: Classification,
    pub exception: Option<u8>,
    pub conclusion_satisfied: bool,
    pub notes: Vec<String>,
    /// Inequality behaviour the matched exception is stated to have.
    pub exception_expects: Option<Hypothesis>,
    /// The `n` derived for refined-t3.
    pub t3_n: Option<usize>,
}

impl Verdict {
    pub fn equality(&self) -> bool {
        self.hypothesis == Hypothesis::HoldsEquality
    }

    /// A holding hypothesis with neither the conclusion nor a listed exception.
    pub fn is_counterexample(&self) -> bool {
        self.hypothesis.holds() && !self.conclusion_satisfied && self.exception.is_none()
    }

    pub fn record(&self) -> VerdictRecord {
        let m = self.classification.mediant();
        VerdictRecord {
            theorem: self.theorem,
            hypothesis: self.hypothesis,
            bound: format_rational(&self.bound),
            classification: ClassificationRecord {
                kind: self.classification.kind().to_string(),
                n: self.classification.n(),
                b: m.map(|m| m.b.to_string().parse().expect("integer literal")),
                first: m.map(|m| m.first),
            },
            exception: self.exception,
            conclusion_satisfied: self.conclusion_satisfied,
            equality: self.equality(),
            notes: self.notes.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.record()).expect("verdict serializes")
    }
}

/// The stable JSON shape of a [`Verdict`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub theorem: TheoremId,
    pub hypothesis: Hypothesis,
    pub bound: String,
    pub classification: ClassificationRecord,
    pub exception: Option<u8>,
    pub conclusion_satisfied: bool,
    pub equality: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub kind: String,
    pub n: Option<usize>,
    pub b: Option<serde_json::Number>,
    pub first: Option<bool>,
}

/// Checks `theorem` on `(pq, alpha)`.
pub fn check(theorem: TheoremId, pq: &Rational, alpha: &AlphaSource) -> Result<Verdict, CheckError> {
    let q = pq.denom();
    let pq_cf = expand_rational(pq);
    let mut notes = Vec::new();
    let mut t3_n = None;

    let bound_value = if theorem == TheoremId::RefinedT3 {
        let alpha_terms = alpha.terms(pq_cf.len() + 1)?;
        let shared = shared_prefix_terms(pq_cf.terms(), &alpha_terms);
        if shared.len == 0 {
            return Err(CheckError::Inapplicable(format!(
                "{} and alpha share no leading partial quotient",
                format_rational(pq)
            )));
        }
        notes.push(format!("n = {}, q_(n-1) = {}", shared.len, shared.q));
        t3_n = Some(shared.len);
        bound(theorem, q, Some(&shared.q))?
    } else {
        bound(theorem, q, None)?
    };

    let parity_ok = theorem != TheoremId::BarbolosiJager || bj_sign(&pq_cf, alpha)? == 1;
    let hypothesis = if !parity_ok {
        notes.push("parity precondition unmet".to_string());
        Hypothesis::Fails
    } else {
        match alpha.compare_error(pq, &bound_value)? {
            Ordering::Less => Hypothesis::HoldsStrict,
            Ordering::Equal if !theorem.strict() => Hypothesis::HoldsEquality,
            _ => Hypothesis::Fails,
        }
    };

    let classification = classify(pq, alpha)?;
    if alpha.exact_value() == Some(pq) {
        notes.push("alpha equals p/q".to_string());
    }
    let conclusion_satisfied = theorem.concludes(&classification);
    if theorem == TheoremId::Koksma {
        if let Some(m) = classification.mediant() {
            let reading = if m.first { "satisfied" } else { "not satisfied" };
            notes.push(format!(
                "conclusion {reading} under the reading first mediant = (b = 1) at any n (here n = {}, b = {})",
                m.n, m.b
            ));
        }
    }

    let details = exception_details(theorem, &pq_cf, alpha)?;
    let (exception, exception_expects) = match details {
        Some(d) => {
            notes.extend(d.notes);
            (Some(d.case), Some(d.expected))
        }
        None => (None, None),
    };

    Ok(Verdict {
        theorem,
        hypothesis,
        bound: bound_value,
        classification,
        exception,
        conclusion_satisfied,
        notes,
        exception_expects,
        t3_n,
    })
}
