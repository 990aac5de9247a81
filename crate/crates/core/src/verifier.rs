//! Exhaustive audits of the criteria over finite universes of `(p/q, alpha)`.
//!
//! A universe fixes a cap on `q`, a family of `alpha` values and a window
//! `|p/q - alpha| <= W`. Audits run [`check`] on every pair and collect the
//! pairs that contradict the statement under test: a holding hypothesis with
//! neither the conclusion nor a listed exception, or a listed exception whose
//! inequality is not the equality/strict behaviour it is stated to have.
//!
//! Work is sharded by ranges of `q`. Every list in a report is kept sorted by
//! `(alpha index, q, p)` and truncated to [`LIST_CAP`], so merging shard
//! reports is associative and yields the single-shard report.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alpha::{AlphaError, AlphaSource, SeriesFamily};
use crate::cf::{format_rational, Rational};
use crate::criteria::{bound, check, CheckError, Hypothesis, TheoremId, Verdict, VerdictRecord};

/// Maximum entries kept in each list of a report.
pub const LIST_CAP: usize = 1000;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("invalid universe: {0}")]
    InvalidUniverse(String),
    #[error(transparent)]
    Alpha(#[from] AlphaError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("could not build worker pool: {0}")]
    Pool(String),
}

/// The `alpha` values of a universe.
#[derive(Debug, Clone)]
pub enum AlphaFamily {
    /// Every reduced `a/b` in `[0, 1]` with `1 <= b <= M`.
    RationalsUpTo(u64),
    /// `[0; a1, ..., ak]` with `0 <= k <= max_len` and `1 <= a_i <= max_term`:
    /// the canonical finite expansions (rational alpha) followed by the purely
    /// periodic `[0; (a1, ..., ak)]` with primitive period (quadratic
    /// irrationals).
    CfShapes { max_term: u64, max_len: usize },
    /// An explicit list, e.g. periodic or series sources.
    Sources(Vec<Arc<AlphaSource>>),
}

impl AlphaFamily {
    pub fn periodic_set(sources: Vec<AlphaSource>) -> Self {
        Self::Sources(sources.into_iter().map(Arc::new).collect())
    }

    pub fn series_set(list: &[(SeriesFamily, u64)]) -> Result<Self, AlphaError> {
        let sources = list
            .iter()
            .map(|(f, a)| AlphaSource::series(*f, BigInt::from(*a)).map(Arc::new))
            .collect::<Result<_, _>>()?;
        Ok(Self::Sources(sources))
    }

    fn validate(&self) -> Result<(), VerifyError> {
        match self {
            Self::RationalsUpTo(0) => Err(VerifyError::InvalidUniverse("RationalsUpTo needs M >= 1".into())),
            Self::CfShapes { max_term: 0, .. } | Self::CfShapes { max_len: 0, .. } => {
                Err(VerifyError::InvalidUniverse("CfShapes needs max_term >= 1 and max_len >= 1".into()))
            }
            _ => Ok(()),
        }
    }

    /// Materializes the family in its fixed order.
    pub fn alphas(&self) -> Vec<Arc<AlphaSource>> {
        match self {
            Self::RationalsUpTo(m) => {
                let mut out = vec![Arc::new(AlphaSource::rational(&Rational::zero()))];
                for b in 1..=*m {
                    for a in 1..=b {
                        if a.gcd(&b) == 1 {
                            let r = Rational::new(BigInt::from(a), BigInt::from(b));
                            out.push(Arc::new(AlphaSource::rational(&r)));
                        }
                    }
                }
                out
            }
            Self::CfShapes { max_term, max_len } => {
                let shapes = shapes(*max_term, *max_len);
                let mut out = vec![Arc::new(AlphaSource::rational(&Rational::zero()))];
                for s in shapes.iter().filter(|s| s.last().is_some_and(|t| *t >= 2)) {
                    let mut terms = vec![BigInt::zero()];
                    terms.extend(s.iter().map(|&t| BigInt::from(t)));
                    let cf = crate::cf::CfExpansion::new(terms).expect("canonical by construction");
                    out.push(Arc::new(AlphaSource::finite(cf)));
                }
                for s in shapes.iter().filter(|s| is_primitive(s)) {
                    let period = s.iter().map(|&t| BigInt::from(t)).collect();
                    let src = AlphaSource::periodic(vec![BigInt::zero()], period).expect("positive period");
                    out.push(Arc::new(src));
                }
                out
            }
            Self::Sources(list) => list.clone(),
        }
    }
}

impl fmt::Display for AlphaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::RationalsUpTo(m) => write!(f, "rationals:{m}"),
            Self::CfShapes { max_term, max_len } => write!(f, "shapes:{max_term},{max_len}"),
            Self::Sources(list) => {
                let lits: Vec<String> = list.iter().map(|s| s.to_string()).collect();
                write!(f, "sources:{}", lits.join(" "))
            }
        }
    }
}

/// All non-empty term lists of length `<= max_len` over `1..=max_term`, by
/// length then lexicographically.
fn shapes(max_term: u64, max_len: usize) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = Vec::new();
    let mut layer: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..max_len {
        let next: Vec<Vec<u64>> = layer
            .iter()
            .flat_map(|s| {
                (1..=max_term).map(move |t| {
                    let mut v = s.clone();
                    v.push(t);
                    v
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// True unless the list is a repetition of a shorter block.
fn is_primitive(s: &[u64]) -> bool {
    let n = s.len();
    !(1..n).any(|d| n.is_multiple_of(d) && s.chunks(d).all(|c| c == &s[..d]))
}

#[derive(Debug, Clone)]
pub struct Universe {
    pub max_q: u64,
    pub family: AlphaFamily,
    /// Half-width `W` of the window `|p/q - alpha| <= W`.
    pub window: Rational,
}

impl Universe {
    pub fn new(max_q: u64, family: AlphaFamily) -> Self {
        Self { max_q, family, window: Rational::one() }
    }

    pub fn with_window(mut self, window: Rational) -> Self {
        self.window = window;
        self
    }

    pub fn validate(&self) -> Result<(), VerifyError> {
        if self.max_q == 0 {
            return Err(VerifyError::InvalidUniverse("max_q must be >= 1".into()));
        }
        if self.window.is_negative() {
            return Err(VerifyError::InvalidUniverse("window must be >= 0".into()));
        }
        self.family.validate()
    }

    pub fn summary(&self) -> String {
        format!("max_q={} alpha={} window={}", self.max_q, self.family, format_rational(&self.window))
    }
}

/// One candidate pair. `alpha_index` is the position of `alpha` in the
/// family order.
#[derive(Debug, Clone)]
pub struct Pair {
    pub alpha_index: usize,
    pub alpha: Arc<AlphaSource>,
    pub pq: Rational,
}

/// Calls `visit` for every coprime `p/q` with `q` in `qs` and
/// `|p/q - alpha| <= window(q)`, for every `alpha`, ordered by
/// `(alpha, q, p)`.
fn for_each_pair(
    alphas: &[Arc<AlphaSource>],
    qs: RangeInclusive<u64>,
    window: &dyn Fn(u64) -> Rational,
    visit: &mut dyn FnMut(Pair),
) -> Result<(), AlphaError> {
    for (alpha_index, alpha) in alphas.iter().enumerate() {
        let enclosure = alpha.bracket(1)?;
        for q in qs.clone() {
            let w = window(q);
            let qr = Rational::from_integer(BigInt::from(q));
            let lo = ((&enclosure.lo - &w) * &qr).floor().to_integer();
            let hi = ((&enclosure.hi + &w) * &qr).ceil().to_integer();
            let qb = BigInt::from(q);
            let mut p = lo;
            while p <= hi {
                if p.gcd(&qb).is_one() {
                    let pq = Rational::new_raw(p.clone(), qb.clone());
                    if alpha.compare_error(&pq, &w)? != Ordering::Greater {
                        visit(Pair { alpha_index, alpha: alpha.clone(), pq });
                    }
                }
                p += 1;
            }
        }
    }
    Ok(())
}

/// Every pair of the universe, in deterministic order.
pub fn enumerate_pairs(u: &Universe) -> Result<Vec<Pair>, VerifyError> {
    u.validate()?;
    let mut out = Vec::new();
    let w = u.window.clone();
    for_each_pair(&u.family.alphas(), 1..=u.max_q, &|_| w.clone(), &mut |p| out.push(p))?;
    Ok(out)
}

/// Window used by audits and scans: the universe's `W`, widened to `4/q^2`
/// so every theorem's bound (at most `2/q^2`) and the scan's 10% margin fit.
fn audit_window(u: &Universe) -> impl Fn(u64) -> Rational + '_ {
    move |q| reach(q).max(u.window.clone())
}

/// `4/q^2`: beyond this no theorem's hypothesis can hold.
fn reach(q: u64) -> Rational {
    Rational::new(BigInt::from(4), BigInt::from(q) * BigInt::from(q))
}

/// A reported pair with its verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub alpha_index: usize,
    pub p: serde_json::Number,
    pub q: u64,
    pub alpha: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verdict: Option<VerdictRecord>,
}

impl PairRecord {
    fn new(pair: &Pair, reason: Option<String>, verdict: Option<&Verdict>) -> Self {
        Self {
            alpha_index: pair.alpha_index,
            p: big_number(pair.pq.numer()),
            q: pair.pq.denom().to_u64().expect("q fits u64"),
            alpha: pair.alpha.to_string(),
            reason,
            verdict: verdict.map(Verdict::record),
        }
    }

    fn key(&self) -> (usize, u64, BigInt) {
        let p: BigInt = self.p.to_string().parse().expect("integer");
        (self.alpha_index, self.q, p)
    }

    pub fn pq(&self) -> String {
        format!("{}/{}", self.p, self.q)
    }
}

fn big_number(x: &BigInt) -> serde_json::Number {
    x.to_string().parse().expect("integer literal")
}

fn sorted_capped(mut list: Vec<PairRecord>) -> Vec<PairRecord> {
    list.sort_by_cached_key(PairRecord::key);
    list.truncate(LIST_CAP);
    list
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub universe: String,
    pub pairs_checked: u64,
    pub hypothesis_holds: u64,
    /// Holding pairs with equality in the hypothesis.
    pub equality_count: u64,
    /// refined-t3 pairs whose expansions share no leading term.
    pub inapplicable: u64,
    pub counterexample_count: u64,
    /// `conclusion` / `equality_placement` -> count (a pair may have both).
    pub counterexample_reasons: BTreeMap<String, u64>,
    pub counterexamples: Vec<PairRecord>,
    /// Equality pairs where the conclusion fails and an exception matched.
    pub equality_witness_count: u64,
    pub equality_witnesses: Vec<PairRecord>,
    /// Exception case -> number of holding pairs that matched it.
    pub exception_histogram: BTreeMap<u8, u64>,
    pub budget_exhausted_count: u64,
    pub budget_exhausted: Vec<PairRecord>,
}

impl VerificationReport {
    pub fn empty(theorem: TheoremId, universe: String) -> Self {
        Self {
            theorem,
            universe,
            pairs_checked: 0,
            hypothesis_holds: 0,
            equality_count: 0,
            inapplicable: 0,
            counterexample_count: 0,
            counterexample_reasons: BTreeMap::new(),
            counterexamples: Vec::new(),
            equality_witness_count: 0,
            equality_witnesses: Vec::new(),
            exception_histogram: BTreeMap::new(),
            budget_exhausted_count: 0,
            budget_exhausted: Vec::new(),
        }
    }

    /// No counterexamples were found.
    pub fn passed(&self) -> bool {
        self.counterexample_count == 0
    }

    pub fn merge(mut self, other: Self) -> Self {
        debug_assert_eq!(self.theorem, other.theorem);
        self.pairs_checked += other.pairs_checked;
        self.hypothesis_holds += other.hypothesis_holds;
        self.equality_count += other.equality_count;
        self.inapplicable += other.inapplicable;
        self.counterexample_count += other.counterexample_count;
        self.equality_witness_count += other.equality_witness_count;
        self.budget_exhausted_count += other.budget_exhausted_count;
        for (k, v) in other.exception_histogram {
            *self.exception_histogram.entry(k).or_default() += v;
        }
        for (k, v) in other.counterexample_reasons {
            *self.counterexample_reasons.entry(k).or_default() += v;
        }
        self.counterexamples.extend(other.counterexamples);
        self.counterexamples = sorted_capped(self.counterexamples);
        self.equality_witnesses.extend(other.equality_witnesses);
        self.equality_witnesses = sorted_capped(self.equality_witnesses);
        self.budget_exhausted.extend(other.budget_exhausted);
        self.budget_exhausted = sorted_capped(self.budget_exhausted);
        self
    }

    fn record(&mut self, pair: &Pair, verdict: Verdict) {
        self.pairs_checked += 1;
        if !verdict.hypothesis.holds() {
            return;
        }
        self.hypothesis_holds += 1;
        if verdict.equality() {
            self.equality_count += 1;
        }
        if let Some(case) = verdict.exception {
            *self.exception_histogram.entry(case).or_default() += 1;
        }
        let mut reasons = Vec::new();
        if verdict.is_counterexample() {
            *self.counterexample_reasons.entry("conclusion".into()).or_default() += 1;
            reasons.push("conclusion fails and no listed exception matches".to_string());
        }
        if let Some(expected) = verdict.exception_expects {
            if expected != verdict.hypothesis {
                *self.counterexample_reasons.entry("equality_placement".into()).or_default() += 1;
                reasons.push(format!(
                    "exception {} is stated as {} but the pair gives {}",
                    verdict.exception.unwrap(),
                    expected.tag(),
                    verdict.hypothesis.tag()
                ));
            }
        }
        if !reasons.is_empty() {
            self.counterexample_count += 1;
            self.counterexamples.push(PairRecord::new(pair, Some(reasons.join("; ")), Some(&verdict)));
        } else if verdict.equality() && !verdict.conclusion_satisfied {
            self.equality_witness_count += 1;
            self.equality_witnesses.push(PairRecord::new(pair, None, Some(&verdict)));
        }
    }

    fn tidy(&mut self) {
        self.counterexamples = sorted_capped(std::mem::take(&mut self.counterexamples));
        self.equality_witnesses = sorted_capped(std::mem::take(&mut self.equality_witnesses));
        self.budget_exhausted = sorted_capped(std::mem::take(&mut self.budget_exhausted));
    }
}

fn audit_shard(
    theorem: TheoremId,
    u: &Universe,
    alphas: &[Arc<AlphaSource>],
    qs: RangeInclusive<u64>,
) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::empty(theorem, u.summary());
    let mut failure = None;
    let window = audit_window(u);
    for_each_pair(alphas, qs, &window, &mut |pair| {
        if failure.is_some() {
            return;
        }
        // every bound is at most 2/q^2, so these pairs fail all hypotheses
        let q = pair.pq.denom().to_u64().expect("q fits u64");
        if matches!(pair.alpha.compare_error(&pair.pq, &reach(q)), Ok(Ordering::Greater)) {
            report.pairs_checked += 1;
            return;
        }
        match check(theorem, &pair.pq, &pair.alpha) {
            Ok(v) => report.record(&pair, v),
            Err(CheckError::Inapplicable(_)) => {
                report.pairs_checked += 1;
                report.inapplicable += 1;
            }
            Err(CheckError::Alpha(e @ AlphaError::BudgetExhausted { .. })) => {
                report.pairs_checked += 1;
                report.budget_exhausted_count += 1;
                report.budget_exhausted.push(PairRecord::new(&pair, Some(e.to_string()), None));
            }
            Err(e) => failure = Some(e),
        }
    })?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    report.tidy();
    Ok(report)
}

/// Contiguous `q` ranges covering `1..=max_q`.
fn q_shards(max_q: u64, shards: usize) -> Vec<RangeInclusive<u64>> {
    let shards = (shards.max(1) as u64).min(max_q);
    let step = max_q.div_ceil(shards);
    (0..shards)
        .map(|i| (i * step + 1)..=((i + 1) * step).min(max_q))
        .filter(|r| !r.is_empty())
        .collect()
}

/// Single-threaded audit of `theorem` over `u`.
pub fn audit(theorem: TheoremId, u: &Universe) -> Result<VerificationReport, VerifyError> {
    u.validate()?;
    audit_shard(theorem, u, &u.family.alphas(), 1..=u.max_q)
}

/// Audit sharded by `q` across `jobs` worker threads. The result equals
/// [`audit`] on the same universe.
pub fn audit_parallel(theorem: TheoremId, u: &Universe, jobs: usize) -> Result<VerificationReport, VerifyError> {
    u.validate()?;
    let alphas = u.family.alphas();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| VerifyError::Pool(e.to_string()))?;
    // small shards at the high-q end keep the load balanced
    let shards = q_shards(u.max_q, jobs.max(1) * 8);
    let parts: Vec<_> = pool.install(|| {
        shards
            .into_par_iter()
            .map(|qs| audit_shard(theorem, u, &alphas, qs))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(parts
        .into_iter()
        .fold(VerificationReport::empty(theorem, u.summary()), VerificationReport::merge))
}

/// A pair just outside a theorem's hypothesis whose conclusion also fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpnessWitness {
    #[serde(flatten)]
    pub pair: PairRecord,
    /// Enclosure of `|alpha - p/q| / bound`, in `[1, 11/10]`.
    pub ratio_lo: String,
    pub ratio_hi: String,
    /// Enclosure of `q^2 |alpha - p/q|`, i.e. `q |q alpha - p|`.
    pub scaled_lo: String,
    pub scaled_hi: String,
    #[serde(skip)]
    ratio_key: Option<Rational>,
}

impl SharpnessWitness {
    pub fn ratio_lo(&self) -> Rational {
        crate::cf::parse_rational(&self.ratio_lo).expect("stored as p/q")
    }

    pub fn scaled_hi(&self) -> Rational {
        crate::cf::parse_rational(&self.scaled_hi).expect("stored as p/q")
    }
}

/// Pairs whose hypothesis fails by at most 10% of the bound while the
/// conclusion fails too, sorted by how far they overshoot.
pub fn sharpness_scan(theorem: TheoremId, u: &Universe) -> Result<Vec<SharpnessWitness>, VerifyError> {
    u.validate()?;
    let alphas = u.family.alphas();
    let window = audit_window(u);
    let eleven_tenths = Rational::new(BigInt::from(11), BigInt::from(10));
    let mut out = Vec::new();
    let mut failure: Option<VerifyError> = None;
    for_each_pair(&alphas, 1..=u.max_q, &window, &mut |pair| {
        if failure.is_some() {
            return;
        }
        let result = (|| -> Result<Option<SharpnessWitness>, VerifyError> {
            let verdict = match check(theorem, &pair.pq, &pair.alpha) {
                Ok(v) => v,
                Err(CheckError::Inapplicable(_)) | Err(CheckError::Alpha(AlphaError::BudgetExhausted { .. })) => {
                    return Ok(None)
                }
                Err(e) => return Err(e.into()),
            };
            if verdict.hypothesis != Hypothesis::Fails
                || verdict.conclusion_satisfied
                || verdict.notes.iter().any(|n| n == "parity precondition unmet")
            {
                return Ok(None);
            }
            let b = verdict.bound.clone();
            if pair.alpha.compare_error(&pair.pq, &(&b * &eleven_tenths))? == Ordering::Greater {
                return Ok(None);
            }
            let tolerance = &b / Rational::from_integer(BigInt::from(1_000_000_000u64));
            let (elo, ehi) = pair.alpha.error_enclosure(&pair.pq, &tolerance)?;
            let q2 = Rational::from_integer(pair.pq.denom() * pair.pq.denom());
            let ratio_lo = &elo / &b;
            Ok(Some(SharpnessWitness {
                pair: PairRecord::new(&pair, None, Some(&verdict)),
                ratio_lo: format_rational(&ratio_lo),
                ratio_hi: format_rational(&(&ehi / &b)),
                scaled_lo: format_rational(&(&elo * &q2)),
                scaled_hi: format_rational(&(&ehi * &q2)),
                ratio_key: Some(ratio_lo),
            }))
        })();
        match result {
            Ok(Some(w)) => out.push(w),
            Ok(None) => {}
            Err(e) => failure = Some(e),
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    out.sort_by(|a, b| a.ratio_key.cmp(&b.ratio_key).then_with(|| a.pair.key().cmp(&b.pair.key())));
    Ok(out)
}

/// Exact bounds at one denominator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderRow {
    pub q: u64,
    pub legendre: String,
    pub refined_t1: String,
    pub refined_t2: String,
    pub refined_t3_prev0: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderReport {
    pub q_max: u64,
    pub holds: bool,
    pub failures: Vec<u64>,
    pub rows: Vec<OrderRow>,
}

/// Confirms, for `2 <= q <= q_max`, that
/// `1/(2q^2) < bound(T1) < bound(T2)`, that `bound(T3, q_prev = 0)` equals
/// `1/(2q^2)` and that `bound(T3, q_prev = 1)` equals `bound(T2)`.
pub fn cross_order_check(q_max: u64) -> Result<OrderReport, VerifyError> {
    let zero = BigInt::zero();
    let one = BigInt::one();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for q in 2..=q_max {
        let qb = BigInt::from(q);
        let l = bound(TheoremId::Legendre, &qb, None)?;
        let t1 = bound(TheoremId::RefinedT1, &qb, None)?;
        let t2 = bound(TheoremId::RefinedT2, &qb, None)?;
        let t3_0 = bound(TheoremId::RefinedT3, &qb, Some(&zero))?;
        let t3_1 = bound(TheoremId::RefinedT3, &qb, Some(&one))?;
        let ok = l < t1 && t1 < t2 && t3_0 == l && t3_1 == t2 && t3_0 < t2;
        if !ok {
            failures.push(q);
        }
        rows.push(OrderRow {
            q,
            legendre: format_rational(&l),
            refined_t1: format_rational(&t1),
            refined_t2: format_rational(&t2),
            refined_t3_prev0: format_rational(&t3_0),
            ok,
        });
    }
    Ok(OrderReport { q_max, holds: failures.is_empty(), failures, rows })
}

/// Report rows for CSV output, in the fixed column order.
pub const CSV_HEADER: [&str; 9] =
    ["theorem", "p", "q", "alpha_literal", "hypothesis", "classification", "exception", "equality", "row"];

fn csv_row(theorem: TheoremId, rec: &PairRecord, row: &str) -> Vec<String> {
    let (hyp, class, exc, eq) = match &rec.verdict {
        Some(v) => (
            v.hypothesis.tag().to_string(),
            v.classification.kind.clone(),
            v.exception.map(|e| e.to_string()).unwrap_or_default(),
            v.equality.to_string(),
        ),
        None => Default::default(),
    };
    vec![
        theorem.tag().to_string(),
        rec.p.to_string(),
        rec.q.to_string(),
        rec.alpha.clone(),
        hyp,
        class,
        exc,
        eq,
        row.to_string(),
    ]
}

/// Writes one CSV row per counterexample, equality witness and exhausted pair.
pub fn write_report_csv<W: std::io::Write>(report: &VerificationReport, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for rec in &report.counterexamples {
        w.write_record(csv_row(report.theorem, rec, "counterexample"))?;
    }
    for rec in &report.equality_witnesses {
        w.write_record(csv_row(report.theorem, rec, "equality_witness"))?;
    }
    for rec in &report.budget_exhausted {
        w.write_record(csv_row(report.theorem, rec, "budget_exhausted"))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_sharpness_csv<W: std::io::Write>(
    theorem: TheoremId,
    witnesses: &[SharpnessWitness],
    out: W,
) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for s in witnesses {
        w.write_record(csv_row(theorem, &s.pair, "sharpness"))?;
    }
    w.flush()?;
    Ok(())
}
