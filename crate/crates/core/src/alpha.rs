//! The real number `alpha` as a lazily refined stream of partial quotients.
//!
//! Four kinds of source are supported: finite rationals, eventually periodic
//! expansions (quadratic irrationals), the two lacunary binary series used in
//! the worked examples, and an arbitrary term generator. Comparisons against
//! rationals are decided exactly: finite sources use rational arithmetic, the
//! others shrink a convergent bracket until the answer is separated. Brackets
//! never certify equality, so a comparison that cannot be separated runs into
//! the refinement [`Budget`] and reports [`AlphaError::BudgetExhausted`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cf::{
    canonicalize, format_rational, parse_rational, parse_terms, CfError, CfExpansion,
    ConvergentTable, Rational,
};

/// Environment variable overriding [`Budget::max_terms`].
pub const BUDGET_ENV: &str = "LEGLAB_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphaError {
    #[error("refinement budget exhausted after {terms} terms: {reason}")]
    BudgetExhausted { terms: usize, reason: String },
    #[error("invalid source literal `{0}`")]
    BadLiteral(String),
    #[error("invalid source: {0}")]
    InvalidSource(String),
    #[error(transparent)]
    Cf(#[from] CfError),
}

/// Limits on how far a source may be refined before giving up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_terms: usize,
    /// Brackets narrower than `2^-min_width_log2` are never formed.
    pub min_width_log2: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_terms: 10_000, min_width_log2: 4096 }
    }
}

impl Budget {
    /// Default budget, with `max_terms` taken from `LEGLAB_BUDGET` when set.
    pub fn from_env() -> Result<Self, AlphaError> {
        let mut budget = Self::default();
        if let Ok(raw) = std::env::var(BUDGET_ENV) {
            budget.max_terms = raw.trim().parse().map_err(|_| {
                AlphaError::InvalidSource(format!("{BUDGET_ENV}={raw} is not a term count"))
            })?;
        }
        Ok(budget)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeriesFamily {
    /// `sum_{n>=1} 1 / (2^(2^n - 1) A^(2^n))`
    Example1,
    /// `sum_{n>=1} 1 / (2^(2^n) A^(2^n))`
    Example4,
}

impl SeriesFamily {
    pub fn tag(self) -> &'static str {
        match self {
            Self::Example1 => "ex1",
            Self::Example4 => "ex4",
        }
    }

    /// The `n`-th summand (`n >= 1`).
    pub fn term(self, a: &BigInt, n: u32) -> Rational {
        let e = 1usize << n;
        let den = match self {
            Self::Example1 => num_traits::pow(BigInt::from(2), e - 1) * num_traits::pow(a.clone(), e),
            Self::Example4 => num_traits::pow(BigInt::from(2) * a, e),
        };
        Rational::new(BigInt::one(), den)
    }
}

impl FromStr for SeriesFamily {
    type Err = AlphaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ex1" | "example1" => Ok(Self::Example1),
            "ex4" | "example4" => Ok(Self::Example4),
            _ => Err(AlphaError::BadLiteral(s.to_string())),
        }
    }
}

/// Exact partial sum `S_N` of a series family.
pub fn partial_sum(family: SeriesFamily, a: &BigInt, n: u32) -> Rational {
    (1..=n).map(|k| family.term(a, k)).fold(Rational::zero(), |acc, t| acc + t)
}

/// Leading partial quotients shared by every real strictly inside `(lo, hi)`.
fn interval_terms(lo: &Rational, hi: &Rational) -> Vec<BigInt> {
    let (mut x, mut y) = (lo.clone(), hi.clone());
    let mut out = Vec::new();
    loop {
        let fx = x.floor();
        if fx != y.floor() {
            break;
        }
        out.push(fx.to_integer());
        x -= &fx;
        y -= &fx;
        if x.is_zero() || y.is_zero() {
            break;
        }
        let (nx, ny) = (y.recip(), x.recip());
        x = nx;
        y = ny;
    }
    out
}

pub type TermGenerator = Arc<dyn Fn(usize) -> BigInt + Send + Sync>;

#[derive(Clone)]
enum Kind {
    Finite { cf: CfExpansion, value: Rational },
    Periodic { prefix: Vec<BigInt>, period: Vec<BigInt> },
    Series { family: SeriesFamily, a: BigInt },
    Stream { name: String, generator: TermGenerator },
}

#[derive(Default, Clone)]
struct Cache {
    terms: Vec<BigInt>,
    // highest partial-sum level used so far (series only)
    level: u32,
}

/// A real number given by its partial quotients.
///
/// Cached terms never change once emitted. The cache sits behind a mutex so a
/// source can be shared between threads; cloning copies the cache and yields
/// an independently refined source.
pub struct AlphaSource {
    kind: Kind,
    budget: Budget,
    cache: Mutex<Cache>,
}

impl Clone for AlphaSource {
    fn clone(&self) -> Self {
        Self {
            kind: self.kind.clone(),
            budget: self.budget,
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl fmt::Debug for AlphaSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlphaSource({self})")
    }
}

/// `lo <= alpha <= hi`, built from the convergents `depth - 1` and `depth`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bracket {
    pub lo: Rational,
    pub hi: Rational,
    pub depth: usize,
}

impl Bracket {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

impl AlphaSource {
    fn with_kind(kind: Kind) -> Self {
        Self { kind, budget: Budget::default(), cache: Mutex::new(Cache::default()) }
    }

    pub fn finite(cf: CfExpansion) -> Self {
        let value = cf.value();
        Self::with_kind(Kind::Finite { cf, value })
    }

    pub fn rational(r: &Rational) -> Self {
        Self::finite(CfExpansion::from_rational(r))
    }

    /// `[prefix..., (period...)]` repeated forever. The prefix may be empty,
    /// in which case `a0` is the first period term.
    pub fn periodic(prefix: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self, AlphaError> {
        if period.is_empty() {
            return Err(AlphaError::InvalidSource("empty period".into()));
        }
        if period.iter().any(|t| !t.is_positive()) {
            return Err(AlphaError::InvalidSource("period terms must be positive".into()));
        }
        if prefix.iter().skip(1).any(|t| !t.is_positive()) {
            return Err(AlphaError::InvalidSource("partial quotients after a0 must be positive".into()));
        }
        Ok(Self::with_kind(Kind::Periodic { prefix, period }))
    }

    pub fn series(family: SeriesFamily, a: BigInt) -> Result<Self, AlphaError> {
        if !a.is_positive() {
            return Err(AlphaError::InvalidSource(format!("series parameter A = {a} must be >= 1")));
        }
        Ok(Self::with_kind(Kind::Series { family, a }))
    }

    /// An infinite expansion whose `i`-th term is `generator(i)`.
    pub fn stream(name: impl Into<String>, generator: TermGenerator) -> Self {
        Self::with_kind(Kind::Stream { name: name.into(), generator })
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, Kind::Finite { .. })
    }

    /// The exact value for finite sources.
    pub fn exact_value(&self) -> Option<&Rational> {
        match &self.kind {
            Kind::Finite { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn finite_cf(&self) -> Option<&CfExpansion> {
        match &self.kind {
            Kind::Finite { cf, .. } => Some(cf),
            _ => None,
        }
    }

    fn exhausted(&self, terms: usize, reason: impl Into<String>) -> AlphaError {
        AlphaError::BudgetExhausted { terms, reason: reason.into() }
    }

    /// The `i`-th partial quotient, or `None` past the end of a finite source.
    pub fn term(&self, i: usize) -> Result<Option<BigInt>, AlphaError> {
        if i >= self.budget.max_terms {
            return Err(self.exhausted(i, "term index beyond budget"));
        }
        match &self.kind {
            Kind::Finite { cf, .. } => Ok(cf.terms().get(i).cloned()),
            Kind::Periodic { prefix, period } => Ok(Some(if i < prefix.len() {
                prefix[i].clone()
            } else {
                period[(i - prefix.len()) % period.len()].clone()
            })),
            Kind::Stream { generator, .. } => {
                let mut cache = self.cache.lock().unwrap();
                while cache.terms.len() <= i {
                    let k = cache.terms.len();
                    let t = generator(k);
                    if k > 0 && !t.is_positive() {
                        return Err(AlphaError::InvalidSource(format!(
                            "generator produced a_{k} = {t}"
                        )));
                    }
                    cache.terms.push(t);
                }
                Ok(Some(cache.terms[i].clone()))
            }
            Kind::Series { family, a } => {
                self.refine_series(*family, a, i + 1)?;
                Ok(Some(self.cache.lock().unwrap().terms[i].clone()))
            }
        }
    }

    /// The first `k` partial quotients (fewer for a shorter finite source).
    pub fn terms(&self, k: usize) -> Result<Vec<BigInt>, AlphaError> {
        if let Kind::Finite { cf, .. } = &self.kind {
            return Ok(cf.terms()[..k.min(cf.len())].to_vec());
        }
        if let Kind::Series { family, a } = &self.kind {
            if k > self.budget.max_terms {
                return Err(self.exhausted(k, "term count beyond budget"));
            }
            self.refine_series(*family, a, k)?;
            return Ok(self.cache.lock().unwrap().terms[..k].to_vec());
        }
        (0..k).map(|i| self.term(i).map(|t| t.expect("infinite source"))).collect()
    }

    /// Grows the series cache until it holds at least `k` terms.
    ///
    /// `alpha` lies strictly inside `(S_N, S_N + 2 t_{N+1})` because each summand
    /// is at most a quarter of the previous one, so every partial quotient
    /// common to the whole open interval belongs to `alpha`.
    fn refine_series(&self, family: SeriesFamily, a: &BigInt, k: usize) -> Result<(), AlphaError> {
        let mut cache = self.cache.lock().unwrap();
        while cache.terms.len() < k {
            let level = cache.level + 1;
            let next = family.term(a, level + 1);
            if next.denom().bits() > self.budget.min_width_log2 {
                return Err(self.exhausted(
                    cache.terms.len(),
                    format!("series bracket at level {level} is narrower than 2^-{}", self.budget.min_width_log2),
                ));
            }
            let lo = partial_sum(family, a, level);
            let hi = &lo + &next * BigInt::from(2);
            let derived = interval_terms(&lo, &hi);
            debug_assert!(derived.starts_with(&cache.terms) || cache.terms.starts_with(&derived));
            if derived.len() > cache.terms.len() {
                cache.terms = derived;
            }
            cache.level = level;
        }
        Ok(())
    }

    /// Bracket from the convergents `depth - 1` and `depth`. Degenerates to
    /// `[alpha, alpha]` once a finite source runs out of terms.
    pub fn bracket(&self, depth: usize) -> Result<Bracket, AlphaError> {
        if depth == 0 {
            return Err(AlphaError::InvalidSource("bracket depth must be >= 1".into()));
        }
        let terms = self.terms(depth + 1)?;
        if terms.len() <= depth {
            let v = self.exact_value().expect("only finite sources run out").clone();
            return Ok(Bracket { lo: v.clone(), hi: v, depth });
        }
        let table = ConvergentTable::new(&terms);
        let (x, y) = (table.convergent(depth - 1), table.convergent(depth));
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        Ok(Bracket { lo, hi, depth })
    }

    /// Runs `decide` over successively tighter open brackets `(lo, hi)` of an
    /// infinite source until it returns `Some`.
    fn refine<T>(&self, mut decide: impl FnMut(&Rational, &Rational) -> Option<T>) -> Result<T, AlphaError> {
        debug_assert!(!self.is_finite());
        let mut table = ConvergentTable::empty();
        table.push(&self.term(0)?.expect("infinite source"));
        for depth in 1.. {
            let t = self.term(depth)?.expect("infinite source");
            table.push(&t);
            let d = depth as isize;
            if table.q(d - 1).bits() + table.q(d).bits() > self.budget.min_width_log2 + 2 {
                return Err(self.exhausted(depth, "bracket width below the configured floor"));
            }
            let (x, y) = (table.convergent(depth - 1), table.convergent(depth));
            let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
            if let Some(v) = decide(&lo, &hi) {
                return Ok(v);
            }
        }
        unreachable!()
    }

    /// Sign of `alpha - x`.
    pub fn cmp_rational(&self, x: &Rational) -> Result<Ordering, AlphaError> {
        if let Some(v) = self.exact_value() {
            return Ok(v.cmp(x));
        }
        // alpha is irrational, hence strictly inside every bracket
        self.refine(|lo, hi| {
            if x <= lo {
                Some(Ordering::Greater)
            } else if x >= hi {
                Some(Ordering::Less)
            } else {
                None
            }
        })
    }

    /// Exact trichotomy of `|alpha - pq|` against `bound`.
    ///
    /// `Equal` can only be produced for finite sources; for the others it is
    /// impossible and an undecidable comparison exhausts the budget instead.
    pub fn compare_error(&self, pq: &Rational, bound: &Rational) -> Result<Ordering, AlphaError> {
        if let Some(v) = self.exact_value() {
            // |a/b - p/q| vs n/d  <=>  |aq - pb| d vs n b q (denominators > 0)
            let diff = (v.numer() * pq.denom() - pq.numer() * v.denom()).abs();
            return Ok((diff * bound.denom()).cmp(&(bound.numer() * v.denom() * pq.denom())));
        }
        if !bound.is_positive() {
            return Ok(Ordering::Greater);
        }
        self.refine(|lo, hi| {
            let (elo, ehi) = error_interval(lo, hi, pq);
            if &ehi <= bound {
                Some(Ordering::Less)
            } else if &elo >= bound {
                Some(Ordering::Greater)
            } else {
                None
            }
        })
    }

    /// An enclosure `[lo, hi]` of `|alpha - pq|` with `hi - lo <= tolerance`
    /// (exact for finite sources).
    pub fn error_enclosure(&self, pq: &Rational, tolerance: &Rational) -> Result<(Rational, Rational), AlphaError> {
        if let Some(v) = self.exact_value() {
            let e = (v - pq).abs();
            return Ok((e.clone(), e));
        }
        self.refine(|lo, hi| {
            let (elo, ehi) = error_interval(lo, hi, pq);
            (&ehi - &elo <= *tolerance).then_some((elo, ehi))
        })
    }
}

/// Range of `|alpha - pq|` for `alpha` in `(lo, hi)`.
fn error_interval(lo: &Rational, hi: &Rational, pq: &Rational) -> (Rational, Rational) {
    if pq <= lo {
        (lo - pq, hi - pq)
    } else if pq >= hi {
        (pq - hi, pq - lo)
    } else {
        (Rational::zero(), (pq - lo).max(hi - pq))
    }
}

impl fmt::Display for AlphaSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Finite { value, .. } => write!(f, "rat:{}", format_rational(value)),
            Kind::Periodic { prefix, period } => {
                let mut all: Vec<String> = prefix.iter().map(ToString::to_string).collect();
                let cycle = period.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
                all.push(format!("({cycle})"));
                let (head, tail) = all.split_first().unwrap();
                if tail.is_empty() {
                    write!(f, "cf:[{head}]")
                } else {
                    write!(f, "cf:[{head};{}]", tail.join(","))
                }
            }
            Kind::Series { family, a } => write!(f, "series:{}:A={a}", family.tag()),
            Kind::Stream { name, .. } => write!(f, "stream:{name}"),
        }
    }
}

/// Parses `cf:[...]` (periodic block in parentheses), `rat:p/q` and
/// `series:ex1:A=2` / `series:ex4:A=1`.
impl FromStr for AlphaSource {
    type Err = AlphaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || AlphaError::BadLiteral(s.to_string());
        let (kind, body) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "rat" => Ok(Self::rational(&parse_rational(body)?)),
            "series" => {
                let (family, param) = body.split_once(':').ok_or_else(bad)?;
                let a = param.strip_prefix("A=").ok_or_else(bad)?;
                let a = BigInt::from_str(a.trim()).map_err(|_| bad())?;
                Self::series(family.parse()?, a)
            }
            "cf" => match body.find('(') {
                None => {
                    let terms = canonicalize(parse_terms(body)?);
                    Ok(Self::finite(CfExpansion::new(terms)?))
                }
                Some(open) => {
                    let close = body.rfind(')').ok_or_else(bad)?;
                    if close < open || body[close + 1..].trim() != "]" {
                        return Err(bad());
                    }
                    let head = body[..open].trim_end();
                    let (head, sep) = match head.strip_suffix([';', ',']) {
                        Some(h) => (h, true),
                        None => (head, false),
                    };
                    let prefix = if head.trim() == "[" {
                        Vec::new()
                    } else if sep {
                        parse_terms(&format!("{head}]"))?
                    } else {
                        return Err(bad());
                    };
                    let period = body[open + 1..close]
                        .split(',')
                        .map(|t| BigInt::from_str(t.trim()).map_err(|_| bad()))
                        .collect::<Result<Vec<_>, _>>()?;
                    Self::periodic(prefix, period)
                }
            },
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::format_terms;

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn sqrt2() -> AlphaSource {
        "cf:[1;(2)]".parse().unwrap()
    }

    #[test]
    fn literals_round_trip() {
        for lit in ["cf:[1;(2)]", "cf:[0;1,(2,3)]", "cf:[(1)]", "rat:5/8", "series:ex1:A=2", "series:ex4:A=1"] {
            let src: AlphaSource = lit.parse().unwrap();
            assert_eq!(src.to_string(), lit);
        }
        let src: AlphaSource = "cf:[0;2,2]".parse().unwrap();
        assert_eq!(src.to_string(), "rat:2/5");
        let src: AlphaSource = "cf:[0;1,1]".parse().unwrap();
        assert_eq!(src.to_string(), "rat:1/2");
    }

    #[test]
    fn literal_errors() {
        for lit in ["cf:[1;()]", "cf:[1;(0)]", "series:ex2:A=1", "series:ex1:A=0", "pi", "rat:1/0", "cf:[1;2(3)]"] {
            assert!(lit.parse::<AlphaSource>().is_err(), "{lit}");
        }
    }

    #[test]
    fn terms_examples() {
        assert_eq!(format_terms(&sqrt2().terms(4).unwrap()), "[1;2,2,2]");
        let third: AlphaSource = "rat:1/3".parse().unwrap();
        assert_eq!(format_terms(&third.terms(10).unwrap()), "[0;3]");
        assert_eq!(third.term(2).unwrap(), None);
    }

    #[test]
    fn series_terms_start_like_a_sum_of_powers() {
        let src = AlphaSource::series(SeriesFamily::Example1, BigInt::one()).unwrap();
        // S_2 = 5/8 = [0;1,1,1,2]; alpha sits just above it
        let t = src.terms(5).unwrap();
        assert_eq!(format_terms(&t[..4]), "[0;1,1,1]");
        assert!(t[4] >= BigInt::from(2));
    }

    #[test]
    fn partial_sums() {
        let one = BigInt::one();
        assert_eq!(partial_sum(SeriesFamily::Example1, &one, 1), r("1/2"));
        assert_eq!(partial_sum(SeriesFamily::Example1, &one, 2), r("5/8"));
        assert_eq!(partial_sum(SeriesFamily::Example1, &BigInt::from(2), 1), r("1/8"));
        assert_eq!(partial_sum(SeriesFamily::Example4, &one, 1), r("1/4"));
        assert_eq!(partial_sum(SeriesFamily::Example4, &one, 2), r("5/16"));
        let s3 = partial_sum(SeriesFamily::Example1, &one, 3);
        assert_eq!(s3, r("81/128"));
    }

    #[test]
    fn bracket_examples() {
        let b = sqrt2().bracket(2).unwrap();
        assert_eq!((b.lo, b.hi), (r("7/5"), r("3/2")));
        let third: AlphaSource = "rat:1/3".parse().unwrap();
        for depth in 2..5 {
            let b = third.bracket(depth).unwrap();
            assert_eq!((b.lo.clone(), b.hi.clone()), (r("1/3"), r("1/3")));
        }
        assert_eq!(third.bracket(1).unwrap().lo, r("0"));
        assert!(third.bracket(0).is_err());
    }

    #[test]
    fn compare_examples() {
        let third: AlphaSource = "rat:1/3".parse().unwrap();
        assert_eq!(third.compare_error(&r("1/2"), &r("1/6")).unwrap(), Ordering::Equal);
        let half: AlphaSource = "rat:1/2".parse().unwrap();
        assert_eq!(half.compare_error(&r("1"), &r("1/2")).unwrap(), Ordering::Equal);
        assert_eq!(sqrt2().compare_error(&r("7/5"), &r("1/50")).unwrap(), Ordering::Less);
        assert_eq!(sqrt2().compare_error(&r("7/5"), &r("1/100")).unwrap(), Ordering::Greater);
        assert_eq!(sqrt2().compare_error(&r("7/5"), &r("0")).unwrap(), Ordering::Greater);
        assert_eq!(sqrt2().cmp_rational(&r("7/5")).unwrap(), Ordering::Greater);
        assert_eq!(sqrt2().cmp_rational(&r("3/2")).unwrap(), Ordering::Less);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let tight = Budget { max_terms: 20, min_width_log2: 4096 };
        let src = sqrt2().with_budget(tight);
        // a deep convergent cannot be separated from alpha within 20 terms
        let res = src.cmp_rational(&(sqrt2().bracket(30).unwrap().lo));
        assert!(matches!(res, Err(AlphaError::BudgetExhausted { .. })));
        let narrow = Budget { max_terms: 10_000, min_width_log2: 64 };
        let series = AlphaSource::series(SeriesFamily::Example1, BigInt::one()).unwrap().with_budget(narrow);
        assert!(matches!(series.terms(500), Err(AlphaError::BudgetExhausted { .. })));
    }

    #[test]
    fn stream_source() {
        let e_like = AlphaSource::stream("ones", Arc::new(|_| BigInt::one()));
        assert_eq!(format_terms(&e_like.terms(3).unwrap()), "[1;1,1]");
        let golden: AlphaSource = "cf:[(1)]".parse().unwrap();
        assert_eq!(e_like.cmp_rational(&r("8/5")).unwrap(), golden.cmp_rational(&r("8/5")).unwrap());
        let broken = AlphaSource::stream("zero", Arc::new(|_| BigInt::zero()));
        assert!(matches!(broken.term(1), Err(AlphaError::InvalidSource(_))));
    }

    #[test]
    fn cloned_source_keeps_cache() {
        let src = AlphaSource::series(SeriesFamily::Example4, BigInt::one()).unwrap();
        let first = src.terms(6).unwrap();
        let copy = src.clone();
        assert_eq!(copy.terms(6).unwrap(), first);
        assert_eq!(copy.terms(10).unwrap()[..6], first[..]);
    }
}
