//! Command-line front end. [`run`] is the whole program minus process exit.
//!
//! Exit codes: 0 success, 1 counterexamples found, 2 usage error,
//! 3 refinement budget exhausted.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::json;

use crate::alpha::{partial_sum, AlphaError, Budget, AlphaSource, SeriesFamily};
use crate::cf::{
    evaluate_terms, expand_rational, format_decimal, format_rational, format_terms, mediants_at, parse_rational,
    parse_terms, CfError, Rational,
};
use crate::criteria::{check, classify, CheckError, Classification, TheoremId, Verdict};
use crate::verifier::{
    audit_parallel, cross_order_check, sharpness_scan, write_report_csv, write_sharpness_csv, AlphaFamily, Universe,
    VerificationReport, VerifyError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLES: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "leglab", version, about = "Exact continued fractions and rational approximation criteria")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Also show K-digit decimal approximations (display only).
    #[arg(long, global = true, value_name = "K")]
    decimals: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Continued fraction of a rational.
    Expand {
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// Value of a continued fraction literal such as [0;1,1,1,2].
    Eval {
        #[arg(allow_hyphen_values = true)]
        literal: String,
    },
    /// Convergents of a rational or continued fraction literal.
    Convergents {
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// Mediants between the n-th and (n+1)-th convergents.
    Mediants {
        #[arg(allow_hyphen_values = true)]
        value: String,
        #[arg(long)]
        n: usize,
    },
    /// Position of p/q relative to alpha's convergents and mediants.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        pq: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Evaluate one criterion on one pair.
    Check(CheckArgs),
    /// Exhaustive audit over a universe of pairs.
    Verify(VerifyArgs),
    /// Reproduce a worked series example.
    Example(ExampleArgs),
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long)]
    theorem: String,
    #[arg(long, allow_hyphen_values = true)]
    pq: String,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// refined-t3 only: fail unless the derived n equals this.
    #[arg(long)]
    require_n: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Audit,
    Sharpness,
    BoundOrder,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Theorem tag, repeatable; `all` for every theorem.
    #[arg(long)]
    theorem: Vec<String>,
    #[arg(long, default_value_t = 50)]
    max_q: u64,
    /// `rationals:M`, `shapes:T,L`, or source literals (repeatable).
    #[arg(long)]
    alpha: Vec<String>,
    /// Window half-width W as p/q.
    #[arg(long, default_value = "1")]
    window: String,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Mode::Audit)]
    mode: Mode,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExampleId {
    Ex1,
    Ex2,
    Ex4,
}

#[derive(Debug, Args)]
struct ExampleArgs {
    #[arg(value_enum)]
    which: ExampleId,
    #[arg(long = "A", default_value_t = 1)]
    a: u64,
    #[arg(long = "N", default_value_t = 3)]
    n: u32,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Budget(String),
    Io(String),
}

impl From<CfError> for Failure {
    fn from(e: CfError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<AlphaError> for Failure {
    fn from(e: AlphaError) -> Self {
        match e {
            AlphaError::BudgetExhausted { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Self {
        match e {
            CheckError::Alpha(a) => a.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Alpha(a) => a.into(),
            VerifyError::Check(c) => c.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the program on `argv` (including the program name).
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut io::stdout().lock(), &mut io::stderr().lock())
}

pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Budget(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_BUDGET
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let fmt = cli.format;
    let dec = cli.decimals;
    match &cli.command {
        Command::Expand { value } => expand(value, fmt, dec, out),
        Command::Eval { literal } => eval(literal, fmt, dec, out),
        Command::Convergents { value } => convergents(value, fmt, dec, out),
        Command::Mediants { value, n } => mediants(value, *n, fmt, out),
        Command::Classify { pq, alpha } => classify_cmd(pq, alpha, fmt, out),
        Command::Check(args) => check_cmd(args, fmt, dec, out),
        Command::Verify(args) => verify(args, fmt, out),
        Command::Example(args) => example(args, fmt, dec, out),
    }
}

/// Accepts either `p/q` or a bracketed continued fraction literal.
fn parse_value(s: &str) -> Result<Rational, Failure> {
    if s.trim_start().starts_with('[') {
        Ok(evaluate_terms(&parse_terms(s)?))
    } else {
        Ok(parse_rational(s)?)
    }
}

fn parse_alpha(s: &str) -> Result<AlphaSource, Failure> {
    let src = if s.trim_start().starts_with('[') {
        AlphaSource::rational(&parse_value(s)?)
    } else if s.contains(':') {
        s.parse()?
    } else {
        AlphaSource::rational(&parse_rational(s)?)
    };
    Ok(src.with_budget(Budget::from_env()?))
}

fn parse_theorem(s: &str) -> Result<TheoremId, Failure> {
    s.parse::<TheoremId>().map_err(|e| Failure::Usage(e.to_string()))
}

fn decimal_suffix(r: &Rational, dec: Option<usize>) -> String {
    dec.map(|k| format!(" ~ {}", format_decimal(r, k))).unwrap_or_default()
}

fn numbers(terms: &[BigInt]) -> Vec<serde_json::Value> {
    terms.iter().map(|t| serde_json::Value::Number(big_number(t))).collect()
}

fn big_number(x: &BigInt) -> serde_json::Number {
    x.to_string().parse().expect("integer literal")
}

fn emit_json(out: &mut dyn Write, v: &serde_json::Value) -> io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json value"))
}

fn expand(value: &str, fmt: Format, dec: Option<usize>, out: &mut dyn Write) -> Outcome {
    let r = parse_rational(value)?;
    let cf = expand_rational(&r);
    let lit = format_terms(cf.terms());
    match fmt {
        Format::Plain => writeln!(out, "{lit}{}", decimal_suffix(&r, dec))?,
        Format::Json => emit_json(
            out,
            &json!({ "value": format_rational(&r), "terms": numbers(cf.terms()), "literal": lit }),
        )?,
        Format::Csv => writeln!(out, "value,literal\n{},\"{lit}\"", format_rational(&r))?,
    }
    Ok(EXIT_OK)
}

fn eval(literal: &str, fmt: Format, dec: Option<usize>, out: &mut dyn Write) -> Outcome {
    let terms = parse_terms(literal)?;
    let r = evaluate_terms(&terms);
    match fmt {
        Format::Plain => writeln!(out, "{}{}", format_rational(&r), decimal_suffix(&r, dec))?,
        Format::Json => emit_json(out, &json!({ "literal": format_terms(&terms), "value": format_rational(&r) }))?,
        Format::Csv => writeln!(out, "literal,value\n\"{}\",{}", format_terms(&terms), format_rational(&r))?,
    }
    Ok(EXIT_OK)
}

fn convergents(value: &str, fmt: Format, dec: Option<usize>, out: &mut dyn Write) -> Outcome {
    let cf = expand_rational(&parse_value(value)?);
    let table = cf.convergents();
    let rows: Vec<(usize, BigInt, BigInt)> = table.iter().map(|(n, p, q)| (n, p.clone(), q.clone())).collect();
    match fmt {
        Format::Plain => {
            for (n, p, q) in &rows {
                let r = Rational::new(p.clone(), q.clone());
                writeln!(out, "{n}: {p}/{q}{}", decimal_suffix(&r, dec))?;
            }
        }
        Format::Json => {
            let list: Vec<_> = rows
                .iter()
                .map(|(n, p, q)| json!({ "n": n, "p": big_number(p), "q": big_number(q) }))
                .collect();
            emit_json(out, &json!({ "terms": numbers(cf.terms()), "convergents": list }))?
        }
        Format::Csv => {
            writeln!(out, "n,p,q")?;
            for (n, p, q) in &rows {
                writeln!(out, "{n},{p},{q}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn mediants(value: &str, n: usize, fmt: Format, out: &mut dyn Write) -> Outcome {
    let cf = expand_rational(&parse_value(value)?);
    let list = mediants_at(cf.terms(), n)?;
    match fmt {
        Format::Plain => {
            for m in &list {
                let mut tags = Vec::new();
                if m.nearest {
                    tags.push("nearest");
                }
                if m.first {
                    tags.push("first");
                }
                writeln!(out, "b={}: {} {}", m.b, format_rational(&m.value), tags.join(","))?;
            }
        }
        Format::Json => {
            let rows: Vec<_> = list
                .iter()
                .map(|m| {
                    json!({ "n": m.n, "b": big_number(&m.b), "value": format_rational(&m.value),
                            "nearest": m.nearest, "first": m.first })
                })
                .collect();
            emit_json(out, &serde_json::Value::Array(rows))?
        }
        Format::Csv => {
            writeln!(out, "n,b,value,nearest,first")?;
            for m in &list {
                writeln!(out, "{},{},{},{},{}", m.n, m.b, format_rational(&m.value), m.nearest, m.first)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn describe(c: &Classification) -> String {
    match c {
        Classification::Convergent { n } => format!("Convergent (n = {n})"),
        Classification::NearestMediant(m) | Classification::InteriorMediant(m) => {
            let first = if m.first { ", first" } else { "" };
            format!("{} (n = {}, b = {}{first})", c.kind(), m.n, m.b)
        }
        Classification::Other => "Other".to_string(),
    }
}

fn classify_cmd(pq: &str, alpha: &str, fmt: Format, out: &mut dyn Write) -> Outcome {
    let pq = parse_value(pq)?;
    let alpha = parse_alpha(alpha)?;
    let c = classify(&pq, &alpha)?;
    let m = c.mediant();
    match fmt {
        Format::Plain => writeln!(out, "{}", describe(&c))?,
        Format::Json => emit_json(
            out,
            &json!({ "pq": format_rational(&pq), "alpha": alpha.to_string(), "kind": c.kind(), "n": c.n(),
                     "b": m.map(|m| big_number(&m.b)), "first": m.map(|m| m.first) }),
        )?,
        Format::Csv => writeln!(
            out,
            "pq,alpha,kind,n,b\n{},\"{}\",{},{},{}",
            format_rational(&pq),
            alpha,
            c.kind(),
            c.n().map(|n| n.to_string()).unwrap_or_default(),
            m.map(|m| m.b.to_string()).unwrap_or_default()
        )?,
    }
    Ok(EXIT_OK)
}

fn write_verdict_plain(
    out: &mut dyn Write,
    v: &Verdict,
    pq: &Rational,
    alpha: &AlphaSource,
    dec: Option<usize>,
) -> Result<(), Failure> {
    writeln!(out, "theorem: {}", v.theorem)?;
    writeln!(out, "p/q: {}{}", format_rational(pq), decimal_suffix(pq, dec))?;
    writeln!(out, "alpha: {alpha}")?;
    writeln!(out, "bound: {}{}", format_rational(&v.bound), decimal_suffix(&v.bound, dec))?;
    if let Some(k) = dec {
        let tol = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), k + 2));
        let (lo, hi) = alpha.error_enclosure(pq, &tol)?;
        writeln!(out, "|alpha - p/q| in [{}, {}]", format_decimal(&lo, k), format_decimal(&hi, k))?;
    }
    writeln!(out, "hypothesis: {}", v.hypothesis.tag())?;
    writeln!(out, "classification: {}", describe(&v.classification))?;
    writeln!(out, "conclusion: {}", if v.conclusion_satisfied { "yes" } else { "no" })?;
    writeln!(out, "exception: {}", v.exception.map(|e| e.to_string()).unwrap_or_else(|| "none".into()))?;
    for note in &v.notes {
        writeln!(out, "note: {note}")?;
    }
    Ok(())
}

fn check_cmd(args: &CheckArgs, fmt: Format, dec: Option<usize>, out: &mut dyn Write) -> Outcome {
    let theorem = parse_theorem(&args.theorem)?;
    let pq = parse_value(&args.pq)?;
    let alpha = parse_alpha(&args.alpha)?;
    if args.require_n.is_some() && theorem != TheoremId::RefinedT3 {
        return Err(Failure::Usage("--require-n applies to refined-t3 only".into()));
    }
    let v = check(theorem, &pq, &alpha)?;
    if let Some(want) = args.require_n {
        if v.t3_n != Some(want) {
            return Err(Failure::Usage(format!(
                "derived n = {} but --require-n {want}",
                v.t3_n.map(|n| n.to_string()).unwrap_or_else(|| "none".into())
            )));
        }
    }
    match fmt {
        Format::Plain => write_verdict_plain(out, &v, &pq, &alpha, dec)?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&v.record()).expect("record"))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(crate::verifier::CSV_HEADER)?;
            w.write_record([
                theorem.tag().to_string(),
                pq.numer().to_string(),
                pq.denom().to_string(),
                alpha.to_string(),
                v.hypothesis.tag().to_string(),
                v.classification.kind().to_string(),
                v.exception.map(|e| e.to_string()).unwrap_or_default(),
                v.equality().to_string(),
                "check".to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn parse_family(specs: &[String]) -> Result<AlphaFamily, Failure> {
    let usage = |m: &str| Failure::Usage(m.to_string());
    match specs {
        [] => Ok(AlphaFamily::RationalsUpTo(100)),
        [one] if one.starts_with("rationals:") => {
            let m = one["rationals:".len()..].parse().map_err(|_| usage("rationals:M needs an integer M"))?;
            Ok(AlphaFamily::RationalsUpTo(m))
        }
        [one] if one.starts_with("shapes:") => {
            let (t, l) = one["shapes:".len()..]
                .split_once(',')
                .ok_or_else(|| usage("shapes:T,L needs two integers"))?;
            let max_term = t.trim().parse().map_err(|_| usage("shapes:T,L needs two integers"))?;
            let max_len = l.trim().parse().map_err(|_| usage("shapes:T,L needs two integers"))?;
            Ok(AlphaFamily::CfShapes { max_term, max_len })
        }
        many => {
            if many.iter().any(|s| s.starts_with("rationals:") || s.starts_with("shapes:")) {
                return Err(usage("rationals:/shapes: families cannot be combined with other --alpha values"));
            }
            let sources = many.iter().map(|s| parse_alpha(s)).collect::<Result<Vec<_>, _>>()?;
            Ok(AlphaFamily::periodic_set(sources))
        }
    }
}

fn parse_theorems(list: &[String]) -> Result<Vec<TheoremId>, Failure> {
    if list.iter().any(|t| t == "all") {
        return Ok(TheoremId::ALL.to_vec());
    }
    list.iter().map(|t| parse_theorem(t)).collect()
}

fn summary_line(r: &VerificationReport) -> String {
    format!(
        "{}: {} pairs, {} holding ({} equality), {} counterexamples {:?}, {} equality witnesses, exceptions {:?}, {} inapplicable, {} budget-exhausted -> {}",
        r.theorem,
        r.pairs_checked,
        r.hypothesis_holds,
        r.equality_count,
        r.counterexample_count,
        r.counterexample_reasons,
        r.equality_witness_count,
        r.exception_histogram,
        r.inapplicable,
        r.budget_exhausted_count,
        if r.passed() { "PASS" } else { "FAIL" }
    )
}

fn verify(args: &VerifyArgs, fmt: Format, stdout: &mut dyn Write) -> Outcome {
    let mut file;
    let out: &mut dyn Write = match &args.out {
        Some(path) => {
            file = io::BufWriter::new(File::create(path)?);
            &mut file
        }
        None => stdout,
    };
    if args.mode == Mode::BoundOrder {
        let report = cross_order_check(args.max_q)?;
        match fmt {
            Format::Plain => writeln!(
                out,
                "bound order for 2 <= q <= {}: {} ({} failures)",
                report.q_max,
                if report.holds { "holds" } else { "violated" },
                report.failures.len()
            )?,
            Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report"))?,
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut *out);
                for row in &report.rows {
                    w.serialize(row)?;
                }
                w.flush()?;
            }
        }
        return Ok(if report.holds { EXIT_OK } else { EXIT_COUNTEREXAMPLES });
    }

    if args.theorem.is_empty() {
        return Err(Failure::Usage("--theorem is required for this mode".into()));
    }
    let theorems = parse_theorems(&args.theorem)?;
    let window = parse_value(&args.window)?;
    let universe = Universe::new(args.max_q, parse_family(&args.alpha)?).with_window(window);
    universe.validate()?;

    if args.mode == Mode::Sharpness {
        let mut all = Vec::new();
        for &t in &theorems {
            let found = sharpness_scan(t, &universe)?;
            match fmt {
                Format::Plain => {
                    writeln!(out, "{t}: {} sharpness witnesses", found.len())?;
                    for w in found.iter().take(20) {
                        writeln!(
                            out,
                            "  {} vs {}: ratio to bound in [{}, {}], q^2|alpha - p/q| <= {}, {}",
                            w.pair.pq(),
                            w.pair.alpha,
                            format_decimal(&w.ratio_lo(), 6),
                            format_decimal(&parse_rational(&w.ratio_hi)?, 6),
                            format_decimal(&w.scaled_hi(), 6),
                            w.pair.verdict.as_ref().map(|v| v.classification.kind.as_str()).unwrap_or("")
                        )?;
                    }
                }
                Format::Csv => write_sharpness_csv(t, &found, &mut *out)?,
                Format::Json => all.push(json!({ "theorem": t, "witnesses": found })),
            }
        }
        if fmt == Format::Json {
            emit_json(out, &serde_json::Value::Array(all))?;
        }
        return Ok(EXIT_OK);
    }

    let mut reports = Vec::new();
    for &t in &theorems {
        reports.push(audit_parallel(t, &universe, args.jobs)?);
    }
    match fmt {
        Format::Plain => {
            writeln!(out, "universe: {}", universe.summary())?;
            for r in &reports {
                writeln!(out, "{}", summary_line(r))?;
                for c in r.counterexamples.iter().take(10) {
                    writeln!(out, "  {} vs {}: {}", c.pq(), c.alpha, c.reason.as_deref().unwrap_or(""))?;
                }
            }
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&reports).expect("reports"))?,
        Format::Csv => {
            for (i, r) in reports.iter().enumerate() {
                let mut buf = Vec::new();
                write_report_csv(r, &mut buf)?;
                let text = String::from_utf8(buf).expect("utf-8");
                // one header for the whole stream
                let body = if i == 0 { text.as_str() } else { text.split_once('\n').map_or("", |x| x.1) };
                out.write_all(body.as_bytes())?;
            }
        }
    }
    out.flush()?;
    let exhausted = reports.iter().any(|r| r.budget_exhausted_count > 0);
    Ok(if reports.iter().any(|r| !r.passed()) {
        EXIT_COUNTEREXAMPLES
    } else if exhausted {
        EXIT_BUDGET
    } else {
        EXIT_OK
    })
}

fn example(args: &ExampleArgs, fmt: Format, dec: Option<usize>, out: &mut dyn Write) -> Outcome {
    if args.n == 0 || args.a == 0 {
        return Err(Failure::Usage("--N and --A must be >= 1".into()));
    }
    let (family, a) = match args.which {
        ExampleId::Ex1 => (SeriesFamily::Example1, args.a),
        ExampleId::Ex2 => {
            if args.a != 1 {
                return Err(Failure::Usage("ex2 is the A = 1 case of ex1".into()));
            }
            (SeriesFamily::Example1, 1)
        }
        ExampleId::Ex4 => (SeriesFamily::Example4, args.a),
    };
    let a = BigInt::from(a);
    let alpha = AlphaSource::series(family, a.clone())?.with_budget(Budget::from_env()?);
    let s = partial_sum(family, &a, args.n);
    let cf = expand_rational(&s);
    let class = classify(&s, &alpha)?;
    let verdicts = TheoremId::ALL
        .iter()
        .map(|&t| check(t, &s, &alpha))
        .collect::<Result<Vec<_>, _>>()?;
    let convergent = matches!(class, Classification::Convergent { .. });
    match fmt {
        Format::Plain => {
            writeln!(out, "alpha: {alpha}")?;
            writeln!(out, "partial sum S_{}: {}{}", args.n, format_rational(&s), decimal_suffix(&s, dec))?;
            writeln!(out, "cf: {}", format_terms(cf.terms()))?;
            writeln!(out, "convergent: {}", if convergent { "yes" } else { "no" })?;
            writeln!(out, "classification: {}", describe(&class))?;
            for v in &verdicts {
                writeln!(
                    out,
                    "{}: hypothesis {}, conclusion {}",
                    v.theorem,
                    v.hypothesis.tag(),
                    if v.conclusion_satisfied { "yes" } else { "no" }
                )?;
            }
        }
        Format::Json => {
            let rec: Vec<_> = verdicts.iter().map(Verdict::record).collect();
            emit_json(
                out,
                &json!({ "alpha": alpha.to_string(), "n": args.n, "partial_sum": format_rational(&s),
                         "terms": numbers(cf.terms()), "convergent": convergent, "kind": class.kind(),
                         "verdicts": rec }),
            )?
        }
        Format::Csv => {
            writeln!(out, "theorem,partial_sum,hypothesis,classification,conclusion")?;
            for v in &verdicts {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    v.theorem,
                    format_rational(&s),
                    v.hypothesis.tag(),
                    v.classification.kind(),
                    v.conclusion_satisfied
                )?;
            }
        }
    }
    debug_assert!(!s.is_negative());
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("leglab").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn expand_and_eval() {
        assert_eq!(run_capture(&["expand", "5/8"]), (0, "[0;1,1,1,2]\n".into(), String::new()));
        assert_eq!(run_capture(&["eval", "[0;1,1,1,2]"]).1, "5/8\n");
        assert_eq!(run_capture(&["eval", "[0;1,1,1,2]", "--decimals", "3"]).1, "5/8 ~ 0.625\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&["expand", "1/0"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["check", "--theorem", "nope", "--pq", "1/2", "--alpha", "rat:1/3"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn check_json_case() {
        let (code, out, _) =
            run_capture(&["check", "--theorem", "refined-t2", "--pq", "1/2", "--alpha", "rat:1/3", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["exception"], 4);
        assert_eq!(v["equality"], true);
    }

    #[test]
    fn example_ex2() {
        let (code, out, _) = run_capture(&["example", "ex2", "--N", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("81/128"));
        assert!(out.contains("convergent: yes"));
    }

    #[test]
    fn require_n() {
        let base = ["check", "--theorem", "refined-t3", "--pq", "1/3", "--alpha", "[0;2,2]"];
        assert_eq!(run_capture(&[&base[..], &["--require-n", "1"]].concat()).0, 0);
        assert_eq!(run_capture(&[&base[..], &["--require-n", "2"]].concat()).0, EXIT_USAGE);
    }
}
