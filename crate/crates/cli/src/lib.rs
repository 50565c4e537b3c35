//! Command-line front end for `ordfield`: evaluate, classify and compare
//! expressions in a chosen ordered field, and run the completeness probes
//! and Archimedean algorithms.
//!
//! [`run_command`] does all the work and returns the exit code and both
//! output streams, so the binary is a thin wrapper and tests need no
//! subprocesses.
//!
//! Exit codes: `0` success, `1` domain error (division by zero, undecidable
//! comparison, failed precondition), `2` usage or parse error.

pub mod eval;
pub mod parse;

use std::cmp::Ordering;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use ordfield::archimedean::{bisect_ivt, bw_select, dyadic_sup, sqrt_sup_iterate_with, StepRule, StopReason};
use ordfield::completeness::{
    archimedean_probe, bounded_naturals_probe, cantor_point_finite, cauchy_probe, gen_unbounded_increasing,
    open_fip_point, ClosedInterval, OpenInterval, ProbeReport, Verdict,
};
use ordfield::exact::format_rational;
use ordfield::metric::{format_display, metric_distance};
use ordfield::{Element, FieldError, FieldTag, OrderedField, Rational, ValuationValue};
use serde_json::{json, Value};

use eval::{evaluate, rational_arg, EvalContext};
use parse::{caret, parse_expression, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    Parse { text: String, error: ParseError },
    Usage(String),
    Domain(FieldError),
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Domain(e)
    }
}

impl From<ParseError> for CliError {
    fn from(error: ParseError) -> Self {
        CliError::Parse { text: String::new(), error }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Parse { .. } | CliError::Usage(_) => EXIT_USAGE,
        }
    }

    fn render(&self) -> String {
        match self {
            CliError::Parse { text, error } if !text.is_empty() => {
                format!("error: {error}\n{}\n", caret(text, error))
            }
            CliError::Parse { error, .. } => format!("error: {error}\n"),
            CliError::Usage(m) => format!("error: {m}\n"),
            CliError::Domain(e) => format!("error: {e}\n"),
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn parse_field(s: &str) -> Result<FieldTag, String> {
    s.parse::<FieldTag>().map_err(|_| "expected one of q, laurent, lc, ratfunc-inf, ratfunc-zero".to_string())
}

#[derive(Debug, Parser)]
#[command(name = "ordfield", version, about = "Exact arithmetic in ordered non-Archimedean fields")]
struct Cli {
    #[command(flatten)]
    config: SessionConfig,
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct SessionConfig {
    /// q, laurent, lc, ratfunc-inf or ratfunc-zero
    #[arg(long, global = true, default_value = "laurent", value_parser = parse_field)]
    pub field: FieldTag,
    /// Relative depth of inverses and square roots of exact series
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..))]
    pub trunc: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest natural scanned by the archimedean probe
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub scan_bound: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Canonical form of an expression
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Infinitesimal / finite / infinite, and the standard part
    Classify {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Less, Equal or Greater
    Compare {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Canonical valuation
    Val {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Ultrametric distance e^{-v(a - b)}
    Dist {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Positive square root
    Sqrt {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Completeness probes and Archimedean algorithms
    #[command(subcommand)]
    Probe(Probe),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SupKind {
    /// S = { q : q^2 < VALUE }
    Sq,
    /// S = { q : q < VALUE }
    Lt,
}

#[derive(Debug, Subcommand)]
enum Probe {
    /// Common point of closed intervals "LO,HI"
    Cantor {
        #[arg(required = true)]
        intervals: Vec<String>,
    },
    /// Point rho/2 inside every open interval "LO,HI"
    OpenFip {
        #[arg(long, allow_hyphen_values = true)]
        rho: String,
        #[arg(required = true)]
        intervals: Vec<String>,
    },
    /// Least N past which the given terms are eps-close
    Cauchy {
        #[arg(long = "eps", required = true, allow_hyphen_values = true)]
        eps: Vec<String>,
        #[arg(required = true)]
        terms: Vec<String>,
    },
    /// Least natural above |EXPR|, or a scan showing there is none
    Archimedean {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Dyadic approximations a_p of sup S over Q
    DyadicSup {
        #[arg(value_enum)]
        kind: SupKind,
        #[arg(allow_hyphen_values = true)]
        value: String,
        /// An integer that is not an upper bound
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        lo: i64,
        /// An integer upper bound
        #[arg(long, allow_hyphen_values = true)]
        hi: i64,
        #[arg(long, default_value_t = 10)]
        levels: u32,
    },
    /// Supremum-based square root iteration over Q
    SqrtIter {
        a: String,
        #[arg(long, default_value = "1/1000")]
        tol: String,
        #[arg(long, default_value_t = 100)]
        max_iter: usize,
        /// Use the step exactly as defined instead of a 32-bit dyadic rounding
        #[arg(long)]
        verbatim: bool,
    },
    /// Bisection on a sign change of a polynomial in x
    Ivt {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        lo: String,
        #[arg(long, allow_hyphen_values = true)]
        hi: String,
        #[arg(long, default_value_t = 30)]
        iters: u32,
    },
    /// Bolzano-Weierstrass halving on a finite sequence in [LO, HI]
    Bw {
        #[arg(long, allow_hyphen_values = true)]
        lo: String,
        #[arg(long, allow_hyphen_values = true)]
        hi: String,
        #[arg(short, long, default_value_t = 5)]
        k: usize,
        #[arg(required = true)]
        terms: Vec<String>,
    },
    /// One element above every natural 1..N
    NaturalsBounded {
        #[arg(long, default_value_t = 1000)]
        n: u64,
    },
    /// L, L^2, ..., L^N for an infinitely large L
    UnboundedSeq {
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
}

/// Runs one command line (without the program name).
pub fn run_command<S: AsRef<str>>(args: &[S]) -> CommandOutput {
    let argv = std::iter::once("ordfield").chain(args.iter().map(|s| s.as_ref()));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CommandOutput { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => CommandOutput { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    match execute(&cli.command, &cli.config) {
        Ok(out) => CommandOutput { code: EXIT_OK, stdout: out, stderr: String::new() },
        Err(e) => CommandOutput { code: e.exit_code(), stdout: String::new(), stderr: e.render() },
    }
}

struct Session<'a> {
    config: &'a SessionConfig,
}

impl Session<'_> {
    fn ctx(&self) -> EvalContext {
        EvalContext { field: self.config.field, trunc: self.config.trunc }
    }

    fn element(&self, text: &str) -> Result<Element, CliError> {
        let expr = parse_expression(text, self.config.field)
            .map_err(|error| CliError::Parse { text: text.to_string(), error })?;
        Ok(evaluate(&expr, &self.ctx())?)
    }

    fn rational(&self, text: &str) -> Result<Rational, CliError> {
        rational_arg(text).map_err(|e| match e {
            CliError::Parse { error, .. } => CliError::Parse { text: text.to_string(), error },
            other => other,
        })
    }

    fn interval(&self, text: &str) -> Result<(Element, Element), CliError> {
        let (lo, hi) = text
            .split_once(',')
            .ok_or_else(|| CliError::Usage(format!("interval {text:?} must be written LO,HI")))?;
        Ok((self.element(lo)?, self.element(hi)?))
    }

    fn emit(&self, text: String, json: Value) -> String {
        match self.config.format {
            Format::Text => text,
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&json).expect("plain json")),
        }
    }

    fn report(&self, report: &ProbeReport) -> String {
        match self.config.format {
            Format::Text => report.to_text(),
            Format::Json => format!("{}\n", report.to_json()),
        }
    }
}

fn element_json(e: &Element) -> Value {
    let mut v = json!({ "field": e.field().to_string(), "value": e.to_string() });
    let obj = v.as_object_mut().expect("object");
    match e {
        Element::Q(_) => {}
        Element::Series(s) => {
            let terms: Vec<Value> = s
                .terms()
                .iter()
                .map(|(x, c)| json!({ "exponent": format_rational(&x.to_rational()), "coefficient": format_rational(c) }))
                .collect();
            obj.insert("terms".into(), Value::Array(terms));
            obj.insert("known_order".into(), json!(s.known_order().to_string()));
        }
        Element::RatFunc(r) => {
            let coeffs = |p: &ordfield::Poly| -> Value { p.coeffs().iter().map(format_rational).collect() };
            obj.insert("numerator".into(), coeffs(r.num()));
            obj.insert("denominator".into(), coeffs(r.den()));
        }
    }
    v
}

fn ordering_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "Less",
        Ordering::Equal => "Equal",
        Ordering::Greater => "Greater",
    }
}

fn execute(command: &Command, config: &SessionConfig) -> Result<String, CliError> {
    let s = Session { config };
    match command {
        Command::Eval { expr } => {
            let e = s.element(expr)?;
            let mut j = element_json(&e);
            j["command"] = json!("eval");
            Ok(s.emit(format!("{e}\n"), j))
        }
        Command::Classify { expr } => {
            let e = s.element(expr)?;
            let c = e.classify();
            let standard = if c.finite { Some(e.standard_part()?) } else { None };
            let mut text = format!("{c}\n");
            if let Some(st) = &standard {
                text.push_str(&format!("standard part: {st}\n"));
            }
            let j = json!({
                "command": "classify",
                "field": config.field.to_string(),
                "value": e.to_string(),
                "is_zero": c.is_zero,
                "infinitesimal": c.infinitesimal,
                "finite": c.finite,
                "infinite": c.infinite,
                "standard_part": standard.map(|q| format_rational(&q)),
            });
            Ok(s.emit(text, j))
        }
        Command::Compare { a, b } => {
            let (x, y) = (s.element(a)?, s.element(b)?);
            let o = ordering_name(x.try_cmp(&y)?);
            let j = json!({ "command": "compare", "field": config.field.to_string(), "a": x.to_string(), "b": y.to_string(), "result": o });
            Ok(s.emit(format!("{o}\n"), j))
        }
        Command::Val { expr } => {
            let e = s.element(expr)?;
            let v = e.valuation();
            let j = json!({ "command": "val", "field": config.field.to_string(), "value": e.to_string(), "valuation": v.to_string() });
            Ok(s.emit(format!("{v}\n"), j))
        }
        Command::Dist { a, b } => {
            let (x, y) = (s.element(a)?, s.element(b)?);
            let level = match (&x, &y) {
                (Element::Series(p), Element::Series(q)) => metric_distance(p, q)?.level,
                _ => x.try_sub(&y)?.valuation(),
            };
            let display = format_display(level.display_radius());
            let j = json!({ "command": "dist", "field": config.field.to_string(), "level": level.to_string(), "display": display });
            Ok(s.emit(format!("level: {level}\ndisplay: {display}\n"), j))
        }
        Command::Sqrt { expr } => {
            let e = s.element(expr)?;
            let r = evaluate(
                &parse::Expr::Call(parse::Func::Sqrt, Box::new(parse_expression(expr, config.field)?)),
                &s.ctx(),
            )?;
            let mut j = element_json(&r);
            j["command"] = json!("sqrt");
            j["argument"] = json!(e.to_string());
            Ok(s.emit(format!("{r}\n"), j))
        }
        Command::Probe(p) => probe(&s, p).map(|r| s.report(&r)),
    }
}

fn probe(s: &Session<'_>, p: &Probe) -> Result<ProbeReport, CliError> {
    let config = s.config;
    match p {
        Probe::Cantor { intervals } => {
            let family = intervals
                .iter()
                .map(|t| {
                    let (lo, hi) = s.interval(t)?;
                    Ok(ClosedInterval::new(lo, hi)?)
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let point = cantor_point_finite(&family)?;
            let mut r = ProbeReport::new("cantor", Verdict::Witness).with_witness(point.to_string());
            for iv in &family {
                r.line(format!("{point} in {iv}"));
            }
            Ok(r)
        }
        Probe::OpenFip { rho, intervals } => {
            let family = intervals
                .iter()
                .map(|t| {
                    let (lo, hi) = s.interval(t)?;
                    Ok(OpenInterval::new(lo, hi)?)
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let rho = s.element(rho)?;
            let zeta = open_fip_point(&family, &rho)?;
            let mut r = ProbeReport::new("open-fip", Verdict::Witness).with_witness(zeta.to_string());
            r.line(format!("rho = {rho}"));
            for iv in &family {
                r.line(format!("{zeta} in {iv}"));
            }
            Ok(r)
        }
        Probe::Cauchy { eps, terms } => {
            let terms = terms.iter().map(|t| s.element(t)).collect::<Result<Vec<_>, _>>()?;
            let eps = eps.iter().map(|t| s.element(t)).collect::<Result<Vec<_>, _>>()?;
            Ok(cauchy_probe(&terms, &eps)?)
        }
        Probe::Archimedean { expr } => Ok(archimedean_probe(&s.element(expr)?, config.scan_bound)?),
        Probe::DyadicSup { kind, value, lo, hi, levels } => {
            let c = s.rational(value)?;
            let zero = Rational::from_integer(0.into());
            let approximations: Vec<Rational> = match kind {
                SupKind::Sq => {
                    if !c.is_positive() {
                        return Err(FieldError::InvalidArgument(format!("{{q : q^2 < {c}}} is empty")).into());
                    }
                    dyadic_sup(|x: &Rational| x > &zero && x * x >= c, *lo, *hi, *levels)?
                }
                SupKind::Lt => dyadic_sup(|x: &Rational| x >= &c, *lo, *hi, *levels)?,
            };
            let last = approximations.last().expect("level 0 is always present");
            let mut r = ProbeReport::new("dyadic-sup", Verdict::Witness).with_witness(format_rational(last));
            for (p, a) in approximations.iter().enumerate() {
                r.line(format!("a_{p} = {}", format_rational(a)));
            }
            Ok(r)
        }
        Probe::SqrtIter { a, tol, max_iter, verbatim } => {
            let a = s.rational(a)?;
            let tol = s.rational(tol)?;
            let rule = if *verbatim { StepRule::Verbatim } else { StepRule::default() };
            let trace = sqrt_sup_iterate_with(&a, &tol, *max_iter, rule)?;
            let verdict = if trace.terminated { Verdict::Witness } else { Verdict::Inconclusive };
            let last = trace.last();
            let mut r = ProbeReport::new("sqrt-iter", verdict).with_witness(format_rational(&last.iterate));
            for (k, step) in trace.steps.iter().enumerate() {
                r.line(format!("s_{k} = {}, s_{k}^2 - a = {}", format_rational(&step.iterate), format_rational(&step.residual)));
            }
            r.line(match trace.reason {
                StopReason::ToleranceMet => format!("|s^2 - a| <= {}", format_rational(&tol)),
                StopReason::MaxIterations => format!("stopped after {max_iter} iterations"),
            });
            Ok(r)
        }
        Probe::Ivt { poly, lo, hi, iters } => {
            let ctx = Session { config: &SessionConfig { field: FieldTag::RatFuncInf, ..config.clone() } };
            let p = ctx
                .element(poly)?
                .as_polynomial()
                .ok_or_else(|| CliError::Usage(format!("{poly:?} is not a polynomial in x")))?;
            let (a, b) = (s.rational(lo)?, s.rational(hi)?);
            let iv = bisect_ivt(&p, &a, &b, *iters)?;
            let mut r = ProbeReport::new("ivt", Verdict::Witness).with_witness(iv.to_string());
            r.line(format!("p = {}", p.fmt_with('x')));
            r.line(format!("p(lo) = {}, p(hi) = {}", p.eval(&iv.lo), p.eval(&iv.hi)));
            r.line(format!("width = {}", &iv.hi - &iv.lo));
            Ok(r)
        }
        Probe::Bw { lo, hi, k, terms } => {
            let terms = terms.iter().map(|t| s.rational(t)).collect::<Result<Vec<_>, _>>()?;
            let (a, b) = (s.rational(lo)?, s.rational(hi)?);
            let sel = bw_select(&terms, &a, &b, *k)?;
            let verdict = if sel.stopped_early.is_some() { Verdict::Inconclusive } else { Verdict::Witness };
            let mut r = ProbeReport::new("bw", verdict);
            for (j, (n, iv)) in sel.indices.iter().zip(&sel.intervals).enumerate() {
                r.witness.push((n + 1).to_string());
                r.line(format!("k = {}: n = {}, term = {}, interval = {iv}", j + 1, n + 1, terms[*n]));
            }
            if let Some(why) = &sel.stopped_early {
                r.line(why.clone());
            }
            Ok(r)
        }
        Probe::NaturalsBounded { n } => {
            let zero = ordfield::q_embed(&Rational::from_integer(0.into()), config.field);
            Ok(bounded_naturals_probe(&zero, *n)?)
        }
        Probe::UnboundedSeq { n } => {
            let zero = ordfield::q_embed(&Rational::from_integer(0.into()), config.field);
            let seq = gen_unbounded_increasing(&zero, *n)?;
            let mut r = ProbeReport::new("unbounded-seq", Verdict::Witness);
            for (k, x) in seq.iter().enumerate() {
                if k > 0 && seq[k - 1].try_cmp(x)? != Ordering::Less {
                    return Err(FieldError::Contract(format!("term {k} does not increase")).into());
                }
                if x.cmp_natural(config.scan_bound)? != Ordering::Greater {
                    return Err(FieldError::Contract(format!("{x} is not above {}", config.scan_bound)).into());
                }
                r.witness.push(x.to_string());
            }
            r.line(format!("strictly increasing; every term exceeds {}", config.scan_bound));
            Ok(r)
        }
    }
}

/// Valuation text as used in JSON output.
pub fn valuation_text(v: &ValuationValue) -> String {
    v.to_string()
}
