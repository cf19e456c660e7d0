//! The `svt` command line: expand objects, run verification suites.
//!
//! Exit codes: 0 on success, 1 when a suite finds a violated identity, 2 on
//! usage or parameter errors.

pub mod json;
pub mod render;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::liealg::Generator;
use crate::scalars::{Rational, Scalar};
use crate::tseries::SeriesValue;
use crate::twist::{antipode_closed, build_element, delta_closed, TwistContext, TwistKind};
use crate::verify::{run_suite, suite_description, Report, SuiteSpec, SUITES};

pub const MAX_ORDER: usize = 5;
const UNSAFE_MAX_ORDER: usize = 64;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "svt", version, about = "Twist deformation of the super-Virasoro algebra: expand and verify")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a deformed coproduct, antipode or twist element.
    ///
    /// Objects: `delta-L I`, `delta-G K2`, `antipode-L I`, `antipode-G K2`,
    /// `twist F|Fcal|u|v A`. The index of G_k is passed doubled (K2 = 2k);
    /// A is an integer or a fraction P/Q.
    Expand(ExpandArgs),
    /// Run a verification suite and report every failing case.
    Check(CheckArgs),
    /// List the available verification suites.
    ListSuites,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Object {
    #[value(name = "delta-L")]
    DeltaL,
    #[value(name = "delta-G")]
    DeltaG,
    #[value(name = "antipode-L")]
    AntipodeL,
    #[value(name = "antipode-G")]
    AntipodeG,
    #[value(name = "twist")]
    Twist,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpandFormat {
    Text,
    Latex,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(clap::Args, Debug)]
pub struct ExpandArgs {
    #[arg(value_enum)]
    pub object: Object,
    /// Index (I or K2), or for `twist` the element name F, Fcal, u or v.
    #[arg(allow_negative_numbers = true)]
    pub first: String,
    /// For `twist`: the shift A (integer or P/Q, default 0).
    #[arg(allow_hyphen_values = true)]
    pub second: Option<String>,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub m: i64,
    /// Truncation order N in t.
    #[arg(long, default_value_t = 3)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = ExpandFormat::Text)]
    pub format: ExpandFormat,
    /// Substitute a rational value P/Q for α.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Allow orders above 5.
    #[arg(long)]
    pub unsafe_order: bool,
}

#[derive(clap::Args, Debug)]
pub struct CheckArgs {
    pub suite: String,
    /// Value of m; repeat for several (default 1 and 2).
    #[arg(long = "m", allow_hyphen_values = true)]
    pub m: Vec<i64>,
    #[arg(long, default_value_t = 3)]
    pub order: usize,
    #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
    pub i_min: i64,
    #[arg(long, default_value_t = 4, allow_hyphen_values = true)]
    pub i_max: i64,
    /// Lower bound on the doubled index 2k of G_k.
    #[arg(long, default_value_t = -5, allow_hyphen_values = true)]
    pub k2_min: i64,
    #[arg(long, default_value_t = 5, allow_hyphen_values = true)]
    pub k2_max: i64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    /// Allow orders above 5.
    #[arg(long)]
    pub unsafe_order: bool,
}

/// Parses `P`, `-P` or `P/Q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("`{s}` is not an integer or fraction P/Q"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

fn parse_int(s: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("`{s}` is not an integer")))
}

fn expand(args: &ExpandArgs, out: &mut dyn Write) -> Result<()> {
    if args.m == 0 {
        return Err(Error::InvalidM);
    }
    if args.order > MAX_ORDER && !args.unsafe_order {
        return Err(Error::OrderTooLarge { order: args.order, max: MAX_ORDER });
    }
    let alpha = args.alpha.as_deref().map(parse_rational).transpose()?;
    let ctx = TwistContext::new(args.m, args.order)?;
    let single = |what: &str| -> Result<i64> {
        match &args.second {
            None => parse_int(&args.first),
            Some(_) => Err(Error::Parse(format!("{what} takes exactly one index"))),
        }
    };
    let (value, twist) = match args.object {
        Object::DeltaL => (SeriesValue::Tensor(delta_closed(Generator::l(single("delta-L")?), &ctx)), None),
        Object::DeltaG => (SeriesValue::Tensor(delta_closed(Generator::g2(single("delta-G")?), &ctx)), None),
        Object::AntipodeL => (SeriesValue::Uea(antipode_closed(Generator::l(single("antipode-L")?), &ctx)), None),
        Object::AntipodeG => (SeriesValue::Uea(antipode_closed(Generator::g2(single("antipode-G")?), &ctx)), None),
        Object::Twist => {
            let kind = args.first.parse::<TwistKind>()?;
            let a = match &args.second {
                Some(a) => parse_rational(a)?,
                None => Rational::zero(),
            };
            (build_element(kind, &a, &ctx), Some((kind, a)))
        }
    };
    let value = match &alpha {
        Some(x) => {
            let f = |s: &Scalar| Scalar::constant(s.eval(x));
            match value {
                SeriesValue::Uea(s) => SeriesValue::Uea(s.map_scalars(&f)),
                SeriesValue::Tensor(s) => SeriesValue::Tensor(s.map_scalars(&f)),
            }
        }
        None => value,
    };
    let text = match (args.format, twist) {
        (ExpandFormat::Json, _) => json::series_to_string(&value),
        (ExpandFormat::Text, Some((k, a))) => render::twist_symbolic(k, &a, args.order, render::Style::Text),
        (ExpandFormat::Latex, Some((k, a))) => render::twist_symbolic(k, &a, args.order, render::Style::Latex),
        (ExpandFormat::Text, None) => render::series_text(&value),
        (ExpandFormat::Latex, None) => render::series_latex(&value),
    };
    writeln!(out, "{text}").map_err(|e| Error::Parse(e.to_string()))
}

fn report_text(r: &Report) -> String {
    let mut s = String::new();
    for f in &r.failures {
        s.push_str(&format!("FAIL [{}] {}\n  left:  {}\n  right: {}\n", f.suite, f.case, f.left, f.right));
        if let Some(d) = &f.first_difference {
            s.push_str(&format!("  first difference: {d}\n"));
        }
    }
    for t in &r.tallies {
        s.push_str(&format!("{:<22} {:>6} cases  {:>4} failures\n", t.suite, t.cases, t.failures));
    }
    let verdict = if r.passed() { "PASS" } else { "FAIL" };
    s.push_str(&format!(
        "{verdict} {}: {} cases, {} failures ({:.2} s)\n",
        r.suite_id,
        r.cases_run,
        r.failures.len(),
        r.wall_time.as_secs_f64()
    ));
    s
}

fn check(args: &CheckArgs, out: &mut dyn Write) -> Result<bool> {
    let mut spec = SuiteSpec::new(&args.suite);
    if !args.m.is_empty() {
        spec.m_values = args.m.clone();
    }
    spec.order = args.order;
    spec.i_range = (args.i_min, args.i_max);
    spec.k2_range = (args.k2_min, args.k2_max);
    if args.unsafe_order {
        spec.max_order = UNSAFE_MAX_ORDER;
    }
    let report = run_suite(&spec)?;
    let text = match args.format {
        ReportFormat::Text => report_text(&report),
        ReportFormat::Json => {
            let mut v = serde_json::to_value(&report).map_err(|e| Error::Parse(e.to_string()))?;
            v["passed"] = serde_json::Value::Bool(report.passed());
            format!("{v}\n")
        }
    };
    write!(out, "{text}").map_err(|e| Error::Parse(e.to_string()))?;
    Ok(report.passed())
}

/// Parses `args` (including the program name) and runs the command, writing
/// to `out` and `err`; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Expand(a) => expand(a, out).map(|_| true),
        Command::Check(a) => check(a, out),
        Command::ListSuites => {
            for s in SUITES {
                let _ = writeln!(out, "{s:<22} {}", suite_description(s));
            }
            Ok(true)
        }
    };
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_VIOLATION,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["svt"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn expand_examples() {
        let (c, o, _) = run_capture(&["expand", "delta-L", "0", "--m", "1", "--order", "0", "--format", "text"]);
        assert_eq!((c, o.trim()), (0, "L_0⊗1 + 1⊗L_0"));
        let (c, o, _) = run_capture(&["expand", "twist", "Fcal", "0", "--m", "1", "--order", "1"]);
        assert_eq!((c, o.trim()), (0, "1⊗1 − (X⊗Y)t"));
        let (c, o, _) = run_capture(&["expand", "delta-G", "1", "--m", "1", "--order", "0"]);
        assert_eq!((c, o.trim()), (0, "G_{1/2}⊗1 + 1⊗G_{1/2}"));
        let (c, o, _) = run_capture(&["expand", "antipode-L", "-2", "--m", "-1", "--order", "0"]);
        assert_eq!((c, o.trim()), (0, "−L_{-2}"));
    }

    #[test]
    fn alpha_specialization() {
        let (c, sym, _) = run_capture(&["expand", "delta-L", "1", "--order", "1"]);
        assert_eq!(c, 0);
        assert!(sym.contains('α'));
        let (c, num, _) = run_capture(&["expand", "delta-L", "1", "--order", "1", "--alpha", "0"]);
        assert_eq!(c, 0);
        assert!(!num.contains('α'));
    }

    #[test]
    fn usage_errors_exit_2() {
        for args in [
            vec!["check", "nosuch"],
            vec!["expand", "delta-L", "x"],
            vec!["expand", "delta-X", "1"],
            vec!["expand", "twist", "Q", "0"],
            vec!["expand", "delta-L", "1", "--order", "6"],
            vec!["expand", "delta-L", "1", "--m", "0"],
            vec!["check", "xy", "--order", "9"],
            vec!["bogus"],
        ] {
            assert_eq!(run_capture(&args).0, EXIT_USAGE, "{args:?}");
        }
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("-3/6").unwrap(), crate::scalars::rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), crate::scalars::int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a").is_err());
    }
}
