//! Text and LaTeX rendering of expanded objects, and the symbolic form of
//! the twist elements.

use num_traits::{One, Signed, Zero};

use crate::liealg::{Generator, Kind};
use crate::pbw::{PbwMonomial, UeaElement};
use crate::scalars::{factorial, int, Rational, Scalar};
use crate::tensor::TensorElement;
use crate::tseries::{SeriesValue, TSeries};
use crate::twist::TwistKind;

pub fn series_text(x: &SeriesValue) -> String {
    match x {
        SeriesValue::Uea(s) => s.to_string(),
        SeriesValue::Tensor(s) => s.to_string(),
    }
}

fn rational_latex(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        let sign = if r.is_negative() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
    }
}

fn scalar_latex(c: &Scalar) -> String {
    let mut out = String::new();
    for (n, (p, r)) in c.terms().iter().enumerate() {
        let abs = r.abs();
        if n > 0 {
            out.push_str(if r.is_negative() { " - " } else { " + " });
        } else if r.is_negative() {
            out.push('-');
        }
        let power = match p {
            0 => String::new(),
            1 => "\\alpha".to_string(),
            _ => format!("\\alpha^{{{p}}}"),
        };
        if abs.is_one() && *p > 0 {
            out.push_str(&power);
        } else {
            out.push_str(&rational_latex(&abs));
            out.push_str(&power);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn generator_latex(g: Generator) -> String {
    let name = match g.kind() {
        Kind::L => "L",
        Kind::G => "G",
    };
    format!("{name}_{{{}}}", rational_latex(&g.index()))
}

fn monomial_latex(m: &PbwMonomial) -> String {
    if m.is_unit() {
        return "1".into();
    }
    let f = m.factors();
    let mut out = String::new();
    let mut i = 0;
    while i < f.len() {
        let mut run = 1;
        while i + run < f.len() && f[i + run] == f[i] {
            run += 1;
        }
        out.push_str(&generator_latex(f[i]));
        if run > 1 {
            out.push_str(&format!("^{{{run}}}"));
        }
        i += run;
    }
    out
}

fn combination_latex(terms: Vec<(String, Scalar)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (basis, c)) in terms.into_iter().enumerate() {
        let single = c.terms().len() == 1;
        let negative = single && c.leading_is_negative();
        let shown = if negative { -&c } else { c };
        if n > 0 {
            out.push_str(if negative { " - " } else { " + " });
        } else if negative {
            out.push('-');
        }
        let unit = basis == "1";
        if shown.is_one() {
            out.push_str(&basis);
        } else if single {
            out.push_str(&scalar_latex(&shown));
            if !unit {
                out.push(' ');
                out.push_str(&basis);
            }
        } else {
            out.push_str(&format!("\\left({}\\right)", scalar_latex(&shown)));
            if !unit {
                out.push(' ');
                out.push_str(&basis);
            }
        }
    }
    out
}

fn uea_latex(x: &UeaElement) -> String {
    combination_latex(x.terms().map(|(m, c)| (monomial_latex(m), c.clone())).collect())
}

fn tensor_latex(x: &TensorElement) -> String {
    let mut sorted: Vec<_> = x.terms().collect();
    sorted.sort_by_cached_key(|(legs, _)| legs.iter().map(|m| (m.is_unit(), m.clone())).collect::<Vec<_>>());
    combination_latex(
        sorted
            .into_iter()
            .map(|(legs, c)| (legs.iter().map(monomial_latex).collect::<Vec<_>>().join(" \\otimes "), c.clone()))
            .collect(),
    )
}

fn series_latex_with<T: crate::tseries::Coefficient>(s: &TSeries<T>, f: impl Fn(&T) -> String) -> String {
    let mut parts = Vec::new();
    for (d, c) in s.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let body = f(c);
        parts.push(match d {
            0 => body,
            1 => format!("\\left({body}\\right) t"),
            _ => format!("\\left({body}\\right) t^{{{d}}}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn series_latex(x: &SeriesValue) -> String {
    match x {
        SeriesValue::Uea(s) => series_latex_with(s, uea_latex),
        SeriesValue::Tensor(s) => series_latex_with(s, tensor_latex),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Text,
    Latex,
}

/// `X_a^{<r>}` or `X_a^{[r]}` in the chosen style; `r = 1` is written as
/// `X`, `(X + a)`.
fn factorial_symbol(a: &Rational, r: usize, rising: bool, style: Style) -> String {
    if r == 0 {
        return "1".into();
    }
    if r == 1 {
        if a.is_zero() {
            return "X".into();
        }
        let (op, abs) = if a.is_negative() { ("-", -a) } else { ("+", a.clone()) };
        let shown = match style {
            Style::Text => abs.to_string(),
            Style::Latex => rational_latex(&abs),
        };
        let op = if style == Style::Text && op == "-" { "−" } else { op };
        return format!("(X {op} {shown})");
    }
    let sub = if a.is_zero() {
        String::new()
    } else {
        match style {
            Style::Text => format!("_{{{a}}}"),
            Style::Latex => format!("_{{{}}}", rational_latex(a)),
        }
    };
    let sup = match (rising, style) {
        (true, Style::Text) => format!("^{{<{r}>}}"),
        (true, Style::Latex) => format!("^{{\\langle {r}\\rangle}}"),
        (false, _) => format!("^{{[{r}]}}"),
    };
    format!("X{sub}{sup}")
}

fn y_power(r: usize, style: Style) -> String {
    match (r, style) {
        (0, _) => "1".into(),
        (1, _) => "Y".into(),
        (_, Style::Text) => format!("Y^{r}"),
        (_, Style::Latex) => format!("Y^{{{r}}}"),
    }
}

/// The twist element as a sum over `r ≤ order` of its defining terms,
/// without expanding `X` and `Y`.
pub fn twist_symbolic(kind: TwistKind, a: &Rational, order: usize, style: Style) -> String {
    let mut out = String::new();
    for r in 0..=order {
        let alternating = matches!(kind, TwistKind::Fcal | TwistKind::U);
        let sign_negative = alternating && r % 2 == 1;
        let coeff = int(1) / factorial(r as u32);
        let (fac, joiner) = match kind {
            TwistKind::F => (factorial_symbol(a, r, true, style), true),
            TwistKind::Fcal => (factorial_symbol(a, r, false, style), true),
            TwistKind::U => (factorial_symbol(&-a, r, false, style), false),
            TwistKind::V => (factorial_symbol(a, r, false, style), false),
        };
        let y = y_power(r, style);
        let body = match (joiner, style) {
            (true, Style::Text) => format!("{fac}⊗{y}"),
            (true, Style::Latex) => format!("{fac} \\otimes {y}"),
            (false, _) if r == 0 => "1".into(),
            (false, _) => format!("{fac}{y}"),
        };
        let body = if coeff.is_one() {
            body
        } else {
            match style {
                Style::Text => format!("({coeff}){body}"),
                Style::Latex => format!("{} {body}", rational_latex(&coeff)),
            }
        };
        let minus = match style {
            Style::Text => "−",
            Style::Latex => "-",
        };
        let sign = if sign_negative { minus } else { "+" };
        let term = match (r, style) {
            (0, _) => body,
            (1, Style::Text) => format!("({body})t"),
            (_, Style::Text) => format!("({body})t^{r}"),
            (1, Style::Latex) => format!("\\left({body}\\right) t"),
            (_, Style::Latex) => format!("\\left({body}\\right) t^{{{r}}}"),
        };
        if r == 0 {
            out.push_str(&term);
        } else {
            out.push_str(&format!(" {sign} {term}"));
        }
    }
    out
}
