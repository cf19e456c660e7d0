//! Named verification suites. Every case computes both sides of an identity
//! independently and compares canonical forms exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{ad_power, bracket, bracket_generators, build_xy, Generator, Kind, LieElement};
use crate::pbw::{uea_mul, UeaElement};
use crate::scalars::{factorial, int, rat, rat_binomial, Rational, Scalar};
use crate::tensor::{flip, LegMap, TensorElement};
use crate::tseries::{binomial_power, series_apply_leg, series_invert, series_mul, series_tensor, SeriesValue, TSeries};
use crate::twist::{
    ad_y_closed, antipode_closed, coeff_a, coeff_b, coeff_for, deformed_antipode_then_mul, deformed_coproduct,
    deformed_coproduct_on_leg, delta_closed, f_series, fcal_series, lemma35_lhs_rhs, shift_binomial, twisted_direct,
    u_series, v_series, HopfMap, Lemma35, TwistContext,
};

pub const SUITES: [&str; 13] = [
    "relations",
    "jacobi",
    "xy",
    "lemma31",
    "commutation",
    "factorial-identities",
    "lemma34",
    "lemma35",
    "combinatorial",
    "twist-axioms",
    "closed-forms",
    "hopf-axioms",
    "all",
];

pub fn suite_description(id: &str) -> &'static str {
    match id {
        "relations" => "defining brackets, and their realization as graded commutators in U",
        "jacobi" => "super Jacobi identity on generator triples of one sector",
        "xy" => "[X, Y] = Y for each m",
        "lemma31" => "closed form of (ad Y)^r on L_i and G_k",
        "commutation" => "moving L_i, G_k past X_a^{<r>}, X_a^{[r]} and Y^r; moving Y^s past X",
        "factorial-identities" => "product and summation rules for rising and falling factorials",
        "lemma34" => "Fcal_a F_d = 1⊗(1-Yt)^{a-d}, v_a u_d = (1-Yt)^{-(a+d)}, and the inverses",
        "lemma35" => "commutation of generators with F_a and u_a",
        "combinatorial" => "a_s(r,i) = b_s(r,k) = 0 for s > 2r",
        "twist-axioms" => "counit normalization and cocycle condition for Fcal",
        "closed-forms" => "closed-form deformed coproduct and antipode against direct conjugation",
        "hopf-axioms" => "coassociativity, counit, antipode, multiplicativity, noncocommutativity",
        "all" => "every suite above",
        _ => "",
    }
}

/// Parameters of a suite run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteSpec {
    pub suite_id: String,
    pub m_values: Vec<i64>,
    /// Inclusive bounds for the integral index `i` of `L_i`.
    pub i_range: (i64, i64),
    /// Inclusive bounds for the doubled index `2k` of `G_k`.
    pub k2_range: (i64, i64),
    pub order: usize,
    pub a_values: Vec<Rational>,
    /// Bound on `r` for the `(ad Y)^r` and combinatorial suites.
    pub r_max: u32,
    /// Bound on `r`, `s` for the commutation and factorial suites.
    pub rs_max: u32,
    /// Order for the cocycle check; defaults to `order`.
    pub cocycle_order: Option<usize>,
    pub max_order: usize,
    /// Test hook: perturbs the expected `[L_i, L_j]` constant.
    pub corrupt_structure_constant: bool,
}

impl SuiteSpec {
    pub fn new(suite_id: &str) -> Self {
        SuiteSpec {
            suite_id: suite_id.to_string(),
            m_values: vec![1, 2],
            i_range: (-4, 4),
            k2_range: (-5, 5),
            order: 3,
            a_values: vec![int(0), int(1), rat(-1, 2), rat(3, 2)],
            r_max: 4,
            rs_max: 3,
            cocycle_order: None,
            max_order: 5,
            corrupt_structure_constant: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if !SUITES.contains(&self.suite_id.as_str()) {
            return Err(Error::UnknownSuite(self.suite_id.clone()));
        }
        let cocycle = self.cocycle_order.unwrap_or(self.order);
        if self.order > self.max_order || cocycle > self.max_order {
            return Err(Error::OrderTooLarge { order: self.order.max(cocycle), max: self.max_order });
        }
        if self.m_values.is_empty() {
            return Err(Error::EmptyRange("m values".into()));
        }
        if self.m_values.contains(&0) {
            return Err(Error::InvalidM);
        }
        if self.i_range.0 > self.i_range.1 {
            return Err(Error::EmptyRange("i range".into()));
        }
        if self.k2_range.0 > self.k2_range.1 {
            return Err(Error::EmptyRange("2k range".into()));
        }
        if self.a_values.is_empty() {
            return Err(Error::EmptyRange("a values".into()));
        }
        Ok(())
    }

    fn l_gens(&self) -> Vec<Generator> {
        (self.i_range.0..=self.i_range.1).map(Generator::l).collect()
    }

    fn g_gens(&self) -> Vec<Generator> {
        (self.k2_range.0..=self.k2_range.1).map(Generator::g2).collect()
    }

    fn gens(&self) -> Vec<Generator> {
        let mut v = self.l_gens();
        v.extend(self.g_gens());
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub suite: String,
    pub case: String,
    pub left: String,
    pub right: String,
    /// First nonzero term of `left - right`, when the two are comparable.
    pub first_difference: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteTally {
    pub suite: String,
    pub cases: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite_id: String,
    pub cases_run: usize,
    pub failures: Vec<Failure>,
    pub tallies: Vec<SuiteTally>,
    #[serde(serialize_with = "seconds")]
    pub wall_time: Duration,
}

fn seconds<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl PartialEq for Report {
    /// Equality ignores wall time.
    fn eq(&self, other: &Self) -> bool {
        self.suite_id == other.suite_id
            && self.cases_run == other.cases_run
            && self.failures == other.failures
            && self.tallies == other.tallies
    }
}

/// Any algebraic value a case may compare.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Uea(UeaElement),
    Tensor(TensorElement),
    UeaSeries(TSeries<UeaElement>),
    TensorSeries(TSeries<TensorElement>),
}

impl From<UeaElement> for Value {
    fn from(x: UeaElement) -> Self {
        Value::Uea(x)
    }
}

impl From<TensorElement> for Value {
    fn from(x: TensorElement) -> Self {
        Value::Tensor(x)
    }
}

impl From<TSeries<UeaElement>> for Value {
    fn from(x: TSeries<UeaElement>) -> Self {
        Value::UeaSeries(x)
    }
}

impl From<TSeries<TensorElement>> for Value {
    fn from(x: TSeries<TensorElement>) -> Self {
        Value::TensorSeries(x)
    }
}

impl From<SeriesValue> for Value {
    fn from(x: SeriesValue) -> Self {
        match x {
            SeriesValue::Uea(u) => Value::UeaSeries(u),
            SeriesValue::Tensor(t) => Value::TensorSeries(t),
        }
    }
}

impl From<LieElement> for Value {
    fn from(x: LieElement) -> Self {
        Value::Uea(UeaElement::from_lie(&x))
    }
}

impl From<Rational> for Value {
    fn from(x: Rational) -> Self {
        Value::Uea(UeaElement::scalar(Scalar::constant(x)))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Uea(x) => write!(f, "{x}"),
            Value::Tensor(x) => write!(f, "{x}"),
            Value::UeaSeries(x) => write!(f, "{x}"),
            Value::TensorSeries(x) => write!(f, "{x}"),
        }
    }
}

/// `x - y` with its first nonzero term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Difference {
    pub value: Value,
    pub first_term: Option<String>,
}

impl Difference {
    pub fn is_empty(&self) -> bool {
        self.first_term.is_none()
    }
}

fn first_uea_term(x: &UeaElement) -> Option<String> {
    x.terms().next().map(|(m, c)| format!("({c})·{m}"))
}

fn first_tensor_term(x: &TensorElement) -> Option<String> {
    x.terms().next().map(|(legs, c)| {
        let legs: Vec<String> = legs.iter().map(|l| l.to_string()).collect();
        format!("({c})·{}", legs.join("⊗"))
    })
}

fn first_series_term<T>(x: &TSeries<T>, first: impl Fn(&T) -> Option<String>) -> Option<String>
where
    T: crate::tseries::Coefficient,
{
    x.coeffs().iter().enumerate().find_map(|(d, c)| first(c).map(|s| format!("t^{d}: {s}")))
}

pub fn diff_report(x: &Value, y: &Value) -> Result<Difference> {
    let value = match (x, y) {
        (Value::Uea(a), Value::Uea(b)) => Value::Uea(a.sub(b)),
        (Value::Tensor(a), Value::Tensor(b)) if a.rank() == b.rank() => Value::Tensor(a.sub(b)),
        (Value::UeaSeries(a), Value::UeaSeries(b)) if a.order() == b.order() => Value::UeaSeries(a.sub(b)?),
        (Value::TensorSeries(a), Value::TensorSeries(b))
            if a.order() == b.order() && a.coeff(0).rank() == b.coeff(0).rank() =>
        {
            Value::TensorSeries(a.sub(b)?)
        }
        _ => return Err(Error::ShapeMismatch("values of different shape".into())),
    };
    let first_term = match &value {
        Value::Uea(d) => first_uea_term(d),
        Value::Tensor(d) => first_tensor_term(d),
        Value::UeaSeries(d) => first_series_term(d, first_uea_term),
        Value::TensorSeries(d) => first_series_term(d, first_tensor_term),
    };
    Ok(Difference { value, first_term })
}

enum Check {
    Pass,
    Fail { left: String, right: String, first_difference: Option<String> },
}

fn compare(left: impl Into<Value>, right: impl Into<Value>) -> Check {
    let (l, r) = (left.into(), right.into());
    if l == r {
        return Check::Pass;
    }
    let first_difference = diff_report(&l, &r).ok().and_then(|d| d.first_term);
    Check::Fail { left: l.to_string(), right: r.to_string(), first_difference }
}

fn expect_true(ok: bool, what: &str) -> Check {
    if ok {
        Check::Pass
    } else {
        Check::Fail { left: what.to_string(), right: "true".into(), first_difference: None }
    }
}

type CaseFn = Box<dyn Fn() -> Result<Check> + Send + Sync>;

struct Case {
    suite: &'static str,
    label: String,
    run: CaseFn,
}

fn case(suite: &'static str, label: String, run: impl Fn() -> Result<Check> + Send + Sync + 'static) -> Case {
    Case { suite, label, run: Box::new(run) }
}

fn same_sector(gens: &[Generator]) -> bool {
    let mut sector = None;
    for g in gens {
        if let Some(s) = g.sector() {
            if sector.is_some_and(|t| t != s) {
                return false;
            }
            sector = Some(s);
        }
    }
    true
}

fn gen_u(g: Generator) -> UeaElement {
    UeaElement::generator(g)
}

fn scalar_u(c: Rational) -> UeaElement {
    UeaElement::scalar(Scalar::constant(c))
}

fn alpha_pow(c: Rational, p: usize) -> Scalar {
    Scalar::monomial(c, p as u32)
}

fn sign(n: usize) -> Rational {
    if n % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

struct Contexts(BTreeMap<(i64, usize), Arc<TwistContext>>);

impl Contexts {
    fn build(spec: &SuiteSpec, orders: &[usize]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &m in &spec.m_values {
            for &n in orders {
                map.insert((m, n), Arc::new(TwistContext::new(m, n)?));
            }
        }
        Ok(Contexts(map))
    }

    fn get(&self, m: i64, n: usize) -> Arc<TwistContext> {
        self.0[&(m, n)].clone()
    }
}

/// `[a, b]` straight from the defining relations.
fn defining_bracket(a: Generator, b: Generator, corrupt: bool) -> LieElement {
    let (x, y) = (a.index(), b.index());
    match (a.kind(), b.kind()) {
        (Kind::L, Kind::L) => {
            let mut c = &y - &x;
            if corrupt {
                c += int(1);
            }
            LieElement::l_or_zero(&(&x + &y)).scale(&Scalar::constant(c))
        }
        (Kind::L, Kind::G) => LieElement::term(Scalar::constant(&y - &x / int(2)), Generator::g_at(&(&x + &y)).unwrap()),
        (Kind::G, Kind::L) => LieElement::term(Scalar::constant(&x - &y / int(2)), Generator::g_at(&(&x + &y)).unwrap())
            .scale(&Scalar::from_int(-1)),
        (Kind::G, Kind::G) => LieElement::l_or_zero(&(&x + &y)).scale(&Scalar::from_int(2)),
    }
}

fn relations_cases(spec: &SuiteSpec) -> Vec<Case> {
    let gens = spec.gens();
    let corrupt = spec.corrupt_structure_constant;
    let mut out = Vec::new();
    for &a in &gens {
        for &b in &gens {
            out.push(case("relations", format!("[{a}, {b}]"), move || {
                let got = match bracket_generators(a, b) {
                    Some((c, g)) => LieElement::term(Scalar::constant(c), g),
                    None => LieElement::zero(),
                };
                Ok(compare(got, defining_bracket(a, b, corrupt)))
            }));
            out.push(case("relations", format!("{a}{b} ∓ {b}{a} in U"), move || {
                let (x, y) = (gen_u(a), gen_u(b));
                let s = a.parity().koszul(b.parity());
                let comm = uea_mul(&x, &y).sub(&uea_mul(&y, &x).scale(&Scalar::from_int(s)));
                Ok(compare(comm, defining_bracket(a, b, corrupt)))
            }));
        }
    }
    out
}

fn jacobi_cases(spec: &SuiteSpec) -> Vec<Case> {
    let gens = spec.gens();
    let mut out = Vec::new();
    for &x in &gens {
        for &y in &gens {
            for &z in &gens {
                if !same_sector(&[x, y, z]) {
                    continue;
                }
                out.push(case("jacobi", format!("({x}, {y}, {z})"), move || {
                    let (a, b, c) = (LieElement::generator(x), LieElement::generator(y), LieElement::generator(z));
                    let t1 = bracket(&a, &bracket(&b, &c)?)?.scale(&Scalar::from_int(x.parity().koszul(z.parity())));
                    let t2 = bracket(&b, &bracket(&c, &a)?)?.scale(&Scalar::from_int(y.parity().koszul(x.parity())));
                    let t3 = bracket(&c, &bracket(&a, &b)?)?.scale(&Scalar::from_int(z.parity().koszul(y.parity())));
                    Ok(compare(t1.add(&t2).add(&t3), LieElement::zero()))
                }));
            }
        }
    }
    out
}

fn xy_cases(spec: &SuiteSpec) -> Vec<Case> {
    spec.m_values
        .iter()
        .map(|&m| {
            case("xy", format!("[X, Y] = Y, m={m}"), move || {
                let xy = build_xy(m)?;
                Ok(compare(bracket(&xy.x, &xy.y)?, xy.y.clone()))
            })
        })
        .collect()
}

fn lemma31_cases(spec: &SuiteSpec) -> Vec<Case> {
    let mut out = Vec::new();
    for &m in &spec.m_values {
        let y = Arc::new(build_xy(m).map(|p| p.y));
        for g in spec.gens() {
            for r in 0..=spec.r_max {
                let y = y.clone();
                out.push(case("lemma31", format!("(ad Y)^{r}({g}), m={m}"), move || {
                    let y = y.as_ref().clone()?;
                    let direct = ad_power(&y, &LieElement::generator(g), r)?;
                    Ok(compare(UeaElement::from_lie(&direct), ad_y_closed(g, r, m)))
                }));
            }
        }
    }
    out
}

/// `L_i X_a^{<r>}` or `L_i X_a^{[r]}` by the commutation formula.
fn commute_past_factorial(g: Generator, a: &Rational, r: usize, rising: bool, ctx: &TwistContext) -> UeaElement {
    let m = ctx.m();
    let ratio = g.index() / int(m);
    let mut out = UeaElement::zero();
    for p in 0..=r {
        let c = shift_binomial(g, p as u32, m) * factorial(r as u32) / factorial((r - p) as u32);
        if c.is_zero() {
            continue;
        }
        let fac = if rising {
            ctx.x_rising(&(a + int(p as i64) - &ratio), r - p)
        } else {
            ctx.x_falling(&(a - &ratio), r - p)
        };
        let term = uea_mul(&fac, &gen_u(g.shifted(-(p as i64) * m)));
        out = out.add(&term.scale(&alpha_pow(c, p)));
    }
    out
}

/// `L_i Y^r` by the commutation formula.
fn commute_past_y_power(g: Generator, r: usize, ctx: &TwistContext) -> UeaElement {
    let m = ctx.m();
    let mut out = UeaElement::zero();
    for p in 0..=r {
        let pre = sign(p) * factorial(r as u32) / factorial((r - p) as u32);
        for q in 0..=2 * p {
            let c = coeff_for(g, q as u32, p as u32, m) * &pre;
            if c.is_zero() {
                continue;
            }
            let gen = gen_u(g.shifted((p as i64 - q as i64) * m));
            out = out.add(&uea_mul(&ctx.y_pow(r - p), &gen).scale(&alpha_pow(c, q)));
        }
    }
    out
}

fn commutation_cases(spec: &SuiteSpec, ctxs: &Contexts) -> Vec<Case> {
    let mut out = Vec::new();
    let rs = spec.rs_max as usize;
    for &m in &spec.m_values {
        let ctx = ctxs.get(m, spec.order);
        for g in spec.gens() {
            let c = ctx.clone();
            out.push(case("commutation", format!("{g}X base relation, m={m}"), move || {
                let (x, gu) = (c.x(), gen_u(g));
                let w = if g.kind() == Kind::L { int(1) } else { rat(1, 2) };
                let ratio = g.index() / int(m);
                let first = uea_mul(&x.sub(&scalar_u(ratio)), &gu);
                let second = gen_u(g.shifted(-m)).scale(&Scalar::monomial(-(w * int(m) + g.index()), 1));
                Ok(compare(uea_mul(&gu, x), first.add(&second)))
            }));
            for r in 0..=rs {
                let c = ctx.clone();
                out.push(case("commutation", format!("{g}Y^{r}, m={m}"), move || {
                    Ok(compare(uea_mul(&gen_u(g), &c.y_pow(r)), commute_past_y_power(g, r, &c)))
                }));
                for a in &spec.a_values {
                    for rising in [true, false] {
                        let (c, a) = (ctx.clone(), a.clone());
                        let name = if rising { format!("X_{{{a}}}^<{r}>") } else { format!("X_{{{a}}}^[{r}]") };
                        out.push(case("commutation", format!("{g}{name}, m={m}"), move || {
                            let fac = if rising { c.x_rising(&a, r) } else { c.x_falling(&a, r) };
                            let lhs = uea_mul(&gen_u(g), &fac);
                            Ok(compare(lhs, commute_past_factorial(g, &a, r, rising, &c)))
                        }));
                    }
                }
            }
        }
        for s in 0..=rs {
            for r in 0..=rs {
                for a in &spec.a_values {
                    for rising in [true, false] {
                        let (c, a) = (ctx.clone(), a.clone());
                        let tag = if rising { "<>" } else { "[]" };
                        out.push(case("commutation", format!("Y^{s} X_{{{a}}}{tag}{r}, m={m}"), move || {
                            let shifted = &a - int(s as i64);
                            let (lhs_fac, rhs_fac) = if rising {
                                (c.x_rising(&a, r), c.x_rising(&shifted, r))
                            } else {
                                (c.x_falling(&a, r), c.x_falling(&shifted, r))
                            };
                            let ys = c.y_pow(s);
                            Ok(compare(uea_mul(&ys, &lhs_fac), uea_mul(&rhs_fac, &ys)))
                        }));
                    }
                }
            }
        }
    }
    out
}

fn factorial_cases(spec: &SuiteSpec, ctxs: &Contexts) -> Vec<Case> {
    use crate::pbw::{shifted_factorial, Direction};
    let mut out = Vec::new();
    let rs = spec.rs_max;
    for &m in &spec.m_values {
        let ctx = ctxs.get(m, spec.order);
        let bases = [("X", ctx.x().clone()), ("Y", ctx.y().clone())];
        for (name, x) in bases {
            let x = Arc::new(x);
            let rise = {
                let x = x.clone();
                move |a: &Rational, r: u32| shifted_factorial(&x, a, r, Direction::Rising)
            };
            let fall = {
                let x = x.clone();
                move |a: &Rational, r: u32| shifted_factorial(&x, a, r, Direction::Falling)
            };
            for a in &spec.a_values {
                for r in 0..=rs {
                    for s in 0..=rs {
                        let (a1, rise1) = (a.clone(), rise.clone());
                        out.push(case("factorial-identities", format!("rising product {name}, a={a}, r={r}, s={s}, m={m}"), move || {
                            Ok(compare(rise1(&a1, r + s), uea_mul(&rise1(&a1, r), &rise1(&(&a1 + int(r as i64)), s))))
                        }));
                        let (a1, fall1) = (a.clone(), fall.clone());
                        out.push(case("factorial-identities", format!("falling product {name}, a={a}, r={r}, s={s}, m={m}"), move || {
                            Ok(compare(fall1(&a1, r + s), uea_mul(&fall1(&a1, r), &fall1(&(&a1 - int(r as i64)), s))))
                        }));
                    }
                    let (a1, rise1, fall1) = (a.clone(), rise.clone(), fall.clone());
                    out.push(case("factorial-identities", format!("falling as rising {name}, a={a}, r={r}, m={m}"), move || {
                        Ok(compare(fall1(&a1, r), rise1(&(&a1 - int(r as i64) + int(1)), r)))
                    }));
                }
                for d in &spec.a_values {
                    for n in 0..=rs {
                        let (a1, d1, rise1, fall1) = (a.clone(), d.clone(), rise.clone(), fall.clone());
                        out.push(case("factorial-identities", format!("mixed sum {name}, a={a}, d={d}, n={n}, m={m}"), move || {
                            let mut lhs = UeaElement::zero();
                            for r in 0..=n {
                                let s = n - r;
                                let c = sign(s as usize) / (factorial(r) * factorial(s));
                                lhs = lhs.add(&uea_mul(&fall1(&a1, r), &rise1(&d1, s)).scale_rat(&c));
                            }
                            Ok(compare(lhs, scalar_u(rat_binomial(&(&a1 - &d1), n))))
                        }));
                        let (a1, d1, fall1) = (a.clone(), d.clone(), fall.clone());
                        out.push(case("factorial-identities", format!("falling sum {name}, a={a}, d={d}, n={n}, m={m}"), move || {
                            let mut lhs = UeaElement::zero();
                            for r in 0..=n {
                                let s = n - r;
                                let c = sign(s as usize) / (factorial(r) * factorial(s));
                                let shifted = &d1 - int(r as i64);
                                lhs = lhs.add(&uea_mul(&fall1(&a1, r), &fall1(&shifted, s)).scale_rat(&c));
                            }
                            let top = &a1 - &d1 + int(n as i64) - int(1);
                            Ok(compare(lhs, scalar_u(rat_binomial(&top, n))))
                        }));
                    }
                }
            }
        }
    }
    out
}

fn lemma34_cases(spec: &SuiteSpec, ctxs: &Contexts) -> Vec<Case> {
    let mut out = Vec::new();
    let n = spec.order;
    for &m in &spec.m_values {
        let ctx = ctxs.get(m, n);
        for a in &spec.a_values {
            for d in &spec.a_values {
                let (c, a1, d1) = (ctx.clone(), a.clone(), d.clone());
                out.push(case("lemma34", format!("Fcal_{a} F_{d}, m={m}"), move || {
                    let lhs = series_mul(&fcal_series(&a1, &c), &f_series(&d1, &c))?;
                    let one = TSeries::unit_like(&UeaElement::one(), n);
                    let rhs = series_tensor(&one, &binomial_power(c.y(), &(&a1 - &d1), n))?;
                    Ok(compare(lhs, rhs))
                }));
                let (c, a1, d1) = (ctx.clone(), a.clone(), d.clone());
                out.push(case("lemma34", format!("v_{a} u_{d}, m={m}"), move || {
                    let lhs = series_mul(&v_series(&a1, &c), &u_series(&d1, &c))?;
                    Ok(compare(lhs, binomial_power(c.y(), &(-(&a1 + &d1)), n)))
                }));
            }
            let (c, a1) = (ctx.clone(), a.clone());
            out.push(case("lemma34", format!("Fcal_{a}^-1 = F_{a}, m={m}"), move || {
                Ok(compare(series_invert(&fcal_series(&a1, &c))?, f_series(&a1, &c)))
            }));
            let (c, a1) = (ctx.clone(), a.clone());
            out.push(case("lemma34", format!("u_{a}^-1 = v_{{-{a}}}, m={m}"), move || {
                Ok(compare(series_invert(&u_series(&a1, &c))?, v_series(&(-&a1), &c)))
            }));
        }
    }
    out
}

fn lemma35_cases(spec: &SuiteSpec, ctxs: &Contexts) -> Vec<Case> {
    let mut out = Vec::new();
    for &m in &spec.m_values {
        let ctx = ctxs.get(m, spec.order);
        for which in Lemma35::ALL {
            let gens = if which.kind() == Kind::L { spec.l_gens() } else { spec.g_gens() };
            for g in gens {
                for a in &spec.a_values {
                    let (c, a1) = (ctx.clone(), a.clone());
                    out.push(case("lemma35", format!("({}) {g}, a={a}, m={m}", which.label()), move || {
                        let (l, r) = lemma35_lhs_rhs(which, &a1, g, &c)?;
                        Ok(compare(l, r))
                    }));
                }
            }
        }
    }
    out
}

fn combinatorial_cases(spec: &SuiteSpec) -> Vec<Case> {
    let mut out = Vec::new();
    for &m in &spec.m_values {
        for r in 0..=spec.r_max {
            let (lo, hi) = spec.i_range;
            out.push(case("combinatorial", format!("a_s({r}, i) for s in ({}, {}], i in [{lo}, {hi}], m={m}", 2 * r, 2 * r + 4), move || {
                for s in 2 * r + 1..=2 * r + 4 {
                    for i in lo..=hi {
                        let v = coeff_a(s, r, i, m);
                        if !v.is_zero() {
                            return Ok(compare(v, Rational::zero()).label_with(format!("s={s}, i={i}")));
                        }
                    }
                }
                Ok(Check::Pass)
            }));
            let (lo, hi) = spec.k2_range;
            out.push(case("combinatorial", format!("b_s({r}, k) for s in ({}, {}], 2k in [{lo}, {hi}], m={m}", 2 * r, 2 * r + 4), move || {
                for s in 2 * r + 1..=2 * r + 4 {
                    for k2 in lo..=hi {
                        let v = coeff_b(s, r, &rat(k2, 2), m);
                        if !v.is_zero() {
                            return Ok(compare(v, Rational::zero()).label_with(format!("s={s}, 2k={k2}")));
                        }
                    }
                }
                Ok(Check::Pass)
            }));
        }
    }
    out
}

impl Check {
    fn label_with(self, extra: String) -> Check {
        match self {
            Check::Pass => Check::Pass,
            Check::Fail { left, right, first_difference } => {
                Check::Fail { left: format!("{left} at {extra}"), right, first_difference }
            }
        }
    }
}

fn twist_axiom_cases(spec: &SuiteSpec, ctxs: &Contexts) -> Vec<Case> {
    let mut out = Vec::new();
    let cocycle = spec.cocycle_order.unwrap_or(spec.order);
    for &m in &spec.m_values {
        for leg in [0usize, 1] {
            let c = ctxs.get(m, spec.order);
            let name = if leg == 0 { "(ε⊗Id)(Fcal) = 1" } else { "(Id⊗ε)(Fcal) = 1" };
            out.push(case("twist-axioms", format!("{name}, N={}, m={m}", spec.order), move || {
                let reduced = series_apply_leg(c.fcal(), leg, LegMap::Counit0)?.into_uea()?;
                Ok(compare(reduced, TSeries::unit_like(&UeaElement::one(), c.order())))
            }));
        }
        let c = ctxs.get(m, cocycle);
        out.push(case("twist-axioms", format!("cocycle, N={cocycle}, m={m}"), move || {
            let f = c.fcal();
            let left_delta = series_apply_leg(f, 0, LegMap::Coproduct0)?.into_tensor()?;
            let right_delta = series_apply_leg(f, 1, LegMap::Coproduct0)?.into_tensor()?;
            let lhs = series_mul(&f.map(TensorElement::pad_right), &left_delta)?;
            let rhs = series_mul(&f.map(TensorElement::pad_left), &right_delta)?;
            Ok(compare(lhs, rhs))
        }));
    }
    out
}

fn closed_form_cases(spec: &SuiteSpec, ctxs: &Contexts) -> Vec<Case> {
    let mut out = Vec::new();
    for &m in &spec.m_values {
        for g in spec.gens() {
            let c = ctxs.get(m, spec.order);
            out.push(case("closed-forms", format!("Δ({g}), m={m}"), move || {
                Ok(compare(delta_closed(g, &c), twisted_direct(HopfMap::Delta, &gen_u(g), &c)?))
            }));
            let c = ctxs.get(m, spec.order);
            out.push(case("closed-forms", format!("S({g}), m={m}"), move || {
                Ok(compare(antipode_closed(g, &c), twisted_direct(HopfMap::Antipode, &gen_u(g), &c)?))
            }));
        }
    }
    out
}

fn hopf_cases(spec: &SuiteSpec, ctxs: &Contexts) -> Vec<Case> {
    let mut out = Vec::new();
    let n = spec.order;
    for &m in &spec.m_values {
        let gens = spec.gens();
        for &g in &gens {
            let c = ctxs.get(m, n);
            out.push(case("hopf-axioms", format!("coassociativity on {g}, m={m}"), move || {
                let d = delta_closed(g, &c);
                Ok(compare(deformed_coproduct_on_leg(&d, 0, &c)?, deformed_coproduct_on_leg(&d, 1, &c)?))
            }));
            for leg in [0usize, 1] {
                let c = ctxs.get(m, n);
                out.push(case("hopf-axioms", format!("counit on leg {leg} for {g}, m={m}"), move || {
                    let reduced = series_apply_leg(&delta_closed(g, &c), leg, LegMap::Counit0)?.into_uea()?;
                    Ok(compare(reduced, TSeries::constant(gen_u(g), n)))
                }));
                let c = ctxs.get(m, n);
                out.push(case("hopf-axioms", format!("antipode on leg {leg} for {g}, m={m}"), move || {
                    let got = deformed_antipode_then_mul(&delta_closed(g, &c), leg, &c)?;
                    Ok(compare(got, TSeries::zero_like(&UeaElement::zero(), n)))
                }));
            }
        }
        for &x in &gens {
            for &y in &gens {
                if !same_sector(&[x, y]) {
                    continue;
                }
                let c = ctxs.get(m, n);
                out.push(case("hopf-axioms", format!("Δ({x}{y}) = Δ({x})Δ({y}), m={m}"), move || {
                    let product = TSeries::constant(uea_mul(&gen_u(x), &gen_u(y)), n);
                    let lhs = deformed_coproduct(&product, &c)?;
                    let rhs = series_mul(&delta_closed(x, &c), &delta_closed(y, &c))?;
                    Ok(compare(lhs, rhs))
                }));
            }
        }
        if n >= 1 {
            let c = ctxs.get(m, n);
            out.push(case("hopf-axioms", format!("noncocommutativity witness Δ(L_{m}) at t^1, m={m}"), move || {
                let d = delta_closed(Generator::l(m), &c);
                let flipped = flip(d.coeff(1))?;
                Ok(expect_true(&flipped != d.coeff(1), "flip(Δ(L_m)) differs from Δ(L_m) at t^1"))
            }));
        }
    }
    out
}

fn suite_cases(id: &str, spec: &SuiteSpec, ctxs: &Contexts) -> Vec<Case> {
    match id {
        "relations" => relations_cases(spec),
        "jacobi" => jacobi_cases(spec),
        "xy" => xy_cases(spec),
        "lemma31" => lemma31_cases(spec),
        "commutation" => commutation_cases(spec, ctxs),
        "factorial-identities" => factorial_cases(spec, ctxs),
        "lemma34" => lemma34_cases(spec, ctxs),
        "lemma35" => lemma35_cases(spec, ctxs),
        "combinatorial" => combinatorial_cases(spec),
        "twist-axioms" => twist_axiom_cases(spec, ctxs),
        "closed-forms" => closed_form_cases(spec, ctxs),
        "hopf-axioms" => hopf_cases(spec, ctxs),
        _ => Vec::new(),
    }
}

/// Runs a suite over the Cartesian product of its parameters, collecting
/// every failure.
pub fn run_suite(spec: &SuiteSpec) -> Result<Report> {
    spec.validate()?;
    let start = Instant::now();
    let ids: Vec<&str> = if spec.suite_id == "all" {
        SUITES.iter().copied().filter(|s| *s != "all").collect()
    } else {
        vec![spec.suite_id.as_str()]
    };
    let mut orders = vec![spec.order];
    if let Some(c) = spec.cocycle_order {
        if c != spec.order {
            orders.push(c);
        }
    }
    let needs_ctx = ids.iter().any(|s| !matches!(*s, "relations" | "jacobi" | "xy" | "lemma31" | "combinatorial"));
    let ctxs = if needs_ctx { Contexts::build(spec, &orders)? } else { Contexts(BTreeMap::new()) };

    let cases: Vec<Case> = ids.iter().flat_map(|id| suite_cases(id, spec, &ctxs)).collect();
    let outcomes: Vec<Option<Failure>> = cases
        .par_iter()
        .map(|c| {
            let check = (c.run)().unwrap_or_else(|e| Check::Fail {
                left: format!("error: {e}"),
                right: String::new(),
                first_difference: None,
            });
            match check {
                Check::Pass => None,
                Check::Fail { left, right, first_difference } => Some(Failure {
                    suite: c.suite.to_string(),
                    case: c.label.clone(),
                    left,
                    right,
                    first_difference,
                }),
            }
        })
        .collect();

    let mut tallies: Vec<SuiteTally> = Vec::new();
    for (c, o) in cases.iter().zip(&outcomes) {
        if tallies.last().map(|t| t.suite != c.suite).unwrap_or(true) {
            tallies.push(SuiteTally { suite: c.suite.to_string(), cases: 0, failures: 0 });
        }
        let t = tallies.last_mut().expect("pushed above");
        t.cases += 1;
        if o.is_some() {
            t.failures += 1;
        }
    }
    Ok(Report {
        suite_id: spec.suite_id.clone(),
        cases_run: cases.len(),
        failures: outcomes.into_iter().flatten().collect(),
        tallies,
        wall_time: start.elapsed(),
    })
}
