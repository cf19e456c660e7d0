//! The twist elements `F_a`, `𝓕_a`, `u_a`, `v_a`, the coefficient functions
//! `a_s(r,i)`, `b_s(r,k)`, and the deformed coproduct and antipode, both in
//! closed form and by direct conjugation.
//!
//! All infinite sums are clipped at total `t`-degree `N`.

use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::liealg::{build_xy, Generator, Kind, XYPair};
use crate::pbw::{antipode0, coproduct0, shifted_factorial, uea_mul, Direction, UeaElement};
use crate::scalars::{factorial, int, m_binomial, rat, Rational, Scalar};
use crate::tensor::{LegMap, TensorElement};
use crate::tseries::{binomial_power, series_apply_leg, series_invert, series_mul, SeriesValue, TSeries};

/// Fixed `m`, the pair `X`, `Y`, and the truncation order, with lazily
/// computed inverses shared by all callers.
#[derive(Debug)]
pub struct TwistContext {
    m: i64,
    order: usize,
    xy: XYPair,
    x: UeaElement,
    y: UeaElement,
    y_pows: Vec<UeaElement>,
    fcal: OnceLock<TSeries<TensorElement>>,
    fcal_inv: OnceLock<TSeries<TensorElement>>,
    u: OnceLock<TSeries<UeaElement>>,
    u_inv: OnceLock<TSeries<UeaElement>>,
}

impl TwistContext {
    pub fn new(m: i64, order: usize) -> Result<Self> {
        let xy = build_xy(m)?;
        let x = UeaElement::from_lie(&xy.x);
        let y = UeaElement::from_lie(&xy.y);
        let mut y_pows = vec![UeaElement::one()];
        for r in 1..=order {
            y_pows.push(uea_mul(&y_pows[r - 1], &y));
        }
        Ok(TwistContext {
            m,
            order,
            xy,
            x,
            y,
            y_pows,
            fcal: OnceLock::new(),
            fcal_inv: OnceLock::new(),
            u: OnceLock::new(),
            u_inv: OnceLock::new(),
        })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn xy(&self) -> &XYPair {
        &self.xy
    }

    pub fn x(&self) -> &UeaElement {
        &self.x
    }

    pub fn y(&self) -> &UeaElement {
        &self.y
    }

    pub fn y_pow(&self, r: usize) -> UeaElement {
        match self.y_pows.get(r) {
            Some(p) => p.clone(),
            None => self.y.pow(r as u32),
        }
    }

    /// `X_a^{<r>}`
    pub fn x_rising(&self, a: &Rational, r: usize) -> UeaElement {
        shifted_factorial(&self.x, a, r as u32, Direction::Rising)
    }

    /// `X_a^{[r]}`
    pub fn x_falling(&self, a: &Rational, r: usize) -> UeaElement {
        shifted_factorial(&self.x, a, r as u32, Direction::Falling)
    }

    /// `𝓕 = 𝓕_0`.
    pub fn fcal(&self) -> &TSeries<TensorElement> {
        self.fcal.get_or_init(|| fcal_series(&Rational::zero(), self))
    }

    /// `𝓕⁻¹` by series inversion (not through the closed form `F_0`).
    pub fn fcal_inv(&self) -> &TSeries<TensorElement> {
        self.fcal_inv.get_or_init(|| series_invert(self.fcal()).expect("𝓕 has unit leading term"))
    }

    /// `u = μ(S₀⊗Id)(𝓕⁻¹)` computed from the inverted series.
    pub fn u(&self) -> &TSeries<UeaElement> {
        self.u.get_or_init(|| {
            let s = series_apply_leg(self.fcal_inv(), 0, LegMap::Antipode0)
                .and_then(SeriesValue::into_tensor)
                .expect("antipode on a rank-2 series");
            crate::tseries::series_mul_legs(&s).expect("rank-2 series")
        })
    }

    /// `u⁻¹` by series inversion.
    pub fn u_inv(&self) -> &TSeries<UeaElement> {
        self.u_inv.get_or_init(|| series_invert(self.u()).expect("u has unit leading term"))
    }
}

/// `1` for `L`, `1/2` for `G`: the offset pattern shared by `a_s` and `b_s`.
fn weight(kind: Kind) -> Rational {
    match kind {
        Kind::L => int(1),
        Kind::G => rat(1, 2),
    }
}

fn signed(r: usize) -> Rational {
    if r % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// `Σ_p (-1)^p [c+wm; p]_m [c+(r-p-w-1)m; r]_m [c+(r-p+w)m; s-p]_m`.
fn alternating_sum(s: u32, r: u32, c: &Rational, w: &Rational, m: i64) -> Rational {
    let mm = int(m);
    let mut acc = Rational::zero();
    for p in 0..=s {
        let rp = int(r as i64 - p as i64);
        let first = m_binomial(&(c + w * &mm), p, &mm);
        if first.is_zero() {
            continue;
        }
        let second = m_binomial(&(c + (&rp - w - int(1)) * &mm), r, &mm);
        let third = m_binomial(&(c + (&rp + w) * &mm), s - p, &mm);
        let term = first * second * third;
        if p % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `a_s(r,i)`.
pub fn coeff_a(s: u32, r: u32, i: i64, m: i64) -> Rational {
    alternating_sum(s, r, &int(i), &int(1), m)
}

/// `b_s(r,k)` for half-integral `k`.
pub fn coeff_b(s: u32, r: u32, k: &Rational, m: i64) -> Rational {
    alternating_sum(s, r, k, &rat(1, 2), m)
}

/// `a_s(r, i)` for `g = L_i`, `b_s(r, k)` for `g = G_k`.
pub fn coeff_for(g: Generator, s: u32, r: u32, m: i64) -> Rational {
    alternating_sum(s, r, &g.index(), &weight(g.kind()), m)
}

/// `[(r-2)m-i; r]_m` for `L_i`, `[(r-3/2)m-k; r]_m` for `G_k`.
pub fn shift_binomial(g: Generator, r: u32, m: i64) -> Rational {
    let top = (int(r as i64) - weight(g.kind()) - int(1)) * int(m) - g.index();
    m_binomial(&top, r, &int(m))
}

/// `Σ_q α^q r! a_q(r,i) L_{i+(r-q)m}` (resp. `b_q`, `G`): the closed form of
/// `(ad Y)^r` on a generator.
pub fn ad_y_closed(g: Generator, r: u32, m: i64) -> UeaElement {
    let mut out = UeaElement::zero();
    let rf = factorial(r);
    for q in 0..=2 * r {
        let c = coeff_for(g, q, r, m) * &rf;
        let shifted = g.shifted((r as i64 - q as i64) * m);
        out = out.add(&UeaElement::generator(shifted).scale(&Scalar::monomial(c, q)));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistKind {
    F,
    Fcal,
    U,
    V,
}

impl FromStr for TwistKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F" => Ok(TwistKind::F),
            "Fcal" => Ok(TwistKind::Fcal),
            "u" => Ok(TwistKind::U),
            "v" => Ok(TwistKind::V),
            _ => Err(Error::Parse(format!("unknown twist element `{s}` (expected F, Fcal, u, v)"))),
        }
    }
}

/// `F_a = Σ (1/r!) X_a^{<r>} ⊗ Y^r t^r`.
pub fn f_series(a: &Rational, ctx: &TwistContext) -> TSeries<TensorElement> {
    TSeries::from_coeffs(
        (0..=ctx.order)
            .map(|r| {
                let left = ctx.x_rising(a, r).scale_rat(&(int(1) / factorial(r as u32)));
                TensorElement::pure(&[left, ctx.y_pow(r)])
            })
            .collect(),
    )
}

/// `𝓕_a = Σ ((-1)^r/r!) X_a^{[r]} ⊗ Y^r t^r`.
pub fn fcal_series(a: &Rational, ctx: &TwistContext) -> TSeries<TensorElement> {
    TSeries::from_coeffs(
        (0..=ctx.order)
            .map(|r| {
                let left = ctx.x_falling(a, r).scale_rat(&(signed(r) / factorial(r as u32)));
                TensorElement::pure(&[left, ctx.y_pow(r)])
            })
            .collect(),
    )
}

/// `u_a = Σ ((-1)^r/r!) X_{-a}^{[r]} Y^r t^r`.
pub fn u_series(a: &Rational, ctx: &TwistContext) -> TSeries<UeaElement> {
    let neg = -a;
    TSeries::from_coeffs(
        (0..=ctx.order)
            .map(|r| uea_mul(&ctx.x_falling(&neg, r), &ctx.y_pow(r)).scale_rat(&(signed(r) / factorial(r as u32))))
            .collect(),
    )
}

/// `v_a = Σ (1/r!) X_a^{[r]} Y^r t^r`.
pub fn v_series(a: &Rational, ctx: &TwistContext) -> TSeries<UeaElement> {
    TSeries::from_coeffs(
        (0..=ctx.order)
            .map(|r| uea_mul(&ctx.x_falling(a, r), &ctx.y_pow(r)).scale_rat(&(int(1) / factorial(r as u32))))
            .collect(),
    )
}

pub fn build_element(kind: TwistKind, a: &Rational, ctx: &TwistContext) -> SeriesValue {
    match kind {
        TwistKind::F => SeriesValue::Tensor(f_series(a, ctx)),
        TwistKind::Fcal => SeriesValue::Tensor(fcal_series(a, ctx)),
        TwistKind::U => SeriesValue::Uea(u_series(a, ctx)),
        TwistKind::V => SeriesValue::Uea(v_series(a, ctx)),
    }
}

fn add_at(coeffs: &mut [TensorElement], degree: usize, x: &TensorElement) {
    coeffs[degree] = coeffs[degree].add(x);
}

/// Closed-form deformed coproduct of `L_i` or `G_k`.
pub fn delta_closed(g: Generator, ctx: &TwistContext) -> TSeries<TensorElement> {
    let n = ctx.order;
    let m = ctx.m;
    let mut coeffs = vec![TensorElement::zero(2); n + 1];
    let ratio = g.index() / int(m);
    for r in 0..=n {
        // α^r [..]_m L_{i-rm} ⊗ (1-Yt)^{i/m-r} Y^r t^r
        let c = shift_binomial(g, r as u32, m);
        if !c.is_zero() {
            let pre = Scalar::monomial(c, r as u32);
            let left = UeaElement::generator(g.shifted(-(r as i64) * m));
            let bin = binomial_power(&ctx.y, &(&ratio - int(r as i64)), n - r);
            let yr = ctx.y_pow(r);
            for d in 0..=n - r {
                let right = uea_mul(bin.coeff(d), &yr);
                add_at(&mut coeffs, d + r, &TensorElement::pure(&[left.clone(), right]).scale(&pre));
            }
        }
        // (-1)^r α^s a_s(r,i) X^{<r>} ⊗ (1-Yt)^{-r} L_{i+(r-s)m} t^r
        let mut right_gens = UeaElement::zero();
        for s in 0..=2 * r {
            let c = coeff_for(g, s as u32, r as u32, m);
            if c.is_zero() {
                continue;
            }
            let shifted = g.shifted((r as i64 - s as i64) * m);
            right_gens = right_gens.add(&UeaElement::generator(shifted).scale(&Scalar::monomial(c, s as u32)));
        }
        if right_gens.is_zero() {
            continue;
        }
        let left = ctx.x_rising(&Rational::zero(), r).scale_rat(&signed(r));
        let bin = binomial_power(&ctx.y, &int(-(r as i64)), n - r);
        for d in 0..=n - r {
            let right = uea_mul(bin.coeff(d), &right_gens);
            add_at(&mut coeffs, d + r, &TensorElement::pure(&[left.clone(), right]));
        }
    }
    TSeries::from_coeffs(coeffs)
}

/// `Σ_{s,p} Σ_{q≤2p} (-1)^s α^{s+q} [..]_m a_q(p, i-sm) X_{-a-i/m}^{[p]} L_{i+(p-s-q)m} Y^s t^{s+p}`,
/// the series multiplying `u_{a+i/m}` in `L_i u_a` (and its `G` analogue).
pub fn u_commutator_sum(g: Generator, a: &Rational, ctx: &TwistContext) -> TSeries<UeaElement> {
    let n = ctx.order;
    let m = ctx.m;
    let shift = -a - g.index() / int(m);
    let mut coeffs = vec![UeaElement::zero(); n + 1];
    for s in 0..=n {
        let c = shift_binomial(g, s as u32, m);
        if c.is_zero() {
            continue;
        }
        let base = g.shifted(-(s as i64) * m);
        let ys = ctx.y_pow(s);
        for p in 0..=n - s {
            let mut middle = UeaElement::zero();
            for q in 0..=2 * p {
                let cq = coeff_for(base, q as u32, p as u32, m);
                if cq.is_zero() {
                    continue;
                }
                let gen = g.shifted((p as i64 - s as i64 - q as i64) * m);
                let scal = Scalar::monomial(&c * &cq * signed(s), (s + q) as u32);
                middle = middle.add(&UeaElement::generator(gen).scale(&scal));
            }
            if middle.is_zero() {
                continue;
            }
            let term = uea_mul(&uea_mul(&ctx.x_falling(&shift, p), &middle), &ys);
            coeffs[s + p] = coeffs[s + p].add(&term);
        }
    }
    TSeries::from_coeffs(coeffs)
}

/// Closed-form deformed antipode of `L_i` or `G_k`; the prefactor
/// `(1-Yt)^{-i/m}` multiplies on the left.
pub fn antipode_closed(g: Generator, ctx: &TwistContext) -> TSeries<UeaElement> {
    let pre = binomial_power(&ctx.y, &(-g.index() / int(ctx.m)), ctx.order);
    let sum = u_commutator_sum(g, &Rational::zero(), ctx);
    series_mul(&pre, &sum).expect("equal orders").scale(&Scalar::from_int(-1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HopfMap {
    Delta,
    Antipode,
}

/// `𝓕Δ₀(x)𝓕⁻¹` for a series `x`.
pub fn deformed_coproduct(x: &TSeries<UeaElement>, ctx: &TwistContext) -> Result<TSeries<TensorElement>> {
    let d0 = x.map(coproduct0);
    series_mul(&series_mul(ctx.fcal(), &d0)?, ctx.fcal_inv())
}

/// `u⁻¹S₀(x)u` for a series `x`.
pub fn deformed_antipode(x: &TSeries<UeaElement>, ctx: &TwistContext) -> Result<TSeries<UeaElement>> {
    let s0 = x.map(antipode0);
    series_mul(&series_mul(ctx.u_inv(), &s0)?, ctx.u())
}

/// `(Δ̃⊗Id)(T)` on leg 0 or `(Id⊗Δ̃)(T)` on leg 1 of a rank-2 series,
/// as `(𝓕⊗1)(Δ₀⊗Id)(T)(𝓕⁻¹⊗1)` and its mirror.
pub fn deformed_coproduct_on_leg(
    x: &TSeries<TensorElement>,
    leg: usize,
    ctx: &TwistContext,
) -> Result<TSeries<TensorElement>> {
    let (f, finv) = match leg {
        0 => (ctx.fcal().map(TensorElement::pad_right), ctx.fcal_inv().map(TensorElement::pad_right)),
        1 => (ctx.fcal().map(TensorElement::pad_left), ctx.fcal_inv().map(TensorElement::pad_left)),
        _ => return Err(Error::LegOutOfRange { leg, rank: 2 }),
    };
    let d0 = series_apply_leg(x, leg, LegMap::Coproduct0)?.into_tensor()?;
    series_mul(&series_mul(&f, &d0)?, &finv)
}

/// `μ(S̃⊗Id)(T)` for `leg = 0`, `μ(Id⊗S̃)(T)` for `leg = 1`.
pub fn deformed_antipode_then_mul(
    x: &TSeries<TensorElement>,
    leg: usize,
    ctx: &TwistContext,
) -> Result<TSeries<UeaElement>> {
    let one = TSeries::unit_like(&UeaElement::one(), ctx.order);
    let (l, r) = match leg {
        0 => (
            crate::tseries::series_tensor(ctx.u_inv(), &one)?,
            crate::tseries::series_tensor(ctx.u(), &one)?,
        ),
        1 => (
            crate::tseries::series_tensor(&one, ctx.u_inv())?,
            crate::tseries::series_tensor(&one, ctx.u())?,
        ),
        _ => return Err(Error::LegOutOfRange { leg, rank: 2 }),
    };
    let s0 = series_apply_leg(x, leg, LegMap::Antipode0)?.into_tensor()?;
    crate::tseries::series_mul_legs(&series_mul(&series_mul(&l, &s0)?, &r)?)
}

/// `𝓕Δ₀(x)𝓕⁻¹` or `u⁻¹S₀(x)u` for an element of `U(𝓛)`, using the
/// series inverses of `𝓕` and `u`.
pub fn twisted_direct(map: HopfMap, x: &UeaElement, ctx: &TwistContext) -> Result<SeriesValue> {
    let xs = TSeries::constant(x.clone(), ctx.order);
    Ok(match map {
        HopfMap::Delta => SeriesValue::Tensor(deformed_coproduct(&xs, ctx)?),
        HopfMap::Antipode => SeriesValue::Uea(deformed_antipode(&xs, ctx)?),
    })
}

/// One of the six commutation identities between a generator and `F_a` or `u_a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma35 {
    LeftLeg,
    LeftLegOdd,
    RightLeg,
    RightLegOdd,
    U,
    UOdd,
}

impl Lemma35 {
    pub const ALL: [Lemma35; 6] =
        [Lemma35::LeftLeg, Lemma35::LeftLegOdd, Lemma35::RightLeg, Lemma35::RightLegOdd, Lemma35::U, Lemma35::UOdd];

    pub fn label(self) -> &'static str {
        match self {
            Lemma35::LeftLeg => "3.7",
            Lemma35::LeftLegOdd => "3.7'",
            Lemma35::RightLeg => "3.8",
            Lemma35::RightLegOdd => "3.8'",
            Lemma35::U => "3.9",
            Lemma35::UOdd => "3.9'",
        }
    }

    pub fn kind(self) -> Kind {
        match self {
            Lemma35::LeftLeg | Lemma35::RightLeg | Lemma35::U => Kind::L,
            _ => Kind::G,
        }
    }
}

impl FromStr for Lemma35 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('′', "'");
        Lemma35::ALL.into_iter().find(|w| w.label() == norm).ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

/// Both sides of a commutation identity with `F_a` or `u_a`; the left side by
/// direct multiplication, the right side from the stated formula.
pub fn lemma35_lhs_rhs(which: Lemma35, a: &Rational, g: Generator, ctx: &TwistContext) -> Result<(SeriesValue, SeriesValue)> {
    if g.kind() != which.kind() {
        return Err(Error::UnknownIdentity(format!("{} with generator {g}", which.label())));
    }
    let n = ctx.order;
    let m = ctx.m;
    let gen = UeaElement::generator(g);
    let one = UeaElement::one();
    match which {
        Lemma35::LeftLeg | Lemma35::LeftLegOdd => {
            let lhs = series_mul(&TSeries::constant(TensorElement::pure(&[gen, one]), n), &f_series(a, ctx))?;
            let mut rhs = TSeries::zero_like(&TensorElement::zero(2), n);
            let shift = a - g.index() / int(m);
            for s in 0..=n {
                let c = shift_binomial(g, s as u32, m);
                if c.is_zero() {
                    continue;
                }
                let piece = TensorElement::pure(&[UeaElement::generator(g.shifted(-(s as i64) * m)), ctx.y_pow(s)])
                    .scale(&Scalar::monomial(c, s as u32));
                let f = f_series(&(&shift + int(s as i64)), ctx);
                rhs = rhs.add(&series_mul(&f, &TSeries::monomial(piece, s, n))?)?;
            }
            Ok((SeriesValue::Tensor(lhs), SeriesValue::Tensor(rhs)))
        }
        Lemma35::RightLeg | Lemma35::RightLegOdd => {
            let lhs = series_mul(&TSeries::constant(TensorElement::pure(&[one, gen]), n), &f_series(a, ctx))?;
            let mut rhs = TSeries::zero_like(&TensorElement::zero(2), n);
            for s in 0..=n {
                let mut right = UeaElement::zero();
                for p in 0..=2 * s {
                    let c = coeff_for(g, p as u32, s as u32, m);
                    if c.is_zero() {
                        continue;
                    }
                    let shifted = g.shifted((s as i64 - p as i64) * m);
                    right = right.add(&UeaElement::generator(shifted).scale(&Scalar::monomial(c, p as u32)));
                }
                if right.is_zero() {
                    continue;
                }
                let left = ctx.x_rising(a, s).scale_rat(&signed(s));
                let piece = TensorElement::pure(&[left, right]);
                let f = f_series(&(a + int(s as i64)), ctx);
                rhs = rhs.add(&series_mul(&f, &TSeries::monomial(piece, s, n))?)?;
            }
            Ok((SeriesValue::Tensor(lhs), SeriesValue::Tensor(rhs)))
        }
        Lemma35::U | Lemma35::UOdd => {
            let lhs = series_mul(&TSeries::constant(gen, n), &u_series(a, ctx))?;
            let shifted = a + g.index() / int(m);
            let rhs = series_mul(&u_series(&shifted, ctx), &u_commutator_sum(g, a, ctx))?;
            Ok((SeriesValue::Uea(lhs), SeriesValue::Uea(rhs)))
        }
    }
}
