//! Power series in the even central parameter `t`, truncated at order `N`,
//! with coefficients in `U(𝓛)` or one of its tensor powers.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pbw::{uea_mul, UeaElement};
use crate::scalars::{rat_binomial, Rational, Scalar};
use crate::tensor::{apply_leg, tensor_mul, LegMap, LegOutput, TensorElement};

/// Coefficient algebra of a [`TSeries`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
    fn try_mul(&self, other: &Self) -> Result<Self>;
    /// Shape check used before arithmetic (tensor rank).
    fn same_shape(&self, other: &Self) -> bool;
    fn map_scalars(&self, f: &dyn Fn(&Scalar) -> Scalar) -> Self;
}

impl Coefficient for UeaElement {
    fn zero_like(&self) -> Self {
        UeaElement::zero()
    }
    fn one_like(&self) -> Self {
        UeaElement::one()
    }
    fn is_zero(&self) -> bool {
        UeaElement::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        UeaElement::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        UeaElement::sub(self, other)
    }
    fn scale(&self, c: &Scalar) -> Self {
        UeaElement::scale(self, c)
    }
    fn try_mul(&self, other: &Self) -> Result<Self> {
        Ok(uea_mul(self, other))
    }
    fn same_shape(&self, _other: &Self) -> bool {
        true
    }
    fn map_scalars(&self, f: &dyn Fn(&Scalar) -> Scalar) -> Self {
        UeaElement::map_scalars(self, f)
    }
}

impl Coefficient for TensorElement {
    fn zero_like(&self) -> Self {
        TensorElement::zero(self.rank())
    }
    fn one_like(&self) -> Self {
        TensorElement::unit(self.rank())
    }
    fn is_zero(&self) -> bool {
        TensorElement::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        TensorElement::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        TensorElement::sub(self, other)
    }
    fn scale(&self, c: &Scalar) -> Self {
        TensorElement::scale(self, c)
    }
    fn try_mul(&self, other: &Self) -> Result<Self> {
        tensor_mul(self, other)
    }
    fn same_shape(&self, other: &Self) -> bool {
        self.rank() == other.rank()
    }
    fn map_scalars(&self, f: &dyn Fn(&Scalar) -> Scalar) -> Self {
        TensorElement::map_scalars(self, f)
    }
}

/// `Σ_{r=0}^{N} c_r t^r` with exactly `N+1` stored coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Coefficient> TSeries<T> {
    /// Builds from coefficients `c_0..c_N`; panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the degree-0 coefficient");
        TSeries { coeffs }
    }

    /// The constant series `x + 0·t + ...`.
    pub fn constant(x: T, order: usize) -> Self {
        let zero = x.zero_like();
        let mut coeffs = vec![zero; order + 1];
        coeffs[0] = x;
        TSeries { coeffs }
    }

    pub fn zero_like(like: &T, order: usize) -> Self {
        TSeries { coeffs: vec![like.zero_like(); order + 1] }
    }

    pub fn unit_like(like: &T, order: usize) -> Self {
        TSeries::constant(like.one_like(), order)
    }

    /// `x·t^degree`, or zero when `degree > order`.
    pub fn monomial(x: T, degree: usize, order: usize) -> Self {
        let mut s = TSeries::zero_like(&x, order);
        if degree <= order {
            s.coeffs[degree] = x;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, degree: usize) -> &T {
        &self.coeffs[degree]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs[0] == self.coeffs[0].one_like() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        if !self.coeffs[0].same_shape(&other.coeffs[0]) {
            return Err(Error::ShapeMismatch("coefficient algebras differ".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect() })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        TSeries { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    /// Multiplies by `t^d`, dropping what falls past the window.
    pub fn shift(&self, d: usize) -> Self {
        let n = self.order();
        let zero = self.coeffs[0].zero_like();
        let coeffs = (0..=n).map(|r| if r < d { zero.clone() } else { self.coeffs[r - d].clone() }).collect();
        TSeries { coeffs }
    }

    /// Re-truncates (or zero-extends) to another order.
    pub fn with_order(&self, order: usize) -> Self {
        let zero = self.coeffs[0].zero_like();
        TSeries { coeffs: (0..=order).map(|r| self.coeffs.get(r).cloned().unwrap_or_else(|| zero.clone())).collect() }
    }

    pub fn map<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> TSeries<U> {
        TSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn try_map<U: Coefficient>(&self, f: impl Fn(&T) -> Result<U>) -> Result<TSeries<U>> {
        Ok(TSeries { coeffs: self.coeffs.iter().map(f).collect::<Result<Vec<U>>>()? })
    }

    pub fn map_scalars(&self, f: &dyn Fn(&Scalar) -> Scalar) -> Self {
        TSeries { coeffs: self.coeffs.iter().map(|c| c.map_scalars(f)).collect() }
    }

    /// Truncated Cauchy product; `t` is even and central.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        series_mul(self, other)
    }

    /// Sum of a list of series of equal order.
    pub fn sum(items: &[Self], like: &T, order: usize) -> Result<Self> {
        let mut acc = TSeries::zero_like(like, order);
        for s in items {
            acc = acc.add(s)?;
        }
        Ok(acc)
    }
}

/// Truncated Cauchy product; degrees are computed in parallel.
pub fn series_mul<T: Coefficient>(x: &TSeries<T>, y: &TSeries<T>) -> Result<TSeries<T>> {
    x.check(y)?;
    let n = x.order();
    let coeffs = (0..=n)
        .into_par_iter()
        .map(|r| {
            let mut acc = x.coeffs[0].zero_like();
            for p in 0..=r {
                let (a, b) = (&x.coeffs[p], &y.coeffs[r - p]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.add(&a.try_mul(b)?);
            }
            Ok(acc)
        })
        .collect::<Result<Vec<T>>>()?;
    Ok(TSeries { coeffs })
}

/// Inverse of a series whose degree-0 coefficient is the unit:
/// `q_0 = 1`, `q_n = -Σ_{r=1..n} x_r q_{n-r}`.
pub fn series_invert<T: Coefficient>(x: &TSeries<T>) -> Result<TSeries<T>> {
    let one = x.coeffs[0].one_like();
    if x.coeffs[0] != one {
        return Err(Error::NonUnitLeadingTerm);
    }
    let n = x.order();
    let mut q: Vec<T> = vec![one];
    for d in 1..=n {
        let mut acc = x.coeffs[0].zero_like();
        for r in 1..=d {
            if x.coeffs[r].is_zero() || q[d - r].is_zero() {
                continue;
            }
            acc = acc.add(&x.coeffs[r].try_mul(&q[d - r])?);
        }
        q.push(acc.scale(&Scalar::from_int(-1)));
    }
    Ok(TSeries { coeffs: q })
}

/// The formal binomial series `(1 - y·t)^β = Σ_p binom(β, p) (-1)^p y^p t^p`.
pub fn binomial_power(y: &UeaElement, beta: &Rational, order: usize) -> TSeries<UeaElement> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut power = UeaElement::one();
    for p in 0..=order {
        let mut c = rat_binomial(beta, p as u32);
        if p % 2 == 1 {
            c = -c;
        }
        coeffs.push(power.scale_rat(&c));
        if p < order {
            power = uea_mul(&power, y);
        }
    }
    TSeries { coeffs }
}

/// A `U`-valued or tensor-valued series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesValue {
    Uea(TSeries<UeaElement>),
    Tensor(TSeries<TensorElement>),
}

impl SeriesValue {
    pub fn into_tensor(self) -> Result<TSeries<TensorElement>> {
        match self {
            SeriesValue::Tensor(t) => Ok(t),
            SeriesValue::Uea(_) => Err(Error::ShapeMismatch("expected a tensor series".into())),
        }
    }

    pub fn into_uea(self) -> Result<TSeries<UeaElement>> {
        match self {
            SeriesValue::Uea(u) => Ok(u),
            SeriesValue::Tensor(_) => Err(Error::ShapeMismatch("expected a U-valued series".into())),
        }
    }
}

/// [`apply_leg`] on every `t`-coefficient.
pub fn series_apply_leg(x: &TSeries<TensorElement>, leg: usize, f: LegMap) -> Result<SeriesValue> {
    let outs = x.coeffs.par_iter().map(|c| apply_leg(c, leg, f)).collect::<Result<Vec<LegOutput>>>()?;
    if outs.iter().all(|o| matches!(o, LegOutput::Uea(_))) {
        Ok(SeriesValue::Uea(TSeries {
            coeffs: outs.into_iter().map(|o| o.into_uea()).collect::<Result<_>>()?,
        }))
    } else {
        Ok(SeriesValue::Tensor(TSeries {
            coeffs: outs.into_iter().map(|o| o.into_tensor()).collect::<Result<_>>()?,
        }))
    }
}

/// `μ` applied degree-wise.
pub fn series_mul_legs(x: &TSeries<TensorElement>) -> Result<TSeries<UeaElement>> {
    x.try_map(crate::tensor::mul_legs)
}

/// Degree-wise pure tensor of two `U`-valued series: `Σ_d Σ_{p+q=d} a_p ⊗ b_q t^d`.
pub fn series_tensor(a: &TSeries<UeaElement>, b: &TSeries<UeaElement>) -> Result<TSeries<TensorElement>> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch(a.order(), b.order()));
    }
    let n = a.order();
    let coeffs = (0..=n)
        .map(|d| {
            let mut acc = TensorElement::zero(2);
            for p in 0..=d {
                if a.coeffs[p].is_zero() || b.coeffs[d - p].is_zero() {
                    continue;
                }
                acc = acc.add(&TensorElement::pure(&[a.coeffs[p].clone(), b.coeffs[d - p].clone()]));
            }
            acc
        })
        .collect();
    Ok(TSeries { coeffs })
}

impl<T: Coefficient> fmt::Display for TSeries<T> {
    /// `c_0 + (c_1)t + (c_2)t^2 + ...`, skipping zero coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = c.to_string();
            let tpow = match d {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{d}"),
            };
            if d == 0 {
                write!(f, "{body}")?;
            } else {
                let negated = c.scale(&Scalar::from_int(-1)).to_string();
                let (sign, shown) = if body.starts_with('−') && !negated.starts_with('−') {
                    ("−", negated)
                } else {
                    ("+", body)
                };
                if first {
                    if sign == "−" {
                        write!(f, "−({shown}){tpow}")?;
                    } else {
                        write!(f, "({shown}){tpow}")?;
                    }
                } else {
                    write!(f, " {sign} ({shown}){tpow}")?;
                }
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
