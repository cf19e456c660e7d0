//! The centerless super-Virasoro Lie superalgebra.
//!
//! Generators are `L_i` (even, `i ∈ ℤ`) and `G_k` (odd, `k ∈ ½ℤ`). Indices
//! are stored doubled so that every index is an integer. The relations are
//!
//! ```text
//! [L_i, L_j] = (j - i) L_{i+j}
//! [L_i, G_k] = (k - i/2) G_{i+k}
//! [G_k, G_l] = 2 L_{k+l}
//! ```
//!
//! An `L` with non-integral index is treated as zero. In particular
//! `[G_k, G_l] = 0` when `k + l ∉ ℤ`; the super Jacobi identity only holds
//! for triples whose odd generators lie in a common sector (all integral or
//! all strictly half-integral), see [`Generator::sector`].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalars::{factorial, int, rat, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    L,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `(-1)^{[x][y]}`
    pub fn koszul(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

/// Ramond (integral `k`) or Neveu–Schwarz (half-integral `k`) sector of an
/// odd generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sector {
    Ramond,
    NeveuSchwarz,
}

/// `L_i` or `G_k`, ordered by doubled index first and then even before odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    index2: i32,
    kind: Kind,
}

impl Generator {
    pub fn l(i: i64) -> Generator {
        Generator { index2: (2 * i) as i32, kind: Kind::L }
    }

    /// `G_k` from the doubled index `2k`.
    pub fn g2(k2: i64) -> Generator {
        Generator { index2: k2 as i32, kind: Kind::G }
    }

    /// Checked constructor from the doubled index; `L` needs an even value.
    pub fn from_index2(kind: Kind, index2: i64) -> Option<Generator> {
        match kind {
            Kind::L if index2 % 2 != 0 => None,
            _ => Some(Generator { index2: index2 as i32, kind }),
        }
    }

    /// `L_x` for a rational index, or `None` when `x ∉ ℤ`.
    pub fn l_at(index: &Rational) -> Option<Generator> {
        index.is_integer().then(|| Generator::l(to_i64(index.numer())))
    }

    /// `G_x` for a rational index, or `None` when `x ∉ ½ℤ`.
    pub fn g_at(index: &Rational) -> Option<Generator> {
        let doubled = index * int(2);
        doubled.is_integer().then(|| Generator::g2(to_i64(doubled.numer())))
    }

    pub fn kind(self) -> Kind {
        self.kind
    }

    pub fn index2(self) -> i64 {
        self.index2 as i64
    }

    pub fn index(self) -> Rational {
        rat(self.index2 as i64, 2)
    }

    pub fn parity(self) -> Parity {
        match self.kind {
            Kind::L => Parity::Even,
            Kind::G => Parity::Odd,
        }
    }

    pub fn is_odd(self) -> bool {
        self.kind == Kind::G
    }

    pub fn sector(self) -> Option<Sector> {
        match self.kind {
            Kind::L => None,
            Kind::G if self.index2 % 2 == 0 => Some(Sector::Ramond),
            Kind::G => Some(Sector::NeveuSchwarz),
        }
    }

    /// Same generator kind with the index shifted by the integer `delta`.
    pub fn shifted(self, delta: i64) -> Generator {
        Generator { index2: self.index2 + (2 * delta) as i32, kind: self.kind }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            Kind::L => "L",
            Kind::G => "G",
        };
        let idx = self.index2;
        if idx % 2 == 0 {
            let i = idx / 2;
            if (0..10).contains(&i) {
                write!(f, "{name}_{i}")
            } else {
                write!(f, "{name}_{{{i}}}")
            }
        } else {
            write!(f, "{name}_{{{idx}/2}}")
        }
    }
}

pub(crate) fn to_i64(n: &num_bigint::BigInt) -> i64 {
    i64::try_from(n).expect("index out of i64 range")
}

/// `[a, b]` on generators as `coefficient · generator`, or `None` for zero.
pub fn bracket_generators(a: Generator, b: Generator) -> Option<(Rational, Generator)> {
    let (i2, j2) = (a.index2 as i64, b.index2 as i64);
    let (coeff, out) = match (a.kind, b.kind) {
        (Kind::L, Kind::L) => (rat(j2 - i2, 2), Generator::from_index2(Kind::L, i2 + j2)?),
        (Kind::L, Kind::G) => (rat(2 * j2 - i2, 4), Generator::g2(i2 + j2)),
        (Kind::G, Kind::L) => (rat(j2 - 2 * i2, 4), Generator::g2(i2 + j2)),
        (Kind::G, Kind::G) => (int(2), Generator::from_index2(Kind::L, i2 + j2)?),
    };
    (!coeff.is_zero()).then_some((coeff, out))
}

/// Finite linear combination of generators with α-polynomial coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LieElement {
    terms: BTreeMap<Generator, Scalar>,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement::default()
    }

    pub fn generator(g: Generator) -> Self {
        LieElement::term(Scalar::one(), g)
    }

    pub fn term(c: Scalar, g: Generator) -> Self {
        let mut e = LieElement::zero();
        e.add_term(g, &c);
        e
    }

    /// `L_x`, or zero when `x` is not an integer.
    pub fn l_or_zero(index: &Rational) -> Self {
        Generator::l_at(index).map(LieElement::generator).unwrap_or_default()
    }

    pub fn add_term(&mut self, g: Generator, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(g).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: Generator) -> Scalar {
        self.terms.get(&g).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common parity of all generators; `None` for mixed elements.
    /// Zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|g| g.parity());
        let first = match it.next() {
            Some(p) => p,
            None => return Some(Parity::Even),
        };
        it.all(|p| p == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.parity().is_some()
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(*g, c);
        }
        out
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> LieElement {
        let mut out = LieElement::zero();
        for (g, x) in &self.terms {
            out.add_term(*g, &(x * c));
        }
        out
    }

    /// Splits into even and odd parts.
    pub fn split_parity(&self) -> (LieElement, LieElement) {
        let mut even = LieElement::zero();
        let mut odd = LieElement::zero();
        for (g, c) in &self.terms {
            if g.is_odd() {
                odd.add_term(*g, c);
            } else {
                even.add_term(*g, c);
            }
        }
        (even, odd)
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| if c.is_one() { g.to_string() } else { format!("({c}){g}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn bracket_unchecked(x: &LieElement, y: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            if let Some((c, g)) = bracket_generators(*a, *b) {
                out.add_term(g, &(ca * cb).scale(&c));
            }
        }
    }
    out
}

/// The super bracket of two homogeneous elements.
pub fn bracket(x: &LieElement, y: &LieElement) -> Result<LieElement> {
    if !x.is_homogeneous() || !y.is_homogeneous() {
        return Err(Error::MixedParity);
    }
    Ok(bracket_unchecked(x, y))
}

/// Bilinear extension of [`bracket`] to inhomogeneous inputs.
pub fn bracket_split(x: &LieElement, y: &LieElement) -> LieElement {
    bracket_unchecked(x, y)
}

/// `(ad y)^r (x)` by iterated bracketing.
pub fn ad_power(y: &LieElement, x: &LieElement, r: u32) -> Result<LieElement> {
    let mut cur = x.clone();
    for _ in 0..r {
        cur = bracket(y, &cur)?;
    }
    Ok(cur)
}

/// `exp(ad z)(x) = Σ_p (ad z)^p(x)/p!`, required to terminate within
/// `nilpotency_bound` steps.
pub fn exp_ad(z: &LieElement, x: &LieElement, nilpotency_bound: usize) -> Result<LieElement> {
    let mut total = LieElement::zero();
    let mut term = x.clone();
    let mut p = 0u32;
    while !term.is_zero() {
        if p as usize > nilpotency_bound {
            return Err(Error::NotNilpotent(nilpotency_bound));
        }
        total = total.add(&term.scale(&Scalar::constant(Rational::one() / factorial(p))));
        term = bracket(z, &term)?;
        p += 1;
    }
    Ok(total)
}

/// The pair `X = (1/m)L_0 + αL_{-m}`, `Y = exp(α ad L_{-m})(L_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XYPair {
    pub x: LieElement,
    pub y: LieElement,
    pub m: i64,
}

pub fn build_xy(m: i64) -> Result<XYPair> {
    if m == 0 {
        return Err(Error::InvalidM);
    }
    let x = LieElement::term(Scalar::constant(rat(1, m)), Generator::l(0))
        .add(&LieElement::term(Scalar::alpha(), Generator::l(-m)));
    let shift = LieElement::term(Scalar::alpha(), Generator::l(-m));
    let y = exp_ad(&shift, &LieElement::generator(Generator::l(m)), 16)?;
    if bracket(&x, &y)? != y {
        return Err(Error::InvariantViolated(format!("[X, Y] != Y for m = {m}")));
    }
    Ok(XYPair { x, y, m })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(max2: i64) -> Vec<Generator> {
        let mut v = Vec::new();
        for n in -max2..=max2 {
            if n % 2 == 0 {
                v.push(Generator::l(n / 2));
            }
            v.push(Generator::g2(n));
        }
        v
    }

    fn el(g: Generator) -> LieElement {
        LieElement::generator(g)
    }

    fn same_sector(gs: &[Generator]) -> bool {
        let mut sectors = gs.iter().filter_map(|g| g.sector());
        match sectors.next() {
            None => true,
            Some(s) => sectors.all(|t| t == s),
        }
    }

    #[test]
    fn relation_examples() {
        let b = bracket(&el(Generator::l(1)), &el(Generator::l(2))).unwrap();
        assert_eq!(b, el(Generator::l(3)));
        let b = bracket(&el(Generator::g2(1)), &el(Generator::g2(1))).unwrap();
        assert_eq!(b, LieElement::term(Scalar::from_int(2), Generator::l(1)));
        for i in -3..=3 {
            assert!(bracket(&el(Generator::l(i)), &el(Generator::l(i))).unwrap().is_zero());
        }
        // [L_2, G_{1/2}] = (1/2 - 1) G_{5/2}
        let b = bracket(&el(Generator::l(2)), &el(Generator::g2(1))).unwrap();
        assert_eq!(b, LieElement::term(Scalar::constant(rat(-1, 2)), Generator::g2(5)));
    }

    #[test]
    fn mixed_parity_rejected() {
        let mixed = el(Generator::l(0)).add(&el(Generator::g2(1)));
        assert_eq!(bracket(&mixed, &el(Generator::l(1))), Err(Error::MixedParity));
        let (even, odd) = mixed.split_parity();
        let split = bracket(&even, &el(Generator::l(1)))
            .unwrap()
            .add(&bracket(&odd, &el(Generator::l(1))).unwrap());
        assert_eq!(bracket_split(&mixed, &el(Generator::l(1))), split);
    }

    #[test]
    fn super_skew_symmetry() {
        let gs = gens(12);
        for &a in &gs {
            for &b in &gs {
                let ab = bracket(&el(a), &el(b)).unwrap();
                let ba = bracket(&el(b), &el(a)).unwrap();
                let sign = -a.parity().koszul(b.parity());
                assert_eq!(ab, ba.scale(&Scalar::from_int(sign)), "{a} {b}");
            }
        }
    }

    fn jacobi_defect(x: Generator, y: Generator, z: Generator) -> LieElement {
        let (px, py, pz) = (x.parity(), y.parity(), z.parity());
        let t1 = bracket(&el(x), &bracket(&el(y), &el(z)).unwrap())
            .unwrap()
            .scale(&Scalar::from_int(px.koszul(pz)));
        let t2 = bracket(&el(y), &bracket(&el(z), &el(x)).unwrap())
            .unwrap()
            .scale(&Scalar::from_int(py.koszul(px)));
        let t3 = bracket(&el(z), &bracket(&el(x), &el(y)).unwrap())
            .unwrap()
            .scale(&Scalar::from_int(pz.koszul(py)));
        t1.add(&t2).add(&t3)
    }

    #[test]
    fn super_jacobi_within_a_sector() {
        let gs = gens(8);
        for &a in &gs {
            for &b in &gs {
                for &c in &gs {
                    if same_sector(&[a, b, c]) {
                        assert!(jacobi_defect(a, b, c).is_zero(), "{a} {b} {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn mixed_sector_triple_breaks_jacobi() {
        // only -[G_{1/2}, [G_0, G_0]] = G_{1/2} survives
        let d = jacobi_defect(Generator::g2(0), Generator::g2(0), Generator::g2(1));
        assert_eq!(d, LieElement::generator(Generator::g2(1)));
    }

    fn y_explicit(m: i64) -> LieElement {
        el(Generator::l(m))
            .add(&LieElement::term(Scalar::alpha().scale(&int(2 * m)), Generator::l(0)))
            .add(&LieElement::term(Scalar::alpha_pow(2).scale(&int(m * m)), Generator::l(-m)))
    }

    #[test]
    fn ad_power_examples() {
        let xy = build_xy(1).unwrap();
        let m = 1;
        for i in -3..=3i64 {
            let got = ad_power(&xy.y, &el(Generator::l(i)), 1).unwrap();
            let want = LieElement::term(Scalar::from_int(i - m), Generator::l(i + m))
                .add(&LieElement::term(Scalar::alpha().scale(&int(2 * m * i)), Generator::l(i)))
                .add(&LieElement::term(
                    Scalar::alpha_pow(2).scale(&int(m * m * (i + m))),
                    Generator::l(i - m),
                ));
            assert_eq!(got, want);
            assert_eq!(ad_power(&xy.y, &el(Generator::l(i)), 0).unwrap(), el(Generator::l(i)));
        }
        for k2 in -3..=3i64 {
            let k = rat(k2, 2);
            let got = ad_power(&xy.y, &el(Generator::g2(k2)), 1).unwrap();
            let mm = int(m);
            let want = LieElement::term(Scalar::constant(&k - &mm / int(2)), Generator::g2(k2 + 2 * m))
                .add(&LieElement::term(Scalar::alpha().scale(&(int(2 * m) * &k)), Generator::g2(k2)))
                .add(&LieElement::term(
                    Scalar::alpha_pow(2).scale(&(int(m * m) * (&k + &mm / int(2)))),
                    Generator::g2(k2 - 2 * m),
                ));
            assert_eq!(got, want);
        }
    }

    #[test]
    fn exp_ad_examples() {
        for m in [1, 2, 3, -1, -2] {
            let z = LieElement::term(Scalar::alpha(), Generator::l(-m));
            assert_eq!(exp_ad(&z, &el(Generator::l(m)), 10).unwrap(), y_explicit(m));
        }
        let z = LieElement::term(Scalar::alpha(), Generator::l(-1));
        assert!(exp_ad(&z, &LieElement::zero(), 1).unwrap().is_zero());
        let want = el(Generator::l(0)).add(&LieElement::term(Scalar::alpha(), Generator::l(-1)));
        assert_eq!(exp_ad(&z, &el(Generator::l(0)), 10).unwrap(), want);
        // (ad L_{-1}) never terminates on L_5 within two steps
        assert_eq!(exp_ad(&z, &el(Generator::l(5)), 2), Err(Error::NotNilpotent(2)));
    }

    #[test]
    fn xy_pairs() {
        for m in [1, -1, 2, -2, 3] {
            let xy = build_xy(m).unwrap();
            assert_eq!(bracket(&xy.x, &xy.y).unwrap(), xy.y);
            assert_eq!(xy.y, y_explicit(m));
        }
        let xy2 = build_xy(2).unwrap();
        let x2 = LieElement::term(Scalar::constant(rat(1, 2)), Generator::l(0))
            .add(&LieElement::term(Scalar::alpha(), Generator::l(-2)));
        assert_eq!(xy2.x, x2);
        assert_eq!(build_xy(0), Err(Error::InvalidM));
    }

    #[test]
    fn guarded_constructors() {
        assert!(LieElement::l_or_zero(&rat(1, 2)).is_zero());
        assert_eq!(LieElement::l_or_zero(&int(3)), el(Generator::l(3)));
        assert_eq!(Generator::g_at(&rat(3, 2)), Some(Generator::g2(3)));
        assert_eq!(Generator::g_at(&rat(1, 3)), None);
        assert!(Generator::l(0) < Generator::g2(0));
        assert!(Generator::g2(-1) < Generator::l(0));
        assert_eq!(Generator::g2(-3).to_string(), "G_{-3/2}");
        assert_eq!(Generator::l(-1).to_string(), "L_{-1}");
    }
}
