//! Exact coefficients: big rationals, polynomials in the deformation
//! parameter α, and the binomial-type scalar functions used by the twist
//! formulas.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(r: u32) -> Rational {
    let mut acc = BigInt::one();
    for j in 2..=r {
        acc *= j;
    }
    Rational::from_integer(acc)
}

/// `a(a-1)...(a-r+1)/r!`
pub fn rat_binomial(a: &Rational, r: u32) -> Rational {
    m_binomial(a, r, &Rational::one())
}

/// Binomial with arithmetic step `k`: `a(a-k)(a-2k)...(a-(r-1)k)/r!`.
pub fn m_binomial(a: &Rational, r: u32, k: &Rational) -> Rational {
    let mut acc = Rational::one();
    let mut cur = a.clone();
    for _ in 0..r {
        if cur.is_zero() {
            return Rational::zero();
        }
        acc *= &cur;
        cur -= k;
    }
    acc / factorial(r)
}

/// Polynomial in α with rational coefficients, stored sparsely as
/// `(exponent, coefficient)` pairs sorted by exponent with no zero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Scalar {
    terms: Vec<(u32, Rational)>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Scalar::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Scalar::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::constant(int(n))
    }

    /// `c·α^pow`
    pub fn monomial(c: Rational, pow: u32) -> Self {
        if c.is_zero() {
            Scalar::zero()
        } else {
            Scalar { terms: vec![(pow, c)] }
        }
    }

    pub fn alpha() -> Self {
        Scalar::monomial(Rational::one(), 1)
    }

    pub fn alpha_pow(pow: u32) -> Self {
        Scalar::monomial(Rational::one(), pow)
    }

    /// Builds from arbitrary `(pow, coeff)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(terms: I) -> Self {
        let mut v: Vec<(u32, Rational)> = terms.into_iter().collect();
        v.sort_by_key(|(p, _)| *p);
        let mut out: Vec<(u32, Rational)> = Vec::with_capacity(v.len());
        for (p, c) in v {
            match out.last_mut() {
                Some((lp, lc)) if *lp == p => *lc += c,
                _ => out.push((p, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Scalar { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn terms(&self) -> &[(u32, Rational)] {
        &self.terms
    }

    pub fn coeff(&self, pow: u32) -> Rational {
        self.terms
            .iter()
            .find(|(p, _)| *p == pow)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|(p, _)| *p)
    }

    /// The rational value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(p, x)| (*p, x * c)).collect(),
        }
    }

    pub fn mul_alpha_pow(&self, pow: u32) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(p, x)| (p + pow, x.clone())).collect(),
        }
    }

    /// Horner evaluation at `α := value`.
    pub fn eval(&self, value: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut prev = match self.degree() {
            Some(d) => d,
            None => return acc,
        };
        for (p, c) in self.terms.iter().rev() {
            for _ in *p..prev {
                acc *= value;
            }
            acc += c;
            prev = *p;
        }
        for _ in 0..prev {
            acc *= value;
        }
        acc
    }

    /// Sign of the leading-term coefficient; used by the renderers.
    pub fn leading_is_negative(&self) -> bool {
        self.terms.first().map(|(_, c)| c.is_negative()).unwrap_or(false)
    }

    fn merge(&self, other: &Scalar, negate_other: bool) -> Scalar {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Scalar { terms: out }
    }
}

impl fmt::Display for Scalar {
    /// Renders as e.g. `1 + 2α - (1/2)α^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (p, c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let power = match p {
                0 => String::new(),
                1 => "α".to_string(),
                _ => format!("α^{p}"),
            };
            if abs.is_one() && *p > 0 {
                write!(f, "{power}")?;
            } else if abs.is_integer() {
                write!(f, "{}{power}", abs.numer())?;
            } else if *p == 0 {
                write!(f, "{}/{}", abs.numer(), abs.denom())?;
            } else {
                write!(f, "({}/{}){power}", abs.numer(), abs.denom())?;
            }
        }
        Ok(())
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.merge(rhs, false)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.merge(&rhs, false)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if rhs.terms.len() == 1 {
            let (p, c) = &rhs.terms[0];
            match self.terms.binary_search_by_key(p, |(q, _)| *q) {
                Ok(pos) => {
                    self.terms[pos].1 += c;
                    if self.terms[pos].1.is_zero() {
                        self.terms.remove(pos);
                    }
                }
                Err(pos) => self.terms.insert(pos, (*p, c.clone())),
            }
        } else {
            *self = self.merge(rhs, false);
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.merge(rhs, true)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.merge(&rhs, true)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(p, c)| (*p, -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if rhs.terms.len() == 1 {
            let (p, c) = &rhs.terms[0];
            return Scalar {
                terms: self.terms.iter().map(|(q, x)| (q + p, x * c)).collect(),
            };
        }
        if self.terms.len() == 1 {
            return rhs * self;
        }
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (p, a) in &self.terms {
            for (q, b) in &rhs.terms {
                out.push((p + q, a * b));
            }
        }
        Scalar::from_terms(out)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl From<Rational> for Scalar {
    fn from(c: Rational) -> Self {
        Scalar::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(rat_binomial(&int(5), 2), int(10));
        assert_eq!(rat_binomial(&rat(7, 3), 0), int(1));
        assert_eq!(rat_binomial(&rat(1, 2), 2), rat(-1, 8));
        assert_eq!(m_binomial(&int(6), 2, &int(2)), int(12));
    }

    #[test]
    fn m_binomial_specializations() {
        for num in -12..=12 {
            for den in [1, 2, 3] {
                let a = rat(num, den);
                for r in 0..=20u32 {
                    assert_eq!(m_binomial(&a, r, &int(1)), rat_binomial(&a, r));
                    // step -1 is the rising product a(a+1)...(a+r-1)/r!
                    let shifted = &a + int(r as i64) - int(1);
                    assert_eq!(m_binomial(&a, r, &int(-1)), rat_binomial(&shifted, r));
                }
            }
        }
    }

    #[test]
    fn step_minus_one_is_not_binomial_of_one_minus_a_minus_r() {
        // a = 1, r = 1: [1; 1]_{-1} = 1 while binom(1 - 1 - 1, 1) = -1
        assert_eq!(m_binomial(&int(1), 1, &int(-1)), int(1));
        assert_eq!(rat_binomial(&int(-1), 1), int(-1));
    }

    #[test]
    fn pascal_recurrence() {
        for num in -9..=9 {
            let a = rat(num, 2);
            for r in 1..=10 {
                let lhs = rat_binomial(&a, r);
                let rhs = rat_binomial(&(&a - int(1)), r) + rat_binomial(&(&a - int(1)), r - 1);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn arithmetic_examples() {
        let a = Scalar::alpha();
        assert_eq!(&a * &a, Scalar::alpha_pow(2));
        let x = Scalar::from_terms([(0, int(3)), (2, rat(1, 2))]);
        assert_eq!(&x + &Scalar::zero(), x);
        let p = &Scalar::one() + &a;
        let q = &Scalar::one() - &a;
        assert_eq!(&p * &q, Scalar::from_terms([(0, int(1)), (2, int(-1))]));
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(Scalar::alpha_pow(2).eval(&int(3)), int(9));
        assert_eq!(Scalar::zero().eval(&rat(5, 7)), int(0));
        let s = Scalar::from_terms([(1, int(2)), (0, int(1))]);
        assert_eq!(s.eval(&rat(1, 2)), int(2));
        let sparse = Scalar::from_terms([(3, int(1)), (1, int(-1))]);
        assert_eq!(sparse.eval(&int(2)), int(6));
    }

    #[test]
    fn display() {
        let s = Scalar::from_terms([(0, int(1)), (1, int(-2)), (3, rat(1, 2))]);
        assert_eq!(s.to_string(), "1 - 2α + (1/2)α^3");
        assert_eq!(Scalar::from_int(-1).to_string(), "-1");
    }

    fn scalar_strategy() -> impl Strategy<Value = Scalar> {
        prop::collection::vec((0u32..=8, -1000i64..=1000, 1i64..=1000), 0..6)
            .prop_map(|v| Scalar::from_terms(v.into_iter().map(|(p, n, d)| (p, rat(n, d)))))
    }

    proptest! {
        #[test]
        fn ring_axioms(x in scalar_strategy(), y in scalar_strategy(), z in scalar_strategy()) {
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &Scalar::one(), x.clone());
            prop_assert!((&x + &(-&x)).is_zero());
            let mut acc = x.clone();
            acc += &y;
            prop_assert_eq!(acc, &x + &y);
        }

        #[test]
        fn eval_is_a_ring_map(x in scalar_strategy(), y in scalar_strategy(), n in -5i64..=5, d in 1i64..=5) {
            let v = rat(n, d);
            prop_assert_eq!((&x * &y).eval(&v), x.eval(&v) * y.eval(&v));
            prop_assert_eq!((&x + &y).eval(&v), x.eval(&v) + y.eval(&v));
        }
    }
}
