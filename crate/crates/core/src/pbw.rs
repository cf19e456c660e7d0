//! The universal enveloping superalgebra `U(𝓛)` in PBW canonical form.
//!
//! A canonical monomial is a product of generators sorted ascending by
//! generator order (doubled index, then even before odd) in which no odd
//! generator repeats. Products are reduced with the super commutation rule
//! `uv = (-1)^{[u][v]} vu + [u, v]` and `G_k G_k = L_{2k}`.
//!
//! Words mixing odd generators from different sectors have no well-defined
//! normal form (the relations are not a Lie superalgebra there); the
//! rewriter still terminates but its output then depends on the strategy.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use num_traits::{One, Zero};

use crate::liealg::{bracket_generators, Generator, LieElement, Parity};
use crate::scalars::{int, Rational, Scalar};
use crate::tensor::TensorElement;

/// Sorted product of generators; odd generators appear at most once.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial(Vec<Generator>);

impl PbwMonomial {
    pub fn unit() -> Self {
        PbwMonomial(Vec::new())
    }

    pub fn generator(g: Generator) -> Self {
        PbwMonomial(vec![g])
    }

    /// Wraps an already canonical factor list.
    pub fn from_canonical(factors: Vec<Generator>) -> Option<Self> {
        is_canonical(&factors).then_some(PbwMonomial(factors))
    }

    pub fn factors(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parity(&self) -> Parity {
        if self.0.iter().filter(|g| g.is_odd()).count() % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    fn can_append(&self, g: Generator) -> bool {
        match self.0.last() {
            None => true,
            Some(&h) => h < g || (h == g && !g.is_odd()),
        }
    }

    fn appended(&self, g: Generator) -> PbwMonomial {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(g);
        PbwMonomial(v)
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == g {
                run += 1;
            }
            if run == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

fn out_of_order(a: Generator, b: Generator) -> bool {
    a > b || (a == b && a.is_odd())
}

fn is_canonical(word: &[Generator]) -> bool {
    word.windows(2).all(|w| !out_of_order(w[0], w[1]))
}

/// Finite α-polynomial combination of canonical monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UeaElement {
    terms: BTreeMap<PbwMonomial, Scalar>,
}

impl UeaElement {
    pub fn zero() -> Self {
        UeaElement::default()
    }

    pub fn one() -> Self {
        UeaElement::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        UeaElement::term(PbwMonomial::unit(), c)
    }

    pub fn term(m: PbwMonomial, c: Scalar) -> Self {
        let mut e = UeaElement::zero();
        e.add_term(m, &c);
        e
    }

    pub fn generator(g: Generator) -> Self {
        UeaElement::term(PbwMonomial::generator(g), Scalar::one())
    }

    pub fn from_lie(x: &LieElement) -> Self {
        let mut e = UeaElement::zero();
        for (g, c) in x.terms() {
            e.add_term(PbwMonomial::generator(*g), c);
        }
        e
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(entry) => {
                *entry += c;
                if entry.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().map(|(m, c)| m.is_unit() && c.is_one()).unwrap_or(false)
    }

    /// Common parity of all terms, `None` if inhomogeneous; zero is even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| m.parity());
        let first = match it.next() {
            Some(p) => p,
            None => return Some(Parity::Even),
        };
        it.all(|p| p == first).then_some(first)
    }

    pub fn add(&self, other: &UeaElement) -> UeaElement {
        let (mut big, small) =
            if self.len() >= other.len() { (self.clone(), other) } else { (other.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c);
        }
        big
    }

    pub fn sub(&self, other: &UeaElement) -> UeaElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> UeaElement {
        UeaElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> UeaElement {
        if c.is_zero() {
            return UeaElement::zero();
        }
        UeaElement { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn scale_rat(&self, c: &Rational) -> UeaElement {
        self.scale(&Scalar::constant(c.clone()))
    }

    pub fn mul(&self, other: &UeaElement) -> UeaElement {
        uea_mul(self, other)
    }

    pub fn pow(&self, n: u32) -> UeaElement {
        let mut acc = UeaElement::one();
        for _ in 0..n {
            acc = uea_mul(&acc, self);
        }
        acc
    }

    /// Applies `f` to every coefficient, dropping those that become zero.
    pub fn map_scalars(&self, f: impl Fn(&Scalar) -> Scalar) -> UeaElement {
        let mut out = UeaElement::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }
}

impl fmt::Display for UeaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, Scalar)> =
            self.terms.iter().map(|(m, c)| (m.to_string(), c.clone())).collect();
        write_linear_combination(f, &terms)
    }
}

/// Shared renderer for `Σ c·basis`, with `basis == "1"` meaning a bare scalar.
pub(crate) fn write_linear_combination(
    f: &mut fmt::Formatter<'_>,
    terms: &[(String, Scalar)],
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (n, (basis, c)) in terms.iter().enumerate() {
        let single = c.terms().len() == 1;
        let negative = single && c.leading_is_negative();
        if n == 0 {
            if negative {
                write!(f, "−")?;
            }
        } else if negative {
            write!(f, " − ")?;
        } else {
            write!(f, " + ")?;
        }
        let shown = if negative { -c } else { c.clone() };
        let unit_basis = basis == "1";
        if shown.is_one() {
            write!(f, "{basis}")?;
        } else if unit_basis {
            if single {
                write!(f, "{shown}")?;
            } else {
                write!(f, "({shown})")?;
            }
        } else if single && !shown.to_string().contains(['/', ' ']) {
            write!(f, "{shown}{basis}")?;
        } else {
            write!(f, "({shown}){basis}")?;
        }
    }
    Ok(())
}

pub(crate) type Expansion = Rc<Vec<(PbwMonomial, Rational)>>;

thread_local! {
    static MONO_GEN: RefCell<HashMap<(PbwMonomial, Generator), Expansion>> =
        RefCell::new(HashMap::new());
    static MONO_MONO: RefCell<HashMap<(PbwMonomial, PbwMonomial), Expansion>> =
        RefCell::new(HashMap::new());
}

fn collect_expansion(acc: HashMap<PbwMonomial, Rational>) -> Expansion {
    let mut v: Vec<(PbwMonomial, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    Rc::new(v)
}

/// Canonical expansion of `m·g` for a canonical monomial `m`.
fn mono_times_gen(m: &PbwMonomial, g: Generator) -> Expansion {
    if m.can_append(g) {
        return Rc::new(vec![(m.appended(g), Rational::one())]);
    }
    let key = (m.clone(), g);
    if let Some(hit) = MONO_GEN.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let (&h, rest) = m.0.split_last().expect("non-empty monomial");
    let rest = PbwMonomial(rest.to_vec());
    let mut acc: HashMap<PbwMonomial, Rational> = HashMap::new();
    if h == g {
        // G_k G_k = L_{2k}
        let square = Generator::l(g.index2());
        for (mono, c) in mono_times_gen(&rest, square).iter() {
            *acc.entry(mono.clone()).or_insert_with(Rational::zero) += c;
        }
    } else {
        let sign = int(h.parity().koszul(g.parity()));
        for (mono, c) in mono_times_gen(&rest, g).iter() {
            let c = c * &sign;
            for (mono2, c2) in mono_times_gen(mono, h).iter() {
                *acc.entry(mono2.clone()).or_insert_with(Rational::zero) += &c * c2;
            }
        }
        if let Some((c, b)) = bracket_generators(h, g) {
            for (mono, c2) in mono_times_gen(&rest, b).iter() {
                *acc.entry(mono.clone()).or_insert_with(Rational::zero) += &c * c2;
            }
        }
    }
    let out = collect_expansion(acc);
    MONO_GEN.with(|c| c.borrow_mut().insert(key, out.clone()));
    out
}

pub(crate) fn mono_times_mono(a: &PbwMonomial, b: &PbwMonomial) -> Expansion {
    if b.is_unit() {
        return Rc::new(vec![(a.clone(), Rational::one())]);
    }
    if a.is_unit() {
        return Rc::new(vec![(b.clone(), Rational::one())]);
    }
    if a.can_append(b.0[0]) {
        let mut v = a.0.clone();
        v.extend_from_slice(&b.0);
        return Rc::new(vec![(PbwMonomial(v), Rational::one())]);
    }
    let key = (a.clone(), b.clone());
    if let Some(hit) = MONO_MONO.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let mut cur: HashMap<PbwMonomial, Rational> = HashMap::new();
    cur.insert(a.clone(), Rational::one());
    for &g in &b.0 {
        let mut next: HashMap<PbwMonomial, Rational> = HashMap::new();
        for (mono, c) in &cur {
            for (mono2, c2) in mono_times_gen(mono, g).iter() {
                *next.entry(mono2.clone()).or_insert_with(Rational::zero) += c * c2;
            }
        }
        next.retain(|_, c| !c.is_zero());
        cur = next;
    }
    let out = collect_expansion(cur);
    MONO_MONO.with(|c| c.borrow_mut().insert(key, out.clone()));
    out
}

/// Associative product in `U(𝓛)`.
pub fn uea_mul(x: &UeaElement, y: &UeaElement) -> UeaElement {
    let mut acc: HashMap<PbwMonomial, Scalar> = HashMap::new();
    for (ma, ca) in &x.terms {
        for (mb, cb) in &y.terms {
            let c = ca * cb;
            for (mono, r) in mono_times_mono(ma, mb).iter() {
                let term = c.scale(r);
                match acc.get_mut(mono) {
                    Some(entry) => *entry += &term,
                    None => {
                        acc.insert(mono.clone(), term);
                    }
                }
            }
        }
    }
    UeaElement { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
}

/// Product of a word of generators, reduced by repeated insertion.
pub fn word_product(word: &[Generator]) -> UeaElement {
    let mut cur: HashMap<PbwMonomial, Rational> = HashMap::new();
    cur.insert(PbwMonomial::unit(), Rational::one());
    for &g in word {
        let mut next: HashMap<PbwMonomial, Rational> = HashMap::new();
        for (mono, c) in &cur {
            for (mono2, c2) in mono_times_gen(mono, g).iter() {
                *next.entry(mono2.clone()).or_insert_with(Rational::zero) += c * c2;
            }
        }
        cur = next;
    }
    let mut out = UeaElement::zero();
    for (m, c) in cur {
        out.add_term(m, &Scalar::constant(c));
    }
    out
}

/// Which adjacent inversion the word rewriter resolves first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// PBW normal form of `coefficient · word`, by leftmost adjacent rewriting.
pub fn normal_order(word: &[Generator], coefficient: Scalar) -> UeaElement {
    normal_order_with(word, coefficient, Strategy::Leftmost)
}

/// Word rewriting with an explicit choice of which inversion to resolve.
pub fn normal_order_with(word: &[Generator], coefficient: Scalar, strategy: Strategy) -> UeaElement {
    let mut pending: BTreeMap<Vec<Generator>, Scalar> = BTreeMap::new();
    let mut out = UeaElement::zero();
    if coefficient.is_zero() {
        return out;
    }
    pending.insert(word.to_vec(), coefficient);
    let push = |pending: &mut BTreeMap<Vec<Generator>, Scalar>, w: Vec<Generator>, c: Scalar| {
        if c.is_zero() {
            return;
        }
        let entry = pending.entry(w.clone()).or_default();
        *entry += &c;
        if entry.is_zero() {
            pending.remove(&w);
        }
    };
    while let Some((w, c)) = pending.pop_first() {
        let mut violations = (0..w.len().saturating_sub(1)).filter(|&j| out_of_order(w[j], w[j + 1]));
        let pos = match strategy {
            Strategy::Leftmost => violations.next(),
            Strategy::Rightmost => violations.next_back(),
        };
        let j = match pos {
            None => {
                out.add_term(PbwMonomial(w), &c);
                continue;
            }
            Some(j) => j,
        };
        let (u, v) = (w[j], w[j + 1]);
        if u == v {
            let mut nw = w[..j].to_vec();
            nw.push(Generator::l(u.index2()));
            nw.extend_from_slice(&w[j + 2..]);
            push(&mut pending, nw, c);
            continue;
        }
        let mut swapped = w.clone();
        swapped.swap(j, j + 1);
        push(&mut pending, swapped, c.scale(&int(u.parity().koszul(v.parity()))));
        if let Some((b, g)) = bracket_generators(u, v) {
            let mut nw = w[..j].to_vec();
            nw.push(g);
            nw.extend_from_slice(&w[j + 2..]);
            push(&mut pending, nw, c.scale(&b));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Rising,
    Falling,
}

/// `e_a^{<r>} = (e+a)(e+a+1)...(e+a+r-1)` or
/// `e_a^{[r]} = (e+a)(e+a-1)...(e+a-r+1)`, multiplied left to right.
pub fn shifted_factorial(e: &UeaElement, a: &Rational, r: u32, direction: Direction) -> UeaElement {
    let step = match direction {
        Direction::Rising => int(1),
        Direction::Falling => int(-1),
    };
    let mut acc = UeaElement::one();
    let mut shift = a.clone();
    for _ in 0..r {
        let factor = e.add(&UeaElement::scalar(Scalar::constant(shift.clone())));
        acc = uea_mul(&acc, &factor);
        shift += &step;
    }
    acc
}

/// The primitive coproduct `Δ₀`, extended multiplicatively with Koszul signs.
pub fn coproduct0(x: &UeaElement) -> TensorElement {
    let mut out = TensorElement::zero(2);
    for (m, c) in &x.terms {
        let f = m.factors();
        let n = f.len();
        assert!(n < 24, "monomial too long for subset expansion");
        for mask in 0u32..(1u32 << n) {
            let mut left = Vec::new();
            let mut right = Vec::new();
            let mut odd_right = 0usize;
            let mut negative = false;
            for (pos, &g) in f.iter().enumerate() {
                if mask & (1 << pos) != 0 {
                    if g.is_odd() && odd_right % 2 == 1 {
                        negative = !negative;
                    }
                    left.push(g);
                } else {
                    if g.is_odd() {
                        odd_right += 1;
                    }
                    right.push(g);
                }
            }
            let coeff = if negative { -c } else { c.clone() };
            out.add_term(vec![PbwMonomial(left), PbwMonomial(right)], &coeff);
        }
    }
    out
}

/// The undeformed antipode: `S₀(g) = -g` on generators, extended as a
/// super anti-homomorphism.
pub fn antipode0(x: &UeaElement) -> UeaElement {
    let mut out = UeaElement::zero();
    for (m, c) in &x.terms {
        let f = m.factors();
        let odd = f.iter().filter(|g| g.is_odd()).count();
        let flips = f.len() + odd * odd.saturating_sub(1) / 2;
        let sign = if flips % 2 == 0 { c.clone() } else { -c };
        let reversed: Vec<Generator> = f.iter().rev().copied().collect();
        out = out.add(&word_product(&reversed).scale(&sign));
    }
    out
}

/// `ε₀`: the coefficient of the unit monomial.
pub fn counit0(x: &UeaElement) -> Scalar {
    x.coeff(&PbwMonomial::unit())
}
