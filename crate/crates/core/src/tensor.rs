//! Graded tensor squares and cubes of `U(𝓛)`.
//!
//! Products follow the Koszul rule: moving a homogeneous factor past another
//! costs `(-1)^{[a][b]}`, so `(a⊗b)(c⊗d) = (-1)^{[b][c]} ac⊗bd`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::liealg::Parity;
use crate::pbw::{antipode0, coproduct0, mono_times_mono, uea_mul, write_linear_combination, PbwMonomial, UeaElement};
use crate::scalars::{Rational, Scalar};
use num_traits::One;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorElement {
    rank: usize,
    terms: BTreeMap<Vec<PbwMonomial>, Scalar>,
}

impl TensorElement {
    pub fn zero(rank: usize) -> Self {
        TensorElement { rank, terms: BTreeMap::new() }
    }

    pub fn unit(rank: usize) -> Self {
        let mut t = TensorElement::zero(rank);
        t.add_term(vec![PbwMonomial::unit(); rank], &Scalar::one());
        t
    }

    /// The pure tensor `x_0 ⊗ x_1 ⊗ ...`.
    pub fn pure(legs: &[UeaElement]) -> Self {
        let mut acc: Vec<(Vec<PbwMonomial>, Scalar)> = vec![(Vec::new(), Scalar::one())];
        for leg in legs {
            let mut next = Vec::with_capacity(acc.len() * leg.len());
            for (key, c) in &acc {
                for (m, x) in leg.terms() {
                    let mut k = key.clone();
                    k.push(m.clone());
                    next.push((k, c * x));
                }
            }
            acc = next;
        }
        let mut t = TensorElement::zero(legs.len());
        for (k, c) in acc {
            t.add_term(k, &c);
        }
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, legs: Vec<PbwMonomial>, c: &Scalar) {
        debug_assert_eq!(legs.len(), self.rank);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&legs) {
            Some(entry) => {
                *entry += c;
                if entry.is_zero() {
                    self.terms.remove(&legs);
                }
            }
            None => {
                self.terms.insert(legs, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<PbwMonomial>, &Scalar)> {
        self.terms.iter()
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
        *self == TensorElement::unit(self.rank)
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> TensorElement {
        TensorElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        if c.is_zero() {
            return TensorElement::zero(self.rank);
        }
        TensorElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &TensorElement) -> Result<TensorElement> {
        tensor_mul(self, other)
    }

    pub fn map_scalars(&self, f: impl Fn(&Scalar) -> Scalar) -> TensorElement {
        let mut out = TensorElement::zero(self.rank);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &f(c));
        }
        out
    }

    /// `x ⊗ 1` (one unit leg appended on the right).
    pub fn pad_right(&self) -> TensorElement {
        let mut out = TensorElement::zero(self.rank + 1);
        for (k, c) in &self.terms {
            let mut legs = k.clone();
            legs.push(PbwMonomial::unit());
            out.add_term(legs, c);
        }
        out
    }

    /// `1 ⊗ x` (one unit leg prepended on the left).
    pub fn pad_left(&self) -> TensorElement {
        let mut out = TensorElement::zero(self.rank + 1);
        for (k, c) in &self.terms {
            let mut legs = vec![PbwMonomial::unit()];
            legs.extend(k.iter().cloned());
            out.add_term(legs, c);
        }
        out
    }

    /// Leg-wise product of two basis tuples, without the coefficient.
    fn leg_product(a: &[PbwMonomial], b: &[PbwMonomial]) -> Vec<(Vec<PbwMonomial>, Rational)> {
        let mut negative = false;
        for i in 0..a.len() {
            if a[i].parity() == Parity::Odd {
                for bj in &b[..i] {
                    if bj.parity() == Parity::Odd {
                        negative = !negative;
                    }
                }
            }
        }
        let mut acc: Vec<(Vec<PbwMonomial>, Rational)> =
            vec![(Vec::with_capacity(a.len()), if negative { -Rational::one() } else { Rational::one() })];
        for (x, y) in a.iter().zip(b) {
            let prod = mono_times_mono(x, y);
            let mut next = Vec::with_capacity(acc.len() * prod.len());
            for (k, c) in &acc {
                for (m, r) in prod.iter() {
                    let mut legs = k.clone();
                    legs.push(m.clone());
                    next.push((legs, c * r));
                }
            }
            acc = next;
        }
        acc
    }
}

/// Koszul-signed product of two tensors of equal rank.
pub fn tensor_mul(x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
    if x.rank != y.rank {
        return Err(Error::RankMismatch(x.rank, y.rank));
    }
    let mut acc: HashMap<Vec<PbwMonomial>, Scalar> = HashMap::new();
    for (ka, ca) in &x.terms {
        for (kb, cb) in &y.terms {
            let c = ca * cb;
            for (legs, r) in TensorElement::leg_product(ka, kb) {
                let term = c.scale(&r);
                match acc.get_mut(&legs) {
                    Some(entry) => *entry += &term,
                    None => {
                        acc.insert(legs, term);
                    }
                }
            }
        }
    }
    Ok(TensorElement { rank: x.rank, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() })
}

/// The even maps that can be applied to a single leg.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LegMap {
    Coproduct0,
    Antipode0,
    Counit0,
    Identity,
}

/// Result of a leg map: counit on a rank-2 tensor drops to `U(𝓛)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LegOutput {
    Uea(UeaElement),
    Tensor(TensorElement),
}

impl LegOutput {
    pub fn into_tensor(self) -> Result<TensorElement> {
        match self {
            LegOutput::Tensor(t) => Ok(t),
            LegOutput::Uea(_) => Err(Error::ShapeMismatch("expected a tensor".into())),
        }
    }

    pub fn into_uea(self) -> Result<UeaElement> {
        match self {
            LegOutput::Uea(u) => Ok(u),
            LegOutput::Tensor(_) => Err(Error::ShapeMismatch("expected an element of U".into())),
        }
    }
}

/// Applies `f` on leg `leg` and the identity elsewhere. All maps are even,
/// so no Koszul signs arise.
pub fn apply_leg(x: &TensorElement, leg: usize, f: LegMap) -> Result<LegOutput> {
    if leg >= x.rank {
        return Err(Error::LegOutOfRange { leg, rank: x.rank });
    }
    let new_rank = match f {
        LegMap::Coproduct0 => x.rank + 1,
        LegMap::Counit0 => x.rank - 1,
        _ => x.rank,
    };
    if new_rank > 3 {
        return Err(Error::RankMismatch(new_rank, 3));
    }
    let mut out = TensorElement::zero(new_rank);
    for (legs, c) in &x.terms {
        let single = UeaElement::term(legs[leg].clone(), Scalar::one());
        let splice = |pieces: Vec<PbwMonomial>| -> Vec<PbwMonomial> {
            let mut v = legs[..leg].to_vec();
            v.extend(pieces);
            v.extend_from_slice(&legs[leg + 1..]);
            v
        };
        match f {
            LegMap::Identity => out.add_term(legs.clone(), c),
            LegMap::Counit0 => {
                if legs[leg].is_unit() {
                    out.add_term(splice(Vec::new()), c);
                }
            }
            LegMap::Antipode0 => {
                for (m, s) in antipode0(&single).terms() {
                    out.add_term(splice(vec![m.clone()]), &(c * s));
                }
            }
            LegMap::Coproduct0 => {
                for (pair, s) in coproduct0(&single).terms() {
                    out.add_term(splice(pair.clone()), &(c * s));
                }
            }
        }
    }
    if new_rank == 1 {
        let mut u = UeaElement::zero();
        for (legs, c) in out.terms {
            u.add_term(legs.into_iter().next().expect("rank one"), &c);
        }
        Ok(LegOutput::Uea(u))
    } else {
        Ok(LegOutput::Tensor(out))
    }
}

/// `μ(a⊗b) = ab`.
pub fn mul_legs(x: &TensorElement) -> Result<UeaElement> {
    if x.rank != 2 {
        return Err(Error::RankMismatch(x.rank, 2));
    }
    let mut acc = UeaElement::zero();
    let mut grouped: BTreeMap<&PbwMonomial, UeaElement> = BTreeMap::new();
    for (legs, c) in &x.terms {
        grouped.entry(&legs[0]).or_default().add_term(legs[1].clone(), c);
    }
    for (left, right) in grouped {
        acc = acc.add(&uea_mul(&UeaElement::term(left.clone(), Scalar::one()), &right));
    }
    Ok(acc)
}

/// Graded flip `a⊗b ↦ (-1)^{[a][b]} b⊗a`.
pub fn flip(x: &TensorElement) -> Result<TensorElement> {
    if x.rank != 2 {
        return Err(Error::RankMismatch(x.rank, 2));
    }
    let mut out = TensorElement::zero(2);
    for (legs, c) in &x.terms {
        let sign = legs[0].parity().koszul(legs[1].parity());
        out.add_term(vec![legs[1].clone(), legs[0].clone()], &c.scale(&crate::scalars::int(sign)));
    }
    Ok(out)
}

impl fmt::Display for TensorElement {
    /// Terms are shown in canonical order except that a unit leg sorts after
    /// every other monomial, so `x⊗1` precedes `1⊗x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by_cached_key(|(legs, _)| legs.iter().map(|m| (m.is_unit(), (*m).clone())).collect::<Vec<_>>());
        let terms: Vec<(String, Scalar)> = sorted
            .into_iter()
            .map(|(legs, c)| {
                let basis: Vec<String> = legs.iter().map(|m| m.to_string()).collect();
                (basis.join("⊗"), c.clone())
            })
            .collect();
        write_linear_combination(f, &terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{build_xy, Generator};
    use crate::pbw::word_product;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn g(x: Generator) -> UeaElement {
        UeaElement::generator(x)
    }

    fn one() -> UeaElement {
        UeaElement::one()
    }

    #[test]
    fn koszul_examples() {
        let (k, l) = (Generator::g2(1), Generator::g2(3));
        let lhs = tensor_mul(&TensorElement::pure(&[one(), g(k)]), &TensorElement::pure(&[g(l), one()])).unwrap();
        assert_eq!(lhs, TensorElement::pure(&[g(l), g(k)]).neg());
        let lhs = tensor_mul(
            &TensorElement::pure(&[g(Generator::l(1)), one()]),
            &TensorElement::pure(&[one(), g(Generator::l(-2))]),
        )
        .unwrap();
        assert_eq!(lhs, TensorElement::pure(&[g(Generator::l(1)), g(Generator::l(-2))]));
        let gk = TensorElement::pure(&[g(k), one()]);
        assert_eq!(tensor_mul(&gk, &gk).unwrap(), TensorElement::pure(&[g(Generator::l(1)), one()]));
        assert_eq!(tensor_mul(&gk, &TensorElement::unit(3)), Err(Error::RankMismatch(2, 3)));
    }

    #[test]
    fn koszul_coherence() {
        let elems = [
            word_product(&[Generator::g2(1)]),
            word_product(&[Generator::l(2), Generator::g2(-1)]),
            word_product(&[Generator::l(-1), Generator::l(3)]),
            word_product(&[Generator::g2(1), Generator::g2(3)]),
        ];
        for a in &elems {
            for b in &elems {
                let ab = TensorElement::pure(&[a.clone(), b.clone()]);
                let a1 = TensorElement::pure(&[a.clone(), one()]);
                let b1 = TensorElement::pure(&[one(), b.clone()]);
                assert_eq!(tensor_mul(&a1, &b1).unwrap(), ab);
                let sign = a.parity().unwrap().koszul(b.parity().unwrap());
                assert_eq!(tensor_mul(&b1, &a1).unwrap(), ab.scale(&Scalar::from_int(sign)));
            }
        }
    }

    fn random_tensor(rng: &mut ChaCha8Rng, rank: usize, ns: bool) -> TensorElement {
        let mut t = TensorElement::zero(rank);
        for _ in 0..rng.gen_range(1..=2) {
            let legs: Vec<UeaElement> = (0..rank)
                .map(|_| {
                    let len = rng.gen_range(0..=2);
                    let word: Vec<Generator> = (0..len)
                        .map(|_| {
                            if rng.gen_bool(0.5) {
                                Generator::l(rng.gen_range(-2..=2))
                            } else {
                                Generator::g2(2 * rng.gen_range(-1..=1) + ns as i64)
                            }
                        })
                        .collect();
                    word_product(&word)
                })
                .collect();
            t = t.add(&TensorElement::pure(&legs).scale(&Scalar::from_int(rng.gen_range(1..=3))));
        }
        t
    }

    #[test]
    fn tensor_mul_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 0..100 {
            let ns = n % 2 == 0;
            let (a, b, c) =
                (random_tensor(&mut rng, 2, ns), random_tensor(&mut rng, 2, ns), random_tensor(&mut rng, 2, ns));
            let lhs = tensor_mul(&tensor_mul(&a, &b).unwrap(), &c).unwrap();
            let rhs = tensor_mul(&a, &tensor_mul(&b, &c).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
        for n in 0..20 {
            let ns = n % 2 == 1;
            let (a, b, c) =
                (random_tensor(&mut rng, 3, ns), random_tensor(&mut rng, 3, ns), random_tensor(&mut rng, 3, ns));
            let lhs = tensor_mul(&tensor_mul(&a, &b).unwrap(), &c).unwrap();
            let rhs = tensor_mul(&a, &tensor_mul(&b, &c).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn rank_three_leg_embedding_commutes_with_products() {
        let a = word_product(&[Generator::l(1), Generator::l(2)]);
        let b = word_product(&[Generator::l(-1)]);
        let c = word_product(&[Generator::l(0), Generator::l(3)]);
        let d = word_product(&[Generator::l(2)]);
        let ab = TensorElement::pure(&[a.clone(), b.clone()]);
        let cd = TensorElement::pure(&[c.clone(), d.clone()]);
        let lhs = tensor_mul(&ab, &cd).unwrap().pad_right();
        let rhs = tensor_mul(&ab.pad_right(), &cd.pad_right()).unwrap();
        assert_eq!(lhs, rhs);
        let lhs = tensor_mul(&ab, &cd).unwrap().pad_left();
        let rhs = tensor_mul(&ab.pad_left(), &cd.pad_left()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn apply_leg_examples() {
        let u = apply_leg(&TensorElement::unit(2), 0, LegMap::Counit0).unwrap().into_uea().unwrap();
        assert!(u.is_one());
        let li = g(Generator::l(2));
        let t = apply_leg(&TensorElement::pure(&[li.clone(), one()]), 0, LegMap::Coproduct0)
            .unwrap()
            .into_tensor()
            .unwrap();
        let want = TensorElement::pure(&[li.clone(), one(), one()]).add(&TensorElement::pure(&[one(), li, one()]));
        assert_eq!(t, want);
        let xy = build_xy(2).unwrap();
        let (x, y) = (UeaElement::from_lie(&xy.x), UeaElement::from_lie(&xy.y));
        let t = apply_leg(&TensorElement::pure(&[x.clone(), y.clone()]), 0, LegMap::Antipode0)
            .unwrap()
            .into_tensor()
            .unwrap();
        assert_eq!(t, TensorElement::pure(&[x.neg(), y.clone()]));
        let same = apply_leg(&t, 1, LegMap::Identity).unwrap().into_tensor().unwrap();
        assert_eq!(same, t);
        assert_eq!(
            apply_leg(&t, 2, LegMap::Identity),
            Err(Error::LegOutOfRange { leg: 2, rank: 2 })
        );
        let t3 = TensorElement::unit(3);
        assert!(apply_leg(&t3, 0, LegMap::Coproduct0).is_err());
    }

    #[test]
    fn mul_legs_examples() {
        let xy = build_xy(1).unwrap();
        let (x, y) = (UeaElement::from_lie(&xy.x), UeaElement::from_lie(&xy.y));
        assert_eq!(mul_legs(&TensorElement::pure(&[x.clone(), one()])).unwrap(), x);
        assert_eq!(mul_legs(&TensorElement::pure(&[x.clone(), y.clone()])).unwrap(), uea_mul(&x, &y));
        let gk = g(Generator::g2(3));
        assert_eq!(mul_legs(&TensorElement::pure(&[gk.clone(), gk])).unwrap(), g(Generator::l(3)));
        assert!(mul_legs(&TensorElement::unit(3)).is_err());
    }

    #[test]
    fn flip_carries_sign() {
        let t = TensorElement::pure(&[g(Generator::g2(1)), g(Generator::g2(3))]);
        assert_eq!(flip(&t).unwrap(), TensorElement::pure(&[g(Generator::g2(3)), g(Generator::g2(1))]).neg());
    }
}
