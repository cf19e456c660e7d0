//! JSON encoding of elements and series.
//!
//! A series is `{"order": N, "coeffs": [element, ...]}`; an element is
//! `{"rank": r, "terms": [{"legs": [[factor, ...], ...], "coeff": poly}, ...]}`
//! with factors `{"g": "L"|"G", "i2": int}` and polynomials
//! `[{"pow": int, "num": string, "den": string}, ...]`. Elements of `U` use
//! rank 1. Terms are listed in the canonical (lexicographic) order of legs.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::{Generator, Kind};
use crate::pbw::{PbwMonomial, UeaElement};
use crate::scalars::{Rational, Scalar};
use crate::tensor::TensorElement;
use crate::tseries::{SeriesValue, TSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorJson {
    pub g: String,
    pub i2: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyTermJson {
    pub pow: u32,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub legs: Vec<Vec<FactorJson>>,
    pub coeff: Vec<PolyTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub rank: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub order: usize,
    pub coeffs: Vec<ElementJson>,
}

/// A decoded element: rank 1 is an element of `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Uea(UeaElement),
    Tensor(TensorElement),
}

fn factor(g: Generator) -> FactorJson {
    let name = match g.kind() {
        Kind::L => "L",
        Kind::G => "G",
    };
    FactorJson { g: name.to_string(), i2: g.index2() }
}

fn poly(c: &Scalar) -> Vec<PolyTermJson> {
    c.terms()
        .iter()
        .map(|(p, r)| PolyTermJson { pow: *p, num: r.numer().to_string(), den: r.denom().to_string() })
        .collect()
}

fn legs(ms: &[PbwMonomial]) -> Vec<Vec<FactorJson>> {
    ms.iter().map(|m| m.factors().iter().copied().map(factor).collect()).collect()
}

pub fn uea_to_json(x: &UeaElement) -> ElementJson {
    ElementJson {
        rank: 1,
        terms: x.terms().map(|(m, c)| TermJson { legs: legs(std::slice::from_ref(m)), coeff: poly(c) }).collect(),
    }
}

pub fn tensor_to_json(x: &TensorElement) -> ElementJson {
    ElementJson { rank: x.rank(), terms: x.terms().map(|(l, c)| TermJson { legs: legs(l), coeff: poly(c) }).collect() }
}

pub fn series_to_json(x: &SeriesValue) -> SeriesJson {
    match x {
        SeriesValue::Uea(s) => SeriesJson { order: s.order(), coeffs: s.coeffs().iter().map(uea_to_json).collect() },
        SeriesValue::Tensor(s) => {
            SeriesJson { order: s.order(), coeffs: s.coeffs().iter().map(tensor_to_json).collect() }
        }
    }
}

pub fn series_to_string(x: &SeriesValue) -> String {
    serde_json::to_string(&series_to_json(x)).expect("plain data serializes")
}

fn parse_factor(f: &FactorJson) -> Result<Generator> {
    let kind = match f.g.as_str() {
        "L" => Kind::L,
        "G" => Kind::G,
        other => return Err(Error::Parse(format!("unknown generator kind `{other}`"))),
    };
    Generator::from_index2(kind, f.i2).ok_or_else(|| Error::Parse(format!("L needs an even doubled index, got {}", f.i2)))
}

fn parse_big(s: &str) -> Result<BigInt> {
    s.parse::<BigInt>().map_err(|e| Error::Parse(format!("bad integer `{s}`: {e}")))
}

fn parse_poly(p: &[PolyTermJson]) -> Result<Scalar> {
    let mut terms = Vec::with_capacity(p.len());
    for t in p {
        let den = parse_big(&t.den)?;
        if den == BigInt::from(0) {
            return Err(Error::Parse("zero denominator".into()));
        }
        terms.push((t.pow, Rational::new(parse_big(&t.num)?, den)));
    }
    Ok(Scalar::from_terms(terms))
}

fn parse_monomial(factors: &[FactorJson]) -> Result<PbwMonomial> {
    let gens = factors.iter().map(parse_factor).collect::<Result<Vec<_>>>()?;
    PbwMonomial::from_canonical(gens).ok_or_else(|| Error::Parse("monomial is not in PBW canonical form".into()))
}

pub fn element_from_json(e: &ElementJson) -> Result<Element> {
    if !(1..=3).contains(&e.rank) {
        return Err(Error::Parse(format!("rank {} is not 1, 2 or 3", e.rank)));
    }
    let mut uea = UeaElement::zero();
    let mut tensor = TensorElement::zero(e.rank);
    for t in &e.terms {
        if t.legs.len() != e.rank {
            return Err(Error::Parse(format!("term with {} legs in a rank-{} element", t.legs.len(), e.rank)));
        }
        let c = parse_poly(&t.coeff)?;
        let ms = t.legs.iter().map(|l| parse_monomial(l)).collect::<Result<Vec<_>>>()?;
        if e.rank == 1 {
            uea.add_term(ms.into_iter().next().expect("rank one"), &c);
        } else {
            tensor.add_term(ms, &c);
        }
    }
    Ok(if e.rank == 1 { Element::Uea(uea) } else { Element::Tensor(tensor) })
}

pub fn series_from_json(s: &SeriesJson) -> Result<SeriesValue> {
    if s.coeffs.len() != s.order + 1 {
        return Err(Error::Parse(format!("order {} needs {} coefficients, got {}", s.order, s.order + 1, s.coeffs.len())));
    }
    let elems = s.coeffs.iter().map(element_from_json).collect::<Result<Vec<_>>>()?;
    if elems.iter().all(|e| matches!(e, Element::Uea(_))) {
        let cs = elems.into_iter().map(|e| if let Element::Uea(u) = e { u } else { unreachable!() }).collect();
        return Ok(SeriesValue::Uea(TSeries::from_coeffs(cs)));
    }
    let rank = s.coeffs[0].rank;
    let mut cs = Vec::with_capacity(elems.len());
    for e in elems {
        match e {
            Element::Tensor(t) if t.rank() == rank => cs.push(t),
            _ => return Err(Error::Parse("series coefficients of different rank".into())),
        }
    }
    Ok(SeriesValue::Tensor(TSeries::from_coeffs(cs)))
}

/// Parses the output of [`series_to_string`].
pub fn parse_series(text: &str) -> Result<SeriesValue> {
    let s: SeriesJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    series_from_json(&s)
}
