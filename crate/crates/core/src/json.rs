//! JSON wire format. Terms are emitted in the canonical basis order, so
//! serialization is deterministic and round trips to an equal value.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forest::Forest;
use crate::hopf::TensorSeries;
use crate::idempotents::{BellElement, BellWord};
use crate::rational::{format_rational, parse_rational};
use crate::series::Series;

#[derive(Serialize, Deserialize)]
struct SeriesDto {
    order: usize,
    terms: Vec<SeriesTermDto>,
}

#[derive(Serialize, Deserialize)]
struct SeriesTermDto {
    forest: String,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct TensorDto {
    order: usize,
    terms: Vec<TensorTermDto>,
}

#[derive(Serialize, Deserialize)]
struct TensorTermDto {
    left: String,
    right: String,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct BellDto {
    terms: Vec<BellTermDto>,
}

#[derive(Serialize, Deserialize)]
struct BellTermDto {
    word: Vec<usize>,
    coeff: String,
}

fn bad(e: impl std::fmt::Display) -> Error {
    Error::InvalidJson(e.to_string())
}

pub fn series_to_json(s: &Series) -> String {
    let dto = SeriesDto {
        order: s.order(),
        terms: s
            .terms()
            .map(|(w, c)| SeriesTermDto { forest: w.word().to_string(), coeff: format_rational(c) })
            .collect(),
    };
    serde_json::to_string(&dto).expect("serialization is infallible")
}

pub fn series_from_json(text: &str) -> Result<Series> {
    let dto: SeriesDto = serde_json::from_str(text).map_err(bad)?;
    let mut out = Series::zero(dto.order);
    for term in dto.terms {
        let forest = Forest::parse(&term.forest).map_err(bad)?;
        out.add_term(forest, parse_rational(&term.coeff)?);
    }
    Ok(out)
}

pub fn tensor_to_json(t: &TensorSeries) -> String {
    let dto = TensorDto {
        order: t.order(),
        terms: t
            .terms()
            .map(|(l, r, c)| TensorTermDto {
                left: l.word().to_string(),
                right: r.word().to_string(),
                coeff: format_rational(c),
            })
            .collect(),
    };
    serde_json::to_string(&dto).expect("serialization is infallible")
}

pub fn tensor_from_json(text: &str) -> Result<TensorSeries> {
    let dto: TensorDto = serde_json::from_str(text).map_err(bad)?;
    let mut out = TensorSeries::zero(dto.order);
    for term in dto.terms {
        let left = Forest::parse(&term.left).map_err(bad)?;
        let right = Forest::parse(&term.right).map_err(bad)?;
        out.add_term(left, right, parse_rational(&term.coeff)?);
    }
    Ok(out)
}

pub fn bell_to_json(b: &BellElement) -> String {
    let dto = BellDto {
        terms: b
            .terms()
            .map(|(w, c)| BellTermDto { word: w.0.clone(), coeff: format_rational(c) })
            .collect(),
    };
    serde_json::to_string(&dto).expect("serialization is infallible")
}

pub fn bell_from_json(text: &str) -> Result<BellElement> {
    let dto: BellDto = serde_json::from_str(text).map_err(bad)?;
    let mut out = BellElement::zero();
    for term in dto.terms {
        if term.word.contains(&0) {
            return Err(Error::InvalidJson("letter indices start at 1".to_string()));
        }
        out.add_term(BellWord(term.word), parse_rational(&term.coeff)?);
    }
    Ok(out)
}
