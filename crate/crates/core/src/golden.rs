//! Reference data for the regression suite: the two coproduct/substitution
//! tables, the exact-flow series through order five, and the Euler
//! modified-field series through order four. The fixtures are JSON files
//! compiled into the library; loaders panic on malformed fixtures because
//! those are build defects, not runtime conditions.

use serde::Deserialize;

use crate::forest::Forest;
use crate::hopf::TensorSeries;
use crate::json::series_from_json;
use crate::rational::{parse_rational, Rational};
use crate::series::Series;

const DN_COPRODUCT_TABLE: &str = include_str!("golden/dn_coproduct_table.json");
const DUAL_SUBSTITUTION_TABLE: &str = include_str!("golden/dual_substitution_table.json");
const EXACT_FLOW_GAMMA: &str = include_str!("golden/exact_flow_gamma.json");
const EULER_BACKWARD_ERROR: &str = include_str!("golden/euler_backward_error.json");

#[derive(Deserialize)]
struct CoproductTableDto {
    rows: Vec<CoproductRowDto>,
}

#[derive(Deserialize)]
struct CoproductRowDto {
    forest: String,
    terms: Vec<CoproductTermDto>,
}

#[derive(Deserialize)]
struct CoproductTermDto {
    left: String,
    right: String,
    coeff: String,
}

/// One row of the coproduct table: a forest and its expansion.
pub struct CoproductRow {
    pub forest: Forest,
    pub expansion: TensorSeries,
}

/// The reference coproduct table: all forests of order at most four.
pub fn dn_coproduct_rows() -> Vec<CoproductRow> {
    let dto: CoproductTableDto =
        serde_json::from_str(DN_COPRODUCT_TABLE).expect("fixture parses");
    dto.rows
        .into_iter()
        .map(|row| {
            let forest = Forest::parse(&row.forest).expect("fixture forest parses");
            let mut expansion = TensorSeries::zero(forest.order());
            for term in row.terms {
                expansion.add_term(
                    Forest::parse(&term.left).expect("fixture forest parses"),
                    Forest::parse(&term.right).expect("fixture forest parses"),
                    parse_rational(&term.coeff).expect("fixture coefficient parses"),
                );
            }
            CoproductRow { forest, expansion }
        })
        .collect()
}

#[derive(Deserialize)]
struct DualTableDto {
    rows: Vec<DualRowDto>,
}

#[derive(Deserialize)]
struct DualRowDto {
    forest: String,
    terms: Vec<DualTermDto>,
}

#[derive(Deserialize)]
struct DualTermDto {
    factors: Vec<String>,
    output: String,
    coeff: String,
}

/// One symbolic term of a dual-substitution row: a scalar multiple of a
/// product of evaluations of the substitution datum, attached to an output
/// forest.
pub struct DualTerm {
    pub factors: Vec<Forest>,
    pub output: Forest,
    pub coeff: Rational,
}

/// One row of the dual-substitution table.
pub struct DualRow {
    pub forest: Forest,
    pub terms: Vec<DualTerm>,
}

/// The reference dual-substitution table: all forests of order at most
/// four, with coefficients left symbolic in the datum.
pub fn dual_substitution_rows() -> Vec<DualRow> {
    let dto: DualTableDto =
        serde_json::from_str(DUAL_SUBSTITUTION_TABLE).expect("fixture parses");
    dto.rows
        .into_iter()
        .map(|row| DualRow {
            forest: Forest::parse(&row.forest).expect("fixture forest parses"),
            terms: row
                .terms
                .into_iter()
                .map(|term| DualTerm {
                    factors: term
                        .factors
                        .iter()
                        .map(|w| Forest::parse(w).expect("fixture forest parses"))
                        .collect(),
                    output: Forest::parse(&term.output).expect("fixture forest parses"),
                    coeff: parse_rational(&term.coeff).expect("fixture coefficient parses"),
                })
                .collect(),
        })
        .collect()
}

/// Evaluate a dual-substitution row at a concrete datum: each symbolic
/// term becomes `coeff · Π a(factor)` on its output forest. Valid for
/// infinitesimal data, which is the assumption the table rows were
/// simplified under.
pub fn evaluate_dual_row(row: &DualRow, a: &Series) -> Series {
    let mut out = Series::zero(a.order());
    for term in &row.terms {
        let mut scalar = term.coeff.clone();
        for factor in &term.factors {
            scalar *= a.coeff(factor);
        }
        out.add_term(term.output.clone(), scalar);
    }
    out
}

/// The exact-flow TYPE3 series through order five.
pub fn exact_flow_gamma() -> Series {
    series_from_json(EXACT_FLOW_GAMMA).expect("fixture parses")
}

/// The Euler modified field through order four.
pub fn euler_backward_error() -> Series {
    series_from_json(EULER_BACKWARD_ERROR).expect("fixture parses")
}
