//! Canonical text rendering. One fixed ordering and token set so that
//! output is stable enough to diff and to check golden files against.

use num_traits::{One, Signed};

use crate::hopf::TensorSeries;
use crate::idempotents::{BellElement, BellWord};
use crate::rational::{format_rational, Rational};
use crate::series::Series;

/// Join `(body, coefficient)` terms as a signed sum: `a - 1/2 b + 2 c`.
/// Unit coefficients are dropped; an empty list renders as `0`.
fn join_terms<I>(terms: I) -> String
where
    I: IntoIterator<Item = (String, Rational)>,
{
    let mut out = String::new();
    for (body, coeff) in terms {
        let negative = coeff.is_negative();
        let magnitude = coeff.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !magnitude.is_one() {
            out.push_str(&format_rational(&magnitude));
            out.push(' ');
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Render a series in the canonical basis order, e.g. `() - 1/2 (())`.
pub fn render_series(s: &Series) -> String {
    join_terms(s.terms().map(|(w, c)| (w.to_string(), c.clone())))
}

/// Render a tensor series, e.g. `(())⊗1 + ()⊗() + 1⊗(())`.
pub fn render_tensor(t: &TensorSeries) -> String {
    join_terms(t.terms().map(|(l, r, c)| (format!("{l}⊗{r}"), c.clone())))
}

fn bell_word_body(word: &BellWord) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    let mut out = String::new();
    let letters = &word.0;
    let mut i = 0;
    while i < letters.len() {
        let mut run = 1;
        while i + run < letters.len() && letters[i + run] == letters[i] {
            run += 1;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        out.push('d');
        out.push_str(&letters[i].to_string());
        if run > 1 {
            out.push('^');
            out.push_str(&run.to_string());
        }
        i += run;
    }
    out
}

/// Render a Bell polynomial, e.g. `d1^3 + 2 d1 d2 + d2 d1 + d3`.
pub fn render_bell(b: &BellElement) -> String {
    join_terms(b.terms().map(|(w, c)| (bell_word_body(w), c.clone())))
}
