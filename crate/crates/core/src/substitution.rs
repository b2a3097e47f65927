//! The substitution law: replacing the single generator of the planar-forest
//! algebra by a fixed Lie element and extending as a homomorphism for both
//! products, together with its adjoint computed from left admissible cuts,
//! and a graded solver for substitution equations.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::cuts::left_admissible_cuts;
use crate::error::{Error, Result};
use crate::forest::Forest;
use crate::hopf::{is_infinitesimal_character, HopfStructure};
use crate::series::Series;

fn check_datum(a: &Series, strict: bool) -> Result<()> {
    if !a.coeff(&Forest::empty()).is_zero() {
        return Err(Error::NotInfinitesimal);
    }
    if strict && !is_infinitesimal_character(a, HopfStructure::ShuffleDn) {
        return Err(Error::NotInfinitesimal);
    }
    Ok(())
}

/// Memoized magma recursion for the direct substitution.
struct Direct<'a> {
    a: &'a Series,
    cache: HashMap<Forest, Series>,
}

impl<'a> Direct<'a> {
    fn new(a: &'a Series) -> Self {
        Direct { a, cache: HashMap::new() }
    }

    fn image(&mut self, w: &Forest) -> Result<Series> {
        if w.is_empty() {
            return Ok(Series::one(self.a.order()));
        }
        if let Some(hit) = self.cache.get(w) {
            return Ok(hit.clone());
        }
        let (left, inner) = w.magma_split()?;
        let left_image = self.image(&left)?;
        let inner_image = self.image(&inner)?;
        let out = left_image.concat_mul(&inner_image.graft(self.a)?)?;
        self.cache.insert(w.clone(), out.clone());
        Ok(out)
    }
}

/// Image of a single basis forest under the substitution endomorphism
/// determined by `a`: the identity on the empty forest, `a` on the single
/// vertex, and a homomorphism for concatenation and grafting.
pub fn substitute_forest(a: &Series, omega: &Forest) -> Result<Series> {
    check_datum(a, false)?;
    if omega.order() > a.order() {
        return Err(Error::OrderMismatch { left: a.order(), right: omega.order() });
    }
    Direct::new(a).image(omega)
}

fn substitute_inner(a: &Series, s: &Series) -> Result<Series> {
    if a.order() != s.order() {
        return Err(Error::OrderMismatch { left: a.order(), right: s.order() });
    }
    let mut direct = Direct::new(a);
    let mut out = Series::zero(a.order());
    for (w, c) in s.terms() {
        out = out.add(&direct.image(w)?.scaled(c))?;
    }
    Ok(out)
}

/// Substitution of `a` into the series `s`, term by term. Requires
/// `a(𝟙) = 0`; full infinitesimality is the caller's responsibility in
/// this permissive entry point.
pub fn substitute(a: &Series, s: &Series) -> Result<Series> {
    check_datum(a, false)?;
    substitute_inner(a, s)
}

/// As [`substitute`], but rejects any `a` that fails the full
/// infinitesimal-character test.
pub fn substitute_strict(a: &Series, s: &Series) -> Result<Series> {
    check_datum(a, true)?;
    substitute_inner(a, s)
}

/// Memoized cut recursion for the adjoint.
struct Dual<'a> {
    a: &'a Series,
    cache: HashMap<Forest, Series>,
}

impl<'a> Dual<'a> {
    fn new(a: &'a Series) -> Self {
        Dual { a, cache: HashMap::new() }
    }

    fn image(&mut self, w: &Forest) -> Result<Series> {
        let order = self.a.order();
        if w.is_empty() {
            return Ok(Series::one(order));
        }
        if let Some(hit) = self.cache.get(w) {
            return Ok(hit.clone());
        }
        let trees = w.trees();
        let mut total = Series::zero(order);
        // Deconcatenation splits w = u·v with v nonempty; the last tree of
        // v is consumed by the raised cut, so the recursion terminates.
        for k in 0..trees.len() {
            let u = trees[..k]
                .iter()
                .fold(Forest::empty(), |acc, t| acc.concat(t.as_forest()));
            let v = trees[k..]
                .iter()
                .fold(Forest::empty(), |acc, t| acc.concat(t.as_forest()));
            let left = self.image(&u)?;
            for datum in left_admissible_cuts(&v, false) {
                let scalar = self.a.coeff(&datum.remainder);
                if scalar.is_zero() {
                    continue;
                }
                let mut pruned_image = Series::zero(order);
                for (p, c) in datum.pruned.terms() {
                    pruned_image = pruned_image.add(&self.image(p)?.scaled(c))?;
                }
                let grown = left.concat_mul(&pruned_image.b_plus_linear())?;
                total = total.add(&grown.scaled(&scalar))?;
            }
        }
        self.cache.insert(w.clone(), total.clone());
        Ok(total)
    }
}

/// The adjoint of [`substitute`] on a basis forest, computed by the cut
/// formula: sum over deconcatenation splits and left admissible cuts of the
/// right part, with the remainder evaluated in `a` and the pruned part
/// processed recursively under an added root.
pub fn substitute_dual(a: &Series, omega: &Forest) -> Result<Series> {
    check_datum(a, false)?;
    if omega.order() > a.order() {
        return Err(Error::OrderMismatch { left: a.order(), right: omega.order() });
    }
    Dual::new(a).image(omega)
}

/// As [`substitute_dual`], but rejects any `a` that fails the full
/// infinitesimal-character test.
pub fn substitute_dual_strict(a: &Series, omega: &Forest) -> Result<Series> {
    check_datum(a, true)?;
    if omega.order() > a.order() {
        return Err(Error::OrderMismatch { left: a.order(), right: omega.order() });
    }
    Dual::new(a).image(omega)
}

/// Solve `substitute(a, base) = target` for the infinitesimal datum `a`
/// by graded recursion: the order-n component of `a` enters the image
/// linearly through the single-vertex term of `base`, so each component is
/// read off as a defect once all lower ones are fixed.
///
/// `base` must be normalized (`base(𝟙) = 1`, `base(•) = 1`); otherwise the
/// equation is rejected as inconsistent. A `target` outside the orbit of
/// `base` is detected after the fact: the solved `a` either fails the
/// re-substitution check or is not an infinitesimal character.
pub fn solve_substitution(target: &Series, base: &Series) -> Result<Series> {
    if target.order() != base.order() {
        return Err(Error::OrderMismatch { left: target.order(), right: base.order() });
    }
    let one = Forest::empty();
    let vertex = Forest::vertex();
    if !base.coeff(&one).is_one() || !base.coeff(&vertex).is_one() {
        return Err(Error::NotConsistent);
    }
    if !target.coeff(&one).is_one() {
        return Err(Error::NoSolution);
    }
    let order = target.order();
    let mut a = Series::zero(order);
    for n in 1..=order {
        let image = substitute_inner(&a, base)?;
        let defect = target.component(n).sub(&image.component(n))?;
        a = a.add(&defect)?;
    }
    if substitute_inner(&a, base)? != *target {
        return Err(Error::NoSolution);
    }
    if !is_infinitesimal_character(&a, HopfStructure::ShuffleDn) {
        return Err(Error::NoSolution);
    }
    Ok(a)
}
