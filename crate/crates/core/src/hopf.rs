//! Coproducts, antipodes, convolution, and characters.
//!
//! Three bialgebra structures share the forest basis:
//!
//! - [`HopfStructure::ShuffleDeconcat`]: shuffle product, deconcatenation
//!   coproduct (splitting a word at top-level tree boundaries);
//! - [`HopfStructure::ShuffleDn`]: shuffle product with the coproduct dual
//!   to the Grossman-Larson product, built by the magmatic recursion;
//! - [`HopfStructure::ConcatDeshuffle`]: concatenation product with the
//!   deshuffle coproduct (trees primitive, extended multiplicatively).
//!
//! All three are graded and connected, so the antipode follows from the
//! counit identity by a finite recursion and functional log/exp terminate
//! at the truncation order. Functionals on the basis are represented as
//! [`Series`] via the same coefficients; [`pairing`] is the evaluation.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forest::{enumerate, Forest};
use crate::rational::{rat_int, Rational};
use crate::series::{shuffle_forests, Series};

/// A rational linear combination of forest pairs, truncated by total order.
///
/// Keys sort by (right leg, left leg), which makes text output list the
/// unit-right terms first: `w⊗1 + … + 1⊗w`.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorSeries {
    order: usize,
    terms: BTreeMap<TensorKey, Rational>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct TensorKey {
    right: Forest,
    left: Forest,
}

impl TensorSeries {
    pub fn zero(order: usize) -> Self {
        TensorSeries { order, terms: BTreeMap::new() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, left: Forest, right: Forest, coeff: Rational) {
        if coeff.is_zero() || left.order() + right.order() > self.order {
            return;
        }
        let key = TensorKey { right, left };
        match self.terms.get_mut(&key) {
            Some(entry) => {
                *entry += coeff;
                if entry.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn coeff(&self, left: &Forest, right: &Forest) -> Rational {
        let key = TensorKey { right: right.clone(), left: left.clone() };
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms as (left, right, coefficient), in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Forest, &Forest, &Rational)> {
        self.terms.iter().map(|(k, c)| (&k.left, &k.right, c))
    }

    pub fn add(&self, other: &TensorSeries) -> Result<TensorSeries> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        let mut out = self.clone();
        for (l, r, c) in other.terms() {
            out.add_term(l.clone(), r.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: &Rational) -> TensorSeries {
        if factor.is_zero() {
            return TensorSeries::zero(self.order);
        }
        TensorSeries {
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * factor))
                .collect(),
        }
    }

    /// Evaluates two functionals against the legs: Σ c·a(left)·b(right).
    pub fn pair(&self, a: &Series, b: &Series) -> Rational {
        let mut total = Rational::zero();
        for (l, r, c) in self.terms() {
            let al = a.coeff(l);
            if al.is_zero() {
                continue;
            }
            let br = b.coeff(r);
            if br.is_zero() {
                continue;
            }
            total += c * al * br;
        }
        total
    }

    /// Collapses the left leg with the counit: Σ c·ε(left)·right.
    pub fn counit_left(&self) -> Series {
        let mut out = Series::zero(self.order);
        for (l, r, c) in self.terms() {
            if l.is_empty() {
                out.add_term(r.clone(), c.clone());
            }
        }
        out
    }

    /// Collapses the right leg with the counit: Σ c·left·ε(right).
    pub fn counit_right(&self) -> Series {
        let mut out = Series::zero(self.order);
        for (l, r, c) in self.terms() {
            if r.is_empty() {
                out.add_term(l.clone(), c.clone());
            }
        }
        out
    }
}

impl std::fmt::Debug for TensorSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TensorSeries(order {}; ", self.order)?;
        let mut first = true;
        for (l, r, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c} {l}(x){r}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

/// Deconcatenation: all splits of the word at top-level tree boundaries.
pub fn coproduct_deconcat(forest: &Forest, order: usize) -> TensorSeries {
    let mut out = TensorSeries::zero(order);
    let trees = forest.trees();
    for k in 0..=trees.len() {
        let left = trees[..k]
            .iter()
            .fold(Forest::empty(), |acc, t| acc.concat(t.as_forest()));
        let right = trees[k..]
            .iter()
            .fold(Forest::empty(), |acc, t| acc.concat(t.as_forest()));
        out.add_term(left, right, Rational::one());
    }
    out
}

/// Deshuffle: trees are primitive and the coproduct is multiplicative over
/// concatenation, so each top-level tree goes left or right independently.
pub fn coproduct_deshuffle(forest: &Forest, order: usize) -> TensorSeries {
    let mut out = TensorSeries::zero(order);
    out.add_term(Forest::empty(), Forest::empty(), Rational::one());
    for tree in forest.trees() {
        let mut next = TensorSeries::zero(order);
        for (l, r, c) in out.terms() {
            next.add_term(l.concat(tree.as_forest()), r.clone(), c.clone());
            next.add_term(l.clone(), r.concat(tree.as_forest()), c.clone());
        }
        out = next;
    }
    out
}

/// The coproduct dual to the Grossman-Larson product, by the magmatic
/// recursion: on the factorization `w = w_L . B+(w_R)`,
/// `Δ(w) = w⊗1 + Δ(w_L) ⧢× Δ(w_R)` where `⧢×` shuffles the left legs and
/// magma-multiplies the right legs.
pub fn coproduct_dn(forest: &Forest, order: usize) -> TensorSeries {
    let mut cache: HashMap<Forest, TensorSeries> = HashMap::new();
    coproduct_dn_cached(forest, order, &mut cache)
}

fn coproduct_dn_cached(
    forest: &Forest,
    order: usize,
    cache: &mut HashMap<Forest, TensorSeries>,
) -> TensorSeries {
    if let Some(hit) = cache.get(forest) {
        return hit.clone();
    }
    let mut out = TensorSeries::zero(order);
    if forest.is_empty() {
        out.add_term(Forest::empty(), Forest::empty(), Rational::one());
    } else {
        out.add_term(forest.clone(), Forest::empty(), Rational::one());
        let (left_part, right_part) = forest
            .magma_split()
            .expect("nonempty forest splits");
        let a = coproduct_dn_cached(&left_part, order, cache);
        let b = coproduct_dn_cached(&right_part, order, cache);
        for (la, ra, ca) in a.terms() {
            for (lb, rb, cb) in b.terms() {
                let scale = ca * cb;
                let right = ra.magma_times(rb);
                for (word, c) in shuffle_forests(la, lb).terms() {
                    out.add_term(word.clone(), right.clone(), c * &scale);
                }
            }
        }
    }
    cache.insert(forest.clone(), out.clone());
    out
}

/// Closed-form shuffle antipode: signed reversal of the top-level trees.
pub fn antipode_shuffle(forest: &Forest, order: usize) -> Series {
    let trees = forest.trees();
    let reversed = trees
        .iter()
        .rev()
        .fold(Forest::empty(), |acc, t| acc.concat(t.as_forest()));
    let sign = if trees.len().is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    Series::from_terms(order, [(reversed, sign)])
}

/// The three graded bialgebra structures on the forest basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HopfStructure {
    /// Shuffle product, deconcatenation coproduct.
    ShuffleDeconcat,
    /// Shuffle product, Grossman-Larson-dual coproduct.
    ShuffleDn,
    /// Concatenation product, deshuffle coproduct.
    ConcatDeshuffle,
}

impl HopfStructure {
    /// The structure's product on basis forests, as an exact series.
    pub fn product_forests(self, a: &Forest, b: &Forest) -> Series {
        match self {
            HopfStructure::ShuffleDeconcat | HopfStructure::ShuffleDn => {
                shuffle_forests(a, b)
            }
            HopfStructure::ConcatDeshuffle => {
                Series::basis(a.order() + b.order(), &a.concat(b))
            }
        }
    }

    pub fn coproduct(self, forest: &Forest, order: usize) -> TensorSeries {
        match self {
            HopfStructure::ShuffleDeconcat => coproduct_deconcat(forest, order),
            HopfStructure::ShuffleDn => coproduct_dn(forest, order),
            HopfStructure::ConcatDeshuffle => coproduct_deshuffle(forest, order),
        }
    }

    /// The antipode by the standard graded recursion: the coproduct term
    /// `w⊗1` isolates `S(w)`, everything else has a left leg of lower
    /// order.
    pub fn antipode(self, forest: &Forest, order: usize) -> Series {
        let mut cache: HashMap<Forest, Series> = HashMap::new();
        self.antipode_cached(forest, order, &mut cache)
    }

    fn antipode_cached(
        self,
        forest: &Forest,
        order: usize,
        cache: &mut HashMap<Forest, Series>,
    ) -> Series {
        if forest.is_empty() {
            return Series::one(order);
        }
        if let Some(hit) = cache.get(forest) {
            return hit.clone();
        }
        let mut total = Series::zero(order);
        for (l, r, c) in self.coproduct(forest, order).terms() {
            if r.is_empty() {
                // This is the w⊗1 term being solved for.
                continue;
            }
            let s_left = self.antipode_cached(l, order, cache);
            let product = s_left.map_basis(|w| self.product_forests(w, r).with_order(order));
            total = total
                .add(&product.scaled(c))
                .expect("orders agree by construction");
        }
        let result = total.negated();
        cache.insert(forest.clone(), result.clone());
        result
    }
}

/// Evaluation of the functional `a` on the series `b`: Σ a(w)·b_w.
pub fn pairing(a: &Series, b: &Series) -> Rational {
    let mut total = Rational::zero();
    for (w, c) in b.terms() {
        let av = a.coeff(w);
        if !av.is_zero() {
            total += av * c;
        }
    }
    total
}

/// Convolution of two functionals: (a∗b)(w) = Σ a(w(1))·b(w(2)).
pub fn convolve_functionals(a: &Series, b: &Series, h: HopfStructure) -> Result<Series> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch { left: a.order(), right: b.order() });
    }
    let order = a.order();
    let mut out = Series::zero(order);
    for forest in enumerate(order) {
        let value = h.coproduct(&forest, order).pair(a, b);
        out.add_term(forest, value);
    }
    Ok(out)
}

/// A linear endomorphism of the truncated basis, stored by images.
#[derive(Clone, PartialEq, Eq)]
pub struct Endomorphism {
    order: usize,
    images: BTreeMap<Forest, Series>,
}

impl Endomorphism {
    /// Builds an endomorphism from images of every basis forest.
    pub fn from_fn<F>(order: usize, mut f: F) -> Self
    where
        F: FnMut(&Forest) -> Series,
    {
        let images = enumerate(order)
            .into_iter()
            .map(|w| {
                let image = f(&w).with_order(order);
                (w, image)
            })
            .collect();
        Endomorphism { order, images }
    }

    pub fn identity(order: usize) -> Self {
        Endomorphism::from_fn(order, |w| Series::basis(order, w))
    }

    /// The convolution unit: unit composed with counit (keeps only the
    /// empty-forest component).
    pub fn counit_unit(order: usize) -> Self {
        Endomorphism::from_fn(order, |w| {
            if w.is_empty() {
                Series::one(order)
            } else {
                Series::zero(order)
            }
        })
    }

    /// Identity minus the convolution unit: kills the empty forest.
    pub fn augmentation(order: usize) -> Self {
        Endomorphism::from_fn(order, |w| {
            if w.is_empty() {
                Series::zero(order)
            } else {
                Series::basis(order, w)
            }
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Image of a basis forest.
    pub fn image(&self, forest: &Forest) -> Series {
        self.images
            .get(forest)
            .cloned()
            .unwrap_or_else(|| Series::zero(self.order))
    }

    /// Linear extension to series.
    pub fn apply(&self, s: &Series) -> Result<Series> {
        if s.order() != self.order {
            return Err(Error::OrderMismatch { left: self.order, right: s.order() });
        }
        let mut out = Series::zero(self.order);
        for (w, c) in s.terms() {
            for (g, d) in self.image(w).terms() {
                out.add_term(g.clone(), c * d);
            }
        }
        Ok(out)
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        let mut images = BTreeMap::new();
        for (w, mid) in &other.images {
            images.insert(w.clone(), self.apply(mid)?);
        }
        Ok(Endomorphism { order: self.order, images })
    }

    pub fn add(&self, other: &Endomorphism) -> Result<Endomorphism> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        let mut images = BTreeMap::new();
        for (w, image) in &self.images {
            images.insert(w.clone(), image.add(&other.image(w))?);
        }
        Ok(Endomorphism { order: self.order, images })
    }

    pub fn scaled(&self, factor: &Rational) -> Endomorphism {
        Endomorphism {
            order: self.order,
            images: self
                .images
                .iter()
                .map(|(w, s)| (w.clone(), s.scaled(factor)))
                .collect(),
        }
    }
}

impl std::fmt::Debug for Endomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Endomorphism(order {}, {} images)", self.order, self.images.len())
    }
}

/// Convolution of endomorphisms: μ_H ∘ (f⊗g) ∘ Δ_H.
pub fn convolve_endomorphisms(
    f: &Endomorphism,
    g: &Endomorphism,
    h: HopfStructure,
) -> Result<Endomorphism> {
    if f.order() != g.order() {
        return Err(Error::OrderMismatch { left: f.order(), right: g.order() });
    }
    let order = f.order();
    let mut images = BTreeMap::new();
    for forest in enumerate(order) {
        let mut image = Series::zero(order);
        for (l, r, c) in h.coproduct(&forest, order).terms() {
            let fl = f.image(l);
            let gr = g.image(r);
            for (u, cu) in fl.terms() {
                for (v, cv) in gr.terms() {
                    if u.order() + v.order() > order {
                        continue;
                    }
                    let scale = c * cu * cv;
                    for (w, cw) in h.product_forests(u, v).terms() {
                        image.add_term(w.clone(), cw * &scale);
                    }
                }
            }
        }
        images.insert(forest, image);
    }
    Ok(Endomorphism { order, images })
}

/// Functional precomposition with an endomorphism: (a∘f)(w) = a(f(w)).
pub fn compose_functional(a: &Series, f: &Endomorphism) -> Result<Series> {
    if a.order() != f.order() {
        return Err(Error::OrderMismatch { left: a.order(), right: f.order() });
    }
    let mut out = Series::zero(a.order());
    for (w, image) in &f.images {
        out.add_term(w.clone(), pairing(a, image));
    }
    Ok(out)
}

/// Checks multiplicativity: a(1) = 1 and a(u·v) = a(u)a(v) for the
/// structure's product, over all basis pairs of total order ≤ N.
pub fn is_character(a: &Series, h: HopfStructure) -> bool {
    if !a.coeff(&Forest::empty()).is_one() {
        return false;
    }
    let order = a.order();
    let basis = enumerate(order.saturating_sub(1));
    for u in &basis {
        if u.is_empty() {
            continue;
        }
        for v in &basis {
            if v.is_empty() || u.order() + v.order() > order {
                continue;
            }
            let lhs = pairing(a, &h.product_forests(u, v).with_order(order));
            if lhs != a.coeff(u) * a.coeff(v) {
                return false;
            }
        }
    }
    true
}

/// Checks the derivation-like law: a(1) = 0 and a vanishes on every proper
/// product of the structure, over all basis pairs of total order ≤ N.
pub fn is_infinitesimal_character(a: &Series, h: HopfStructure) -> bool {
    if !a.coeff(&Forest::empty()).is_zero() {
        return false;
    }
    let order = a.order();
    let basis = enumerate(order.saturating_sub(1));
    for u in &basis {
        if u.is_empty() {
            continue;
        }
        for v in &basis {
            if v.is_empty() || u.order() + v.order() > order {
                continue;
            }
            if !pairing(a, &h.product_forests(u, v).with_order(order)).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Convolution logarithm of a functional with a(1) = 1. Grading makes the
/// series finite: the k-th power of (a − ε) vanishes below order k.
pub fn log_star(a: &Series, h: HopfStructure) -> Result<Series> {
    let constant = a.coeff(&Forest::empty());
    if !constant.is_one() {
        return Err(Error::BadConstantTerm { expected: Box::new(Rational::one()), found: Box::new(constant) });
    }
    let x = a.sub(&Series::one(a.order()))?;
    let mut total = Series::zero(a.order());
    let mut power = Series::one(a.order());
    for k in 1..=a.order() {
        power = convolve_functionals(&power, &x, h)?;
        if power.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { Rational::one() } else { -Rational::one() };
        total = total.add(&power.scaled(&(sign / rat_int(k as i64))))?;
    }
    Ok(total)
}

/// Convolution exponential of a functional with a(1) = 0; inverse of
/// [`log_star`].
pub fn exp_star(a: &Series, h: HopfStructure) -> Result<Series> {
    let constant = a.coeff(&Forest::empty());
    if !constant.is_zero() {
        return Err(Error::BadConstantTerm { expected: Box::new(Rational::zero()), found: Box::new(constant) });
    }
    let mut total = Series::one(a.order());
    let mut power = Series::one(a.order());
    for k in 1..=a.order() {
        power = convolve_functionals(&power, a, h)?.scaled(&(Rational::one() / rat_int(k as i64)));
        if power.is_zero() {
            break;
        }
        total = total.add(&power)?;
    }
    Ok(total)
}
