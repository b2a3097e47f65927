//! Truncated series with exact rational coefficients over the forest basis.
//!
//! A [`Series`] is a finitely supported map from forests to rationals
//! together with a truncation order. Every term of order above the
//! truncation is dropped on construction and after every operation, so a
//! series is always a well-defined element of the order-`N` quotient.
//! Binary operations insist that both operands carry the same truncation
//! order and fail with [`Error::OrderMismatch`] otherwise; silently mixing
//! truncations is how wrong coefficients sneak in.
//!
//! Four graded products are provided. Concatenation and the shuffle are
//! defined on words directly. Left grafting `a.graft(&b)` sums over all
//! ways of attaching the trees of `a` below vertices of `b` (leftmost slot
//! first), and the Grossman-Larson product is its unital companion,
//! `B- (a graft B+(b))`. Exponentials and logarithms are available for the
//! two associative unital products via [`Product`].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forest::{Forest, Tree};
use crate::rational::{rat_int, Rational};

/// A rational linear combination of forests, truncated at a fixed order.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    order: usize,
    terms: BTreeMap<Forest, Rational>,
}

impl Series {
    /// The zero series at the given truncation order.
    pub fn zero(order: usize) -> Self {
        Series { order, terms: BTreeMap::new() }
    }

    /// The unit series: coefficient 1 on the empty forest.
    pub fn one(order: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Forest::empty(), Rational::one());
        Series { order, terms }
    }

    /// A single basis forest with coefficient 1. Terms above the truncation
    /// order vanish, consistent with working in the quotient.
    pub fn basis(order: usize, forest: &Forest) -> Self {
        let mut series = Series::zero(order);
        series.add_term(forest.clone(), Rational::one());
        series
    }

    /// Builds a series from `(forest, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(order: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Forest, Rational)>,
    {
        let mut series = Series::zero(order);
        for (forest, coeff) in terms {
            series.add_term(forest, coeff);
        }
        series
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term iteration in canonical (graded lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Forest, &Rational)> {
        self.terms.iter()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    /// The coefficient of a forest (zero when absent).
    pub fn coeff(&self, forest: &Forest) -> Rational {
        self.terms.get(forest).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `coeff * forest`, respecting truncation and pruning zeros.
    pub fn add_term(&mut self, forest: Forest, coeff: Rational) {
        if coeff.is_zero() || forest.order() > self.order {
            return;
        }
        match self.terms.get_mut(&forest) {
            Some(entry) => {
                *entry += coeff;
                if entry.is_zero() {
                    self.terms.remove(&forest);
                }
            }
            None => {
                self.terms.insert(forest, coeff);
            }
        }
    }

    fn require_same_order(&self, other: &Series) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch { left: self.order, right: other.order })
        }
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.require_same_order(other)?;
        let mut out = self.clone();
        for (forest, coeff) in other.terms() {
            out.add_term(forest.clone(), coeff.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.negated())
    }

    pub fn negated(&self) -> Series {
        self.scaled(&-Rational::one())
    }

    pub fn scaled(&self, factor: &Rational) -> Series {
        if factor.is_zero() {
            return Series::zero(self.order);
        }
        Series {
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(f, c)| (f.clone(), c * factor))
                .collect(),
        }
    }

    /// The homogeneous component of exact order `n`.
    pub fn component(&self, n: usize) -> Series {
        Series {
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(f, _)| f.order() == n)
                .map(|(f, c)| (f.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest order carrying a nonzero term (zero series reports 0).
    pub fn max_term_order(&self) -> usize {
        self.terms.keys().map(Forest::order).max().unwrap_or(0)
    }

    /// Reinterprets the series at a different truncation order, dropping
    /// terms that no longer fit.
    pub fn with_order(&self, order: usize) -> Series {
        let mut out = Series::zero(order);
        for (forest, coeff) in self.terms() {
            out.add_term(forest.clone(), coeff.clone());
        }
        out
    }

    /// Linear extension of a basis map. The image series all share this
    /// series' truncation order.
    pub fn map_basis<F>(&self, mut f: F) -> Series
    where
        F: FnMut(&Forest) -> Series,
    {
        let mut out = Series::zero(self.order);
        for (forest, coeff) in self.terms() {
            let image = f(forest);
            for (g, c) in image.terms() {
                out.add_term(g.clone(), coeff * c);
            }
        }
        out
    }

    /// Lifts `B+` linearly: every basis forest gains a fresh root.
    pub fn b_plus_linear(&self) -> Series {
        let mut out = Series::zero(self.order);
        for (forest, coeff) in self.terms() {
            out.add_term(forest.b_plus().into_forest(), coeff.clone());
        }
        out
    }

    /// Bilinear extension of a graded basis product. Pairs whose combined
    /// order exceeds the truncation are skipped outright, which is sound
    /// because every product here is graded.
    fn bilinear<F>(&self, other: &Series, mut f: F) -> Result<Series>
    where
        F: FnMut(&Forest, &Forest) -> Series,
    {
        self.require_same_order(other)?;
        let mut out = Series::zero(self.order);
        for (u, cu) in self.terms() {
            for (v, cv) in other.terms() {
                if u.order() + v.order() > self.order {
                    continue;
                }
                let image = f(u, v);
                let scale = cu * cv;
                for (g, c) in image.terms() {
                    out.add_term(g.clone(), c * &scale);
                }
            }
        }
        Ok(out)
    }

    /// Concatenation product (free associative, noncommutative).
    pub fn concat_mul(&self, other: &Series) -> Result<Series> {
        self.bilinear(other, |u, v| {
            Series::basis(self.order, &u.concat(v))
        })
    }

    /// Shuffle product (associative, commutative).
    pub fn shuffle_mul(&self, other: &Series) -> Result<Series> {
        self.bilinear(other, |u, v| shuffle_forests(u, v).with_order(self.order))
    }

    /// Left grafting. Not associative; it is a derivation in its right
    /// argument and pre-Lie-like through the composition identity tested
    /// below.
    pub fn graft(&self, other: &Series) -> Result<Series> {
        self.bilinear(other, |u, v| graft_forests(u, v).with_order(self.order))
    }

    /// Grossman-Larson product.
    pub fn gl_mul(&self, other: &Series) -> Result<Series> {
        self.bilinear(other, |u, v| gl_forests(u, v).with_order(self.order))
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series(order {}; ", self.order)?;
        let mut first = true;
        for (forest, coeff) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{coeff} {forest}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

/// Shuffle of two words as an exact series of order `a.order() + b.order()`.
pub fn shuffle_forests(a: &Forest, b: &Forest) -> Series {
    let order = a.order() + b.order();
    let mut out = Series::zero(order);
    shuffle_into(a, b, &mut out, &Rational::one());
    out
}

fn shuffle_into(a: &Forest, b: &Forest, out: &mut Series, scale: &Rational) {
    match (a.split_first_tree(), b.split_first_tree()) {
        (None, _) => out.add_term(b.clone(), scale.clone()),
        (_, None) => out.add_term(a.clone(), scale.clone()),
        (Some((ta, ra)), Some((tb, rb))) => {
            for (word, coeff) in shuffle_forests(&ra, b).terms() {
                out.add_term(ta.as_forest().concat(word), coeff * scale);
            }
            for (word, coeff) in shuffle_forests(a, &rb).terms() {
                out.add_term(tb.as_forest().concat(word), coeff * scale);
            }
        }
    }
}

/// Left grafting of `a` into `b` as an exact series of order
/// `a.order() + b.order()`.
///
/// Rules, in the order they apply:
/// - the empty forest acts as the identity;
/// - a single tree acts on a single tree `B+(v)` by attaching as the new
///   leftmost child of the root plus recursing into `v`;
/// - a single tree acts on a longer forest as a derivation over its trees;
/// - a longer forest `t.r` acts through the composition
///   `t graft (r graft w) - (t graft r) graft w`.
pub fn graft_forests(a: &Forest, b: &Forest) -> Series {
    let order = a.order() + b.order();
    if a.is_empty() {
        return Series::basis(order, b);
    }
    let (first, rest) = a.split_first_tree().expect("nonempty forest");
    if rest.is_empty() {
        graft_tree(&first, b)
    } else {
        // rest graft b, then first graft that, minus the correction term.
        let inner = graft_forests(&rest, b).with_order(order);
        let direct = inner.map_basis(|w| graft_tree(&first, w).with_order(order));
        let twisted = graft_tree(&first, &rest).with_order(order);
        let correction = twisted.map_basis(|w| graft_forests(w, b).with_order(order));
        direct.sub(&correction).expect("orders agree by construction")
    }
}

fn graft_tree(tree: &Tree, target: &Forest) -> Series {
    let order = tree.order() + target.order();
    let mut out = Series::zero(order);
    match target.split_first_tree() {
        None => {}
        Some((head, rest)) if rest.is_empty() => {
            // Attach as the new leftmost child of the root of `head`, or
            // graft deeper into the child forest.
            let below = head.b_minus();
            out.add_term(
                tree.as_forest().concat(&below).b_plus().into_forest(),
                Rational::one(),
            );
            for (word, coeff) in graft_tree(tree, &below).terms() {
                out.add_term(word.b_plus().into_forest(), coeff.clone());
            }
        }
        Some((head, rest)) => {
            for (word, coeff) in graft_tree(tree, head.as_forest()).terms() {
                out.add_term(word.concat(&rest), coeff.clone());
            }
            for (word, coeff) in graft_tree(tree, &rest).terms() {
                out.add_term(head.as_forest().concat(word), coeff.clone());
            }
        }
    }
    out
}

/// Grossman-Larson product of two basis forests:
/// `B- (a graft B+(b))`, exact at order `a.order() + b.order()`.
pub fn gl_forests(a: &Forest, b: &Forest) -> Series {
    let raised = a.order() + b.order() + 1;
    let grafted = graft_forests(a, b.b_plus().as_forest()).with_order(raised);
    let mut out = Series::zero(a.order() + b.order());
    for (word, coeff) in grafted.terms() {
        let tree = word
            .to_tree()
            .expect("grafting into a tree yields trees");
        out.add_term(tree.b_minus(), coeff.clone());
    }
    out
}

/// The two associative unital products that admit exp and log.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Product {
    Concatenation,
    GrossmanLarson,
}

impl Product {
    pub fn multiply(self, a: &Series, b: &Series) -> Result<Series> {
        match self {
            Product::Concatenation => a.concat_mul(b),
            Product::GrossmanLarson => a.gl_mul(b),
        }
    }

    pub fn commutator(self, a: &Series, b: &Series) -> Result<Series> {
        self.multiply(a, b)?.sub(&self.multiply(b, a)?)
    }

    /// `exp` of a series with zero constant term. The sum terminates at the
    /// truncation order because the argument raises order with every power.
    pub fn exponential(self, a: &Series) -> Result<Series> {
        let constant = a.coeff(&Forest::empty());
        if !constant.is_zero() {
            return Err(Error::BadConstantTerm {
                expected: Box::new(Rational::zero()),
                found: Box::new(constant),
            });
        }
        let mut total = Series::one(a.order());
        let mut power = Series::one(a.order());
        for k in 1..=a.order() {
            power = self.multiply(&power, a)?.scaled(&(Rational::one() / rat_int(k as i64)));
            if power.is_zero() {
                break;
            }
            total = total.add(&power)?;
        }
        Ok(total)
    }

    /// `log` of a series with constant term 1.
    pub fn logarithm(self, a: &Series) -> Result<Series> {
        let constant = a.coeff(&Forest::empty());
        if !constant.is_one() {
            return Err(Error::BadConstantTerm {
                expected: Box::new(Rational::one()),
                found: Box::new(constant),
            });
        }
        let x = a.sub(&Series::one(a.order()))?;
        let mut total = Series::zero(a.order());
        let mut power = Series::one(a.order());
        for k in 1..=a.order() {
            power = self.multiply(&power, &x)?;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { Rational::one() } else { -Rational::one() };
            total = total.add(&power.scaled(&(sign / rat_int(k as i64))))?;
        }
        Ok(total)
    }
}

/// True when every coefficient of `a` equals the matching coefficient of
/// `b` on forests of order at most `upto` (orders may differ).
pub fn agree_up_to(a: &Series, b: &Series, upto: usize) -> bool {
    let keys: std::collections::BTreeSet<&Forest> = a
        .terms()
        .map(|(f, _)| f)
        .chain(b.terms().map(|(f, _)| f))
        .filter(|f| f.order() <= upto)
        .collect();
    keys.into_iter().all(|f| a.coeff(f) == b.coeff(f))
}

/// Sum of absolute values of coefficient differences up to the smaller
/// truncation order. Zero iff the series agree there.
pub fn distance(a: &Series, b: &Series) -> Rational {
    let upto = a.order().min(b.order());
    let keys: std::collections::BTreeSet<&Forest> = a
        .terms()
        .map(|(f, _)| f)
        .chain(b.terms().map(|(f, _)| f))
        .filter(|f| f.order() <= upto)
        .collect();
    keys.into_iter()
        .map(|f| (a.coeff(f) - b.coeff(f)).abs())
        .fold(Rational::zero(), |acc, d| acc + d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::enumerate;
    use crate::rational::rat;

    fn f(word: &str) -> Forest {
        Forest::parse(word).unwrap()
    }

    fn s(order: usize, terms: &[(&str, Rational)]) -> Series {
        Series::from_terms(
            order,
            terms.iter().map(|(w, c)| (f(w), c.clone())),
        )
    }

    #[test]
    fn arithmetic_basics() {
        let a = s(3, &[("()", rat_int(2)), ("(())", rat(1, 2))]);
        let b = s(3, &[("()", rat_int(-2)), ("()()", rat_int(1))]);
        let sum = a.add(&b).unwrap();
        assert_eq!(sum, s(3, &[("(())", rat(1, 2)), ("()()", rat_int(1))]));
        assert!(a.sub(&a).unwrap().is_zero());
        assert!(matches!(
            a.add(&Series::zero(4)),
            Err(Error::OrderMismatch { left: 3, right: 4 })
        ));
        assert_eq!(a.coeff(&f("()")), rat_int(2));
        assert_eq!(a.coeff(&f("((()))")), rat_int(0));
    }

    #[test]
    fn truncation_drops_high_terms() {
        let a = s(2, &[("((()))", rat_int(7)), ("()", rat_int(1))]);
        assert_eq!(a.support_size(), 1);
        let raised = a.with_order(5);
        assert_eq!(raised.order(), 5);
        assert_eq!(raised.coeff(&f("()")), rat_int(1));
    }

    #[test]
    fn concat_product_matches_words() {
        let a = Series::basis(4, &f("()"));
        let b = Series::basis(4, &f("(())"));
        assert_eq!(a.concat_mul(&b).unwrap(), Series::basis(4, &f("()(())")));
        let one = Series::one(4);
        assert_eq!(one.concat_mul(&a).unwrap(), a);
        assert_eq!(a.concat_mul(&one).unwrap(), a);
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(
            shuffle_forests(&f("()"), &f("()")),
            s(2, &[("()()", rat_int(2))])
        );
        assert_eq!(
            shuffle_forests(&f("()"), &f("(())")),
            s(3, &[("()(())", rat_int(1)), ("(())()", rat_int(1))])
        );
        // Unit and commutativity on a longer pair.
        assert_eq!(shuffle_forests(&Forest::empty(), &f("()(())")).coeff(&f("()(())")), rat_int(1));
        assert_eq!(
            shuffle_forests(&f("()()"), &f("(())")),
            shuffle_forests(&f("(())"), &f("()()"))
        );
    }

    #[test]
    fn shuffle_is_associative() {
        let words = ["()", "(())", "()()"];
        for a in &words {
            for b in &words {
                for c in &words {
                    let (fa, fb, fc) = (f(a), f(b), f(c));
                    let order = fa.order() + fb.order() + fc.order();
                    let left = shuffle_forests(&fa, &fb)
                        .with_order(order)
                        .map_basis(|w| shuffle_forests(w, &fc).with_order(order));
                    let right = shuffle_forests(&fb, &fc)
                        .with_order(order)
                        .map_basis(|w| shuffle_forests(&fa, w).with_order(order));
                    assert_eq!(left, right, "({a}, {b}, {c})");
                }
            }
        }
    }

    #[test]
    fn grafting_examples() {
        // Single vertex into the empty forest: nothing to attach to.
        assert!(graft_forests(&f("()"), &Forest::empty()).is_zero());
        // Empty forest acts as the identity.
        assert_eq!(
            graft_forests(&Forest::empty(), &f("(())")),
            Series::basis(2, &f("(())"))
        );
        assert_eq!(graft_forests(&f("()"), &f("()")), s(2, &[("(())", rat_int(1))]));
        assert_eq!(
            graft_forests(&f("()"), &f("(())")),
            s(3, &[("(()())", rat_int(1)), ("((()))", rat_int(1))])
        );
        assert_eq!(
            graft_forests(&f("()()"), &f("(())")),
            s(
                4,
                &[
                    ("(()()())", rat_int(1)),
                    ("(()(()))", rat_int(2)),
                    ("((()()))", rat_int(1)),
                ]
            )
        );
        // Derivation over a two-tree target.
        assert_eq!(
            graft_forests(&f("()"), &f("()()")),
            s(3, &[("(())()", rat_int(1)), ("()(())", rat_int(1))])
        );
    }

    #[test]
    fn grafting_counts_attachment_sites() {
        // Grafting one vertex into a forest yields one term per vertex plus
        // one per top-level slot of each tree; total coefficient mass equals
        // the vertex count of the target.
        for target in enumerate(4) {
            let image = graft_forests(&f("()"), &target);
            let mass: Rational = image
                .terms()
                .map(|(_, c)| c.clone())
                .fold(Rational::zero(), |a, b| a + b);
            assert_eq!(mass, rat_int(target.order() as i64), "target {target}");
        }
    }

    #[test]
    fn gl_examples() {
        assert_eq!(
            gl_forests(&f("()"), &f("()")),
            s(2, &[("()()", rat_int(1)), ("(())", rat_int(1))])
        );
        assert_eq!(
            gl_forests(&f("()"), &f("()()")),
            s(
                3,
                &[
                    ("()()()", rat_int(1)),
                    ("(())()", rat_int(1)),
                    ("()(())", rat_int(1)),
                ]
            )
        );
        assert_eq!(
            gl_forests(&f("()"), &f("(())")),
            s(
                3,
                &[
                    ("()(())", rat_int(1)),
                    ("(()())", rat_int(1)),
                    ("((()))", rat_int(1)),
                ]
            )
        );
        assert_eq!(
            gl_forests(&f("(())"), &f("(())")),
            s(
                4,
                &[
                    ("(())(())", rat_int(1)),
                    ("((())())", rat_int(1)),
                    ("(((())))", rat_int(1)),
                ]
            )
        );
        assert_eq!(
            gl_forests(&f("()()"), &f("()")),
            s(
                3,
                &[
                    ("()()()", rat_int(1)),
                    ("()(())", rat_int(2)),
                    ("(()())", rat_int(1)),
                ]
            )
        );
        assert_eq!(
            gl_forests(&f("(())"), &f("()")),
            s(3, &[("(())()", rat_int(1)), ("((()))", rat_int(1))])
        );
    }

    #[test]
    fn gl_is_associative_and_unital() {
        let order = 5;
        let one = Series::one(order);
        let samples = [
            s(order, &[("()", rat_int(1)), ("(())", rat(1, 2))]),
            s(order, &[("()()", rat_int(1)), ("()", rat_int(-1))]),
            s(order, &[("(())", rat(2, 3)), ("((()))", rat_int(1))]),
        ];
        for a in &samples {
            assert_eq!(Product::GrossmanLarson.multiply(&one, a).unwrap(), *a);
            assert_eq!(Product::GrossmanLarson.multiply(a, &one).unwrap(), *a);
            for b in &samples {
                for c in &samples {
                    let ab = a.gl_mul(b).unwrap();
                    let bc = b.gl_mul(c).unwrap();
                    assert_eq!(ab.gl_mul(c).unwrap(), a.gl_mul(&bc).unwrap());
                }
            }
        }
    }

    #[test]
    fn grafting_composition_identity() {
        // For a single tree t and forests r, c:
        //   t graft (r graft c) = (t.r) graft c + (t graft r) graft c.
        // The planar associator is not symmetric (this is not a pre-Lie
        // product); this composition law is what holds instead.
        let order = 7;
        let trees = ["()", "(())", "(()())"];
        let forests = ["()", "()()", "(())"];
        let c = Series::basis(order, &f("(())"));
        for t in &trees {
            for r in &forests {
                let st = Series::basis(order, &f(t));
                let sr = Series::basis(order, &f(r));
                let lhs = st.graft(&sr.graft(&c).unwrap()).unwrap();
                let concat_part = Series::basis(order, &f(t).concat(&f(r)))
                    .graft(&c)
                    .unwrap();
                let graft_part = st.graft(&sr).unwrap().graft(&c).unwrap();
                assert_eq!(lhs, concat_part.add(&graft_part).unwrap(), "({t}, {r})");
            }
        }
    }

    #[test]
    fn grafting_is_a_derivation_in_the_target() {
        // a graft (u v) = (a graft u) v + u (a graft v) for single trees a.
        let a = f("(())");
        let u = f("(())");
        let v = f("()()");
        let order = a.order() + u.order() + v.order();
        let whole = graft_forests(&a, &u.concat(&v));
        let left = graft_forests(&a, &u)
            .with_order(order)
            .map_basis(|w| Series::basis(order, &w.concat(&v)));
        let right = graft_forests(&a, &v)
            .with_order(order)
            .map_basis(|w| Series::basis(order, &u.concat(w)));
        assert_eq!(whole, left.add(&right).unwrap());
    }

    #[test]
    fn exp_log_concatenation_round_trip() {
        let x = s(4, &[("()", rat_int(1)), ("(())", rat(-1, 3))]);
        let e = Product::Concatenation.exponential(&x).unwrap();
        assert_eq!(e.coeff(&Forest::empty()), rat_int(1));
        assert_eq!(e.coeff(&f("()()")), rat(1, 2));
        let back = Product::Concatenation.logarithm(&e).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn exp_log_grossman_larson_round_trip() {
        let x = s(4, &[("()", rat_int(1)), ("()()", rat(1, 5))]);
        let e = Product::GrossmanLarson.exponential(&x).unwrap();
        let back = Product::GrossmanLarson.logarithm(&e).unwrap();
        assert_eq!(back, x);
        // exp over GL of the single vertex starts 1 + () + (()()+(())) / 2.
        let vertex = Series::basis(3, &f("()"));
        let flow = Product::GrossmanLarson.exponential(&vertex).unwrap();
        assert_eq!(flow.coeff(&f("(())")), rat(1, 2));
        assert_eq!(flow.coeff(&f("()()")), rat(1, 2));
        assert_eq!(flow.coeff(&f("((()))")), rat(1, 6));
    }

    #[test]
    fn exp_rejects_constant_term() {
        let bad = Series::one(3);
        assert!(matches!(
            Product::Concatenation.exponential(&bad),
            Err(Error::BadConstantTerm { .. })
        ));
        let bad_log = Series::zero(3);
        assert!(matches!(
            Product::GrossmanLarson.logarithm(&bad_log),
            Err(Error::BadConstantTerm { .. })
        ));
    }

    #[test]
    fn agreement_and_distance() {
        let a = s(4, &[("()", rat_int(1)), ("((()))", rat(1, 6))]);
        let b = s(4, &[("()", rat_int(1)), ("((()))", rat(1, 3))]);
        assert!(agree_up_to(&a, &b, 2));
        assert!(!agree_up_to(&a, &b, 3));
        assert_eq!(distance(&a, &b), rat(1, 6));
    }
}
