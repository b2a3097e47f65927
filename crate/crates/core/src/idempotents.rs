//! Lie idempotents, noncommutative Bell polynomials, and the bijection
//! between infinitesimal characters and characters.
//!
//! The grading operator used throughout is vertex count, not word length.
//! The two agree on words of single-vertex trees (the classical case), and
//! only the vertex grading makes the flow conversions consistent: the
//! fixed-point construction of the exact-flow series divides by vertex
//! counts, so the Dynkin projection must use the same grading for the
//! round trips to close.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forest::Forest;
use crate::hopf::{antipode_shuffle, convolve_endomorphisms, Endomorphism, HopfStructure};
use crate::rational::{rat_int, Rational};
use crate::series::Series;

/// Grading operator: `w ↦ |w|·w` by vertex count.
pub fn grading_y(order: usize) -> Endomorphism {
    Endomorphism::from_fn(order, |w| {
        Series::basis(order, w).scaled(&rat_int(w.order() as i64))
    })
}

/// Inverse grading on the augmentation ideal: `w ↦ w/|w|`, empty forest to
/// zero.
pub fn grading_y_inverse(order: usize) -> Endomorphism {
    Endomorphism::from_fn(order, |w| {
        if w.is_empty() {
            Series::zero(order)
        } else {
            Series::basis(order, w).scaled(&(Rational::one() / rat_int(w.order() as i64)))
        }
    })
}

/// The Eulerian idempotent: convolution logarithm of the identity in the
/// endomorphism algebra of the shuffle/GL-dual structure,
/// `Σ (−1)^(k+1) J^(∗k) / k` with `J` the augmentation projection.
pub fn eulerian(order: usize) -> Endomorphism {
    let j = Endomorphism::augmentation(order);
    let mut total = Endomorphism::from_fn(order, |_| Series::zero(order));
    let mut power = j.clone();
    for k in 1..=order.max(1) {
        let sign = if k % 2 == 1 { Rational::one() } else { -Rational::one() };
        total = total
            .add(&power.scaled(&(sign / rat_int(k as i64))))
            .expect("orders agree");
        if k < order {
            power = convolve_endomorphisms(&power, &j, HopfStructure::ShuffleDn)
                .expect("orders agree");
        }
    }
    total
}

/// The Dynkin operator: antipode convolved with the grading in the
/// shuffle/deconcatenation structure. Composed with the inverse grading it
/// is an idempotent projection onto Lie elements.
pub fn dynkin(order: usize) -> Endomorphism {
    let s = Endomorphism::from_fn(order, |w| antipode_shuffle(w, order));
    let y = grading_y(order);
    convolve_endomorphisms(&s, &y, HopfStructure::ShuffleDeconcat).expect("orders agree")
}

/// A word in the letters `d_1, d_2, …`, stored as the letter indices.
/// Ordered by weight, then longer words first, then lexicographically;
/// that is the order the polynomials are customarily displayed in.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct BellWord(pub Vec<usize>);

impl BellWord {
    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for BellWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.len().cmp(&self.len()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for BellWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A rational combination of [`BellWord`]s.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BellElement {
    terms: BTreeMap<BellWord, Rational>,
}

impl BellElement {
    pub fn zero() -> Self {
        BellElement::default()
    }

    pub fn unit() -> Self {
        let mut out = BellElement::zero();
        out.add_term(BellWord(Vec::new()), Rational::one());
        out
    }

    pub fn add_term(&mut self, word: BellWord, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(entry) => {
                *entry += coeff;
                if entry.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, coeff);
            }
        }
    }

    pub fn coeff(&self, word: &BellWord) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BellWord, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    /// Restriction to words of the given length.
    pub fn length_part(&self, len: usize) -> BellElement {
        BellElement {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == len)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }
}

/// The noncommutative Bell polynomial `B_n`, by the recursion
/// `B_n = (d_1 + ∂) B_{n−1}` where `∂` raises one letter index at a time.
pub fn bell(n: usize) -> BellElement {
    let mut current = BellElement::unit();
    for _ in 0..n {
        let mut next = BellElement::zero();
        for (word, coeff) in current.terms() {
            let mut prefixed = Vec::with_capacity(word.len() + 1);
            prefixed.push(1);
            prefixed.extend_from_slice(&word.0);
            next.add_term(BellWord(prefixed), coeff.clone());
            for i in 0..word.len() {
                let mut raised = word.0.clone();
                raised[i] += 1;
                next.add_term(BellWord(raised), coeff.clone());
            }
        }
        current = next;
    }
    current
}

/// The length-`k` part `B_{n,k}`.
pub fn bell_part(n: usize, k: usize) -> BellElement {
    bell(n).length_part(k)
}

/// The rescaled polynomial `Q_n`: substitute `d_j ↦ j!·d_j` in `B_n` and
/// divide by `n!`. Its single-letter part is exactly `d_n`.
pub fn q_polynomial(n: usize) -> BellElement {
    let mut n_factorial = Rational::one();
    for i in 1..=n {
        n_factorial *= rat_int(i as i64);
    }
    let mut out = BellElement::zero();
    for (word, coeff) in bell(n).terms() {
        let mut scale = coeff / &n_factorial;
        for &j in &word.0 {
            for i in 1..=j {
                scale *= rat_int(i as i64);
            }
        }
        out.add_term(word.clone(), scale);
    }
    out
}

/// The graded bijection from infinitesimal characters to characters: the
/// order-n component of the result is `Q_n` evaluated with `d_j` as the
/// degree-j component of `gamma` and word concatenation as the
/// concatenation product of series.
pub fn q_operator(gamma: &Series) -> Result<Series> {
    let constant = gamma.coeff(&Forest::empty());
    if !constant.is_zero() {
        return Err(Error::BadConstantTerm { expected: Box::new(Rational::zero()), found: Box::new(constant) });
    }
    let order = gamma.order();
    let components: Vec<Series> = (0..=order).map(|j| gamma.component(j)).collect();
    let mut total = Series::one(order);
    for n in 1..=order {
        for (word, coeff) in q_polynomial(n).terms() {
            let mut product = Series::one(order);
            for &j in &word.0 {
                product = product.concat_mul(&components[j])?;
                if product.is_zero() {
                    break;
                }
            }
            total = total.add(&product.scaled(coeff))?;
        }
    }
    Ok(total)
}

/// Inverse of [`q_operator`] by graded triangular solve: the degree-n
/// component of the argument determines the degree-n component of the
/// result once all lower components are known.
pub fn q_operator_inverse(alpha: &Series) -> Result<Series> {
    let constant = alpha.coeff(&Forest::empty());
    if !constant.is_one() {
        return Err(Error::BadConstantTerm { expected: Box::new(Rational::one()), found: Box::new(constant) });
    }
    let order = alpha.order();
    let mut gamma = Series::zero(order);
    for n in 1..=order {
        let image = q_operator(&gamma)?;
        let defect = alpha.component(n).sub(&image.component(n))?;
        gamma = gamma.add(&defect)?;
    }
    Ok(gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::enumerate;
    use crate::hopf::{
        compose_functional, is_character, is_infinitesimal_character, log_star, pairing,
    };
    use crate::rational::rat;
    use crate::series::Product;

    fn f(word: &str) -> Forest {
        Forest::parse(word).unwrap()
    }

    fn w(indices: &[usize]) -> BellWord {
        BellWord(indices.to_vec())
    }

    #[test]
    fn grading_examples() {
        let y = grading_y(4);
        assert_eq!(y.image(&f("(())")), Series::basis(4, &f("(())")).scaled(&rat_int(2)));
        assert!(y.image(&Forest::empty()).is_zero());
        let y_inv = grading_y_inverse(4);
        assert_eq!(
            y_inv.image(&f("()()()")),
            Series::basis(4, &f("()()()")).scaled(&rat(1, 3))
        );
        assert!(y_inv.image(&Forest::empty()).is_zero());
        // Y⁻¹∘Y = Id on the augmentation ideal.
        let round = y_inv.compose(&y).unwrap();
        for forest in enumerate(4) {
            if !forest.is_empty() {
                assert_eq!(round.image(&forest), Series::basis(4, &forest));
            }
        }
    }

    #[test]
    fn eulerian_examples() {
        let e = eulerian(4);
        assert_eq!(e.image(&f("()")), Series::basis(4, &f("()")));
        assert!(e.image(&Forest::empty()).is_zero());
        let expected = Series::from_terms(
            4,
            [(f("(())"), rat_int(1)), (f("()()"), rat_int(-1))],
        );
        assert_eq!(e.image(&f("(())")), expected);
    }

    #[test]
    fn eulerian_is_idempotent() {
        let e = eulerian(4);
        assert_eq!(e.compose(&e).unwrap(), e);
    }

    #[test]
    fn eulerian_implements_functional_log() {
        let vertex = Series::basis(4, &f("()"));
        let characters = [
            Product::Concatenation.exponential(&vertex).unwrap(),
            Product::GrossmanLarson
                .exponential(&Series::from_terms(
                    4,
                    [(f("()"), rat_int(1)), (f("(())"), rat(-1, 2))],
                ))
                .unwrap(),
        ];
        let e = eulerian(4);
        for a in &characters {
            let via_e = compose_functional(a, &e).unwrap();
            let via_log = log_star(a, HopfStructure::ShuffleDn).unwrap();
            assert_eq!(via_e, via_log);
            assert!(is_infinitesimal_character(&via_e, HopfStructure::ShuffleDn));
        }
    }

    #[test]
    fn dynkin_examples() {
        let d = dynkin(4);
        assert_eq!(d.image(&f("()")), Series::basis(4, &f("()")));
        assert!(d.image(&f("()()")).is_zero());
        // With the vertex grading: 3·w − S(•)⧢Y([•]) = 3 w − 2(•⧢[•]).
        let expected = Series::from_terms(
            4,
            [(f("()(())"), rat_int(1)), (f("(())()"), rat_int(-2))],
        );
        assert_eq!(d.image(&f("()(())")), expected);
    }

    #[test]
    fn dynkin_projection_is_idempotent() {
        let order = 4;
        let projection = grading_y_inverse(order).compose(&dynkin(order)).unwrap();
        let twice = projection.compose(&projection).unwrap();
        for forest in enumerate(order) {
            if forest.is_empty() {
                continue;
            }
            assert_eq!(twice.image(&forest), projection.image(&forest), "{forest}");
        }
    }

    #[test]
    fn bell_examples() {
        assert_eq!(bell(0), BellElement::unit());
        let b1 = bell(1);
        assert_eq!(b1.coeff(&w(&[1])), rat_int(1));
        assert_eq!(b1.support_size(), 1);

        let b3 = bell(3);
        assert_eq!(b3.coeff(&w(&[1, 1, 1])), rat_int(1));
        assert_eq!(b3.coeff(&w(&[1, 2])), rat_int(2));
        assert_eq!(b3.coeff(&w(&[2, 1])), rat_int(1));
        assert_eq!(b3.coeff(&w(&[3])), rat_int(1));
        assert_eq!(b3.support_size(), 4);

        let b4 = bell(4);
        assert_eq!(b4.coeff(&w(&[1, 1, 1, 1])), rat_int(1));
        assert_eq!(b4.coeff(&w(&[1, 1, 2])), rat_int(3));
        assert_eq!(b4.coeff(&w(&[1, 2, 1])), rat_int(2));
        assert_eq!(b4.coeff(&w(&[2, 1, 1])), rat_int(1));
        assert_eq!(b4.coeff(&w(&[1, 3])), rat_int(3));
        assert_eq!(b4.coeff(&w(&[3, 1])), rat_int(1));
        assert_eq!(b4.coeff(&w(&[2, 2])), rat_int(3));
        assert_eq!(b4.coeff(&w(&[4])), rat_int(1));
        assert_eq!(b4.support_size(), 8);

        let b43 = bell_part(4, 3);
        assert_eq!(b43.coeff(&w(&[1, 1, 2])), rat_int(3));
        assert_eq!(b43.coeff(&w(&[1, 2, 1])), rat_int(2));
        assert_eq!(b43.coeff(&w(&[2, 1, 1])), rat_int(1));
        assert_eq!(b43.support_size(), 3);
    }

    #[test]
    fn bell_words_order_for_display() {
        let order: Vec<BellWord> = bell(3).terms().map(|(word, _)| word.clone()).collect();
        assert_eq!(
            order,
            vec![w(&[1, 1, 1]), w(&[1, 2]), w(&[2, 1]), w(&[3])]
        );
    }

    #[test]
    fn q_polynomial_examples() {
        let q1 = q_polynomial(1);
        assert_eq!(q1.coeff(&w(&[1])), rat_int(1));
        let q2 = q_polynomial(2);
        assert_eq!(q2.coeff(&w(&[1, 1])), rat(1, 2));
        assert_eq!(q2.coeff(&w(&[2])), rat_int(1));
        let q3 = q_polynomial(3);
        assert_eq!(q3.coeff(&w(&[1, 1, 1])), rat(1, 6));
        assert_eq!(q3.coeff(&w(&[1, 2])), rat(2, 3));
        assert_eq!(q3.coeff(&w(&[2, 1])), rat(1, 3));
        assert_eq!(q3.coeff(&w(&[3])), rat_int(1));
        // Triangularity: the single-letter part of Q_n is d_n on the nose.
        for n in 1..=6 {
            let part = q_polynomial(n).length_part(1);
            assert_eq!(part.coeff(&w(&[n])), rat_int(1), "n={n}");
            assert_eq!(part.support_size(), 1, "n={n}");
        }
    }

    #[test]
    fn q_operator_examples() {
        let vertex = Series::basis(5, &f("()"));
        assert_eq!(
            q_operator(&vertex).unwrap(),
            Product::Concatenation.exponential(&vertex).unwrap()
        );
        assert_eq!(q_operator(&Series::zero(4)).unwrap(), Series::one(4));
        let gamma = Series::from_terms(4, [(f("()"), rat_int(1)), (f("(())"), rat(1, 2))]);
        let alpha = q_operator(&gamma).unwrap();
        assert_eq!(alpha.coeff(&f("()()")), rat(1, 2));
        assert_eq!(alpha.coeff(&f("(())")), rat(1, 2));
        assert!(is_character(&alpha, HopfStructure::ShuffleDn));
        assert!(matches!(
            q_operator(&Series::one(3)),
            Err(Error::BadConstantTerm { .. })
        ));
    }

    #[test]
    fn q_operator_inverts() {
        let samples = [
            Series::from_terms(4, [(f("()"), rat_int(1)), (f("(())"), rat(1, 2))]),
            Series::from_terms(
                4,
                [
                    (f("()"), rat_int(2)),
                    (f("((()))"), rat(-1, 3)),
                    (f("(()())"), rat(1, 5)),
                ],
            ),
        ];
        for gamma in &samples {
            let alpha = q_operator(gamma).unwrap();
            assert_eq!(q_operator_inverse(&alpha).unwrap(), *gamma);
        }
    }

    #[test]
    fn dynkin_recovers_lie_coefficients() {
        // For the concatenation exponential of a vertex multiple, the
        // composed functional through Y⁻¹∘D picks out the original letter.
        let order = 4;
        let vertex = Series::basis(order, &f("()"));
        let alpha = Product::Concatenation.exponential(&vertex).unwrap();
        let projection = grading_y_inverse(order).compose(&dynkin(order)).unwrap();
        let gamma = compose_functional(&alpha, &projection).unwrap();
        assert_eq!(gamma, vertex);
        assert_eq!(pairing(&alpha, &projection.image(&f("()()"))), rat_int(0));
    }
}
