//! Seeded pseudorandom characters for property tests: reproducible
//! rational-coefficient Lie elements and their exponentials.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::forest::trees_of_order;
use crate::rational::{rat, Rational};
use crate::series::{Product, Series};

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    let numerator = if rng.gen() { rng.gen_range(1..=9) } else { rng.gen_range(-9..=-1) };
    rat(numerator, rng.gen_range(1..=5))
}

/// A spanning set for the Lie elements of each degree up to `order`:
/// single trees together with concatenation commutators of lower Lie
/// elements with trees (left-normed brackets suffice to span).
fn lie_spanning_sets(order: usize) -> Vec<Vec<Series>> {
    let mut sets: Vec<Vec<Series>> = vec![Vec::new(); order + 1];
    for m in 1..=order {
        let mut degree: Vec<Series> = trees_of_order(m)
            .into_iter()
            .map(|t| Series::basis(order, t.as_forest()))
            .collect();
        for j in 1..m {
            for tau in trees_of_order(j) {
                let tau_series = Series::basis(order, tau.as_forest());
                let lower = sets[m - j].clone();
                for x in lower {
                    let bracket = Product::Concatenation
                        .commutator(&x, &tau_series)
                        .expect("orders agree");
                    degree.push(bracket);
                }
            }
        }
        sets[m] = degree;
    }
    sets
}

/// A reproducible pseudorandom infinitesimal character: a rational linear
/// combination of Lie spanning elements through the given order, with a
/// guaranteed nonzero coefficient on the single vertex.
pub fn random_infinitesimal_character(order: usize, seed: u64) -> Series {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Series::zero(order);
    for (m, degree) in lie_spanning_sets(order).into_iter().enumerate() {
        for element in degree {
            let coeff =
                if m == 1 { nonzero_rational(&mut rng) } else { random_rational(&mut rng) };
            out = out.add(&element.scaled(&coeff)).expect("orders agree");
        }
    }
    out
}

/// A reproducible pseudorandom character: the GL exponential of a random
/// infinitesimal character.
pub fn random_character(order: usize, seed: u64) -> Series {
    Product::GrossmanLarson
        .exponential(&random_infinitesimal_character(order, seed))
        .expect("no constant term")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::Forest;
    use crate::hopf::{is_character, is_infinitesimal_character, HopfStructure};
    use num_traits::Zero;

    #[test]
    fn samples_are_infinitesimal_and_deterministic() {
        for seed in [0, 1, 7, 42] {
            let a = random_infinitesimal_character(4, seed);
            assert!(is_infinitesimal_character(&a, HopfStructure::ShuffleDn), "seed {seed}");
            assert!(!a.coeff(&Forest::vertex()).is_zero(), "seed {seed}");
            assert_eq!(a, random_infinitesimal_character(4, seed));
        }
        assert_ne!(
            random_infinitesimal_character(4, 1),
            random_infinitesimal_character(4, 2)
        );
    }

    #[test]
    fn exponentials_are_characters() {
        for seed in [3, 11] {
            let g = random_character(4, seed);
            assert!(is_character(&g, HopfStructure::ShuffleDn), "seed {seed}");
        }
    }
}
