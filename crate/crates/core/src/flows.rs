//! Flow representations and backward error analysis.
//!
//! A flow (exact or numerical) is encoded in one of three equivalent ways:
//! a pullback character on the planar-forest Hopf algebra (TYPE1), the
//! autonomous modified vector field whose exact flow it is (TYPE2), or the
//! frozen-coefficient field of the equivalent equation of Lie type (TYPE3).
//! This module provides the conversions among them, the built-in method
//! series, and the backward-error map.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forest::{Forest, Tree};
use crate::hopf::{compose_functional, is_character, is_infinitesimal_character, HopfStructure};
use crate::idempotents::{dynkin, eulerian, grading_y_inverse, q_operator, q_operator_inverse};
use crate::rational::{rat, rat_int, Rational};
use crate::series::{Product, Series};

/// The three encodings of a flow.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FlowRepresentation {
    /// Pullback character: group-like for the shuffle/GL-dual structure.
    Type1,
    /// Modified vector field: infinitesimal character (Lie series).
    Type2,
    /// Lie-type coefficient series: vanishes on the empty forest.
    Type3,
}

fn validate(s: &Series, repr: FlowRepresentation) -> Result<()> {
    match repr {
        FlowRepresentation::Type1 => {
            if !is_character(s, HopfStructure::ShuffleDn) {
                return Err(Error::BadRepresentation("TYPE1 value is not a character"));
            }
        }
        FlowRepresentation::Type2 => {
            if !is_infinitesimal_character(s, HopfStructure::ShuffleDn) {
                return Err(Error::BadRepresentation(
                    "TYPE2 value is not an infinitesimal character",
                ));
            }
        }
        FlowRepresentation::Type3 => {
            if !s.coeff(&Forest::empty()).is_zero() {
                return Err(Error::BadRepresentation(
                    "TYPE3 value must vanish on the empty forest",
                ));
            }
        }
    }
    Ok(())
}

fn to_type1(s: &Series, from: FlowRepresentation) -> Result<Series> {
    match from {
        FlowRepresentation::Type1 => Ok(s.clone()),
        FlowRepresentation::Type2 => Product::GrossmanLarson.exponential(s),
        FlowRepresentation::Type3 => q_operator(s),
    }
}

fn from_type1(alpha: &Series, to: FlowRepresentation) -> Result<Series> {
    let order = alpha.order();
    match to {
        FlowRepresentation::Type1 => Ok(alpha.clone()),
        FlowRepresentation::Type2 => compose_functional(alpha, &eulerian(order)),
        FlowRepresentation::Type3 => {
            let projection = grading_y_inverse(order).compose(&dynkin(order))?;
            compose_functional(alpha, &projection)
        }
    }
}

/// Convert a flow series between representations. The input is validated
/// against the `from` invariant; conversions between TYPE2 and TYPE3 pass
/// through the character form.
pub fn convert(s: &Series, from: FlowRepresentation, to: FlowRepresentation) -> Result<Series> {
    validate(s, from)?;
    let alpha = to_type1(s, from)?;
    from_type1(&alpha, to)
}

/// The TYPE3 series of the exact flow, computed by graded fixed-point
/// iteration of `γ = Y⁻¹ B⁺(Q(γ))` starting from zero; degree n is stable
/// after n rounds.
pub fn gamma_exact(order: usize) -> Series {
    let mut gamma = Series::zero(order);
    for _ in 0..order {
        let alpha = q_operator(&gamma).expect("iterate stays infinitesimal");
        let mut next = Series::zero(order);
        for (w, c) in alpha.b_plus_linear().terms() {
            next.add_term(w.clone(), c / rat_int(w.order() as i64));
        }
        gamma = next;
    }
    gamma
}

/// The TYPE1 character of the exact flow, `Q(γ_Exact)`; equal to the GL
/// exponential of the single vertex.
pub fn alpha_exact(order: usize) -> Series {
    q_operator(&gamma_exact(order)).expect("gamma_exact is infinitesimal")
}

/// The TYPE1 character of the exponential Euler method: the concatenation
/// exponential of the single vertex.
pub fn method_euler(order: usize) -> Series {
    Product::Concatenation
        .exponential(&Series::basis(order, &Forest::vertex()))
        .expect("vertex has no constant term")
}

fn midpoint_tree_weight(tree: &Tree) -> Rational {
    let children = tree.children();
    let mut weight = Rational::one();
    for (i, child) in children.iter().enumerate() {
        weight *= midpoint_tree_weight(child) * rat(1, 2) / rat_int((i + 1) as i64);
    }
    weight
}

/// The implicit-midpoint ansatz coefficients: a Lie series supported on
/// single trees, determined by the recursion that weights a tree with j
/// root branches by `1/(2^j j!)` times the weights of the branches.
pub fn method_midpoint(order: usize) -> Series {
    let mut out = Series::zero(order);
    for n in 1..=order {
        for tree in crate::forest::trees_of_order(n) {
            out.add_term(tree.as_forest().clone(), midpoint_tree_weight(&tree));
        }
    }
    out
}

/// The TYPE1 character of the implicit midpoint method: the concatenation
/// exponential of the ansatz series, matching the form of the Euler
/// character (one step is the exponential of a frozen Lie element).
pub fn midpoint_character(order: usize) -> Series {
    Product::Concatenation
        .exponential(&method_midpoint(order))
        .expect("ansatz has no constant term")
}

/// Backward error analysis: the modified vector field of a method given by
/// its TYPE1 character, computed through the Eulerian idempotent.
pub fn backward_error(alpha: &Series) -> Result<Series> {
    validate(alpha, FlowRepresentation::Type1)?;
    compose_functional(alpha, &eulerian(alpha.order()))
}

/// Inverse of [`gamma_exact`]'s defining map on characters, used as a
/// cross-check: recovers the TYPE3 series from a TYPE1 character by the
/// triangular inversion of the Q-operator.
pub fn type3_by_q_inversion(alpha: &Series) -> Result<Series> {
    q_operator_inverse(alpha)
}
