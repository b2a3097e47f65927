//! A diagnostic battery shared by the CLI `selftest` subcommand and the
//! acceptance suite. Each check is a standalone function returning a short
//! summary on success or an explanation on failure; `run_selftest` times
//! and collects all of them.
//!
//! Checks sweep the truncated forest basis exhaustively. Structural sweeps
//! run at the requested order; checks bounded by reference fixtures or by
//! quartic cost clamp themselves (tables at four, the exact-flow series at
//! five, substitution batteries at four). Orders past six get expensive.

use std::collections::HashMap;
use std::time::Instant;

use num_traits::Zero;

use crate::flows::{
    alpha_exact, backward_error, convert, gamma_exact, method_euler, midpoint_character,
    FlowRepresentation,
};
use crate::forest::{forests_of_order, trees_of_order, Forest};
use crate::golden;
use crate::hopf::{
    compose_functional, convolve_functionals, coproduct_dn, exp_star, is_character, log_star,
    Endomorphism, HopfStructure,
};
use crate::idempotents::{
    bell, bell_part, dynkin, eulerian, grading_y_inverse, q_operator, BellElement, BellWord,
};
use crate::rational::rat_int;
use crate::sampling::{random_character, random_infinitesimal_character};
use crate::series::{gl_forests, graft_forests, shuffle_forests, Product, Series};
use crate::substitution::{substitute, substitute_dual, substitute_forest};

/// Outcome of one named check.
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    pub millis: u128,
    pub detail: String,
}

type Outcome = std::result::Result<String, String>;

type CheckFn = fn(usize, u64) -> Outcome;

const CHECKS: &[(&str, CheckFn)] = &[
    ("enumeration-counts", |o, _| check_enumeration(o)),
    ("dn-coproduct-table", |o, _| check_coproduct_table(o)),
    ("dn-coproduct-routes", |o, _| check_coproduct_routes(o)),
    ("dual-substitution-table", check_dual_substitution_table),
    ("exact-flow-golden", |o, _| check_exact_flow_golden(o)),
    ("euler-backward-error", |o, _| check_euler_backward_error(o)),
    ("bell-polynomials", |_, _| check_bell_polynomials()),
    ("dn-coassociativity", |o, _| check_coassociativity(o)),
    ("gl-duality", |o, _| check_gl_duality(o)),
    ("pruning-duality", |o, _| check_pruning_duality(o)),
    ("substitution-adjointness", check_substitution_adjointness),
    ("substitution-hom-laws", check_substitution_hom_laws),
    ("dual-shuffle-character", check_dual_shuffle_character),
    ("eulerian-idempotent", |o, _| check_eulerian_idempotent(o)),
    ("dynkin-idempotent", |o, _| check_dynkin_idempotent(o)),
    ("log-exp-inversion", check_log_exp_inversion),
    ("character-closure", check_character_closure),
    ("exact-flow-three-way", |o, _| check_exact_flow_three_way(o)),
    ("bea-reconstruction", |o, _| check_bea_reconstruction(o)),
];

/// Runs every check at the given truncation order and seed.
pub fn run_selftest(order: usize, seed: u64) -> Vec<CheckReport> {
    CHECKS
        .iter()
        .map(|&(name, check)| {
            let start = Instant::now();
            let outcome = check(order, seed);
            let millis = start.elapsed().as_millis();
            match outcome {
                Ok(detail) => CheckReport { name, passed: true, millis, detail },
                Err(detail) => CheckReport { name, passed: false, millis, detail },
            }
        })
        .collect()
}

fn err<T: std::fmt::Display>(context: &str) -> impl Fn(T) -> String + '_ {
    move |e| format!("{context}: {e}")
}

/// Forest counts per order follow the Catalan numbers, and the reference
/// coproduct table has matching row counts.
pub fn check_enumeration(order: usize) -> Outcome {
    let top = order.min(6);
    let mut catalan = vec![1usize];
    for n in 1..=top {
        catalan.push((0..n).map(|k| catalan[k] * catalan[n - 1 - k]).sum());
    }
    for n in 0..=top {
        let forests = forests_of_order(n).len();
        if forests != catalan[n] {
            return Err(format!("order {n}: {forests} forests, expected {}", catalan[n]));
        }
        if n >= 1 {
            let trees = trees_of_order(n).len();
            if trees != catalan[n - 1] {
                return Err(format!("order {n}: {trees} trees, expected {}", catalan[n - 1]));
            }
        }
    }
    let rows = golden::dn_coproduct_rows();
    for (n, want) in catalan.iter().enumerate().take(top.min(4) + 1) {
        let count = rows.iter().filter(|r| r.forest.order() == n).count();
        if count != *want {
            return Err(format!("table has {count} rows of order {n}, expected {want}"));
        }
    }
    Ok(format!("Catalan counts through order {top}, cross-checked against the table"))
}

/// Both coproduct routes reproduce the reference table rows.
pub fn check_coproduct_table(order: usize) -> Outcome {
    let mut checked = 0usize;
    for row in golden::dn_coproduct_rows() {
        if row.forest.order() > order {
            continue;
        }
        let n = row.forest.order();
        if coproduct_dn(&row.forest, n) != row.expansion {
            return Err(format!("magmatic route differs from the table on {}", row.forest));
        }
        if crate::cuts::coproduct_dn_cuts(&row.forest, n) != row.expansion {
            return Err(format!("cut route differs from the table on {}", row.forest));
        }
        checked += 1;
    }
    Ok(format!("{checked} rows, both routes"))
}

/// The magmatic recursion and the admissible-cut expansion agree on every
/// forest through the given order.
pub fn check_coproduct_routes(order: usize) -> Outcome {
    let mut checked = 0usize;
    for n in 0..=order {
        for w in forests_of_order(n) {
            if coproduct_dn(&w, n) != crate::cuts::coproduct_dn_cuts(&w, n) {
                return Err(format!("routes disagree on {w}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} forests through order {order}"))
}

/// The dual-substitution table holds under three seeded rational
/// infinitesimal characters.
pub fn check_dual_substitution_table(order: usize, seed: u64) -> Outcome {
    let cap = order.min(4);
    let mut checked = 0usize;
    for offset in 0..3u64 {
        let a = random_infinitesimal_character(cap, seed + offset);
        for row in golden::dual_substitution_rows() {
            if row.forest.order() > cap {
                continue;
            }
            let computed =
                substitute_dual(&a, &row.forest).map_err(err("dual substitution"))?;
            if computed != golden::evaluate_dual_row(&row, &a) {
                return Err(format!(
                    "seed {}: table row {} differs from substitute_dual",
                    seed + offset,
                    row.forest
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} row evaluations across 3 seeds"))
}

/// The exact-flow iteration reproduces the reference series and stays
/// supported on single trees.
pub fn check_exact_flow_golden(order: usize) -> Outcome {
    let cap = order.min(5);
    let gamma = gamma_exact(cap);
    if gamma != golden::exact_flow_gamma().with_order(cap) {
        return Err(format!("iterated series differs from the fixture at order {cap}"));
    }
    let full = gamma_exact(order.min(6));
    for (w, _) in full.terms() {
        if w.len() != 1 {
            return Err(format!("exact-flow series contains the non-tree term {w}"));
        }
    }
    Ok(format!("matches the reference through order {cap}; tree-supported"))
}

/// The Euler modified field matches its reference series, and the Euler
/// character has the displayed exponential form.
pub fn check_euler_backward_error(order: usize) -> Outcome {
    let cap = order.min(4);
    let alpha = method_euler(cap);
    let vertex = Series::basis(cap, &Forest::vertex());
    let exp_vertex =
        Product::Concatenation.exponential(&vertex).map_err(err("exponential"))?;
    if alpha != exp_vertex {
        return Err("Euler character is not the concatenation exponential of •".into());
    }
    let beta = backward_error(&alpha).map_err(err("backward error"))?;
    if beta != golden::euler_backward_error().with_order(cap) {
        return Err(format!("modified field differs from the fixture at order {cap}"));
    }
    let gamma = convert(&alpha, FlowRepresentation::Type1, FlowRepresentation::Type3)
        .map_err(err("conversion"))?;
    if gamma != vertex {
        return Err("TYPE3 form of the Euler character is not •".into());
    }
    Ok(format!("13-term series through order {cap}; γ = •"))
}

/// The noncommutative Bell polynomials match their closed forms through
/// degree four, including the length-graded part.
pub fn check_bell_polynomials() -> Outcome {
    let from = |rows: &[(&[usize], i64)]| {
        let mut out = BellElement::zero();
        for &(word, c) in rows {
            out.add_term(BellWord(word.to_vec()), rat_int(c));
        }
        out
    };
    let expect = [
        (0usize, from(&[(&[], 1)])),
        (1, from(&[(&[1], 1)])),
        (2, from(&[(&[1, 1], 1), (&[2], 1)])),
        (3, from(&[(&[1, 1, 1], 1), (&[1, 2], 2), (&[2, 1], 1), (&[3], 1)])),
        (
            4,
            from(&[
                (&[1, 1, 1, 1], 1),
                (&[1, 1, 2], 3),
                (&[1, 2, 1], 2),
                (&[2, 1, 1], 1),
                (&[1, 3], 3),
                (&[3, 1], 1),
                (&[2, 2], 3),
                (&[4], 1),
            ]),
        ),
    ];
    for (n, reference) in &expect {
        if bell(*n) != *reference {
            return Err(format!("B_{n} differs from its closed form"));
        }
    }
    let part = from(&[(&[1, 1, 2], 3), (&[1, 2, 1], 2), (&[2, 1, 1], 1)]);
    if bell_part(4, 3) != part {
        return Err("B_{4,3} differs from its closed form".into());
    }
    Ok("B_0..B_4 and B_{4,3}".into())
}

fn triple_expansion(
    w: &Forest,
    order: usize,
    left_first: bool,
) -> HashMap<(Forest, Forest, Forest), crate::rational::Rational> {
    let mut out: HashMap<(Forest, Forest, Forest), crate::rational::Rational> = HashMap::new();
    for (l, r, c) in coproduct_dn(w, order).terms() {
        let inner = if left_first { l } else { r };
        for (il, ir, ic) in coproduct_dn(inner, order).terms() {
            let key = if left_first {
                (il.clone(), ir.clone(), r.clone())
            } else {
                (l.clone(), il.clone(), ir.clone())
            };
            *out.entry(key).or_default() += c.clone() * ic.clone();
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Coassociativity of the magmatic coproduct over the truncated basis.
pub fn check_coassociativity(order: usize) -> Outcome {
    let mut checked = 0usize;
    for n in 0..=order {
        for w in forests_of_order(n) {
            if triple_expansion(&w, n, true) != triple_expansion(&w, n, false) {
                return Err(format!("coassociativity fails on {w}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} forests through order {order}"))
}

/// The planar GL product and the magmatic coproduct are dual:
/// the coefficient of ω in u⋄v equals the (u,v) entry of Δ(ω).
pub fn check_gl_duality(order: usize) -> Outcome {
    let mut checked = 0usize;
    for n in 0..=order {
        let mut pairs = Vec::new();
        for i in 0..=n {
            for u in forests_of_order(i) {
                for v in forests_of_order(n - i) {
                    let product = gl_forests(&u, &v);
                    pairs.push((u.clone(), v, product));
                }
            }
        }
        for w in forests_of_order(n) {
            let delta = coproduct_dn(&w, n);
            for (u, v, product) in &pairs {
                if product.coeff(&w) != delta.coeff(u, v) {
                    return Err(format!("duality fails at ⟨{u} ⋄ {v}, {w}⟩"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairings through order {order}"))
}

/// Pruning is adjoint to left grafting over the truncated basis.
pub fn check_pruning_duality(order: usize) -> Outcome {
    let mut checked = 0usize;
    for n in 0..=order {
        for w in forests_of_order(n) {
            for i in 0..=n {
                for nu in forests_of_order(i) {
                    let pruned = crate::cuts::prune(&nu, &w);
                    for u in forests_of_order(n - i) {
                        if graft_forests(&nu, &u).coeff(&w) != pruned.coeff(&u) {
                            return Err(format!("adjointness fails at ⟨{nu} ↷ {u}, {w}⟩"));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} pairings through order {order}"))
}

/// Substitution and its dual are adjoint under the pairing.
pub fn check_substitution_adjointness(order: usize, seed: u64) -> Outcome {
    let cap = order.min(4);
    let a = random_infinitesimal_character(cap, seed);
    let mut checked = 0usize;
    for n in 0..=cap {
        let duals: Vec<(Forest, Series)> = forests_of_order(n)
            .into_iter()
            .map(|w| {
                let image = substitute_dual(&a, &w).map_err(err("dual substitution"))?;
                Ok((w, image))
            })
            .collect::<std::result::Result<_, String>>()?;
        for b in forests_of_order(n) {
            let direct = substitute_forest(&a, &b).map_err(err("substitution"))?;
            for (w, dual) in &duals {
                if direct.coeff(w) != dual.coeff(&b) {
                    return Err(format!("adjointness fails at a★({b}) against {w}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairings through order {cap}"))
}

/// Substitution is a homomorphism for concatenation and left grafting.
pub fn check_substitution_hom_laws(order: usize, seed: u64) -> Outcome {
    let cap = order.min(4);
    let a = random_infinitesimal_character(cap, seed);
    let mut checked = 0usize;
    for total in 0..=cap {
        for i in 0..=total {
            for u in forests_of_order(i) {
                let au = substitute_forest(&a, &u).map_err(err("substitution"))?;
                for v in forests_of_order(total - i) {
                    let av = substitute_forest(&a, &v).map_err(err("substitution"))?;
                    let concat = substitute_forest(&a, &u.concat(&v))
                        .map_err(err("substitution"))?;
                    if concat != au.concat_mul(&av).map_err(err("product"))? {
                        return Err(format!("concatenation law fails on {u}, {v}"));
                    }
                    let grafted = substitute(&a, &graft_forests(&u, &v).with_order(cap))
                        .map_err(err("substitution"))?;
                    if grafted != au.graft(&av).map_err(err("grafting"))? {
                        return Err(format!("grafting law fails on {u}, {v}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} pairs through order {cap}"))
}

/// Dual substitution is multiplicative for the shuffle product.
pub fn check_dual_shuffle_character(order: usize, seed: u64) -> Outcome {
    let cap = order.min(4);
    let a = random_infinitesimal_character(cap, seed);
    let mut checked = 0usize;
    for total in 0..=cap {
        for i in 0..=total {
            for u in forests_of_order(i) {
                let du = substitute_dual(&a, &u).map_err(err("dual substitution"))?;
                for v in forests_of_order(total - i) {
                    let dv = substitute_dual(&a, &v).map_err(err("dual substitution"))?;
                    let mut lhs = Series::zero(cap);
                    for (w, c) in shuffle_forests(&u, &v).terms() {
                        let image = substitute_dual(&a, w).map_err(err("dual substitution"))?;
                        lhs = lhs.add(&image.scaled(c)).map_err(err("sum"))?;
                    }
                    if lhs != du.shuffle_mul(&dv).map_err(err("product"))? {
                        return Err(format!("shuffle law fails on {u}, {v}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} pairs through order {cap}"))
}

fn endomorphisms_agree(f: &Endomorphism, g: &Endomorphism, order: usize) -> Option<Forest> {
    for n in 0..=order {
        for w in forests_of_order(n) {
            if f.image(&w) != g.image(&w) {
                return Some(w);
            }
        }
    }
    None
}

/// The Eulerian map is idempotent over the truncated basis.
pub fn check_eulerian_idempotent(order: usize) -> Outcome {
    let e = eulerian(order);
    let ee = e.compose(&e).map_err(err("composition"))?;
    match endomorphisms_agree(&ee, &e, order) {
        Some(w) => Err(format!("e∘e differs from e on {w}")),
        None => Ok(format!("e∘e = e through order {order}")),
    }
}

/// The normalized Dynkin map is idempotent over the truncated basis.
pub fn check_dynkin_idempotent(order: usize) -> Outcome {
    let normalized =
        grading_y_inverse(order).compose(&dynkin(order)).map_err(err("composition"))?;
    let squared = normalized.compose(&normalized).map_err(err("composition"))?;
    match endomorphisms_agree(&squared, &normalized, order) {
        Some(w) => Err(format!("(Y⁻¹D)² differs from Y⁻¹D on {w}")),
        None => Ok(format!("(Y⁻¹D)² = Y⁻¹D through order {order}")),
    }
}

/// Convolution logarithm and exponential invert each other, and composing
/// a character with the Eulerian map computes its logarithm.
pub fn check_log_exp_inversion(order: usize, seed: u64) -> Outcome {
    let h = HopfStructure::ShuffleDn;
    let character = random_character(order, seed);
    let infinitesimal = random_infinitesimal_character(order, seed.wrapping_add(1));
    let log = log_star(&character, h).map_err(err("logarithm"))?;
    if exp_star(&log, h).map_err(err("exponential"))? != character {
        return Err("exp_star(log_star(α)) differs from α".into());
    }
    let exp = exp_star(&infinitesimal, h).map_err(err("exponential"))?;
    if log_star(&exp, h).map_err(err("logarithm"))? != infinitesimal {
        return Err("log_star(exp_star(β)) differs from β".into());
    }
    let through_eulerian =
        compose_functional(&character, &eulerian(order)).map_err(err("composition"))?;
    if through_eulerian != log {
        return Err("α∘e differs from log_star(α)".into());
    }
    Ok(format!("round trips and α∘e = log_star(α) at order {order}"))
}

/// Characters are closed under convolution, with antipode inverses.
pub fn check_character_closure(order: usize, seed: u64) -> Outcome {
    let h = HopfStructure::ShuffleDn;
    let a = random_character(order, seed.wrapping_add(2));
    let b = random_character(order, seed.wrapping_add(3));
    let product = convolve_functionals(&a, &b, h).map_err(err("convolution"))?;
    if !is_character(&product, h) {
        return Err("convolution of two characters is not a character".into());
    }
    if product != a.gl_mul(&b).map_err(err("product"))? {
        return Err("convolution differs from the GL product".into());
    }
    let antipode = Endomorphism::from_fn(order, |w| h.antipode(w, order));
    let inverse = compose_functional(&a, &antipode).map_err(err("composition"))?;
    if convolve_functionals(&a, &inverse, h).map_err(err("convolution"))? != Series::one(order) {
        return Err("α ∗ (α∘S) is not the convolution unit".into());
    }
    Ok(format!("closure and antipode inverse at order {order}"))
}

/// The exact-flow character arises three ways: through the Q-operator,
/// as a GL exponential, and by representation conversion.
pub fn check_exact_flow_three_way(order: usize) -> Outcome {
    let vertex = Series::basis(order, &Forest::vertex());
    let through_q = q_operator(&gamma_exact(order)).map_err(err("Q-operator"))?;
    let exponential =
        Product::GrossmanLarson.exponential(&vertex).map_err(err("exponential"))?;
    if through_q != exponential {
        return Err("Q(γ) differs from the GL exponential of •".into());
    }
    let converted = convert(&vertex, FlowRepresentation::Type2, FlowRepresentation::Type1)
        .map_err(err("conversion"))?;
    if converted != exponential {
        return Err("TYPE2→TYPE1 conversion of • differs from the GL exponential".into());
    }
    if alpha_exact(order) != exponential {
        return Err("exact-flow character differs from the GL exponential".into());
    }
    Ok(format!("three routes agree at order {order}"))
}

/// Substituting a method's modified field into the exact flow recovers
/// the method, for both built-in integrators.
pub fn check_bea_reconstruction(order: usize) -> Outcome {
    let cap = order.min(4);
    let exact = alpha_exact(cap);
    for (label, alpha) in
        [("euler", method_euler(cap)), ("midpoint", midpoint_character(cap))]
    {
        let beta = backward_error(&alpha).map_err(err("backward error"))?;
        let rebuilt = substitute(&beta, &exact).map_err(err("substitution"))?;
        if rebuilt != alpha {
            return Err(format!("re-substitution does not recover the {label} character"));
        }
    }
    Ok(format!("euler and midpoint recovered at order {cap}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn order_zero_passes_trivially() {
        let reports = run_selftest(0, 7);
        for report in &reports {
            assert!(report.passed, "{} failed at order 0: {}", report.name, report.detail);
        }
        assert_eq!(reports.len(), 19);
    }

    #[test]
    fn order_three_battery_passes() {
        for report in run_selftest(3, 11) {
            assert!(report.passed, "{} failed: {}", report.name, report.detail);
        }
    }

    #[test]
    fn midpoint_weight_sanity() {
        let sigma = crate::flows::method_midpoint(3);
        assert_eq!(sigma.coeff(&Forest::parse("(()())").unwrap()), rat(1, 8));
    }
}
