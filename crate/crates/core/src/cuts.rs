//! Left cuts of planar trees and the operations built on them.
//!
//! An elementary left cut removes a leftmost-contiguous prefix of one
//! vertex's child subtrees. A set of elementary cuts is admissible when the
//! cut vertices are distinct and no cut sits inside a subtree removed by
//! another: equivalently, any root-to-vertex path crosses at most one cut.
//! Each admissible cut splits a forest into a pruned part (the shuffle of
//! the removed blocks, one indivisible word per elementary cut) and a
//! remainder.
//!
//! Cutting the raised tree `B+(w)` at every vertex, including the added
//! root, reproduces the Grossman-Larson-dual coproduct
//! ([`coproduct_dn_cuts`], the independent oracle for
//! [`crate::hopf::coproduct_dn`]). Dropping the added-root cuts gives the
//! admissible cuts of the forest itself ([`left_admissible_cuts`]), which
//! drive [`prune`] (the adjoint of left grafting) and the dual
//! substitution formula.

use num_traits::Zero;

use crate::forest::{Forest, Tree};
use crate::hopf::TensorSeries;
use crate::series::{shuffle_forests, Series};

/// One cut: at the vertex addressed by `vertex` (child indices from the
/// root; for a forest the first index picks the top-level tree), remove the
/// leftmost `prefix_count ≥ 1` child subtrees.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ElementaryCut {
    pub vertex: Vec<usize>,
    pub prefix_count: usize,
}

/// An admissible cut of a forest together with its pruned part and
/// remainder. The full cut (everything pruned, nothing left) is flagged
/// rather than encoded as elementary cuts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CutDatum {
    pub cuts: Vec<ElementaryCut>,
    pub is_full: bool,
    /// Shuffle of the removed blocks; a series because shuffles are sums.
    pub pruned: Series,
    pub remainder: Forest,
}

/// A raw admissible cut during enumeration: the removed block of each
/// elementary cut (left to right) and the remaining tree.
struct CutRow {
    cuts: Vec<ElementaryCut>,
    blocks: Vec<Forest>,
    remainder: Tree,
}

/// All admissible cuts of a single tree, the empty cut first. `path` is the
/// address prefix of this tree's root.
fn tree_cut_rows(tree: &Tree, path: &[usize]) -> Vec<CutRow> {
    let children = tree.children();
    let mut rows = Vec::new();
    for removed in 0..=children.len() {
        let (cut, block) = if removed == 0 {
            (None, None)
        } else {
            let block = children[..removed]
                .iter()
                .fold(Forest::empty(), |acc, t| acc.concat(t.as_forest()));
            let cut = ElementaryCut { vertex: path.to_vec(), prefix_count: removed };
            (Some(cut), Some(block))
        };
        // Kept children may carry any admissible cuts of their own;
        // removed subtrees are closed to further cutting.
        let mut partial: Vec<(Vec<ElementaryCut>, Vec<Forest>, Forest)> =
            vec![(Vec::new(), Vec::new(), Forest::empty())];
        for (offset, child) in children[removed..].iter().enumerate() {
            let mut child_path = path.to_vec();
            child_path.push(removed + offset);
            let child_rows = tree_cut_rows(child, &child_path);
            let mut next = Vec::with_capacity(partial.len() * child_rows.len());
            for (cuts, blocks, kept) in &partial {
                for row in &child_rows {
                    let mut cuts = cuts.clone();
                    cuts.extend(row.cuts.iter().cloned());
                    let mut blocks = blocks.clone();
                    blocks.extend(row.blocks.iter().cloned());
                    next.push((cuts, blocks, kept.concat(row.remainder.as_forest())));
                }
            }
            partial = next;
        }
        for (child_cuts, child_blocks, kept) in partial {
            let mut cuts = Vec::new();
            let mut blocks = Vec::new();
            if let (Some(c), Some(b)) = (&cut, &block) {
                cuts.push(c.clone());
                blocks.push(b.clone());
            }
            cuts.extend(child_cuts);
            blocks.extend(child_blocks);
            rows.push(CutRow { cuts, blocks, remainder: kept.b_plus() });
        }
    }
    rows
}

/// Admissible cuts of `B+(forest)`; the added root has path `[]`.
fn raised_rows(forest: &Forest) -> Vec<CutRow> {
    tree_cut_rows(&forest.b_plus(), &[])
}

fn shuffle_blocks(blocks: &[Forest], order: usize) -> Series {
    let mut out = Series::one(order);
    for block in blocks {
        out = out.map_basis(|w| shuffle_forests(w, block).with_order(order));
    }
    out
}

/// All elementary cuts of a tree, including the empty cut. Each entry is
/// (pruned forest, remaining tree).
pub fn elementary_cuts(tree: &Tree) -> Vec<(Forest, Tree)> {
    tree_cut_rows(tree, &[])
        .into_iter()
        .filter(|row| row.cuts.len() <= 1)
        .map(|row| {
            let pruned = row
                .blocks
                .first()
                .cloned()
                .unwrap_or_else(Forest::empty);
            (pruned, row.remainder)
        })
        .collect()
}

/// Left admissible cuts of a forest: cuts of `B+(forest)` that avoid the
/// added root, each reported with its pruned shuffle and remainder;
/// `include_full` appends the full cut `(forest, 1)`. For the empty forest
/// the empty and full cuts coincide and one entry is returned.
pub fn left_admissible_cuts(forest: &Forest, include_full: bool) -> Vec<CutDatum> {
    let order = forest.order();
    let mut out: Vec<CutDatum> = raised_rows(forest)
        .into_iter()
        .filter(|row| row.cuts.iter().all(|c| !c.vertex.is_empty()))
        .map(|row| CutDatum {
            pruned: shuffle_blocks(&row.blocks, order),
            remainder: row.remainder.b_minus(),
            cuts: row.cuts,
            is_full: false,
        })
        .collect();
    if include_full && !forest.is_empty() {
        out.push(CutDatum {
            cuts: Vec::new(),
            is_full: true,
            pruned: Series::basis(order, forest),
            remainder: Forest::empty(),
        });
    }
    out
}

/// The Grossman-Larson-dual coproduct by cut enumeration: sum over all
/// admissible cuts of `B+(w)`, added-root cuts included, of
/// `pruned ⊗ B-(remainder)`.
pub fn coproduct_dn_cuts(forest: &Forest, order: usize) -> TensorSeries {
    let mut out = TensorSeries::zero(order);
    for row in raised_rows(forest) {
        let pruned = shuffle_blocks(&row.blocks, order);
        let remainder = row.remainder.b_minus();
        for (word, coeff) in pruned.terms() {
            out.add_term(word.clone(), remainder.clone(), coeff.clone());
        }
    }
    out
}

/// Pruning, the adjoint of left grafting:
/// `prune(v, w) = Σ over admissible cuts ⟨v, pruned⟩ · remainder`, so that
/// `⟨v graft u, w⟩ = ⟨u, prune(v, w)⟩`.
pub fn prune(nu: &Forest, forest: &Forest) -> Series {
    let order = forest.order();
    let mut out = Series::zero(order);
    for datum in left_admissible_cuts(forest, false) {
        let weight = datum.pruned.coeff(nu);
        if !weight.is_zero() {
            out.add_term(datum.remainder, weight);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{enumerate, trees_of_order};
    use crate::hopf::coproduct_dn;
    use crate::rational::{rat_int, Rational};
    use crate::series::graft_forests;
    use std::collections::BTreeMap;

    fn f(word: &str) -> Forest {
        Forest::parse(word).unwrap()
    }

    fn tree(word: &str) -> Tree {
        f(word).to_tree().unwrap()
    }

    fn sorted_pairs(rows: Vec<(Forest, Tree)>) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = rows
            .into_iter()
            .map(|(p, r)| (p.word().to_string(), r.as_forest().word().to_string()))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn elementary_cut_examples() {
        let rows = sorted_pairs(elementary_cuts(&tree("(()(()))")));
        let mut expected = vec![
            ("".to_string(), "(()(()))".to_string()),
            ("()".to_string(), "((()))".to_string()),
            ("()(())".to_string(), "()".to_string()),
            ("()".to_string(), "(()())".to_string()),
        ];
        expected.sort();
        assert_eq!(rows, expected);

        assert_eq!(
            sorted_pairs(elementary_cuts(&tree("()"))),
            vec![("".to_string(), "()".to_string())]
        );
        assert_eq!(
            sorted_pairs(elementary_cuts(&tree("(())"))),
            vec![
                ("".to_string(), "(())".to_string()),
                ("()".to_string(), "()".to_string()),
            ]
        );
    }

    #[test]
    fn elementary_cut_count_equals_vertex_count() {
        for n in 1..=5 {
            for t in trees_of_order(n) {
                assert_eq!(elementary_cuts(&t).len(), n, "{t}");
            }
        }
    }

    #[test]
    fn admissible_cut_table_for_the_four_vertex_tree() {
        // Five rows: empty; prune first branch; prune both branches as one
        // block; prune the grandchild; prune first branch and grandchild
        // (two blocks, shuffled).
        let rows = left_admissible_cuts(&f("(()(()))"), false);
        assert_eq!(rows.len(), 5);
        let mut summary: Vec<(String, Vec<(String, Rational)>)> = rows
            .iter()
            .map(|d| {
                (
                    d.remainder.word().to_string(),
                    d.pruned
                        .terms()
                        .map(|(w, c)| (w.word().to_string(), c.clone()))
                        .collect(),
                )
            })
            .collect();
        summary.sort();
        let expected: Vec<(String, Vec<(String, Rational)>)> = vec![
            ("(()(()))".into(), vec![("".into(), rat_int(1))]),
            ("(())".into(), vec![("()()".into(), rat_int(2))]),
            ("(()())".into(), vec![("()".into(), rat_int(1))]),
            ("((()))".into(), vec![("()".into(), rat_int(1))]),
            ("()".into(), vec![("()(())".into(), rat_int(1))]),
        ];
        let mut expected = expected;
        expected.sort();
        assert_eq!(summary, expected);
    }

    #[test]
    fn empty_forest_cuts_collapse() {
        let without = left_admissible_cuts(&Forest::empty(), false);
        let with = left_admissible_cuts(&Forest::empty(), true);
        assert_eq!(without.len(), 1);
        assert_eq!(with.len(), 1);
        assert_eq!(with[0].pruned, Series::one(0));
        assert_eq!(with[0].remainder, Forest::empty());
    }

    #[test]
    fn full_cut_appended_for_nonempty_forests() {
        let rows = left_admissible_cuts(&f("()(())"), true);
        let full: Vec<&CutDatum> = rows.iter().filter(|d| d.is_full).collect();
        assert_eq!(full.len(), 1);
        assert_eq!(full[0].pruned, Series::basis(3, &f("()(())")));
        assert_eq!(full[0].remainder, Forest::empty());
    }

    #[test]
    fn cuts_partition_vertices() {
        for forest in enumerate(5) {
            for datum in left_admissible_cuts(&forest, true) {
                for (word, _) in datum.pruned.terms() {
                    assert_eq!(
                        word.order() + datum.remainder.order(),
                        forest.order(),
                        "{forest}"
                    );
                }
            }
        }
    }

    #[test]
    fn cut_coproduct_examples() {
        let mut expected = TensorSeries::zero(2);
        expected.add_term(f("(())"), Forest::empty(), rat_int(1));
        expected.add_term(f("()"), f("()"), rat_int(1));
        expected.add_term(Forest::empty(), f("(())"), rat_int(1));
        assert_eq!(coproduct_dn_cuts(&f("(())"), 2), expected);

        let mut unit = TensorSeries::zero(0);
        unit.add_term(Forest::empty(), Forest::empty(), rat_int(1));
        assert_eq!(coproduct_dn_cuts(&Forest::empty(), 0), unit);

        // Forest input: added-root cuts of B+( ()(()) ) supply the
        // mixed terms, including the shuffled two-block row.
        let via_cuts = coproduct_dn_cuts(&f("()(())"), 3);
        assert_eq!(via_cuts.coeff(&f("()()"), &f("()")), rat_int(2));
        assert_eq!(via_cuts.coeff(&f("()"), &f("(())")), rat_int(1));
    }

    #[test]
    fn cut_coproduct_matches_recursive_coproduct() {
        for forest in enumerate(4) {
            let n = forest.order();
            assert_eq!(
                coproduct_dn_cuts(&forest, n),
                coproduct_dn(&forest, n),
                "{forest}"
            );
        }
    }

    #[test]
    fn prune_examples() {
        assert_eq!(prune(&f("()"), &f("(())")), Series::basis(2, &f("()")));
        for forest in enumerate(4) {
            assert_eq!(
                prune(&Forest::empty(), &forest),
                Series::basis(forest.order(), &forest)
            );
        }
        let expected = Series::from_terms(
            4,
            [(f("((()))"), rat_int(1)), (f("(()())"), rat_int(1))],
        );
        assert_eq!(prune(&f("()"), &f("(()(()))")), expected);
    }

    #[test]
    fn pruning_is_adjoint_to_grafting() {
        // ⟨v graft u, w⟩ = ⟨u, prune(v, w)⟩ over all basis triples with
        // |v| + |u| = |w| ≤ 4.
        let all = enumerate(4);
        let mut grafts: BTreeMap<(String, String), Series> = BTreeMap::new();
        for v in &all {
            for u in &all {
                if v.order() + u.order() > 4 {
                    continue;
                }
                grafts.insert(
                    (v.word().to_string(), u.word().to_string()),
                    graft_forests(v, u),
                );
            }
        }
        for w in &all {
            for v in &all {
                if v.order() > w.order() {
                    continue;
                }
                let pruned = prune(v, w);
                for u in &all {
                    if v.order() + u.order() != w.order() {
                        continue;
                    }
                    let direct = grafts[&(v.word().to_string(), u.word().to_string())].coeff(w);
                    assert_eq!(direct, pruned.coeff(u), "v={v} u={u} w={w}");
                }
            }
        }
    }
}
