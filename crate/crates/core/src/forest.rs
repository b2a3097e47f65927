//! Planar rooted forests encoded as balanced-parentheses words.
//!
//! A forest is an ordered sequence of planar rooted trees. The word encoding
//! is structural: the empty forest is the empty word, a tree is the word of
//! its child forest wrapped in one pair of parentheses, and a forest is the
//! concatenation of its trees' words. So `"()"` is the single vertex,
//! `"(())"` is the two-vertex chain, and `"(()())"` is a root with two
//! leaves. Equality is byte equality of words; there is no normalization
//! step because the encoding is already canonical.
//!
//! The basis order used everywhere (series terms, enumeration, JSON output)
//! is graded lexicographic: first by `order` (vertex count), then by the word
//! with `'('` before `')'`. `Ord` on [`Forest`] implements exactly that, so a
//! `BTreeMap<Forest, _>` iterates in canonical order for free.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A planar rooted forest, held as its canonical parentheses word.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Forest {
    word: String,
}

impl Forest {
    /// The empty forest (the algebra unit, rendered as `1`).
    pub fn empty() -> Self {
        Forest { word: String::new() }
    }

    /// The single-vertex tree as a forest.
    pub fn vertex() -> Self {
        Forest { word: "()".to_string() }
    }

    /// Parses a parentheses word. Whitespace is ignored; anything else
    /// besides `(` and `)` is rejected, as is any unbalanced word.
    pub fn parse(text: &str) -> Result<Self> {
        let mut word = String::with_capacity(text.len());
        for ch in text.chars() {
            match ch {
                '(' | ')' => word.push(ch),
                c if c.is_whitespace() => {}
                c => return Err(Error::IllegalCharacter { ch: c }),
            }
        }
        let mut depth: i64 = 0;
        for ch in word.chars() {
            depth += if ch == '(' { 1 } else { -1 };
            if depth < 0 {
                return Err(Error::MalformedWord(word));
            }
        }
        if depth != 0 {
            return Err(Error::MalformedWord(word));
        }
        Ok(Forest { word })
    }

    /// The underlying word (empty string for the empty forest).
    pub fn word(&self) -> &str {
        &self.word
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.word.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Number of top-level trees.
    pub fn len(&self) -> usize {
        self.tree_boundaries().len()
    }

    /// Concatenation of forests (the free associative product).
    pub fn concat(&self, other: &Forest) -> Forest {
        let mut word = String::with_capacity(self.word.len() + other.word.len());
        word.push_str(&self.word);
        word.push_str(&other.word);
        Forest { word }
    }

    /// Grafts every root of `self` onto one fresh root: `B+`.
    pub fn b_plus(&self) -> Tree {
        let mut word = String::with_capacity(self.word.len() + 2);
        word.push('(');
        word.push_str(&self.word);
        word.push(')');
        Tree(Forest { word })
    }

    /// Reinterprets the forest as a tree, failing unless it has exactly one root.
    pub fn to_tree(&self) -> Result<Tree> {
        let roots = self.len();
        if roots == 1 {
            Ok(Tree(self.clone()))
        } else {
            Err(Error::NotATree { roots })
        }
    }

    /// The top-level trees, left to right.
    pub fn trees(&self) -> Vec<Tree> {
        self.tree_boundaries()
            .into_iter()
            .map(|(start, end)| Tree(Forest { word: self.word[start..end].to_string() }))
            .collect()
    }

    /// Splits off the leftmost top-level tree.
    pub fn split_first_tree(&self) -> Option<(Tree, Forest)> {
        if self.is_empty() {
            return None;
        }
        let end = self.first_tree_end();
        let first = Forest { word: self.word[..end].to_string() };
        let rest = Forest { word: self.word[end..].to_string() };
        Some((Tree(first), rest))
    }

    /// Splits off the rightmost top-level tree.
    pub fn split_last_tree(&self) -> Option<(Forest, Tree)> {
        let bounds = self.tree_boundaries();
        let (start, _) = *bounds.last()?;
        let prefix = Forest { word: self.word[..start].to_string() };
        let last = Forest { word: self.word[start..].to_string() };
        Some((prefix, Tree(last)))
    }

    /// The magma product: `self` followed by `B+(other)`.
    pub fn magma_times(&self, other: &Forest) -> Forest {
        self.concat(other.b_plus().as_forest())
    }

    /// Inverse of [`Forest::magma_times`]: strips the last tree and removes
    /// its root. Every nonempty forest factors uniquely this way.
    pub fn magma_split(&self) -> Result<(Forest, Forest)> {
        let (prefix, last) = self.split_last_tree().ok_or(Error::EmptyForest)?;
        Ok((prefix, last.b_minus()))
    }

    /// Byte offsets `(start, end)` of each top-level tree word.
    fn tree_boundaries(&self) -> Vec<(usize, usize)> {
        let mut bounds = Vec::new();
        let mut depth = 0usize;
        let mut start = 0usize;
        for (i, ch) in self.word.bytes().enumerate() {
            if ch == b'(' {
                if depth == 0 {
                    start = i;
                }
                depth += 1;
            } else {
                depth -= 1;
                if depth == 0 {
                    bounds.push((start, i + 1));
                }
            }
        }
        bounds
    }

    fn first_tree_end(&self) -> usize {
        let mut depth = 0usize;
        for (i, ch) in self.word.bytes().enumerate() {
            if ch == b'(' {
                depth += 1;
            } else {
                depth -= 1;
                if depth == 0 {
                    return i + 1;
                }
            }
        }
        0
    }
}

impl Ord for Forest {
    fn cmp(&self, other: &Self) -> Ordering {
        // Graded lexicographic. Words of equal order have equal length, and
        // '(' < ')' in ASCII, so plain byte order finishes the comparison.
        self.order()
            .cmp(&other.order())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for Forest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "1")
        } else {
            f.write_str(&self.word)
        }
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Forest({self})")
    }
}

impl From<Tree> for Forest {
    fn from(tree: Tree) -> Self {
        tree.0
    }
}

/// A forest known to have exactly one root.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree(Forest);

impl Tree {
    /// The single-vertex tree.
    pub fn vertex() -> Self {
        Tree(Forest::vertex())
    }

    pub fn as_forest(&self) -> &Forest {
        &self.0
    }

    pub fn into_forest(self) -> Forest {
        self.0
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    /// Removes the root, returning the forest of its children: `B-`.
    pub fn b_minus(&self) -> Forest {
        let word = &self.0.word;
        Forest { word: word[1..word.len() - 1].to_string() }
    }

    /// The child subtrees of the root, left to right.
    pub fn children(&self) -> Vec<Tree> {
        self.b_minus().trees()
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree({})", self.0)
    }
}

/// All forests of exactly `order` vertices, in canonical (lexicographic) order.
pub fn forests_of_order(order: usize) -> Vec<Forest> {
    let table = build_table(order);
    table[order].clone()
}

/// All trees of exactly `order >= 1` vertices, in canonical order.
pub fn trees_of_order(order: usize) -> Vec<Tree> {
    assert!(order >= 1, "trees have at least one vertex");
    forests_of_order(order - 1)
        .into_iter()
        .map(|f| f.b_plus())
        .collect()
}

/// All forests of order `<= max_order`, graded then lexicographic.
pub fn enumerate(max_order: usize) -> Vec<Forest> {
    let table = build_table(max_order);
    table.into_iter().flatten().collect()
}

/// `table[n]` = sorted forests of order `n`, built from the unique
/// first-tree factorization `w = (u)v`.
fn build_table(max_order: usize) -> Vec<Vec<Forest>> {
    let mut table: Vec<Vec<Forest>> = vec![vec![Forest::empty()]];
    for n in 1..=max_order {
        let mut grade = Vec::new();
        for k in 0..n {
            for inner in &table[k] {
                let head = inner.b_plus();
                for rest in &table[n - 1 - k] {
                    grade.push(head.as_forest().concat(rest));
                }
            }
        }
        grade.sort();
        table.push(grade);
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn f(word: &str) -> Forest {
        Forest::parse(word).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(f("(()())").word(), "(()())");
        assert_eq!(f(" ( () () ) ").word(), "(()())");
        assert_eq!(f("").word(), "");
        assert!(matches!(Forest::parse("(()"), Err(Error::MalformedWord(_))));
        assert!(matches!(Forest::parse("())("), Err(Error::MalformedWord(_))));
        assert!(matches!(
            Forest::parse("(a)"),
            Err(Error::IllegalCharacter { ch: 'a' })
        ));
    }

    #[test]
    fn order_counts_vertices() {
        assert_eq!(Forest::empty().order(), 0);
        assert_eq!(f("()").order(), 1);
        assert_eq!(f("(()())").order(), 3);
    }

    #[test]
    fn b_plus_and_b_minus() {
        assert_eq!(Forest::empty().b_plus().as_forest(), &f("()"));
        assert_eq!(f("()()").b_plus().as_forest(), &f("(()())"));
        assert_eq!(f("(())").to_tree().unwrap().b_minus(), f("()"));
        assert!(matches!(f("()()").to_tree(), Err(Error::NotATree { roots: 2 })));
        assert!(matches!(Forest::empty().to_tree(), Err(Error::NotATree { roots: 0 })));
    }

    #[test]
    fn concat_examples() {
        assert_eq!(f("()").concat(&f("(())")), f("()(())"));
        assert_eq!(Forest::empty().concat(&f("()")), f("()"));
        assert_eq!(f("()").concat(&Forest::empty()), f("()"));
    }

    #[test]
    fn magma_examples() {
        assert_eq!(f("(()())").magma_times(&f("()(())")), f("(()())(()(()))"));
        assert_eq!(Forest::empty().magma_times(&Forest::empty()), f("()"));
        let (left, right) = f("(()())(()(()))").magma_split().unwrap();
        assert_eq!((left, right), (f("(()())"), f("()(())")));
        let (left, right) = f("()").magma_split().unwrap();
        assert_eq!((left, right), (Forest::empty(), Forest::empty()));
        assert!(matches!(Forest::empty().magma_split(), Err(Error::EmptyForest)));
    }

    #[test]
    fn magma_split_inverts_magma_times() {
        for forest in enumerate(6) {
            if forest.is_empty() {
                continue;
            }
            let (left, right) = forest.magma_split().unwrap();
            assert_eq!(left.magma_times(&right), forest);
            assert_eq!(left.order() + right.order() + 1, forest.order());
        }
    }

    #[test]
    fn trees_split_and_rejoin() {
        for forest in enumerate(6) {
            let rejoined = forest
                .trees()
                .into_iter()
                .fold(Forest::empty(), |acc, t| acc.concat(t.as_forest()));
            assert_eq!(rejoined, forest);
            if let Some((first, rest)) = forest.split_first_tree() {
                assert_eq!(first.as_forest().concat(&rest), forest);
            }
        }
    }

    #[test]
    fn enumerate_small_orders() {
        assert_eq!(
            enumerate(2),
            vec![Forest::empty(), f("()"), f("(())"), f("()()")]
        );
        assert_eq!(
            forests_of_order(3),
            vec![f("((()))"), f("(()())"), f("(())()"), f("()(())"), f("()()()")]
        );
    }

    #[test]
    fn enumerate_matches_catalan_counts() {
        let expected = [1usize, 1, 2, 5, 14, 42, 132];
        for (n, want) in expected.iter().enumerate() {
            assert_eq!(forests_of_order(n).len(), *want, "order {n}");
        }
        assert_eq!(enumerate(6).len(), expected.iter().sum::<usize>());
    }

    // Independent oracle: generate forests by closing {1} under the magma
    // product instead of by first-tree decomposition.
    #[test]
    fn enumerate_matches_magma_closure() {
        let max = 5usize;
        let mut known: BTreeSet<Forest> = BTreeSet::new();
        known.insert(Forest::empty());
        loop {
            let snapshot: Vec<Forest> = known.iter().cloned().collect();
            let before = known.len();
            for a in &snapshot {
                for b in &snapshot {
                    if a.order() + b.order() < max {
                        known.insert(a.magma_times(b));
                    }
                }
            }
            if known.len() == before {
                break;
            }
        }
        let listed: BTreeSet<Forest> = enumerate(max).into_iter().collect();
        assert_eq!(known, listed);
    }

    #[test]
    fn canonical_order_is_graded_then_lex() {
        let all = enumerate(4);
        for pair in all.windows(2) {
            assert!(pair[0] < pair[1]);
        }
        assert!(f("()") < f("(())"));
        assert!(f("(())") < f("()()"));
    }

    #[test]
    fn display_round_trips() {
        for forest in enumerate(6) {
            let shown = forest.to_string();
            if forest.is_empty() {
                assert_eq!(shown, "1");
            } else {
                assert_eq!(Forest::parse(&shown).unwrap(), forest);
            }
        }
    }
}
