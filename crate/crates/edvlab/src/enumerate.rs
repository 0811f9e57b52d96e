//! Generation of all non-isomorphic free trees of a given order.
//!
//! Rooted trees are generated as canonical level sequences with the
//! classic successor rule (lexicographically decreasing, each canonical
//! sequence exactly once), then deduplicated up to free isomorphism by
//! canonical code. The stream is deterministic: two runs yield the same
//! trees in the same order.

use std::collections::HashSet;

use crate::canon::{canonical_code, CanonicalCode};
use crate::error::{Error, Result};
use crate::tree::Tree;

/// Soft cap; the generator is exact for any n but memory for the dedup set
/// grows with the number of rooted trees.
pub const MAX_ORDER: usize = 20;

/// Iterator over canonical level sequences of rooted trees on n vertices.
/// Level of the root is 0; entry i is the depth of vertex i in preorder.
struct LevelSequences {
    seq: Vec<u32>,
    started: bool,
    done: bool,
}

impl LevelSequences {
    fn new(n: usize) -> Self {
        LevelSequences {
            seq: (0..n as u32).collect(),
            started: false,
            done: n == 0,
        }
    }
}

impl Iterator for LevelSequences {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.seq.clone());
        }
        // Successor rule: find the last entry above level 1, shrink it by
        // repeating the block that starts at its new parent.
        let p = match self.seq.iter().rposition(|&l| l > 1) {
            Some(p) => p,
            None => {
                self.done = true;
                return None;
            }
        };
        let q = (0..p)
            .rev()
            .find(|&i| self.seq[i] == self.seq[p] - 1)
            .expect("every non-root level has a parent level to its left");
        let d = p - q;
        for i in p..self.seq.len() {
            self.seq[i] = self.seq[i - d];
        }
        Some(self.seq.clone())
    }
}

fn tree_from_level_sequence(seq: &[u32]) -> Tree {
    // stack[d] = most recent vertex at depth d.
    let mut stack: Vec<u32> = Vec::with_capacity(seq.len());
    let mut edges = Vec::with_capacity(seq.len().saturating_sub(1));
    for (i, &level) in seq.iter().enumerate() {
        stack.truncate(level as usize);
        if let Some(&parent) = stack.last() {
            edges.push((parent, i as u32));
        }
        stack.push(i as u32);
    }
    Tree::from_edges(seq.len(), &edges).expect("level sequence encodes a tree")
}

/// A deterministic stream of all non-isomorphic free trees of order n,
/// each emitted exactly once.
pub struct TreeStream {
    sequences: LevelSequences,
    seen: HashSet<CanonicalCode>,
}

impl Iterator for TreeStream {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        for seq in self.sequences.by_ref() {
            let tree = tree_from_level_sequence(&seq);
            if self.seen.insert(canonical_code(&tree)) {
                return Some(tree);
            }
        }
        None
    }
}

pub fn all_trees(n: usize) -> Result<TreeStream> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::UnsupportedOrder(n, MAX_ORDER));
    }
    Ok(TreeStream {
        sequences: LevelSequences::new(n),
        seen: HashSet::new(),
    })
}

pub fn count_trees(n: usize) -> Result<usize> {
    Ok(all_trees(n)?.count())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_values() {
        let expected = [1usize, 1, 1, 2, 3, 6, 11, 23, 47, 106];
        for (i, &want) in expected.iter().enumerate() {
            assert_eq!(count_trees(i + 1).unwrap(), want, "order {}", i + 1);
        }
    }

    #[test]
    fn codes_are_pairwise_distinct() {
        for n in 1..=12 {
            let mut seen = HashSet::new();
            for t in all_trees(n).unwrap() {
                assert_eq!(t.n(), n);
                assert!(seen.insert(canonical_code(&t)), "duplicate at order {n}");
            }
        }
    }

    #[test]
    fn stream_is_deterministic() {
        let a: Vec<String> = all_trees(8).unwrap().map(|t| t.to_text()).collect();
        let b: Vec<String> = all_trees(8).unwrap().map(|t| t.to_text()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn out_of_range_orders_are_rejected() {
        assert!(all_trees(0).is_err());
        assert!(all_trees(MAX_ORDER + 1).is_err());
    }
}
