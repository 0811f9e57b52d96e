//! Shared test oracles, all independent of the library's own algorithms:
//! Prüfer-sequence generation of every labeled tree, permutation-search
//! isomorphism, and exhaustive automorphism enumeration.

// Each test binary uses its own subset of these helpers.
#![allow(dead_code)]

use std::collections::HashSet;

use edvlab::canon::{canonical_code, CanonicalCode};
use edvlab::tree::Tree;

/// Decodes a Prüfer sequence over 0..n-1 into the labeled tree it encodes.
pub fn tree_from_prufer(n: usize, seq: &[u32]) -> Tree {
    assert_eq!(seq.len(), n - 2);
    let mut degree = vec![1u32; n];
    for &s in seq {
        degree[s as usize] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    // Smallest remaining leaf at each step, tracked with a moving pointer.
    let mut ptr = 0usize;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr as u32;
    for &s in seq {
        edges.push((leaf.min(s), leaf.max(s)));
        degree[s as usize] -= 1;
        if degree[s as usize] == 1 && (s as usize) < ptr {
            leaf = s;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr as u32;
        }
    }
    // The loop never selects n-1, so it is the partner of the final leaf.
    let last = (n - 1) as u32;
    edges.push((leaf.min(last), leaf.max(last)));
    Tree::from_edges(n, &edges).expect("Prüfer decoding yields a tree")
}

/// Canonical codes of every free tree of order n, obtained by decoding all
/// n^(n-2) Prüfer sequences and deduplicating.
pub fn prufer_canonical_codes(n: usize) -> HashSet<CanonicalCode> {
    let mut out = HashSet::new();
    if n == 1 || n == 2 {
        out.insert(canonical_code(&Tree::path(n)));
        return out;
    }
    let len = n - 2;
    let mut seq = vec![0u32; len];
    loop {
        out.insert(canonical_code(&tree_from_prufer(n, &seq)));
        // Odometer increment over base-n digits.
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            seq[i] += 1;
            if (seq[i] as usize) < n {
                break;
            }
            seq[i] = 0;
        }
    }
}

pub fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for i in 0..n as u32 {
        let mut next = Vec::new();
        for p in out {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, i);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Isomorphism by exhaustive permutation search.
pub fn isomorphic_brute_force(a: &Tree, b: &Tree) -> bool {
    if a.n() != b.n() {
        return false;
    }
    permutations(a.n())
        .into_iter()
        .any(|perm| &a.relabel(&perm).unwrap() == b)
}

/// Every unordered pair (u, v) swapped by some automorphism of `t`, found
/// by enumerating the whole symmetric group once.
pub fn similar_pairs_brute_force(t: &Tree, perms: &[Vec<u32>]) -> HashSet<(u32, u32)> {
    let mut out = HashSet::new();
    for perm in perms {
        if &t.relabel(perm).unwrap() == t {
            for u in 0..t.n() as u32 {
                let v = perm[u as usize];
                if u < v && perm[v as usize] == u {
                    out.insert((u, v));
                }
            }
        }
    }
    out
}

/// All trees of order n as a vector.
pub fn trees_of(n: usize) -> Vec<Tree> {
    edvlab::enumerate::all_trees(n)
        .expect("order in range")
        .collect()
}
