//! Labeled free trees and the structural queries everything else builds on:
//! split sizes of `T - e`, the edge function mu, rooted components, and
//! pendant-path bookkeeping.
//!
//! Vertices are labeled `0..n-1`. A `Tree` is immutable after construction,
//! so values can be shared freely across threads.

use std::fmt;

use crate::error::{Error, Result};

/// An undirected edge, stored with `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    u: u32,
    v: u32,
}

impl Edge {
    /// Panics if `a == b`; edges of a tree never loop.
    pub fn new(a: u32, b: u32) -> Self {
        assert!(a != b, "self-loop {a}-{a} is not an edge");
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn u(&self) -> u32 {
        self.u
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn endpoints(&self) -> (u32, u32) {
        (self.u, self.v)
    }

    pub fn has_endpoint(&self, x: u32) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: u32) -> u32 {
        if x == self.u {
            self.v
        } else {
            assert!(x == self.v, "vertex {x} is not an endpoint of {self:?}");
            self.u
        }
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Component sizes of `T - e`, keyed by the normalized endpoints of `e`:
/// `n_u` is the side containing `e.u()`, `n_v` the side containing `e.v()`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitSizes {
    pub n_u: u32,
    pub n_v: u32,
}

/// A labeled free tree on `n` vertices with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    adj: Vec<Vec<u32>>,
}

impl Tree {
    /// Builds a tree from an edge list, validating that the result is a
    /// connected acyclic simple graph on `0..n-1`.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTree("a tree has at least one vertex".into()));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "expected {} edges for order {n}, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a as usize >= n || b as usize >= n {
                return Err(Error::InvalidTree(format!(
                    "edge {a}-{b} has an endpoint outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidTree(format!("self-loop at {a}")));
            }
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for (v, nbrs) in adj.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if nbrs.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidTree(format!("parallel edge at vertex {v}")));
            }
        }
        let tree = Tree { adj };
        // n-1 simple edges and connectivity together rule out cycles.
        if tree.reachable_count(0) != n {
            return Err(Error::InvalidTree("graph is not connected".into()));
        }
        Ok(tree)
    }

    fn reachable_count(&self, start: u32) -> usize {
        let mut seen = vec![false; self.n()];
        let mut stack = vec![start];
        seen[start as usize] = true;
        let mut count = 0;
        while let Some(v) = stack.pop() {
            count += 1;
            for &w in &self.adj[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        count
    }

    /// The path `P_n` on vertices `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n as u32).map(|i| (i - 1, i)).collect();
        Tree::from_edges(n.max(1), &edges).expect("path is a tree")
    }

    /// The star `S_n` with center 0.
    pub fn star(n: usize) -> Self {
        let edges: Vec<_> = (1..n as u32).map(|i| (0, i)).collect();
        Tree::from_edges(n.max(1), &edges).expect("star is a tree")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        (v as usize) < self.n()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn is_leaf(&self, v: u32) -> bool {
        self.degree(v) == 1
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.contains_vertex(a)
            && self.contains_vertex(b)
            && self.adj[a as usize].binary_search(&b).is_ok()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.u(), e.v())
    }

    /// All edges, normalized and sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.n().saturating_sub(1));
        for v in 0..self.n() as u32 {
            for &w in &self.adj[v as usize] {
                if v < w {
                    out.push(Edge::new(v, w));
                }
            }
        }
        out
    }

    pub fn leaves(&self) -> Vec<u32> {
        (0..self.n() as u32).filter(|&v| self.is_leaf(v)).collect()
    }

    /// Vertices of degree >= 3.
    pub fn branching_vertices(&self) -> Vec<u32> {
        (0..self.n() as u32)
            .filter(|&v| self.degree(v) >= 3)
            .collect()
    }

    /// Applies the permutation `perm` (vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[u32]) -> Result<Self> {
        if perm.len() != self.n() {
            return Err(Error::InvalidArgument(format!(
                "permutation length {} does not match order {}",
                perm.len(),
                self.n()
            )));
        }
        let mut seen = vec![false; self.n()];
        for &p in perm {
            if p as usize >= self.n() || seen[p as usize] {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
            seen[p as usize] = true;
        }
        let edges: Vec<_> = self
            .edges()
            .iter()
            .map(|e| (perm[e.u() as usize], perm[e.v() as usize]))
            .collect();
        Tree::from_edges(self.n(), &edges)
    }

    /// Parent array and DFS preorder of the tree rooted at `root`.
    /// `parent[root] == root`.
    pub(crate) fn rooted_preorder(&self, root: u32) -> (Vec<u32>, Vec<u32>) {
        let mut parent = vec![u32::MAX; self.n()];
        let mut order = Vec::with_capacity(self.n());
        parent[root as usize] = root;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &self.adj[v as usize] {
                if parent[w as usize] == u32::MAX {
                    parent[w as usize] = v;
                    stack.push(w);
                }
            }
        }
        (parent, order)
    }

    /// Subtree sizes for the tree rooted at `root`, one traversal for all
    /// edges at once: the edge `(parent[v], v)` splits off `sizes[v]` vertices.
    pub(crate) fn subtree_sizes(&self, root: u32) -> (Vec<u32>, Vec<u32>) {
        let (parent, order) = self.rooted_preorder(root);
        let mut sizes = vec![1u32; self.n()];
        for &v in order.iter().rev() {
            if v != root {
                sizes[parent[v as usize] as usize] += sizes[v as usize];
            }
        }
        (sizes, parent)
    }

    /// BFS distances from `start`.
    pub fn distances_from(&self, start: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n()];
        dist[start as usize] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v as usize] {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[v as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// The unique path from `a` to `b`, inclusive.
    pub fn path_between(&self, a: u32, b: u32) -> Result<Vec<u32>> {
        if !self.contains_vertex(a) {
            return Err(Error::InvalidVertex(a));
        }
        if !self.contains_vertex(b) {
            return Err(Error::InvalidVertex(b));
        }
        let (parent, _) = self.rooted_preorder(a);
        let mut path = vec![b];
        let mut cur = b;
        while cur != a {
            cur = parent[cur as usize];
            path.push(cur);
        }
        path.reverse();
        Ok(path)
    }

    /// Parses the canonical text format: first line `n`, then `n-1` lines
    /// `u v` with `0 <= u < v < n`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let first = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?;
        let n: usize = first
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex count {first:?}")))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let u: u32 = it
                .next()
                .ok_or_else(|| Error::Parse(format!("bad edge line {line:?}")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad edge line {line:?}")))?;
            let v: u32 = it
                .next()
                .ok_or_else(|| Error::Parse(format!("bad edge line {line:?}")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad edge line {line:?}")))?;
            if it.next().is_some() {
                return Err(Error::Parse(format!("trailing tokens in {line:?}")));
            }
            if u >= v {
                return Err(Error::Parse(format!("edge {u} {v} is not in u < v form")));
            }
            edges.push((u, v));
        }
        Tree::from_edges(n, &edges)
    }

    /// Renders the canonical text format (LF line endings, edges sorted).
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n());
        for e in self.edges() {
            out.push_str(&format!("{} {}\n", e.u(), e.v()));
        }
        out
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree(n={}, {:?})", self.n(), self.edges())
    }
}

fn require_edge(t: &Tree, e: Edge) -> Result<()> {
    if !t.contains_edge(e) {
        return Err(Error::InvalidEdge { u: e.u(), v: e.v() });
    }
    Ok(())
}

/// Component sizes of `t - e`.
pub fn split_sizes(t: &Tree, e: Edge) -> Result<SplitSizes> {
    require_edge(t, e)?;
    // One DFS from e.u that never crosses e.
    let mut count = 0u32;
    let mut seen = vec![false; t.n()];
    seen[e.u() as usize] = true;
    seen[e.v() as usize] = true;
    let mut stack = vec![e.u()];
    while let Some(v) = stack.pop() {
        count += 1;
        for &w in t.neighbors(v) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                stack.push(w);
            }
        }
    }
    Ok(SplitSizes {
        n_u: count,
        n_v: t.n() as u32 - count,
    })
}

/// The edge function mu(e) = min of the two component sizes of `t - e`.
/// Always in `1..=n/2`.
pub fn mu(t: &Tree, e: Edge) -> Result<u32> {
    let s = split_sizes(t, e)?;
    Ok(s.n_u.min(s.n_v))
}

/// A tree with a distinguished root. Built either directly from a `Tree`
/// (identity labels) or as a component of `t - e`, in which case `labels`
/// maps the compact vertices back to the labels they carried in `t`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RootedTree {
    tree: Tree,
    root: u32,
    labels: Vec<u32>,
}

impl RootedTree {
    pub fn new(tree: Tree, root: u32) -> Result<Self> {
        if !tree.contains_vertex(root) {
            return Err(Error::InvalidVertex(root));
        }
        let labels = (0..tree.n() as u32).collect();
        Ok(RootedTree { tree, root, labels })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    /// Root in the compact labeling.
    pub fn root(&self) -> u32 {
        self.root
    }

    /// Original label carried by compact vertex `v`.
    pub fn original_label(&self, v: u32) -> u32 {
        self.labels[v as usize]
    }

    /// Original label of the root.
    pub fn original_root(&self) -> u32 {
        self.labels[self.root as usize]
    }

    /// Original labels of all vertices, ascending.
    pub fn original_labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.tree.n()
    }
}

/// The component of `t - e` containing `side`, rooted at `side`.
/// Original vertex labels are preserved via the label map.
pub fn component_of(t: &Tree, e: Edge, side: u32) -> Result<RootedTree> {
    require_edge(t, e)?;
    if !e.has_endpoint(side) {
        return Err(Error::InvalidArgument(format!(
            "vertex {side} is not an endpoint of {e:?}"
        )));
    }
    let far = e.other(side);
    let mut members = Vec::new();
    let mut seen = vec![false; t.n()];
    seen[side as usize] = true;
    seen[far as usize] = true;
    let mut stack = vec![side];
    while let Some(v) = stack.pop() {
        members.push(v);
        for &w in t.neighbors(v) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                stack.push(w);
            }
        }
    }
    members.sort_unstable();
    let mut compact = vec![u32::MAX; t.n()];
    for (i, &v) in members.iter().enumerate() {
        compact[v as usize] = i as u32;
    }
    let mut edges = Vec::new();
    for &v in &members {
        for &w in t.neighbors(v) {
            if v < w && compact[w as usize] != u32::MAX {
                edges.push((compact[v as usize], compact[w as usize]));
            }
        }
    }
    let tree = Tree::from_edges(members.len(), &edges)?;
    Ok(RootedTree {
        tree,
        root: compact[side as usize],
        labels: members,
    })
}

/// Multiset of maximal pendant path lengths, one entry per leaf: the number
/// of vertices strictly between the leaf (inclusive) and the first branching
/// vertex. A pure path has no branching vertex and is reported as the single
/// entry `n`.
pub fn maximal_pendent_paths(t: &Tree) -> Result<Vec<u32>> {
    if t.n() < 2 {
        return Err(Error::InvalidArgument(
            "pendant paths need a tree of order >= 2".into(),
        ));
    }
    if t.branching_vertices().is_empty() {
        return Ok(vec![t.n() as u32]);
    }
    let mut lengths = Vec::new();
    for leaf in t.leaves() {
        let mut count = 1u32;
        let mut prev = leaf;
        let mut cur = t.neighbors(leaf)[0];
        while t.degree(cur) == 2 {
            count += 1;
            let next = t
                .neighbors(cur)
                .iter()
                .copied()
                .find(|&w| w != prev)
                .expect("degree-2 vertex has a far neighbor");
            prev = cur;
            cur = next;
        }
        lengths.push(count);
    }
    lengths.sort_unstable();
    Ok(lengths)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5() -> Tree {
        Tree::path(5)
    }

    #[test]
    fn split_sizes_examples() {
        let p2 = Tree::path(2);
        assert_eq!(
            split_sizes(&p2, Edge::new(0, 1)).unwrap(),
            SplitSizes { n_u: 1, n_v: 1 }
        );

        let s4 = Tree::star(4);
        assert_eq!(
            split_sizes(&s4, Edge::new(0, 1)).unwrap(),
            SplitSizes { n_u: 3, n_v: 1 }
        );

        assert_eq!(
            split_sizes(&p5(), Edge::new(1, 2)).unwrap(),
            SplitSizes { n_u: 2, n_v: 3 }
        );
    }

    #[test]
    fn split_sizes_rejects_non_edges() {
        assert!(matches!(
            split_sizes(&p5(), Edge::new(0, 2)),
            Err(Error::InvalidEdge { u: 0, v: 2 })
        ));
        assert!(split_sizes(&p5(), Edge::new(0, 9)).is_err());
    }

    #[test]
    fn mu_examples() {
        let s4 = Tree::star(4);
        for e in s4.edges() {
            assert_eq!(mu(&s4, e).unwrap(), 1);
        }
        assert_eq!(mu(&p5(), Edge::new(1, 2)).unwrap(), 2);
        assert_eq!(mu(&Tree::path(7), Edge::new(3, 4)).unwrap(), 3);
    }

    #[test]
    fn component_of_examples() {
        let p3 = Tree::path(3);
        let c = component_of(&p3, Edge::new(0, 1), 0).unwrap();
        assert_eq!(c.n(), 1);
        assert_eq!(c.original_root(), 0);

        let c = component_of(&p5(), Edge::new(1, 2), 2).unwrap();
        assert_eq!(c.n(), 3);
        assert_eq!(c.original_root(), 2);
        assert_eq!(c.original_labels(), &[2, 3, 4]);

        let s4 = Tree::star(4);
        let c = component_of(&s4, Edge::new(0, 1), 0).unwrap();
        assert_eq!(c.n(), 3);
        assert_eq!(c.original_root(), 0);
        assert_eq!(c.original_labels(), &[0, 2, 3]);
        assert_eq!(c.tree().degree(c.root()), 2);

        assert!(component_of(&s4, Edge::new(0, 1), 2).is_err());
    }

    #[test]
    fn pendant_paths_examples() {
        // Starlike with legs 2,2,3.
        let spider =
            Tree::from_edges(8, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6), (6, 7)]).unwrap();
        assert_eq!(maximal_pendent_paths(&spider).unwrap(), vec![2, 2, 3]);

        assert_eq!(
            maximal_pendent_paths(&Tree::star(5)).unwrap(),
            vec![1, 1, 1, 1]
        );

        // The order-7 caterpillar: path 0-1-2-3-4 with leaves 5,6 on vertex 1.
        let t71 = Tree::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (1, 6)]).unwrap();
        assert_eq!(maximal_pendent_paths(&t71).unwrap(), vec![1, 1, 1, 3]);

        // Pure path degenerate case: one entry of length n.
        assert_eq!(maximal_pendent_paths(&Tree::path(6)).unwrap(), vec![6]);
        assert!(maximal_pendent_paths(&Tree::from_edges(1, &[]).unwrap()).is_err());
    }

    #[test]
    fn order_one_tree_is_accepted() {
        let t = Tree::from_edges(1, &[]).unwrap();
        assert_eq!(t.n(), 1);
        assert!(t.edges().is_empty());
    }

    #[test]
    fn from_edges_validation() {
        assert!(Tree::from_edges(0, &[]).is_err());
        assert!(Tree::from_edges(3, &[(0, 1)]).is_err());
        assert!(Tree::from_edges(2, &[(0, 0)]).is_err());
        assert!(Tree::from_edges(3, &[(0, 1), (0, 1)]).is_err());
        assert!(Tree::from_edges(4, &[(0, 1), (2, 3), (0, 1)]).is_err());
        assert!(Tree::from_edges(2, &[(0, 5)]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let t = Tree::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (1, 6)]).unwrap();
        let text = t.to_text();
        assert_eq!(text, "7\n0 1\n1 2\n1 5\n1 6\n2 3\n3 4\n");
        assert_eq!(Tree::parse(&text).unwrap(), t);
        assert!(Tree::parse("").is_err());
        assert!(Tree::parse("2\n1 0\n").is_err());
        assert!(Tree::parse("2\n0 1 9\n").is_err());
    }

    #[test]
    fn path_between_endpoints() {
        let t = p5();
        assert_eq!(t.path_between(0, 4).unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(t.path_between(3, 1).unwrap(), vec![3, 2, 1]);
        assert_eq!(t.path_between(2, 2).unwrap(), vec![2]);
    }

    #[test]
    fn split_sums_to_n_on_paths() {
        for n in 2..=10 {
            let t = Tree::path(n);
            for e in t.edges() {
                let s = split_sizes(&t, e).unwrap();
                assert_eq!(s.n_u + s.n_v, n as u32);
            }
        }
    }
}
