//! Branch-moving and branch-exchange transformations.
//!
//! Branch-moving detaches the subtree hanging at a neighbor x of u and
//! reattaches it at a vertex v adjacent to u; the resulting order relation
//! is predictable from the split sizes alone. Branch-exchange swaps two
//! balanced sets of root-branches between vertices u and v and preserves
//! the edge division vector; when the swapped branch forests are not
//! strongly isomorphic and u, v are not similar in the stripped tree, the
//! exchanged tree is certified non-isomorphic.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::collections::VecDeque;

use crate::canon::{are_similar, branch_code, canonical_code, CanonicalCode, RootedCode};
use crate::edv::OrderRelation;
use crate::error::{Error, Result};
use crate::tree::{split_sizes, Edge, RootedTree, Tree};

/// Closure search refuses to grow past this many distinct trees.
pub const CLOSURE_CAP: usize = 10_000;

/// Move the branch hanging at x (a neighbor of u) over to v (another
/// neighbor of u): `T' = T - ux + vx`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchMove {
    pub u: u32,
    pub v: u32,
    pub x: u32,
}

fn check_move(t: &Tree, m: &BranchMove) -> Result<()> {
    if m.x == m.v {
        return Err(Error::InvalidMove(format!(
            "moved branch root {} coincides with the target vertex",
            m.x
        )));
    }
    if !t.has_edge(m.u, m.v) {
        return Err(Error::InvalidMove(format!(
            "{}-{} is not an edge",
            m.u, m.v
        )));
    }
    if !t.has_edge(m.u, m.x) {
        return Err(Error::InvalidMove(format!(
            "{}-{} is not an edge",
            m.u, m.x
        )));
    }
    Ok(())
}

pub fn branch_move(t: &Tree, m: &BranchMove) -> Result<Tree> {
    check_move(t, m)?;
    let mut edges: Vec<(u32, u32)> = t
        .edges()
        .iter()
        .filter(|e| **e != Edge::new(m.u, m.x))
        .map(|e| e.endpoints())
        .collect();
    edges.push((m.v.min(m.x), m.v.max(m.x)));
    Tree::from_edges(t.n(), &edges)
}

/// Predicts the order relation of T against T' = branch_move(T, m) from
/// split sizes alone, without constructing T'. With a = n_u(uv), b = n_v(uv)
/// and w = |T_x(ux)|: if a <= b the move strictly lowers T', so T is
/// greater; otherwise the relation follows the sign of a - b - w.
pub fn predict_branch_move(t: &Tree, m: &BranchMove) -> Result<OrderRelation> {
    check_move(t, m)?;
    let s = split_sizes(t, Edge::new(m.u, m.v))?;
    let (a, b) = if m.u < m.v {
        (s.n_u, s.n_v)
    } else {
        (s.n_v, s.n_u)
    };
    if a <= b {
        return Ok(OrderRelation::Greater);
    }
    let sx = split_sizes(t, Edge::new(m.u, m.x))?;
    let w = if m.x < m.u { sx.n_u } else { sx.n_v };
    Ok(match (a - b).cmp(&w) {
        std::cmp::Ordering::Greater => OrderRelation::Less,
        std::cmp::Ordering::Less => OrderRelation::Greater,
        std::cmp::Ordering::Equal => OrderRelation::Equivalent,
    })
}

/// Two nonempty sets of root-branches at u and at v with equal total sizes.
/// `s_u` holds branch roots adjacent to u (excluding u's neighbor on the
/// u-v path), likewise `s_v` at v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedPair {
    pub u: u32,
    pub v: u32,
    pub s_u: Vec<u32>,
    pub s_v: Vec<u32>,
}

/// Branch roots at `anchor` that are eligible for exchange toward `other`:
/// all neighbors except the one on the path to `other`.
fn eligible_roots(t: &Tree, anchor: u32, path_neighbor: u32) -> Vec<u32> {
    t.neighbors(anchor)
        .iter()
        .copied()
        .filter(|&x| x != path_neighbor)
        .collect()
}

fn branch_size(t: &Tree, anchor: u32, x: u32) -> u32 {
    let s = split_sizes(t, Edge::new(anchor, x)).expect("branch edge exists");
    if x < anchor {
        s.n_u
    } else {
        s.n_v
    }
}

/// Subset enumeration is exponential in the anchor degree; refuse inputs
/// where it would not terminate in reasonable time.
const MAX_ELIGIBLE_BRANCHES: usize = 24;

/// Nonempty subsets of `roots` grouped by total branch size.
fn subset_sums(t: &Tree, anchor: u32, roots: &[u32]) -> Result<BTreeMap<u32, Vec<Vec<u32>>>> {
    if roots.len() > MAX_ELIGIBLE_BRANCHES {
        return Err(Error::InvalidArgument(format!(
            "vertex {anchor} has {} exchangeable branches; the subset search caps at {MAX_ELIGIBLE_BRANCHES}",
            roots.len()
        )));
    }
    let sizes: Vec<u32> = roots.iter().map(|&x| branch_size(t, anchor, x)).collect();
    let mut by_total: BTreeMap<u32, Vec<Vec<u32>>> = BTreeMap::new();
    for mask in 1u32..(1u32 << roots.len()) {
        let mut total = 0;
        let mut subset = Vec::new();
        for (i, &x) in roots.iter().enumerate() {
            if mask & (1 << i) != 0 {
                total += sizes[i];
                subset.push(x);
            }
        }
        by_total.entry(total).or_default().push(subset);
    }
    for subsets in by_total.values_mut() {
        subsets.sort_unstable();
    }
    Ok(by_total)
}

/// All balanced pairs of branch subsets at (u, v), in a deterministic order
/// (ascending total, then lexicographic subsets).
pub fn find_balanced_pairs(t: &Tree, u: u32, v: u32) -> Result<Vec<BalancedPair>> {
    if !t.contains_vertex(u) {
        return Err(Error::InvalidVertex(u));
    }
    if !t.contains_vertex(v) {
        return Err(Error::InvalidVertex(v));
    }
    if u == v {
        return Err(Error::InvalidArgument(
            "balanced pairs need two distinct vertices".into(),
        ));
    }
    let path = t.path_between(u, v)?;
    let roots_u = eligible_roots(t, u, path[1]);
    let roots_v = eligible_roots(t, v, path[path.len() - 2]);
    if roots_u.is_empty() || roots_v.is_empty() {
        return Ok(Vec::new());
    }
    let sums_u = subset_sums(t, u, &roots_u)?;
    let sums_v = subset_sums(t, v, &roots_v)?;
    let mut out = Vec::new();
    for (total, subsets_u) in &sums_u {
        if let Some(subsets_v) = sums_v.get(total) {
            for su in subsets_u {
                for sv in subsets_v {
                    out.push(BalancedPair {
                        u,
                        v,
                        s_u: su.clone(),
                        s_v: sv.clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

fn check_pair(t: &Tree, p: &BalancedPair) -> Result<()> {
    if p.u == p.v {
        return Err(Error::InvalidPair("anchors coincide".into()));
    }
    if p.s_u.is_empty() || p.s_v.is_empty() {
        return Err(Error::InvalidPair("branch sets must be nonempty".into()));
    }
    let path = t.path_between(p.u, p.v)?;
    for (&anchor, set, path_neighbor) in [
        (&p.u, &p.s_u, path[1]),
        (&p.v, &p.s_v, path[path.len() - 2]),
    ] {
        let mut seen = BTreeSet::new();
        for &x in set.iter() {
            if !t.has_edge(anchor, x) {
                return Err(Error::InvalidPair(format!(
                    "{x} is not adjacent to {anchor}"
                )));
            }
            if x == path_neighbor {
                return Err(Error::InvalidPair(format!(
                    "{x} lies on the path between the anchors"
                )));
            }
            if !seen.insert(x) {
                return Err(Error::InvalidPair(format!("duplicate branch root {x}")));
            }
        }
    }
    let total_u: u32 = p.s_u.iter().map(|&x| branch_size(t, p.u, x)).sum();
    let total_v: u32 = p.s_v.iter().map(|&y| branch_size(t, p.v, y)).sum();
    if total_u != total_v {
        return Err(Error::InvalidPair(format!(
            "branch totals differ: {total_u} vs {total_v}"
        )));
    }
    Ok(())
}

/// Swap the balanced branch sets: branches rooted in `s_u` reattach at v,
/// branches rooted in `s_v` reattach at u. Preserves the edge division
/// vector.
pub fn branch_exchange(t: &Tree, p: &BalancedPair) -> Result<Tree> {
    check_pair(t, p)?;
    let dropped: BTreeSet<Edge> = p
        .s_u
        .iter()
        .map(|&x| Edge::new(p.u, x))
        .chain(p.s_v.iter().map(|&y| Edge::new(p.v, y)))
        .collect();
    let mut edges: Vec<(u32, u32)> = t
        .edges()
        .iter()
        .filter(|e| !dropped.contains(e))
        .map(|e| e.endpoints())
        .collect();
    for &x in &p.s_u {
        edges.push((p.v.min(x), p.v.max(x)));
    }
    for &y in &p.s_v {
        edges.push((p.u.min(y), p.u.max(y)));
    }
    Tree::from_edges(t.n(), &edges)
}

/// The stripped tree T*: t minus the exchanged branches (anchors stay),
/// with the compact labels of u and v.
fn stripped_tree(t: &Tree, p: &BalancedPair) -> (Tree, u32, u32) {
    let mut removed = vec![false; t.n()];
    for (&anchor, set) in [(&p.u, &p.s_u), (&p.v, &p.s_v)] {
        for &x in set.iter() {
            let mut stack = vec![x];
            removed[x as usize] = true;
            while let Some(a) = stack.pop() {
                for &b in t.neighbors(a) {
                    if b != anchor && !removed[b as usize] {
                        removed[b as usize] = true;
                        stack.push(b);
                    }
                }
            }
        }
    }
    let mut compact = vec![u32::MAX; t.n()];
    let mut m = 0u32;
    for v in 0..t.n() as u32 {
        if !removed[v as usize] {
            compact[v as usize] = m;
            m += 1;
        }
    }
    let mut edges = Vec::new();
    for e in t.edges() {
        let (a, b) = e.endpoints();
        if compact[a as usize] != u32::MAX && compact[b as usize] != u32::MAX {
            edges.push((compact[a as usize], compact[b as usize]));
        }
    }
    let stripped = Tree::from_edges(m as usize, &edges).expect("stripping branches keeps a tree");
    (stripped, compact[p.u as usize], compact[p.v as usize])
}

/// Evaluation of the two hypotheses of the non-isomorphism certificate.
/// When both flags are false, the exchanged tree is provably not isomorphic
/// to the original.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeCertificate {
    pub pair: BalancedPair,
    pub branches_strongly_isomorphic: bool,
    pub roots_similar_in_stripped: bool,
}

impl ExchangeCertificate {
    /// True when the certificate proves the exchange non-isomorphic.
    pub fn certifies_non_isomorphic(&self) -> bool {
        !self.branches_strongly_isomorphic && !self.roots_similar_in_stripped
    }
}

pub fn exchange_certificate(t: &Tree, p: &BalancedPair) -> Result<ExchangeCertificate> {
    check_pair(t, p)?;
    let mut codes_u: Vec<RootedCode> = p.s_u.iter().map(|&x| branch_code(t, p.u, x)).collect();
    let mut codes_v: Vec<RootedCode> = p.s_v.iter().map(|&y| branch_code(t, p.v, y)).collect();
    codes_u.sort_unstable();
    codes_v.sort_unstable();
    let branches_iso = codes_u == codes_v;

    let (stripped, su, sv) = stripped_tree(t, p);
    let similar = are_similar(&stripped, su, sv)?;

    Ok(ExchangeCertificate {
        pair: p.clone(),
        branches_strongly_isomorphic: branches_iso,
        roots_similar_in_stripped: similar,
    })
}

/// Breadth-first fixpoint of branch-exchange over all vertex pairs,
/// deduplicated by canonical code. Every member keeps the edge division
/// vector of the seed.
pub fn exchange_closure(t: &Tree) -> Result<BTreeSet<CanonicalCode>> {
    Ok(exchange_closure_with_members(t)?
        .into_iter()
        .map(|(code, _)| code)
        .collect())
}

/// Closure with one representative tree per canonical code, sorted by code.
pub fn exchange_closure_with_members(t: &Tree) -> Result<Vec<(CanonicalCode, Tree)>> {
    let mut seen: BTreeMap<CanonicalCode, Tree> = BTreeMap::new();
    seen.insert(canonical_code(t), t.clone());
    let mut queue = VecDeque::from([t.clone()]);
    while let Some(cur) = queue.pop_front() {
        let n = cur.n() as u32;
        for u in 0..n {
            for v in (u + 1)..n {
                for pair in find_balanced_pairs(&cur, u, v)? {
                    let next = branch_exchange(&cur, &pair)?;
                    let code = canonical_code(&next);
                    if !seen.contains_key(&code) {
                        if seen.len() >= CLOSURE_CAP {
                            return Err(Error::ClosureOverflow(CLOSURE_CAP));
                        }
                        seen.insert(code, next.clone());
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Builds a pair of trees with equal edge division vectors that are provably
/// non-isomorphic: attach `branch` (by a new edge from its root) once at u
/// and once at v, where the edge uv splits `tstar` into equal halves and
/// u, v are not similar in `tstar`.
pub fn nonisomorphic_equivalent_pair(
    tstar: &Tree,
    u: u32,
    v: u32,
    branch: &RootedTree,
) -> Result<(Tree, Tree)> {
    if !tstar.has_edge(u, v) {
        return Err(Error::Precondition(format!(
            "{u}-{v} is not an edge of the base tree"
        )));
    }
    let s = split_sizes(tstar, Edge::new(u, v))?;
    if s.n_u != s.n_v {
        return Err(Error::Precondition(format!(
            "the edge {u}-{v} splits the base tree {}:{}, not into equal halves",
            s.n_u, s.n_v
        )));
    }
    if are_similar(tstar, u, v)? {
        return Err(Error::Precondition(format!(
            "{u} and {v} are similar in the base tree"
        )));
    }
    let base = tstar.n() as u32;
    let mut edges: Vec<(u32, u32)> = tstar.edges().iter().map(|e| e.endpoints()).collect();
    for e in branch.tree().edges() {
        edges.push((base + e.u(), base + e.v()));
    }
    let attach = base + branch.root();
    let n = tstar.n() + branch.n();

    let mut edges_t = edges.clone();
    edges_t.push((u.min(attach), u.max(attach)));
    let t = Tree::from_edges(n, &edges_t)?;

    edges.push((v.min(attach), v.max(attach)));
    let t_prime = Tree::from_edges(n, &edges)?;
    Ok((t, t_prime))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::edv::{compare, edv, EdgeDivisionVector};

    fn ev(n: u32, r: &[u64]) -> EdgeDivisionVector {
        EdgeDivisionVector::new(n, r.to_vec()).unwrap()
    }

    #[test]
    fn branch_move_on_p4_gives_star() {
        let p4 = Tree::path(4);
        let m = BranchMove { u: 1, v: 2, x: 0 };
        let moved = branch_move(&p4, &m).unwrap();
        assert!(is_isomorphic(&moved, &Tree::star(4)));
        assert_eq!(
            predict_branch_move(&p4, &m).unwrap(),
            OrderRelation::Greater
        );
        assert_eq!(
            compare(&edv(&p4).unwrap(), &edv(&moved).unwrap()).unwrap(),
            OrderRelation::Greater
        );

        // Moving back restores the original exactly.
        let back = branch_move(&moved, &BranchMove { u: 2, v: 1, x: 0 }).unwrap();
        assert_eq!(back, p4);
    }

    #[test]
    fn branch_move_equality_case() {
        // Path 0-1-2-3-4 plus leaf 5 on vertex 2; moving the branch at 1
        // from 2 over to 3 keeps the vector (3,2,0).
        let t = Tree::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]).unwrap();
        let m = BranchMove { u: 2, v: 3, x: 1 };
        assert_eq!(edv(&t).unwrap(), ev(6, &[3, 2, 0]));
        assert_eq!(
            predict_branch_move(&t, &m).unwrap(),
            OrderRelation::Equivalent
        );
        let moved = branch_move(&t, &m).unwrap();
        assert_eq!(edv(&moved).unwrap(), ev(6, &[3, 2, 0]));
    }

    #[test]
    fn branch_move_rejects_bad_input() {
        let p4 = Tree::path(4);
        assert!(branch_move(&p4, &BranchMove { u: 1, v: 3, x: 0 }).is_err());
        assert!(branch_move(&p4, &BranchMove { u: 1, v: 2, x: 3 }).is_err());
        assert!(branch_move(&p4, &BranchMove { u: 1, v: 2, x: 2 }).is_err());
    }

    #[test]
    fn balanced_pairs_on_small_trees() {
        let p4 = Tree::path(4);
        let pairs = find_balanced_pairs(&p4, 1, 2).unwrap();
        assert_eq!(
            pairs,
            vec![BalancedPair {
                u: 1,
                v: 2,
                s_u: vec![0],
                s_v: vec![3]
            }]
        );

        let s5 = Tree::star(5);
        assert!(find_balanced_pairs(&s5, 0, 1).unwrap().is_empty());
        assert!(find_balanced_pairs(&s5, 0, 0).is_err());
    }

    /// The 14-vertex worked example: a base tree with dissimilar anchors
    /// u=0, v=2 at distance two, plus P_3 rooted at its center hanging at u
    /// and P_3 rooted at an endpoint hanging at v.
    fn example_3_1() -> (Tree, BalancedPair) {
        let t = Tree::from_edges(
            14,
            &[
                (0, 3),
                (3, 5),
                (3, 6),
                (0, 1),
                (1, 7),
                (1, 2),
                (2, 4),
                (0, 8),
                (8, 9),
                (8, 10),
                (2, 11),
                (11, 12),
                (12, 13),
            ],
        )
        .unwrap();
        let pair = BalancedPair {
            u: 0,
            v: 2,
            s_u: vec![8],
            s_v: vec![11],
        };
        (t, pair)
    }

    #[test]
    fn worked_exchange_preserves_vector_and_changes_shape() {
        let (t, pair) = example_3_1();
        let found = find_balanced_pairs(&t, 0, 2).unwrap();
        assert!(found.contains(&pair));

        let expected = ev(14, &[7, 1, 3, 0, 1, 0, 1]);
        assert_eq!(edv(&t).unwrap(), expected);

        let exchanged = branch_exchange(&t, &pair).unwrap();
        assert_eq!(edv(&exchanged).unwrap(), expected);
        assert!(!is_isomorphic(&t, &exchanged));

        let cert = exchange_certificate(&t, &pair).unwrap();
        assert!(!cert.branches_strongly_isomorphic);
        assert!(!cert.roots_similar_in_stripped);
        assert!(cert.certifies_non_isomorphic());
    }

    #[test]
    fn exchanging_identical_branches_is_isomorphic() {
        // Leaves exchanged between the two similar centers of a double star.
        let t = Tree::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        let pair = BalancedPair {
            u: 0,
            v: 1,
            s_u: vec![2],
            s_v: vec![4],
        };
        let cert = exchange_certificate(&t, &pair).unwrap();
        assert!(cert.branches_strongly_isomorphic);
        let exchanged = branch_exchange(&t, &pair).unwrap();
        assert!(is_isomorphic(&t, &exchanged));
    }

    #[test]
    fn exchange_twice_is_isomorphic_to_start() {
        let (t, pair) = example_3_1();
        let once = branch_exchange(&t, &pair).unwrap();
        // The same roots are now attached to the opposite anchors.
        let back = BalancedPair {
            u: 0,
            v: 2,
            s_u: vec![11],
            s_v: vec![8],
        };
        let twice = branch_exchange(&once, &back).unwrap();
        assert!(is_isomorphic(&t, &twice));
    }

    #[test]
    fn branch_exchange_rejects_invalid_pairs() {
        let (t, _) = example_3_1();
        let unbalanced = BalancedPair {
            u: 0,
            v: 2,
            s_u: vec![3],
            s_v: vec![4],
        };
        assert!(branch_exchange(&t, &unbalanced).is_err());
        let on_path = BalancedPair {
            u: 0,
            v: 2,
            s_u: vec![1],
            s_v: vec![11],
        };
        assert!(branch_exchange(&t, &on_path).is_err());
        let empty = BalancedPair {
            u: 0,
            v: 2,
            s_u: vec![],
            s_v: vec![],
        };
        assert!(branch_exchange(&t, &empty).is_err());
    }

    #[test]
    fn closure_of_rigid_trees_is_trivial() {
        for t in [Tree::star(6), Tree::path(8)] {
            let closure = exchange_closure(&t).unwrap();
            assert_eq!(closure.len(), 1);
            assert!(closure.contains(&canonical_code(&t)));
        }
    }

    #[test]
    fn closure_of_the_order_seven_caterpillar_has_two_members() {
        let t71 = Tree::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (1, 6)]).unwrap();
        let t71p = Tree::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (2, 6)]).unwrap();
        let closure = exchange_closure(&t71).unwrap();
        assert_eq!(closure.len(), 2);
        assert!(closure.contains(&canonical_code(&t71)));
        assert!(closure.contains(&canonical_code(&t71p)));
    }

    #[test]
    fn pair_construction_checks_preconditions() {
        // A symmetric path rejects the construction.
        let p4 = Tree::path(4);
        let branch = RootedTree::new(Tree::path(2), 0).unwrap();
        assert!(matches!(
            nonisomorphic_equivalent_pair(&p4, 1, 2, &branch),
            Err(Error::Precondition(_))
        ));

        // Base: 0 with two leaves (2,3) on one side, path 1-4-5 on the other;
        // the central edge 0-1 splits 3:3 and the halves differ.
        let base = Tree::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (4, 5)]).unwrap();
        assert!(nonisomorphic_equivalent_pair(&base, 0, 2, &branch).is_err());

        let (t, t_prime) = nonisomorphic_equivalent_pair(&base, 0, 1, &branch).unwrap();
        assert_eq!(t.n(), 8);
        assert_eq!(edv(&t).unwrap(), edv(&t_prime).unwrap());
        assert!(!is_isomorphic(&t, &t_prime));
    }

    #[test]
    fn pair_construction_reproduces_the_order_seven_class() {
        // Base: leaves 1,2 at u=0, path 3-4 at v; branch is one vertex.
        let base = Tree::from_edges(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)]).unwrap();
        let branch = RootedTree::new(Tree::path(1), 0).unwrap();
        let (t, t_prime) = nonisomorphic_equivalent_pair(&base, 0, 3, &branch).unwrap();
        let expected = ev(7, &[4, 1, 1]);
        assert_eq!(edv(&t).unwrap(), expected);
        assert_eq!(edv(&t_prime).unwrap(), expected);
        assert!(!is_isomorphic(&t, &t_prime));
    }
}
