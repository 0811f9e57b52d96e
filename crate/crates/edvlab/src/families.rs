//! Named tree families: constructors, recognizers, closed-form edge
//! division vectors, and the family-based predictor of whether a tree is
//! determined by its vector.

use crate::canon::is_isomorphic;
use crate::edv::{edv, EdgeDivisionVector};
use crate::error::{Error, Result};
use crate::tree::Tree;

/// A starlike tree: one center with pendant paths (legs) of the given
/// lengths. Legs are kept sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarlikeSpec {
    legs: Vec<u32>,
}

impl StarlikeSpec {
    pub fn new(mut legs: Vec<u32>) -> Result<Self> {
        if legs.is_empty() {
            return Err(Error::InvalidArgument("a starlike tree needs legs".into()));
        }
        if legs.contains(&0) {
            return Err(Error::InvalidArgument(
                "leg lengths must be positive".into(),
            ));
        }
        legs.sort_unstable();
        Ok(StarlikeSpec { legs })
    }

    pub fn legs(&self) -> &[u32] {
        &self.legs
    }

    pub fn order(&self) -> u32 {
        1 + self.legs.iter().sum::<u32>()
    }
}

/// Center vertex 0, legs laid out consecutively.
pub fn make_starlike(spec: &StarlikeSpec) -> Tree {
    let mut edges = Vec::new();
    let mut next = 1u32;
    for &l in spec.legs() {
        let mut prev = 0u32;
        for _ in 0..l {
            edges.push((prev.min(next), prev.max(next)));
            prev = next;
            next += 1;
        }
    }
    Tree::from_edges(spec.order() as usize, &edges).expect("starlike layout is a tree")
}

/// Closed-form vector of a starlike tree with sorted legs l_1 <= ... <= l_k:
/// the first l_1 entries are k, the next l_2 - l_1 entries are k-1, and so
/// on, padded with zeros. Valid as printed only while the longest leg stays
/// within n/2; beyond that the constructed tree is measured directly.
pub fn starlike_edv(spec: &StarlikeSpec) -> EdgeDivisionVector {
    let n = spec.order();
    let legs = spec.legs();
    let k = legs.len() as u64;
    if *legs.last().unwrap() > n / 2 {
        return edv(&make_starlike(spec)).expect("starlike tree has edges");
    }
    let mut r = vec![0u64; (n / 2) as usize];
    let mut prev = 0u32;
    for (j, &l) in legs.iter().enumerate() {
        for i in prev..l {
            r[i as usize] = k - j as u64;
        }
        prev = prev.max(l);
    }
    EdgeDivisionVector::new(n, r).expect("closed form satisfies the vector invariants")
}

/// Weak balance: the two shortest legs together reach the longest.
pub fn is_weak_balanced(spec: &StarlikeSpec) -> bool {
    let legs = spec.legs();
    if legs.len() < 2 {
        return true;
    }
    legs[0] + legs[1] >= *legs.last().unwrap()
}

/// Balance: all legs within one of each other.
pub fn is_balanced(spec: &StarlikeSpec) -> bool {
    let legs = spec.legs();
    legs.last().unwrap() - legs[0] <= 1
}

/// If `t` has exactly one branching vertex, its legs as a starlike spec.
pub fn recognize_starlike(t: &Tree) -> Option<StarlikeSpec> {
    let branching = t.branching_vertices();
    if branching.len() != 1 {
        return None;
    }
    let center = branching[0];
    // With a single branching vertex every component of T - center is a
    // pendant path attached at an endpoint.
    let legs: Vec<u32> = t
        .neighbors(center)
        .iter()
        .map(|&x| {
            let s = crate::tree::split_sizes(t, crate::tree::Edge::new(center, x))
                .expect("adjacency edge");
            if x < center {
                s.n_u
            } else {
                s.n_v
            }
        })
        .collect();
    Some(StarlikeSpec::new(legs).expect("legs of a branching vertex are positive"))
}

/// Double star S_{p,q}: two adjacent centers with p-1 and q-1 pendant
/// vertices. Order p + q.
pub fn make_double_star(p: u32, q: u32) -> Result<Tree> {
    if p < 2 || q < 2 {
        return Err(Error::InvalidArgument(
            "a double star needs both parts of size at least 2".into(),
        ));
    }
    let n = p + q;
    let mut edges = vec![(0u32, 1u32)];
    for i in 0..p - 1 {
        edges.push((0, 2 + i));
    }
    for j in 0..q - 1 {
        edges.push((1, 1 + p + j));
    }
    Tree::from_edges(n as usize, &edges)
}

/// Power star S_p^t: t pendant stars S_p whose centers join one central
/// vertex. Order p*t + 1.
pub fn make_power_star(p: u32, t: u32) -> Result<Tree> {
    if p < 2 || t < 2 {
        return Err(Error::InvalidArgument(
            "a power star needs p >= 2 and t >= 2".into(),
        ));
    }
    let mut edges = Vec::new();
    for i in 0..t {
        let center = 1 + i * p;
        edges.push((0, center));
        for j in 1..p {
            edges.push((center, center + j));
        }
    }
    Tree::from_edges((p * t + 1) as usize, &edges)
}

/// Equivalent double starlike tree DT_{s,k1,k2}: two branching vertices
/// joined by a path of `k` edges, with k1 legs P_s at one end and k2 legs
/// P_s at the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoubleStarlikeSpec {
    pub s: u32,
    pub k1: u32,
    pub k2: u32,
    pub k: u32,
}

impl DoubleStarlikeSpec {
    pub fn new(s: u32, k1: u32, k2: u32, k: u32) -> Result<Self> {
        if s < 1 || k < 1 {
            return Err(Error::InvalidArgument(
                "leg length and path length must be positive".into(),
            ));
        }
        if k1 < 2 || k2 < 2 {
            return Err(Error::InvalidArgument(
                "both ends must branch: k1, k2 >= 2".into(),
            ));
        }
        Ok(DoubleStarlikeSpec { s, k1, k2, k })
    }

    pub fn order(&self) -> u32 {
        self.s * (self.k1 + self.k2) + self.k + 1
    }
}

pub fn make_double_starlike(spec: &DoubleStarlikeSpec) -> Tree {
    let mut edges = Vec::new();
    // Path u = 0, 1, ..., k = v.
    for i in 0..spec.k {
        edges.push((i, i + 1));
    }
    let mut next = spec.k + 1;
    for (anchor, count) in [(0u32, spec.k1), (spec.k, spec.k2)] {
        for _ in 0..count {
            let mut prev = anchor;
            for _ in 0..spec.s {
                edges.push((prev.min(next), prev.max(next)));
                prev = next;
                next += 1;
            }
        }
    }
    Tree::from_edges(spec.order() as usize, &edges).expect("double starlike layout is a tree")
}

/// Double broom DT_{1,k1,k2}: legs of length one.
pub fn make_double_broom(k: u32, k1: u32, k2: u32) -> Result<Tree> {
    Ok(make_double_starlike(&DoubleStarlikeSpec::new(
        1, k1, k2, k,
    )?))
}

/// The two-branching-vertex predicate: a tree with spider ends (s1,s2) and
/// (t1,t2) joined by a path of k edges is determined by its vector iff one
/// of the four conditions holds.
pub fn check_two_spider_dedv(s1: u32, s2: u32, k: u32, t1: u32, t2: u32) -> Result<bool> {
    if s1 == 0 || t1 == 0 || k == 0 {
        return Err(Error::InvalidArgument("lengths must be positive".into()));
    }
    if s1 > s2 || t1 > t2 {
        return Err(Error::InvalidArgument(
            "legs must be sorted: s1 <= s2, t1 <= t2".into(),
        ));
    }
    if s1 + s2 > t1 + t2 {
        return Err(Error::InvalidArgument(
            "ends must be ordered: s1+s2 <= t1+t2".into(),
        ));
    }
    let a = s1 + s2;
    Ok(a == t1 + t2 || a > t2 || (a + k == t2 && a > t1) || (a + k == t2 && t2 == t1))
}

/// Rooted product with a path: every vertex gets a pendant path of s-1 new
/// vertices (a copy of P_s identified at its endpoint). Order n*s.
pub fn rooted_product_path(t: &Tree, s: u32) -> Result<Tree> {
    if s < 1 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    let n = t.n() as u32;
    let mut edges: Vec<(u32, u32)> = t.edges().iter().map(|e| e.endpoints()).collect();
    let mut next = n;
    for v in 0..n {
        let mut prev = v;
        for _ in 0..s - 1 {
            edges.push((prev.min(next), prev.max(next)));
            prev = next;
            next += 1;
        }
    }
    Tree::from_edges((n * s) as usize, &edges)
}

/// Corona with s isolated vertices: every vertex gets s pendant leaves.
/// Order n*(s+1).
pub fn corona_k1(t: &Tree, s: u32) -> Result<Tree> {
    if s < 1 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    let n = t.n() as u32;
    let mut edges: Vec<(u32, u32)> = t.edges().iter().map(|e| e.endpoints()).collect();
    let mut next = n;
    for v in 0..n {
        for _ in 0..s {
            edges.push((v, next));
            next += 1;
        }
    }
    Tree::from_edges((n * (s + 1)) as usize, &edges)
}

/// Vector of the rooted product from the vector of the base: n at every
/// index below s, the base counts spread onto multiples of s.
pub fn rooted_product_edv(r: &EdgeDivisionVector, s: u32) -> Result<EdgeDivisionVector> {
    if s < 1 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    let n = r.n() as u64;
    let big_n = r.n() * s;
    let mut out = vec![0u64; (big_n / 2) as usize];
    for i in 1..s {
        out[(i - 1) as usize] = n;
    }
    for k in 1..=r.n() / 2 {
        out[(k * s - 1) as usize] = r.r(k);
    }
    EdgeDivisionVector::new(big_n, out)
}

/// Vector of the corona from the vector of the base: n*s pendant edges,
/// the base counts spread onto multiples of s+1.
pub fn corona_edv(r: &EdgeDivisionVector, s: u32) -> Result<EdgeDivisionVector> {
    if s < 1 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    let n = r.n() as u64;
    let big_n = r.n() * (s + 1);
    let mut out = vec![0u64; (big_n / 2) as usize];
    out[0] = n * s as u64;
    for k in 1..=r.n() / 2 {
        out[(k * (s + 1) - 1) as usize] += r.r(k);
    }
    EdgeDivisionVector::new(big_n, out)
}

/// Verdict of the family-based predictor, with the rule that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DedvPrediction {
    Known { dedv: bool, rule: &'static str },
    Unknown,
}

impl DedvPrediction {
    pub fn verdict(&self) -> Option<bool> {
        match self {
            DedvPrediction::Known { dedv, .. } => Some(*dedv),
            DedvPrediction::Unknown => None,
        }
    }

    pub fn rule(&self) -> &'static str {
        match self {
            DedvPrediction::Known { rule, .. } => rule,
            DedvPrediction::Unknown => "unknown",
        }
    }
}

/// Shape of a tree with exactly two branching vertices: the path length
/// between them and the pendant path legs hanging at each.
struct TwoBranchShape {
    k: u32,
    legs_u: Vec<u32>,
    legs_v: Vec<u32>,
}

fn recognize_two_branch(t: &Tree) -> Option<TwoBranchShape> {
    let branching = t.branching_vertices();
    if branching.len() != 2 {
        return None;
    }
    let (u, v) = (branching[0], branching[1]);
    let path = t.path_between(u, v).expect("vertices are in range");
    let legs = |anchor: u32, path_neighbor: u32| -> Vec<u32> {
        let mut out: Vec<u32> = t
            .neighbors(anchor)
            .iter()
            .filter(|&&x| x != path_neighbor)
            .map(|&x| {
                let s = crate::tree::split_sizes(t, crate::tree::Edge::new(anchor, x))
                    .expect("adjacency edge");
                if x < anchor {
                    s.n_u
                } else {
                    s.n_v
                }
            })
            .collect();
        out.sort_unstable();
        out
    };
    Some(TwoBranchShape {
        k: (path.len() - 1) as u32,
        legs_u: legs(u, path[1]),
        legs_v: legs(v, path[path.len() - 2]),
    })
}

fn recognize_power_star(t: &Tree) -> Option<(u32, u32)> {
    let n = t.n() as u32;
    'hub: for c in 0..n {
        let tc = t.degree(c) as u32;
        if tc < 2 {
            continue;
        }
        let mut p = None;
        for &w in t.neighbors(c) {
            let pw = t.degree(w) as u32;
            if pw < 2 {
                continue 'hub;
            }
            for &leaf in t.neighbors(w) {
                if leaf != c && !t.is_leaf(leaf) {
                    continue 'hub;
                }
            }
            match p {
                None => p = Some(pw),
                Some(prev) if prev != pw => continue 'hub,
                _ => {}
            }
        }
        if let Some(p) = p {
            if p >= 2 && n == p * tc + 1 {
                return Some((p, tc));
            }
        }
    }
    None
}

fn recognize_double_star(t: &Tree) -> Option<(u32, u32)> {
    let internal: Vec<u32> = (0..t.n() as u32).filter(|&v| t.degree(v) >= 2).collect();
    if let [a, b] = internal.as_slice() {
        if t.has_edge(*a, *b) {
            return Some((t.degree(*a) as u32, t.degree(*b) as u32));
        }
    }
    None
}

/// Strips all current leaves, `rounds` times. Returns the surviving tree
/// with compacted labels, or None if nothing survives.
fn strip_leaves_rounds(t: &Tree, rounds: u32) -> Option<Tree> {
    let mut alive: Vec<bool> = vec![true; t.n()];
    let mut degree: Vec<usize> = (0..t.n() as u32).map(|v| t.degree(v)).collect();
    let mut remaining = t.n();
    for _ in 0..rounds {
        let layer: Vec<u32> = (0..t.n() as u32)
            .filter(|&v| alive[v as usize] && degree[v as usize] <= 1)
            .collect();
        if layer.len() >= remaining {
            return None;
        }
        for &v in &layer {
            alive[v as usize] = false;
            remaining -= 1;
            for &w in t.neighbors(v) {
                if alive[w as usize] {
                    degree[w as usize] -= 1;
                }
            }
        }
    }
    let mut compact = vec![u32::MAX; t.n()];
    let mut m = 0u32;
    for v in 0..t.n() as u32 {
        if alive[v as usize] {
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
    Tree::from_edges(m as usize, &edges).ok()
}

/// If `t` is a rooted product of a smaller tree with P_s (s >= 2), returns
/// that base. Confirmed by rebuilding the product and checking isomorphism.
fn peel_rooted_product(t: &Tree) -> Option<(Tree, u32)> {
    let n = t.n() as u32;
    for s in 2..=n {
        if !n.is_multiple_of(s) {
            continue;
        }
        let base_order = n / s;
        if base_order == n {
            continue;
        }
        if let Some(base) = strip_leaves_rounds(t, s - 1) {
            if base.n() as u32 == base_order {
                if let Ok(rebuilt) = rooted_product_path(&base, s) {
                    if is_isomorphic(&rebuilt, t) {
                        return Some((base, s));
                    }
                }
            }
        }
    }
    None
}

/// If `t` is a corona of a smaller tree with s K_1 (s >= 1), returns the
/// base, confirmed the same way.
fn peel_corona(t: &Tree) -> Option<(Tree, u32)> {
    let n = t.n() as u32;
    for s in 1..n {
        if !n.is_multiple_of(s + 1) {
            continue;
        }
        let base_order = n / (s + 1);
        if let Some(base) = strip_leaves_rounds(t, 1) {
            if base.n() as u32 == base_order {
                if let Ok(rebuilt) = corona_k1(&base, s) {
                    if is_isomorphic(&rebuilt, t) {
                        return Some((base, s));
                    }
                }
            }
        }
    }
    None
}

/// Family-based prediction of whether `t` is determined by its edge
/// division vector. Every applicable rule is evaluated; disagreement
/// between two rules is an internal error because the underlying family
/// facts are unconditional.
pub fn predict_dedv(t: &Tree) -> Result<DedvPrediction> {
    let mut verdicts: Vec<(bool, &'static str)> = Vec::new();
    let n = t.n() as u32;

    if n < 7 {
        verdicts.push((true, "order-below-7"));
    }
    let max_degree = (0..n).map(|v| t.degree(v)).max().unwrap_or(0);
    if max_degree <= 2 {
        verdicts.push((true, "path"));
    }
    if n >= 2 && t.leaves().len() == t.n() - 1 {
        verdicts.push((true, "star"));
    }
    if recognize_double_star(t).is_some() {
        verdicts.push((true, "double-star"));
    }
    if recognize_power_star(t).is_some() {
        verdicts.push((true, "power-star"));
    }
    if let Some(spec) = recognize_starlike(t) {
        let k = spec.legs().len();
        if k == 3 {
            verdicts.push((true, "starlike-three-legs"));
        } else if k >= 4 {
            if is_weak_balanced(&spec) {
                verdicts.push((true, "starlike-weak-balanced"));
            } else {
                verdicts.push((false, "starlike-not-weak-balanced"));
            }
        }
    }
    if let Some(shape) = recognize_two_branch(t) {
        // Equal legs everywhere: the two-sided analogue of a balanced spider.
        let all_equal = shape
            .legs_u
            .iter()
            .chain(&shape.legs_v)
            .all(|&l| l == shape.legs_u[0]);
        if all_equal {
            let k1 = shape.legs_u.len() as u32;
            let k2 = shape.legs_v.len() as u32;
            if k1.abs_diff(k2) <= 1 {
                verdicts.push((true, "equivalent-double-starlike"));
            }
        }
        if shape.legs_u.len() == 2 && shape.legs_v.len() == 2 {
            let (mut s1, mut s2) = (shape.legs_u[0], shape.legs_u[1]);
            let (mut t1, mut t2) = (shape.legs_v[0], shape.legs_v[1]);
            if s1 + s2 > t1 + t2 {
                std::mem::swap(&mut s1, &mut t1);
                std::mem::swap(&mut s2, &mut t2);
            }
            let dedv = check_two_spider_dedv(s1, s2, shape.k, t1, t2)?;
            verdicts.push((dedv, "two-spider"));
        }
    }
    // Products only ever propagate a positive verdict from the base.
    if let Some((base, _)) = peel_rooted_product(t) {
        if let DedvPrediction::Known { dedv: true, .. } = predict_dedv(&base)? {
            verdicts.push((true, "rooted-product"));
        }
    }
    if let Some((base, _)) = peel_corona(t) {
        if let DedvPrediction::Known { dedv: true, .. } = predict_dedv(&base)? {
            verdicts.push((true, "corona"));
        }
    }

    match verdicts.as_slice() {
        [] => Ok(DedvPrediction::Unknown),
        [(first, rule), rest @ ..] => {
            if rest.iter().any(|(b, _)| b != first) {
                return Err(Error::Internal(format!(
                    "family rules disagree on {t:?}: {verdicts:?}"
                )));
            }
            Ok(DedvPrediction::Known { dedv: *first, rule })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(n: u32, r: &[u64]) -> EdgeDivisionVector {
        EdgeDivisionVector::new(n, r.to_vec()).unwrap()
    }

    #[test]
    fn starlike_construction_and_recognition() {
        let s4 = make_starlike(&StarlikeSpec::new(vec![1, 1, 1]).unwrap());
        assert!(is_isomorphic(&s4, &Tree::star(4)));

        let spec = StarlikeSpec::new(vec![3, 2, 2]).unwrap();
        assert_eq!(spec.legs(), &[2, 2, 3]);
        let spider = make_starlike(&spec);
        assert_eq!(spider.n(), 8);
        assert_eq!(recognize_starlike(&spider).unwrap(), spec);
    }

    #[test]
    fn starlike_closed_form_vectors() {
        assert_eq!(
            starlike_edv(&StarlikeSpec::new(vec![1, 1, 1, 1]).unwrap()),
            ev(5, &[4, 0])
        );
        let s223 = StarlikeSpec::new(vec![2, 2, 3]).unwrap();
        assert_eq!(starlike_edv(&s223), ev(8, &[3, 3, 1, 0]));
        assert_eq!(starlike_edv(&s223), edv(&make_starlike(&s223)).unwrap());

        let s124 = StarlikeSpec::new(vec![1, 2, 4]).unwrap();
        assert_eq!(starlike_edv(&s124), ev(8, &[3, 2, 1, 1]));
        assert_eq!(starlike_edv(&s124), edv(&make_starlike(&s124)).unwrap());

        // Longest leg beyond n/2: the closed form falls back to direct
        // measurement and still matches.
        let long = StarlikeSpec::new(vec![1, 1, 5]).unwrap();
        assert_eq!(starlike_edv(&long), edv(&make_starlike(&long)).unwrap());
    }

    #[test]
    fn weak_balance_boundary() {
        assert!(is_weak_balanced(&StarlikeSpec::new(vec![2, 2, 3]).unwrap()));
        assert!(!is_weak_balanced(
            &StarlikeSpec::new(vec![1, 1, 3]).unwrap()
        ));
        assert!(is_weak_balanced(&StarlikeSpec::new(vec![1, 1, 2]).unwrap()));
    }

    #[test]
    fn double_star_vectors() {
        let s35 = make_double_star(3, 5).unwrap();
        assert_eq!(edv(&s35).unwrap(), ev(8, &[6, 0, 1, 0]));

        let s22 = make_double_star(2, 2).unwrap();
        assert!(is_isomorphic(&s22, &Tree::path(4)));
        assert_eq!(edv(&s22).unwrap(), ev(4, &[2, 1]));

        let s44 = make_double_star(4, 4).unwrap();
        assert_eq!(edv(&s44).unwrap(), ev(8, &[6, 0, 0, 1]));

        assert!(make_double_star(1, 5).is_err());
    }

    #[test]
    fn power_star_vectors() {
        let s3_2 = make_power_star(3, 2).unwrap();
        assert_eq!(s3_2.n(), 7);
        assert_eq!(edv(&s3_2).unwrap(), ev(7, &[4, 0, 2]));

        let s2_3 = make_power_star(2, 3).unwrap();
        assert_eq!(s2_3.n(), 7);
        assert_eq!(edv(&s2_3).unwrap(), ev(7, &[3, 3, 0]));

        for (p, t) in [(2, 2), (3, 2), (2, 4), (4, 3)] {
            assert_eq!(make_power_star(p, t).unwrap().n() as u32, p * t + 1);
        }
        assert!(make_power_star(1, 3).is_err());
    }

    #[test]
    fn double_starlike_order_and_recognition() {
        // The H-shaped tree: two adjacent branching vertices, two leaves each.
        let spec = DoubleStarlikeSpec::new(1, 2, 2, 1).unwrap();
        let h = make_double_starlike(&spec);
        assert_eq!(h.n(), 6);
        assert_eq!(h.branching_vertices().len(), 2);

        // Stretching the middle path to two edges gives the order-7 variant.
        let spec7 = DoubleStarlikeSpec::new(1, 2, 2, 2).unwrap();
        assert_eq!(make_double_starlike(&spec7).n(), 7);

        let spec = DoubleStarlikeSpec::new(2, 2, 2, 1).unwrap();
        assert_eq!(make_double_starlike(&spec).n() as u32, spec.order());
        assert_eq!(spec.order(), 10);

        let broom = make_double_broom(2, 3, 2).unwrap();
        assert_eq!(broom.n(), 8);
        assert!(DoubleStarlikeSpec::new(1, 1, 2, 1).is_err());
    }

    #[test]
    fn two_spider_conditions() {
        // (i): equal end totals.
        assert!(check_two_spider_dedv(2, 2, 1, 2, 2).unwrap());
        // (iv): s1+s2+k = t2 = t1.
        assert!(check_two_spider_dedv(1, 1, 1, 3, 3).unwrap());
        // No condition holds.
        assert!(!check_two_spider_dedv(1, 2, 1, 1, 3).unwrap());
        // Validation.
        assert!(check_two_spider_dedv(2, 1, 1, 2, 2).is_err());
        assert!(check_two_spider_dedv(3, 3, 1, 2, 2).is_err());
        assert!(check_two_spider_dedv(1, 1, 0, 1, 1).is_err());
    }

    #[test]
    fn product_constructions() {
        let p2 = Tree::path(2);
        assert!(is_isomorphic(
            &rooted_product_path(&p2, 2).unwrap(),
            &Tree::path(4)
        ));
        assert!(is_isomorphic(&corona_k1(&p2, 1).unwrap(), &Tree::path(4)));

        for s in 1..=4 {
            let t = Tree::path(3);
            assert_eq!(rooted_product_path(&t, s).unwrap().n(), 3 * s as usize);
            assert_eq!(corona_k1(&t, s).unwrap().n(), 3 * (s + 1) as usize);
        }
    }

    #[test]
    fn product_vector_formulas() {
        let r_p2 = edv(&Tree::path(2)).unwrap();
        assert_eq!(rooted_product_edv(&r_p2, 2).unwrap(), ev(4, &[2, 1]));
        assert_eq!(corona_edv(&r_p2, 1).unwrap(), ev(4, &[2, 1]));

        let r_p4 = edv(&Tree::path(4)).unwrap();
        let bar = rooted_product_edv(&r_p4, 2).unwrap();
        assert_eq!(bar, ev(8, &[4, 2, 0, 1]));
        assert_eq!(
            bar,
            edv(&rooted_product_path(&Tree::path(4), 2).unwrap()).unwrap()
        );
    }

    #[test]
    fn predictor_on_named_families() {
        let p9 = Tree::path(9);
        assert_eq!(
            predict_dedv(&p9).unwrap(),
            DedvPrediction::Known {
                dedv: true,
                rule: "path"
            }
        );

        // Four legs 1,1,1,3: not weak balanced.
        let t = make_starlike(&StarlikeSpec::new(vec![1, 1, 1, 3]).unwrap());
        assert_eq!(predict_dedv(&t).unwrap().verdict(), Some(false));

        // Three legs are always determined.
        let t = make_starlike(&StarlikeSpec::new(vec![2, 2, 3]).unwrap());
        let p = predict_dedv(&t).unwrap();
        assert_eq!(p.verdict(), Some(true));
        assert_eq!(p.rule(), "starlike-three-legs");
    }

    #[test]
    fn predictor_sees_products() {
        // P_3 rooted-producted with P_3: order 9, no simpler family rule.
        let t = rooted_product_path(&Tree::path(3), 3).unwrap();
        let p = predict_dedv(&t).unwrap();
        assert_eq!(p.verdict(), Some(true));

        let t = corona_k1(&Tree::path(4), 2).unwrap();
        let p = predict_dedv(&t).unwrap();
        assert_eq!(p.verdict(), Some(true));
    }
}
