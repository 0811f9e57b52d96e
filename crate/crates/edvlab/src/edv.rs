//! Edge division vectors and their order.
//!
//! For a tree of order n, entry `r_i` counts the edges whose removal splits
//! the tree into parts of sizes i and n-i. Vectors are always stored at full
//! length `n/2` (floor) including trailing zeros, matching the fixed-length
//! display `(4,1,1)`. The order compares suffix sums.

use std::fmt;

use crate::error::{Error, Result};
use crate::tree::Tree;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeDivisionVector {
    n: u32,
    r: Vec<u64>,
}

impl EdgeDivisionVector {
    /// Builds a vector from raw counts, validating the structural facts that
    /// hold for every tree: length exactly `n/2`, entries summing to `n-1`,
    /// and at least one pendant edge (two for `n >= 3`).
    pub fn new(n: u32, r: Vec<u64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::NoEdges(n));
        }
        if r.len() != (n / 2) as usize {
            return Err(Error::InvalidArgument(format!(
                "vector for order {n} must have length {}, got {}",
                n / 2,
                r.len()
            )));
        }
        let total: u64 = r.iter().sum();
        if total != (n - 1) as u64 {
            return Err(Error::InvalidArgument(format!(
                "entries sum to {total}, expected {}",
                n - 1
            )));
        }
        let min_leaves = if n >= 3 { 2 } else { 1 };
        if r[0] < min_leaves {
            return Err(Error::InvalidArgument(format!(
                "a tree of order {n} has at least {min_leaves} pendant edges"
            )));
        }
        Ok(EdgeDivisionVector { n, r })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Counts indexed from 0; `counts()[i]` is `r_{i+1}`.
    pub fn counts(&self) -> &[u64] {
        &self.r
    }

    /// `r_i` with the 1-based index used throughout.
    pub fn r(&self, i: u32) -> u64 {
        self.r[(i - 1) as usize]
    }

    /// Suffix sums `S(k) = sum of r_i for i >= k`, for k = 1..=n/2.
    /// `S(1) = n - 1`.
    pub fn suffix_sums(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.r.len()];
        let mut acc = 0u64;
        for i in (0..self.r.len()).rev() {
            acc += self.r[i];
            out[i] = acc;
        }
        out
    }
}

impl fmt::Display for EdgeDivisionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.r.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for EdgeDivisionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r[n={}]{}", self.n, self)
    }
}

/// Outcome of comparing two vectors under the suffix-sum order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderRelation {
    Less,
    Greater,
    Equivalent,
    Incomparable,
}

impl OrderRelation {
    pub fn flip(self) -> Self {
        match self {
            OrderRelation::Less => OrderRelation::Greater,
            OrderRelation::Greater => OrderRelation::Less,
            other => other,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            OrderRelation::Less => "less",
            OrderRelation::Greater => "greater",
            OrderRelation::Equivalent => "equivalent",
            OrderRelation::Incomparable => "incomparable",
        }
    }
}

impl fmt::Display for OrderRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The edge division vector of a tree: a histogram of mu over all edges,
/// computed with one traversal.
pub fn edv(t: &Tree) -> Result<EdgeDivisionVector> {
    let n = t.n() as u32;
    if n < 2 {
        return Err(Error::NoEdges(n));
    }
    let (sizes, _) = t.subtree_sizes(0);
    let mut r = vec![0u64; (n / 2) as usize];
    for v in 1..n {
        let side = sizes[v as usize];
        let m = side.min(n - side);
        r[(m - 1) as usize] += 1;
    }
    EdgeDivisionVector::new(n, r)
}

/// Compares two vectors of the same order under the suffix-sum relation.
pub fn compare(a: &EdgeDivisionVector, b: &EdgeDivisionVector) -> Result<OrderRelation> {
    if a.n() != b.n() {
        return Err(Error::OrderMismatch(a.n(), b.n()));
    }
    if a.counts() == b.counts() {
        return Ok(OrderRelation::Equivalent);
    }
    let sa = a.suffix_sums();
    let sb = b.suffix_sums();
    let le = sa.iter().zip(&sb).all(|(x, y)| x <= y);
    let ge = sa.iter().zip(&sb).all(|(x, y)| x >= y);
    Ok(match (le, ge) {
        (true, false) => OrderRelation::Less,
        (false, true) => OrderRelation::Greater,
        (false, false) => OrderRelation::Incomparable,
        // Equal suffix sums force equal vectors, handled above.
        (true, true) => unreachable!("suffix sums determine the vector"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(n: u32, r: &[u64]) -> EdgeDivisionVector {
        EdgeDivisionVector::new(n, r.to_vec()).unwrap()
    }

    #[test]
    fn edv_examples() {
        assert_eq!(edv(&Tree::star(5)).unwrap(), ev(5, &[4, 0]));
        assert_eq!(edv(&Tree::path(7)).unwrap(), ev(7, &[2, 2, 2]));

        // Caterpillar on 7 vertices: path 0-1-2-3-4 plus leaves 5,6 on vertex 1.
        let t71 = Tree::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (1, 6)]).unwrap();
        assert_eq!(edv(&t71).unwrap(), ev(7, &[4, 1, 1]));
    }

    #[test]
    fn edv_rejects_single_vertex() {
        assert!(matches!(
            edv(&Tree::from_edges(1, &[]).unwrap()),
            Err(Error::NoEdges(1))
        ));
    }

    #[test]
    fn display_matches_printed_form() {
        assert_eq!(ev(7, &[4, 1, 1]).to_string(), "(4,1,1)");
        assert_eq!(ev(8, &[5, 1, 1, 0]).to_string(), "(5,1,1,0)");
    }

    #[test]
    fn suffix_sum_examples() {
        assert_eq!(ev(7, &[4, 1, 1]).suffix_sums(), vec![6, 2, 1]);
        assert_eq!(ev(7, &[6, 0, 0]).suffix_sums(), vec![6, 0, 0]);
        assert_eq!(ev(7, &[2, 2, 2]).suffix_sums(), vec![6, 4, 2]);
    }

    #[test]
    fn compare_examples() {
        let a = ev(7, &[4, 1, 1]);
        assert_eq!(compare(&a, &a).unwrap(), OrderRelation::Equivalent);

        let star = edv(&Tree::star(7)).unwrap();
        let path = edv(&Tree::path(7)).unwrap();
        assert_eq!(compare(&star, &path).unwrap(), OrderRelation::Less);
        assert_eq!(compare(&path, &star).unwrap(), OrderRelation::Greater);

        // Two order-9 vectors whose suffix sums cross.
        let x = ev(9, &[5, 2, 1, 0]);
        let y = ev(9, &[6, 0, 1, 1]);
        assert_eq!(x.suffix_sums(), vec![8, 3, 1, 0]);
        assert_eq!(y.suffix_sums(), vec![8, 2, 2, 1]);
        assert_eq!(compare(&x, &y).unwrap(), OrderRelation::Incomparable);
    }

    #[test]
    fn compare_rejects_mismatched_orders() {
        let a = ev(7, &[4, 1, 1]);
        let b = ev(8, &[4, 1, 1, 1]);
        assert!(matches!(compare(&a, &b), Err(Error::OrderMismatch(7, 8))));
    }

    #[test]
    fn vector_validation() {
        assert!(EdgeDivisionVector::new(7, vec![4, 1]).is_err());
        assert!(EdgeDivisionVector::new(7, vec![4, 1, 2]).is_err());
        assert!(EdgeDivisionVector::new(7, vec![1, 2, 3]).is_err());
        assert!(EdgeDivisionVector::new(1, vec![]).is_err());
    }
}
