//! Exhaustive classification of all trees of a given order by edge
//! division vector, the resulting census, and the empirical closure-vs-class
//! report.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::canon::{canonical_code, CanonicalCode};
use crate::edv::{edv, EdgeDivisionVector};
use crate::enumerate::all_trees;
use crate::error::{Error, Result};
use crate::transforms::exchange_closure;
use crate::tree::Tree;

/// One equivalence class: all non-isomorphic trees sharing a vector.
#[derive(Clone, Debug)]
pub struct EdvClass {
    pub vector: EdgeDivisionVector,
    pub members: Vec<CanonicalCode>,
}

pub(crate) struct ClassWithTrees {
    pub vector: EdgeDivisionVector,
    pub members: Vec<(CanonicalCode, Tree)>,
}

pub(crate) fn classify_trees_with_members(
    n: usize,
    trees: Vec<Tree>,
) -> Result<Vec<ClassWithTrees>> {
    for t in &trees {
        if t.n() != n {
            return Err(Error::OrderMismatch(n as u32, t.n() as u32));
        }
    }
    let keyed: Vec<(EdgeDivisionVector, CanonicalCode, Tree)> = trees
        .into_par_iter()
        .map(|t| {
            let r = edv(&t)?;
            let code = canonical_code(&t);
            Ok((r, code, t))
        })
        .collect::<Result<_>>()?;
    let mut buckets: BTreeMap<EdgeDivisionVector, Vec<(CanonicalCode, Tree)>> = BTreeMap::new();
    for (r, code, t) in keyed {
        buckets.entry(r).or_default().push((code, t));
    }
    Ok(buckets
        .into_iter()
        .map(|(vector, mut members)| {
            members.sort_by(|a, b| a.0.cmp(&b.0));
            ClassWithTrees { vector, members }
        })
        .collect())
}

/// Partition of all trees of order n by edge division vector. Classes are
/// ordered lexicographically by vector, members by canonical code.
pub fn classify(n: usize) -> Result<Vec<EdvClass>> {
    if n < 2 {
        return Err(Error::NoEdges(n as u32));
    }
    let trees: Vec<Tree> = all_trees(n)?.collect();
    classify_trees(n, trees)
}

/// Classifies an externally supplied stream of pairwise non-isomorphic
/// trees of order n (for instance from a cached enumeration).
pub fn classify_trees(n: usize, trees: Vec<Tree>) -> Result<Vec<EdvClass>> {
    Ok(classify_trees_with_members(n, trees)?
        .into_iter()
        .map(|c| EdvClass {
            vector: c.vector,
            members: c.members.into_iter().map(|(code, _)| code).collect(),
        })
        .collect())
}

/// Renders an exact fraction to four decimal places, rounding half up.
/// Whole numbers print without decimals, matching the census table.
pub fn render_fraction_4dp(num: u64, den: u64) -> String {
    assert!(den > 0, "fraction needs a positive denominator");
    if num.is_multiple_of(den) {
        return format!("{}", num / den);
    }
    let scaled = (num as u128 * 20_000 + den as u128) / (2 * den as u128);
    format!("{}.{:04}", scaled / 10_000, scaled % 10_000)
}

/// Aggregate counts for one order.
#[derive(Clone, Debug)]
pub struct Census {
    pub n: usize,
    pub total_trees: usize,
    pub dedv_count: usize,
    pub equivalent_tree_count: usize,
    pub class_count_nontrivial: usize,
    pub dedv_fraction: Ratio<u64>,
    pub equivalent_fraction: Ratio<u64>,
}

impl Census {
    pub fn dedv_fraction_4dp(&self) -> String {
        render_fraction_4dp(*self.dedv_fraction.numer(), *self.dedv_fraction.denom())
    }

    pub fn equivalent_fraction_4dp(&self) -> String {
        render_fraction_4dp(
            *self.equivalent_fraction.numer(),
            *self.equivalent_fraction.denom(),
        )
    }
}

pub fn census_of_classes(n: usize, classes: &[EdvClass]) -> Census {
    let total: usize = classes.iter().map(|c| c.members.len()).sum();
    let dedv = classes.iter().filter(|c| c.members.len() == 1).count();
    let equivalent = total - dedv;
    let nontrivial = classes.iter().filter(|c| c.members.len() > 1).count();
    Census {
        n,
        total_trees: total,
        dedv_count: dedv,
        equivalent_tree_count: equivalent,
        class_count_nontrivial: nontrivial,
        dedv_fraction: Ratio::new(dedv as u64, total as u64),
        equivalent_fraction: Ratio::new(equivalent as u64, total as u64),
    }
}

pub fn census(n: usize) -> Result<Census> {
    Ok(census_of_classes(n, &classify(n)?))
}

/// Whether `t` is determined by its vector within its order class: its
/// class in the full classification is a singleton.
pub fn is_dedv(t: &Tree) -> Result<bool> {
    let r = edv(t)?;
    let mut sharers = 0usize;
    for other in all_trees(t.n())? {
        if edv(&other)? == r {
            sharers += 1;
            if sharers > 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Closure-versus-class status for one class.
#[derive(Clone, Debug)]
pub struct Problem1Entry {
    pub vector: EdgeDivisionVector,
    pub class_size: usize,
    /// Closure size per member, in member order.
    pub closure_sizes: Vec<usize>,
    /// Whether every member's closure equals the whole class.
    pub closure_equals_class: bool,
}

/// Empirical closure-vs-class comparison for every tree of order n.
#[derive(Clone, Debug)]
pub struct Problem1Report {
    pub n: usize,
    pub entries: Vec<Problem1Entry>,
    /// Classes where some member's closure differs from the class.
    pub counterexamples: usize,
}

pub fn problem1_report(n: usize) -> Result<Problem1Report> {
    if n < 2 {
        return Err(Error::NoEdges(n as u32));
    }
    let trees: Vec<Tree> = all_trees(n)?.collect();
    let classes = classify_trees_with_members(n, trees)?;
    let entries = classes
        .par_iter()
        .map(|class| {
            let class_codes: std::collections::BTreeSet<&CanonicalCode> =
                class.members.iter().map(|(code, _)| code).collect();
            let mut closure_sizes = Vec::with_capacity(class.members.len());
            let mut all_equal = true;
            for (_, tree) in &class.members {
                let closure = exchange_closure(tree)?;
                let equal = closure.len() == class_codes.len()
                    && closure.iter().all(|c| class_codes.contains(c));
                all_equal &= equal;
                closure_sizes.push(closure.len());
            }
            Ok(Problem1Entry {
                vector: class.vector.clone(),
                class_size: class.members.len(),
                closure_sizes,
                closure_equals_class: all_equal,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let counterexamples = entries.iter().filter(|e| !e.closure_equals_class).count();
    Ok(Problem1Report {
        n,
        entries,
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_seven_has_one_pair() {
        let classes = classify(7).unwrap();
        assert_eq!(classes.len(), 10);
        let nontrivial: Vec<_> = classes.iter().filter(|c| c.members.len() > 1).collect();
        assert_eq!(nontrivial.len(), 1);
        assert_eq!(nontrivial[0].vector.to_string(), "(4,1,1)");
        assert_eq!(nontrivial[0].members.len(), 2);
    }

    #[test]
    fn order_eight_has_three_pairs() {
        let classes = classify(8).unwrap();
        let nontrivial: Vec<_> = classes.iter().filter(|c| c.members.len() > 1).collect();
        let vectors: Vec<String> = nontrivial.iter().map(|c| c.vector.to_string()).collect();
        assert_eq!(vectors, vec!["(4,1,1,1)", "(4,2,1,0)", "(5,1,1,0)"]);
        assert!(nontrivial.iter().all(|c| c.members.len() == 2));
    }

    #[test]
    fn census_rows() {
        let c = census(9).unwrap();
        assert_eq!(
            (c.total_trees, c.dedv_count, c.equivalent_tree_count),
            (47, 22, 25)
        );
        assert_eq!(c.dedv_fraction_4dp(), "0.4681");
        assert_eq!(c.equivalent_fraction_4dp(), "0.5319");

        let c6 = census(6).unwrap();
        assert_eq!(
            (c6.total_trees, c6.dedv_count, c6.equivalent_tree_count),
            (6, 6, 0)
        );
        assert_eq!(c6.dedv_fraction_4dp(), "1");
        assert_eq!(c6.equivalent_fraction_4dp(), "0");
    }

    #[test]
    fn fraction_rendering() {
        assert_eq!(render_fraction_4dp(22, 47), "0.4681");
        assert_eq!(render_fraction_4dp(25, 47), "0.5319");
        assert_eq!(render_fraction_4dp(17, 23), "0.7391");
        assert_eq!(render_fraction_4dp(6, 23), "0.2609");
        assert_eq!(render_fraction_4dp(47, 106), "0.4434");
        assert_eq!(render_fraction_4dp(2, 11), "0.1818");
        assert_eq!(render_fraction_4dp(3, 3), "1");
        assert_eq!(render_fraction_4dp(0, 5), "0");
    }

    #[test]
    fn dedv_membership() {
        assert!(is_dedv(&Tree::path(10)).unwrap());
        // The order-8 tree with vector (5,1,1,0): path a-b-c-d with a leaf
        // at b and a leaf plus a pendant P_2 at c.
        let t83 =
            Tree::from_edges(8, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 5), (2, 6), (6, 7)]).unwrap();
        assert!(!is_dedv(&t83).unwrap());
        for n in 2..7 {
            for t in all_trees(n).unwrap() {
                assert!(is_dedv(&t).unwrap());
            }
        }
    }

    #[test]
    fn problem1_at_order_seven() {
        let report = problem1_report(7).unwrap();
        assert_eq!(report.counterexamples, 0);
        let pair = report
            .entries
            .iter()
            .find(|e| e.class_size == 2)
            .expect("the order-7 pair exists");
        assert_eq!(pair.closure_sizes, vec![2, 2]);
    }
}
