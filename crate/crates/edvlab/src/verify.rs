//! Named invariant suites behind the `verify` subcommand: each check
//! either passes or reports the first counterexample tree in the standard
//! text format.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::canon::is_isomorphic;
use crate::classify::{classify, is_dedv};
use crate::edv::{compare, edv, EdgeDivisionVector, OrderRelation};
use crate::enumerate::{all_trees, count_trees};
use crate::error::{Error, Result};
use crate::families::{
    check_two_spider_dedv, corona_edv, corona_k1, is_weak_balanced, make_double_starlike,
    make_starlike, predict_dedv, rooted_product_edv, rooted_product_path, starlike_edv,
    DoubleStarlikeSpec, StarlikeSpec,
};
use crate::indices::{
    all_indices, degree_distance_oracle, gutman_oracle, index_from_edv,
    steiner_wiener_contribution_form, steiner_wiener_convolution_form, wiener_distance_oracle,
    IndexKind, IndexParams, IndexSpec, Lambda,
};
use crate::transforms::{
    branch_exchange, branch_move, exchange_certificate, exchange_closure, find_balanced_pairs,
    predict_branch_move, BranchMove,
};
use crate::tree::Tree;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Counts,
    Edv,
    Order,
    Exchange,
    Families,
    Indices,
    Closure,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Suite> {
        Ok(match s {
            "counts" => Suite::Counts,
            "edv" => Suite::Edv,
            "order" => Suite::Order,
            "exchange" => Suite::Exchange,
            "families" => Suite::Families,
            "indices" => Suite::Indices,
            "closure" => Suite::Closure,
            "all" => Suite::All,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown suite {other:?}; expected counts, edv, order, exchange, families, indices, closure or all"
                )))
            }
        })
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub reproducer: Option<Tree>,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn pass(&mut self, name: &str, detail: String) {
        self.checks.push(CheckResult {
            name: name.into(),
            passed: true,
            detail,
            reproducer: None,
        });
    }

    fn fail(&mut self, name: &str, detail: String, reproducer: Option<Tree>) {
        self.checks.push(CheckResult {
            name: name.into(),
            passed: false,
            detail,
            reproducer,
        });
    }
}

pub fn run(suite: Suite, max_n: usize, seed: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let want = |s: Suite| suite == Suite::All || suite == s;
    if want(Suite::Counts) {
        check_counts(&mut report, max_n)?;
    }
    if want(Suite::Edv) {
        check_edv(&mut report, max_n, seed)?;
    }
    if want(Suite::Order) {
        check_order(&mut report, max_n.min(10))?;
    }
    if want(Suite::Exchange) {
        check_exchange(&mut report, max_n)?;
    }
    if want(Suite::Families) {
        check_families(&mut report, max_n)?;
    }
    if want(Suite::Indices) {
        check_indices(&mut report, max_n)?;
    }
    if want(Suite::Closure) {
        check_closure(&mut report, max_n)?;
    }
    Ok(report)
}

/// Known free-tree counts for orders 1..=10.
pub const KNOWN_TREE_COUNTS: [usize; 10] = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106];

fn check_counts(report: &mut VerifyReport, max_n: usize) -> Result<()> {
    let top = max_n.min(10);
    let mut got = Vec::new();
    for n in 2..=top {
        let count = count_trees(n)?;
        got.push(count);
        if count != KNOWN_TREE_COUNTS[n - 1] {
            report.fail(
                "counts.known-values",
                format!(
                    "order {n}: counted {count}, expected {}",
                    KNOWN_TREE_COUNTS[n - 1]
                ),
                None,
            );
            return Ok(());
        }
    }
    report.pass("counts.known-values", format!("orders 2..={top}: {got:?}"));
    if max_n >= 12 {
        let count = count_trees(12)?;
        if count == 551 {
            report.pass("counts.order-12", "551 trees".into());
        } else {
            report.fail(
                "counts.order-12",
                format!("counted {count}, expected 551"),
                None,
            );
        }
    }
    Ok(())
}

fn check_edv(report: &mut VerifyReport, max_n: usize, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 2..=max_n {
        for t in all_trees(n)? {
            let r = edv(&t)?;
            let sum: u64 = r.counts().iter().sum();
            if sum != (n - 1) as u64 {
                report.fail(
                    "edv.entries-sum-to-edge-count",
                    format!("order {n}: sum {sum}"),
                    Some(t),
                );
                return Ok(());
            }
            if n >= 3 && r.counts()[0] < 2 {
                report.fail(
                    "edv.two-leaves",
                    format!("order {n}: r1 = {}", r.counts()[0]),
                    Some(t),
                );
                return Ok(());
            }
            let mut perm: Vec<u32> = (0..n as u32).collect();
            for _ in 0..5 {
                perm.shuffle(&mut rng);
                let relabeled = t.relabel(&perm)?;
                if edv(&relabeled)? != r {
                    report.fail(
                        "edv.relabel-invariance",
                        format!("order {n}: vector changed under {perm:?}"),
                        Some(t),
                    );
                    return Ok(());
                }
            }
        }
    }
    report.pass(
        "edv.entries-sum-to-edge-count",
        format!("orders 2..={max_n}"),
    );
    report.pass("edv.two-leaves", format!("orders 3..={max_n}"));
    report.pass(
        "edv.relabel-invariance",
        format!("orders 2..={max_n}, 5 relabelings each"),
    );
    Ok(())
}

fn vectors_at(n: usize) -> Result<Vec<EdgeDivisionVector>> {
    let mut out = Vec::new();
    for t in all_trees(n)? {
        let r = edv(&t)?;
        if !out.contains(&r) {
            out.push(r);
        }
    }
    Ok(out)
}

fn check_order(report: &mut VerifyReport, max_n: usize) -> Result<()> {
    for n in 2..=max_n {
        let vectors = vectors_at(n)?;
        for a in &vectors {
            if compare(a, a)? != OrderRelation::Equivalent {
                report.fail(
                    "order.reflexive",
                    format!("{a} not equivalent to itself"),
                    None,
                );
                return Ok(());
            }
            for b in &vectors {
                let ab = compare(a, b)?;
                let ba = compare(b, a)?;
                if ab != ba.flip() {
                    report.fail(
                        "order.duality",
                        format!("{a} vs {b}: {ab:?} / {ba:?}"),
                        None,
                    );
                    return Ok(());
                }
                if ab == OrderRelation::Equivalent && a != b {
                    report.fail("order.equivalence-is-equality", format!("{a} vs {b}"), None);
                    return Ok(());
                }
                for c in &vectors {
                    if ab == OrderRelation::Less
                        && compare(b, c)? == OrderRelation::Less
                        && compare(a, c)? != OrderRelation::Less
                    {
                        report.fail("order.transitive", format!("{a} < {b} < {c}"), None);
                        return Ok(());
                    }
                }
            }
        }
    }
    report.pass("order.reflexive", format!("orders 2..={max_n}"));
    report.pass("order.duality", format!("orders 2..={max_n}"));
    report.pass(
        "order.equivalence-is-equality",
        format!("orders 2..={max_n}"),
    );
    report.pass("order.transitive", format!("orders 2..={max_n}"));
    Ok(())
}

/// Every legal branch move of `t`.
pub fn all_branch_moves(t: &Tree) -> Vec<BranchMove> {
    let mut out = Vec::new();
    for u in 0..t.n() as u32 {
        for &v in t.neighbors(u) {
            for &x in t.neighbors(u) {
                if x != v {
                    out.push(BranchMove { u, v, x });
                }
            }
        }
    }
    out
}

fn check_exchange(report: &mut VerifyReport, max_n: usize) -> Result<()> {
    // Branch-move prediction against direct comparison.
    let move_top = max_n.min(8);
    let mut moves = 0usize;
    for n in 2..=move_top {
        for t in all_trees(n)? {
            let r = edv(&t)?;
            for m in all_branch_moves(&t) {
                let predicted = predict_branch_move(&t, &m)?;
                let moved = branch_move(&t, &m)?;
                let direct = compare(&r, &edv(&moved)?)?;
                if predicted != direct {
                    report.fail(
                        "exchange.move-prediction",
                        format!("move {m:?}: predicted {predicted:?}, direct {direct:?}"),
                        Some(t),
                    );
                    return Ok(());
                }
                moves += 1;
            }
        }
    }
    report.pass(
        "exchange.move-prediction",
        format!("{moves} moves, orders 2..={move_top}"),
    );

    // Vector preservation and certificate soundness across all exchanges.
    let top = max_n.min(9);
    let mut exchanges = 0usize;
    let mut certified = 0usize;
    for n in 2..=top {
        for t in all_trees(n)? {
            let r = edv(&t)?;
            for u in 0..n as u32 {
                for v in (u + 1)..n as u32 {
                    for pair in find_balanced_pairs(&t, u, v)? {
                        let exchanged = branch_exchange(&t, &pair)?;
                        if edv(&exchanged)? != r {
                            report.fail(
                                "exchange.vector-preserved",
                                format!("pair {pair:?} changed the vector"),
                                Some(t),
                            );
                            return Ok(());
                        }
                        let cert = exchange_certificate(&t, &pair)?;
                        if cert.certifies_non_isomorphic() {
                            certified += 1;
                            if is_isomorphic(&t, &exchanged) {
                                report.fail(
                                    "exchange.certificate-sound",
                                    format!("pair {pair:?} certified but isomorphic"),
                                    Some(t),
                                );
                                return Ok(());
                            }
                        }
                        exchanges += 1;
                    }
                }
            }
        }
    }
    report.pass(
        "exchange.vector-preserved",
        format!("{exchanges} exchanges, orders 2..={top}"),
    );
    report.pass(
        "exchange.certificate-sound",
        format!("{certified} certified exchanges"),
    );
    Ok(())
}

/// Sorted leg multisets (ascending) of total `total` with at least
/// `min_parts` parts.
fn leg_partitions(total: u32, min_parts: usize) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total, &mut Vec::new(), &mut out);
    out.retain(|p| p.len() >= min_parts);
    for p in &mut out {
        p.reverse();
    }
    out
}

/// DEDV status by exhaustive classification, cached per order.
pub struct DedvOracle {
    cache: std::collections::HashMap<usize, Vec<(EdgeDivisionVector, usize)>>,
}

impl DedvOracle {
    pub fn new() -> Self {
        DedvOracle {
            cache: std::collections::HashMap::new(),
        }
    }

    pub fn is_dedv(&mut self, t: &Tree) -> Result<bool> {
        let n = t.n();
        if let std::collections::hash_map::Entry::Vacant(e) = self.cache.entry(n) {
            let classes = classify(n)?;
            let table = classes
                .into_iter()
                .map(|c| (c.vector, c.members.len()))
                .collect();
            e.insert(table);
        }
        let r = edv(t)?;
        let table = &self.cache[&n];
        let size = table
            .iter()
            .find(|(v, _)| *v == r)
            .map(|(_, s)| *s)
            .ok_or_else(|| Error::Internal(format!("vector {r} missing from classification")))?;
        Ok(size == 1)
    }
}

impl Default for DedvOracle {
    fn default() -> Self {
        Self::new()
    }
}

fn check_families(report: &mut VerifyReport, max_n: usize) -> Result<()> {
    let mut oracle = DedvOracle::new();

    // Closed-form starlike vectors against direct measurement, orders <= 14.
    let mut cases = 0usize;
    for total in 3..=13u32 {
        for legs in leg_partitions(total, 3) {
            let spec = StarlikeSpec::new(legs)?;
            let t = make_starlike(&spec);
            if starlike_edv(&spec) != edv(&t)? {
                report.fail(
                    "families.starlike-closed-form",
                    format!("{spec:?}"),
                    Some(t),
                );
                return Ok(());
            }
            cases += 1;
        }
    }
    report.pass(
        "families.starlike-closed-form",
        format!("{cases} leg multisets"),
    );

    // Weak balance iff determined, four or more legs, orders <= 12.
    let top = max_n.min(12);
    let mut cases = 0usize;
    for total in 4..=(top.saturating_sub(1)) as u32 {
        for legs in leg_partitions(total, 4) {
            let spec = StarlikeSpec::new(legs)?;
            let t = make_starlike(&spec);
            let expected = is_weak_balanced(&spec);
            if oracle.is_dedv(&t)? != expected {
                report.fail(
                    "families.starlike-weak-balance-iff-dedv",
                    format!("{spec:?}: weak-balanced {expected}"),
                    Some(t),
                );
                return Ok(());
            }
            cases += 1;
        }
    }
    report.pass(
        "families.starlike-weak-balance-iff-dedv",
        format!("{cases} starlike trees"),
    );

    // Two-spider predicate iff determined, orders <= 11.
    let top = max_n.min(11) as u32;
    let mut cases = 0usize;
    for s1 in 1..top {
        for s2 in s1..top {
            for t1 in 1..top {
                for t2 in t1..top {
                    if s1 + s2 > t1 + t2 {
                        continue;
                    }
                    for k in 1..top {
                        let n = s1 + s2 + t1 + t2 + k + 1;
                        if n > top {
                            continue;
                        }
                        let tree = two_spider(s1, s2, k, t1, t2);
                        let predicted = check_two_spider_dedv(s1, s2, k, t1, t2)?;
                        if oracle.is_dedv(&tree)? != predicted {
                            report.fail(
                                "families.two-spider-iff-dedv",
                                format!("({s1},{s2},{k},{t1},{t2}): predicted {predicted}"),
                                Some(tree),
                            );
                            return Ok(());
                        }
                        cases += 1;
                    }
                }
            }
        }
    }
    report.pass(
        "families.two-spider-iff-dedv",
        format!("{cases} parameterizations"),
    );

    // Near-equal leg counts give determined double starlike trees, <= 12.
    let top = max_n.min(12) as u32;
    let mut cases = 0usize;
    for s in 1..top {
        for k1 in 2..top {
            for k2 in k1..=(k1 + 1) {
                for k in 1..top {
                    let spec = match DoubleStarlikeSpec::new(s, k1, k2, k) {
                        Ok(spec) => spec,
                        Err(_) => continue,
                    };
                    if spec.order() > top {
                        continue;
                    }
                    let t = make_double_starlike(&spec);
                    if !oracle.is_dedv(&t)? {
                        report.fail(
                            "families.double-starlike-dedv",
                            format!("{spec:?} is not determined"),
                            Some(t),
                        );
                        return Ok(());
                    }
                    cases += 1;
                }
            }
        }
    }
    report.pass(
        "families.double-starlike-dedv",
        format!("{cases} instances"),
    );

    // Product vectors match direct measurement, results <= 14.
    let mut cases = 0usize;
    for n0 in 2..=7usize {
        for t in all_trees(n0)? {
            let r = edv(&t)?;
            for s in 1..=14u32 {
                if n0 as u32 * s <= 14 {
                    let product = rooted_product_path(&t, s)?;
                    if rooted_product_edv(&r, s)? != edv(&product)? {
                        report.fail("families.rooted-product-vector", format!("s={s}"), Some(t));
                        return Ok(());
                    }
                    cases += 1;
                }
                if n0 as u32 * (s + 1) <= 14 {
                    let product = corona_k1(&t, s)?;
                    if corona_edv(&r, s)? != edv(&product)? {
                        report.fail("families.corona-vector", format!("s={s}"), Some(t));
                        return Ok(());
                    }
                    cases += 1;
                }
            }
        }
    }
    report.pass(
        "families.rooted-product-vector",
        format!("{cases} products checked (with corona)"),
    );

    // Products of determined trees stay determined, results <= 12.
    let top = max_n.min(12) as u32;
    let mut cases = 0usize;
    for n0 in 1..=4usize {
        for t in all_trees(n0)? {
            for s in 1..=top {
                if (n0 as u32) * s <= top && s >= 2 {
                    let product = rooted_product_path(&t, s)?;
                    if !oracle.is_dedv(&product)? {
                        report.fail("families.rooted-product-dedv", format!("s={s}"), Some(t));
                        return Ok(());
                    }
                    cases += 1;
                }
                if (n0 as u32) * (s + 1) <= top {
                    let product = corona_k1(&t, s)?;
                    if !oracle.is_dedv(&product)? {
                        report.fail("families.corona-dedv", format!("s={s}"), Some(t));
                        return Ok(());
                    }
                    cases += 1;
                }
            }
        }
    }
    report.pass(
        "families.product-dedv",
        format!("{cases} products of determined bases"),
    );

    // The family predictor agrees with exhaustive classification.
    let top = max_n.min(10);
    let mut verdicts = 0usize;
    for n in 2..=top {
        for t in all_trees(n)? {
            if let Some(predicted) = predict_dedv(&t)?.verdict() {
                if oracle.is_dedv(&t)? != predicted {
                    report.fail(
                        "families.predictor-agrees",
                        format!("predicted {predicted}"),
                        Some(t),
                    );
                    return Ok(());
                }
                verdicts += 1;
            }
        }
    }
    report.pass(
        "families.predictor-agrees",
        format!("{verdicts} verdicts, orders 2..={top}"),
    );
    Ok(())
}

fn two_spider(s1: u32, s2: u32, k: u32, t1: u32, t2: u32) -> Tree {
    let n = s1 + s2 + t1 + t2 + k + 1;
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push((i, i + 1));
    }
    let mut next = k + 1;
    for (anchor, len) in [(0, s1), (0, s2), (k, t1), (k, t2)] {
        let mut prev = anchor;
        for _ in 0..len {
            edges.push((prev.min(next), prev.max(next)));
            prev = next;
            next += 1;
        }
    }
    Tree::from_edges(n as usize, &edges).expect("two-spider layout is a tree")
}

/// Table of printed index values for the equivalent classes of orders 7-9:
/// (order, vector, W, h, Gut).
pub const PRINTED_INDEX_ROWS: [(u32, &[u64], u64, u64, u64); 15] = [
    (7, &[4, 1, 1], 46, 56, 106),
    (8, &[4, 1, 1, 1], 71, 93, 179),
    (8, &[4, 2, 1, 0], 67, 85, 163),
    (8, &[5, 1, 1, 0], 62, 75, 143),
    (9, &[4, 1, 1, 2], 104, 144, 280),
    (9, &[4, 1, 2, 1], 102, 140, 272),
    (9, &[4, 2, 1, 1], 98, 132, 256),
    (9, &[4, 2, 2, 0], 96, 128, 248),
    (9, &[5, 1, 1, 1], 92, 120, 232),
    (9, &[5, 1, 2, 0], 90, 116, 224),
    (9, &[5, 2, 0, 1], 88, 112, 216),
    (9, &[5, 2, 1, 0], 86, 108, 208),
    (9, &[6, 0, 1, 1], 86, 108, 208),
    (9, &[6, 1, 0, 1], 82, 100, 192),
    (9, &[6, 1, 1, 0], 80, 96, 184),
];

fn check_indices(report: &mut VerifyReport, max_n: usize) -> Result<()> {
    use num_bigint::BigInt;

    for (n, counts, w, h, gut) in PRINTED_INDEX_ROWS {
        let r = EdgeDivisionVector::new(n, counts.to_vec())?;
        let got_w = index_from_edv(&r, &IndexSpec::new(IndexKind::Wiener))?;
        let got_h = index_from_edv(&r, &IndexSpec::new(IndexKind::WienerHosoya))?;
        let got_gut = index_from_edv(&r, &IndexSpec::new(IndexKind::Gutman))?;
        let ok = got_w.as_integer() == Some(BigInt::from(w))
            && got_h.as_integer() == Some(BigInt::from(h))
            && got_gut.as_integer() == Some(BigInt::from(gut));
        if !ok {
            report.fail(
                "indices.printed-table",
                format!("{r}: got W={got_w} h={got_h} Gut={got_gut}, expected {w}/{h}/{gut}"),
                None,
            );
            return Ok(());
        }
    }
    report.pass("indices.printed-table", "15 rows".into());

    let top = max_n.min(12);
    let mut trees = 0usize;
    for n in 2..=top {
        for t in all_trees(n)? {
            let r = edv(&t)?;
            let from_edv = index_from_edv(&r, &IndexSpec::new(IndexKind::Wiener))?;
            if from_edv.as_integer() != Some(wiener_distance_oracle(&t)) {
                report.fail(
                    "indices.wiener-oracle",
                    "edge form differs from distances".into(),
                    Some(t),
                );
                return Ok(());
            }
            trees += 1;
        }
    }
    report.pass(
        "indices.wiener-oracle",
        format!("{trees} trees, orders 2..={top}"),
    );

    let top = max_n.min(10);
    let mut trees = 0usize;
    for n in 2..=top {
        for t in all_trees(n)? {
            let r = edv(&t)?;
            let dd = index_from_edv(&r, &IndexSpec::new(IndexKind::DegreeDistance))?;
            if dd.as_integer() != Some(degree_distance_oracle(&t)) {
                report.fail(
                    "indices.degree-distance-oracle",
                    "edge form differs".into(),
                    Some(t),
                );
                return Ok(());
            }
            let gut = index_from_edv(&r, &IndexSpec::new(IndexKind::Gutman))?;
            if gut.as_integer() != Some(gutman_oracle(&t)) {
                report.fail("indices.gutman-oracle", "edge form differs".into(), Some(t));
                return Ok(());
            }
            for k in 2..=n as u32 {
                if steiner_wiener_contribution_form(&r, k)?
                    != steiner_wiener_convolution_form(&r, k)?
                {
                    report.fail("indices.steiner-dual-forms", format!("k={k}"), Some(t));
                    return Ok(());
                }
            }
            let mw = index_from_edv(&r, &IndexSpec::new(IndexKind::ModifiedWiener))?;
            let w = index_from_edv(&r, &IndexSpec::new(IndexKind::Wiener))?;
            if mw != w {
                report.fail(
                    "indices.modified-wiener-at-one",
                    "differs from base index".into(),
                    Some(t),
                );
                return Ok(());
            }
            let vw = index_from_edv(&r, &IndexSpec::new(IndexKind::VariableWiener))?;
            if vw.as_f64() != 0.0 {
                report.fail("indices.variable-wiener-at-one", "nonzero".into(), Some(t));
                return Ok(());
            }
            trees += 1;
        }
    }
    report.pass("indices.degree-distance-oracle", format!("{trees} trees"));
    report.pass("indices.gutman-oracle", format!("{trees} trees"));
    report.pass(
        "indices.steiner-dual-forms",
        format!("{trees} trees, all k"),
    );
    report.pass("indices.lambda-one-degenerations", format!("{trees} trees"));

    // Equal vectors give equal index tables across every class.
    let mut classes_checked = 0usize;
    for n in 2..=top {
        let trees: Vec<Tree> = all_trees(n)?.collect();
        let mut by_vector: std::collections::BTreeMap<EdgeDivisionVector, Vec<&Tree>> =
            Default::default();
        for t in &trees {
            by_vector.entry(edv(t)?).or_default().push(t);
        }
        for (vector, members) in by_vector {
            if members.len() < 2 {
                continue;
            }
            let params = IndexParams {
                lambda: Lambda::Real(0.75),
                steiner_k: 3.min(n as u32),
            };
            let first = all_indices(members[0], params)?;
            for other in &members[1..] {
                let table = all_indices(other, params)?;
                for (a, b) in first.values.iter().zip(&table.values) {
                    if !a.approx_eq(b) {
                        report.fail(
                            "indices.constant-on-classes",
                            format!("vector {vector}: {a} vs {b}"),
                            Some((*other).clone()),
                        );
                        return Ok(());
                    }
                }
            }
            classes_checked += 1;
        }
    }
    report.pass(
        "indices.constant-on-classes",
        format!("{classes_checked} nontrivial classes"),
    );
    Ok(())
}

fn check_closure(report: &mut VerifyReport, max_n: usize) -> Result<()> {
    // Closures stay inside the vector class, orders <= 10.
    let top = max_n.min(10);
    let mut trees_checked = 0usize;
    for n in 2..=top {
        let trees: Vec<Tree> = all_trees(n)?.collect();
        let mut class_codes: std::collections::BTreeMap<
            EdgeDivisionVector,
            std::collections::BTreeSet<crate::canon::CanonicalCode>,
        > = Default::default();
        for t in &trees {
            class_codes
                .entry(edv(t)?)
                .or_default()
                .insert(crate::canon::canonical_code(t));
        }
        for t in &trees {
            let class = &class_codes[&edv(t)?];
            let closure = exchange_closure(t)?;
            if !closure.is_subset(class) {
                report.fail(
                    "closure.within-class",
                    "closure left the vector class".into(),
                    Some(t.clone()),
                );
                return Ok(());
            }
            if n <= 9 && closure != *class {
                report.fail(
                    "closure.equals-class",
                    format!(
                        "closure size {} vs class size {}",
                        closure.len(),
                        class.len()
                    ),
                    Some(t.clone()),
                );
                return Ok(());
            }
            trees_checked += 1;
        }
    }
    let equals_top = top.min(9);
    report.pass(
        "closure.within-class",
        format!("{trees_checked} trees, orders 2..={top}"),
    );
    report.pass("closure.equals-class", format!("orders 2..={equals_top}"));

    // Determined trees have trivial closures (spot families, order <= 12).
    let mut spots = 0usize;
    for t in [
        Tree::star(6),
        Tree::path(8),
        make_starlike(&StarlikeSpec::new(vec![2, 2, 3])?),
    ] {
        if is_dedv(&t)? && exchange_closure(&t)?.len() != 1 {
            report.fail(
                "closure.trivial-for-determined",
                "determined tree with fat closure".into(),
                Some(t),
            );
            return Ok(());
        }
        spots += 1;
    }
    report.pass(
        "closure.trivial-for-determined",
        format!("{spots} spot checks"),
    );
    Ok(())
}
