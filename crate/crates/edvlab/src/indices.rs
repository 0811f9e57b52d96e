//! Edge-additive eccentric topological indices: any index of the form
//! `F(T) = sum over edges of f(mu(e)) = sum_i r_i f(i)`, evaluated from the
//! edge division vector, plus the independent distance-based oracles used
//! to cross-check the edge forms.
//!
//! Integer-valued contributions are evaluated in exact arbitrary-precision
//! rationals; the square-root and non-integer-exponent contributions are
//! floating point with a 1e-9 comparison tolerance.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::edv::{edv, EdgeDivisionVector};
use crate::error::{Error, Result};
use crate::tree::Tree;

/// Exponent parameter: integer exponents keep evaluation exact.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Lambda {
    Int(i32),
    Real(f64),
}

impl Lambda {
    pub fn parse(s: &str) -> Result<Lambda> {
        if let Ok(i) = s.parse::<i32>() {
            return Ok(Lambda::Int(i));
        }
        let x: f64 = s
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad exponent {s:?}")))?;
        if !x.is_finite() {
            return Err(Error::InvalidArgument("exponent must be finite".into()));
        }
        Ok(Lambda::Real(x))
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lambda::Int(i) => write!(f, "{i}"),
            Lambda::Real(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexKind {
    Wiener,
    ModifiedWiener,
    VariableWiener,
    SteinerWiener,
    HyperWiener,
    WienerHosoya,
    DegreeDistance,
    Gutman,
    Abc2,
}

impl IndexKind {
    /// Column labels in the fixed output order.
    pub const ALL: [IndexKind; 9] = [
        IndexKind::Wiener,
        IndexKind::ModifiedWiener,
        IndexKind::VariableWiener,
        IndexKind::SteinerWiener,
        IndexKind::HyperWiener,
        IndexKind::WienerHosoya,
        IndexKind::DegreeDistance,
        IndexKind::Gutman,
        IndexKind::Abc2,
    ];

    pub fn column(&self) -> &'static str {
        match self {
            IndexKind::Wiener => "W",
            IndexKind::ModifiedWiener => "mW",
            IndexKind::VariableWiener => "vW",
            IndexKind::SteinerWiener => "SWk",
            IndexKind::HyperWiener => "WW",
            IndexKind::WienerHosoya => "h",
            IndexKind::DegreeDistance => "DD",
            IndexKind::Gutman => "Gut",
            IndexKind::Abc2 => "ABC2",
        }
    }
}

/// One index with its parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IndexSpec {
    pub kind: IndexKind,
    pub lambda: Lambda,
    pub steiner_k: u32,
}

impl IndexSpec {
    pub fn new(kind: IndexKind) -> Self {
        IndexSpec {
            kind,
            lambda: Lambda::Int(1),
            steiner_k: 3,
        }
    }

    pub fn with_lambda(mut self, lambda: Lambda) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_k(mut self, k: u32) -> Self {
        self.steiner_k = k;
        self
    }
}

/// An index value: exact rational when the contribution function is
/// rational-valued, floating otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum IndexValue {
    Exact(BigRational),
    Real(f64),
}

impl IndexValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            IndexValue::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            IndexValue::Real(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            IndexValue::Exact(q) => Some(q),
            IndexValue::Real(_) => None,
        }
    }

    /// Exact integer value, when the value is an exact integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            IndexValue::Exact(q) if q.is_integer() => Some(q.to_integer()),
            _ => None,
        }
    }

    /// Equality at the documented tolerance: exact when both sides are
    /// exact, within 1e-9 otherwise.
    pub fn approx_eq(&self, other: &IndexValue) -> bool {
        match (self, other) {
            (IndexValue::Exact(a), IndexValue::Exact(b)) => a == b,
            _ => (self.as_f64() - other.as_f64()).abs() <= 1e-9,
        }
    }
}

impl fmt::Display for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexValue::Exact(q) if q.is_integer() => write!(f, "{}", q.to_integer()),
            IndexValue::Exact(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            IndexValue::Real(x) => write!(f, "{x:.9}"),
        }
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut out = BigInt::one();
    for i in 0..k.min(n - k) {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact edge contribution f(x) for the rational-valued indices.
fn contribution_exact(kind: IndexKind, x: u64, n: u64, lambda: i32, k: u32) -> BigRational {
    let xi = x as i64;
    let ni = n as i64;
    let w = rational(xi * (ni - xi));
    match kind {
        IndexKind::Wiener => w,
        IndexKind::ModifiedWiener => w.pow(lambda),
        IndexKind::VariableWiener => {
            rational(ni).pow(lambda) - rational(xi).pow(lambda) - rational(ni - xi).pow(lambda)
        }
        IndexKind::SteinerWiener => BigRational::from_integer(
            binomial(n, k as u64) - binomial(x, k as u64) - binomial(n - x, k as u64),
        ),
        IndexKind::HyperWiener => {
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            &half * &w + half * (&w * &w)
        }
        IndexKind::WienerHosoya => w + rational((xi - 1) * (ni - xi - 1)),
        IndexKind::DegreeDistance => rational(4 * xi * (ni - xi) - ni),
        IndexKind::Gutman => rational(4 * xi * (ni - xi) - (2 * ni - 1)),
        IndexKind::Abc2 => unreachable!("abc2 is never exact"),
    }
}

/// Floating edge contribution for the irrational cases.
fn contribution_real(kind: IndexKind, x: u64, n: u64, lambda: f64) -> f64 {
    let xf = x as f64;
    let nf = n as f64;
    match kind {
        IndexKind::ModifiedWiener => (xf * (nf - xf)).powf(lambda),
        IndexKind::VariableWiener => nf.powf(lambda) - xf.powf(lambda) - (nf - xf).powf(lambda),
        IndexKind::Abc2 => ((nf - 2.0) / (xf * (nf - xf))).sqrt(),
        _ => unreachable!("integer-valued kinds are evaluated exactly"),
    }
}

fn validate_spec(spec: &IndexSpec, n: u32) -> Result<()> {
    if let Lambda::Real(x) = spec.lambda {
        if !x.is_finite() {
            return Err(Error::InvalidArgument("exponent must be finite".into()));
        }
    }
    if spec.kind == IndexKind::SteinerWiener && (spec.steiner_k < 2 || spec.steiner_k > n) {
        return Err(Error::InvalidArgument(format!(
            "Steiner parameter k={} must be in 2..={n}",
            spec.steiner_k
        )));
    }
    Ok(())
}

/// Evaluates one index from an edge division vector: sum_i r_i f(i).
pub fn index_from_edv(r: &EdgeDivisionVector, spec: &IndexSpec) -> Result<IndexValue> {
    validate_spec(spec, r.n())?;
    let n = r.n() as u64;
    let exact_lambda = match spec.lambda {
        Lambda::Int(l) => Some(l),
        Lambda::Real(_) => None,
    };
    let use_exact = match spec.kind {
        IndexKind::Abc2 => false,
        IndexKind::ModifiedWiener | IndexKind::VariableWiener => exact_lambda.is_some(),
        _ => true,
    };
    if use_exact {
        let lambda = exact_lambda.unwrap_or(1);
        let mut total = BigRational::zero();
        for (i, &count) in r.counts().iter().enumerate() {
            if count == 0 {
                continue;
            }
            let f = contribution_exact(spec.kind, (i + 1) as u64, n, lambda, spec.steiner_k);
            total += f * BigRational::from_integer(BigInt::from(count));
        }
        Ok(IndexValue::Exact(total))
    } else {
        let lambda = match spec.lambda {
            Lambda::Int(l) => l as f64,
            Lambda::Real(x) => x,
        };
        let mut total = 0.0;
        for (i, &count) in r.counts().iter().enumerate() {
            if count == 0 {
                continue;
            }
            total += count as f64 * contribution_real(spec.kind, (i + 1) as u64, n, lambda);
        }
        Ok(IndexValue::Real(total))
    }
}

/// Wiener index by its distance definition: sum of d(u,v) over all pairs,
/// via one BFS per vertex. Independent of the edge form.
pub fn wiener_distance_oracle(t: &Tree) -> BigInt {
    let mut total = BigInt::zero();
    for v in 0..t.n() as u32 {
        let dist = t.distances_from(v);
        let s: u64 = dist.iter().map(|&d| d as u64).sum();
        total += BigInt::from(s);
    }
    total / 2
}

/// Degree distance by its distance definition:
/// sum over pairs of (deg u + deg v) * d(u,v).
pub fn degree_distance_oracle(t: &Tree) -> BigInt {
    let mut total = 0u64;
    for u in 0..t.n() as u32 {
        let dist = t.distances_from(u);
        for v in (u + 1)..t.n() as u32 {
            total += (t.degree(u) + t.degree(v)) as u64 * dist[v as usize] as u64;
        }
    }
    BigInt::from(total)
}

/// Gutman index by its distance definition:
/// sum over pairs of deg(u) * deg(v) * d(u,v).
pub fn gutman_oracle(t: &Tree) -> BigInt {
    let mut total = 0u64;
    for u in 0..t.n() as u32 {
        let dist = t.distances_from(u);
        for v in (u + 1)..t.n() as u32 {
            total += (t.degree(u) * t.degree(v)) as u64 * dist[v as usize] as u64;
        }
    }
    BigInt::from(total)
}

/// Steiner k-Wiener via the binomial-difference contribution:
/// f(x) = C(n,k) - C(x,k) - C(n-x,k).
pub fn steiner_wiener_contribution_form(r: &EdgeDivisionVector, k: u32) -> Result<BigInt> {
    let spec = IndexSpec::new(IndexKind::SteinerWiener).with_k(k);
    match index_from_edv(r, &spec)? {
        IndexValue::Exact(q) => Ok(q.to_integer()),
        IndexValue::Real(_) => unreachable!("steiner is exact"),
    }
}

/// Steiner k-Wiener via the split convolution: each edge with sides x and
/// n-x contributes sum over i of C(x,i) * C(n-x,k-i) for i = 1..k-1.
pub fn steiner_wiener_convolution_form(r: &EdgeDivisionVector, k: u32) -> Result<BigInt> {
    if k < 2 || k > r.n() {
        return Err(Error::InvalidArgument(format!(
            "Steiner parameter k={k} must be in 2..={}",
            r.n()
        )));
    }
    let n = r.n() as u64;
    let mut total = BigInt::zero();
    for (idx, &count) in r.counts().iter().enumerate() {
        if count == 0 {
            continue;
        }
        let x = (idx + 1) as u64;
        let mut per_edge = BigInt::zero();
        for i in 1..k as u64 {
            per_edge += binomial(x, i) * binomial(n - x, k as u64 - i);
        }
        total += per_edge * BigInt::from(count);
    }
    Ok(total)
}

/// Steiner k-Wiener with both forms evaluated; a mismatch would be a bug.
pub fn steiner_wiener(r: &EdgeDivisionVector, k: u32) -> Result<BigInt> {
    let a = steiner_wiener_contribution_form(r, k)?;
    let b = steiner_wiener_convolution_form(r, k)?;
    if a != b {
        return Err(Error::Internal(format!(
            "Steiner forms disagree at k={k}: {a} vs {b}"
        )));
    }
    Ok(a)
}

/// Parameters for a full table evaluation.
#[derive(Clone, Copy, Debug)]
pub struct IndexParams {
    pub lambda: Lambda,
    pub steiner_k: u32,
}

impl Default for IndexParams {
    fn default() -> Self {
        IndexParams {
            lambda: Lambda::Int(1),
            steiner_k: 3,
        }
    }
}

/// Every index of the catalogue for one tree, in the fixed column order
/// W, mW, vW, SWk, WW, h, DD, Gut, ABC2.
#[derive(Clone, Debug)]
pub struct IndexTable {
    pub n: u32,
    pub vector: EdgeDivisionVector,
    pub params: IndexParams,
    pub values: Vec<IndexValue>,
}

impl IndexTable {
    pub fn get(&self, kind: IndexKind) -> &IndexValue {
        let pos = IndexKind::ALL.iter().position(|k| *k == kind).unwrap();
        &self.values[pos]
    }
}

pub fn all_indices(t: &Tree, params: IndexParams) -> Result<IndexTable> {
    let r = edv(t)?;
    all_indices_from_edv(&r, params)
}

pub fn all_indices_from_edv(r: &EdgeDivisionVector, params: IndexParams) -> Result<IndexTable> {
    let values = IndexKind::ALL
        .iter()
        .map(|&kind| {
            let spec = IndexSpec {
                kind,
                lambda: params.lambda,
                steiner_k: params.steiner_k,
            };
            index_from_edv(r, &spec)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IndexTable {
        n: r.n(),
        vector: r.clone(),
        params,
        values,
    })
}

/// Outcome of the equal-vector, equal-index check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexEqualityReport {
    /// Vectors are equal and every index of the catalogue agrees.
    Verified,
    /// Vectors differ, so equal indices are not implied.
    VectorsDiffer,
}

/// Checks that trees with equal edge division vectors have equal values for
/// every index of the catalogue. A vector match with an index mismatch is an
/// internal error: the edge forms depend on the tree only through the vector.
pub fn verify_equal_indices(t1: &Tree, t2: &Tree) -> Result<IndexEqualityReport> {
    if t1.n() != t2.n() {
        return Err(Error::OrderMismatch(t1.n() as u32, t2.n() as u32));
    }
    let r1 = edv(t1)?;
    let r2 = edv(t2)?;
    if r1 != r2 {
        return Ok(IndexEqualityReport::VectorsDiffer);
    }
    for params in [
        IndexParams::default(),
        IndexParams {
            lambda: Lambda::Int(2),
            steiner_k: 4.min(r1.n()),
        },
        IndexParams {
            lambda: Lambda::Real(0.5),
            steiner_k: 2,
        },
    ] {
        let a = all_indices(t1, params)?;
        let b = all_indices(t2, params)?;
        for (x, y) in a.values.iter().zip(&b.values) {
            if !x.approx_eq(y) {
                return Err(Error::Internal(format!(
                    "equal vectors {r1} but unequal index values {x} vs {y}"
                )));
            }
        }
    }
    Ok(IndexEqualityReport::Verified)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edv::EdgeDivisionVector;

    fn ev(n: u32, r: &[u64]) -> EdgeDivisionVector {
        EdgeDivisionVector::new(n, r.to_vec()).unwrap()
    }

    fn int(v: &IndexValue) -> i64 {
        v.as_integer().unwrap().to_i64().unwrap()
    }

    #[test]
    fn printed_values_for_the_order_seven_pair() {
        let r = ev(7, &[4, 1, 1]);
        let w = index_from_edv(&r, &IndexSpec::new(IndexKind::Wiener)).unwrap();
        assert_eq!(int(&w), 46);
        let gut = index_from_edv(&r, &IndexSpec::new(IndexKind::Gutman)).unwrap();
        assert_eq!(int(&gut), 106);
        let h = index_from_edv(&r, &IndexSpec::new(IndexKind::WienerHosoya)).unwrap();
        assert_eq!(int(&h), 56);
        let dd = index_from_edv(&r, &IndexSpec::new(IndexKind::DegreeDistance)).unwrap();
        assert_eq!(int(&dd), 142);
    }

    #[test]
    fn wiener_oracle_examples() {
        assert_eq!(wiener_distance_oracle(&Tree::path(4)), BigInt::from(10));
        assert_eq!(wiener_distance_oracle(&Tree::star(5)), BigInt::from(16));
        assert_eq!(wiener_distance_oracle(&Tree::path(2)), BigInt::from(1));
    }

    #[test]
    fn degree_weighted_oracles_on_p2() {
        let p2 = Tree::path(2);
        assert_eq!(degree_distance_oracle(&p2), BigInt::from(2));
        assert_eq!(gutman_oracle(&p2), BigInt::from(1));
    }

    #[test]
    fn gutman_oracle_matches_edge_form_on_the_caterpillar() {
        let t71 = Tree::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (1, 6)]).unwrap();
        assert_eq!(gutman_oracle(&t71), BigInt::from(106));
        let r = edv(&t71).unwrap();
        let gut = index_from_edv(&r, &IndexSpec::new(IndexKind::Gutman)).unwrap();
        assert_eq!(gut.as_integer().unwrap(), BigInt::from(106));
    }

    #[test]
    fn steiner_reduces_to_wiener_at_k_two() {
        let r = ev(7, &[4, 1, 1]);
        assert_eq!(steiner_wiener(&r, 2).unwrap(), BigInt::from(46));
    }

    #[test]
    fn steiner_at_k_equals_n_counts_edges() {
        for n in [4usize, 6, 9] {
            let r = edv(&Tree::path(n)).unwrap();
            assert_eq!(
                steiner_wiener(&r, n as u32).unwrap(),
                BigInt::from(n as i64 - 1)
            );
        }
    }

    #[test]
    fn steiner_k3_on_p4() {
        let r = edv(&Tree::path(4)).unwrap();
        // f(1) = C(4,3) - C(3,3) = 3, f(2) = C(4,3) = 4; edges 1,2,1.
        assert_eq!(steiner_wiener(&r, 3).unwrap(), BigInt::from(10));
        assert!(steiner_wiener(&r, 1).is_err());
        assert!(steiner_wiener(&r, 5).is_err());
    }

    #[test]
    fn hyper_wiener_is_the_edge_form_not_the_distance_form() {
        // On P_3 the edge form gives 6; the classical distance form gives 5.
        let r = edv(&Tree::path(3)).unwrap();
        let ww = index_from_edv(&r, &IndexSpec::new(IndexKind::HyperWiener)).unwrap();
        assert_eq!(int(&ww), 6);
    }

    #[test]
    fn lambda_one_degenerations() {
        let r = ev(7, &[4, 1, 1]);
        let mw = index_from_edv(&r, &IndexSpec::new(IndexKind::ModifiedWiener)).unwrap();
        assert_eq!(int(&mw), 46);
        let vw = index_from_edv(&r, &IndexSpec::new(IndexKind::VariableWiener)).unwrap();
        assert_eq!(int(&vw), 0);
    }

    #[test]
    fn abc2_of_s4() {
        let r = edv(&Tree::star(4)).unwrap();
        let abc = index_from_edv(&r, &IndexSpec::new(IndexKind::Abc2)).unwrap();
        assert!((abc.as_f64() - 3.0 * (2.0f64 / 3.0).sqrt()).abs() < 1e-9);
        assert!((abc.as_f64() - 2.449489743).abs() < 1e-8);
    }

    #[test]
    fn same_index_values_across_an_equivalent_pair() {
        let t = Tree::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (1, 6)]).unwrap();
        let tp = Tree::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (2, 6)]).unwrap();
        assert_eq!(
            verify_equal_indices(&t, &tp).unwrap(),
            IndexEqualityReport::Verified
        );

        assert_eq!(
            verify_equal_indices(&Tree::star(5), &Tree::path(5)).unwrap(),
            IndexEqualityReport::VectorsDiffer
        );
    }

    #[test]
    fn equal_w_h_gut_across_different_vectors() {
        // Two different order-9 vectors share W, h and Gut.
        let a = ev(9, &[5, 2, 1, 0]);
        let b = ev(9, &[6, 0, 1, 1]);
        for kind in [
            IndexKind::Wiener,
            IndexKind::WienerHosoya,
            IndexKind::Gutman,
        ] {
            let va = index_from_edv(&a, &IndexSpec::new(kind)).unwrap();
            let vb = index_from_edv(&b, &IndexSpec::new(kind)).unwrap();
            assert_eq!(va, vb);
        }
    }

    #[test]
    fn display_formats() {
        let r = ev(7, &[4, 1, 1]);
        let w = index_from_edv(&r, &IndexSpec::new(IndexKind::Wiener)).unwrap();
        assert_eq!(w.to_string(), "46");
        let abc = index_from_edv(&r, &IndexSpec::new(IndexKind::Abc2)).unwrap();
        assert!(abc.to_string().contains('.'));
    }
}
