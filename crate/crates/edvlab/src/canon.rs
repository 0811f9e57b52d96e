//! Canonical codes for free and rooted trees, isomorphism tests, and vertex
//! similarity.
//!
//! Codes are AHU-style bracket strings: the code of a rooted tree is `(`,
//! followed by the codes of its subtrees sorted lexicographically, followed
//! by `)`. Two rooted trees have equal codes iff they are strongly
//! isomorphic (an isomorphism mapping root to root). Free trees are rooted
//! at the center; bicentral trees take the smaller of the two whole-tree
//! codes over the central edge orientations.

use std::fmt;

use crate::error::{Error, Result};
use crate::tree::{RootedTree, Tree};

/// Label-invariant identifier of a free tree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

/// Identifier of a rooted tree up to root-preserving isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedCode(Vec<u8>);

fn hex_of_brackets(code: &[u8]) -> String {
    // Pack '('=0 / ')'=1 MSB-first; prefix with the vertex count so codes of
    // different orders can never collide as strings.
    let mut out = String::new();
    let mut byte = 0u8;
    let mut bits = 0;
    for &b in code {
        byte <<= 1;
        if b == b')' || b == b']' {
            byte |= 1;
        }
        bits += 1;
        if bits == 8 {
            out.push_str(&format!("{byte:02x}"));
            byte = 0;
            bits = 0;
        }
    }
    if bits > 0 {
        byte <<= 8 - bits;
        out.push_str(&format!("{byte:02x}"));
    }
    format!("{}:{}", code.len() / 2, out)
}

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Stable hexadecimal rendering for CLI/JSON output.
    pub fn to_hex(&self) -> String {
        hex_of_brackets(&self.0)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", String::from_utf8_lossy(&self.0))
    }
}

impl RootedCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex_of_brackets(&self.0)
    }
}

impl fmt::Debug for RootedCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootedCode({})", String::from_utf8_lossy(&self.0))
    }
}

/// Bracket code of the component of `t` containing `root`, rooted there.
/// `block`, when set, is an adjacent vertex the traversal must not cross
/// (so the code covers `T_root(block-root)` only). `mark` decorates one
/// vertex with square brackets, which makes code equality mean "rooted
/// isomorphism mapping mark to mark".
fn code_from(t: &Tree, root: u32, block: Option<u32>, mark: Option<u32>) -> Vec<u8> {
    let n = t.n();
    let mut parent = vec![u32::MAX; n];
    let mut order = Vec::new();
    parent[root as usize] = root;
    if let Some(b) = block {
        parent[b as usize] = b;
    }
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in t.neighbors(v) {
            if parent[w as usize] == u32::MAX {
                parent[w as usize] = v;
                stack.push(w);
            }
        }
    }
    let mut codes: Vec<Vec<u8>> = vec![Vec::new(); n];
    for &v in order.iter().rev() {
        let mut children: Vec<Vec<u8>> = t
            .neighbors(v)
            .iter()
            .filter(|&&w| parent[w as usize] == v && w != v)
            .map(|&w| std::mem::take(&mut codes[w as usize]))
            .collect();
        children.sort_unstable();
        let (open, close) = if mark == Some(v) {
            (b'[', b']')
        } else {
            (b'(', b')')
        };
        let mut code = Vec::with_capacity(2 + children.iter().map(Vec::len).sum::<usize>());
        code.push(open);
        for c in children {
            code.extend_from_slice(&c);
        }
        code.push(close);
        codes[v as usize] = code;
    }
    std::mem::take(&mut codes[root as usize])
}

/// The 1- or 2-element center of the tree, by leaf peeling.
pub fn centers(t: &Tree) -> Vec<u32> {
    let n = t.n();
    if n <= 2 {
        return (0..n as u32).collect();
    }
    let mut degree: Vec<usize> = (0..n as u32).map(|v| t.degree(v)).collect();
    let mut layer: Vec<u32> = (0..n as u32).filter(|&v| degree[v as usize] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            degree[v as usize] = 0;
            for &w in t.neighbors(v) {
                if degree[w as usize] > 1 {
                    degree[w as usize] -= 1;
                    if degree[w as usize] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Canonical code of a free tree: equal codes iff isomorphic.
pub fn canonical_code(t: &Tree) -> CanonicalCode {
    let cs = centers(t);
    let code = match cs.as_slice() {
        [c] => code_from(t, *c, None, None),
        [c1, c2] => {
            let a = code_from(t, *c1, None, None);
            let b = code_from(t, *c2, None, None);
            a.min(b)
        }
        _ => unreachable!("a tree has one or two centers"),
    };
    CanonicalCode(code)
}

pub fn is_isomorphic(t1: &Tree, t2: &Tree) -> bool {
    t1.n() == t2.n() && canonical_code(t1) == canonical_code(t2)
}

/// Code of a rooted tree; equality is strong isomorphism.
pub fn rooted_code(rt: &RootedTree) -> RootedCode {
    RootedCode(code_from(rt.tree(), rt.root(), None, None))
}

/// Code of the branch `T_x(anchor-x)`: the component of `t - anchor x`
/// containing `x`, rooted at `x`.
pub fn branch_code(t: &Tree, anchor: u32, x: u32) -> RootedCode {
    RootedCode(code_from(t, x, Some(anchor), None))
}

/// Whether two forests of rooted trees are strongly isomorphic: some
/// pairing matches every rooted tree with a strongly isomorphic partner.
pub fn forests_strongly_isomorphic(a: &[RootedTree], b: &[RootedTree]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut ca: Vec<RootedCode> = a.iter().map(rooted_code).collect();
    let mut cb: Vec<RootedCode> = b.iter().map(rooted_code).collect();
    ca.sort_unstable();
    cb.sort_unstable();
    ca == cb
}

/// Whether some automorphism of `t` contains the transposition (u v).
///
/// Such an automorphism reverses the u-v path, so it fixes the path
/// midpoint: for an even-length path the middle vertex stays put and the
/// two branches through it must match with u sent to v; for an odd-length
/// path the middle edge flips and the two components must match likewise.
/// Both conditions are exactly an equality of mark-decorated rooted codes.
pub fn are_similar(t: &Tree, u: u32, v: u32) -> Result<bool> {
    if !t.contains_vertex(u) {
        return Err(Error::InvalidVertex(u));
    }
    if !t.contains_vertex(v) {
        return Err(Error::InvalidVertex(v));
    }
    if u == v {
        return Err(Error::InvalidArgument(
            "similarity needs two distinct vertices".into(),
        ));
    }
    let path = t.path_between(u, v)?;
    let k = path.len() - 1;
    if k % 2 == 1 {
        let a = path[(k - 1) / 2];
        let b = path[k.div_ceil(2)];
        let code_a = code_from(t, a, Some(b), Some(u));
        let code_b = code_from(t, b, Some(a), Some(v));
        Ok(code_a == code_b)
    } else {
        let m = path[k / 2];
        let cu = path[k / 2 - 1];
        let cv = path[k / 2 + 1];
        let code_u = code_from(t, cu, Some(m), Some(u));
        let code_v = code_from(t, cv, Some(m), Some(v));
        Ok(code_u == code_v)
    }
}
