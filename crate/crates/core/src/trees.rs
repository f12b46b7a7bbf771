//! Unordered rooted trees in canonical form, and the sum / bisection algebra
//! used to describe the trees hanging from periodic points.
//!
//! A tree is stored as the sorted multiset of its root's child subtrees. Trees
//! compare exactly like their balanced-parenthesis keys (`•` is `"()"`), but the
//! comparison never materializes the strings.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numth::NuSeries;

/// Child multiset of a root: `(subtree, multiplicity)` with distinct subtrees,
/// sorted ascending, multiplicities positive.
pub type Forest = Vec<(RootedTree, u64)>;

#[derive(Debug)]
struct Node {
    children: Forest,
    size: u128,
    depth: u32,
    /// 128-bit structural hash; equal digests are treated as equal trees so
    /// that comparisons stay linear on the heavily shared ν-series trees.
    digest: (u64, u64),
}

#[derive(Clone, Debug)]
pub struct RootedTree(Arc<Node>);

/// Sorts, merges equal subtrees and drops zero multiplicities.
pub fn normalize_forest(mut f: Forest) -> Forest {
    f.retain(|(_, c)| *c > 0);
    f.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Forest = Vec::with_capacity(f.len());
    for (t, c) in f {
        match out.last_mut() {
            Some((last, lc)) if *last == t => *lc += c,
            _ => out.push((t, c)),
        }
    }
    out
}

impl RootedTree {
    /// The single node `•`.
    pub fn leaf() -> Self {
        Self::from_sorted(Vec::new())
    }

    /// `⟨F⟩` for an arbitrary (unnormalized) forest.
    pub fn from_children(children: Forest) -> Self {
        Self::from_sorted(normalize_forest(children))
    }

    /// `⟨k×•⟩`
    pub fn star(k: u64) -> Self {
        Self::from_children(vec![(Self::leaf(), k)])
    }

    fn from_sorted(children: Forest) -> Self {
        let mut size: u128 = 1;
        let mut depth = 0;
        let mut h0 = DefaultHasher::new();
        let mut h1 = DefaultHasher::new();
        h1.write_u64(0x9e37_79b9_7f4a_7c15);
        for (t, c) in &children {
            size += t.size() * *c as u128;
            depth = depth.max(t.depth() + 1);
            for h in [&mut h0, &mut h1] {
                h.write_u64(t.0.digest.0);
                h.write_u64(t.0.digest.1);
                h.write_u64(*c);
            }
        }
        h0.write_u8(b')');
        h1.write_u8(b')');
        let digest = (h0.finish(), h1.finish());
        RootedTree(Arc::new(Node { children, size, depth, digest }))
    }

    pub fn children(&self) -> &Forest {
        &self.0.children
    }

    pub fn is_leaf(&self) -> bool {
        self.0.children.is_empty()
    }

    /// Number of nodes.
    pub fn size(&self) -> u128 {
        self.0.size
    }

    pub fn depth(&self) -> u32 {
        self.0.depth
    }

    /// `h[j]` = number of nodes at depth `j`.
    pub fn depth_histogram(&self) -> Vec<u128> {
        self.histogram_memo(&mut HashMap::new())
    }

    fn histogram_memo(&self, memo: &mut HashMap<(u64, u64), Vec<u128>>) -> Vec<u128> {
        if let Some(h) = memo.get(&self.0.digest) {
            return h.clone();
        }
        let mut h = vec![0u128; self.depth() as usize + 1];
        h[0] = 1;
        for (t, c) in self.children() {
            for (j, v) in t.histogram_memo(memo).into_iter().enumerate() {
                h[j + 1] += v * *c as u128;
            }
        }
        memo.insert(self.0.digest, h.clone());
        h
    }

    pub(crate) fn digest(&self) -> (u64, u64) {
        self.0.digest
    }

    /// `Σ_j j·h[j]`, the total depth over all nodes.
    pub fn depth_sum(&self) -> u128 {
        self.depth_histogram().iter().enumerate().map(|(j, v)| j as u128 * v).sum()
    }

    /// Balanced-parenthesis key: `"(" + sorted child keys + ")"`.
    pub fn canonical_key(&self) -> String {
        let mut s = String::with_capacity(2 * self.size().min(1 << 24) as usize);
        self.write_key(&mut s);
        s
    }

    fn write_key(&self, s: &mut String) {
        s.push('(');
        for (t, c) in self.children() {
            for _ in 0..*c {
                t.write_key(s);
            }
        }
        s.push(')');
    }

    pub fn from_key(key: &str) -> Result<Self> {
        let bytes = key.as_bytes();
        let bad = || Error::BadTreeKey(key.chars().take(40).collect());
        // explicit stack of partially built child lists
        let mut stack: Vec<Forest> = Vec::new();
        let mut done: Option<RootedTree> = None;
        for &b in bytes {
            if done.is_some() {
                return Err(bad());
            }
            match b {
                b'(' => stack.push(Vec::new()),
                b')' => {
                    let kids = stack.pop().ok_or_else(bad)?;
                    let t = RootedTree::from_children(kids);
                    match stack.last_mut() {
                        Some(parent) => parent.push((t, 1)),
                        None => done = Some(t),
                    }
                }
                _ => return Err(bad()),
            }
        }
        done.ok_or_else(bad)
    }

    /// Multiplicity of `child` among the root's children.
    pub fn child_count(&self, child: &RootedTree) -> u64 {
        self.children()
            .binary_search_by(|(t, _)| t.cmp(child))
            .map(|i| self.children()[i].1)
            .unwrap_or(0)
    }
}

impl PartialEq for RootedTree {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.digest == other.0.digest && self.0.size == other.0.size)
    }
}

impl Eq for RootedTree {}

impl Hash for RootedTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.digest.0);
    }
}

impl PartialOrd for RootedTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RootedTree {
    /// Byte order of the canonical keys. Keys are prefix-free, so two child
    /// sequences compare at their first differing child; a sequence that ends
    /// first is greater because `)` sorts after `(`.
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let (a, b) = (self.children(), other.children());
        let (mut i, mut j) = (0, 0);
        let (mut ra, mut rb) = (a.first().map_or(0, |x| x.1), b.first().map_or(0, |x| x.1));
        loop {
            match (i < a.len(), j < b.len()) {
                (false, false) => return Ordering::Equal,
                (false, true) => return Ordering::Greater,
                (true, false) => return Ordering::Less,
                (true, true) => {}
            }
            let c = a[i].0.cmp(&b[j].0);
            if c != Ordering::Equal {
                return c;
            }
            let step = ra.min(rb);
            ra -= step;
            rb -= step;
            if ra == 0 {
                i += 1;
                ra = a.get(i).map_or(0, |x| x.1);
            }
            if rb == 0 {
                j += 1;
                rb = b.get(j).map_or(0, |x| x.1);
            }
        }
    }
}

/// `⟨k×•⟩`-style notation: `*` for a single node, `<2x<6x*> (+) 3x*>` otherwise.
impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_leaf() {
            return f.write_str("*");
        }
        f.write_str("<")?;
        for (i, (t, c)) in self.children().iter().enumerate() {
            if i > 0 {
                f.write_str(" (+) ")?;
            }
            write!(f, "{c}x{t}")?;
        }
        f.write_str(">")
    }
}

/// `T_{ν(n)}`: the tree above every periodic point of the multiplication-by-n
/// map on `Z_m` whose n-decomposition has `ν` as first factor.
pub fn tree_of_nu_series(s: &NuSeries) -> RootedTree {
    let v = &s.terms;
    let depth = v.len();
    // gaps[i] = ν_{i+1} - ν_{i+2} (0-based), paired with T^{i}
    let gap = |i: usize| v[i] - v[i + 1];
    let mut levels = vec![RootedTree::leaf()];
    for k in 1..depth {
        let mut kids: Forest = vec![(levels[k - 1].clone(), v[k - 1])];
        kids.extend((0..k - 1).map(|i| (levels[i].clone(), gap(i))));
        levels.push(RootedTree::from_children(kids));
    }
    let mut kids: Forest = vec![(levels[depth - 1].clone(), v[depth - 1] - 1)];
    kids.extend((0..depth - 1).map(|i| (levels[i].clone(), gap(i))));
    RootedTree::from_children(kids)
}

/// `a + b`: union of the root children.
pub fn tree_sum(a: &RootedTree, b: &RootedTree) -> RootedTree {
    let mut kids = a.children().clone();
    kids.extend(b.children().iter().cloned());
    RootedTree::from_children(kids)
}

/// `a - b`, the tree whose sum with `b` is `a`, taken at the root.
pub fn tree_sub(a: &RootedTree, b: &RootedTree) -> Result<RootedTree> {
    let mut kids = a.children().clone();
    for (t, c) in b.children() {
        let slot = kids
            .binary_search_by(|(x, _)| x.cmp(t))
            .map_err(|_| Error::NotASummand)?;
        if kids[slot].1 < *c {
            return Err(Error::NotASummand);
        }
        kids[slot].1 -= c;
    }
    Ok(RootedTree::from_children(kids))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parity {
    /// `t = ⟨2×half⟩`
    Even { half: Forest },
    /// `t = ⟨2×half ⊕ ⟨2×inner⟩⟩`
    QuasiEven { half: Forest, inner: Forest },
    Neither,
}

pub fn classify_parity(t: &RootedTree) -> Parity {
    let half: Forest = t
        .children()
        .iter()
        .filter(|(_, c)| *c >= 2)
        .map(|(x, c)| (x.clone(), c / 2))
        .collect();
    let odd: Vec<&RootedTree> = t.children().iter().filter(|(_, c)| c % 2 == 1).map(|(x, _)| x).collect();
    match odd.as_slice() {
        [] => Parity::Even { half },
        [one] => match classify_parity(one) {
            Parity::Even { half: inner } => Parity::QuasiEven { half, inner },
            _ => Parity::Neither,
        },
        _ => Parity::Neither,
    }
}

/// `½t`: `⟨2×F⟩ ↦ ⟨F⟩`, `⟨2×F ⊕ ⟨2×F′⟩⟩ ↦ ⟨F ⊕ ⟨F′⟩⟩`.
pub fn bisect(t: &RootedTree) -> Result<RootedTree> {
    match classify_parity(t) {
        Parity::Even { half } => Ok(RootedTree::from_sorted(half)),
        Parity::QuasiEven { mut half, inner } => {
            half.push((RootedTree::from_sorted(inner), 1));
            Ok(RootedTree::from_children(half))
        }
        Parity::Neither => Err(Error::NotBisectable),
    }
}
