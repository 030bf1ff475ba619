//! Planar binary trees with labelled leaves.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::perm::permutations;
use super::ShapeError;

/// A nested bracket description of a planar binary tree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Nested {
    Leaf(usize),
    Node(Box<Nested>, Box<Nested>),
}

impl Nested {
    pub fn node(left: Nested, right: Nested) -> Nested {
        Nested::Node(Box::new(left), Box::new(right))
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Nested::Leaf(_) => 1,
            Nested::Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    fn collect(&self, depth: u8, leaves: &mut Vec<u8>, gaps: &mut Vec<u8>) {
        match self {
            Nested::Leaf(x) => leaves.push(*x as u8),
            Nested::Node(l, r) => {
                l.collect(depth + 1, leaves, gaps);
                gaps.push(depth);
                r.collect(depth + 1, leaves, gaps);
            }
        }
    }
}

/// A planar binary tree whose leaves, read left to right, carry the labels
/// `leaves` (a permutation of `0..n`).
///
/// The shape is stored as the depth of the internal vertex sitting in each
/// gap between consecutive leaves; internal vertex `g` is the one between
/// leaf positions `g` and `g + 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanarTree {
    gaps: Vec<u8>,
    leaves: Vec<u8>,
}

impl PlanarTree {
    pub fn leaf() -> Self {
        PlanarTree { gaps: Vec::new(), leaves: vec![0] }
    }

    pub fn from_nested(nested: &Nested) -> Result<Self, ShapeError> {
        let mut leaves = Vec::new();
        let mut gaps = Vec::new();
        nested.collect(0, &mut leaves, &mut gaps);
        let n = leaves.len();
        let mut seen = vec![false; n];
        for l in &leaves {
            let l = *l as usize;
            if l >= n || seen[l] {
                return Err(ShapeError::BadLeafLabels);
            }
            seen[l] = true;
        }
        Ok(PlanarTree { gaps, leaves })
    }

    /// The left comb `((…(o₀,o₁),o₂)…,oₙ₋₁)` with leaves in the given order.
    pub fn left_comb(order: &[usize]) -> Self {
        let n = order.len();
        PlanarTree {
            gaps: (0..n.saturating_sub(1)).map(|i| (n - 2 - i) as u8).collect(),
            leaves: order.iter().map(|x| *x as u8).collect(),
        }
    }

    /// Grafts two trees at a new root; the right tree's labels shift up.
    pub fn graft(left: &PlanarTree, right: &PlanarTree) -> PlanarTree {
        let k = left.weight() as u8;
        let mut gaps: Vec<u8> = left.gaps.iter().map(|d| d + 1).collect();
        gaps.push(0);
        gaps.extend(right.gaps.iter().map(|d| d + 1));
        let mut leaves = left.leaves.clone();
        leaves.extend(right.leaves.iter().map(|l| l + k));
        PlanarTree { gaps, leaves }
    }

    pub fn weight(&self) -> usize {
        self.leaves.len()
    }

    /// Leaf labels in planar order.
    pub fn leaves(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.leaves.iter().map(|l| *l as usize)
    }

    pub fn gap_depths(&self) -> &[u8] {
        &self.gaps
    }

    /// Planar position of each label.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.leaves.len()];
        for (i, l) in self.leaves.iter().enumerate() {
            pos[*l as usize] = i;
        }
        pos
    }

    /// The internal vertex on the path between leaf positions `i < j`: the
    /// shallowest gap between them.
    pub fn nadir_of_positions(&self, i: usize, j: usize) -> usize {
        let (lo, hi) = (i.min(j), i.max(j));
        (lo..hi).min_by_key(|g| self.gaps[*g]).expect("distinct positions")
    }

    /// The tree with leaf label `l` replaced by `perm[l]`.
    pub fn relabel(&self, perm: &[usize]) -> PlanarTree {
        PlanarTree { gaps: self.gaps.clone(), leaves: self.leaves.iter().map(|l| perm[*l as usize] as u8).collect() }
    }

    /// Whether the shape is a left comb.
    pub fn is_left_comb(&self) -> bool {
        let n = self.weight();
        self.gaps.iter().enumerate().all(|(i, d)| *d as usize == n - 2 - i)
    }

    pub fn to_nested(&self) -> Nested {
        self.nested_range(0, self.leaves.len())
    }

    fn nested_range(&self, lo: usize, hi: usize) -> Nested {
        if hi - lo == 1 {
            return Nested::Leaf(self.leaves[lo] as usize);
        }
        let root = (lo..hi - 1).min_by_key(|g| self.gaps[*g]).expect("non-empty range");
        Nested::node(self.nested_range(lo, root + 1), self.nested_range(root + 1, hi))
    }
}

impl fmt::Display for Nested {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nested::Leaf(x) => write!(f, "{}", x + 1),
            Nested::Node(l, r) => write!(f, "({},{})", l, r),
        }
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_nested())
    }
}

/// Gap-depth sequences of every planar binary tree shape with `n` leaves.
pub fn tree_shapes(n: usize) -> Vec<Vec<u8>> {
    if n == 1 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in 1..n {
        for l in tree_shapes(k) {
            for r in tree_shapes(n - k) {
                let mut g: Vec<u8> = l.iter().map(|d| d + 1).collect();
                g.push(0);
                g.extend(r.iter().map(|d| d + 1));
                out.push(g);
            }
        }
    }
    out
}

/// Every planar binary tree with leaves labelled by `0..n`, sorted.
pub fn enumerate_trees(n: usize) -> Result<Vec<PlanarTree>, ShapeError> {
    enumerate_trees_with_cap(n, super::DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_trees_with_cap(n: usize, cap: usize) -> Result<Vec<PlanarTree>, ShapeError> {
    if n > cap {
        return Err(ShapeError::CapExceeded { requested: n, cap });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let perms = permutations(n);
    let mut out = Vec::with_capacity(tree_shapes(n).len() * perms.len());
    for gaps in tree_shapes(n) {
        for p in &perms {
            out.push(PlanarTree { gaps: gaps.clone(), leaves: p.iter().map(|x| *x as u8).collect() });
        }
    }
    out.sort();
    Ok(out)
}
