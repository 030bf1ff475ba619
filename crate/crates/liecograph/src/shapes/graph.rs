//! S-graphs: connected oriented trees on the vertex set `0..n`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::perm::permutations;
use super::ShapeError;

/// A connected, acyclic, oriented graph on vertices `0..n`.
///
/// Edges are stored sorted, as `(source, target)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SGraph {
    n: usize,
    edges: Vec<(u8, u8)>,
}

/// Checks the S-graph conditions and builds the graph.
pub fn validate_graph(n: usize, edges: &[(usize, usize)]) -> Result<SGraph, ShapeError> {
    if n == 0 || n > u8::MAX as usize {
        return Err(ShapeError::BadVertexIndex { vertex: n });
    }
    let mut seen = BTreeSet::new();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(a, b) in edges {
        for v in [a, b] {
            if v >= n {
                return Err(ShapeError::BadVertexIndex { vertex: v });
            }
        }
        if a == b {
            return Err(ShapeError::HasCycle { edge: (a, b) });
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(ShapeError::DuplicateEdge { edge: (a, b) });
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return Err(ShapeError::HasCycle { edge: (a, b) });
        }
        parent[ra] = rb;
    }
    let root = find(&mut parent, 0);
    if let Some(v) = (1..n).find(|v| find(&mut parent, *v) != root) {
        return Err(ShapeError::NotConnected { vertex: v });
    }
    let mut e: Vec<(u8, u8)> = edges.iter().map(|&(a, b)| (a as u8, b as u8)).collect();
    e.sort_unstable();
    Ok(SGraph { n, edges: e })
}

impl SGraph {
    /// The graph with one vertex.
    pub fn point() -> Self {
        SGraph { n: 1, edges: Vec::new() }
    }

    /// The long graph `0 → 1 → … → n-1`.
    pub fn long(n: usize) -> Self {
        SGraph { n, edges: (1..n).map(|i| ((i - 1) as u8, i as u8)).collect() }
    }

    /// The long graph visiting the vertices in the given order.
    pub fn path(order: &[usize]) -> Self {
        let mut edges: Vec<(u8, u8)> = order.windows(2).map(|w| (w[0] as u8, w[1] as u8)).collect();
        edges.sort_unstable();
        SGraph { n: order.len(), edges }
    }

    pub fn weight(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(source, target)` with 0-based vertices.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(a, b)| (a as usize, b as usize))
    }

    pub fn edge(&self, index: usize) -> Result<(usize, usize), ShapeError> {
        self.edges
            .get(index)
            .map(|&(a, b)| (a as usize, b as usize))
            .ok_or(ShapeError::BadEdgeIndex { index })
    }

    /// The graph with vertex `i` renamed `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> SGraph {
        let mut edges: Vec<(u8, u8)> =
            self.edges.iter().map(|&(a, b)| (perm[a as usize] as u8, perm[b as usize] as u8)).collect();
        edges.sort_unstable();
        SGraph { n: self.n, edges }
    }

    /// The graph with the listed edges reversed.
    pub fn reverse_edges(&self, which: &[usize]) -> SGraph {
        let mut edges = self.edges.clone();
        for i in which {
            let (a, b) = edges[*i];
            edges[*i] = (b, a);
        }
        edges.sort_unstable();
        SGraph { n: self.n, edges }
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (a, b) in self.edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Vertices reachable from `start` without crossing edge `skip`.
    fn component(&self, start: usize, skip: Option<usize>) -> Vec<usize> {
        let mut mark = vec![false; self.n];
        let mut stack = vec![start];
        mark[start] = true;
        while let Some(v) = stack.pop() {
            for (i, (a, b)) in self.edges().enumerate() {
                if Some(i) == skip {
                    continue;
                }
                let other = if a == v { b } else if b == v { a } else { continue };
                if !mark[other] {
                    mark[other] = true;
                    stack.push(other);
                }
            }
        }
        (0..self.n).filter(|v| mark[*v]).collect()
    }

    /// The subgraph induced on `vertices` (sorted), relabelled `0..k` in order.
    /// Returns `None` unless the induced subgraph is connected.
    pub fn induced(&self, vertices: &[usize]) -> Option<SGraph> {
        let mut index = vec![usize::MAX; self.n];
        for (i, v) in vertices.iter().enumerate() {
            index[*v] = i;
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (a, b) in self.edges() {
            if index[a] != usize::MAX && index[b] != usize::MAX {
                edges.push((index[a], index[b]));
            }
        }
        validate_graph(vertices.len(), &edges).ok()
    }

    /// Removes edge `index`; returns the source side, the target side, and the
    /// original vertices of each side in increasing order.
    pub fn cut_edge(&self, index: usize) -> Result<CutEdge, ShapeError> {
        let (a, b) = self.edge(index)?;
        let source_side = self.component(a, Some(index));
        let target_side = self.component(b, Some(index));
        let source = self.induced(&source_side).expect("components are connected");
        let target = self.induced(&target_side).expect("components are connected");
        Ok(CutEdge { source, target, source_vertices: source_side, target_vertices: target_side })
    }

    /// Contracts edge `index`. The merged vertex sits where the source was,
    /// the target is removed and later vertices shift down by one.
    pub fn contract_edge(&self, index: usize) -> Result<Contraction, ShapeError> {
        let (a, b) = self.edge(index)?;
        let rename = |v: usize| {
            let v = if v == b { a } else { v };
            if v > b {
                v - 1
            } else {
                v
            }
        };
        let edges: Vec<(usize, usize)> = self
            .edges()
            .enumerate()
            .filter(|(i, _)| *i != index)
            .map(|(_, (x, y))| (rename(x), rename(y)))
            .collect();
        let graph = validate_graph(self.n - 1, &edges).expect("contracting a tree edge gives a tree");
        Ok(Contraction { graph, merged: (a, b), merged_vertex: rename(a) })
    }

    /// The lexicographically least relabelling, with the permutation reaching it.
    pub fn canonical_form(&self) -> (SGraph, Vec<usize>) {
        let mut best: Option<(SGraph, Vec<usize>)> = None;
        for perm in permutations(self.n) {
            let g = self.relabel(&perm);
            if best.as_ref().is_none_or(|(b, _)| g < *b) {
                best = Some((g, perm));
            }
        }
        best.expect("at least one permutation")
    }

    /// Degree of every vertex in the underlying tree.
    pub fn valences(&self) -> Vec<usize> {
        self.neighbours().iter().map(|n| n.len()).collect()
    }
}

impl fmt::Display for SGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G[{};", self.n)?;
        for (i, (a, b)) in self.edges().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{}{}->{}", sep, a + 1, b + 1)?;
        }
        write!(f, "]")
    }
}

/// Output of [`SGraph::cut_edge`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutEdge {
    pub source: SGraph,
    pub target: SGraph,
    pub source_vertices: Vec<usize>,
    pub target_vertices: Vec<usize>,
}

/// Output of [`SGraph::contract_edge`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub graph: SGraph,
    /// The original (source, target) of the contracted edge.
    pub merged: (usize, usize),
    /// Index of the merged vertex in the contracted graph.
    pub merged_vertex: usize,
}

/// A graph quotient: blocks of a connected partition of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphQuotient {
    pub source: SGraph,
    pub target: SGraph,
    /// `vertex_map[v]` is the target vertex of source vertex `v`.
    pub vertex_map: Vec<usize>,
}

impl GraphQuotient {
    /// Source vertices over each target vertex, in increasing order.
    pub fn fiber_vertices(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.target.weight()];
        for (v, k) in self.vertex_map.iter().enumerate() {
            out[*k].push(v);
        }
        out
    }

    /// The fiber subgraphs, relabelled in increasing vertex order.
    pub fn fibers(&self) -> Vec<SGraph> {
        self.fiber_vertices()
            .iter()
            .map(|vs| self.source.induced(vs).expect("fibers are connected"))
            .collect()
    }
}

/// Every labelled oriented tree on `n` vertices, sorted.
pub fn enumerate_graphs(n: usize) -> Result<Vec<SGraph>, ShapeError> {
    enumerate_graphs_with_cap(n, super::DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_graphs_with_cap(n: usize, cap: usize) -> Result<Vec<SGraph>, ShapeError> {
    if n > cap {
        return Err(ShapeError::CapExceeded { requested: n, cap });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![SGraph::point()]);
    }
    let mut out = Vec::new();
    let mut code = vec![0usize; n - 2];
    loop {
        let tree = prufer_decode(n, &code);
        for mask in 0u32..(1 << (n - 1)) {
            let mut edges: Vec<(u8, u8)> = tree
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| if mask >> i & 1 == 1 { (b as u8, a as u8) } else { (a as u8, b as u8) })
                .collect();
            edges.sort_unstable();
            out.push(SGraph { n, edges });
        }
        // advance the Prüfer code as a base-n counter
        let mut i = 0;
        loop {
            if i == code.len() {
                out.sort();
                return Ok(out);
            }
            code[i] += 1;
            if code[i] < n {
                break;
            }
            code[i] = 0;
            i += 1;
        }
    }
}

fn prufer_decode(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for c in code {
        degree[*c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for c in code {
        let leaf = (0..n).find(|v| degree[*v] == 1).expect("a leaf exists");
        edges.push((leaf.min(*c), leaf.max(*c)));
        degree[leaf] -= 1;
        degree[*c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|v| degree[*v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// All quotients of `g` onto graphs with `k` vertices.
pub fn enumerate_quotients(g: &SGraph, k: usize) -> Result<Vec<GraphQuotient>, ShapeError> {
    let n = g.weight();
    if k == 0 || k > n {
        return Err(ShapeError::BadQuotientSize { size: k, weight: n });
    }
    if n > super::DEFAULT_ENUMERATION_CAP + 2 {
        return Err(ShapeError::CapExceeded { requested: n, cap: super::DEFAULT_ENUMERATION_CAP + 2 });
    }
    // restricted growth strings enumerate set partitions in canonical order:
    // blocks are numbered by their least element
    let mut out = Vec::new();
    let mut blocks = vec![0usize; n];
    fn rec(g: &SGraph, k: usize, i: usize, used: usize, blocks: &mut Vec<usize>, out: &mut Vec<GraphQuotient>) {
        let n = g.weight();
        if i == n {
            if used != k {
                return;
            }
            let mut members = vec![Vec::new(); k];
            for (v, b) in blocks.iter().enumerate() {
                members[*b].push(v);
            }
            if members.iter().any(|m| g.induced(m).is_none()) {
                return;
            }
            let edges: Vec<(usize, usize)> = g
                .edges()
                .filter(|(a, b)| blocks[*a] != blocks[*b])
                .map(|(a, b)| (blocks[a], blocks[b]))
                .collect();
            let target = validate_graph(k, &edges).expect("connected blocks of a tree give a tree");
            out.push(GraphQuotient { source: g.clone(), target, vertex_map: blocks.clone() });
            return;
        }
        if n - i < k - used {
            return;
        }
        for b in 0..=used.min(k - 1) {
            blocks[i] = b;
            rec(g, k, i + 1, used.max(b + 1), blocks, out);
        }
    }
    rec(g, k, 0, 0, &mut blocks, &mut out);
    Ok(out)
}

/// One term of the anti-commutative coaction: `coefficient · target ⊗ fibers`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoactionTerm {
    pub coefficient: i64,
    pub target: SGraph,
    pub fibers: Vec<SGraph>,
    pub fiber_vertices: Vec<Vec<usize>>,
}

/// The anti-commutative cooperad structure map at arity `k`.
pub fn acc_coaction(g: &SGraph, k: usize) -> Result<Vec<CoactionTerm>, ShapeError> {
    let mut out = Vec::new();
    for q in enumerate_quotients(g, k)? {
        let fibers = q.fibers();
        let fiber_vertices = q.fiber_vertices();
        let m = q.target.edge_count();
        for mask in 0u32..(1 << m) {
            let which: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            let coefficient = if which.len() % 2 == 0 { 1 } else { -1 };
            out.push(CoactionTerm {
                coefficient,
                target: q.target.reverse_edges(&which),
                fibers: fibers.clone(),
                fiber_vertices: fiber_vertices.clone(),
            });
        }
    }
    Ok(out)
}

/// The associative coaction: the `E = ∅` part of [`acc_coaction`].
pub fn asc_coaction(g: &SGraph, k: usize) -> Result<Vec<CoactionTerm>, ShapeError> {
    Ok(enumerate_quotients(g, k)?
        .into_iter()
        .map(|q| CoactionTerm {
            coefficient: 1,
            fibers: q.fibers(),
            fiber_vertices: q.fiber_vertices(),
            target: q.target,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> SGraph {
        validate_graph(n, edges).unwrap()
    }

    #[test]
    fn validation_rejects_bad_graphs() {
        assert_eq!(g(3, &[(0, 1), (1, 2)]), SGraph::long(3));
        assert_eq!(validate_graph(3, &[(0, 1)]), Err(ShapeError::NotConnected { vertex: 2 }));
        assert!(matches!(validate_graph(3, &[(0, 1), (1, 2), (2, 0)]), Err(ShapeError::HasCycle { .. })));
        assert_eq!(validate_graph(2, &[(0, 1), (1, 0)]), Err(ShapeError::DuplicateEdge { edge: (1, 0) }));
        assert_eq!(validate_graph(2, &[(0, 5)]), Err(ShapeError::BadVertexIndex { vertex: 5 }));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_graphs(1).unwrap().len(), 1);
        assert_eq!(enumerate_graphs(2).unwrap(), vec![g(2, &[(0, 1)]), g(2, &[(1, 0)])]);
        assert_eq!(enumerate_graphs(3).unwrap().len(), 12);
        let four = enumerate_graphs(4).unwrap();
        assert_eq!(four.len(), 128);
        // every member is distinct and valid
        let set: BTreeSet<_> = four.iter().cloned().collect();
        assert_eq!(set.len(), 128);
        assert!(four.iter().all(|x| validate_graph(4, &x.edges().collect::<Vec<_>>()).is_ok()));
        assert!(matches!(enumerate_graphs(7), Err(ShapeError::CapExceeded { requested: 7, cap: 6 })));
    }

    #[test]
    fn cutting_edges() {
        let long = SGraph::long(3);
        let cut = long.cut_edge(1).unwrap();
        assert_eq!((cut.source, cut.target), (SGraph::long(2), SGraph::point()));
        assert_eq!((cut.source_vertices, cut.target_vertices), (vec![0, 1], vec![2]));
        let cut = long.cut_edge(0).unwrap();
        assert_eq!((cut.source, cut.target), (SGraph::point(), SGraph::long(2)));
        assert_eq!(cut.target_vertices, vec![1, 2]);

        let star = g(3, &[(0, 1), (2, 1)]);
        let e = star.edges().position(|x| x == (2, 1)).unwrap();
        let cut = star.cut_edge(e).unwrap();
        assert_eq!((cut.source, cut.target), (SGraph::point(), SGraph::long(2)));
        assert_eq!((cut.source_vertices, cut.target_vertices), (vec![2], vec![0, 1]));
        assert_eq!(long.cut_edge(2), Err(ShapeError::BadEdgeIndex { index: 2 }));
    }

    #[test]
    fn contracting_edges() {
        let c = SGraph::long(2).contract_edge(0).unwrap();
        assert_eq!((c.graph, c.merged), (SGraph::point(), (0, 1)));
        let long = SGraph::long(3);
        let c = long.contract_edge(0).unwrap();
        assert_eq!((c.graph, c.merged, c.merged_vertex), (SGraph::long(2), (0, 1), 0));
        let c = long.contract_edge(1).unwrap();
        assert_eq!((c.graph, c.merged, c.merged_vertex), (SGraph::long(2), (1, 2), 1));
    }

    #[test]
    fn quotient_examples() {
        let two = SGraph::long(2);
        assert_eq!(enumerate_quotients(&two, 1).unwrap().len(), 1);
        let id = enumerate_quotients(&two, 2).unwrap();
        assert_eq!(id.len(), 1);
        assert_eq!(id[0].vertex_map, vec![0, 1]);
        let three = enumerate_quotients(&SGraph::long(3), 2).unwrap();
        assert_eq!(three.len(), 2);
        assert!(three.iter().all(|q| q.vertex_map != vec![0, 1, 0]));
    }

    #[test]
    fn coaction_examples() {
        let terms = acc_coaction(&SGraph::long(2), 2).unwrap();
        let flipped = g(2, &[(1, 0)]);
        assert_eq!(terms.len(), 2);
        assert_eq!((terms[0].coefficient, &terms[0].target), (1, &SGraph::long(2)));
        assert_eq!((terms[1].coefficient, &terms[1].target), (-1, &flipped));
        assert!(terms.iter().all(|t| t.fibers == vec![SGraph::point(), SGraph::point()]));

        let point = acc_coaction(&SGraph::point(), 1).unwrap();
        assert_eq!(point.len(), 1);
        assert_eq!(point[0].coefficient, 1);

        let terms = acc_coaction(&SGraph::long(3), 2).unwrap();
        let collapse_23: Vec<_> = terms.iter().filter(|t| t.fiber_vertices == vec![vec![0], vec![1, 2]]).collect();
        assert_eq!(collapse_23.len(), 2);
        assert_eq!((collapse_23[0].coefficient, &collapse_23[0].target), (1, &SGraph::long(2)));
        assert_eq!((collapse_23[1].coefficient, &collapse_23[1].target), (-1, &flipped));
        assert_eq!(collapse_23[0].fibers, vec![SGraph::point(), SGraph::long(2)]);
    }

    #[test]
    fn canonical_form_examples() {
        let (c, p) = g(2, &[(1, 0)]).canonical_form();
        assert_eq!((c, p), (SGraph::long(2), vec![1, 0]));
        let (c, p) = SGraph::long(3).canonical_form();
        assert_eq!(c, SGraph::long(3));
        assert_eq!(p, vec![0, 1, 2]);
        let out_star = g(3, &[(1, 0), (1, 2)]);
        let other = g(3, &[(0, 1), (0, 2)]);
        assert_eq!(out_star.canonical_form().0, other.canonical_form().0);
        let (c, p) = out_star.canonical_form();
        assert_eq!(out_star.relabel(&p), c);
    }
}
