//! Structural properties of graphs, trees, and the configuration pairing.

use liecograph::pairing::shape_pair;
use liecograph::shapes::perm::permutations;
use liecograph::shapes::{
    acc_coaction, asc_coaction, enumerate_graphs, enumerate_quotients, enumerate_trees, validate_graph, Nested,
    PlanarTree, SGraph,
};
use proptest::prelude::*;

#[test]
fn cut_then_reglue_recovers_the_graph() {
    for n in 2..=5 {
        for g in enumerate_graphs(n).unwrap() {
            for e in 0..g.edge_count() {
                let (a, b) = g.edge(e).unwrap();
                let cut = g.cut_edge(e).unwrap();
                let mut edges: Vec<(usize, usize)> = cut
                    .source
                    .edges()
                    .map(|(x, y)| (cut.source_vertices[x], cut.source_vertices[y]))
                    .chain(cut.target.edges().map(|(x, y)| (cut.target_vertices[x], cut.target_vertices[y])))
                    .collect();
                assert!(cut.source_vertices.contains(&a) && cut.target_vertices.contains(&b));
                edges.push((a, b));
                assert_eq!(validate_graph(n, &edges).unwrap(), g);
            }
        }
    }
}

#[test]
fn contraction_gives_valid_graphs() {
    for n in 2..=5 {
        for g in enumerate_graphs(n).unwrap() {
            for e in 0..g.edge_count() {
                let c = g.contract_edge(e).unwrap();
                let edges: Vec<_> = c.graph.edges().collect();
                assert!(validate_graph(n - 1, &edges).is_ok());
            }
        }
    }
}

#[test]
fn codimension_one_quotients_are_edges() {
    for n in 2..=5 {
        for g in enumerate_graphs(n).unwrap() {
            let qs = enumerate_quotients(&g, n - 1).unwrap();
            assert_eq!(qs.len(), g.edge_count());
            let mut collapsed: Vec<(usize, usize)> = qs
                .iter()
                .map(|q| {
                    let fiber = q.fiber_vertices().into_iter().find(|f| f.len() == 2).unwrap();
                    (fiber[0], fiber[1])
                })
                .collect();
            collapsed.sort();
            let mut undirected: Vec<(usize, usize)> = g.edges().map(|(a, b)| (a.min(b), a.max(b))).collect();
            undirected.sort();
            assert_eq!(collapsed, undirected);
            let id = enumerate_quotients(&g, n).unwrap();
            assert_eq!(id.len(), 1);
            assert_eq!(id[0].vertex_map, (0..n).collect::<Vec<_>>());
        }
    }
}

#[test]
fn associative_coaction_is_the_unreversed_part() {
    for n in 1..=4 {
        for g in enumerate_graphs(n).unwrap() {
            for k in 1..=n {
                let acc = acc_coaction(&g, k).unwrap();
                let asc = asc_coaction(&g, k).unwrap();
                // the E = ∅ terms are those whose target equals the quotient
                let quotients = enumerate_quotients(&g, k).unwrap();
                let unreversed: Vec<_> = acc
                    .iter()
                    .filter(|t| quotients.iter().any(|q| q.target == t.target && q.fiber_vertices() == t.fiber_vertices))
                    .cloned()
                    .collect();
                assert_eq!(unreversed, asc);
                let reversed = acc.len() - asc.len();
                let edges: usize = quotients.iter().map(|q| (1usize << q.target.edge_count()) - 1).sum();
                assert_eq!(reversed, edges);
            }
        }
    }
}

#[test]
fn canonical_form_is_a_class_function() {
    for n in 1..=4 {
        for g in enumerate_graphs(n).unwrap() {
            let (c, p) = g.canonical_form();
            assert_eq!(g.relabel(&p), c);
            assert_eq!(c.canonical_form().0, c);
            for sigma in permutations(n) {
                assert_eq!(g.relabel(&sigma).canonical_form().0, c);
            }
        }
    }
}

fn swap_at(n: &Nested, path: &[bool]) -> Nested {
    match (n, path.split_first()) {
        (Nested::Node(l, r), None) => Nested::Node(r.clone(), l.clone()),
        (Nested::Node(l, r), Some((false, rest))) => Nested::Node(Box::new(swap_at(l, rest)), r.clone()),
        (Nested::Node(l, r), Some((true, rest))) => Nested::Node(l.clone(), Box::new(swap_at(r, rest))),
        (Nested::Leaf(_), _) => unreachable!(),
    }
}

/// Internal nodes as paths from the root (false = left).
fn node_paths(n: &Nested) -> Vec<Vec<bool>> {
    match n {
        Nested::Leaf(_) => vec![],
        Nested::Node(l, r) => {
            let mut out = vec![vec![]];
            out.extend(node_paths(l).into_iter().map(|p| [vec![false], p].concat()));
            out.extend(node_paths(r).into_iter().map(|p| [vec![true], p].concat()));
            out
        }
    }
}

fn subtree<'a>(n: &'a Nested, path: &[bool]) -> &'a Nested {
    match (n, path.split_first()) {
        (_, None) => n,
        (Nested::Node(l, _), Some((false, rest))) => subtree(l, rest),
        (Nested::Node(_, r), Some((true, rest))) => subtree(r, rest),
        _ => unreachable!(),
    }
}

fn replace(n: &Nested, path: &[bool], with: Nested) -> Nested {
    match (n, path.split_first()) {
        (_, None) => with,
        (Nested::Node(l, r), Some((false, rest))) => Nested::Node(Box::new(replace(l, rest, with)), r.clone()),
        (Nested::Node(l, r), Some((true, rest))) => Nested::Node(l.clone(), Box::new(replace(r, rest, with))),
        _ => unreachable!(),
    }
}

/// Jacobi triples `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]` at every eligible node.
fn jacobi_triples(t: &PlanarTree) -> Vec<[PlanarTree; 3]> {
    let nested = t.to_nested();
    let mut out = Vec::new();
    for p in node_paths(&nested) {
        if let Nested::Node(x, yz) = subtree(&nested, &p) {
            if let Nested::Node(y, z) = yz.as_ref() {
                let (x, y, z) = ((**x).clone(), (**y).clone(), (**z).clone());
                let terms = [
                    Nested::node(x.clone(), Nested::node(y.clone(), z.clone())),
                    Nested::node(y.clone(), Nested::node(z.clone(), x.clone())),
                    Nested::node(z, Nested::node(x, y)),
                ];
                out.push(terms.map(|s| PlanarTree::from_nested(&replace(&nested, &p, s)).unwrap()));
            }
        }
    }
    out
}

fn tree_relations_vanish(g: &SGraph, t: &PlanarTree) {
    let nested = t.to_nested();
    for p in node_paths(&nested) {
        let swapped = PlanarTree::from_nested(&swap_at(&nested, &p)).unwrap();
        assert_eq!(shape_pair(g, t).unwrap() + shape_pair(g, &swapped).unwrap(), 0);
    }
    for triple in jacobi_triples(t) {
        let s: i64 = triple.iter().map(|x| shape_pair(g, x).unwrap()).sum();
        assert_eq!(s, 0);
    }
}

/// Arnold triples on every path `a → b → c` of the graph.
fn arnold_triples(g: &SGraph) -> Vec<[SGraph; 3]> {
    let edges: Vec<_> = g.edges().collect();
    let n = g.weight();
    let mut out = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for (j, &(b2, c)) in edges.iter().enumerate() {
            if b2 != b || i == j {
                continue;
            }
            let rest: Vec<_> = edges.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, e)| *e).collect();
            let make = |pair: [(usize, usize); 2]| validate_graph(n, &[rest.clone(), pair.to_vec()].concat()).unwrap();
            out.push([make([(a, b), (b, c)]), make([(b, c), (c, a)]), make([(a, b), (c, a)])]);
        }
    }
    out
}

fn graph_relations_vanish(g: &SGraph, t: &PlanarTree) {
    for e in 0..g.edge_count() {
        assert_eq!(shape_pair(g, t).unwrap() + shape_pair(&g.reverse_edges(&[e]), t).unwrap(), 0);
    }
    for triple in arnold_triples(g) {
        let s: i64 = triple.iter().map(|x| shape_pair(x, t).unwrap()).sum();
        assert_eq!(s, 0);
    }
}

#[test]
fn pairing_kills_relations_exhaustively() {
    for n in 2..=4 {
        let graphs = enumerate_graphs(n).unwrap();
        let trees = enumerate_trees(n).unwrap();
        for g in &graphs {
            for t in &trees {
                tree_relations_vanish(g, t);
                graph_relations_vanish(g, t);
            }
        }
    }
}

#[test]
fn pairing_is_equivariant() {
    for n in 2..=4 {
        let trees = enumerate_trees(n).unwrap();
        for g in enumerate_graphs(n).unwrap() {
            for t in &trees {
                let v = shape_pair(&g, t).unwrap();
                for sigma in permutations(n) {
                    assert_eq!(shape_pair(&g.relabel(&sigma), &t.relabel(&sigma)).unwrap(), v);
                }
            }
        }
    }
}

fn arb_graph(n: usize) -> impl Strategy<Value = SGraph> {
    (prop::collection::vec(0..n, n - 2), prop::collection::vec(any::<bool>(), n - 1)).prop_map(move |(code, flips)| {
        // decode a Prüfer sequence
        let mut degree = vec![1usize; n];
        for c in &code {
            degree[*c] += 1;
        }
        let mut edges = Vec::new();
        for c in &code {
            let leaf = (0..n).find(|v| degree[*v] == 1).unwrap();
            edges.push((leaf, *c));
            degree[leaf] -= 1;
            degree[*c] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|v| degree[*v] == 1).collect();
        edges.push((rest[0], rest[1]));
        let edges: Vec<_> = edges.into_iter().zip(flips).map(|((a, b), f)| if f { (b, a) } else { (a, b) }).collect();
        validate_graph(n, &edges).unwrap()
    })
}

fn arb_tree(n: usize) -> impl Strategy<Value = PlanarTree> {
    let shapes = liecograph::shapes::tree_shapes(n);
    (0..shapes.len(), arb_perm(n))
    .prop_map(move |(s, order)| {
        fn build(g: &[u8], lo: usize, hi: usize, order: &[usize]) -> Nested {
            if hi - lo == 1 {
                return Nested::Leaf(order[lo]);
            }
            let root = (lo..hi - 1).min_by_key(|i| g[*i]).unwrap();
            Nested::node(build(g, lo, root + 1, order), build(g, root + 1, hi, order))
        }
        PlanarTree::from_nested(&build(&shapes[s], 0, n, &order)).unwrap()
    })
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn weight_five_relations_vanish(g in arb_graph(5), t in arb_tree(5)) {
        tree_relations_vanish(&g, &t);
        graph_relations_vanish(&g, &t);
    }

    #[test]
    fn weight_five_equivariance(g in arb_graph(5), t in arb_tree(5), sigma in arb_perm(5)) {
        prop_assert_eq!(shape_pair(&g.relabel(&sigma), &t.relabel(&sigma)).unwrap(), shape_pair(&g, &t).unwrap());
    }

    #[test]
    fn canonical_form_invariant_at_weight_six(g in arb_graph(6), sigma in arb_perm(6)) {
        prop_assert_eq!(g.relabel(&sigma).canonical_form().0, g.canonical_form().0);
    }
}
