#![allow(dead_code)]

use std::collections::BTreeSet;

use graphbraid::complex::enumerate;
use graphbraid::engine::{present_with, PresentOptions, Presented};
use graphbraid::graph::check_subdivision;
use graphbraid::group::{evaluate_word, Abelianization};
use graphbraid::oracle::{component_containing, h1, pi1_presentation};
use graphbraid::{Graph, VertexId};
use rand::Rng;

/// Builds a graph from index pairs, naming vertices `v0, v1, ...`.
pub fn from_pairs(vertices: usize, edges: &[(usize, usize)]) -> Graph {
    let mut g = Graph::new();
    for i in 0..vertices {
        g.add_vertex(format!("v{i}")).unwrap();
    }
    for &(a, b) in edges {
        g.add_edge(VertexId(a), VertexId(b)).unwrap();
    }
    g
}

pub fn triod() -> Graph {
    Graph::from_edges(
        &["v", "v1", "v2", "v3"],
        &[("v", "v1"), ("v", "v2"), ("v", "v3")],
    )
    .unwrap()
}

pub fn path(n: usize) -> Graph {
    from_pairs(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())
}

pub fn complete(n: usize) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    from_pairs(n, &pairs)
}

pub fn star(k: usize) -> Graph {
    from_pairs(k + 1, &(1..=k).map(|i| (0, i)).collect::<Vec<_>>())
}

/// Two degree-3 vertices joined by an edge, each with two leaves.
pub fn h_tree() -> Graph {
    from_pairs(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
}

/// Uniform random labelled tree (Prüfer sequence) on `vertices` vertices.
pub fn random_tree(rng: &mut impl Rng, vertices: usize) -> Graph {
    if vertices <= 2 {
        return from_pairs(vertices, &[(0, 1)][..vertices - 1]);
    }
    let seq: Vec<usize> = (0..vertices - 2)
        .map(|_| rng.gen_range(0..vertices))
        .collect();
    let mut degree = vec![1; vertices];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut edges = Vec::new();
    for &s in &seq {
        let leaf = (0..vertices).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..vertices).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    from_pairs(vertices, &edges)
}

/// A random connected graph: a random tree plus `extra` random edges
/// between distinct non-adjacent vertices.
pub fn random_connected(rng: &mut impl Rng, vertices: usize, extra: usize) -> Graph {
    let mut g = random_tree(rng, vertices);
    for _ in 0..extra * 4 {
        if g.edge_count() >= vertices - 1 + extra {
            break;
        }
        let (a, b) = (
            VertexId(rng.gen_range(0..vertices)),
            VertexId(rng.gen_range(0..vertices)),
        );
        if a != b && g.edge_between(a, b).is_none() {
            g.add_edge(a, b).unwrap();
        }
    }
    g
}

pub fn tree_rank(g: &Graph) -> usize {
    g.vertices()
        .map(|v| g.degree(v))
        .filter(|&d| d >= 2)
        .map(|d| (d - 1) * (d - 2) / 2)
        .sum()
}

/// Appends a path of `len` new edges starting at `from`; returns its far end.
fn arm(edges: &mut Vec<(usize, usize)>, next: &mut usize, from: usize, len: usize) -> usize {
    let mut cur = from;
    for _ in 0..len {
        edges.push((cur, *next));
        cur = *next;
        *next += 1;
    }
    cur
}

/// Appends a cycle of `len` edges through `at`.
fn cycle_at(edges: &mut Vec<(usize, usize)>, next: &mut usize, at: usize, len: usize) {
    let end = arm(edges, next, at, len - 1);
    edges.push((end, at));
}

/// Appends a path of `len` edges from `a` to `b`.
fn join(edges: &mut Vec<(usize, usize)>, next: &mut usize, a: usize, b: usize, len: usize) {
    let end = arm(edges, next, a, len - 1);
    edges.push((end, b));
}

/// Non-increasing sequences of parts in `min..` with sum at most `budget`.
fn partitions(min: usize, budget: usize, max_part: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for first in (min..=budget.min(max_part)).rev() {
        for mut rest in partitions(min, budget - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The decorations of one essential vertex: arm lengths and cycle lengths.
fn decorations(budget: usize, cycle_min: usize) -> Vec<(Vec<usize>, Vec<usize>, usize)> {
    let mut out = Vec::new();
    for arms in partitions(1, budget, budget) {
        let used: usize = arms.iter().sum();
        for cycles in partitions(cycle_min, budget - used, budget - used) {
            let total = used + cycles.iter().sum::<usize>();
            out.push((arms.clone(), cycles, total));
        }
    }
    out
}

/// Every connected graph with at most `max_edges` edges, up to isomorphism,
/// whose essential paths and essential cycles all have at least `n + 1`
/// edges (two or more essential vertices need more than nine edges).
pub fn sweep_graphs(max_edges: usize, n: usize) -> Vec<Graph> {
    assert!(max_edges <= 9, "three essential vertices are not generated");
    let mut out = vec![from_pairs(1, &[])];
    for m in 1..=max_edges {
        let mut e = Vec::new();
        let mut next = 1;
        arm(&mut e, &mut next, 0, m);
        out.push(from_pairs(next, &e));
        let mut e = Vec::new();
        let mut next = 1;
        cycle_at(&mut e, &mut next, 0, m);
        out.push(from_pairs(next.max(1), &e));
    }
    let long = n + 1;
    // one essential vertex
    for (arms, cycles, _) in decorations(max_edges, long) {
        if arms.len() + 2 * cycles.len() < 3 {
            continue;
        }
        let (mut e, mut next) = (Vec::new(), 1);
        for &a in &arms {
            arm(&mut e, &mut next, 0, a);
        }
        for &c in &cycles {
            cycle_at(&mut e, &mut next, 0, c);
        }
        out.push(from_pairs(next, &e));
    }
    // two essential vertices joined by at least one path
    let mut seen = BTreeSet::new();
    for joins in partitions(long, max_edges, max_edges)
        .into_iter()
        .filter(|j| !j.is_empty())
    {
        let used: usize = joins.iter().sum();
        for du in decorations(max_edges - used, long) {
            for dw in decorations(max_edges - used - du.2, long) {
                let degree =
                    |d: &(Vec<usize>, Vec<usize>, usize)| joins.len() + d.0.len() + 2 * d.1.len();
                if degree(&du) < 3 || degree(&dw) < 3 {
                    continue;
                }
                let key = (
                    joins.clone(),
                    (&du.0, &du.1).min((&dw.0, &dw.1)),
                    (&du.0, &du.1).max((&dw.0, &dw.1)),
                );
                let key = format!("{key:?}");
                if !seen.insert(key) {
                    continue;
                }
                let (mut e, mut next) = (Vec::new(), 2);
                for &j in &joins {
                    join(&mut e, &mut next, 0, 1, j);
                }
                for (at, d) in [(0, &du), (1, &dw)] {
                    for &a in &d.0 {
                        arm(&mut e, &mut next, at, a);
                    }
                    for &c in &d.1 {
                        cycle_at(&mut e, &mut next, at, c);
                    }
                }
                out.push(from_pairs(next, &e));
            }
        }
    }
    out.retain(|g| g.vertex_count() >= n && check_subdivision(g, n, false).unwrap().ok);
    out
}

/// Engine abelianization against the oracle on the base component.
pub struct Comparison {
    pub engine: Abelianization,
    pub oracle: Abelianization,
    /// Relators of the raw engine presentation whose witness loop is not
    /// null-homologous in the oracle complex.
    pub unsound_relators: usize,
    pub relators_checked: usize,
}

pub fn compare(g: &Graph, n: usize, opts: PresentOptions) -> (Presented, Comparison) {
    let p = present_with(g, n, opts).unwrap();
    let complex = enumerate(g, n, false);
    let base = p.raw.base.clone().unwrap();
    let comp = component_containing(&complex, &base).expect("engine base is a 0-cell");
    let oracle = pi1_presentation(&complex, comp).unwrap();
    let mut unsound = 0;
    for r in &p.raw.relators {
        let motion = evaluate_word(&p.raw, r).unwrap();
        motion.validate(g).unwrap();
        let chain = oracle.chain_of(&complex, g, &motion).unwrap();
        if !oracle.is_null_homologous(&chain) {
            unsound += 1;
        }
    }
    let c = Comparison {
        engine: p.presentation.abelianization(),
        oracle: h1(&complex, comp).unwrap(),
        unsound_relators: unsound,
        relators_checked: p.raw.relators.len(),
    };
    (p, c)
}

/// A random tree with at most `max_edges` edges passing the two-robot check:
/// a random labelled tree whose edges between non-leaf vertices are replaced
/// by paths of three edges.
pub fn random_checked_tree(rng: &mut impl Rng, max_edges: usize) -> Graph {
    loop {
        let size = rng.gen_range(4..=9);
        let t = random_tree(rng, size);
        let inner = |v: VertexId| t.degree(v) >= 2;
        let mut edges = Vec::new();
        let mut next = size;
        for e in t.edges() {
            let (a, b) = t.endpoints(e);
            if inner(a) && inner(b) {
                join(&mut edges, &mut next, a.0, b.0, 3);
            } else {
                edges.push((a.0, b.0));
            }
        }
        let g = from_pairs(next, &edges);
        if g.edge_count() <= max_edges && check_subdivision(&g, 2, false).unwrap().ok {
            return g;
        }
    }
}

/// Cycles of the given lengths, consecutive ones joined by paths of
/// `bridge` edges.
pub fn cycle_chain(lengths: &[usize], bridge: usize) -> Graph {
    let (mut e, mut next) = (Vec::new(), 1);
    let mut at = 0;
    for (i, &len) in lengths.iter().enumerate() {
        cycle_at(&mut e, &mut next, at, len);
        if i + 1 < lengths.len() {
            at = arm(&mut e, &mut next, at, bridge);
        }
    }
    from_pairs(next, &e)
}
