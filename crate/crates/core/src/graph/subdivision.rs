use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{EdgeId, Graph, VertexId};
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    EssentialPath,
    EssentialCycle,
    Loop,
    MultiEdge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl SubdivisionReport {
    fn from_violations(mut violations: Vec<Violation>) -> Self {
        violations.sort_by(|a, b| (a.kind, a.length, &a.edges).cmp(&(b.kind, b.length, &b.edges)));
        violations.dedup_by(|a, b| a.kind == b.kind && sorted(&a.edges) == sorted(&b.edges));
        Self {
            ok: violations.is_empty(),
            violations,
        }
    }
}

fn sorted(edges: &[EdgeId]) -> Vec<EdgeId> {
    let mut v = edges.to_vec();
    v.sort();
    v
}

/// Checks whether `graph` is subdivided enough for `n` robots so that the
/// discrete configuration space carries the homotopy type of the topological
/// one.
///
/// General mode: every path between distinct essential vertices and every
/// cycle through an essential vertex needs at least `n + 1` edges.
/// Strengthened mode (only for `n = 2`): no loops and no multiple edges.
pub fn check_subdivision(
    graph: &Graph,
    n: usize,
    strengthened: bool,
) -> Result<SubdivisionReport, Error> {
    if strengthened {
        if n != 2 {
            return Err(Error::Precondition(format!(
                "the strengthened check only applies to 2 robots, got {n}"
            )));
        }
        let mut violations = Vec::new();
        for e in graph.edges() {
            let (a, b) = graph.endpoints(e);
            if a == b {
                violations.push(Violation {
                    kind: ViolationKind::Loop,
                    vertices: vec![a],
                    edges: vec![e],
                    length: 1,
                });
            } else if let Some(f) = graph.edge_between(a, b).filter(|&f| f != e) {
                violations.push(Violation {
                    kind: ViolationKind::MultiEdge,
                    vertices: vec![a.min(b), a.max(b)],
                    edges: vec![f.min(e), f.max(e)],
                    length: 2,
                });
            }
        }
        return Ok(SubdivisionReport::from_violations(violations));
    }

    let essential = graph.essential_vertices();
    let mut violations = Vec::new();
    for &u in &essential {
        if let Some((vertices, edges)) = nearest_essential(graph, u, &essential) {
            if edges.len() < n + 1 {
                violations.push(Violation {
                    kind: ViolationKind::EssentialPath,
                    length: edges.len(),
                    vertices,
                    edges,
                });
            }
        }
        if let Some((vertices, edges)) = shortest_cycle_through(graph, u) {
            if edges.len() < n + 1 {
                violations.push(Violation {
                    kind: ViolationKind::EssentialCycle,
                    length: edges.len(),
                    vertices,
                    edges,
                });
            }
        }
    }
    Ok(SubdivisionReport::from_violations(violations))
}

fn nearest_essential(
    graph: &Graph,
    start: VertexId,
    essential: &BTreeSet<VertexId>,
) -> Option<(Vec<VertexId>, Vec<EdgeId>)> {
    let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None; graph.vertex_count()];
    let mut seen = vec![false; graph.vertex_count()];
    seen[start.0] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        if v != start && essential.contains(&v) {
            let (mut vs, mut es) = (vec![v], Vec::new());
            let mut cur = v;
            while let Some((p, e)) = parent[cur.0] {
                vs.push(p);
                es.push(e);
                cur = p;
            }
            vs.reverse();
            es.reverse();
            return Some((vs, es));
        }
        for &e in graph.incident(v) {
            let w = graph.other_end(e, v);
            if !seen[w.0] {
                seen[w.0] = true;
                parent[w.0] = Some((v, e));
                queue.push_back(w);
            }
        }
    }
    None
}

/// Shortest cycle through `v`, found by labelling BFS branches with the first
/// edge out of `v` and closing over an edge joining two different branches.
pub(crate) fn shortest_cycle_through(
    graph: &Graph,
    v: VertexId,
) -> Option<(Vec<VertexId>, Vec<EdgeId>)> {
    if let Some(&l) = graph.incident(v).iter().find(|&&e| graph.is_loop(e)) {
        return Some((vec![v], vec![l]));
    }
    let n = graph.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut branch: Vec<Option<EdgeId>> = vec![None; n];
    let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
    dist[v.0] = 0;
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        for &e in graph.incident(x) {
            let y = graph.other_end(e, x);
            if dist[y.0] == usize::MAX {
                dist[y.0] = dist[x.0] + 1;
                branch[y.0] = if x == v { Some(e) } else { branch[x.0] };
                parent[y.0] = Some((x, e));
                queue.push_back(y);
            }
        }
    }
    let mut best: Option<(usize, EdgeId)> = None;
    for e in graph.edges() {
        let (x, y) = graph.endpoints(e);
        if dist[x.0] == usize::MAX || dist[y.0] == usize::MAX || x == y {
            continue;
        }
        let is_tree = parent[x.0].map(|p| p.1) == Some(e) || parent[y.0].map(|p| p.1) == Some(e);
        if is_tree || branch[x.0] == branch[y.0] {
            continue;
        }
        let len = dist[x.0] + dist[y.0] + 1;
        if best.is_none_or(|(b, _)| len < b) {
            best = Some((len, e));
        }
    }
    let (_, closing) = best?;
    let (x, y) = graph.endpoints(closing);
    let walk = |mut cur: VertexId| {
        let (mut vs, mut es) = (vec![cur], Vec::new());
        while let Some((p, e)) = parent[cur.0] {
            vs.push(p);
            es.push(e);
            cur = p;
        }
        (vs, es)
    };
    // v .. x, closing edge, y .. v
    let (mut vx, mut ex) = walk(x);
    vx.reverse();
    ex.reverse();
    let (vy, ey) = walk(y);
    ex.push(closing);
    ex.extend(ey);
    vx.extend(vy.into_iter().take_while(|&w| w != v));
    Some((vx, ex))
}

/// Images of the old cells inside a subdivided graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellMap {
    pub vertices: Vec<VertexId>,
    /// For each old edge, the new edges along it, from its first endpoint.
    pub edges: Vec<Vec<EdgeId>>,
    /// For each old edge, the new interior vertices along it.
    pub interior: Vec<Vec<VertexId>>,
}

/// Splits every edge into `n + 1` edges.
pub fn subdivide_for(graph: &Graph, n: usize) -> (Graph, CellMap) {
    let mut out = Graph::new();
    let vertices: Vec<VertexId> = graph
        .vertices()
        .map(|v| {
            out.add_vertex(graph.name(v))
                .expect("copied names stay unique")
        })
        .collect();
    let mut map = CellMap {
        vertices,
        edges: Vec::new(),
        interior: Vec::new(),
    };
    for e in graph.edges() {
        let (a, b) = graph.endpoints(e);
        let (na, nb) = (graph.name(a), graph.name(b));
        let mut chain = vec![map.vertices[a.0]];
        let mut interior = Vec::new();
        for k in 1..=n {
            let mut name = format!("{na}-{nb}.{k}");
            if out.vertex_by_name(&name).is_some() {
                name = format!("{na}-{nb}#{}.{k}", e.0);
            }
            while out.vertex_by_name(&name).is_some() {
                name.push('\'');
            }
            let v = out.add_vertex(name).expect("fresh name");
            interior.push(v);
            chain.push(v);
        }
        chain.push(map.vertices[b.0]);
        let edges = chain
            .windows(2)
            .map(|w| out.add_edge(w[0], w[1]).expect("vertices exist"))
            .collect();
        map.edges.push(edges);
        map.interior.push(interior);
    }
    (out, map)
}
