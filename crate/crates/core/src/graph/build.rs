//! Orders in which a graph is grown edge by edge from a path of `n` vertices.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{check_subdivision, EdgeId, Graph, LightDecomposition, VertexId};
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    /// New leaf edge attached at a vertex of current degree at least 2.
    AddHanging,
    /// New leaf edge attached at a current leaf.
    StretchHanging,
    /// Edge between two existing vertices.
    AddCycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildStep {
    pub kind: StepKind,
    pub edge: EdgeId,
    /// Existing endpoint the edge is attached at (for cycles, its first endpoint).
    pub attach: VertexId,
    /// The vertex introduced by this step, if any.
    pub new_vertex: Option<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildOrder {
    pub start_path: Vec<VertexId>,
    pub start_edges: Vec<EdgeId>,
    pub steps: Vec<BuildStep>,
}

impl BuildOrder {
    /// Vertex and edge sets obtained by replaying every step.
    pub fn replay(&self) -> (BTreeSet<VertexId>, BTreeSet<EdgeId>) {
        let mut vs: BTreeSet<VertexId> = self.start_path.iter().copied().collect();
        let mut es: BTreeSet<EdgeId> = self.start_edges.iter().copied().collect();
        for s in &self.steps {
            vs.extend(s.new_vertex);
            es.insert(s.edge);
        }
        (vs, es)
    }
}

/// Spanning tree by BFS from the smallest vertex, then every remaining edge as
/// a cycle step in ascending id.
pub fn build_order(graph: &Graph, n: usize) -> Result<BuildOrder, Error> {
    check_preconditions(graph, n)?;
    let tree = bfs_tree(graph);
    let cycles: Vec<EdgeId> = graph.edges().filter(|e| !tree.contains(e)).collect();
    from_tree(graph, n, &tree, &cycles)
}

/// Build order whose cycle steps re-add the edges of a light decomposition in
/// reverse removal order, so that each cycle step sees exactly its stage graph.
pub fn build_order_from_light(
    graph: &Graph,
    n: usize,
    light: &LightDecomposition,
) -> Result<BuildOrder, Error> {
    check_preconditions(graph, n)?;
    let tree: BTreeSet<EdgeId> = light.tree_edges.iter().copied().collect();
    let cycles: Vec<EdgeId> = light.removed.iter().rev().map(|(h, _)| *h).collect();
    from_tree(graph, n, &tree, &cycles)
}

fn check_preconditions(graph: &Graph, n: usize) -> Result<(), Error> {
    if n == 0 {
        return Err(Error::Precondition("at least one robot is required".into()));
    }
    if graph.vertex_count() == 0 || !graph.is_connected() {
        return Err(Error::Precondition(
            "graph must be non-empty and connected".into(),
        ));
    }
    if n >= 2 {
        let report = check_subdivision(graph, n, false)?;
        if !report.ok {
            return Err(Error::Precondition(format!(
                "graph is not sufficiently subdivided for {n} robots ({} violations)",
                report.violations.len()
            )));
        }
    }
    Ok(())
}

fn bfs_tree(graph: &Graph) -> BTreeSet<EdgeId> {
    let mut seen = vec![false; graph.vertex_count()];
    let mut tree = BTreeSet::new();
    seen[0] = true;
    let mut queue = VecDeque::from([VertexId(0)]);
    while let Some(v) = queue.pop_front() {
        for &e in graph.incident(v) {
            let w = graph.other_end(e, v);
            if !seen[w.0] {
                seen[w.0] = true;
                tree.insert(e);
                queue.push_back(w);
            }
        }
    }
    tree
}

fn tree_neighbours(graph: &Graph, tree: &BTreeSet<EdgeId>, v: VertexId) -> Vec<(VertexId, EdgeId)> {
    let mut out: Vec<(VertexId, EdgeId)> = graph
        .incident(v)
        .iter()
        .filter(|e| tree.contains(e))
        .map(|&e| (graph.other_end(e, v), e))
        .collect();
    out.sort();
    out
}

/// First simple path with `n` vertices inside the tree, searching from the
/// smallest start vertex and smallest neighbours first.
fn start_path(
    graph: &Graph,
    tree: &BTreeSet<EdgeId>,
    n: usize,
) -> Option<(Vec<VertexId>, Vec<EdgeId>)> {
    if n == 1 {
        return Some((vec![VertexId(0)], Vec::new()));
    }
    fn extend(
        graph: &Graph,
        tree: &BTreeSet<EdgeId>,
        n: usize,
        vs: &mut Vec<VertexId>,
        es: &mut Vec<EdgeId>,
    ) -> bool {
        if vs.len() == n {
            return true;
        }
        let last = *vs.last().unwrap();
        let prev = vs.len().checked_sub(2).map(|i| vs[i]);
        for (w, e) in tree_neighbours(graph, tree, last) {
            if Some(w) == prev {
                continue;
            }
            vs.push(w);
            es.push(e);
            if extend(graph, tree, n, vs, es) {
                return true;
            }
            vs.pop();
            es.pop();
        }
        false
    }
    for s in graph.vertices() {
        let (mut vs, mut es) = (vec![s], Vec::new());
        if extend(graph, tree, n, &mut vs, &mut es) {
            return Some((vs, es));
        }
    }
    None
}

fn from_tree(
    graph: &Graph,
    n: usize,
    tree: &BTreeSet<EdgeId>,
    cycles: &[EdgeId],
) -> Result<BuildOrder, Error> {
    let (path, path_edges) = start_path(graph, tree, n).ok_or_else(|| {
        Error::Precondition(format!("the spanning tree has no path on {n} vertices"))
    })?;
    let mut degree = vec![0usize; graph.vertex_count()];
    for &e in &path_edges {
        let (a, b) = graph.endpoints(e);
        degree[a.0] += 1;
        degree[b.0] += 1;
    }
    let mut seen = vec![false; graph.vertex_count()];
    let mut used: BTreeSet<EdgeId> = path_edges.iter().copied().collect();
    let mut queue: VecDeque<VertexId> = VecDeque::new();
    for &v in &path {
        seen[v.0] = true;
        queue.push_back(v);
    }
    let mut steps = Vec::new();
    while let Some(v) = queue.pop_front() {
        for (w, e) in tree_neighbours(graph, tree, v) {
            if seen[w.0] || used.contains(&e) {
                continue;
            }
            let kind = if degree[v.0] >= 2 {
                StepKind::AddHanging
            } else {
                StepKind::StretchHanging
            };
            steps.push(BuildStep {
                kind,
                edge: e,
                attach: v,
                new_vertex: Some(w),
            });
            used.insert(e);
            degree[v.0] += 1;
            degree[w.0] += 1;
            seen[w.0] = true;
            queue.push_back(w);
        }
    }
    for &e in cycles {
        let (a, b) = graph.endpoints(e);
        if !seen[a.0] || !seen[b.0] {
            return Err(Error::Precondition(
                "cycle edge attached outside the spanning tree".into(),
            ));
        }
        steps.push(BuildStep {
            kind: StepKind::AddCycle,
            edge: e,
            attach: a,
            new_vertex: None,
        });
        degree[a.0] += 1;
        degree[b.0] += 1;
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Precondition("tree does not span the graph".into()));
    }
    Ok(BuildOrder {
        start_path: path,
        start_edges: path_edges,
        steps,
    })
}
