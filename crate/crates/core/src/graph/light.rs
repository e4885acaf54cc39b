//! Peeling a graph down to a spanning tree by removing "light" edges: an edge
//! `h` on a cycle `C` such that every cycle of `G - Nbhd(h)` avoids `C` and all
//! those cycles sit in one connected component.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{EdgeId, Graph, VertexId, View};
use crate::error::Error;

pub const DEFAULT_CYCLE_LIMIT: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LightDecomposition {
    /// Removal order: `(h_j, C_j)` with `C_j` listed as edge ids, `h_j` first.
    pub removed: Vec<(EdgeId, Vec<EdgeId>)>,
    /// Edges of the residual spanning tree (ids in the host graph).
    pub tree_edges: Vec<EdgeId>,
}

impl LightDecomposition {
    pub fn residual_tree(&self, graph: &Graph) -> Graph {
        let vertices: Vec<VertexId> = graph.vertices().collect();
        graph.subgraph(&vertices, &self.tree_edges).0
    }

    /// Edges present at stage `j`, i.e. just before `removed[j]` is taken out.
    pub fn stage_edges(&self, j: usize) -> BTreeSet<EdgeId> {
        let mut edges: BTreeSet<EdgeId> = self.tree_edges.iter().copied().collect();
        edges.extend(self.removed[j..].iter().map(|(h, _)| *h));
        edges
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum LightOutcome {
    Light(LightDecomposition),
    NotConstructible {
        witness_cycle: Vec<EdgeId>,
        removed_so_far: Vec<(EdgeId, Vec<EdgeId>)>,
    },
}

/// Greedy light decomposition: at each stage try edges in ascending id and,
/// for each, the simple cycles through it by ascending length.
pub fn light_decompose(graph: &Graph, cycle_limit: usize) -> Result<LightOutcome, Error> {
    if !graph.is_connected() {
        return Err(Error::Precondition(
            "light decomposition needs a connected graph".into(),
        ));
    }
    let mut cur = graph.full_view();
    let mut removed = Vec::new();
    loop {
        let bridges = cur.bridges();
        let cyclic: Vec<EdgeId> = cur.edges().filter(|e| !bridges.contains(e)).collect();
        if cyclic.is_empty() {
            let tree_edges = cur.edges().collect();
            return Ok(LightOutcome::Light(LightDecomposition {
                removed,
                tree_edges,
            }));
        }
        let mut hit = None;
        'candidates: for &h in &cyclic {
            let Some(cycle_vertices) = complement_cycle_vertices(&cur, h) else {
                continue;
            };
            for cycle in cycles_through(&cur, h, cycle_limit)? {
                let on_cycle = cycle_vertex_set(graph, &cycle);
                if on_cycle.is_disjoint(&cycle_vertices) {
                    hit = Some((h, cycle));
                    break 'candidates;
                }
            }
        }
        match hit {
            Some((h, cycle)) => {
                cur.remove_edge(h);
                removed.push((h, cycle));
            }
            None => {
                let witness = cycles_through(&cur, cyclic[0], cycle_limit)?
                    .into_iter()
                    .next()
                    .expect("a non-bridge edge lies on a cycle");
                return Ok(LightOutcome::NotConstructible {
                    witness_cycle: witness,
                    removed_so_far: removed,
                });
            }
        }
    }
}

/// Vertices on cycles of `cur - Nbhd(h)`, or `None` when those cycles span
/// more than one component.
fn complement_cycle_vertices(cur: &View<'_>, h: EdgeId) -> Option<BTreeSet<VertexId>> {
    let mut rest = cur.clone();
    rest.remove_neighbourhood(h);
    let bridges = rest.bridges();
    let labels = rest.component_labels();
    let mut comps = BTreeSet::new();
    let mut out = BTreeSet::new();
    for e in rest
        .edges()
        .filter(|e| !bridges.contains(e))
        .collect::<Vec<_>>()
    {
        let (a, b) = rest.graph.endpoints(e);
        comps.insert(labels[a.0]);
        out.insert(a);
        out.insert(b);
    }
    (comps.len() <= 1).then_some(out)
}

pub(crate) fn cycle_vertex_set(graph: &Graph, cycle: &[EdgeId]) -> BTreeSet<VertexId> {
    cycle
        .iter()
        .flat_map(|&e| {
            let (a, b) = graph.endpoints(e);
            [a, b]
        })
        .collect()
}

/// All simple cycles of `cur` through `h`, shortest first, each starting with
/// `h` and then walking from its second endpoint back to its first.
pub(crate) fn cycles_through(
    cur: &View<'_>,
    h: EdgeId,
    limit: usize,
) -> Result<Vec<Vec<EdgeId>>, Error> {
    let g = cur.graph;
    let (r, w) = g.endpoints(h);
    if r == w {
        return Ok(vec![vec![h]]);
    }
    let mut out: Vec<Vec<EdgeId>> = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];
    let mut path: Vec<EdgeId> = Vec::new();
    on_path[w.0] = true;
    // iterative DFS from w to r avoiding h
    let mut stack: Vec<(VertexId, usize)> = vec![(w, 0)];
    while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
        let inc = g.incident(v);
        if *idx >= inc.len() {
            stack.pop();
            on_path[v.0] = false;
            path.pop();
            continue;
        }
        let e = inc[*idx];
        *idx += 1;
        if e == h || !cur.has_edge(e) || g.is_loop(e) {
            continue;
        }
        let x = g.other_end(e, v);
        if x == r {
            let mut cycle = vec![h];
            cycle.extend(path.iter().copied());
            cycle.push(e);
            out.push(cycle);
            if out.len() > limit {
                return Err(Error::CycleLimit(limit));
            }
        } else if !on_path[x.0] {
            on_path[x.0] = true;
            path.push(e);
            stack.push((x, 0));
        }
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(out)
}
