//! Discrete configuration spaces `UD(G,n)` / `OD(G,n)` as explicit cube
//! complexes (2-skeleton stored, full f-vector counted).

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::graph::{CellRef, Graph, VertexId};

/// A cube: `n` cells of the graph with pairwise disjoint closures.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CubeCell {
    pub cells: Vec<CellRef>,
}

impl CubeCell {
    pub fn dim(&self) -> usize {
        self.cells.iter().filter(|c| c.is_edge()).count()
    }

    /// The vertex positions of a 0-cell.
    pub fn positions(&self) -> Vec<VertexId> {
        self.cells
            .iter()
            .map(|c| match c {
                CellRef::Vertex(v) => *v,
                CellRef::Edge(_) => panic!("positions() called on a cube of positive dimension"),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeComplex {
    pub ordered: bool,
    pub robots: usize,
    pub zero_cells: Vec<CubeCell>,
    pub one_cells: Vec<CubeCell>,
    pub two_cells: Vec<CubeCell>,
    /// `(source, target)` 0-cells of each 1-cell: the moving edge replaced by
    /// its first and second endpoint.
    pub boundary1: Vec<(usize, usize)>,
    /// Square circuit of each 2-cell as `(1-cell, ±1)`.
    pub boundary2: Vec<[(usize, i8); 4]>,
    /// Number of cubes in every dimension `0..=n`.
    pub full_f_vector: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceReport {
    pub is_closed_surface: bool,
    pub orientable: Option<bool>,
    pub genus: Option<i64>,
    pub euler: i64,
}

fn disjoint(graph: &Graph, used: &[bool], cell: CellRef) -> bool {
    graph.closure_vertices(cell).iter().all(|v| !used[v.0])
}

/// Enumerates the cubes of the discrete configuration space.
///
/// Unordered cubes are sorted cell lists; ordered cubes are all their
/// permutations. Cubes of dimension above 2 are counted but not stored.
pub fn enumerate(graph: &Graph, n: usize, ordered: bool) -> CubeComplex {
    let cells = graph.cells();
    let mut full = vec![0u64; n + 1];
    let mut stored: [Vec<CubeCell>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    let mut used = vec![false; graph.vertex_count()];
    let mut chosen: Vec<CellRef> = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        graph: &Graph,
        cells: &[CellRef],
        start: usize,
        n: usize,
        used: &mut Vec<bool>,
        chosen: &mut Vec<CellRef>,
        full: &mut [u64],
        stored: &mut [Vec<CubeCell>; 3],
    ) {
        if chosen.len() == n {
            let dim = chosen.iter().filter(|c| c.is_edge()).count();
            full[dim] += 1;
            if dim <= 2 {
                stored[dim].push(CubeCell {
                    cells: chosen.clone(),
                });
            }
            return;
        }
        for i in start..cells.len() {
            let c = cells[i];
            if !disjoint(graph, used, c) {
                continue;
            }
            let vs = graph.closure_vertices(c);
            for v in &vs {
                used[v.0] = true;
            }
            chosen.push(c);
            rec(graph, cells, i + 1, n, used, chosen, full, stored);
            chosen.pop();
            for v in &vs {
                used[v.0] = false;
            }
        }
    }
    rec(
        graph,
        &cells,
        0,
        n,
        &mut used,
        &mut chosen,
        &mut full,
        &mut stored,
    );

    if ordered {
        let fact: u64 = (1..=n as u64).product();
        for f in &mut full {
            *f *= fact;
        }
        for dim in stored.iter_mut() {
            let mut perms: Vec<CubeCell> = dim
                .iter()
                .flat_map(|c| permutations(&c.cells))
                .map(|cells| CubeCell { cells })
                .collect();
            perms.sort();
            *dim = perms;
        }
    } else {
        for dim in stored.iter_mut() {
            dim.sort();
        }
    }
    let [zero, one, two] = stored;
    let index0: HashMap<&CubeCell, usize> = zero.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let index1: HashMap<&CubeCell, usize> = one.iter().enumerate().map(|(i, c)| (c, i)).collect();

    let normalise = |mut cells: Vec<CellRef>| {
        if !ordered {
            cells.sort();
        }
        CubeCell { cells }
    };
    let substitute = |cube: &CubeCell, pos: usize, v: VertexId| {
        let mut cells = cube.cells.clone();
        cells[pos] = CellRef::Vertex(v);
        normalise(cells)
    };

    let boundary1 = one
        .iter()
        .map(|c| {
            let pos = c
                .cells
                .iter()
                .position(CellRef::is_edge)
                .expect("1-cell has an edge");
            let CellRef::Edge(e) = c.cells[pos] else {
                unreachable!()
            };
            let (a, b) = graph.endpoints(e);
            (
                index0[&substitute(c, pos, a)],
                index0[&substitute(c, pos, b)],
            )
        })
        .collect();

    let boundary2 = two
        .iter()
        .map(|c| {
            let pos: Vec<usize> = c
                .cells
                .iter()
                .enumerate()
                .filter(|(_, x)| x.is_edge())
                .map(|(i, _)| i)
                .collect();
            let (i, j) = (pos[0], pos[1]);
            let ends = |p: usize| match c.cells[p] {
                CellRef::Edge(e) => graph.endpoints(e),
                CellRef::Vertex(_) => unreachable!(),
            };
            let ((a1, b1), (a2, b2)) = (ends(i), ends(j));
            let c1 = index1[&substitute(c, j, a2)];
            let c2 = index1[&substitute(c, i, b1)];
            let c3 = index1[&substitute(c, j, b2)];
            let c4 = index1[&substitute(c, i, a1)];
            [(c1, 1), (c2, 1), (c3, -1), (c4, -1)]
        })
        .collect();

    CubeComplex {
        ordered,
        robots: n,
        zero_cells: zero,
        one_cells: one,
        two_cells: two,
        boundary1,
        boundary2,
        full_f_vector: full,
    }
}

fn permutations(cells: &[CellRef]) -> Vec<Vec<CellRef>> {
    if cells.len() <= 1 {
        return vec![cells.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..cells.len() {
        let mut rest = cells.to_vec();
        let first = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

impl CubeComplex {
    /// `(#0-cells, #1-cells, #2-cells)`.
    pub fn f_vector(&self) -> (usize, usize, usize) {
        (
            self.zero_cells.len(),
            self.one_cells.len(),
            self.two_cells.len(),
        )
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.full_f_vector
            .iter()
            .enumerate()
            .map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Component id per 0-cell, numbered by smallest member.
    pub fn component_of(&self) -> Vec<usize> {
        let mut adj = vec![Vec::new(); self.zero_cells.len()];
        for &(a, b) in &self.boundary1 {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut comp = vec![usize::MAX; self.zero_cells.len()];
        let mut next = 0;
        for s in 0..self.zero_cells.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = next;
                        queue.push_back(y);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Connected components of the 1-skeleton as lists of 0-cell indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let comp = self.component_of();
        let count = comp.iter().copied().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); count];
        for (i, c) in comp.into_iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    pub fn zero_index(&self) -> HashMap<&CubeCell, usize> {
        self.zero_cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect()
    }

    pub fn one_index(&self) -> HashMap<&CubeCell, usize> {
        self.one_cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect()
    }

    /// Closed-surface recognition for the stored 2-skeleton.
    pub fn surface_check(&self) -> SurfaceReport {
        let euler = self.euler_characteristic();
        let not_surface = SurfaceReport {
            is_closed_surface: false,
            orientable: None,
            genus: None,
            euler,
        };
        let top_dim = self.full_f_vector.iter().rposition(|&f| f > 0);
        if self.two_cells.is_empty() || top_dim != Some(2) || self.components().len() != 1 {
            return not_surface;
        }
        let mut faces_of_edge: Vec<Vec<(usize, i8)>> = vec![Vec::new(); self.one_cells.len()];
        for (f, bd) in self.boundary2.iter().enumerate() {
            for &(c, s) in bd {
                faces_of_edge[c].push((f, s));
            }
        }
        if faces_of_edge.iter().any(|fs| fs.len() != 2) {
            return not_surface;
        }
        // link of every vertex must be one circle
        let mut link_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.zero_cells.len()];
        for bd in &self.boundary2 {
            let corners = self.square_corners(bd);
            for k in 0..4 {
                let incoming = bd[(k + 3) % 4].0;
                let outgoing = bd[k].0;
                link_edges[corners[k]].push((incoming, outgoing));
            }
        }
        for (v, edges) in link_edges.iter().enumerate() {
            let degree_ones = self
                .boundary1
                .iter()
                .filter(|&&(a, b)| a == v || b == v)
                .count();
            if !is_single_circle(edges, degree_ones) {
                return not_surface;
            }
        }
        // orientation propagation
        let mut orient: Vec<i8> = vec![0; self.two_cells.len()];
        let mut orientable = true;
        orient[0] = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(f) = queue.pop_front() {
            for &(c, s) in &self.boundary2[f] {
                for &(g, t) in &faces_of_edge[c] {
                    if g == f {
                        continue;
                    }
                    let want = -orient[f] * s * t;
                    if orient[g] == 0 {
                        orient[g] = want;
                        queue.push_back(g);
                    } else if orient[g] != want {
                        orientable = false;
                    }
                }
            }
        }
        SurfaceReport {
            is_closed_surface: true,
            orientable: Some(orientable),
            genus: orientable.then(|| (2 - euler) / 2),
            euler,
        }
    }

    /// The 0-cell at the start of each oriented side of a square.
    fn square_corners(&self, bd: &[(usize, i8); 4]) -> [usize; 4] {
        let start = |&(c, s): &(usize, i8)| {
            let (a, b) = self.boundary1[c];
            if s > 0 {
                a
            } else {
                b
            }
        };
        [start(&bd[0]), start(&bd[1]), start(&bd[2]), start(&bd[3])]
    }

    /// JSON export with stable ordering.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": "graphbraid.complex/1",
            "ordered": self.ordered,
            "robots": self.robots,
            "cells0": self.zero_cells.iter().map(|c| &c.cells).collect::<Vec<_>>(),
            "cells1": self.one_cells.iter().map(|c| &c.cells).collect::<Vec<_>>(),
            "cells2": self.two_cells.iter().map(|c| &c.cells).collect::<Vec<_>>(),
            "boundary1": self.boundary1,
            "boundary2": self.boundary2,
            "f_vector": self.full_f_vector,
        })
    }
}

fn is_single_circle(edges: &[(usize, usize)], node_count: usize) -> bool {
    if edges.is_empty() {
        return false;
    }
    let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
    for &(a, b) in edges {
        *deg.entry(a).or_default() += 1;
        *deg.entry(b).or_default() += 1;
    }
    if deg.len() != node_count || deg.values().any(|&d| d != 2) {
        return false;
    }
    // connectivity of the link
    let nodes: Vec<usize> = deg.keys().copied().collect();
    let mut seen = BTreeMap::from([(nodes[0], ())]);
    let mut stack = vec![nodes[0]];
    while let Some(x) = stack.pop() {
        for &(a, b) in edges {
            let y = if a == x {
                b
            } else if b == x {
                a
            } else {
                continue;
            };
            if seen.insert(y, ()).is_none() {
                stack.push(y);
            }
        }
    }
    seen.len() == nodes.len()
}

/// 0-cell of `UD(G,n)` as a sorted vertex list.
pub fn unordered_zero_cell(positions: &[VertexId]) -> CubeCell {
    let mut cells: Vec<CellRef> = positions.iter().map(|&v| CellRef::Vertex(v)).collect();
    cells.sort();
    CubeCell { cells }
}

/// Whether two unordered configurations lie in one component of the
/// 1-skeleton of `UD(G,n)`, searched implicitly (no cube enumeration).
pub fn same_component(graph: &Graph, a: &[VertexId], b: &[VertexId]) -> bool {
    let norm = |x: &[VertexId]| {
        let mut v = x.to_vec();
        v.sort();
        v
    };
    let (start, goal) = (norm(a), norm(b));
    if start == goal {
        return true;
    }
    let mut seen = std::collections::HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(cfg) = queue.pop_front() {
        for i in 0..cfg.len() {
            for &e in graph.incident(cfg[i]) {
                let w = graph.other_end(e, cfg[i]);
                if cfg.contains(&w) {
                    continue;
                }
                let mut next = cfg.clone();
                next[i] = w;
                next.sort();
                if next == goal {
                    return true;
                }
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    false
}
