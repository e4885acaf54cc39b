//! Track graphs: vertices, edges (loops and parallel edges allowed), and the
//! combinatorial queries the rest of the crate builds on.

mod build;
mod io;
mod light;
mod subdivision;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use build::{build_order, build_order_from_light, BuildOrder, BuildStep, StepKind};
pub use io::ParseError;
pub use light::{light_decompose, LightDecomposition, LightOutcome, DEFAULT_CYCLE_LIMIT};
pub use subdivision::{
    check_subdivision, subdivide_for, CellMap, SubdivisionReport, Violation, ViolationKind,
};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// A vertex or an (open) edge of a graph.
///
/// The derived order puts every vertex before every edge, which is the
/// canonical order used to sort cells of configuration-space cubes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "id", rename_all = "lowercase")]
pub enum CellRef {
    Vertex(VertexId),
    Edge(EdgeId),
}

impl CellRef {
    pub fn is_edge(&self) -> bool {
        matches!(self, CellRef::Edge(_))
    }
}

/// A finite graph (1-dimensional CW complex).
///
/// Vertex and edge ids are dense indices in declaration order. Display names
/// are kept alongside and are unique.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    name_index: HashMap<String, VertexId>,
    edges: Vec<(VertexId, VertexId)>,
    incident: Vec<Vec<EdgeId>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a named vertex. Names must be unique and non-empty without whitespace.
    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<VertexId, Error> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(Error::InvalidName(name));
        }
        if self.name_index.contains_key(&name) {
            return Err(Error::DuplicateVertex(name));
        }
        let id = VertexId(self.names.len());
        self.name_index.insert(name.clone(), id);
        self.names.push(name);
        self.incident.push(Vec::new());
        Ok(id)
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<EdgeId, Error> {
        for v in [a, b] {
            if v.0 >= self.names.len() {
                return Err(Error::UnknownVertex(v.to_string()));
            }
        }
        let id = EdgeId(self.edges.len());
        self.edges.push((a, b));
        self.incident[a.0].push(id);
        if a != b {
            self.incident[b.0].push(id);
        }
        Ok(id)
    }

    /// Convenience constructor from names and name pairs; vertices listed in
    /// `edges` but not in `vertices` are declared on first use.
    pub fn from_edges(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self, Error> {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(*v)?;
        }
        for (a, b) in edges {
            let a = g.vertex_or_insert(a)?;
            let b = g.vertex_or_insert(b)?;
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub(crate) fn vertex_or_insert(&mut self, name: &str) -> Result<VertexId, Error> {
        match self.name_index.get(name) {
            Some(&v) => Ok(v),
            None => self.add_vertex(name),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.names.len()).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.0]
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        e.0 < self.edges.len()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        v.0 < self.names.len()
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.name_index.get(name).copied()
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v.0]
    }

    /// The endpoint of `e` opposite to `v` (for a loop, `v` itself).
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e.0];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Degree, with a loop counted twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.incident[v.0]
            .iter()
            .map(|&e| if self.is_loop(e) { 2 } else { 1 })
            .sum()
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (a, b) = self.edges[e.0];
        a == b
    }

    pub fn has_loops(&self) -> bool {
        self.edges().any(|e| self.is_loop(e))
    }

    pub fn has_multi_edges(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges
            .iter()
            .any(|&(a, b)| a != b && !seen.insert((a.min(b), a.max(b))))
    }

    /// Edge joining two distinct vertices, smallest id first.
    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.incident[a.0]
            .iter()
            .copied()
            .find(|&e| self.other_end(e, a) == b && !self.is_loop(e))
    }

    /// Closure of a cell: the cell and its endpoints.
    pub fn closure(&self, cell: CellRef) -> Vec<CellRef> {
        match cell {
            CellRef::Vertex(_) => vec![cell],
            CellRef::Edge(e) => {
                let (a, b) = self.endpoints(e);
                let mut out = vec![cell, CellRef::Vertex(a)];
                if a != b {
                    out.push(CellRef::Vertex(b));
                }
                out.sort();
                out
            }
        }
    }

    /// Vertices in the closure of a cell.
    pub fn closure_vertices(&self, cell: CellRef) -> Vec<VertexId> {
        match cell {
            CellRef::Vertex(v) => vec![v],
            CellRef::Edge(e) => {
                let (a, b) = self.endpoints(e);
                if a == b {
                    vec![a]
                } else {
                    vec![a.min(b), a.max(b)]
                }
            }
        }
    }

    /// All cells: vertices first, then edges, in id order.
    pub fn cells(&self) -> Vec<CellRef> {
        self.vertices()
            .map(CellRef::Vertex)
            .chain(self.edges().map(CellRef::Edge))
            .collect()
    }

    pub fn essential_vertices(&self) -> BTreeSet<VertexId> {
        self.vertices().filter(|&v| self.degree(v) >= 3).collect()
    }

    /// `Nbhd(e)`: the closed edge plus every open edge at either endpoint.
    pub fn neighbourhood(&self, e: EdgeId) -> Result<BTreeSet<CellRef>, Error> {
        if !self.has_edge(e) {
            return Err(Error::UnknownEdge(e.to_string()));
        }
        let (a, b) = self.endpoints(e);
        let mut out = BTreeSet::new();
        for v in [a, b] {
            out.insert(CellRef::Vertex(v));
            out.extend(self.incident(v).iter().map(|&f| CellRef::Edge(f)));
        }
        Ok(out)
    }

    /// Cells of `G - Nbhd(e)`.
    pub fn neighbourhood_complement(&self, e: EdgeId) -> Result<BTreeSet<CellRef>, Error> {
        let nb = self.neighbourhood(e)?;
        Ok(self
            .cells()
            .into_iter()
            .filter(|c| !nb.contains(c))
            .collect())
    }

    pub fn full_view(&self) -> View<'_> {
        View::full(self)
    }

    pub fn is_connected(&self) -> bool {
        self.full_view().component_count() <= 1
    }

    /// `|E| - |V| + #components`.
    pub fn first_betti(&self) -> usize {
        self.edge_count() + self.full_view().component_count() - self.vertex_count()
    }

    /// The subgraph spanned by the given vertices and edges, plus the id maps
    /// back into `self`. Edges whose endpoints are not both kept are dropped.
    pub fn subgraph(
        &self,
        vertices: &[VertexId],
        edges: &[EdgeId],
    ) -> (Graph, Vec<VertexId>, Vec<EdgeId>) {
        let mut g = Graph::new();
        let mut vmap = HashMap::new();
        let mut vback = Vec::new();
        for &v in vertices {
            let id = g
                .add_vertex(self.name(v))
                .expect("names are unique in the host graph");
            vmap.insert(v, id);
            vback.push(v);
        }
        let mut eback = Vec::new();
        for &e in edges {
            let (a, b) = self.endpoints(e);
            if let (Some(&x), Some(&y)) = (vmap.get(&a), vmap.get(&b)) {
                g.add_edge(x, y).expect("endpoints exist");
                eback.push(e);
            }
        }
        (g, vback, eback)
    }
}

/// A subgraph of a host graph given by vertex and edge masks.
///
/// An edge is only active when both its endpoints are active.
#[derive(Clone, Debug)]
pub struct View<'g> {
    pub graph: &'g Graph,
    vmask: Vec<bool>,
    emask: Vec<bool>,
}

impl<'g> View<'g> {
    pub fn full(graph: &'g Graph) -> Self {
        Self {
            graph,
            vmask: vec![true; graph.vertex_count()],
            emask: vec![true; graph.edge_count()],
        }
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vmask[v.0]
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        if !self.emask[e.0] {
            return false;
        }
        let (a, b) = self.graph.endpoints(e);
        self.vmask[a.0] && self.vmask[b.0]
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        self.vmask[v.0] = false;
    }

    pub fn remove_edge(&mut self, e: EdgeId) {
        self.emask[e.0] = false;
    }

    pub fn add_edge(&mut self, e: EdgeId) {
        self.emask[e.0] = true;
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.graph.vertices().filter(|&v| self.vmask[v.0])
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.graph.edges().filter(|&e| self.has_edge(e))
    }

    pub fn incident(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.graph
            .incident(v)
            .iter()
            .copied()
            .filter(|&e| self.has_edge(e))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v)
            .map(|e| if self.graph.is_loop(e) { 2 } else { 1 })
            .sum()
    }

    /// Removes `Nbhd(e)`: both endpoints and, implicitly, every edge at them.
    pub fn remove_neighbourhood(&mut self, e: EdgeId) {
        let (a, b) = self.graph.endpoints(e);
        self.vmask[a.0] = false;
        self.vmask[b.0] = false;
        self.emask[e.0] = false;
    }

    /// Component label per host vertex (`usize::MAX` for inactive vertices),
    /// labels numbered in order of smallest member.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.graph.vertex_count()];
        let mut next = 0;
        for s in self.vertices().collect::<Vec<_>>() {
            if label[s.0] != usize::MAX {
                continue;
            }
            label[s.0] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for e in self.incident(v).collect::<Vec<_>>() {
                    let w = self.graph.other_end(e, v);
                    if label[w.0] == usize::MAX {
                        label[w.0] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.component_labels()
            .into_iter()
            .filter(|&l| l != usize::MAX)
            .max()
            .map_or(0, |m| m + 1)
    }

    /// Active edges that are bridges. Loops and parallel edges are never bridges.
    pub fn bridges(&self) -> BTreeSet<EdgeId> {
        let n = self.graph.vertex_count();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut out = BTreeSet::new();
        let mut time = 0;
        for root in self.vertices().collect::<Vec<_>>() {
            if disc[root.0] != usize::MAX {
                continue;
            }
            // iterative DFS: (vertex, edge used to enter, next incident index)
            let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
            disc[root.0] = time;
            low[root.0] = time;
            time += 1;
            while let Some(&mut (v, parent_edge, ref mut idx)) = stack.last_mut() {
                let inc = self.graph.incident(v);
                if *idx < inc.len() {
                    let e = inc[*idx];
                    *idx += 1;
                    if !self.has_edge(e) || Some(e) == parent_edge {
                        continue;
                    }
                    let w = self.graph.other_end(e, v);
                    if disc[w.0] == usize::MAX {
                        disc[w.0] = time;
                        low[w.0] = time;
                        time += 1;
                        stack.push((w, Some(e), 0));
                    } else {
                        low[v.0] = low[v.0].min(disc[w.0]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p.0] = low[p.0].min(low[v.0]);
                        if low[v.0] > disc[p.0] {
                            out.insert(parent_edge.expect("non-root has a parent edge"));
                        }
                    }
                }
            }
        }
        out
    }

    /// Shortest path (as vertex list) between two active vertices, ties broken
    /// towards smaller vertex ids.
    pub fn shortest_path(&self, from: VertexId, to: VertexId) -> Option<Vec<VertexId>> {
        let mut parent: Vec<Option<VertexId>> = vec![None; self.graph.vertex_count()];
        let mut seen = vec![false; self.graph.vertex_count()];
        seen[from.0] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut path = vec![to];
                let mut cur = to;
                while let Some(p) = parent[cur.0] {
                    path.push(p);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            let mut next: Vec<VertexId> = self
                .incident(v)
                .map(|e| self.graph.other_end(e, v))
                .collect();
            next.sort();
            for w in next {
                if !seen[w.0] {
                    seen[w.0] = true;
                    parent[w.0] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        None
    }
}
