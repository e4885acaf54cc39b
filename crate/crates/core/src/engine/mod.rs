//! Presentations of `B(G, n)` built edge by edge.
//!
//! Each new edge `e` glues `UD(H - Nbhd(e), n-1) × ē` onto `UD(H - e, n)`.
//! Adding a hanging edge at a vertex of degree at least two, stretching a
//! hanging edge and closing a cycle are all instances of that gluing; the
//! spaces it needs are solved recursively and memoised by exact cell subset.

mod glue;
mod space;

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use self::glue::{adjoin, generic_plans, glue, CylinderPlan};
pub use self::space::{OneCell, Route, Space, SpaceGenerator};
use crate::error::Error;
use crate::graph::{
    build_order, build_order_from_light, light_decompose, BuildOrder, EdgeId, Graph, LightOutcome,
    StepKind, VertexId, View, DEFAULT_CYCLE_LIMIT,
};
use crate::group::{tietze_simplify, Generator, Presentation, Word};
use crate::planner::{normalise, plan, Motion, VertexConfig};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Key {
    vertices: FixedBitSet,
    edges: FixedBitSet,
    robots: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub kind: StepKind,
    pub edge: EdgeId,
    pub attach: VertexId,
    pub new_vertex: Option<VertexId>,
    /// Generators introduced by the step, with their witnesses.
    pub generators: Vec<(String, Motion)>,
    pub relators: Vec<String>,
    /// Components of the configuration space after the step.
    pub components: usize,
    /// Cycle used to put the new relators in commutator form, if any.
    pub light_cycle: Option<Vec<EdgeId>>,
    pub commutator_form: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineTrace {
    pub start_path: Vec<VertexId>,
    pub steps: Vec<TraceStep>,
}

impl EngineTrace {
    /// One JSON object per line.
    pub fn to_json_lines(&self, graph: &Graph) -> String {
        let names = |c: &VertexConfig| {
            c.iter()
                .map(|&v| graph.name(v).to_string())
                .collect::<Vec<_>>()
        };
        let mut out = serde_json::json!({
            "schema": "graphbraid.trace/1",
            "start_path": names(&self.start_path),
        })
        .to_string();
        out.push('\n');
        for s in &self.steps {
            let (a, b) = graph.endpoints(s.edge);
            let line = serde_json::json!({
                "kind": s.kind,
                "edge": [graph.name(a), graph.name(b)],
                "attach": graph.name(s.attach),
                "generators": s.generators.iter().map(|(n, m)| serde_json::json!({
                    "name": n,
                    "frames": m.frames.iter().map(names).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "relators": s.relators,
                "components": s.components,
                "commutator_form": s.commutator_form,
            });
            out.push_str(&line.to_string());
            out.push('\n');
        }
        out
    }
}

/// The configuration space of the graph grown so far, with top-level
/// generator names.
#[derive(Clone, Debug)]
pub struct EngineState {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
    pub robots: usize,
    pub space: Rc<Space>,
    pub names: Vec<String>,
    pub trace: EngineTrace,
}

impl EngineState {
    fn degree(&self, graph: &Graph, v: VertexId) -> usize {
        graph
            .incident(v)
            .iter()
            .filter(|e| self.edges.contains(e))
            .map(|&e| if graph.is_loop(e) { 2 } else { 1 })
            .sum()
    }

    fn view<'g>(&self, graph: &'g Graph) -> View<'g> {
        let mut view = graph.full_view();
        for v in graph.vertices().filter(|v| !self.vertices.contains(v)) {
            view.remove_vertex(v);
        }
        for e in graph.edges().filter(|e| !self.edges.contains(e)) {
            view.remove_edge(e);
        }
        view
    }

    fn is_connected(&self, graph: &Graph) -> bool {
        self.view(graph).component_count() <= 1
    }

    /// Presentation of one component, restricted to its own generators.
    pub fn presentation(&self, graph: &Graph, component: usize) -> Result<Presentation, Error> {
        if component >= self.space.component_count() {
            return Err(Error::UnknownComponent(component));
        }
        let mut renumber = HashMap::new();
        let mut generators = Vec::new();
        for (i, g) in self.space.generators.iter().enumerate() {
            if g.component == component {
                renumber.insert(i, generators.len());
                generators.push(Generator {
                    name: self.names[i].clone(),
                    witness: Some(g.witness.to_motion(graph)),
                });
            }
        }
        let relators = self
            .space
            .relators
            .iter()
            .filter(|(c, _)| *c == component)
            .map(|(_, r)| Word::new(r.letters.iter().map(|&(g, s)| (renumber[&g], s)).collect()))
            .collect();
        Ok(Presentation {
            generators,
            relators,
            base: Some(self.space.base_config(component).clone()),
        })
    }

    /// A motion between two 0-cells of one component: the planner on the
    /// current graph when it is connected, a 1-skeleton search otherwise.
    pub fn connect(
        &self,
        graph: &Graph,
        from: &[VertexId],
        to: &[VertexId],
    ) -> Result<Motion, Error> {
        let (f, t) = (normalise(from), normalise(to));
        let (Some(&i), Some(&j)) = (self.space.index.get(&f), self.space.index.get(&t)) else {
            return Err(Error::Precondition(
                "configuration is not a 0-cell of the space".into(),
            ));
        };
        if self.space.component[i] != self.space.component[j] {
            return Err(Error::Infeasible(
                "configurations lie in different components".into(),
            ));
        }
        if self.is_connected(graph) {
            let vs: Vec<VertexId> = self.vertices.iter().copied().collect();
            let es: Vec<EdgeId> = self.edges.iter().copied().collect();
            let (sub, vmap, _) = graph.subgraph(&vs, &es);
            let local = |c: &[VertexId]| -> Vec<VertexId> {
                c.iter()
                    .map(|v| {
                        VertexId(
                            vmap.iter()
                                .position(|w| w == v)
                                .expect("vertex of the subgraph"),
                        )
                    })
                    .collect()
            };
            let (m, _) = plan(&sub, &local(&f), &local(&t))?;
            return Ok(Motion::from_frames(
                m.frames
                    .iter()
                    .map(|fr| fr.iter().map(|v| vmap[v.0]).collect())
                    .collect(),
            ));
        }
        connect(graph, &self.space, &f, &t)
    }
}

/// A motion along 1-cells of `space` found by breadth-first search.
pub fn connect(
    graph: &Graph,
    space: &Space,
    from: &[VertexId],
    to: &[VertexId],
) -> Result<Motion, Error> {
    let (f, t) = (normalise(from), normalise(to));
    let (Some(&i), Some(&j)) = (space.index.get(&f), space.index.get(&t)) else {
        return Err(Error::Precondition(
            "configuration is not a 0-cell of the space".into(),
        ));
    };
    space
        .bfs_route(i, j)
        .map(|r| r.to_motion(graph))
        .ok_or_else(|| Error::Infeasible("configurations lie in different components".into()))
}

pub struct Engine<'g> {
    graph: &'g Graph,
    rank: Vec<usize>,
    memo: Option<HashMap<Key, Rc<Space>>>,
    pub subproblems: usize,
    pub memo_hits: usize,
}

impl<'g> Engine<'g> {
    /// `order` fixes which edge the recursion removes first (the latest one).
    pub fn new(graph: &'g Graph, order: &[EdgeId], memo: bool) -> Self {
        let mut rank = vec![usize::MAX; graph.edge_count()];
        for (i, e) in order.iter().enumerate() {
            rank[e.0] = i;
        }
        for (next, r) in (order.len()..).zip(rank.iter_mut().filter(|r| **r == usize::MAX)) {
            *r = next;
        }
        Self {
            graph,
            rank,
            memo: memo.then(HashMap::new),
            subproblems: 0,
            memo_hits: 0,
        }
    }

    pub fn for_order(graph: &'g Graph, order: &BuildOrder, memo: bool) -> Self {
        let edges: Vec<EdgeId> = order
            .start_edges
            .iter()
            .copied()
            .chain(order.steps.iter().map(|s| s.edge))
            .collect();
        Self::new(graph, &edges, memo)
    }

    fn bits(
        &self,
        vertices: &BTreeSet<VertexId>,
        edges: &BTreeSet<EdgeId>,
    ) -> (FixedBitSet, FixedBitSet) {
        let mut vb = FixedBitSet::with_capacity(self.graph.vertex_count());
        let mut eb = FixedBitSet::with_capacity(self.graph.edge_count());
        for v in vertices {
            vb.insert(v.0);
        }
        for e in edges {
            eb.insert(e.0);
        }
        (vb, eb)
    }

    /// `UD(K, k)` for the subgraph `K` given by cell subsets.
    pub fn solve(
        &mut self,
        vertices: &BTreeSet<VertexId>,
        edges: &BTreeSet<EdgeId>,
        k: usize,
    ) -> Rc<Space> {
        let (vb, eb) = self.bits(vertices, edges);
        self.solve_bits(vb, eb, k)
    }

    fn solve_bits(&mut self, vertices: FixedBitSet, edges: FixedBitSet, k: usize) -> Rc<Space> {
        let key = Key {
            vertices,
            edges,
            robots: k,
        };
        if let Some(s) = self.memo.as_ref().and_then(|m| m.get(&key)) {
            self.memo_hits += 1;
            return s.clone();
        }
        self.subproblems += 1;
        let g = self.graph;
        let Key {
            vertices,
            edges,
            robots: k,
        } = key.clone();
        let space = if k == 0 {
            Space::point()
        } else if vertices.count_ones(..) < k {
            Space::empty(k)
        } else {
            let mut touched = FixedBitSet::with_capacity(g.vertex_count());
            for e in edges.ones() {
                let (a, b) = g.endpoints(EdgeId(e));
                touched.insert(a.0);
                touched.insert(b.0);
            }
            match vertices.ones().filter(|&v| !touched.contains(v)).last() {
                Some(u) => {
                    let mut rest = vertices.clone();
                    rest.set(u, false);
                    let a = self.solve_bits(rest.clone(), edges.clone(), k);
                    let b = self.solve_bits(rest, edges.clone(), k - 1);
                    adjoin(&a, &b, VertexId(u))
                }
                None => {
                    let e = edges
                        .ones()
                        .max_by_key(|&e| self.rank[e])
                        .expect("vertices without isolated ones carry edges");
                    let e = EdgeId(e);
                    let (a, b) = g.endpoints(e);
                    let mut minus = edges.clone();
                    minus.set(e.0, false);
                    let x = self.solve_bits(vertices.clone(), minus.clone(), k);
                    let mut nv = vertices.clone();
                    nv.set(a.0, false);
                    nv.set(b.0, false);
                    let mut ne = minus;
                    for f in g.incident(a).iter().chain(g.incident(b)) {
                        ne.set(f.0, false);
                    }
                    let y = self.solve_bits(nv, ne, k - 1);
                    glue(g, &x, &y, e, &generic_plans(&y)).space
                }
            }
        };
        let space = Rc::new(space);
        if let Some(m) = self.memo.as_mut() {
            m.insert(key, space.clone());
        }
        space
    }

    /// `UD(P, n)` for a path on `n` vertices: a single point.
    pub fn base_case(&mut self, path: &[VertexId]) -> Result<EngineState, Error> {
        let g = self.graph;
        let n = path.len();
        if n == 0 {
            return Err(Error::Precondition(
                "the start path needs at least one vertex".into(),
            ));
        }
        let vertices: BTreeSet<VertexId> = path.iter().copied().collect();
        if vertices.len() != n {
            return Err(Error::Precondition(
                "the start path repeats a vertex".into(),
            ));
        }
        let mut edges = BTreeSet::new();
        for w in path.windows(2) {
            let e = g.edge_between(w[0], w[1]).ok_or_else(|| {
                Error::Precondition(format!("no edge between {} and {}", w[0], w[1]))
            })?;
            edges.insert(e);
        }
        let mut space = Space::from_parts(n, vec![normalise(path)], Vec::new());
        space.root_forest(&[]);
        Ok(EngineState {
            vertices,
            edges,
            robots: n,
            space: Rc::new(space),
            names: Vec::new(),
            trace: EngineTrace {
                start_path: path.to_vec(),
                steps: Vec::new(),
            },
        })
    }

    /// The base case for a build order, using its own start edges (which
    /// matters when the start path runs along a multiple edge).
    pub fn start(&mut self, order: &BuildOrder) -> Result<EngineState, Error> {
        let mut state = self.base_case(&order.start_path)?;
        let fits = order.start_edges.len() + 1 == order.start_path.len()
            && order
                .start_edges
                .iter()
                .zip(order.start_path.windows(2))
                .all(|(&e, w)| {
                    let (a, b) = self.graph.endpoints(e);
                    (a, b) == (w[0], w[1]) || (b, a) == (w[0], w[1])
                });
        if !fits {
            return Err(Error::Precondition(
                "start edges do not run along the start path".into(),
            ));
        }
        state.edges = order.start_edges.iter().copied().collect();
        Ok(state)
    }

    fn attach_point(&self, state: &EngineState, e: EdgeId) -> Result<(VertexId, VertexId), Error> {
        let g = self.graph;
        if state.edges.contains(&e) {
            return Err(Error::Precondition(format!("edge {e} is already present")));
        }
        let (a, b) = g.endpoints(e);
        match (state.vertices.contains(&a), state.vertices.contains(&b)) {
            (true, false) => Ok((a, b)),
            (false, true) => Ok((b, a)),
            _ => Err(Error::Precondition(format!(
                "edge {e} must join the current graph to a new vertex"
            ))),
        }
    }

    fn require_tree(&self, state: &EngineState) -> Result<(), Error> {
        if state.edges.len() + 1 != state.vertices.len() || !state.is_connected(self.graph) {
            return Err(Error::Precondition(
                "hanging edges are added to a tree".into(),
            ));
        }
        Ok(())
    }

    /// A new leaf edge at a vertex of degree at least two.
    pub fn add_hanging_edge(
        &mut self,
        state: &EngineState,
        e: EdgeId,
    ) -> Result<EngineState, Error> {
        let (v, _) = self.attach_point(state, e)?;
        self.require_tree(state)?;
        if state.degree(self.graph, v) < 2 {
            return Err(Error::Precondition(format!(
                "{v} has degree below 2; stretch instead"
            )));
        }
        Ok(self.extend(state, e, StepKind::AddHanging, None))
    }

    /// A new leaf edge at a current leaf.
    pub fn stretch_hanging_edge(
        &mut self,
        state: &EngineState,
        e: EdgeId,
    ) -> Result<EngineState, Error> {
        let (v, _) = self.attach_point(state, e)?;
        self.require_tree(state)?;
        if state.degree(self.graph, v) >= 2 {
            return Err(Error::Precondition(format!("{v} is not a leaf")));
        }
        Ok(self.extend(state, e, StepKind::StretchHanging, None))
    }

    /// An edge between two present vertices. When `cycle` (starting with
    /// `e`, then walking from its second endpoint back to its first) is given
    /// and there are two robots, new relators are produced as commutators
    /// wherever the cycle allows it.
    pub fn add_cycle_edge(
        &mut self,
        state: &EngineState,
        e: EdgeId,
        cycle: Option<&[EdgeId]>,
    ) -> Result<EngineState, Error> {
        let g = self.graph;
        let (a, b) = g.endpoints(e);
        if state.edges.contains(&e) || !state.vertices.contains(&a) || !state.vertices.contains(&b)
        {
            return Err(Error::Precondition(format!(
                "edge {e} must join two present vertices"
            )));
        }
        if !state.is_connected(g) {
            return Err(Error::Precondition(
                "the current graph must be connected".into(),
            ));
        }
        if let Some(c) = cycle {
            let mut cur = b;
            let ok = c.first() == Some(&e)
                && c[1..].iter().all(|f| {
                    let (x, y) = g.endpoints(*f);
                    let next = if x == cur {
                        Some(y)
                    } else if y == cur {
                        Some(x)
                    } else {
                        None
                    };
                    match next {
                        Some(nx) if state.edges.contains(f) => {
                            cur = nx;
                            true
                        }
                        _ => false,
                    }
                })
                && cur == a;
            if !ok {
                return Err(Error::Precondition(
                    "the cycle does not close up through the new edge".into(),
                ));
            }
        }
        Ok(self.extend(state, e, StepKind::AddCycle, cycle))
    }

    fn extend(
        &mut self,
        state: &EngineState,
        e: EdgeId,
        kind: StepKind,
        cycle: Option<&[EdgeId]>,
    ) -> EngineState {
        let g = self.graph;
        let n = state.robots;
        let (a, b) = g.endpoints(e);
        let new_vertex = [a, b].into_iter().find(|v| !state.vertices.contains(v));
        let attach = if new_vertex == Some(a) { b } else { a };
        let x = match new_vertex {
            Some(u) => Rc::new(adjoin(
                &state.space,
                &self.solve(&state.vertices, &state.edges, n - 1),
                u,
            )),
            None => state.space.clone(),
        };
        let mut vertices = state.vertices.clone();
        vertices.extend(new_vertex);
        let mut edges = state.edges.clone();
        edges.insert(e);

        let mut rest_v = vertices.clone();
        rest_v.remove(&a);
        rest_v.remove(&b);
        let rest_e: BTreeSet<EdgeId> = edges
            .iter()
            .copied()
            .filter(|&f| {
                let (p, q) = g.endpoints(f);
                rest_v.contains(&p) && rest_v.contains(&q)
            })
            .collect();
        let y = self.solve(&rest_v, &rest_e, n - 1);
        let mut plans = generic_plans(&y);
        let mut used_cycle = None;
        if let (Some(c), 2) = (cycle, n) {
            if light_plan(g, &x, &y, e, c, &rest_e, &mut plans) {
                used_cycle = Some(c.to_vec());
            }
        }
        let out = glue(g, &x, &y, e, &plans);
        let space = out.space;

        let mut names = state.names.clone();
        while names.len() < space.generators.len() {
            names.push(format!("g{}", names.len() + 1));
        }
        let generators = out
            .new_generators
            .iter()
            .map(|&i| (names[i].clone(), space.generators[i].witness.to_motion(g)))
            .collect();
        let relators = out
            .new_relators
            .iter()
            .map(|&i| space.relators[i].1.display(&names).to_string())
            .collect();
        let mut trace = state.trace.clone();
        trace.steps.push(TraceStep {
            kind,
            edge: e,
            attach,
            new_vertex,
            generators,
            relators,
            components: space.component_count(),
            commutator_form: out.commutator_form,
            light_cycle: used_cycle,
        });
        EngineState {
            vertices,
            edges,
            robots: n,
            space: Rc::new(space),
            names,
            trace,
        }
    }
}

/// Replaces the plan of the component carrying cycles by one anchored off
/// the cycle `c`, so that relators become commutators with the new letter.
/// Returns false (leaving `plans` alone) when the cycles of `y` cannot all be
/// reached from such an anchor without crossing `c`.
fn light_plan(
    graph: &Graph,
    x: &Space,
    y: &Space,
    e: EdgeId,
    cycle: &[EdgeId],
    rest_edges: &BTreeSet<EdgeId>,
    plans: &mut [CylinderPlan],
) -> bool {
    let (a, b) = graph.endpoints(e);
    let on_cycle: BTreeSet<VertexId> = cycle
        .iter()
        .flat_map(|&f| {
            let (p, q) = graph.endpoints(f);
            [p, q]
        })
        .collect();
    let carrying: Vec<usize> = (0..y.component_count())
        .filter(|&j| y.generators.iter().any(|g| g.component == j))
        .collect();
    let [j] = carrying.as_slice() else {
        return carrying.is_empty();
    };
    let j = *j;
    let members: BTreeSet<VertexId> = y
        .configs
        .iter()
        .enumerate()
        .filter(|(i, _)| y.component[*i] == j)
        .map(|(_, c)| c[0])
        .collect();
    let comp_edges: Vec<EdgeId> = rest_edges
        .iter()
        .copied()
        .filter(|&f| members.contains(&graph.endpoints(f).0))
        .collect();

    let mut view = graph.full_view();
    for v in graph.vertices().filter(|v| !members.contains(v)) {
        view.remove_vertex(v);
    }
    for f in graph.edges().filter(|f| !comp_edges.contains(f)) {
        view.remove_edge(f);
    }
    let bridges = view.bridges();
    let cyclic: BTreeSet<VertexId> = comp_edges
        .iter()
        .filter(|f| !bridges.contains(f))
        .flat_map(|&f| {
            let (p, q) = graph.endpoints(f);
            [p, q]
        })
        .collect();
    if !cyclic.is_disjoint(&on_cycle) {
        return false;
    }
    let mut off = view.clone();
    for v in &on_cycle {
        if members.contains(v) {
            off.remove_vertex(*v);
        }
    }
    let labels = off.component_labels();
    let Some(first) = cyclic.iter().next() else {
        return false;
    };
    if cyclic.iter().any(|v| labels[v.0] != labels[first.0]) {
        return false;
    }
    let q = *members
        .iter()
        .find(|v| !on_cycle.contains(v) && labels[v.0] == labels[first.0])
        .expect("first qualifies");

    // breadth-first tree from q, exhausting the part off the cycle first
    let mut parent: HashMap<VertexId, (EdgeId, VertexId)> = HashMap::new();
    let mut early: BTreeSet<VertexId> = BTreeSet::from([q]);
    let mut order = vec![q];
    for phase in 0..2 {
        let mut queue: std::collections::VecDeque<VertexId> = order.iter().copied().collect();
        while let Some(v) = queue.pop_front() {
            for f in view.incident(v).collect::<Vec<_>>() {
                let w = graph.other_end(f, v);
                if w == q || parent.contains_key(&w) || (phase == 0 && on_cycle.contains(&w)) {
                    continue;
                }
                parent.insert(w, (f, v));
                if phase == 0 {
                    early.insert(w);
                }
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    let route_to = |v: VertexId| -> Route {
        let mut steps = Vec::new();
        let mut cur = v;
        while let Some(&(f, p)) = parent.get(&cur) {
            let (s, _) = graph.endpoints(f);
            steps.push((f, if s == p { 1 } else { -1 }));
            cur = p;
        }
        steps.reverse();
        Route {
            start: vec![q],
            steps,
        }
    };
    let tree_edges: BTreeSet<EdgeId> = parent.values().map(|&(f, _)| f).collect();
    let mut paths = HashMap::new();
    for &v in &members {
        paths.insert(y.index[&vec![v]], route_to(v));
    }
    let mut loops = Vec::new();
    for &f in &comp_edges {
        if tree_edges.contains(&f) {
            continue;
        }
        let (p, r) = graph.endpoints(f);
        let lp = route_to(p)
            .then(&Route {
                start: vec![p],
                steps: vec![(f, 1)],
            })
            .then(&route_to(r).inverse(graph));
        loops.push((lp, early.contains(&p) && early.contains(&r)));
    }

    // the parked robot at q stays put while the other one runs round the cycle
    let mut steps = Vec::new();
    let mut cur = b;
    for &f in &cycle[1..] {
        let (s, t) = graph.endpoints(f);
        steps.push((f, if s == cur { 1 } else { -1 }));
        cur = if s == cur { t } else { s };
    }
    let sweep = Route {
        start: normalise(&[q, b]),
        steps,
    };
    debug_assert_eq!(sweep.end(graph), normalise(&[q, a]));
    debug_assert!(x.index.contains_key(&sweep.start));
    plans[j] = CylinderPlan {
        anchor: y.index[&vec![q]],
        paths,
        loops,
        sweep: Some(sweep),
    };
    true
}

/// Options for [`present_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PresentOptions {
    pub simplify: bool,
    pub memo: bool,
    /// Use a light decomposition, when one exists, to order cycle edges and
    /// produce commutator relators (two robots only).
    pub light: bool,
}

impl Default for PresentOptions {
    fn default() -> Self {
        Self {
            simplify: false,
            memo: true,
            light: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Presented {
    /// Simplified when requested, raw otherwise.
    pub presentation: Presentation,
    pub raw: Presentation,
    /// Old generator ↦ word in the simplified generators.
    pub dictionary: Option<Vec<Word>>,
    pub trace: EngineTrace,
    pub state: EngineState,
    pub order: BuildOrder,
}

/// Presentation of `B(G, n)` at the smallest configuration.
pub fn present(
    graph: &Graph,
    n: usize,
    simplify: bool,
) -> Result<(Presentation, EngineTrace), Error> {
    let p = present_with(
        graph,
        n,
        PresentOptions {
            simplify,
            ..PresentOptions::default()
        },
    )?;
    Ok((p.presentation, p.trace))
}

pub fn present_with(graph: &Graph, n: usize, opts: PresentOptions) -> Result<Presented, Error> {
    if n > graph.vertex_count() {
        return Err(Error::Infeasible(format!(
            "{n} robots do not fit on {} vertices",
            graph.vertex_count()
        )));
    }
    let mut cycles: HashMap<EdgeId, Vec<EdgeId>> = HashMap::new();
    let mut order = None;
    if opts.light && n == 2 && graph.is_connected() && graph.first_betti() > 0 {
        if let LightOutcome::Light(d) = light_decompose(graph, DEFAULT_CYCLE_LIMIT)? {
            order = Some(build_order_from_light(graph, n, &d)?);
            cycles = d.removed.into_iter().collect();
        }
    }
    let order = match order {
        Some(o) => o,
        None => build_order(graph, n)?,
    };
    let mut engine = Engine::for_order(graph, &order, opts.memo);
    let mut state = engine.start(&order)?;
    for step in &order.steps {
        state = match step.kind {
            StepKind::AddHanging => engine.add_hanging_edge(&state, step.edge)?,
            StepKind::StretchHanging => engine.stretch_hanging_edge(&state, step.edge)?,
            StepKind::AddCycle => engine.add_cycle_edge(
                &state,
                step.edge,
                cycles.get(&step.edge).map(Vec::as_slice),
            )?,
        };
    }
    let raw = state.presentation(graph, 0)?;
    let (presentation, dictionary) = if opts.simplify {
        let (p, d) = tietze_simplify(&raw);
        (p, Some(d))
    } else {
        (raw.clone(), None)
    };
    Ok(Presented {
        presentation,
        raw,
        dictionary,
        trace: state.trace.clone(),
        state,
        order,
    })
}
