//! Explicit 1-skeleton of a discrete configuration space together with a
//! spanning-tree labelling that rewrites edge paths as words.

use std::collections::HashMap;

use crate::graph::{EdgeId, Graph, VertexId};
use crate::group::Word;
use crate::planner::{normalise, Motion, VertexConfig};

/// An edge path of the 1-skeleton: each step moves the robot sitting at one
/// end of a graph edge to the other end (`+1`: first endpoint to second).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Route {
    pub start: VertexConfig,
    pub steps: Vec<(EdgeId, i8)>,
}

impl Route {
    pub fn stay(start: VertexConfig) -> Self {
        Self {
            start,
            steps: Vec::new(),
        }
    }

    pub fn apply(graph: &Graph, config: &mut VertexConfig, (e, d): (EdgeId, i8)) {
        let (a, b) = graph.endpoints(e);
        let (src, dst) = if d > 0 { (a, b) } else { (b, a) };
        let i = config
            .iter()
            .position(|&v| v == src)
            .expect("a robot sits at the source");
        config[i] = dst;
        config.sort();
    }

    pub fn end(&self, graph: &Graph) -> VertexConfig {
        let mut c = self.start.clone();
        for &s in &self.steps {
            Self::apply(graph, &mut c, s);
        }
        c
    }

    /// Concatenation with immediate backtracks cancelled.
    pub fn then(&self, other: &Route) -> Route {
        let mut steps = self.steps.clone();
        for &(e, d) in &other.steps {
            if steps.last() == Some(&(e, -d)) {
                steps.pop();
            } else {
                steps.push((e, d));
            }
        }
        Route {
            start: self.start.clone(),
            steps,
        }
    }

    pub fn inverse(&self, graph: &Graph) -> Route {
        Route {
            start: self.end(graph),
            steps: self.steps.iter().rev().map(|&(e, d)| (e, -d)).collect(),
        }
    }

    pub fn parked(&self, v: VertexId) -> Route {
        let mut start = self.start.clone();
        start.push(v);
        Route {
            start: normalise(&start),
            steps: self.steps.clone(),
        }
    }

    pub fn frames(&self, graph: &Graph) -> Vec<VertexConfig> {
        let mut c = self.start.clone();
        let mut out = vec![c.clone()];
        for &s in &self.steps {
            Self::apply(graph, &mut c, s);
            out.push(c.clone());
        }
        out
    }

    pub fn to_motion(&self, graph: &Graph) -> Motion {
        Motion::from_frames(self.frames(graph))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OneCell {
    /// 0-cell with the moving robot at the edge's first endpoint.
    pub from: usize,
    pub to: usize,
    pub edge: EdgeId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceGenerator {
    pub component: usize,
    /// Loop at the component's base.
    pub witness: Route,
}

/// The configuration space of `robots` robots on a subgraph, with one
/// presentation per connected component.
///
/// Every 1-cell off the spanning forest carries a word; the loop "tree path to
/// one end, the cell, tree path back" represents that word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    pub robots: usize,
    pub configs: Vec<VertexConfig>,
    pub index: HashMap<VertexConfig, usize>,
    pub cells: Vec<OneCell>,
    at: HashMap<(usize, EdgeId), usize>,
    pub component: Vec<usize>,
    pub bases: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    pub labels: Vec<Option<Word>>,
    pub generators: Vec<SpaceGenerator>,
    pub relators: Vec<(usize, Word)>,
}

impl Space {
    pub(crate) fn from_parts(
        robots: usize,
        configs: Vec<VertexConfig>,
        cells: Vec<OneCell>,
    ) -> Self {
        debug_assert!(configs.windows(2).all(|w| w[0] < w[1]));
        let index = configs
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        let mut at = HashMap::new();
        for (i, c) in cells.iter().enumerate() {
            at.insert((c.from, c.edge), i);
            at.insert((c.to, c.edge), i);
        }
        let n = configs.len();
        Self {
            robots,
            configs,
            index,
            labels: vec![None; cells.len()],
            cells,
            at,
            component: vec![0; n],
            bases: Vec::new(),
            parent: vec![None; n],
            generators: Vec::new(),
            relators: Vec::new(),
        }
    }

    /// No robots: a single point.
    pub fn point() -> Self {
        let mut s = Self::from_parts(0, vec![Vec::new()], Vec::new());
        s.bases = vec![0];
        s
    }

    /// No configuration fits.
    pub fn empty(robots: usize) -> Self {
        Self::from_parts(robots, Vec::new(), Vec::new())
    }

    pub fn component_count(&self) -> usize {
        self.bases.len()
    }

    pub fn cell_at(&self, config: usize, edge: EdgeId) -> Option<usize> {
        self.at.get(&(config, edge)).copied()
    }

    pub fn base_config(&self, component: usize) -> &VertexConfig {
        &self.configs[self.bases[component]]
    }

    /// Word read along a route.
    pub fn word(&self, route: &Route) -> Word {
        let mut cur = self.index[&route.start];
        let mut letters: Vec<Word> = Vec::new();
        for &(e, d) in &route.steps {
            let c = self.at[&(cur, e)];
            let cell = self.cells[c];
            let forward = if cell.from == cell.to {
                d > 0
            } else {
                debug_assert_eq!(
                    cur,
                    if d > 0 { cell.from } else { cell.to },
                    "route step against the cell"
                );
                cur == cell.from
            };
            if let Some(w) = &self.labels[c] {
                letters.push(if forward { w.clone() } else { w.inverse() });
            }
            cur = if forward { cell.to } else { cell.from };
        }
        Word::product(letters.iter())
    }

    /// Spanning-tree route from the component base to `x`.
    pub fn tree_route(&self, x: usize) -> Route {
        let mut rev = Vec::new();
        let mut cur = x;
        while let Some(c) = self.parent[cur] {
            let cell = self.cells[c];
            // step from the parent towards `cur`
            if cell.to == cur {
                rev.push((cell.edge, 1));
                cur = cell.from;
            } else {
                rev.push((cell.edge, -1));
                cur = cell.to;
            }
        }
        rev.reverse();
        Route {
            start: self.configs[cur].clone(),
            steps: rev,
        }
    }

    /// Recomputes `component`, `bases` and `parent` from a set of tree cells;
    /// bases are the smallest 0-cell of each class.
    pub(crate) fn root_forest(&mut self, tree: &[bool]) {
        let n = self.configs.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (c, cell) in self.cells.iter().enumerate() {
            if tree[c] {
                adj[cell.from].push(c);
                adj[cell.to].push(c);
            }
        }
        let mut comp = vec![usize::MAX; n];
        let mut parent = vec![None; n];
        let mut bases = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = bases.len();
            bases.push(s);
            comp[s] = id;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &c in &adj[x] {
                    let cell = self.cells[c];
                    let y = if cell.from == x { cell.to } else { cell.from };
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        parent[y] = Some(c);
                        stack.push(y);
                    }
                }
            }
        }
        self.component = comp;
        self.parent = parent;
        self.bases = bases;
    }

    pub(crate) fn tree_cells(&self) -> Vec<bool> {
        let mut tree = vec![false; self.cells.len()];
        for p in self.parent.iter().flatten() {
            tree[*p] = true;
        }
        tree
    }

    /// 1-skeleton breadth-first search between two 0-cells.
    pub fn bfs_route(&self, from: usize, to: usize) -> Option<Route> {
        let mut prev: Vec<Option<usize>> = vec![None; self.configs.len()];
        let mut seen = vec![false; self.configs.len()];
        seen[from] = true;
        let mut queue = std::collections::VecDeque::from([from]);
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.configs.len()];
        for (c, cell) in self.cells.iter().enumerate() {
            adj[cell.from].push(c);
            adj[cell.to].push(c);
        }
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for &c in &adj[x] {
                let cell = self.cells[c];
                let y = if cell.from == x { cell.to } else { cell.from };
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = Some(c);
                    queue.push_back(y);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut rev = Vec::new();
        let mut cur = to;
        while cur != from {
            let c = prev[cur].expect("reached");
            let cell = self.cells[c];
            if cell.to == cur {
                rev.push((cell.edge, 1));
                cur = cell.from;
            } else {
                rev.push((cell.edge, -1));
                cur = cell.to;
            }
        }
        rev.reverse();
        Some(Route {
            start: self.configs[from].clone(),
            steps: rev,
        })
    }
}
