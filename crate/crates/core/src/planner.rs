//! Collision-free motion of unlabelled robots on a graph.
//!
//! The planner repeatedly picks an extreme mark among the start and goal
//! positions, walks the nearest robot onto it (or, if the mark is a start
//! position, schedules the mirrored walk at the end of the motion) and then
//! deletes that vertex.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{Graph, VertexId, View};

/// A configuration of unlabelled robots: sorted, distinct vertex ids.
pub type VertexConfig = Vec<VertexId>;

pub fn normalise(config: &[VertexId]) -> VertexConfig {
    let mut c = config.to_vec();
    c.sort();
    c
}

/// A discrete trajectory of unlabelled robots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Motion {
    pub frames: Vec<VertexConfig>,
}

impl Motion {
    pub fn constant(config: &[VertexId]) -> Self {
        Self {
            frames: vec![normalise(config)],
        }
    }

    pub fn from_frames(frames: Vec<VertexConfig>) -> Self {
        assert!(!frames.is_empty(), "a motion has at least one frame");
        Self {
            frames: frames.into_iter().map(|f| normalise(&f)).collect(),
        }
    }

    pub fn start(&self) -> &VertexConfig {
        &self.frames[0]
    }

    pub fn end(&self) -> &VertexConfig {
        self.frames.last().expect("non-empty")
    }

    pub fn moves(&self) -> usize {
        self.frames.len() - 1
    }

    pub fn is_loop(&self) -> bool {
        self.start() == self.end()
    }

    pub fn reversed(&self) -> Self {
        let mut frames = self.frames.clone();
        frames.reverse();
        Self { frames }
    }

    /// Concatenation; `other` must start where `self` ends.
    pub fn then(&self, other: &Motion) -> Self {
        assert_eq!(self.end(), other.start(), "motions do not meet");
        let mut frames = self.frames.clone();
        frames.extend(other.frames[1..].iter().cloned());
        Self { frames }
    }

    /// The same motion with one more robot parked at `v`.
    pub fn with_parked(&self, v: VertexId) -> Self {
        Self {
            frames: self
                .frames
                .iter()
                .map(|f| {
                    let mut g = f.clone();
                    g.push(v);
                    g.sort();
                    g
                })
                .collect(),
        }
    }

    /// The moving robot of each step: `(from, to)`.
    pub fn steps(&self) -> Vec<(VertexId, VertexId)> {
        self.frames
            .windows(2)
            .map(|w| {
                let from = w[0].iter().find(|v| !w[1].contains(v)).copied();
                let to = w[1].iter().find(|v| !w[0].contains(v)).copied();
                (
                    from.unwrap_or(VertexId(usize::MAX)),
                    to.unwrap_or(VertexId(usize::MAX)),
                )
            })
            .collect()
    }

    /// Checks every frame and every step against `graph`.
    pub fn validate(&self, graph: &Graph) -> Result<(), Error> {
        let n = self.frames[0].len();
        for (i, f) in self.frames.iter().enumerate() {
            if f.len() != n {
                return Err(Error::InvalidMotion(format!(
                    "frame {i} has {} robots, expected {n}",
                    f.len()
                )));
            }
            if f.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidMotion(format!(
                    "frame {i} is not a set of distinct vertices"
                )));
            }
            if let Some(v) = f.iter().find(|v| !graph.has_vertex(**v)) {
                return Err(Error::InvalidMotion(format!(
                    "frame {i} uses unknown vertex {v}"
                )));
            }
        }
        for (i, w) in self.frames.windows(2).enumerate() {
            let gone: Vec<_> = w[0].iter().filter(|v| !w[1].contains(v)).collect();
            let came: Vec<_> = w[1].iter().filter(|v| !w[0].contains(v)).collect();
            // a repeated frame stands for a traversal of a loop edge
            if gone.is_empty()
                && w[0]
                    .iter()
                    .any(|&v| graph.incident(v).iter().any(|&e| graph.is_loop(e)))
            {
                continue;
            }
            if gone.len() != 1 || came.len() != 1 {
                return Err(Error::InvalidMotion(format!(
                    "step {i} does not move exactly one robot"
                )));
            }
            let (a, b) = (*gone[0], *came[0]);
            if graph.edge_between(a, b).is_none() {
                return Err(Error::InvalidMotion(format!(
                    "step {i}: no edge between {a} and {b}"
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self, graph: &Graph, graph_name: &str) -> serde_json::Value {
        let frames: Vec<Vec<&str>> = self
            .frames
            .iter()
            .map(|f| f.iter().map(|&v| graph.name(v)).collect())
            .collect();
        serde_json::json!({ "schema": "graphbraid.motion/1", "graph": graph_name, "frames": frames })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanStats {
    pub moves: usize,
    pub elementary_ops: u64,
}

fn check_marks(graph: &Graph, marked: &[VertexId]) -> Result<(), Error> {
    match marked.iter().find(|v| !graph.has_vertex(**v)) {
        Some(v) => Err(Error::UnknownVertex(v.to_string())),
        None => Ok(()),
    }
}

/// Marked vertices `x` such that all other marks lie in one component of
/// `G - x`.
pub fn extreme_points(graph: &Graph, marked: &[VertexId]) -> Result<Vec<VertexId>, Error> {
    check_marks(graph, marked)?;
    let marks = normalise(marked);
    let mut ops = 0;
    Ok(extremes_in(&graph.full_view(), &marks, &mut ops, false))
}

fn extremes_in(
    view: &View<'_>,
    marks: &[VertexId],
    ops: &mut u64,
    first_only: bool,
) -> Vec<VertexId> {
    let mut out = Vec::new();
    for &x in marks {
        let others: Vec<VertexId> = marks.iter().copied().filter(|&m| m != x).collect();
        if others.is_empty() || others_connected(view, x, &others, ops) {
            out.push(x);
            if first_only {
                break;
            }
        }
    }
    out.dedup();
    out
}

fn others_connected(view: &View<'_>, x: VertexId, others: &[VertexId], ops: &mut u64) -> bool {
    let g = view.graph;
    let mut seen = vec![false; g.vertex_count()];
    seen[x.0] = true;
    seen[others[0].0] = true;
    let mut queue = VecDeque::from([others[0]]);
    while let Some(v) = queue.pop_front() {
        for e in view.incident(v) {
            *ops += 1;
            let w = g.other_end(e, v);
            if !seen[w.0] {
                seen[w.0] = true;
                queue.push_back(w);
            }
        }
    }
    others.iter().all(|o| seen[o.0])
}

/// Shortest path from `x` to the closest other marked vertex.
pub fn neighbour_path(
    graph: &Graph,
    marked: &[VertexId],
    x: VertexId,
) -> Result<Vec<VertexId>, Error> {
    check_marks(graph, marked)?;
    let others: Vec<VertexId> = marked.iter().copied().filter(|&m| m != x).collect();
    if others.is_empty() {
        return Err(Error::Precondition(
            "a neighbour needs at least two marked vertices".into(),
        ));
    }
    let mut ops = 0;
    nearest_in(&graph.full_view(), x, &others, &mut ops)
        .ok_or_else(|| Error::Infeasible("no other marked vertex is reachable".into()))
}

/// BFS from `x` (smallest ids first) to the closest vertex of `targets`.
fn nearest_in(
    view: &View<'_>,
    x: VertexId,
    targets: &[VertexId],
    ops: &mut u64,
) -> Option<Vec<VertexId>> {
    let g = view.graph;
    let mut is_target = vec![false; g.vertex_count()];
    for t in targets {
        is_target[t.0] = true;
    }
    let mut parent: Vec<Option<VertexId>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[x.0] = true;
    let mut queue = VecDeque::from([x]);
    while let Some(v) = queue.pop_front() {
        let mut next: Vec<VertexId> = view.incident(v).map(|e| g.other_end(e, v)).collect();
        *ops += next.len() as u64;
        next.sort();
        for w in next {
            if seen[w.0] {
                continue;
            }
            seen[w.0] = true;
            parent[w.0] = Some(v);
            if is_target[w.0] {
                let mut path = vec![w];
                let mut cur = w;
                while let Some(p) = parent[cur.0] {
                    path.push(p);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(w);
        }
    }
    None
}

/// Plans a motion of unlabelled robots from `start` to `goal`.
pub fn plan(
    graph: &Graph,
    start: &[VertexId],
    goal: &[VertexId],
) -> Result<(Motion, PlanStats), Error> {
    check_marks(graph, start)?;
    check_marks(graph, goal)?;
    let (s, t) = (normalise(start), normalise(goal));
    if s.windows(2).any(|w| w[0] == w[1]) || t.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Precondition(
            "robot positions must be distinct".into(),
        ));
    }
    if s.len() != t.len() {
        return Err(Error::Precondition(format!(
            "start has {} robots but goal has {}",
            s.len(),
            t.len()
        )));
    }
    if s.len() > graph.vertex_count() {
        return Err(Error::Infeasible("more robots than vertices".into()));
    }
    let mut view = graph.full_view();
    let mut ops = 0u64;
    if !marks_connected(&view, &s, &t, &mut ops) {
        return Err(Error::Infeasible(
            "start and goal are not in one component of the graph".into(),
        ));
    }

    // walks executed at the beginning, in order, and at the end, in reverse
    let mut prefix: Vec<Vec<VertexId>> = Vec::new();
    let mut suffix: Vec<Vec<VertexId>> = Vec::new();
    let (mut s, mut t) = (s, t);
    while !s.is_empty() {
        let mut marks: Vec<VertexId> = s.iter().chain(t.iter()).copied().collect();
        marks.sort();
        marks.dedup();
        let x = extremes_in(&view, &marks, &mut ops, true)[0];
        let (in_s, in_t) = (s.contains(&x), t.contains(&x));
        if in_s && in_t {
            s.retain(|&v| v != x);
            t.retain(|&v| v != x);
        } else if in_t {
            let path = nearest_in(&view, x, &s, &mut ops).expect("marks share a component");
            let y = *path.last().expect("non-empty path");
            let mut walk = path;
            walk.reverse();
            prefix.push(walk);
            s.retain(|&v| v != y);
            t.retain(|&v| v != x);
        } else {
            let path = nearest_in(&view, x, &t, &mut ops).expect("marks share a component");
            let y = *path.last().expect("non-empty path");
            suffix.push(path);
            s.retain(|&v| v != x);
            t.retain(|&v| v != y);
        }
        view.remove_vertex(x);
        ops += 1;
        debug_assert!(s.is_empty() || marks_connected(&view, &s, &t, &mut 0));
    }

    let mut frames = vec![normalise(start)];
    let mut cur = frames[0].clone();
    for walk in prefix.iter().chain(suffix.iter().rev()) {
        for w in walk.windows(2) {
            let i = cur.iter().position(|&v| v == w[0]).expect("robot on walk");
            cur[i] = w[1];
            frames.push(normalise(&cur));
            ops += 1;
        }
    }
    let motion = Motion { frames };
    let stats = PlanStats {
        moves: motion.moves(),
        elementary_ops: ops.max(motion.moves() as u64),
    };
    Ok((motion, stats))
}

fn marks_connected(view: &View<'_>, s: &[VertexId], t: &[VertexId], ops: &mut u64) -> bool {
    let labels = view.component_labels();
    *ops += view.graph.vertex_count() as u64;
    let mut all = s.iter().chain(t.iter());
    match all.next() {
        Some(first) => all.all(|v| labels[v.0] == labels[first.0]),
        None => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn vs(ids: &[usize]) -> Vec<VertexId> {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    #[test]
    fn extremes_on_segment_and_circle() {
        let p = path(5);
        assert_eq!(extreme_points(&p, &vs(&[1, 3])).unwrap(), vs(&[1, 3]));
        assert_eq!(extreme_points(&p, &vs(&[0, 2, 4])).unwrap(), vs(&[0, 4]));
        let c = cycle(6);
        assert_eq!(
            extreme_points(&c, &vs(&[0, 2, 3, 5])).unwrap(),
            vs(&[0, 2, 3, 5])
        );
    }

    #[test]
    fn neighbour_paths() {
        let p = path(5);
        assert_eq!(
            neighbour_path(&p, &vs(&[0, 3]), VertexId(0)).unwrap(),
            vs(&[0, 1, 2, 3])
        );
        assert_eq!(
            neighbour_path(&p, &vs(&[1, 2]), VertexId(1)).unwrap(),
            vs(&[1, 2])
        );
        // triod: v=0, arms v1..v3; tie broken by smallest id
        assert_eq!(
            neighbour_path(&triod(), &vs(&[1, 2, 3]), VertexId(1)).unwrap(),
            vs(&[1, 0, 2])
        );
        assert!(neighbour_path(&p, &vs(&[1]), VertexId(1)).is_err());
    }

    #[test]
    fn triod_plans() {
        let t = triod();
        let (m, stats) = plan(&t, &vs(&[1, 2]), &vs(&[1, 3])).unwrap();
        assert_eq!(m.moves(), 2);
        assert!(stats.elementary_ops >= 2);
        m.validate(&t).unwrap();
        let (m, _) = plan(&t, &vs(&[2, 1]), &vs(&[1, 2])).unwrap();
        assert_eq!(m.moves(), 0);
    }

    #[test]
    fn reversal_is_scheduled_last() {
        // robots at both ends of a path have to pass the middle
        let p = path(5);
        let (m, _) = plan(&p, &vs(&[0, 1]), &vs(&[3, 4])).unwrap();
        m.validate(&p).unwrap();
        assert_eq!(m.end(), &vs(&[3, 4]));
    }

    #[test]
    fn rejects_bad_input() {
        let t = triod();
        assert!(plan(&t, &vs(&[1, 1]), &vs(&[1, 2])).is_err());
        assert!(plan(&t, &vs(&[1]), &vs(&[1, 2])).is_err());
        let g = Graph::from_edges(&[], &[("a", "b"), ("c", "d")]).unwrap();
        assert!(matches!(
            plan(&g, &vs(&[0]), &vs(&[2])),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn motion_validation_catches_jumps() {
        let p = path(4);
        let m = Motion::from_frames(vec![vs(&[0]), vs(&[2])]);
        assert!(m.validate(&p).is_err());
        let m = Motion::from_frames(vec![vs(&[0, 1]), vs(&[0, 2])]);
        m.validate(&p).unwrap();
    }
}
