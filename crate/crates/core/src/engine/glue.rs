//! The two ways a configuration space grows: adjoining an isolated vertex,
//! and adding an edge `e`, which glues the cylinder
//! `UD(K - Nbhd(e), k-1) × ē` onto `UD(K - e, k)` along its two ends.

use std::collections::HashMap;

use super::space::{OneCell, Route, Space, SpaceGenerator};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::group::Word;
use crate::planner::normalise;

/// How one component `Y_j` of the cylinder base is attached.
#[derive(Clone, Debug)]
pub(crate) struct CylinderPlan {
    /// 0-cell of `Y` where the cylinder's own 1-cell is read.
    pub anchor: usize,
    /// Route in `Y` from the anchor to every 0-cell of the component.
    pub paths: HashMap<usize, Route>,
    /// Loops at the anchor generating the component's fundamental group;
    /// the flag marks loops that commute with the sweep.
    pub loops: Vec<(Route, bool)>,
    /// Route in `X` from `anchor ∪ {b}` back to `anchor ∪ {a}`; when absent the
    /// tree path is used.
    pub sweep: Option<Route>,
}

pub(crate) fn generic_plans(y: &Space) -> Vec<CylinderPlan> {
    let mut plans: Vec<CylinderPlan> = y
        .bases
        .iter()
        .map(|&b| CylinderPlan {
            anchor: b,
            paths: HashMap::new(),
            loops: Vec::new(),
            sweep: None,
        })
        .collect();
    for (c, &j) in y.component.iter().enumerate() {
        plans[j].paths.insert(c, y.tree_route(c));
    }
    for g in &y.generators {
        plans[g.component].loops.push((g.witness.clone(), false));
    }
    plans
}

#[derive(Clone, Debug)]
pub(crate) struct GlueOutcome {
    pub space: Space,
    /// Indices of the generators created by this step.
    pub new_generators: Vec<usize>,
    /// Indices into `space.relators` of the relators created by this step.
    pub new_relators: Vec<usize>,
    pub commutator_form: bool,
}

fn find(uf: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while uf[r] != r {
        r = uf[r];
    }
    let mut cur = x;
    while uf[cur] != r {
        let next = uf[cur];
        uf[cur] = r;
        cur = next;
    }
    r
}

fn with(config: &[VertexId], v: VertexId) -> Vec<VertexId> {
    let mut c = config.to_vec();
    c.push(v);
    normalise(&c)
}

/// `UD(K, k)` from `x = UD(K - e, k)` and `y = UD(K - Nbhd(e), k - 1)`.
pub(crate) fn glue(
    graph: &Graph,
    x: &Space,
    y: &Space,
    e: EdgeId,
    plans: &[CylinderPlan],
) -> GlueOutcome {
    let (a, b) = graph.endpoints(e);
    let configs = x.configs.clone();
    let mut cells = x.cells.clone();
    let mut cell_of = vec![0; y.configs.len()];
    for (i, c) in y.configs.iter().enumerate() {
        cell_of[i] = cells.len();
        cells.push(OneCell {
            from: x.index[&with(c, a)],
            to: x.index[&with(c, b)],
            edge: e,
        });
    }
    let mut z = Space::from_parts(x.robots, configs, cells);
    z.labels[..x.cells.len()].clone_from_slice(&x.labels);

    let mut tree = x.tree_cells();
    tree.resize(z.cells.len(), false);
    let mut uf: Vec<usize> = (0..x.bases.len()).collect();
    let mut is_tree = vec![false; plans.len()];
    for (j, plan) in plans.iter().enumerate() {
        let cell = z.cells[cell_of[plan.anchor]];
        let (ca, cb) = (
            find(&mut uf, x.component[cell.from]),
            find(&mut uf, x.component[cell.to]),
        );
        if ca != cb && plan.sweep.is_none() {
            uf[ca] = cb;
            tree[cell_of[plan.anchor]] = true;
            is_tree[j] = true;
        }
    }
    z.root_forest(&tree);

    for g in &x.generators {
        let old_base = x.bases[g.component];
        let comp = z.component[old_base];
        let witness = if z.bases[comp] == old_base {
            g.witness.clone()
        } else {
            let p = z.tree_route(old_base);
            p.then(&g.witness).then(&p.inverse(graph))
        };
        z.generators.push(SpaceGenerator {
            component: comp,
            witness,
        });
    }
    for (comp, r) in &x.relators {
        z.relators.push((z.component[x.bases[*comp]], r.clone()));
    }

    let mut new_generators = Vec::new();
    let mut new_relators = Vec::new();
    let mut commutator_form = true;
    for (j, plan) in plans.iter().enumerate() {
        let q = &y.configs[plan.anchor];
        let (qa, qb) = (x.index[&with(q, a)], x.index[&with(q, b)]);
        let comp = z.component[qa];
        let cross = Route {
            start: z.configs[qa].clone(),
            steps: vec![(e, 1)],
        };
        let (label, stable) = if is_tree[j] {
            (Word::empty(), None)
        } else {
            let t = z.generators.len();
            let to_a = z.tree_route(qa);
            let (witness, label) = match &plan.sweep {
                Some(s) => {
                    let w = to_a.then(&cross).then(s).then(&to_a.inverse(graph));
                    (w, Word::generator(t).mul(&z.word(s).inverse()))
                }
                None => (
                    to_a.then(&cross).then(&z.tree_route(qb).inverse(graph)),
                    Word::generator(t),
                ),
            };
            z.generators.push(SpaceGenerator {
                component: comp,
                witness,
            });
            new_generators.push(t);
            (label, Some(t))
        };
        for (&c, p) in &plan.paths {
            let cell = cell_of[c];
            if is_tree[j] && c == plan.anchor {
                continue;
            }
            let w = z
                .word(&p.parked(a))
                .inverse()
                .mul(&label)
                .mul(&z.word(&p.parked(b)));
            z.labels[cell] = Some(w);
        }
        for (lp, commutes) in &plan.loops {
            let u = z.word(&lp.parked(a));
            let rel = match (stable, *commutes && plan.sweep.is_some()) {
                (Some(t), true) => {
                    let tw = Word::generator(t);
                    Word::product([&u, &tw, &u.inverse(), &tw.inverse()])
                }
                _ => {
                    commutator_form = false;
                    let v = z.word(&lp.parked(b));
                    Word::product([&u, &label, &v.inverse(), &label.inverse()])
                }
            };
            if !rel.is_empty() {
                new_relators.push(z.relators.len());
                z.relators.push((comp, rel));
            }
        }
    }
    GlueOutcome {
        space: z,
        new_generators,
        new_relators,
        commutator_form,
    }
}

/// `UD(K ⊔ {u}, k)` from `a = UD(K, k)` and `b = UD(K, k - 1)`.
pub(crate) fn adjoin(a: &Space, b: &Space, u: VertexId) -> Space {
    let mut configs: Vec<Vec<VertexId>> = a.configs.clone();
    configs.extend(b.configs.iter().map(|c| with(c, u)));
    configs.sort();
    let index: HashMap<&Vec<VertexId>, usize> =
        configs.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let map_a: Vec<usize> = a.configs.iter().map(|c| index[c]).collect();
    let map_b: Vec<usize> = b.configs.iter().map(|c| index[&with(c, u)]).collect();
    let mut cells = Vec::with_capacity(a.cells.len() + b.cells.len());
    cells.extend(a.cells.iter().map(|c| OneCell {
        from: map_a[c.from],
        to: map_a[c.to],
        edge: c.edge,
    }));
    cells.extend(b.cells.iter().map(|c| OneCell {
        from: map_b[c.from],
        to: map_b[c.to],
        edge: c.edge,
    }));
    let mut z = Space::from_parts(a.robots, configs.clone(), cells);

    let shift = a.generators.len();
    let shifted = |w: &Word| Word::new(w.letters.iter().map(|&(g, s)| (g + shift, s)).collect());
    for (i, l) in a.labels.iter().enumerate() {
        z.labels[i] = l.clone();
    }
    for (i, l) in b.labels.iter().enumerate() {
        z.labels[a.cells.len() + i] = l.as_ref().map(shifted);
    }
    let mut tree = a.tree_cells();
    tree.extend(b.tree_cells());
    z.root_forest(&tree);

    for g in &a.generators {
        z.generators.push(SpaceGenerator {
            component: z.component[map_a[a.bases[g.component]]],
            witness: g.witness.clone(),
        });
    }
    for g in &b.generators {
        z.generators.push(SpaceGenerator {
            component: z.component[map_b[b.bases[g.component]]],
            witness: g.witness.parked(u),
        });
    }
    for (comp, r) in &a.relators {
        z.relators
            .push((z.component[map_a[a.bases[*comp]]], r.clone()));
    }
    for (comp, r) in &b.relators {
        z.relators
            .push((z.component[map_b[b.bases[*comp]]], shifted(r)));
    }
    debug_assert!(a.bases.iter().all(|&x| z.bases.contains(&map_a[x])));
    debug_assert!(b.bases.iter().all(|&x| z.bases.contains(&map_b[x])));
    z
}
