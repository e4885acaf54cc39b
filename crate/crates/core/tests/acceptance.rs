//! Acceptance criteria 1 to 11. Every criterion prints one PASS or FAIL line;
//! the test fails if any criterion does.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use graphbraid::complex::{enumerate, same_component};
use graphbraid::engine::{present, present_with, PresentOptions};
use graphbraid::graph::{
    check_subdivision, light_decompose, subdivide_for, LightOutcome, DEFAULT_CYCLE_LIMIT,
};
use graphbraid::group::{is_commutator_relator, Abelianization};
use graphbraid::oracle::{component_containing, h1, pi1_presentation};
use graphbraid::planner::{normalise, plan};
use graphbraid::{Graph, VertexId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

fn free(rank: usize) -> Abelianization {
    Abelianization {
        rank,
        torsion: vec![],
    }
}

fn oracle_h1(g: &Graph, n: usize, base: &[VertexId]) -> Abelianization {
    let c = enumerate(g, n, false);
    h1(&c, component_containing(&c, base).unwrap()).unwrap()
}

fn c1_triod() -> Outcome {
    let t0 = Instant::now();
    let g = triod();
    let (p, _) = present(&g, 2, true).map_err(|e| e.to_string())?;
    ensure(p.generators.len() == 1 && p.relators.is_empty(), || {
        format!("got {}", p.to_text())
    })?;
    let c = enumerate(&g, 2, false);
    let h = h1(&c, 0).unwrap();
    ensure(h == free(1), || format!("oracle H1 = {h}"))?;
    let t = within(t0, Duration::from_secs(1))?;
    Ok(format!("<1 | >, oracle H1 = {h}, {t:?}"))
}

fn c2_trees() -> Outcome {
    let t0 = Instant::now();
    let mut graphs: Vec<(String, Graph)> = (3..=6).map(|k| (format!("star{k}"), star(k))).collect();
    let (h, _) = subdivide_for(&h_tree(), 2);
    graphs.push(("H-tree".into(), h));
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..25 {
        graphs.push((
            format!("random tree {i}"),
            random_checked_tree(&mut rng, 12),
        ));
    }
    for (name, g) in &graphs {
        let rank = tree_rank(g);
        let (p, _) = present(g, 2, true).map_err(|e| format!("{name}: {e}"))?;
        ensure(p.relators.is_empty() && p.generators.len() == rank, || {
            format!(
                "{name}: {} generators, {} relators, expected rank {rank}",
                p.generators.len(),
                p.relators.len()
            )
        })?;
        let h = oracle_h1(g, 2, p.base.as_ref().unwrap());
        ensure(h == free(rank), || {
            format!("{name}: oracle H1 = {h}, expected rank {rank}")
        })?;
    }
    let t = within(t0, Duration::from_secs(30))?;
    Ok(format!(
        "{} trees relator-free with the degree formula rank, {t:?}",
        graphs.len()
    ))
}

fn k33() -> Graph {
    let mut g = Graph::new();
    for i in 0..6 {
        g.add_vertex(format!("{}{}", if i < 3 { 'a' } else { 'b' }, i % 3))
            .unwrap();
    }
    for i in 0..3 {
        for j in 3..6 {
            g.add_edge(VertexId(i), VertexId(j)).unwrap();
        }
    }
    g
}

fn c3_surfaces() -> Outcome {
    let t0 = Instant::now();
    let mut notes = Vec::new();
    for (name, g, f, chi, genus) in [
        ("K5", complete(5), (20, 60, 30), -10, 6),
        ("K3,3", k33(), (30, 72, 36), -6, 4),
    ] {
        let c = enumerate(&g, 2, true);
        ensure(c.f_vector() == f, || {
            format!("{name}: f = {:?}", c.f_vector())
        })?;
        ensure(c.euler_characteristic() == chi, || {
            format!("{name}: chi = {}", c.euler_characteristic())
        })?;
        let s = c.surface_check();
        ensure(
            s.is_closed_surface && s.orientable == Some(true) && s.genus == Some(genus),
            || format!("{name}: {s:?}"),
        )?;
        let h = h1(&c, 0).unwrap();
        ensure(h == free(2 * genus as usize), || {
            format!("{name}: H1 = {h}")
        })?;
        notes.push(format!(
            "{name}: f = {f:?}, chi = {chi}, genus {genus}, H1 = {h}"
        ));
    }
    let t = within(t0, Duration::from_secs(5))?;
    Ok(format!("{}, {t:?}", notes.join("; ")))
}

fn c4_hexagon() -> Outcome {
    let g = triod();
    let ud = enumerate(&g, 2, false);
    ensure(ud.f_vector() == (6, 6, 0), || {
        format!("UD f = {:?}", ud.f_vector())
    })?;
    ensure(ud.components().len() == 1, || {
        format!("{} components", ud.components().len())
    })?;
    let od = enumerate(&g, 2, true);
    ensure(od.zero_cells.len() == 12, || {
        format!("OD has {} 0-cells", od.zero_cells.len())
    })?;
    Ok("UD f = (6, 6, 0), 1 component; OD 12 0-cells".into())
}

fn c5_points() -> Outcome {
    for n in 2..=5 {
        let g = path(n);
        let c = enumerate(&g, n, false);
        ensure(c.zero_cells.len() == 1 && c.one_cells.is_empty(), || {
            format!("n = {n}: f = {:?}", c.f_vector())
        })?;
        let o = pi1_presentation(&c, 0).unwrap().presentation;
        ensure(o.generators.is_empty() && o.relators.is_empty(), || {
            format!("n = {n}: oracle {}", o.to_text())
        })?;
        let (p, _) = present(&g, n, false).map_err(|e| e.to_string())?;
        ensure(p.generators.is_empty() && p.relators.is_empty(), || {
            format!("n = {n}: engine {}", p.to_text())
        })?;
    }
    Ok("n = 2..5: one 0-cell, trivial presentation".into())
}

/// The triod with one leaf joined back to another.
fn lollipop() -> Graph {
    let mut g = triod();
    let (a, b) = (
        g.vertex_by_name("v1").unwrap(),
        g.vertex_by_name("v2").unwrap(),
    );
    g.add_edge(a, b).unwrap();
    g
}

fn c6_free_product() -> Outcome {
    let mut g = lollipop();
    if !check_subdivision(&g, 2, false).unwrap().ok {
        g = subdivide_for(&g, 2).0;
    }
    let (p, _) = present(&g, 2, true).map_err(|e| e.to_string())?;
    ensure(p.generators.len() == 2 && p.relators.is_empty(), || {
        format!("got {}", p.to_text())
    })?;
    let h = oracle_h1(&g, 2, p.base.as_ref().unwrap());
    ensure(h == free(2), || format!("oracle H1 = {h}"))?;
    Ok(format!("<2 | >, oracle H1 = {h}"))
}

/// Light graphs with pairwise disjoint cycles, where the generator count is
/// the first Betti number plus the tree formula.
fn light_graphs() -> Vec<(&'static str, Graph)> {
    let mut sun: Vec<(usize, usize)> = (0..9).map(|i| (i, (i + 1) % 9)).collect();
    sun.extend([(0, 9), (3, 10), (6, 11)]);
    // a centre with three arms of length 3, each ending in a triangle
    let mut claws: Vec<(usize, usize)> = Vec::new();
    for k in 0..3 {
        let b = 1 + 5 * k;
        claws.extend([
            (0, b),
            (b, b + 1),
            (b + 1, b + 2),
            (b + 2, b + 3),
            (b + 3, b + 4),
            (b + 4, b + 2),
        ]);
    }
    vec![
        ("dumbbell", cycle_chain(&[3, 3], 3)),
        ("chain of 3 cycles", cycle_chain(&[3, 3, 3], 3)),
        ("chain of 4 cycles", cycle_chain(&[3, 4, 3, 5], 3)),
        ("lollipop", lollipop()),
        ("nonagon with three arms", from_pairs(12, &sun)),
        ("triod of triangles", from_pairs(16, &claws)),
    ]
}

fn c7_light() -> Outcome {
    let t0 = Instant::now();
    let mut notes = Vec::new();
    let figure_eight = from_pairs(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 0)]);
    let graphs = light_graphs()
        .into_iter()
        .map(|(name, g)| (name, g, true))
        .chain([("figure eight", figure_eight, false)]);
    for (name, g, disjoint) in graphs {
        ensure(check_subdivision(&g, 2, false).unwrap().ok, || {
            format!("{name}: fails the check")
        })?;
        let decomposition = light_decompose(&g, DEFAULT_CYCLE_LIMIT).map_err(|e| e.to_string())?;
        ensure(matches!(decomposition, LightOutcome::Light(_)), || {
            format!("{name}: not light")
        })?;
        let p = present_with(
            &g,
            2,
            PresentOptions {
                simplify: true,
                ..PresentOptions::default()
            },
        )
        .map_err(|e| format!("{name}: {e}"))?;
        let bad: Vec<String> = p
            .presentation
            .relators
            .iter()
            .filter(|r| !is_commutator_relator(r))
            .map(|r| r.display(&p.presentation.names()).to_string())
            .collect();
        ensure(bad.is_empty(), || {
            format!("{name}: non-commutator relators {bad:?}")
        })?;
        let gens = p.presentation.generators.len();
        let h = oracle_h1(&g, 2, p.raw.base.as_ref().unwrap());
        ensure(h == free(gens), || {
            format!("{name}: {gens} generators, oracle H1 = {h}")
        })?;
        let formula = g.first_betti() + tree_rank(&g);
        if disjoint {
            ensure(gens == formula, || {
                format!("{name}: {gens} generators, expected {formula}")
            })?;
            notes.push(format!("{name} {gens}/{}", p.presentation.relators.len()));
        } else {
            // cycles through one vertex: the degree count overshoots
            notes.push(format!("{name} (shared vertex, not counted) {gens} generators = oracle rank, formula {formula}"));
        }
    }
    let t = within(t0, Duration::from_secs(60))?;
    Ok(format!("generators/relators: {}, {t:?}", notes.join(", ")))
}

struct Instance {
    graph: Graph,
    start: Vec<VertexId>,
    goal: Vec<VertexId>,
}

fn random_instance(rng: &mut impl Rng, edges: usize, n: usize) -> Instance {
    assert!(edges >= 3 && edges + 1 >= n);
    loop {
        let vertices = (edges * 3 / 4 + 1).clamp(n.max(4), edges + 1);
        let extra = edges + 1 - vertices;
        let graph = random_connected(rng, vertices, extra);
        if graph.edge_count() != edges || graph.essential_vertices().is_empty() {
            continue;
        }
        let all: Vec<VertexId> = graph.vertices().collect();
        let start = normalise(&all.choose_multiple(rng, n).copied().collect::<Vec<_>>());
        let goal = normalise(&all.choose_multiple(rng, n).copied().collect::<Vec<_>>());
        return Instance { graph, start, goal };
    }
}

struct Run {
    n: usize,
    l: usize,
    ops: u64,
}

fn solve(inst: &Instance) -> Result<Run, String> {
    let (m, stats) = plan(&inst.graph, &inst.start, &inst.goal).map_err(|e| e.to_string())?;
    m.validate(&inst.graph).map_err(|e| e.to_string())?;
    ensure(m.start() == &inst.start && m.end() == &inst.goal, || {
        "wrong endpoints".into()
    })?;
    ensure(
        stats.moves == m.moves() && stats.elementary_ops >= stats.moves as u64,
        || format!("{stats:?}"),
    )?;
    Ok(Run {
        n: inst.start.len(),
        l: inst.graph.edge_count(),
        ops: stats.elementary_ops,
    })
}

fn c8_planner() -> Outcome {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut solved = 0;
    while solved < 1000 {
        let n = rng.gen_range(1..=5);
        let edges = rng.gen_range(4..=30);
        let inst = random_instance(&mut rng, edges, n);
        if !same_component(&inst.graph, &inst.start, &inst.goal) {
            continue;
        }
        solve(&inst).map_err(|e| format!("instance {solved}: {e}\n{}", inst.graph.to_text()))?;
        solved += 1;
    }
    let t = within(t0, Duration::from_secs(120))?;
    Ok(format!("{solved} instances, 0 failures, {t:?}"))
}

fn c9_complexity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut runs = Vec::new();
    for _ in 0..600 {
        let n = rng.gen_range(1..=5);
        let edges = rng.gen_range(4..=30);
        runs.push(solve(&random_instance(&mut rng, edges, n))?);
    }
    let x = |r: &Run| (r.n * r.n * r.l) as f64;
    // fit on the smaller half, check the bound on the larger half
    let (small, large): (Vec<&Run>, Vec<&Run>) = runs.iter().partition(|r| r.l <= 15);
    let c = small
        .iter()
        .map(|r| r.ops as f64 / x(r))
        .fold(0.0, f64::max);
    let worst = large
        .iter()
        .map(|r| r.ops as f64 / x(r))
        .fold(0.0, f64::max);
    ensure(worst <= c, || {
        format!("fitted c = {c:.2} on l <= 15, but l > 15 reaches {worst:.2}")
    })?;
    let ls = runs.iter().map(|r| r.ops as f64 * x(r)).sum::<f64>()
        / runs.iter().map(|r| x(r) * x(r)).sum::<f64>();
    let rel: Vec<f64> = runs
        .iter()
        .map(|r| (r.ops as f64 - ls * x(r)) / (ls * x(r)))
        .collect();
    let rms = (rel.iter().map(|e| e * e).sum::<f64>() / rel.len() as f64).sqrt();
    let max_rel = rel.iter().fold(0.0f64, |a, &e| a.max(e.abs()));

    let mut ratios = Vec::new();
    for n in [2, 3, 4] {
        let mean = |rng: &mut ChaCha8Rng, l: usize| -> Result<f64, String> {
            let mut total = 0u64;
            for _ in 0..200 {
                total += solve(&random_instance(rng, l, n))?.ops;
            }
            Ok(total as f64 / 200.0)
        };
        let (a, b) = (mean(&mut rng, 12)?, mean(&mut rng, 24)?);
        ensure(b / a <= 2.0 * 1.25, || {
            format!("n = {n}: mean ops {a:.1} at l = 12, {b:.1} at l = 24")
        })?;
        ratios.push(format!("n={n}: x{:.2}", b / a));
    }
    Ok(format!(
        "c = {c:.2} (bound holds out of sample, max {worst:.2}); least squares c = {ls:.2}, relative residuals rms {rms:.2} max {max_rel:.2}; doubling l: {}",
        ratios.join(", ")
    ))
}

fn c10_c11_sweep() -> (Outcome, Outcome) {
    let t0 = Instant::now();
    let mut graphs = 0;
    let mut relators = 0;
    for n in [2, 3] {
        for g in sweep_graphs(9, n) {
            graphs += 1;
            let (_, c) = compare(&g, n, PresentOptions::default());
            if c.engine != c.oracle {
                let msg = format!(
                    "n = {n}: engine {} vs oracle {}\n{}",
                    c.engine,
                    c.oracle,
                    g.to_text()
                );
                return (Err(msg.clone()), Err(format!("not reached: {msg}")));
            }
            if c.unsound_relators > 0 {
                return (
                    Ok(String::new()),
                    Err(format!(
                        "n = {n}: {} relators not null in H1\n{}",
                        c.unsound_relators,
                        g.to_text()
                    )),
                );
            }
            relators += c.relators_checked;
        }
    }
    let c10 = within(t0, Duration::from_secs(600))
        .map(|t| format!("{graphs} graph/robot pairs agree, {t:?}"));
    (c10, Ok(format!("{relators} relators, all null-homologous")))
}

fn run(id: &str, f: impl FnOnce() -> Outcome) -> bool {
    report(
        id,
        catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into())),
    )
}

fn report(id: &str, outcome: Outcome) -> bool {
    match outcome {
        Ok(detail) => {
            println!("PASS {id}: {detail}");
            true
        }
        Err(detail) => {
            println!("FAIL {id}: {detail}");
            false
        }
    }
}

#[test]
fn acceptance_criteria() {
    let mut ok = true;
    ok &= run("1 triod", c1_triod);
    ok &= run("2 trees", c2_trees);
    ok &= run("3 surfaces", c3_surfaces);
    ok &= run("4 hexagon", c4_hexagon);
    ok &= run("5 base case", c5_points);
    ok &= run("6 free product", c6_free_product);
    ok &= run("7 light commutators", c7_light);
    ok &= run("8 planner", c8_planner);
    ok &= run("9 planner complexity", c9_complexity);
    let (c10, c11) = catch_unwind(c10_c11_sweep)
        .unwrap_or_else(|_| (Err("panicked".into()), Err("panicked".into())));
    ok &= report("10 engine-oracle sweep", c10);
    ok &= report("11 relator soundness", c11);
    assert!(ok, "some acceptance criteria failed");
}
