mod common;

use common::*;
use graphbraid::complex::enumerate;
use graphbraid::engine::{present_with, PresentOptions};
use graphbraid::graph::subdivide_for;
use graphbraid::group::{
    cyclic_reduce, free_reduce, is_commutator_relator, tietze_simplify, Presentation, Word,
};
use graphbraid::planner::{normalise, plan};
use graphbraid::{Graph, VertexId};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instance(
    seed: u64,
    vertices: usize,
    extra: usize,
    n: usize,
) -> (Graph, Vec<VertexId>, Vec<VertexId>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_connected(&mut rng, vertices, extra);
    let all: Vec<VertexId> = g.vertices().collect();
    let pick =
        |rng: &mut ChaCha8Rng| normalise(&all.choose_multiple(rng, n).copied().collect::<Vec<_>>());
    let (a, b) = (pick(&mut rng), pick(&mut rng));
    (g, a, b)
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec((0usize..4, prop::bool::ANY), 0..10).prop_map(|v| {
        Word::new(
            v.into_iter()
                .map(|(g, s)| (g, if s { 1 } else { -1 }))
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn plans_are_legal(seed in any::<u64>(), vertices in 4usize..14, extra in 0usize..4, n in 1usize..5) {
        let (g, a, b) = instance(seed, vertices, extra, n.min(vertices));
        let (m, stats) = plan(&g, &a, &b).unwrap();
        m.validate(&g).unwrap();
        prop_assert_eq!(m.start(), &a);
        prop_assert_eq!(m.end(), &b);
        prop_assert!(stats.elementary_ops >= stats.moves as u64);
        let (back, _) = plan(&g, &b, &a).unwrap();
        back.validate(&g).unwrap();
    }

    #[test]
    fn graph_text_round_trips(seed in any::<u64>(), vertices in 1usize..12, extra in 0usize..4) {
        let g = random_connected(&mut ChaCha8Rng::seed_from_u64(seed), vertices, extra);
        let back: Graph = g.to_text().parse().unwrap();
        prop_assert_eq!(back.to_text(), g.to_text());
    }

    #[test]
    fn commutator_check_is_rotation_invariant(u in word(), v in word(), k in 0usize..20) {
        let c = Word::product([&u, &v, &u.inverse(), &v.inverse()]);
        let r = cyclic_reduce(&c);
        if !r.is_empty() {
            let rotated = r.rotate(k % r.len());
            prop_assert_eq!(is_commutator_relator(&rotated), is_commutator_relator(&r));
            prop_assert_eq!(is_commutator_relator(&rotated.inverse()), is_commutator_relator(&r));
        }
    }

    #[test]
    fn reduction_keeps_exponent_sums(w in word()) {
        prop_assert_eq!(free_reduce(&w).exponent_sums(4), w.exponent_sums(4));
        prop_assert_eq!(cyclic_reduce(&w).exponent_sums(4), w.exponent_sums(4));
    }

    #[test]
    fn tietze_keeps_abelianization(rels in prop::collection::vec(word(), 0..4)) {
        let p = Presentation::from_names(&["a", "b", "c", "d"], rels);
        let (q, dict) = tietze_simplify(&p);
        prop_assert_eq!(p.abelianization(), q.abelianization());
        prop_assert_eq!(dict.len(), 4);
        prop_assert!(q.generators.len() <= 4);
    }

    #[test]
    fn presentation_text_round_trips(rels in prop::collection::vec(word(), 0..4)) {
        let p = Presentation::from_names(&["a", "b", "c", "d"], rels.into_iter().filter(|w| !w.is_empty()).collect());
        let back = Presentation::parse(&p.to_text()).unwrap();
        prop_assert_eq!(back.to_text(), p.to_text());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn engine_matches_oracle_on_random_graphs(seed in any::<u64>(), vertices in 3usize..6, extra in 0usize..2) {
        let g = random_connected(&mut ChaCha8Rng::seed_from_u64(seed), vertices, extra);
        let (g, _) = subdivide_for(&g, 2);
        let (p, c) = compare(&g, 2, PresentOptions::default());
        prop_assert_eq!(&c.engine, &c.oracle);
        prop_assert_eq!(c.unsound_relators, 0);
        for gen in &p.raw.generators {
            let w = gen.witness.as_ref().unwrap();
            w.validate(&g).unwrap();
            prop_assert!(w.is_loop());
            prop_assert_eq!(w.start(), p.raw.base.as_ref().unwrap());
        }
    }
}

#[test]
fn memo_and_light_mode_are_transparent() {
    for (g, n) in [(cycle_chain(&[3, 3], 3), 2), (star(4), 3), (h_tree(), 2)] {
        let g = if graphbraid::graph::check_subdivision(&g, n, false)
            .unwrap()
            .ok
        {
            g
        } else {
            subdivide_for(&g, n).0
        };
        let base = present_with(&g, n, PresentOptions::default()).unwrap();
        let no_memo = present_with(
            &g,
            n,
            PresentOptions {
                memo: false,
                ..PresentOptions::default()
            },
        )
        .unwrap();
        assert_eq!(base.raw, no_memo.raw);
        let generic = present_with(
            &g,
            n,
            PresentOptions {
                light: false,
                ..PresentOptions::default()
            },
        )
        .unwrap();
        assert_eq!(base.raw.abelianization(), generic.raw.abelianization());
    }
}

#[test]
fn ordered_triod_is_a_twelve_cycle() {
    let c = enumerate(&triod(), 2, true);
    assert_eq!(c.f_vector(), (12, 12, 0));
    assert_eq!(c.components().len(), 1);
}
