//! Randomized property tests over graphs, homomorphisms, and bridges.

use proptest::prelude::*;

use gwalk::bridge::BridgeSampler;
use gwalk::graph::{GeneratorSpec, Graph};
use gwalk::hom::Homomorphism;

fn generator_spec() -> impl Strategy<Value = GeneratorSpec> {
    prop_oneof![
        (1usize..=12).prop_map(GeneratorSpec::Path),
        (3usize..=14).prop_map(GeneratorSpec::Cycle),
        (2usize..=5).prop_map(GeneratorSpec::Torus),
        ((1usize..=5), (1usize..=4))
            .prop_map(|(half_n, k)| GeneratorSpec::Cnk { n: 2 * half_n, k }),
        (1usize..=4).prop_map(GeneratorSpec::Hypercube),
    ]
}

/// Connected graph on up to 50 vertices: a random tree plus extra edges.
fn random_graph() -> impl Strategy<Value = Graph> {
    (2usize..=50)
        .prop_flat_map(|n| {
            let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|v| (0..v).boxed()).collect();
            (
                Just(n),
                parents,
                proptest::collection::vec((0..n, 0..n), 0..n),
                0..n,
            )
        })
        .prop_map(|(n, parents, extras, anchor)| {
            let mut edges: Vec<(usize, usize)> = parents
                .into_iter()
                .enumerate()
                .map(|(i, p)| (p, i + 1))
                .collect();
            edges.extend(extras.into_iter().filter(|(u, v)| u != v));
            Graph::from_edges("random", n, anchor, edges).expect("tree keeps it connected")
        })
}

proptest! {
    #[test]
    fn generated_graphs_are_simple_symmetric_connected(spec in generator_spec()) {
        let g = spec.build().unwrap();
        for v in 0..g.len() {
            for &u in g.neighbors(v) {
                prop_assert_ne!(u, v);
                prop_assert!(g.has_edge(u, v));
            }
            let mut sorted = g.neighbors(v).to_vec();
            sorted.dedup();
            prop_assert_eq!(sorted.len(), g.degree(v));
        }
        prop_assert!(g.bfs_distances(g.anchor()).iter().all(|&d| d != usize::MAX));
    }

    #[test]
    fn balls_grow_with_radius_and_respect_the_degree_bound(
        spec in generator_spec(),
        r in 0usize..4,
    ) {
        let g = spec.build().unwrap();
        let d = g.max_degree();
        prop_assert!(g.max_ball_size(r) <= (d + 1).pow(r as u32));
        for v in 0..g.len() {
            let small = g.ball(v, r).unwrap();
            let big = g.ball(v, r + 1).unwrap();
            prop_assert!(small.members.iter().all(|&u| big.contains(u)));
            // boundary = members outside the smaller ball
            for &u in &small.members {
                let on_boundary = small.boundary.contains(&u);
                let inside_smaller = r > 0 && g.ball(v, r - 1).unwrap().contains(u);
                prop_assert_eq!(on_boundary, !inside_smaller && r > 0 || r == 0);
            }
        }
    }

    #[test]
    fn greedy_ball_families_meet_their_contract(g in random_graph(), r in 0usize..4) {
        let s = g.max_ball_size(r);
        for forbidden in [vec![], vec![g.anchor()]] {
            let balls = g.disjoint_exact_balls(r, &forbidden);
            for b in &balls {
                prop_assert!(b.exact);
                for &f in &forbidden {
                    prop_assert!(!b.contains(f));
                }
            }
            for (i, a) in balls.iter().enumerate() {
                for b in &balls[i + 1..] {
                    prop_assert!(a.is_disjoint(b));
                }
            }
            let free = g.len() - forbidden.len();
            prop_assert!(balls.len() as isize >= (free / (s * s)) as isize - 1);
        }
    }

    #[test]
    fn reflect_and_translate_preserve_range_size(
        steps in proptest::collection::vec(prop_oneof![Just(1i64), Just(-1i64)], 1..20),
        shift in -100i64..100,
    ) {
        let g = GeneratorSpec::Path(steps.len()).build().unwrap();
        let mut values = vec![0i64];
        for s in &steps {
            values.push(values.last().unwrap() + s);
        }
        let h = Homomorphism::anchored(&g, values).unwrap();
        let size = h.range_stats().range_size;
        prop_assert_eq!(h.reflect().range_stats().range_size, size);
        prop_assert_eq!(h.reflect().reflect(), h.clone());
        let t = h.translate(shift);
        prop_assert_eq!(t.range_stats().range_size, size);
        prop_assert!(t.values().iter().zip(h.values()).all(|(a, b)| a - b == shift));
    }

    #[test]
    fn sampled_bridges_return_to_zero(half_m in 0usize..30, seed in any::<u64>()) {
        use rand::SeedableRng;
        let m = 2 * half_m;
        let sampler = BridgeSampler::new(m).unwrap();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
        let path = sampler.sample(&mut rng);
        let positions = path.positions();
        prop_assert_eq!(positions.len(), m + 1);
        prop_assert_eq!(positions[0], 0);
        prop_assert_eq!(*positions.last().unwrap(), 0);
        prop_assert!(path.steps().iter().all(|&s| s == 1 || s == -1));
    }
}
