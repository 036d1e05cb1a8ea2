//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with its key numbers (visible under `--nocapture`).
//!
//! Exact criteria use big-integer equality or exact rational comparison;
//! statistical criteria use fixed seeds and the stated chi-square or
//! frequency thresholds, so the suite is deterministic.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use gwalk::bridge::{binomial_big, hitting_probability, BridgeSampler};
use gwalk::cnk::{
    decompose, pack_spaced_set, rebuild_zero_layer, recompose, unpack_spaced_set, CnkCounts,
    CnkSampler, LayeredHom,
};
use gwalk::enumerate::enumerate;
use gwalk::experiment::{run as run_experiment, ExperimentId, ExperimentSpec};
use gwalk::graph::{GeneratorSpec, Graph};
use gwalk::hom::{repair_ball, Homomorphism};
use gwalk::mcmc::HeatBathChain;
use gwalk::stats::{chi_square, chi_square_two_sample, rational_to_f64};

fn enumerate_cnk(n: usize, k: usize) -> (Graph, Vec<Homomorphism>) {
    let graph = GeneratorSpec::Cnk { n, k }.build().unwrap();
    let result = enumerate(&graph, 10_000_000);
    (graph, result.items.expect("materialized"))
}

fn layered(n: usize, k: usize, h: &Homomorphism) -> LayeredHom {
    LayeredHom::new(n, k, h.values().to_vec()).expect("enumerated element is layered")
}

/// Index of each enumerated labeling, for mapping samples to outcomes.
fn outcome_index(items: &[Homomorphism]) -> HashMap<Vec<i64>, usize> {
    items
        .iter()
        .enumerate()
        .map(|(i, h)| (h.values().to_vec(), i))
        .collect()
}

#[test]
fn criterion_01_count_equivalence() {
    for n in [2usize, 4, 6, 8] {
        for k in [1usize, 2, 3] {
            let counts = CnkCounts::new(n, k).unwrap();
            let (_, items) = enumerate_cnk(n, k);
            let enumerated_h0 = items
                .iter()
                .filter(|h| (0..k).all(|s| h.value(s) == 0))
                .count();
            assert_eq!(
                counts.h0_total,
                BigUint::from(enumerated_h0),
                "constant-0-layer count at n={n} k={k}"
            );
            assert_eq!(
                counts.total,
                BigUint::from(items.len()),
                "full count at n={n} k={k}"
            );
        }
    }
    println!("PASS criterion 1: closed-form counts equal enumeration for n <= 8, k <= 3");
}

#[test]
fn criterion_02_bijection_round_trips() {
    let mut checked = 0usize;
    for (n, k) in [(4usize, 2usize), (6, 2), (4, 3)] {
        let (_, items) = enumerate_cnk(n, k);
        for h in &items {
            let hom = layered(n, k, h);
            if hom.is_zero_layer_constant() {
                // decompose / recompose
                let d = decompose(&hom).unwrap();
                assert_eq!(recompose(&d).unwrap(), hom);

                // peel / unpeel at every level, preserving constant values;
                // the terminal peel to the empty homomorphism instead hands
                // the value set {0} to the empty bridge
                let mut current = hom.clone();
                while let Some(&top) = current.nonconstant_layers().last() {
                    let constant_values = current.constant_layer_values();
                    let (next, vector) = current.peel().unwrap();
                    if next.layer_count() > 0 {
                        assert_eq!(next.constant_layer_values(), constant_values);
                    } else {
                        assert_eq!(constant_values, [0].into());
                    }
                    assert_eq!(next.unpeel(top, &vector).unwrap(), current);
                    current = next;
                }

                // index packing round trip
                let nonconstant = hom.nonconstant_layers();
                let packed = pack_spaced_set(&nonconstant, n).unwrap();
                assert_eq!(unpack_spaced_set(&packed, n).unwrap(), nonconstant);
            } else {
                let (reduced, z, w) = hom.reduce_zero_layer().unwrap();
                assert_eq!(rebuild_zero_layer(&reduced, z, &w).unwrap(), hom);
            }
            checked += 1;
        }
    }
    println!("PASS criterion 2: bijections invert on all {checked} enumerated elements");
}

#[test]
fn criterion_03_bridge_counts() {
    // independent oracle: filter every sign sequence by endpoint
    for m in (0..=12usize).step_by(2) {
        let mut bridges: Vec<Vec<i64>> = Vec::new();
        for mask in 0u32..(1 << m) {
            let mut positions = vec![0i64];
            let mut x = 0i64;
            for bit in 0..m {
                x += if mask & (1 << bit) != 0 { 1 } else { -1 };
                positions.push(x);
            }
            if x == 0 {
                bridges.push(positions);
            }
        }
        assert_eq!(
            BigUint::from(bridges.len()),
            binomial_big(m as u64, m as u64 / 2),
            "bridge count at m={m}"
        );
        for level in 1..=(m as i64 / 2) {
            let hits = bridges.iter().filter(|p| p.contains(&level)).count();
            assert_eq!(
                BigUint::from(hits),
                binomial_big(m as u64, (m as i64 / 2 - level) as u64),
                "hitting count at m={m} level={level}"
            );
        }
    }
    println!("PASS criterion 3: bridge and hitting counts match exhaustive filtering, m <= 12");
}

#[test]
fn criterion_04_sampler_uniformity() {
    let (graph, items) = enumerate_cnk(4, 2);
    let index = outcome_index(&items);
    let h0_items: Vec<&Homomorphism> = items
        .iter()
        .filter(|h| h.value(0) == 0 && h.value(1) == 0)
        .collect();
    let h0_index: HashMap<Vec<i64>, usize> = h0_items
        .iter()
        .enumerate()
        .map(|(i, h)| (h.values().to_vec(), i))
        .collect();
    assert_eq!(h0_items.len(), 22);
    assert_eq!(items.len(), 30);

    // constant-0-layer sampler: 22 outcomes, 22k draws
    let mut rng = ChaCha12Rng::seed_from_u64(401);
    let mut sampler = CnkSampler::new(4, 2).unwrap();
    let mut observed = vec![0u64; 22];
    for _ in 0..22_000 {
        let h = sampler.sample_h0(&mut rng);
        observed[h0_index[h.flat_values()]] += 1;
    }
    let uniform22 = vec![BigUint::from(1u32); 22];
    let test = chi_square(&observed, &uniform22).unwrap();
    assert!(test.p_value > 0.001, "h0 sampler p = {}", test.p_value);
    let p_h0 = test.p_value;

    // full-set sampler: 30 outcomes, 30k draws
    let mut observed = vec![0u64; 30];
    for _ in 0..30_000 {
        let h = sampler.sample_h(&mut rng).unwrap();
        observed[index[h.flat_values()]] += 1;
    }
    let uniform30 = vec![BigUint::from(1u32); 30];
    let test = chi_square(&observed, &uniform30).unwrap();
    assert!(test.p_value > 0.001, "full sampler p = {}", test.p_value);
    let p_full = test.p_value;

    // bridge sampler: 70 outcomes, 70k draws
    let bridge_items: Vec<Vec<i64>> = {
        let mut out = Vec::new();
        for mask in 0u32..(1 << 8) {
            let mut positions = vec![0i64];
            let mut x = 0i64;
            for bit in 0..8 {
                x += if mask & (1 << bit) != 0 { 1 } else { -1 };
                positions.push(x);
            }
            if x == 0 {
                out.push(positions);
            }
        }
        out
    };
    assert_eq!(bridge_items.len(), 70);
    let bridge_index: HashMap<Vec<i64>, usize> = bridge_items
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let bridge_sampler = BridgeSampler::new(8).unwrap();
    let mut observed = vec![0u64; 70];
    for _ in 0..70_000 {
        observed[bridge_index[&bridge_sampler.sample(&mut rng).positions()]] += 1;
    }
    let uniform70 = vec![BigUint::from(1u32); 70];
    let test = chi_square(&observed, &uniform70).unwrap();
    assert!(test.p_value > 0.001, "bridge sampler p = {}", test.p_value);
    let p_bridge = test.p_value;

    // heat bath on the same graph: a million steps, every 100th recorded
    let mut chain = HeatBathChain::new(&graph, ChaCha12Rng::seed_from_u64(402)).unwrap();
    chain.run_steps(10_000);
    let mut observed = vec![0u64; 30];
    for _ in 0..10_000 {
        chain.run_steps(100);
        observed[index[chain.current_values()]] += 1;
    }
    let test = chi_square(&observed, &uniform30).unwrap();
    assert!(test.p_value > 0.001, "heat bath p = {}", test.p_value);

    println!(
        "PASS criterion 4: chi-square p-values {:.3} / {:.3} / {:.3} / {:.3} all above 0.001",
        p_h0, p_full, p_bridge, test.p_value
    );
}

#[test]
fn criterion_05_threshold_upper() {
    // exact side: at n = 64, offset 6 (k = 18), the probability of any
    // constant odd layer is at most 2^(1-6)
    let counts = CnkCounts::new(64, 18).unwrap();
    let pr_not_full =
        BigRational::from_integer(1.into()) - counts.h0_full_nonconstant_probability();
    let bound = BigRational::new(1.into(), 32.into());
    assert!(
        pr_not_full <= bound,
        "exact {} > 2^-5",
        rational_to_f64(&pr_not_full)
    );

    // sampled side: at least 95% of 1000 full-set draws have range <= 3
    let mut rng = ChaCha12Rng::seed_from_u64(405);
    let mut sampler = CnkSampler::new(64, 18).unwrap();
    let mut small = 0u64;
    for _ in 0..1000 {
        if sampler.sample_h(&mut rng).unwrap().range_stats().range_size <= 3 {
            small += 1;
        }
    }
    assert!(small >= 950, "only {small}/1000 draws had range <= 3");

    // and the experiment harness agrees end to end
    let report = run_experiment(&ExperimentSpec::defaults(ExperimentId::ThresholdUpper)).unwrap();
    assert!(report.all_pass, "{}", report.to_csv());

    println!(
        "PASS criterion 5: exact tail {:.5} <= 0.03125, sampled small-range fraction {}/1000",
        rational_to_f64(&pr_not_full),
        small
    );
}

#[test]
fn criterion_06_threshold_lower_exact_tail() {
    // with beta = 2^(psi/2)/8 the bound 16 beta^2 2^(-psi) is exactly 1/4
    let quarter = BigRational::new(1.into(), 4.into());
    for n in [256usize, 1024, 4096] {
        for psi in [4u32, 8] {
            let k = (2.0 * (n as f64).log2() - psi as f64).floor() as usize;
            assert!(k >= 1);
            let beta = 2f64.powf(psi as f64 / 2.0) / 8.0;
            let cutoff = (n as f64 / 2.0 - beta).floor() as usize;
            let counts = CnkCounts::new(n, k).unwrap();
            let tail = counts.nonconstant_tail_probability(cutoff);
            assert!(
                tail <= quarter,
                "tail {} > 1/4 at n={n} psi={psi}",
                rational_to_f64(&tail)
            );
        }
    }
    println!(
        "PASS criterion 6: exact nonconstant-layer tails below 16 b^2 2^-psi on the full grid"
    );
}

#[test]
fn criterion_07_bridge_range_bound() {
    for m in [100usize, 400, 1600] {
        for alpha in [0.1f64, 0.25, 0.5] {
            let level = (alpha * (m as f64).sqrt()).ceil() as u64;
            let exact = rational_to_f64(&hitting_probability(m, level).unwrap());
            let bound = 1.0 - 2.0 * alpha * alpha;
            assert!(
                exact >= bound - 0.05,
                "hit probability {exact} below {bound} - 0.05 at m={m} alpha={alpha}"
            );
        }
    }
    println!("PASS criterion 7: exact hitting probabilities within 0.05 of 1 - 2 alpha^2");
}

#[test]
fn criterion_08_ball_repair_property() {
    let mut repairs = 0usize;
    for spec in [
        GeneratorSpec::Cycle(8),
        GeneratorSpec::Cycle(12),
        GeneratorSpec::Torus(4),
    ] {
        let graph = spec.build().unwrap();
        let items = enumerate(&graph, 10_000_000).items.expect("materialized");

        // precompute the usable balls once per graph
        let mut balls = Vec::new();
        for center in 0..graph.len() {
            for radius in 0..=3usize {
                let ball = graph.ball(center, radius).unwrap();
                if ball.exact && !ball.contains(graph.anchor()) {
                    balls.push(ball);
                }
            }
        }

        for h in &items {
            for ball in &balls {
                let fixed = repair_ball(&graph, h, ball).unwrap();
                assert!(fixed.validate(&graph), "{spec}: repaired map invalid");
                for &u in &ball.boundary {
                    assert_eq!(fixed.value(u), h.value(u), "{spec}: boundary moved");
                }
                let on_ball: std::collections::BTreeSet<i64> =
                    ball.members.iter().map(|&u| fixed.value(u)).collect();
                assert!(
                    on_ball.len() > ball.radius,
                    "{spec}: only {} values on a radius-{} ball",
                    on_ball.len(),
                    ball.radius
                );
                for v in 0..graph.len() {
                    if !ball.contains(v) {
                        assert_eq!(fixed.value(v), h.value(v), "{spec}: exterior changed");
                    }
                }
                repairs += 1;
            }
        }
    }
    println!("PASS criterion 8: {repairs} ball repairs kept validity, boundary, range, exterior");
}

/// Deterministic random connected graph on up to `max_vertices` vertices.
fn random_connected_graph(rng: &mut ChaCha12Rng, max_vertices: usize) -> Graph {
    let n = rng.gen_range(2..=max_vertices);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for _ in 0..rng.gen_range(0..n) {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.push((u, v));
        }
    }
    let anchor = rng.gen_range(0..n);
    Graph::from_edges("random", n, anchor, edges).unwrap()
}

#[test]
fn criterion_09_disjoint_balls_property() {
    let mut rng = ChaCha12Rng::seed_from_u64(2024);
    for _ in 0..200 {
        let graph = random_connected_graph(&mut rng, 50);
        for radius in 0..=3usize {
            let max_size = graph.max_ball_size(radius);
            for forbidden in [vec![], vec![graph.anchor()]] {
                let balls = graph.disjoint_exact_balls(radius, &forbidden);
                for ball in &balls {
                    assert!(ball.exact);
                    assert_eq!(ball.radius, radius);
                    for &f in &forbidden {
                        assert!(!ball.contains(f));
                    }
                }
                for (i, a) in balls.iter().enumerate() {
                    for b in &balls[i + 1..] {
                        assert!(a.is_disjoint(b));
                    }
                }
                let free = graph.len() - forbidden.len();
                let lower = (free / (max_size * max_size)) as isize - 1;
                assert!(
                    balls.len() as isize >= lower,
                    "{} balls < floor({free}/{max_size}^2) - 1",
                    balls.len()
                );
            }
        }
    }
    println!("PASS criterion 9: greedy ball families met exactness, disjointness, size bound on 200 graphs");
}

#[test]
fn criterion_10_width_one_degeneration() {
    // ranges of width-one layered draws vs directly sampled bridges
    let n = 200usize;
    let draws = 20_000usize;
    let mut rng = ChaCha12Rng::seed_from_u64(410);
    let mut layered_sampler = CnkSampler::new(n, 1).unwrap();
    let bridge_sampler = BridgeSampler::new(n).unwrap();

    let mut layered_ranges = Vec::with_capacity(draws);
    let mut bridge_ranges = Vec::with_capacity(draws);
    for _ in 0..draws {
        layered_ranges.push(layered_sampler.sample_h0(&mut rng).range_stats().range_size);
        bridge_ranges.push(bridge_sampler.sample(&mut rng).range_stats().range_size);
    }
    let lo = *layered_ranges.iter().chain(&bridge_ranges).min().unwrap();
    let hi = *layered_ranges.iter().chain(&bridge_ranges).max().unwrap();
    let mut a = vec![0u64; (hi - lo + 1) as usize];
    let mut b = vec![0u64; (hi - lo + 1) as usize];
    for r in layered_ranges {
        a[(r - lo) as usize] += 1;
    }
    for r in bridge_ranges {
        b[(r - lo) as usize] += 1;
    }
    let test = chi_square_two_sample(&a, &b).unwrap();
    assert!(test.p_value > 0.001, "two-sample p = {}", test.p_value);
    println!(
        "PASS criterion 10: width-one range law matches bridges (p = {:.3}, support {lo}..={hi})",
        test.p_value
    );
}
