//! Heat-bath dynamics on graphs with no exact sampler, validated against
//! the enumeration oracle where enumeration is still possible.
//!
//! Run with: cargo run --example heat_bath

use std::collections::HashMap;

use gwalk::enumerate::enumerate;
use gwalk::graph::GeneratorSpec;
use gwalk::mcmc::{run, HeatBathChain};
use gwalk::stats::chi_square;
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() {
    // chain states vs the exact uniform law on an enumerable graph
    let graph = GeneratorSpec::Torus(4).build().unwrap();
    let items = enumerate(&graph, 10_000).items.unwrap();
    let index: HashMap<Vec<i64>, usize> = items
        .iter()
        .enumerate()
        .map(|(i, h)| (h.values().to_vec(), i))
        .collect();
    println!("{graph}: {} states", items.len());

    let mut chain = HeatBathChain::new(&graph, ChaCha12Rng::seed_from_u64(8)).unwrap();
    chain.run_steps(20_000);
    let mut observed = vec![0u64; items.len()];
    let draws = 100_000usize;
    for _ in 0..draws {
        // thin well past the mixing time so draws are effectively independent
        chain.run_steps(150);
        observed[index[chain.current_values()]] += 1;
    }
    let uniform = vec![BigUint::from(1u32); items.len()];
    let test = chi_square(&observed, &uniform).unwrap();
    println!(
        "{draws} thinned draws vs uniform: chi-square {:.1} on {} dof, p = {:.4}",
        test.statistic, test.dof, test.p_value
    );

    // the same machinery on a graph too large to enumerate comfortably
    let big = GeneratorSpec::Torus(8).build().unwrap();
    let stats = run(&big, 50_000, 100, 500, ChaCha12Rng::seed_from_u64(9)).unwrap();
    let mean = stats.iter().map(|s| s.range_size as f64).sum::<f64>() / stats.len() as f64;
    let max = stats.iter().map(|s| s.range_size).max().unwrap();
    println!("\n{big}: 500 draws after burn-in");
    println!("mean range {mean:.2}, largest range seen {max}");
}
