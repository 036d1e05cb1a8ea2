//! The brute-force oracle: exhaustive counting, range histograms, and
//! uniform sampling by enumeration index on small graphs.
//!
//! Run with: cargo run --example enumerate_graphs

use gwalk::enumerate::{enumerate, uniform_sample};
use gwalk::graph::GeneratorSpec;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() {
    for spec in [
        GeneratorSpec::Path(10),
        GeneratorSpec::Cycle(12),
        GeneratorSpec::Cycle(7),
        GeneratorSpec::Torus(4),
        GeneratorSpec::Hypercube(3),
        GeneratorSpec::Cnk { n: 6, k: 2 },
    ] {
        let graph = spec.build().unwrap();
        let result = enumerate(&graph, 0);
        println!("{graph}");
        println!("  anchored homomorphisms: {}", result.count);
        if result.count == 0u32.into() {
            println!("  (not bipartite, so the set is empty)\n");
            continue;
        }
        print!("  range histogram:");
        for (size, count) in &result.range_histogram {
            print!(" {size}:{count}");
        }
        println!("\n");
    }

    let graph = GeneratorSpec::Torus(4).build().unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(3);
    let sample = uniform_sample(&graph, 10_000, &mut rng).unwrap();
    println!("one uniform homomorphism of the 4x4 torus (vertex (i,j) = index 4i+j):");
    for i in 0..4 {
        let row: Vec<i64> = (0..4).map(|j| sample.value(4 * i + j)).collect();
        println!("  {row:?}");
    }
    println!("  range size {}", sample.range_stats().range_size);
}
