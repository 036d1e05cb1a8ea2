//! Exact uniform sampling of layered-cycle homomorphisms, with an empirical
//! check of the layer-count law against the exact table.
//!
//! Run with: cargo run --example exact_sampling

use gwalk::cnk::CnkSampler;
use gwalk::stats::{chi_square, ratio_to_f64};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() {
    let (n, k) = (10usize, 3usize);
    let draws = 50_000usize;
    let mut sampler = CnkSampler::new(n, k).unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(1);

    println!("one uniform draw from the full set at n = {n}, k = {k}:");
    let hom = sampler.sample_h(&mut rng).unwrap();
    for i in 0..n {
        println!("  layer {i}: {:?}", hom.layer(i));
    }
    let stats = hom.range_stats();
    println!(
        "  range {:?} (size {}), non-constant layers {:?}\n",
        (stats.min, stats.max),
        stats.range_size,
        hom.nonconstant_layers()
    );

    println!("{draws} constant-0-layer draws vs the exact layer-count law:");
    let counts = sampler.counts().clone();
    let mut observed = vec![0u64; n / 2 + 1];
    for _ in 0..draws {
        observed[sampler.sample_h0(&mut rng).nonconstant_layers().len()] += 1;
    }
    println!(
        "{:>3} {:>10} {:>10} {:>10}",
        "l", "observed", "expected", "exact pr"
    );
    for (l, (&seen, weight)) in observed.iter().zip(&counts.h0_by_layers).enumerate() {
        let p = ratio_to_f64(weight, &counts.h0_total);
        println!("{l:>3} {seen:>10} {:>10.1} {p:>10.6}", p * draws as f64);
    }
    let test = chi_square(&observed, &counts.h0_by_layers).unwrap();
    println!(
        "chi-square statistic {:.2} on {} dof, p = {:.4}",
        test.statistic, test.dof, test.p_value
    );
}
