//! Metric balls, greedy disjoint families, and the boundary-preserving
//! repair that forces r + 1 values onto an exact-radius ball.
//!
//! Run with: cargo run --example ball_repair

use gwalk::graph::GeneratorSpec;
use gwalk::hom::{repair_ball, Homomorphism};

fn main() {
    let graph = GeneratorSpec::Torus(5).build().unwrap();
    println!("{graph}");
    for r in 0..3 {
        println!(
            "  max ball size at radius {r}: {} (bound {})",
            graph.max_ball_size(r),
            (2 * r + 1) * (2 * r + 1)
        );
    }

    let balls = graph.disjoint_exact_balls(1, &[graph.anchor()]);
    println!("\ngreedy disjoint exact balls of radius 1 avoiding the anchor:");
    for b in &balls {
        println!("  center {:>2}: members {:?}", b.center, b.members);
    }
    let s = graph.max_ball_size(1);
    println!(
        "  {} balls, guaranteed at least floor({}/{}) - 1 = {}",
        balls.len(),
        graph.len() - 1,
        s * s,
        ((graph.len() - 1) / (s * s)) as isize - 1
    );

    // repair: the flattest homomorphism of a cycle gets a tall ball
    let cycle = GeneratorSpec::Cycle(12).build().unwrap();
    let flat = Homomorphism::anchored(&cycle, vec![0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]).unwrap();
    let ball = cycle.ball(6, 3).unwrap();
    let fixed = repair_ball(&cycle, &flat, &ball).unwrap();
    println!(
        "\n{cycle}, ball of radius 3 around vertex 6 (members {:?})",
        ball.members
    );
    println!("  before: {:?}", flat.values());
    println!("  after:  {:?}", fixed.values());
    println!(
        "  values on the ball went from {:?} to {:?}; boundary and exterior untouched",
        ball.members
            .iter()
            .map(|&v| flat.value(v))
            .collect::<Vec<_>>(),
        ball.members
            .iter()
            .map(|&v| fixed.value(v))
            .collect::<Vec<_>>(),
    );
    assert!(fixed.validate(&cycle));
}
