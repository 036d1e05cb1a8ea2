//! Brute-force enumeration, exact counting, and exact uniform sampling of the
//! anchored homomorphism set of a small graph.
//!
//! This is the correctness oracle for every closed-form count and sampler in
//! the crate, so it stays deliberately naive: depth-first assignment in BFS
//! order from the anchor, no transfer matrices, no memoization. A clever
//! oracle could share bugs with the code it is meant to check.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hom::Homomorphism;

/// Outcome of an exhaustive enumeration.
#[derive(Debug, Clone)]
pub struct EnumerationResult {
    /// Exact number of anchored homomorphisms.
    pub count: BigUint,
    /// The homomorphisms themselves, in enumeration order; present only when
    /// the count did not exceed the materialization cap.
    pub items: Option<Vec<Homomorphism>>,
    /// Exact count per range size.
    pub range_histogram: BTreeMap<u64, BigUint>,
}

impl EnumerationResult {
    /// Draws uniformly from the materialized items by index.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<&Homomorphism> {
        let items = self.items.as_ref().ok_or_else(|| {
            Error::Domain(format!(
                "cannot sample: {} homomorphisms exceeded the materialization cap",
                self.count
            ))
        })?;
        if items.is_empty() {
            return Err(Error::EmptyHomomorphismSet);
        }
        Ok(&items[rng.gen_range(0..items.len())])
    }

    /// Position of a labeling in enumeration order, when materialized.
    pub fn index_of(&self, values: &[i64]) -> Option<usize> {
        self.items
            .as_ref()?
            .iter()
            .position(|h| h.values() == values)
    }
}

/// Visits every anchored homomorphism of `graph` exactly once.
///
/// The DFS assigns vertices in BFS order from the anchor; each newly reached
/// vertex may only take values adjacent to all of its already-assigned
/// neighbors (a set of size at most two), with choices explored in increasing
/// order. The order is therefore fixed across runs and platforms, which makes
/// sampling-by-index reproducible.
///
/// A non-bipartite graph has no homomorphism into the integer line; the
/// result then has count zero rather than an error. `cap` bounds
/// materialization only, never the count or the histogram.
pub fn enumerate(graph: &Graph, cap: usize) -> EnumerationResult {
    let mut acc = Accumulator {
        count: BigUint::zero(),
        histogram: BTreeMap::new(),
        items: Vec::new(),
        overflowed: false,
        cap,
    };
    if graph.is_bipartite() {
        let order = graph.bfs_order();
        let mut position = vec![usize::MAX; graph.len()];
        for (idx, &v) in order.iter().enumerate() {
            position[v] = idx;
        }
        let mut values = vec![0i64; graph.len()];
        assign(graph, &order, &position, 1, &mut values, 0, 0, &mut acc);
    }
    EnumerationResult {
        count: acc.count,
        items: (!acc.overflowed).then_some(acc.items),
        range_histogram: acc.histogram,
    }
}

/// Draws one uniform anchored homomorphism by indexing into the enumeration.
///
/// Each element comes out with probability exactly `1 / count`. Errors when
/// the set is empty or the count exceeds `cap`.
pub fn uniform_sample<R: Rng + ?Sized>(
    graph: &Graph,
    cap: usize,
    rng: &mut R,
) -> Result<Homomorphism> {
    let result = enumerate(graph, cap);
    if result.count.is_zero() {
        return Err(Error::EmptyHomomorphismSet);
    }
    match result.items {
        Some(items) => {
            let idx = rng.gen_range(0..items.len());
            Ok(items.into_iter().nth(idx).expect("index in range"))
        }
        None => Err(Error::CountAboveCap {
            count: result.count.to_string(),
            cap,
        }),
    }
}

struct Accumulator {
    count: BigUint,
    histogram: BTreeMap<u64, BigUint>,
    items: Vec<Homomorphism>,
    overflowed: bool,
    cap: usize,
}

#[allow(clippy::too_many_arguments)]
fn assign(
    graph: &Graph,
    order: &[usize],
    position: &[usize],
    idx: usize,
    values: &mut Vec<i64>,
    min: i64,
    max: i64,
    acc: &mut Accumulator,
) {
    if idx == order.len() {
        acc.count += 1u32;
        let range_size = (max - min + 1) as u64;
        *acc.histogram
            .entry(range_size)
            .or_insert_with(BigUint::zero) += 1u32;
        if !acc.overflowed {
            if acc.items.len() < acc.cap {
                acc.items.push(Homomorphism::trusted(values.clone(), true));
            } else {
                acc.overflowed = true;
                acc.items.clear();
            }
        }
        return;
    }

    let v = order[idx];
    // Intersect {w - 1, w + 1} over the already-assigned neighbors of v.
    let mut candidates = [0i64; 2];
    let mut len = 0usize;
    let mut first = true;
    for &u in graph.neighbors(v) {
        if position[u] >= idx {
            continue;
        }
        let w = values[u];
        if first {
            candidates = [w - 1, w + 1];
            len = 2;
            first = false;
        } else {
            let mut kept = 0;
            for i in 0..len {
                let c = candidates[i];
                if c == w - 1 || c == w + 1 {
                    candidates[kept] = c;
                    kept += 1;
                }
            }
            len = kept;
            if len == 0 {
                return;
            }
        }
    }
    debug_assert!(!first, "BFS order guarantees an assigned neighbor");

    for &c in &candidates[..len] {
        values[v] = c;
        assign(
            graph,
            order,
            position,
            idx + 1,
            values,
            min.min(c),
            max.max(c),
            acc,
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GeneratorSpec;
    use num_integer::binomial;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn count_of(spec: GeneratorSpec) -> BigUint {
        enumerate(&spec.build().unwrap(), 0).count
    }

    #[test]
    fn path_counts_are_powers_of_two() {
        for n in 1..=10usize {
            assert_eq!(count_of(GeneratorSpec::Path(n)), BigUint::from(1u32) << n);
        }
    }

    #[test]
    fn even_cycle_counts_are_central_binomials() {
        for n in [4usize, 6, 8, 10, 12] {
            assert_eq!(
                count_of(GeneratorSpec::Cycle(n)),
                binomial(BigUint::from(n), BigUint::from(n / 2))
            );
        }
    }

    #[test]
    fn odd_cycle_has_no_homomorphisms() {
        let result = enumerate(&GeneratorSpec::Cycle(7).build().unwrap(), 100);
        assert!(result.count.is_zero());
        assert_eq!(result.items.as_deref(), Some(&[][..]));
    }

    #[test]
    fn layered_cycle_4_2_has_30_elements() {
        let result = enumerate(&GeneratorSpec::Cnk { n: 4, k: 2 }.build().unwrap(), 100);
        assert_eq!(result.count, BigUint::from(30u32));
        let items = result.items.unwrap();
        assert_eq!(items.len(), 30);
        for h in &items {
            assert!(h.validate(&GeneratorSpec::Cnk { n: 4, k: 2 }.build().unwrap()));
        }
        // pairwise distinct
        for (i, a) in items.iter().enumerate() {
            for b in &items[i + 1..] {
                assert_ne!(a.values(), b.values());
            }
        }
    }

    #[test]
    fn histogram_total_matches_count() {
        for spec in [
            GeneratorSpec::Path(6),
            GeneratorSpec::Cycle(8),
            GeneratorSpec::Cnk { n: 4, k: 2 },
            GeneratorSpec::Hypercube(3),
        ] {
            let result = enumerate(&spec.build().unwrap(), 0);
            let total: BigUint = result.range_histogram.values().sum();
            assert_eq!(total, result.count, "{spec}");
        }
    }

    #[test]
    fn cap_bounds_materialization_not_counting() {
        let g = GeneratorSpec::Path(6).build().unwrap();
        let result = enumerate(&g, 10);
        assert_eq!(result.count, BigUint::from(64u32));
        assert!(result.items.is_none());
    }

    #[test]
    fn single_edge_sampling_is_a_coin_flip() {
        let g = GeneratorSpec::Path(1).build().unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let mut ups = 0u32;
        for _ in 0..2000 {
            let h = uniform_sample(&g, 10, &mut rng).unwrap();
            assert!(h.values() == [0, 1] || h.values() == [0, -1]);
            if h.value(1) == 1 {
                ups += 1;
            }
        }
        // 4 sigma around 1000 at p = 1/2
        assert!((ups as i64 - 1000).abs() < 90, "ups = {ups}");
    }

    #[test]
    fn sampling_errors() {
        let odd = GeneratorSpec::Cycle(5).build().unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(0);
        assert!(matches!(
            uniform_sample(&odd, 10, &mut rng),
            Err(Error::EmptyHomomorphismSet)
        ));
        let g = GeneratorSpec::Path(8).build().unwrap();
        assert!(matches!(
            uniform_sample(&g, 10, &mut rng),
            Err(Error::CountAboveCap { .. })
        ));
    }
}
