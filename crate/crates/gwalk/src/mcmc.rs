//! Single-site heat-bath dynamics on the anchored homomorphisms of a
//! bipartite graph, for graphs where no exact sampler is available.
//!
//! One step resamples a uniformly chosen non-anchor vertex from its allowed
//! value set: the intersection of `{f(u) - 1, f(u) + 1}` over the neighbors
//! `u`, which has one or two elements. A move and its reversal have equal
//! proposal probability, so the uniform measure is stationary. The chain is
//! validated against the enumeration oracle on small graphs rather than
//! trusted on faith; irreducibility of single-site dynamics in general is
//! left as the empirical check those tests perform.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hom::{Homomorphism, RangeStats};

/// A heat-bath chain over the anchored homomorphisms of a bipartite graph.
pub struct HeatBathChain<'g, R: Rng> {
    graph: &'g Graph,
    values: Vec<i64>,
    steps: u64,
    rng: R,
}

impl<'g, R: Rng> HeatBathChain<'g, R> {
    /// Starts from the canonical bipartition homomorphism: each vertex takes
    /// the parity of its BFS distance from the anchor.
    pub fn new(graph: &'g Graph, rng: R) -> Result<Self> {
        if !graph.is_bipartite() {
            return Err(Error::NotBipartite(graph.name().to_string()));
        }
        let values = graph.parity().iter().map(|&p| p as i64).collect();
        Ok(HeatBathChain {
            graph,
            values,
            steps: 0,
            rng,
        })
    }

    /// Starts from a given anchored homomorphism.
    pub fn from_state(graph: &'g Graph, state: &Homomorphism, rng: R) -> Result<Self> {
        if !state.validate(graph) {
            return Err(Error::InvalidHomomorphism("initial chain state".into()));
        }
        Ok(HeatBathChain {
            graph,
            values: state.values().to_vec(),
            steps: 0,
            rng,
        })
    }

    pub fn current_values(&self) -> &[i64] {
        &self.values
    }

    pub fn current(&self) -> Homomorphism {
        Homomorphism::trusted(self.values.clone(), true)
    }

    pub fn step_count(&self) -> u64 {
        self.steps
    }

    /// One heat-bath update. A vertex whose neighbors pin it (allowed set of
    /// size one) is resampled to its forced value, a no-op.
    pub fn step(&mut self) {
        let n = self.graph.len();
        let anchor = self.graph.anchor();
        // uniform over the n - 1 non-anchor vertices
        let mut v = self.rng.gen_range(0..n - 1);
        if v >= anchor {
            v += 1;
        }

        let mut allowed = [0i64; 2];
        let mut len = 0;
        for (idx, &u) in self.graph.neighbors(v).iter().enumerate() {
            let w = self.values[u];
            if idx == 0 {
                allowed = [w - 1, w + 1];
                len = 2;
            } else {
                let mut kept = 0;
                for i in 0..len {
                    let c = allowed[i];
                    if c == w - 1 || c == w + 1 {
                        allowed[kept] = c;
                        kept += 1;
                    }
                }
                len = kept;
            }
        }
        debug_assert!(len >= 1, "a valid state always allows the current value");
        self.values[v] = allowed[self.rng.gen_range(0..len)];
        self.steps += 1;
    }

    pub fn run_steps(&mut self, count: u64) {
        for _ in 0..count {
            self.step();
        }
    }
}

/// Runs a fresh chain and records the range statistics of every `thin`-th
/// state after `burn_in` steps.
pub fn run<R: Rng>(
    graph: &Graph,
    burn_in: u64,
    thin: u64,
    draws: u64,
    rng: R,
) -> Result<Vec<RangeStats>> {
    if burn_in < 1 || thin < 1 {
        return Err(Error::Domain("burn-in and thinning must be >= 1".into()));
    }
    let mut chain = HeatBathChain::new(graph, rng)?;
    chain.run_steps(burn_in);
    let mut out = Vec::with_capacity(draws as usize);
    for _ in 0..draws {
        chain.run_steps(thin);
        out.push(RangeStats::of_values(chain.current_values()));
    }
    Ok(out)
}
