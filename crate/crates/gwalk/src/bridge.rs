//! The space of walk bridges: length-`m` ±1 walks from 0 back to 0.
//!
//! Provides exact counts, an exactly uniform sampler, the reflection
//! bijection onto walks with endpoint `2T`, and the exact hitting
//! probability it implies.

use num_bigint::{BigUint, RandBigInt};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::hom::RangeStats;

/// A ±1 walk of even length `m` that starts and ends at 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BridgePath {
    steps: Vec<i8>,
}

impl BridgePath {
    /// Validates that the steps are ±1, the length is even, and the walk
    /// returns to 0.
    pub fn from_steps(steps: Vec<i8>) -> Result<Self> {
        if !steps.len().is_multiple_of(2) {
            return Err(Error::OddParameter {
                name: "bridge length",
                value: steps.len(),
            });
        }
        let mut sum = 0i64;
        for &s in &steps {
            if s != 1 && s != -1 {
                return Err(Error::Domain(format!("bridge step {s} is not +/-1")));
            }
            sum += s as i64;
        }
        if sum != 0 {
            return Err(Error::Domain(format!("bridge ends at {sum}, expected 0")));
        }
        Ok(BridgePath { steps })
    }

    /// Builds a bridge from its position sequence `S_0..S_m`.
    pub fn from_positions(positions: &[i64]) -> Result<Self> {
        if positions.is_empty() || positions[0] != 0 {
            return Err(Error::Domain("bridge positions must start at 0".into()));
        }
        let steps = positions
            .windows(2)
            .map(|w| match w[1] - w[0] {
                1 => Ok(1i8),
                -1 => Ok(-1i8),
                d => Err(Error::Domain(format!("position step {d} is not +/-1"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        BridgePath::from_steps(steps)
    }

    /// Walk length `m`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[i8] {
        &self.steps
    }

    /// The position sequence `S_0..S_m` (length `m + 1`).
    pub fn positions(&self) -> Vec<i64> {
        let mut positions = Vec::with_capacity(self.steps.len() + 1);
        let mut x = 0i64;
        positions.push(x);
        for &s in &self.steps {
            x += s as i64;
            positions.push(x);
        }
        positions
    }

    pub fn range_stats(&self) -> RangeStats {
        RangeStats::of_values(&self.positions())
    }

    /// Index of the first position equal to `level`, if any.
    pub fn first_hit(&self, level: i64) -> Option<usize> {
        self.positions().iter().position(|&x| x == level)
    }

    /// Reflects the walk around `level` from its first hit onwards, giving a
    /// walk of the same length from 0 to `2 * level`. Applying the same
    /// reflection to the result recovers the bridge.
    pub fn reflect_at(&self, level: i64) -> Result<Vec<i64>> {
        reflect_walk_at(&self.positions(), level)
    }
}

/// Reflects the tail of a ±1 walk around `level` after the first hit.
///
/// Works on any walk: reflecting a bridge yields a walk to `2 * level`, and
/// reflecting that walk again restores the bridge, so this single function is
/// the bijection in both directions. `level` must be positive and hit by the
/// walk.
pub fn reflect_walk_at(positions: &[i64], level: i64) -> Result<Vec<i64>> {
    if level <= 0 {
        return Err(Error::Domain(format!(
            "reflection level {level} must be positive"
        )));
    }
    let first = positions
        .iter()
        .position(|&x| x == level)
        .ok_or(Error::LevelNotHit(level))?;
    let mut out = positions.to_vec();
    for x in &mut out[first + 1..] {
        *x = 2 * level - *x;
    }
    Ok(out)
}

/// `C(n, k)` as an exact big integer.
pub fn binomial_big(n: u64, k: u64) -> BigUint {
    binomial(BigUint::from(n), BigUint::from(k))
}

/// Number of bridges of even length `m`: `C(m, m/2)`.
pub fn bridge_count(m: usize) -> Result<BigUint> {
    if !m.is_multiple_of(2) {
        return Err(Error::OddParameter {
            name: "bridge length",
            value: m,
        });
    }
    Ok(binomial_big(m as u64, m as u64 / 2))
}

/// Number of ±1 walks of length `r` from `x` to 0.
///
/// Zero unless `|x| <= r` and `r ≡ x (mod 2)`; otherwise `C(r, (r + x) / 2)`.
pub fn walk_count_to_zero(r: u64, x: i64) -> BigUint {
    if x.unsigned_abs() > r || (r as i64 + x) % 2 != 0 {
        return BigUint::zero();
    }
    binomial_big(r, ((r as i64 + x) / 2) as u64)
}

/// Exact probability that a uniform bridge of length `m` hits `level`:
/// `C(m, m/2 - level) / C(m, m/2)`.
///
/// This is also a lower bound on the probability that the bridge range has
/// size at least `level`. Levels above `m / 2` are unreachable and yield 0.
pub fn hitting_probability(m: usize, level: u64) -> Result<BigRational> {
    if !m.is_multiple_of(2) {
        return Err(Error::OddParameter {
            name: "bridge length",
            value: m,
        });
    }
    let half = m as u64 / 2;
    if level == 0 {
        return Ok(BigRational::one());
    }
    if level > half {
        return Ok(BigRational::zero());
    }
    Ok(BigRational::new(
        binomial_big(m as u64, half - level).into(),
        binomial_big(m as u64, half).into(),
    ))
}

/// Exactly uniform sampler over the bridges of a fixed length.
///
/// The walk is built sequentially: sitting at `x` with `r` steps left, the
/// up-step probability is `N(r-1, x+1) / N(r, x)` where `N` counts walks to
/// 0. The ratio is realized by comparing a uniform big integer below the
/// denominator against the numerator, so no floating point ever enters and
/// the output distribution is exactly uniform. The counts are maintained
/// incrementally along the walk; only `C(m, m/2)` is computed up front, so a
/// sampler is cheap to build and to reuse for bulk draws.
#[derive(Debug, Clone)]
pub struct BridgeSampler {
    m: usize,
    total: BigUint,
}

impl BridgeSampler {
    pub fn new(m: usize) -> Result<Self> {
        Ok(BridgeSampler {
            m,
            total: bridge_count(m)?,
        })
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    /// Total number of bridges of this length.
    pub fn count(&self) -> &BigUint {
        &self.total
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BridgePath {
        let mut steps = Vec::with_capacity(self.m);
        let mut remaining = self.m as u64;
        let mut x = 0i64;
        // walks from x to 0 in `remaining` steps
        let mut current = self.total.clone();
        while remaining > 0 {
            let ups_used = ((remaining as i64 + x) / 2) as u64;
            // C(r-1, u) = C(r, u) * (r - u) / r
            let numerator = &current * (remaining - ups_used);
            let up_count = &numerator / remaining;
            debug_assert_eq!(&up_count * remaining, numerator);

            let go_up = if up_count.is_zero() {
                false
            } else if up_count == current {
                true
            } else {
                rng.gen_biguint_below(&current) < up_count
            };
            if go_up {
                steps.push(1);
                x += 1;
                current = up_count;
            } else {
                steps.push(-1);
                x -= 1;
                current -= up_count;
            }
            remaining -= 1;
        }
        debug_assert_eq!(x, 0);
        BridgePath { steps }
    }
}

/// One-shot convenience around [`BridgeSampler`]; build the sampler directly
/// when drawing in bulk.
pub fn sample_bridge<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Result<BridgePath> {
    Ok(BridgeSampler::new(m)?.sample(rng))
}
