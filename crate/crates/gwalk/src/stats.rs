//! Chi-square goodness-of-fit checks and small numeric helpers.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use statrs::function::gamma::gamma_ur;

use crate::error::{Error, Result};

/// Result of a Pearson chi-square test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Pearson goodness-of-fit test of observed counts against an exact
/// distribution given as positive big-integer weights.
///
/// Expected cell counts are `N * w_i / sum(w)`. The p-value is the upper tail
/// of the chi-square distribution with `len - 1` degrees of freedom, via the
/// regularized incomplete gamma function.
pub fn chi_square(observed: &[u64], expected_weights: &[BigUint]) -> Result<ChiSquare> {
    if observed.len() != expected_weights.len() {
        return Err(Error::SupportMismatch(format!(
            "{} observed cells vs {} expected weights",
            observed.len(),
            expected_weights.len()
        )));
    }
    if observed.len() < 2 {
        return Err(Error::SupportMismatch("need at least two cells".into()));
    }
    if expected_weights.iter().any(Zero::is_zero) {
        return Err(Error::SupportMismatch(
            "expected masses must be positive".into(),
        ));
    }
    let total: u64 = observed.iter().sum();
    let weight_sum: BigUint = expected_weights.iter().sum();
    let mut statistic = 0.0;
    for (&o, w) in observed.iter().zip(expected_weights) {
        let expected = ratio_to_f64(&(w * total), &weight_sum);
        let diff = o as f64 - expected;
        statistic += diff * diff / expected;
    }
    let dof = observed.len() - 1;
    Ok(ChiSquare {
        statistic,
        dof,
        p_value: chi_square_p_value(statistic, dof),
    })
}

/// Two-sample chi-square test of homogeneity on two count vectors over the
/// same ordered support.
///
/// Cells empty in both samples are dropped; adjacent cells are pooled until
/// every expected count reaches 5, the usual validity rule for the
/// chi-square approximation on thin tails.
pub fn chi_square_two_sample(a: &[u64], b: &[u64]) -> Result<ChiSquare> {
    if a.len() != b.len() {
        return Err(Error::SupportMismatch(format!(
            "{} cells vs {} cells",
            a.len(),
            b.len()
        )));
    }
    let total_a: u64 = a.iter().sum();
    let total_b: u64 = b.iter().sum();
    if total_a == 0 || total_b == 0 {
        return Err(Error::SupportMismatch(
            "both samples must be non-empty".into(),
        ));
    }
    let grand = (total_a + total_b) as f64;
    let min_expected = 5.0;
    // pooled column sums, merged left-to-right until each expected cell is
    // large enough in both rows
    let smaller_share = total_a.min(total_b) as f64 / grand;
    let mut cells: Vec<(u64, u64)> = Vec::new();
    let mut acc = (0u64, 0u64);
    for (&x, &y) in a.iter().zip(b) {
        acc.0 += x;
        acc.1 += y;
        let pooled = (acc.0 + acc.1) as f64;
        if pooled * smaller_share >= min_expected {
            cells.push(acc);
            acc = (0, 0);
        }
    }
    if acc.0 + acc.1 > 0 {
        match cells.last_mut() {
            Some(last) => {
                last.0 += acc.0;
                last.1 += acc.1;
            }
            None => cells.push(acc),
        }
    }
    if cells.len() < 2 {
        return Err(Error::SupportMismatch(
            "fewer than two cells left after pooling".into(),
        ));
    }
    let mut statistic = 0.0;
    for &(x, y) in &cells {
        let column = (x + y) as f64;
        for (obs, row_total) in [(x, total_a), (y, total_b)] {
            let expected = column * row_total as f64 / grand;
            let diff = obs as f64 - expected;
            statistic += diff * diff / expected;
        }
    }
    let dof = cells.len() - 1;
    Ok(ChiSquare {
        statistic,
        dof,
        p_value: chi_square_p_value(statistic, dof),
    })
}

/// Upper tail of the chi-square distribution.
pub fn chi_square_p_value(statistic: f64, dof: usize) -> f64 {
    if statistic <= 0.0 {
        return 1.0;
    }
    gamma_ur(dof as f64 / 2.0, statistic / 2.0)
}

/// Standard error of an empirical frequency `p` over `n` draws.
pub fn standard_error(p: f64, n: u64) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

/// `num / den` as a float, safe for operands far beyond f64 range.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let bits = num.bits().max(den.bits());
    let shift = bits.saturating_sub(96);
    let n = (num >> shift).to_f64().expect("fits after shift");
    let d = (den >> shift).to_f64().expect("fits after shift");
    n / d
}

/// A big rational as a float, via [`ratio_to_f64`].
pub fn rational_to_f64(value: &BigRational) -> f64 {
    let sign = if value.is_negative() { -1.0 } else { 1.0 };
    sign * ratio_to_f64(value.numer().magnitude(), value.denom().magnitude())
}
