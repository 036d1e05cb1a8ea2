//! The layered cycle `C(n, k)` and its homomorphism structure.
//!
//! A homomorphism of the layered cycle is determined by surprisingly little
//! data. A non-constant layer forces both neighboring layers to share a
//! single value, so non-constant layers are never cyclically adjacent and
//! each one contributes a sign vector. Peeling the largest non-constant
//! layer (together with its forced successor) shortens the cycle by two
//! while preserving the values of the constant layers; iterating until no
//! non-constant layer remains leaves a walk bridge read off the first
//! column. This module implements that peeling bijection and its inverse,
//! the index-set packing that makes non-adjacent layer sets easy to count
//! and draw, the resulting closed-form counts, and exact uniform samplers
//! built directly on the bijections.
//!
//! Layer `i`'s vertices are `(i, s)` for `s` in `1..=k`, flattened to index
//! `i * k + (s - 1)`; the anchor is `(0, 1)`. Throughout, `h0` refers to the
//! homomorphisms whose 0-layer is constant (hence identically zero), and
//! "full set" to all anchored homomorphisms.

use std::collections::BTreeSet;

use num_bigint::{BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::bridge::{binomial_big, BridgePath, BridgeSampler};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hom::{Homomorphism, RangeStats};

/// An anchored homomorphism of the layered cycle, stored as an `n x k` table.
///
/// Invariants enforced at construction: `n` is even, every pair of cyclically
/// adjacent layers has unit difference across all vertex pairs, and the
/// anchor `(0, 1)` maps to 0. The degenerate `n = 0` value exists only as the
/// fixed point of full peeling.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LayeredHom {
    n: usize,
    k: usize,
    values: Vec<i64>,
}

impl LayeredHom {
    pub fn new(n: usize, k: usize, values: Vec<i64>) -> Result<Self> {
        if k < 1 {
            return Err(Error::Domain("layer width k must be >= 1".into()));
        }
        if !n.is_multiple_of(2) {
            return Err(Error::OddParameter {
                name: "layer count",
                value: n,
            });
        }
        if values.len() != n * k {
            return Err(Error::InvalidHomomorphism(format!(
                "{} values for {n} layers of width {k}",
                values.len()
            )));
        }
        let hom = LayeredHom { n, k, values };
        if n > 0 {
            if hom.value(0, 1) != 0 {
                return Err(Error::InvalidHomomorphism(format!(
                    "anchor (0,1) maps to {}, expected 0",
                    hom.value(0, 1)
                )));
            }
            hom.check_layer_pairs()?;
        }
        Ok(hom)
    }

    /// The zero-layer fixed point of full peeling.
    pub fn empty(k: usize) -> Self {
        assert!(k >= 1, "layer width k must be >= 1");
        LayeredHom {
            n: 0,
            k,
            values: Vec::new(),
        }
    }

    /// Unit differences between every cyclically adjacent pair of layers.
    fn check_layer_pairs(&self) -> Result<()> {
        for i in 0..self.n {
            let next = (i + 1) % self.n;
            let a = self.layer(i);
            let b = self.layer(next);
            let (a_min, a_max) = min_max(a);
            if a_min == a_max {
                for &x in b {
                    if (x - a_min).abs() != 1 {
                        return Err(Error::InvalidHomomorphism(format!(
                            "layers {i} and {next} take values {a_min} and {x}"
                        )));
                    }
                }
            } else {
                let (b_min, b_max) = min_max(b);
                if b_min != b_max {
                    return Err(Error::InvalidHomomorphism(format!(
                        "layers {i} and {next} are both non-constant"
                    )));
                }
                for &x in a {
                    if (x - b_min).abs() != 1 {
                        return Err(Error::InvalidHomomorphism(format!(
                            "layers {i} and {next} take values {x} and {b_min}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn layer_count(&self) -> usize {
        self.n
    }

    pub fn layer_width(&self) -> usize {
        self.k
    }

    /// Value at vertex `(i, s)` with `s` in `1..=k`.
    pub fn value(&self, i: usize, s: usize) -> i64 {
        debug_assert!((1..=self.k).contains(&s));
        self.values[i * self.k + (s - 1)]
    }

    pub fn layer(&self, i: usize) -> &[i64] {
        &self.values[i * self.k..(i + 1) * self.k]
    }

    /// Flat values in generator order (`(i, s)` at `i * k + s - 1`).
    pub fn flat_values(&self) -> &[i64] {
        &self.values
    }

    pub fn into_flat_values(self) -> Vec<i64> {
        self.values
    }

    pub fn is_layer_constant(&self, i: usize) -> bool {
        let (lo, hi) = min_max(self.layer(i));
        lo == hi
    }

    /// True when the 0-layer is constant, i.e. identically zero.
    pub fn is_zero_layer_constant(&self) -> bool {
        self.n == 0 || self.is_layer_constant(0)
    }

    /// Indices of the non-constant layers, ascending.
    pub fn nonconstant_layers(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| !self.is_layer_constant(i))
            .collect()
    }

    /// Values taken on the constant layers.
    pub fn constant_layer_values(&self) -> BTreeSet<i64> {
        (0..self.n)
            .filter(|&i| self.is_layer_constant(i))
            .map(|i| self.value(i, 1))
            .collect()
    }

    /// Non-constant layer set and constant-layer value set.
    pub fn layer_profile(&self) -> (Vec<usize>, BTreeSet<i64>) {
        (self.nonconstant_layers(), self.constant_layer_values())
    }

    pub fn range_stats(&self) -> RangeStats {
        RangeStats::of_values(&self.values)
    }

    /// Reinterprets as a homomorphism of the matching generated graph.
    pub fn to_homomorphism(&self, graph: &Graph) -> Result<Homomorphism> {
        Homomorphism::anchored(graph, self.values.clone())
    }

    /// A homomorphism with no non-constant layer is a bridge read off the
    /// first column (closing back to 0).
    pub fn to_bridge(&self) -> Result<BridgePath> {
        if !self.nonconstant_layers().is_empty() {
            return Err(Error::InvalidDecomposition(
                "bridge read-off needs every layer constant".into(),
            ));
        }
        let mut positions: Vec<i64> = (0..self.n).map(|i| self.value(i, 1)).collect();
        positions.push(0);
        BridgePath::from_positions(&positions)
    }

    /// Removes the largest non-constant layer `i` and the (forced) layer
    /// `i + 1`, producing a homomorphism on `n - 2` layers plus the sign
    /// vector `v(s) = value(i, s) - value(i - 1, s)`.
    ///
    /// Requires a constant 0-layer and at least one non-constant layer. The
    /// constant-layer value set is preserved, and [`LayeredHom::unpeel`] with
    /// the same index and vector inverts the move.
    pub fn peel(&self) -> Result<(LayeredHom, Vec<i8>)> {
        if !self.is_zero_layer_constant() {
            return Err(Error::InvalidDecomposition(
                "peel requires a constant 0-layer".into(),
            ));
        }
        let target = *self
            .nonconstant_layers()
            .last()
            .ok_or_else(|| Error::InvalidDecomposition("no non-constant layer to peel".into()))?;
        let shorter = self.n - 2;
        let mut values = Vec::with_capacity(shorter * self.k);
        for i in 0..shorter {
            let src = if i < target { i } else { i + 2 };
            values.extend_from_slice(self.layer(src));
        }
        let vector: Vec<i8> = (1..=self.k)
            .map(|s| (self.value(target, s) - self.value(target - 1, s)) as i8)
            .collect();
        Ok((LayeredHom::new(shorter, self.k, values)?, vector))
    }

    /// Inserts a non-constant layer with sign vector `vector` at `index`,
    /// lengthening the cycle by two; inverse of [`LayeredHom::peel`].
    ///
    /// `index` must exceed every existing non-constant layer by at least two
    /// (so it becomes the new maximum and no two non-constant layers are
    /// adjacent) and lie in `1..=n+1`.
    pub fn unpeel(&self, index: usize, vector: &[i8]) -> Result<LayeredHom> {
        check_sign_vector(vector, self.k)?;
        let longer = self.n + 2;
        if self.n == 0 {
            if index != 1 {
                return Err(Error::InvalidDecomposition(format!(
                    "insertion into the empty homomorphism must use index 1, got {index}"
                )));
            }
            let mut values = vec![0i64; self.k];
            values.extend(vector.iter().map(|&s| s as i64));
            return LayeredHom::new(2, self.k, values);
        }
        if !self.is_zero_layer_constant() {
            return Err(Error::InvalidDecomposition(
                "unpeel requires a constant 0-layer".into(),
            ));
        }
        if index == 0 || index > longer - 1 {
            return Err(Error::InvalidDecomposition(format!(
                "insertion index {index} outside 1..={}",
                longer - 1
            )));
        }
        if let Some(&top) = self.nonconstant_layers().last() {
            if index < top + 2 {
                return Err(Error::InvalidDecomposition(format!(
                    "insertion at {index} would touch the non-constant layer {top}"
                )));
            }
        }
        let mut values = Vec::with_capacity(longer * self.k);
        for i in 0..longer {
            if i < index {
                // index may reach n + 1, so layer n wraps to layer 0
                values.extend_from_slice(self.layer(i % self.n));
            } else if i == index {
                let base = (index - 1) % self.n;
                values.extend((1..=self.k).map(|s| self.value(base, s) + vector[s - 1] as i64));
            } else {
                values.extend_from_slice(self.layer(i - 2));
            }
        }
        LayeredHom::new(longer, self.k, values)
    }

    /// Reduction of a homomorphism with non-constant 0-layer to one with a
    /// constant 0-layer on `n - 2` layers, plus the data to rebuild it: the
    /// sign `z = value(1, 1)` and the vector `w(s) = z * value(0, s + 1)` in
    /// `{0, 2}^(k-1)` (non-zero because the 0-layer is non-constant).
    pub fn reduce_zero_layer(&self) -> Result<(LayeredHom, i8, Vec<i64>)> {
        if self.n < 4 {
            return Err(Error::Domain(format!(
                "zero-layer reduction needs at least 4 layers, got {}",
                self.n
            )));
        }
        if self.is_zero_layer_constant() {
            return Err(Error::InvalidDecomposition(
                "0-layer is constant; nothing to reduce".into(),
            ));
        }
        let z = self.value(1, 1);
        debug_assert!(z == 1 || z == -1);
        let mut values = Vec::with_capacity((self.n - 2) * self.k);
        for i in 0..self.n - 2 {
            values.extend((1..=self.k).map(|s| self.value(i + 1, s) - z));
        }
        let w: Vec<i64> = (2..=self.k).map(|s| z * self.value(0, s)).collect();
        debug_assert!(w.iter().any(|&x| x != 0));
        Ok((LayeredHom::new(self.n - 2, self.k, values)?, z as i8, w))
    }
}

/// Inverse of [`LayeredHom::reduce_zero_layer`]: wraps a homomorphism with
/// constant 0-layer into one with two more layers whose 0-layer takes the
/// values `{0, 2z}` prescribed by the non-zero `w`.
pub fn rebuild_zero_layer(reduced: &LayeredHom, z: i8, w: &[i64]) -> Result<LayeredHom> {
    let (n, k) = (reduced.layer_count(), reduced.layer_width());
    if n < 2 {
        return Err(Error::Domain(
            "rebuild needs a reduced homomorphism with layers".into(),
        ));
    }
    if !reduced.is_zero_layer_constant() {
        return Err(Error::InvalidDecomposition(
            "rebuild requires a constant 0-layer".into(),
        ));
    }
    if z != 1 && z != -1 {
        return Err(Error::InvalidDecomposition(format!("sign {z} is not +/-1")));
    }
    if w.len() != k - 1 {
        return Err(Error::InvalidDecomposition(format!(
            "vector length {} does not match layer width {k}",
            w.len()
        )));
    }
    if w.iter().any(|&x| x != 0 && x != 2) {
        return Err(Error::InvalidDecomposition(
            "vector entries must be 0 or 2".into(),
        ));
    }
    if w.iter().all(|&x| x == 0) {
        return Err(Error::InvalidDecomposition(
            "the zero vector would leave the 0-layer constant".into(),
        ));
    }
    let z = z as i64;
    let longer = n + 2;
    let mut values = Vec::with_capacity(longer * k);
    values.push(0);
    values.extend(w.iter().map(|&x| z * x));
    for i in 0..n {
        values.extend(reduced.layer(i).iter().map(|&x| x + z));
    }
    values.extend(std::iter::repeat_n(z, k));
    LayeredHom::new(longer, k, values)
}

fn min_max(values: &[i64]) -> (i64, i64) {
    let mut lo = values[0];
    let mut hi = values[0];
    for &x in &values[1..] {
        lo = lo.min(x);
        hi = hi.max(x);
    }
    (lo, hi)
}

fn check_sign_vector(vector: &[i8], k: usize) -> Result<()> {
    if vector.len() != k {
        return Err(Error::InvalidDecomposition(format!(
            "sign vector length {} does not match layer width {k}",
            vector.len()
        )));
    }
    if vector.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::InvalidDecomposition(
            "sign vector entries must be +/-1".into(),
        ));
    }
    if vector.iter().all(|&s| s == vector[0]) {
        return Err(Error::InvalidDecomposition(
            "constant sign vectors are excluded".into(),
        ));
    }
    Ok(())
}

/// The bridge-and-vectors form of a homomorphism with constant 0-layer:
/// the non-constant layer indices, the bridge left after peeling them all,
/// and the sign vectors in peel order (largest index first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerDecomposition {
    pub n: usize,
    pub k: usize,
    /// Non-constant layer indices, ascending; no two cyclically adjacent.
    pub indices: Vec<usize>,
    /// Bridge of length `n - 2 * indices.len()`.
    pub bridge: BridgePath,
    /// Sign vectors in peel order: `vectors[0]` came off `indices.last()`.
    pub vectors: Vec<Vec<i8>>,
}

/// Fully peels a homomorphism with constant 0-layer into its decomposition.
///
/// The constant-layer value set of the input equals the position set of the
/// bridge, so in particular the range of the input is at least the bridge
/// range.
pub fn decompose(hom: &LayeredHom) -> Result<LayerDecomposition> {
    if hom.layer_count() < 2 {
        return Err(Error::Domain(
            "decomposition needs at least 2 layers".into(),
        ));
    }
    if !hom.is_zero_layer_constant() {
        return Err(Error::InvalidDecomposition(
            "decomposition requires a constant 0-layer".into(),
        ));
    }
    let indices = hom.nonconstant_layers();
    let mut vectors = Vec::with_capacity(indices.len());
    let mut current = hom.clone();
    while !current.nonconstant_layers().is_empty() {
        let (next, vector) = current.peel()?;
        vectors.push(vector);
        current = next;
    }
    let bridge = current.to_bridge()?;
    Ok(LayerDecomposition {
        n: hom.layer_count(),
        k: hom.layer_width(),
        indices,
        bridge,
        vectors,
    })
}

/// Inverse of [`decompose`]: inserts the non-constant layers in increasing
/// index order into the bridge's constant homomorphism, pairing the j-th
/// smallest index with the j-th last peeled vector.
///
/// Equivalent to chaining [`LayeredHom::unpeel`] (see
/// [`recompose_by_unpeeling`]) but runs in `O(n * k)` independent of the
/// number of insertions: a non-constant layer takes its left neighbor's
/// value plus the sign vector, the layer after it copies that neighbor,
/// and the remaining layers consume bridge positions in order.
pub fn recompose(d: &LayerDecomposition) -> Result<LayeredHom> {
    validate_decomposition(d)?;
    let (n, k) = (d.n, d.k);
    let layers = d.indices.len();
    let positions = d.bridge.positions();
    let mut values = Vec::with_capacity(n * k);
    let mut next_insert = 0usize;
    let mut bridge_pos = 0usize;
    let mut i = 0usize;
    while i < n {
        if next_insert < layers && d.indices[next_insert] == i {
            let base = values[(i - 1) * k];
            let vector = &d.vectors[layers - 1 - next_insert];
            values.extend((0..k).map(|s| base + vector[s] as i64));
            if i + 1 < n {
                values.extend(std::iter::repeat_n(base, k));
            }
            next_insert += 1;
            i += 2;
        } else {
            let p = positions[bridge_pos];
            bridge_pos += 1;
            values.extend(std::iter::repeat_n(p, k));
            i += 1;
        }
    }
    LayeredHom::new(n, k, values)
}

/// Reference composition: the literal chain of [`LayeredHom::unpeel`] moves
/// that [`recompose`] collapses into one pass. Kept as an independent route
/// for cross-checking.
pub fn recompose_by_unpeeling(d: &LayerDecomposition) -> Result<LayeredHom> {
    validate_decomposition(d)?;
    let layers = d.indices.len();
    let mut current = bridge_constant_hom(&d.bridge, d.k)?;
    for (j, &index) in d.indices.iter().enumerate() {
        current = current.unpeel(index, &d.vectors[layers - 1 - j])?;
    }
    Ok(current)
}

fn validate_decomposition(d: &LayerDecomposition) -> Result<()> {
    if d.n < 2 || !d.n.is_multiple_of(2) {
        return Err(Error::InvalidDecomposition(format!(
            "invalid layer count {}",
            d.n
        )));
    }
    let layers = d.indices.len();
    if d.vectors.len() != layers {
        return Err(Error::InvalidDecomposition(format!(
            "{} vectors for {layers} non-constant layers",
            d.vectors.len()
        )));
    }
    check_spaced(&d.indices, d.n)?;
    for vector in &d.vectors {
        check_sign_vector(vector, d.k)?;
    }
    if d.bridge.len() + 2 * layers != d.n {
        return Err(Error::InvalidDecomposition(format!(
            "bridge length {} does not complete {layers} layers to {}",
            d.bridge.len(),
            d.n
        )));
    }
    Ok(())
}

/// The all-layers-constant homomorphism following a bridge.
fn bridge_constant_hom(bridge: &BridgePath, k: usize) -> Result<LayeredHom> {
    let m = bridge.len();
    if m == 0 {
        return Ok(LayeredHom::empty(k));
    }
    let positions = bridge.positions();
    let mut values = Vec::with_capacity(m * k);
    for &p in &positions[..m] {
        values.extend(std::iter::repeat_n(p, k));
    }
    LayeredHom::new(m, k, values)
}

fn check_spaced(indices: &[usize], n: usize) -> Result<()> {
    for (t, &i) in indices.iter().enumerate() {
        if i == 0 || i > n - 1 {
            return Err(Error::InvalidDecomposition(format!(
                "layer index {i} outside 1..={}",
                n - 1
            )));
        }
        if t > 0 && i < indices[t - 1] + 2 {
            return Err(Error::InvalidDecomposition(format!(
                "layer indices {} and {i} are adjacent or unsorted",
                indices[t - 1]
            )));
        }
    }
    Ok(())
}

/// Packs a set of pairwise non-adjacent indices from `1..=n-1` into an
/// arbitrary subset of `1..=n-len` by subtracting the rank: the t-th smallest
/// index maps to `i_t - (t - 1)`.
pub fn pack_spaced_set(indices: &[usize], n: usize) -> Result<Vec<usize>> {
    check_spaced(indices, n)?;
    Ok(indices.iter().enumerate().map(|(t, &i)| i - t).collect())
}

/// Inverse of [`pack_spaced_set`]: spreads a subset of `1..=n-len` back out
/// by adding the rank, restoring the non-adjacency gaps.
pub fn unpack_spaced_set(packed: &[usize], n: usize) -> Result<Vec<usize>> {
    let len = packed.len();
    for (t, &j) in packed.iter().enumerate() {
        if j == 0 || j > n - len {
            return Err(Error::InvalidDecomposition(format!(
                "packed index {j} outside 1..={}",
                n - len
            )));
        }
        if t > 0 && j <= packed[t - 1] {
            return Err(Error::InvalidDecomposition(
                "packed indices must increase".into(),
            ));
        }
    }
    Ok(packed.iter().enumerate().map(|(t, &j)| j + t).collect())
}

/// Exact homomorphism counts of the layered cycle.
///
/// `h0_by_layers[l]` counts homomorphisms with constant 0-layer and exactly
/// `l` non-constant layers:
/// `C(n-l, l) * C(n-2l, n/2-l) * (2^k - 2)^l`,
/// with the convention that the `l = 0` power is 1 even at `k = 1`.
/// The full count adds the homomorphisms with non-constant 0-layer, which
/// biject onto (reduced hom, sign, non-zero vector) triples:
/// `total = h0_total + 2 * (2^(k-1) - 1) * h0_total(n - 2, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnkCounts {
    pub n: usize,
    pub k: usize,
    pub h0_by_layers: Vec<BigUint>,
    pub h0_total: BigUint,
    pub total: BigUint,
}

impl CnkCounts {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::OddParameter {
                name: "layer count",
                value: n,
            });
        }
        if k < 1 {
            return Err(Error::Domain("layer width k must be >= 1".into()));
        }
        let h0_by_layers = h0_table(n, k);
        let h0_total: BigUint = h0_by_layers.iter().sum();
        let reduced_total: BigUint = h0_table(n - 2, k).iter().sum();
        let total = &h0_total + nonconstant_zero_factor(k) * reduced_total;
        Ok(CnkCounts {
            n,
            k,
            h0_by_layers,
            h0_total,
            total,
        })
    }

    /// Probability that a uniform constant-0-layer homomorphism has the
    /// maximal number `n/2` of non-constant layers.
    pub fn h0_full_nonconstant_probability(&self) -> BigRational {
        BigRational::new(
            self.h0_by_layers
                .last()
                .expect("table nonempty")
                .clone()
                .into(),
            self.h0_total.clone().into(),
        )
    }

    /// Exact tail `Pr[#nonconstant layers > cutoff]` under the uniform
    /// measure on the full set, as a big-integer ratio.
    pub fn nonconstant_tail_probability(&self, cutoff: usize) -> BigRational {
        let mut numerator: BigUint = self.h0_by_layers.iter().skip(cutoff + 1).sum();
        // A non-constant 0-layer adds one to the reduced homomorphism's count.
        let reduced = h0_table(self.n - 2, self.k);
        let from_reduced: BigUint = reduced.iter().skip(cutoff).sum();
        numerator += nonconstant_zero_factor(self.k) * from_reduced;
        BigRational::new(numerator.into(), self.total.clone().into())
    }
}

/// `2 * (2^(k-1) - 1)`: choices of sign and non-zero vector attached to a
/// non-constant 0-layer.
fn nonconstant_zero_factor(k: usize) -> BigUint {
    ((BigUint::one() << (k - 1)) - BigUint::one()) * 2u32
}

/// The count table for `l = 0..=n/2`, seeded with the central binomial and
/// advanced by the exact ratio
/// `h0(l+1) / h0(l) = (n/2 - l)^2 (2^k - 2) / ((n - l)(l + 1))`.
///
/// `n = 0` yields the singleton table of the empty homomorphism.
fn h0_table(n: usize, k: usize) -> Vec<BigUint> {
    debug_assert!(n.is_multiple_of(2));
    let half = n / 2;
    let weight = (BigUint::one() << k) - 2u32;
    let mut table = Vec::with_capacity(half + 1);
    table.push(binomial_big(n as u64, half as u64));
    for l in 0..half {
        let a = (half - l) as u64;
        let numerator = &table[l] * (a * a) * &weight;
        let denominator = (n - l) as u64 * (l + 1) as u64;
        let next = &numerator / denominator;
        debug_assert_eq!(
            &next * denominator,
            numerator,
            "ratio recurrence must be exact"
        );
        table.push(next);
    }
    table
}

/// Independent closed-form route to one table entry:
/// `C(n-l, l) * C(n-2l, n/2-l) * (2^k - 2)^l`.
pub fn h0_layer_count(n: usize, k: usize, l: usize) -> Result<BigUint> {
    if !n.is_multiple_of(2) {
        return Err(Error::OddParameter {
            name: "layer count",
            value: n,
        });
    }
    if l > n / 2 {
        return Err(Error::Domain(format!("{l} non-constant layers exceed n/2")));
    }
    let choose_positions = binomial_big((n - l) as u64, l as u64);
    let choose_bridge = binomial_big((n - 2 * l) as u64, (n / 2 - l) as u64);
    let weight = (BigUint::one() << k) - 2u32;
    let vectors = if l == 0 {
        BigUint::one()
    } else {
        weight.pow(l as u32)
    };
    Ok(choose_positions * choose_bridge * vectors)
}

/// Exact uniform samplers for the layered cycle, built on the decomposition:
/// draw the number of non-constant layers by inverse CDF over exact counts,
/// place them via the packing bijection, draw the bridge and the sign
/// vectors, and recompose. The full-set sampler mixes in the rebuilt
/// non-constant-0-layer branch with its exact probability.
///
/// All discrete choices compare uniform big integers against exact counts;
/// no floating point enters, so the output laws are exactly uniform.
#[derive(Debug, Clone)]
pub struct CnkSampler {
    counts: CnkCounts,
    prefix: Vec<BigUint>,
    bridges: Vec<Option<BridgeSampler>>,
    reduced: Option<Box<CnkSampler>>,
}

impl CnkSampler {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        let mut sampler = CnkSampler::without_reduction(n, k)?;
        if n >= 4 {
            sampler.reduced = Some(Box::new(CnkSampler::without_reduction(n - 2, k)?));
        }
        Ok(sampler)
    }

    fn without_reduction(n: usize, k: usize) -> Result<Self> {
        let counts = CnkCounts::new(n, k)?;
        let mut prefix = Vec::with_capacity(counts.h0_by_layers.len());
        let mut acc = BigUint::zero();
        for c in &counts.h0_by_layers {
            acc += c;
            prefix.push(acc.clone());
        }
        let bridges = vec![None; n / 2 + 1];
        Ok(CnkSampler {
            counts,
            prefix,
            bridges,
            reduced: None,
        })
    }

    pub fn counts(&self) -> &CnkCounts {
        &self.counts
    }

    /// One exactly uniform homomorphism with constant 0-layer.
    pub fn sample_h0<R: Rng + ?Sized>(&mut self, rng: &mut R) -> LayeredHom {
        let (n, k) = (self.counts.n, self.counts.k);
        let ticket = rng.gen_biguint_below(&self.counts.h0_total);
        // first index whose prefix sum exceeds the ticket
        let layers = self.prefix.partition_point(|p| *p <= ticket);

        let packed = {
            let mut chosen: Vec<usize> = rand::seq::index::sample(rng, n - layers, layers)
                .into_iter()
                .map(|j| j + 1)
                .collect();
            chosen.sort_unstable();
            chosen
        };
        let indices = unpack_spaced_set(&packed, n).expect("packed draw is valid");

        let bridge = self.bridges[layers]
            .get_or_insert_with(|| {
                BridgeSampler::new(n - 2 * layers).expect("bridge length is even")
            })
            .sample(rng);
        let vectors = (0..layers).map(|_| random_sign_vector(k, rng)).collect();

        recompose(&LayerDecomposition {
            n,
            k,
            indices,
            bridge,
            vectors,
        })
        .expect("sampled decomposition is valid")
    }

    /// One exactly uniform homomorphism from the full anchored set.
    ///
    /// Needs `n >= 4`: the non-constant-0-layer branch rebuilds from the
    /// `n - 2` sampler.
    pub fn sample_h<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<LayeredHom> {
        if self.reduced.is_none() {
            return Err(Error::Domain(
                "full-set sampling needs at least 4 layers".into(),
            ));
        }
        let k = self.counts.k;
        let ticket = rng.gen_biguint_below(&self.counts.total);
        if ticket < self.counts.h0_total {
            return Ok(self.sample_h0(rng));
        }
        // Unreachable for k = 1 (total == h0_total), so k >= 2 here.
        let reduced = self.reduced.as_mut().expect("checked above");
        let base = reduced.sample_h0(rng);
        let z = if rng.gen::<bool>() { 1i8 } else { -1i8 };
        let w = random_nonzero_doubled_vector(k, rng);
        rebuild_zero_layer(&base, z, &w)
    }
}

/// One-shot convenience samplers; build a [`CnkSampler`] for bulk draws.
pub fn sample_h0<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<LayeredHom> {
    Ok(CnkSampler::without_reduction(n, k)?.sample_h0(rng))
}

pub fn sample_h<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<LayeredHom> {
    if n < 4 {
        return Err(Error::Domain(
            "full-set sampling needs at least 4 layers".into(),
        ));
    }
    CnkSampler::new(n, k)?.sample_h(rng)
}

/// Uniform non-constant vector in `{1,-1}^k` by rejection.
fn random_sign_vector<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<i8> {
    debug_assert!(k >= 2, "non-constant vectors need k >= 2");
    loop {
        let v: Vec<i8> = (0..k)
            .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
            .collect();
        if v.iter().any(|&s| s != v[0]) {
            return v;
        }
    }
}

/// Uniform non-zero vector in `{0,2}^(k-1)` by rejection.
fn random_nonzero_doubled_vector<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<i64> {
    debug_assert!(k >= 2, "non-zero vectors need k >= 2");
    loop {
        let w: Vec<i64> = (0..k - 1)
            .map(|_| if rng.gen::<bool>() { 2 } else { 0 })
            .collect();
        if w.iter().any(|&x| x != 0) {
            return w;
        }
    }
}
