//! Integer-line homomorphisms: validity, range, symmetry transforms, and the
//! ball-repair construction behind the range lower bound.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Ball, Graph};

/// An integer labeling of a graph in which every edge has unit difference.
///
/// The anchored constructor additionally pins the anchor vertex to 0; the
/// anchor-free constructor exists for translated and ball-local work, so
/// tests of the main type can always assert `values[anchor] == 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    values: Vec<i64>,
    anchored: bool,
}

impl Homomorphism {
    /// Builds an anchored homomorphism, checking unit differences on every
    /// edge and that the anchor maps to 0.
    pub fn anchored(graph: &Graph, values: Vec<i64>) -> Result<Self> {
        check_edges(graph, &values)?;
        if values[graph.anchor()] != 0 {
            return Err(Error::InvalidHomomorphism(format!(
                "anchor {} maps to {}, expected 0",
                graph.anchor(),
                values[graph.anchor()]
            )));
        }
        Ok(Homomorphism {
            values,
            anchored: true,
        })
    }

    /// Builds a homomorphism without the anchor constraint.
    pub fn anchor_free(graph: &Graph, values: Vec<i64>) -> Result<Self> {
        check_edges(graph, &values)?;
        Ok(Homomorphism {
            values,
            anchored: false,
        })
    }

    pub(crate) fn trusted(values: Vec<i64>, anchored: bool) -> Self {
        Homomorphism { values, anchored }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, v: usize) -> i64 {
        self.values[v]
    }

    pub fn into_values(self) -> Vec<i64> {
        self.values
    }

    /// True when built through the anchored constructor.
    pub fn is_anchored(&self) -> bool {
        self.anchored
    }

    /// Checks edge validity and the anchor constraint; never errors.
    pub fn validate(&self, graph: &Graph) -> bool {
        self.values.len() == graph.len()
            && check_edges(graph, &self.values).is_ok()
            && self.values[graph.anchor()] == 0
    }

    pub fn range_stats(&self) -> RangeStats {
        RangeStats::of_values(&self.values)
    }

    /// Negates every value. Validity and range size are preserved, and an
    /// anchored input stays anchored.
    pub fn reflect(&self) -> Self {
        Homomorphism {
            values: self.values.iter().map(|&x| -x).collect(),
            anchored: self.anchored,
        }
    }

    /// Adds `z` to every value. Validity and range size are preserved; the
    /// result is anchor-free for `z != 0`.
    pub fn translate(&self, z: i64) -> Self {
        Homomorphism {
            values: self.values.iter().map(|&x| x + z).collect(),
            anchored: self.anchored && z == 0,
        }
    }

    /// Serializes as one `index value` line per vertex.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.values.iter().enumerate() {
            writeln!(out, "{i} {v}").expect("write to string");
        }
        out
    }

    /// Parses the `index value` line format; inverse of [`Self::to_text`].
    pub fn parse_values(text: &str) -> Result<Vec<i64>> {
        let mut entries = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let mut parts = line.split_whitespace();
            let idx: usize = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad vertex line `{line}`")))?;
            let val: i64 = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad vertex line `{line}`")))?;
            entries.push((idx, val));
        }
        entries.sort_unstable();
        for (pos, &(idx, _)) in entries.iter().enumerate() {
            if idx != pos {
                return Err(Error::Parse(format!("missing or duplicate vertex {pos}")));
            }
        }
        Ok(entries.into_iter().map(|(_, v)| v).collect())
    }
}

fn check_edges(graph: &Graph, values: &[i64]) -> Result<()> {
    if values.len() != graph.len() {
        return Err(Error::InvalidHomomorphism(format!(
            "{} values for {} vertices",
            values.len(),
            graph.len()
        )));
    }
    for v in 0..graph.len() {
        for &u in graph.neighbors(v) {
            if u > v {
                let d = values[v] - values[u];
                if d != 1 && d != -1 {
                    return Err(Error::InvalidHomomorphism(format!(
                        "edge {v}-{u} maps to ({}, {})",
                        values[v], values[u]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Exact range data of an integer labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeStats {
    pub min: i64,
    pub max: i64,
    /// Number of distinct values taken.
    pub range_size: u64,
    pub range_set: BTreeSet<i64>,
}

impl RangeStats {
    pub fn of_values(values: &[i64]) -> RangeStats {
        assert!(!values.is_empty(), "range of an empty labeling");
        let range_set: BTreeSet<i64> = values.iter().copied().collect();
        RangeStats {
            min: *range_set.first().expect("nonempty"),
            max: *range_set.last().expect("nonempty"),
            range_size: range_set.len() as u64,
            range_set,
        }
    }

    /// On a connected graph the values step by one along edges, so the range
    /// is an integer interval.
    pub fn is_interval(&self) -> bool {
        self.range_size == (self.max - self.min + 1) as u64
    }
}

/// Rewrites `h` inside the exact-radius ball `b` so that the result agrees
/// with `h` on the ball boundary and outside the ball, while taking at least
/// `radius + 1` values on the ball.
///
/// The construction normalizes the boundary minimum to zero, takes absolute
/// values, then makes `radius` lifting passes: pass `i` raises every vertex of
/// the shrunken ball `B_{r-i}` still at height `i - 1` up to `i + 1`. Each
/// pass keeps the labeling a homomorphism and raises the floor of the inner
/// ball, so the center ends at height at least `r` while the boundary never
/// moves.
pub fn repair_ball(graph: &Graph, h: &Homomorphism, b: &Ball) -> Result<Homomorphism> {
    if !b.exact {
        return Err(Error::BallNotExact);
    }
    if b.contains(graph.anchor()) {
        return Err(Error::AnchorInBall);
    }
    check_edges(graph, h.values())?;

    let dist = graph.bfs_distances(b.center);
    let r = b.radius;
    let offset = b
        .boundary
        .iter()
        .map(|&u| h.value(u))
        .min()
        .expect("exact ball has a boundary");

    let mut out = h.values().to_vec();
    for &u in &b.members {
        out[u] = (h.value(u) - offset).abs();
    }
    for i in 1..=r as i64 {
        let inner = r - i as usize;
        for &u in &b.members {
            if dist[u] <= inner && out[u] == i - 1 {
                out[u] = i + 1;
            }
        }
    }
    for &u in &b.members {
        out[u] += offset;
    }

    let repaired = Homomorphism {
        values: out,
        anchored: h.anchored,
    };
    debug_assert!(check_edges(graph, repaired.values()).is_ok());
    Ok(repaired)
}
