//! Graph representation, standard generators, and metric queries.
//!
//! Every graph here is simple, undirected, and connected, with a
//! distinguished *anchor* vertex. Vertices are dense indices `0..n`.
//! The layered cycle flattens vertex `(i, s)` to index `i * k + (s - 1)`,
//! so layer operations elsewhere reduce to index arithmetic.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Immutable simple connected graph with a distinguished anchor vertex.
///
/// Bipartiteness is determined once at construction and cached: integer-line
/// homomorphisms exist if and only if the graph is bipartite, so downstream
/// code consults [`Graph::is_bipartite`] before enumerating or sampling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    name: String,
    adjacency: Vec<Vec<usize>>,
    anchor: usize,
    bipartite: bool,
    /// Parity of the BFS distance from the anchor.
    parity: Vec<u8>,
}

impl Graph {
    /// Builds a graph from an edge list.
    ///
    /// Duplicate edges (in either orientation) are collapsed; self-loops are
    /// rejected, as are disconnected graphs and out-of-range endpoints.
    pub fn from_edges<I>(name: impl Into<String>, n: usize, anchor: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let name = name.into();
        if n == 0 {
            return Err(Error::InvalidGraph(format!("`{name}` has no vertices")));
        }
        if anchor >= n {
            return Err(Error::VertexOutOfRange {
                vertex: anchor,
                size: n,
            });
        }
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, size: n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, size: n });
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }

        // Single BFS from the anchor settles connectivity, distance parity,
        // and bipartiteness (an edge within a parity class is an odd cycle).
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        dist[anchor] = 0;
        queue.push_back(anchor);
        let mut seen = 1usize;
        while let Some(v) = queue.pop_front() {
            for &u in &adjacency[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    seen += 1;
                    queue.push_back(u);
                }
            }
        }
        if seen != n {
            return Err(Error::InvalidGraph(format!(
                "`{name}` is disconnected ({seen} of {n} vertices reachable)"
            )));
        }
        let parity: Vec<u8> = dist.iter().map(|&d| (d % 2) as u8).collect();
        let bipartite = (0..n).all(|v| adjacency[v].iter().all(|&u| parity[u] != parity[v]));

        Ok(Graph {
            name,
            adjacency,
            anchor,
            bipartite,
            parity,
        })
    }

    /// Parses the CLI edge-list format: first line `n anchor`, then one
    /// `u v` pair per line. Blank lines and `#` comments are skipped.
    pub fn from_edge_list_text(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty edge-list input".into()))?;
        let mut parts = header.split_whitespace();
        let n: usize = parse_field(parts.next(), "vertex count")?;
        let anchor: usize = parse_field(parts.next(), "anchor")?;
        let mut edges = Vec::new();
        for line in lines {
            let mut parts = line.split_whitespace();
            let u: usize = parse_field(parts.next(), "edge endpoint")?;
            let v: usize = parse_field(parts.next(), "edge endpoint")?;
            edges.push((u, v));
        }
        Graph::from_edges(name, n, anchor, edges)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty graphs
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartite
    }

    /// Parity of the BFS distance from the anchor. On a bipartite graph this
    /// is the two-coloring, and doubles as the canonical starting
    /// homomorphism for the heat-bath chain.
    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// BFS distances from `v` to every vertex.
    pub fn bfs_distances(&self, v: usize) -> Vec<usize> {
        let n = self.len();
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        dist[v] = 0;
        queue.push_back(v);
        while let Some(w) = queue.pop_front() {
            for &u in &self.adjacency[w] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[w] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Vertices in BFS order from the anchor, ties broken by index.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.len());
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::new();
        seen[self.anchor] = true;
        queue.push_back(self.anchor);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &u in &self.adjacency[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        order
    }

    /// The ball of radius `r` centered at `v`.
    pub fn ball(&self, v: usize, r: usize) -> Result<Ball> {
        if v >= self.len() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                size: self.len(),
            });
        }
        let dist = self.bfs_distances(v);
        let mut members = Vec::new();
        let mut boundary = Vec::new();
        for (u, &d) in dist.iter().enumerate() {
            if d <= r {
                members.push(u);
                if d == r {
                    boundary.push(u);
                }
            }
        }
        // At r = 0 the boundary is the whole (singleton) ball, which the
        // `d == r` rule already produces. The ball is of exact radius iff
        // some member sits at distance exactly r.
        let exact = !boundary.is_empty();
        Ok(Ball {
            center: v,
            radius: r,
            members,
            boundary,
            exact,
        })
    }

    /// Maximal size of a radius-`r` ball over all centers.
    pub fn max_ball_size(&self, r: usize) -> usize {
        (0..self.len())
            .map(|v| self.ball(v, r).expect("center in range").members.len())
            .max()
            .unwrap_or(0)
    }

    /// Greedily collects pairwise disjoint balls of exact radius `r`, none of
    /// which contains a forbidden vertex.
    ///
    /// Centers are tried in increasing index order so runs are reproducible.
    /// Picking a center removes everything within distance `r` of its ball
    /// from the candidate pool, which keeps later balls disjoint from it.
    /// With `S = max_ball_size(r)`, the result has at least
    /// `floor((n - |forbidden|) / S^2) - 1` balls whenever the forbidden set
    /// is empty or the singleton anchor (the cases the range bound uses).
    pub fn disjoint_exact_balls(&self, r: usize, forbidden: &[usize]) -> Vec<Ball> {
        let n = self.len();
        let mut available = vec![true; n];
        for &f in forbidden {
            if f >= n {
                continue;
            }
            // A center within distance r of a forbidden vertex would put
            // that vertex inside its ball.
            for (u, &d) in self.bfs_distances(f).iter().enumerate() {
                if d <= r {
                    available[u] = false;
                }
            }
        }
        let mut balls = Vec::new();
        for v in 0..n {
            if !available[v] {
                continue;
            }
            let ball = self.ball(v, r).expect("center in range");
            if !ball.exact {
                continue;
            }
            for &w in &ball.members {
                for (u, &d) in self.bfs_distances(w).iter().enumerate() {
                    if d <= r {
                        available[u] = false;
                    }
                }
            }
            balls.push(ball);
        }
        balls
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} vertices, {} edges, anchor {})",
            self.name,
            self.len(),
            self.edge_count(),
            self.anchor
        )
    }
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, what: &str) -> Result<T> {
    field
        .ok_or_else(|| Error::Parse(format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::Parse(format!("malformed {what}")))
}

/// A BFS ball: all vertices within distance `radius` of `center`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub center: usize,
    pub radius: usize,
    /// Vertices at distance at most `radius` from the center, sorted.
    pub members: Vec<usize>,
    /// Members at distance exactly `radius` (the whole ball when radius is 0).
    pub boundary: Vec<usize>,
    /// True iff some member is at distance at least `radius` from the center.
    pub exact: bool,
}

impl Ball {
    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn is_disjoint(&self, other: &Ball) -> bool {
        self.members.iter().all(|&v| !other.contains(v))
    }
}

/// A named graph family with its size parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// Interval of length `n`: `n + 1` vertices, `n` edges.
    Path(usize),
    /// Cycle on `n` vertices.
    Cycle(usize),
    /// `n x n` torus; vertex `(i, j)` is index `i * n + j`.
    Torus(usize),
    /// Layered cycle: `n` layers of `k` vertices, consecutive layers fully
    /// joined; vertex `(i, s)` is index `i * k + (s - 1)`, anchored at `(0, 1)`.
    Cnk { n: usize, k: usize },
    /// `d`-dimensional hypercube on `2^d` vertices.
    Hypercube(usize),
}

impl GeneratorSpec {
    /// Parses specs of the form `path:10`, `cycle:8`, `torus:5`, `cnk:4:3`,
    /// `hypercube:3`.
    pub fn parse(s: &str) -> Result<Self> {
        let err = || Error::InvalidGenerator(s.to_string());
        let mut parts = s.split(':');
        let kind = parts.next().ok_or_else(err)?;
        let mut num = || -> Result<usize> {
            parts
                .next()
                .ok_or_else(err)?
                .trim()
                .parse()
                .map_err(|_| err())
        };
        let spec = match kind.trim() {
            "path" => GeneratorSpec::Path(num()?),
            "cycle" => GeneratorSpec::Cycle(num()?),
            "torus" => GeneratorSpec::Torus(num()?),
            "cnk" => GeneratorSpec::Cnk {
                n: num()?,
                k: num()?,
            },
            "hypercube" => GeneratorSpec::Hypercube(num()?),
            _ => return Err(err()),
        };
        if parts.next().is_some() {
            return Err(err());
        }
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let domain = |msg: String| Err(Error::Domain(msg));
        match *self {
            GeneratorSpec::Path(n) if n < 1 => domain("path length must be >= 1".into()),
            GeneratorSpec::Cycle(n) if n < 3 => domain("cycle needs >= 3 vertices".into()),
            GeneratorSpec::Torus(n) if n < 2 => domain("torus side must be >= 2".into()),
            GeneratorSpec::Cnk { n, .. } if n < 2 => {
                domain("layered cycle needs >= 2 layers".into())
            }
            GeneratorSpec::Cnk { k, .. } if k < 1 => {
                domain("layered cycle needs >= 1 vertex per layer".into())
            }
            GeneratorSpec::Hypercube(d) if d < 1 => {
                domain("hypercube dimension must be >= 1".into())
            }
            _ => Ok(()),
        }
    }

    /// Builds the graph. The anchor is vertex 0 in every family; for the
    /// layered cycle that is the vertex `(0, 1)`.
    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        match *self {
            GeneratorSpec::Path(n) => {
                Graph::from_edges(self.to_string(), n + 1, 0, (0..n).map(|i| (i, i + 1)))
            }
            GeneratorSpec::Cycle(n) => {
                Graph::from_edges(self.to_string(), n, 0, (0..n).map(|i| (i, (i + 1) % n)))
            }
            GeneratorSpec::Torus(n) => {
                let idx = |i: usize, j: usize| (i % n) * n + (j % n);
                let mut edges = Vec::with_capacity(2 * n * n);
                for i in 0..n {
                    for j in 0..n {
                        edges.push((idx(i, j), idx(i + 1, j)));
                        edges.push((idx(i, j), idx(i, j + 1)));
                    }
                }
                // from_edges collapses the parallel relations of the 2x2 case
                Graph::from_edges(self.to_string(), n * n, 0, edges)
            }
            GeneratorSpec::Cnk { n, k } => {
                let idx = |i: usize, s: usize| (i % n) * k + (s - 1);
                let mut edges = Vec::with_capacity(n * k * k);
                for i in 0..n {
                    for s in 1..=k {
                        for t in 1..=k {
                            edges.push((idx(i, s), idx(i + 1, t)));
                        }
                    }
                }
                Graph::from_edges(self.to_string(), n * k, 0, edges)
            }
            GeneratorSpec::Hypercube(d) => {
                let n = 1usize << d;
                let mut edges = Vec::with_capacity(n * d / 2);
                for v in 0..n {
                    for b in 0..d {
                        let u = v ^ (1 << b);
                        if v < u {
                            edges.push((v, u));
                        }
                    }
                }
                Graph::from_edges(self.to_string(), n, 0, edges)
            }
        }
    }

    /// Like [`GeneratorSpec::build`] but rejects families that cannot carry a
    /// homomorphism into the integer line (odd cycles, odd layered cycles).
    pub fn build_bipartite(&self) -> Result<Graph> {
        let graph = self.build()?;
        if !graph.is_bipartite() {
            return Err(Error::NotBipartite(graph.name().to_string()));
        }
        Ok(graph)
    }

    /// Tries to parse `input` as a generator spec, falling back to reading it
    /// as the path of an edge-list file.
    pub fn graph_from_arg(input: &str) -> Result<Graph> {
        match GeneratorSpec::parse(input) {
            Ok(spec) => spec.build(),
            Err(spec_err) => {
                if std::path::Path::new(input).is_file() {
                    let text = std::fs::read_to_string(input)?;
                    Graph::from_edge_list_text(input, &text)
                } else {
                    Err(spec_err)
                }
            }
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GeneratorSpec::Path(n) => write!(f, "path:{n}"),
            GeneratorSpec::Cycle(n) => write!(f, "cycle:{n}"),
            GeneratorSpec::Torus(n) => write!(f, "torus:{n}"),
            GeneratorSpec::Cnk { n, k } => write!(f, "cnk:{n}:{k}"),
            GeneratorSpec::Hypercube(d) => write!(f, "hypercube:{d}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_simple_symmetric_connected(g: &Graph) {
        for v in 0..g.len() {
            for &u in g.neighbors(v) {
                assert_ne!(u, v, "self-loop at {v}");
                assert!(g.has_edge(u, v), "asymmetric edge {v}-{u}");
            }
            let mut sorted = g.neighbors(v).to_vec();
            sorted.dedup();
            assert_eq!(sorted.len(), g.degree(v), "duplicate edges at {v}");
        }
        assert!(g.bfs_distances(g.anchor()).iter().all(|&d| d != usize::MAX));
    }

    #[test]
    fn generators_are_simple_symmetric_connected() {
        let specs = [
            GeneratorSpec::Path(1),
            GeneratorSpec::Path(10),
            GeneratorSpec::Cycle(3),
            GeneratorSpec::Cycle(8),
            GeneratorSpec::Torus(2),
            GeneratorSpec::Torus(5),
            GeneratorSpec::Cnk { n: 2, k: 2 },
            GeneratorSpec::Cnk { n: 4, k: 3 },
            GeneratorSpec::Hypercube(3),
        ];
        for spec in specs {
            let g = spec.build().unwrap();
            check_simple_symmetric_connected(&g);
            assert_eq!(g.anchor(), 0);
        }
    }

    #[test]
    fn torus_has_degree_four() {
        let g = GeneratorSpec::Torus(5).build().unwrap();
        assert_eq!(g.len(), 25);
        assert!((0..g.len()).all(|v| g.degree(v) == 4));
    }

    #[test]
    fn cnk_degree_is_twice_k() {
        let g = GeneratorSpec::Cnk { n: 4, k: 3 }.build().unwrap();
        assert_eq!(g.len(), 12);
        assert!((0..g.len()).all(|v| g.degree(v) == 6));
    }

    #[test]
    fn smallest_layered_cycle_is_complete_bipartite() {
        // cnk(2,2) collapses the parallel relations into K_{2,2}.
        let g = GeneratorSpec::Cnk { n: 2, k: 2 }.build().unwrap();
        assert_eq!(g.len(), 4);
        for zero_layer in [0, 1] {
            for one_layer in [2, 3] {
                assert!(g.has_edge(zero_layer, one_layer));
            }
        }
        assert!(!g.has_edge(0, 1));
        assert!(!g.has_edge(2, 3));
    }

    #[test]
    fn bipartite_flags() {
        assert!(GeneratorSpec::Cycle(8).build().unwrap().is_bipartite());
        assert!(!GeneratorSpec::Cycle(7).build().unwrap().is_bipartite());
        assert!(GeneratorSpec::Cnk { n: 6, k: 2 }
            .build()
            .unwrap()
            .is_bipartite());
        assert!(!GeneratorSpec::Cnk { n: 3, k: 2 }
            .build()
            .unwrap()
            .is_bipartite());
        assert!(GeneratorSpec::Hypercube(4).build().unwrap().is_bipartite());
        assert!(GeneratorSpec::Torus(4).build().unwrap().is_bipartite());
        assert!(!GeneratorSpec::Torus(5).build().unwrap().is_bipartite());
    }

    #[test]
    fn bipartite_guarantee_rejects_odd_families() {
        assert!(GeneratorSpec::Cycle(7).build_bipartite().is_err());
        assert!(GeneratorSpec::Cnk { n: 3, k: 2 }.build_bipartite().is_err());
        assert!(GeneratorSpec::Cycle(8).build_bipartite().is_ok());
    }

    #[test]
    fn size_zero_is_rejected() {
        assert!(GeneratorSpec::parse("path:0").is_err());
        assert!(GeneratorSpec::parse("cnk:0:2").is_err());
        assert!(GeneratorSpec::parse("hypercube:0").is_err());
    }

    #[test]
    fn spec_parsing_round_trips() {
        for s in ["path:10", "cycle:8", "torus:5", "cnk:4:3", "hypercube:3"] {
            let spec = GeneratorSpec::parse(s).unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!(GeneratorSpec::parse("blob:3").is_err());
        assert!(GeneratorSpec::parse("cnk:4").is_err());
        assert!(GeneratorSpec::parse("path:4:2").is_err());
    }

    #[test]
    fn ball_on_path_interior() {
        let g = GeneratorSpec::Path(3).build().unwrap();
        let b = g.ball(1, 1).unwrap();
        assert_eq!(b.members, vec![0, 1, 2]);
        assert_eq!(b.boundary, vec![0, 2]);
        assert!(b.exact);
    }

    #[test]
    fn ball_radius_zero() {
        let g = GeneratorSpec::Cycle(8).build().unwrap();
        let b = g.ball(5, 0).unwrap();
        assert_eq!(b.members, vec![5]);
        assert_eq!(b.boundary, vec![5]);
        assert!(b.exact);
    }

    #[test]
    fn torus_unit_ball_has_five_vertices() {
        let g = GeneratorSpec::Torus(5).build().unwrap();
        let b = g.ball(0, 1).unwrap();
        assert_eq!(b.members.len(), 5);
    }

    #[test]
    fn ball_members_grow_with_radius() {
        let g = GeneratorSpec::Torus(4).build().unwrap();
        for v in 0..g.len() {
            for r in 0..4 {
                let small = g.ball(v, r).unwrap();
                let big = g.ball(v, r + 1).unwrap();
                assert!(small.members.iter().all(|&u| big.contains(u)));
            }
        }
    }

    #[test]
    fn max_ball_size_examples() {
        let g = GeneratorSpec::Path(10).build().unwrap();
        assert_eq!(g.max_ball_size(0), 1);
        assert_eq!(g.max_ball_size(2), 5);
        let t = GeneratorSpec::Torus(5).build().unwrap();
        for r in 0..3 {
            assert!(t.max_ball_size(r) <= (2 * r + 1) * (2 * r + 1));
        }
    }

    #[test]
    fn max_ball_size_degree_bound() {
        for spec in [GeneratorSpec::Torus(4), GeneratorSpec::Cnk { n: 4, k: 2 }] {
            let g = spec.build().unwrap();
            let d = g.max_degree();
            for r in 0..4usize {
                assert!(g.max_ball_size(r) <= (d + 1).pow(r as u32));
            }
        }
    }

    #[test]
    fn disjoint_balls_radius_zero_is_every_free_vertex() {
        let g = GeneratorSpec::Cycle(8).build().unwrap();
        let balls = g.disjoint_exact_balls(0, &[g.anchor()]);
        assert_eq!(balls.len(), 7);
        assert!(balls.iter().all(|b| b.members.len() == 1));
    }

    #[test]
    fn disjoint_balls_on_cycle_are_disjoint_and_exact() {
        let g = GeneratorSpec::Cycle(8).build().unwrap();
        let balls = g.disjoint_exact_balls(2, &[]);
        for b in &balls {
            assert!(b.exact);
            assert_eq!(b.radius, 2);
        }
        for (i, a) in balls.iter().enumerate() {
            for b in &balls[i + 1..] {
                assert!(a.is_disjoint(b));
            }
        }
        let s = g.max_ball_size(2);
        let bound = (g.len() / (s * s)) as isize - 1;
        assert!(balls.len() as isize >= bound);
    }

    #[test]
    fn disjoint_balls_on_path_nine() {
        // 9-path = interval of length 9, 10 vertices; S = 3 at r = 1.
        let g = GeneratorSpec::Path(9).build().unwrap();
        let balls = g.disjoint_exact_balls(1, &[]);
        assert!(!balls.is_empty());
    }

    #[test]
    fn disjoint_balls_avoid_forbidden() {
        let g = GeneratorSpec::Torus(4).build().unwrap();
        let balls = g.disjoint_exact_balls(1, &[g.anchor()]);
        assert!(balls.iter().all(|b| !b.contains(g.anchor())));
        assert!(!balls.is_empty());
    }

    #[test]
    fn edge_list_round_trip() {
        let text = "4 0\n0 1\n1 2\n2 3\n3 0\n";
        let g = Graph::from_edge_list_text("square", text).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.edge_count(), 4);
        assert!(g.is_bipartite());
        assert!(Graph::from_edge_list_text("bad", "3 0\n0 1\n").is_err()); // disconnected
        assert!(Graph::from_edge_list_text("loop", "2 0\n0 0\n1 0\n").is_err());
    }
}
