//! Finite simple graphs with symmetric-arc structure.
//!
//! Each edge {u, v} induces the two ordered arcs (u, v) and (v, u); the walk
//! operators act on functions over arcs, so this module provides the arc
//! enumeration, the reversal involution, the in/out incidence matrices, and
//! the invariants (regularity, connectivity, bipartiteness, first Betti
//! number) the spectral formulas consume. Matrices are exact integer-valued
//! `f64` matrices; lift them with [`crate::linalg::to_complex`] when needed.

use std::collections::HashSet;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Simple undirected graph: no self-loops, no repeated edges.
/// Edge order is preserved from input; it fixes the arc layout bit-for-bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Validating constructor.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (idx, &(u, v)) in edges.iter().enumerate() {
            let line = idx + 1;
            if u == v {
                return Err(Error::SelfLoop { line, vertex: u });
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), vertex_count });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge { line, u, v });
            }
        }
        Ok(Graph { vertex_count, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of arcs, `2·|E|`.
    pub fn arc_count(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertex_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }
}

/// Parse the edge-list format: one edge per line as two 0-based decimal
/// integers separated by whitespace; `#` lines and blank lines ignored.
/// The vertex count is `1 + max index`.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut max_vertex = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let (u, v) = match fields.as_slice() {
            [a, b] => match (a.parse::<usize>(), b.parse::<usize>()) {
                (Ok(u), Ok(v)) => (u, v),
                _ => return Err(Error::MalformedEdge { line, text: trimmed.to_string() }),
            },
            _ => return Err(Error::MalformedEdge { line, text: trimmed.to_string() }),
        };
        if u == v {
            return Err(Error::SelfLoop { line, vertex: u });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::DuplicateEdge { line, u, v });
        }
        max_vertex = max_vertex.max(u).max(v);
        edges.push((u, v));
    }
    if edges.is_empty() {
        return Err(Error::EmptyEdgeList);
    }
    Graph::new(max_vertex + 1, edges)
}

/// The symmetric arcs of a graph. Edge `i = {u, v}` yields arc `2i = (u, v)`
/// and arc `2i + 1 = (v, u)`; reversal is the involution `e ↔ e ^ 1`.
#[derive(Debug, Clone)]
pub struct ArcSet {
    arcs: Vec<(usize, usize)>,
}

impl ArcSet {
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Origin vertex `o(e)`.
    pub fn origin(&self, e: usize) -> usize {
        self.arcs[e].0
    }

    /// Terminal vertex `t(e)`.
    pub fn terminus(&self, e: usize) -> usize {
        self.arcs[e].1
    }

    /// The reversed arc `ē`; fixed-point-free involution.
    pub fn reversal(&self, e: usize) -> usize {
        e ^ 1
    }
}

/// Enumerate the arcs of `g` edge-by-edge in input order.
pub fn arc_structure(g: &Graph) -> ArcSet {
    let mut arcs = Vec::with_capacity(g.arc_count());
    for &(u, v) in g.edges() {
        arcs.push((u, v));
        arcs.push((v, u));
    }
    ArcSet { arcs }
}

/// In/out incidence matrices over arcs: `K_in[u, e] = 1` iff `t(e) = u`,
/// `K_out[u, e] = 1` iff `o(e) = u`. Satisfies `K_out = K_in · J` and
/// `K_in · K_outᵀ = adjacency` exactly.
pub fn incidence_matrices(g: &Graph) -> (DMatrix<f64>, DMatrix<f64>) {
    let arcs = arc_structure(g);
    let n = g.vertex_count();
    let m = arcs.arc_count();
    let mut k_in = DMatrix::zeros(n, m);
    let mut k_out = DMatrix::zeros(n, m);
    for e in 0..m {
        k_in[(arcs.terminus(e), e)] = 1.0;
        k_out[(arcs.origin(e), e)] = 1.0;
    }
    (k_in, k_out)
}

/// The arc-reversal permutation matrix `J`: `(Jψ)(e) = ψ(ē)`.
pub fn reversal_permutation(g: &Graph) -> DMatrix<f64> {
    let m = g.arc_count();
    let mut j = DMatrix::zeros(m, m);
    for e in 0..m {
        j[(e, e ^ 1)] = 1.0;
    }
    j
}

/// Symmetric 0/1 adjacency matrix.
pub fn adjacency(g: &Graph) -> DMatrix<f64> {
    let n = g.vertex_count();
    let mut a = DMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    a
}

/// Structural invariants of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphInvariants {
    /// Common degree when the graph is regular, `None` otherwise.
    pub degree: Option<usize>,
    pub connected: bool,
    pub bipartite: bool,
    /// `|E| − |V| + 1`; the cycle-space dimension when connected.
    pub betti1: i64,
    /// A proper 2-coloring when bipartite.
    pub bipartition: Option<Vec<u8>>,
}

/// Compute the invariants. Non-regular and disconnected graphs are flagged
/// here, not rejected; walk builders that require regularity or connectivity
/// turn the flags into errors.
pub fn graph_invariants(g: &Graph) -> GraphInvariants {
    let n = g.vertex_count();
    let degrees = g.degree_sequence();
    let degree = if n > 0 && degrees.iter().all(|&d| d == degrees[0]) {
        Some(degrees[0])
    } else {
        None
    };

    let mut neighbors = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        neighbors[u].push(v);
        neighbors[v].push(u);
    }

    // BFS 2-coloring over every component: connectivity and bipartiteness in
    // one sweep.
    let mut color = vec![u8::MAX; n];
    let mut components = 0usize;
    let mut bipartite = true;
    for start in 0..n {
        if color[start] != u8::MAX {
            continue;
        }
        components += 1;
        color[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in &neighbors[u] {
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    bipartite = false;
                }
            }
        }
    }

    let connected = components <= 1;
    GraphInvariants {
        degree,
        connected,
        bipartite,
        betti1: g.edge_count() as i64 - n as i64 + 1,
        bipartition: if bipartite { Some(color) } else { None },
    }
}

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, edges).expect("complete graph is simple")
}

/// Complete bipartite graph K_{m,n} with parts {0..m} and {m..m+n}.
pub fn complete_bipartite(m: usize, n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..m {
        for v in 0..n {
            edges.push((u, m + v));
        }
    }
    Graph::new(m + n, edges).expect("complete bipartite graph is simple")
}

/// Cycle C_n, n ≥ 3.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter {
            name: "n",
            detail: format!("cycle needs n >= 3, got {n}"),
        });
    }
    let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, edges)
}

/// Petersen graph: outer 5-cycle, inner pentagram, five spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    for i in 0..5 {
        edges.push((i, 5 + i));
    }
    Graph::new(10, edges).expect("petersen graph is simple")
}

/// Built-in catalog: `k4`, `k5`, `k33`, `petersen`, and `cN` (e.g. `c12`).
pub fn builtin(name: &str) -> Result<Graph> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "k4" => Ok(complete(4)),
        "k5" => Ok(complete(5)),
        "k33" => Ok(complete_bipartite(3, 3)),
        "petersen" => Ok(petersen()),
        _ => {
            if let Some(num) = lower.strip_prefix('c') {
                if let Ok(n) = num.parse::<usize>() {
                    if n >= 3 {
                        return cycle(n);
                    }
                }
            }
            Err(Error::UnknownBuiltin(name.to_string()))
        }
    }
}

/// Sample a connected k-regular simple graph on `n` vertices via the pairing
/// (configuration) model with rejection. Deterministic for a given seed.
pub fn random_regular(n: usize, k: usize, seed: u64) -> Result<Graph> {
    if k == 0 || n <= k {
        return Err(Error::InvalidParameter {
            name: "n",
            detail: format!("need n > k >= 1 for a simple k-regular graph, got n = {n}, k = {k}"),
        });
    }
    if (n * k) % 2 != 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            detail: format!("n·k must be even, got n = {n}, k = {k}"),
        });
    }
    const MAX_ATTEMPTS: usize = 20_000;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(k)).collect();
    'attempt: for _ in 0..MAX_ATTEMPTS {
        stubs.shuffle(&mut rng);
        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(n * k / 2);
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || !seen.insert((u.min(v), u.max(v))) {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        let g = Graph::new(n, edges).expect("validated during pairing");
        if graph_invariants(&g).connected {
            return Ok(g);
        }
    }
    Err(Error::GenerationFailed { n, k, attempts: MAX_ATTEMPTS })
}
