//! Immutable undirected graphs, standard families, and lattice tori.

use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range (n = {1})")]
    OutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

/// An immutable simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Build a graph on `n` vertices from an edge list.  Rejects self-loops,
    /// duplicate edges, and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::OutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::OutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, row) in adj.iter_mut().enumerate() {
            row.sort_unstable();
            if row.windows(2).any(|w| w[0] == w[1]) {
                let v = row.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
                return Err(GraphError::DuplicateEdge(u, v));
            }
        }
        Ok(Graph {
            adj,
            m: edges.len(),
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n() {
            return Err(GraphError::InvalidParam(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// `N[v]`: the closed neighborhood, sorted ascending.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut nv = self.adj[v].clone();
        let pos = nv.partition_point(|&u| u < v);
        nv.insert(pos, v);
        nv
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Look up a vertex by label (linear scan; labels are test/CLI sugar).
    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels
            .as_ref()?
            .iter()
            .position(|l| l == label)
    }

    /// BFS distances from `src`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[src] = Some(0);
        let mut q = VecDeque::from([src]);
        while let Some(u) = q.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    q.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.bfs_distances(u)[v]
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.bfs_distances(0).iter().all(|d| d.is_some())
    }

    /// All twin pairs: `u`, `v` with `N(u) = N(v)` (open twins) or
    /// `N[u] = N[v]` (closed twins).  Twin-freeness is exactly what, together
    /// with minimum degree 2, makes an ERR:LD set possible.
    pub fn find_twins(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in u + 1..self.n() {
                if self.is_twin_pair(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_twin_free(&self) -> bool {
        for u in 0..self.n() {
            for v in u + 1..self.n() {
                if self.is_twin_pair(u, v) {
                    return false;
                }
            }
        }
        true
    }

    fn is_twin_pair(&self, u: usize, v: usize) -> bool {
        if self.adj[u] == self.adj[v] {
            return true; // open twins
        }
        self.closed_neighborhood(u) == self.closed_neighborhood(v) // closed twins
    }

    /// Length of a shortest cycle, or `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for src in 0..self.n() {
            // BFS recording parents; a non-tree edge at depths d1, d2 closes a
            // cycle of length d1 + d2 + 1 through src.
            let mut dist = vec![usize::MAX; self.n()];
            let mut parent = vec![usize::MAX; self.n()];
            dist[src] = 0;
            let mut q = VecDeque::from([src]);
            while let Some(u) = q.pop_front() {
                for &v in &self.adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        q.push_back(v);
                    } else if parent[u] != v {
                        let c = dist[u] + dist[v] + 1;
                        if best.map_or(true, |b| c < b) {
                            best = Some(c);
                        }
                    }
                }
            }
        }
        best
    }
}

/// The infinite lattices (and the two-row ladder) supported by the grid
/// pattern machinery, realized here as finite tori.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeKind {
    /// Square grid, degree 4.
    Sq,
    /// Triangular grid: square grid plus one diagonal per cell, degree 6.
    Tri,
    /// Hexagonal grid in brick-wall form: square grid rows with vertical
    /// edges only where `r + c` is even, degree 3.  Requires even dimensions.
    Hex,
    /// King grid: square grid plus both diagonals, degree 8.
    King,
    /// The ladder `P_inf x P_2`: two rows, wrap only along columns, degree 3.
    Ladder,
}

impl LatticeKind {
    pub fn parse(s: &str) -> Option<LatticeKind> {
        match s.to_ascii_uppercase().as_str() {
            "SQ" => Some(LatticeKind::Sq),
            "TRI" => Some(LatticeKind::Tri),
            "HEX" => Some(LatticeKind::Hex),
            "KING" => Some(LatticeKind::King),
            "LADDER" => Some(LatticeKind::Ladder),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LatticeKind::Sq => "SQ",
            LatticeKind::Tri => "TRI",
            LatticeKind::Hex => "HEX",
            LatticeKind::King => "KING",
            LatticeKind::Ladder => "LADDER",
        }
    }

    /// Vertex degree in the infinite lattice.
    pub fn degree(&self) -> usize {
        match self {
            LatticeKind::Sq => 4,
            LatticeKind::Tri => 6,
            LatticeKind::Hex => 3,
            LatticeKind::King => 8,
            LatticeKind::Ladder => 3,
        }
    }
}

/// A `rows x cols` torus patch of the given lattice, vertex `(r, c)` at index
/// `r * cols + c`, labeled `"(r,c)"`.
///
/// Dimensions must be at least 5 in each wrapped direction so that every
/// radius-2 ball is isometric to the infinite lattice (HEX additionally needs
/// even dimensions for the brick-wall parity; LADDER has exactly 2 rows and
/// wraps only along columns, cols >= 6).
pub fn make_torus(kind: LatticeKind, rows: usize, cols: usize) -> Result<Graph, GraphError> {
    match kind {
        LatticeKind::Ladder => {
            if rows != 2 {
                return Err(GraphError::InvalidParam(
                    "LADDER torus has exactly 2 rows".into(),
                ));
            }
            if cols < 6 {
                return Err(GraphError::InvalidParam(
                    "LADDER torus needs cols >= 6".into(),
                ));
            }
        }
        LatticeKind::Hex => {
            if rows < 5 || cols < 5 {
                return Err(GraphError::InvalidParam(
                    "torus needs rows, cols >= 5".into(),
                ));
            }
            if rows % 2 != 0 || cols % 2 != 0 {
                return Err(GraphError::InvalidParam(
                    "HEX torus needs even rows and cols".into(),
                ));
            }
        }
        _ => {
            if rows < 5 || cols < 5 {
                return Err(GraphError::InvalidParam(
                    "torus needs rows, cols >= 5".into(),
                ));
            }
        }
    }
    let id = |r: usize, c: usize| (r % rows) * cols + (c % cols);
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            match kind {
                LatticeKind::Sq => {
                    edges.push((id(r, c), id(r, c + 1)));
                    edges.push((id(r, c), id(r + 1, c)));
                }
                LatticeKind::Tri => {
                    edges.push((id(r, c), id(r, c + 1)));
                    edges.push((id(r, c), id(r + 1, c)));
                    edges.push((id(r, c), id(r + 1, c + 1)));
                }
                LatticeKind::King => {
                    edges.push((id(r, c), id(r, c + 1)));
                    edges.push((id(r, c), id(r + 1, c)));
                    edges.push((id(r, c), id(r + 1, c + 1)));
                    edges.push((id(r, c + 1), id(r + 1, c)));
                }
                LatticeKind::Hex => {
                    edges.push((id(r, c), id(r, c + 1)));
                    if (r + c) % 2 == 0 {
                        edges.push((id(r, c), id(r + 1, c)));
                    }
                }
                LatticeKind::Ladder => {
                    edges.push((id(r, c), id(r, c + 1)));
                    if r == 0 {
                        edges.push((id(0, c), id(1, c)));
                    }
                }
            }
        }
    }
    let labels = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| format!("({r},{c})")))
        .collect();
    Graph::new(rows * cols, &edges)?.with_labels(labels)
}

/// Cycle `C_n`, `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParam("cycle needs n >= 3".into()));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges)
}

/// Path `P_n`, `n >= 1`.
pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParam("path needs n >= 1".into()));
    }
    let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Graph::new(n, &edges)
}

/// The Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9 where
/// `i + 5` is adjacent to `((i + 2) mod 5) + 5`, spokes `i`-`(i+5)`.
/// Labeled `v1..v10`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
        edges.push((i, i + 5));
    }
    let labels = (1..=10).map(|i| format!("v{i}")).collect();
    Graph::new(10, &edges)
        .expect("petersen is simple")
        .with_labels(labels)
        .expect("10 labels")
}

/// Open ladder segment `P_len x P_2` (no wrap), vertex `(r, c)` at `r*len+c`.
pub fn ladder_segment(len: usize) -> Result<Graph, GraphError> {
    if len < 2 {
        return Err(GraphError::InvalidParam("ladder needs len >= 2".into()));
    }
    let mut edges = Vec::new();
    for c in 0..len {
        edges.push((c, len + c));
        if c + 1 < len {
            edges.push((c, c + 1));
            edges.push((len + c, len + c + 1));
        }
    }
    Graph::new(2 * len, &edges)
}

/// Ball of the infinite 3-regular tree: a root with 3 children, every other
/// internal vertex with 2 children, out to the given radius.  Returns the
/// graph and the depth of each vertex.
pub fn tree3_ball(radius: usize) -> (Graph, Vec<usize>) {
    let mut edges = Vec::new();
    let mut depth = vec![0usize];
    let mut frontier = vec![0usize];
    let mut next_id = 1usize;
    for d in 1..=radius {
        let mut next = Vec::new();
        for &p in &frontier {
            let kids = if p == 0 { 3 } else { 2 };
            for _ in 0..kids {
                edges.push((p, next_id));
                depth.push(d);
                next.push(next_id);
                next_id += 1;
            }
        }
        frontier = next;
    }
    (
        Graph::new(next_id, &edges).expect("tree is simple"),
        depth,
    )
}

/// Cubic graph from an LCF-style description: Hamiltonian cycle `0..n-1`
/// plus a chord `i -> i + shift[i % shift.len()]` for each `i`.
pub fn lcf(n: usize, shifts: &[i64]) -> Result<Graph, GraphError> {
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let mut chords = std::collections::BTreeSet::new();
    for i in 0..n {
        let s = shifts[i % shifts.len()];
        let j = ((i as i64 + s).rem_euclid(n as i64)) as usize;
        let key = (i.min(j), i.max(j));
        chords.insert(key);
    }
    edges.extend(chords);
    Graph::new(n, &edges)
}
