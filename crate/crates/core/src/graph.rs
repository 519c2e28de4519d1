//! Immutable graph storage, edge-list / coordinate file I/O, and the
//! masked-traversal primitives shared by every solver.
//!
//! Algorithms never mutate adjacency. Vertex removal is expressed through
//! an [`AliveMask`] over the immutable [`Graph`], so any number of solver
//! runs can share one loaded graph.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::geometry::PolarPoint;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: expected two integer tokens, found {found:?}")]
    MalformedLine { line: usize, found: String },
    #[error("line {line}: {msg}")]
    MalformedCoordinate { line: usize, msg: String },
    #[error("vertex id {id} out of range for graph with {n} vertices")]
    VertexOutOfRange { id: u64, n: usize },
    #[error("traversal started at vertex {0}, which is not alive")]
    StartNotAlive(u32),
    #[error("coordinate file has {coords} entries but graph has {vertices} vertices")]
    CoordinateCountMismatch { coords: usize, vertices: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Simple undirected graph in CSR form with dense ids `0..n`.
///
/// Neighbor lists are sorted, self-loops and parallel edges are removed on
/// construction. Generated graphs carry per-vertex coordinates; graphs
/// loaded from plain edge lists do not.
#[derive(Debug, Clone)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    coords: Option<Vec<PolarPoint>>,
}

impl Graph {
    /// Builds a graph from an edge list, normalizing it to a simple
    /// undirected graph. Panics if an endpoint is `>= n`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut pairs: Vec<(u32, u32)> = edges
            .into_iter()
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        for &(u, v) in &pairs {
            assert!((v as usize) < n, "edge ({u}, {v}) exceeds vertex count {n}");
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut degree = vec![0usize; n];
        for &(u, v) in &pairs {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0usize;
        offsets.push(0);
        for d in &degree {
            acc += d;
            offsets.push(acc);
        }
        let mut cursor = offsets.clone();
        let mut targets = vec![0u32; acc];
        for &(u, v) in &pairs {
            targets[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            targets[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        // Sorted (u, v) insertion order already leaves each u-row sorted,
        // but the v-rows need it.
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Self {
            offsets,
            targets,
            coords: None,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.targets[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn average_degree(&self) -> f64 {
        if self.vertex_count() == 0 {
            0.0
        } else {
            self.targets.len() as f64 / self.vertex_count() as f64
        }
    }

    /// Iterates every edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.vertex_count() as u32).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn coordinates(&self) -> Option<&[PolarPoint]> {
        self.coords.as_deref()
    }

    /// Attaches per-vertex coordinates. Panics on a length mismatch.
    pub fn with_coordinates(mut self, coords: Vec<PolarPoint>) -> Self {
        assert_eq!(coords.len(), self.vertex_count());
        self.coords = Some(coords);
        self
    }
}

/// Tracks which vertices are still part of the residual graph.
#[derive(Debug, Clone)]
pub struct AliveMask {
    alive: Vec<bool>,
    alive_count: usize,
}

impl AliveMask {
    pub fn new(n: usize) -> Self {
        Self {
            alive: vec![true; n],
            alive_count: n,
        }
    }

    pub fn is_alive(&self, v: u32) -> bool {
        self.alive[v as usize]
    }

    /// Removes `v` from the residual graph; returns whether it was alive.
    pub fn kill(&mut self, v: u32) -> bool {
        if self.alive[v as usize] {
            self.alive[v as usize] = false;
            self.alive_count -= 1;
            true
        } else {
            false
        }
    }

    pub fn alive_count(&self) -> usize {
        self.alive_count
    }
}

/// Max-degree extraction with the global tie-break (smallest id first).
///
/// A bucket per residual degree holds lazily invalidated entries: a vertex
/// is pushed again whenever its degree drops, and stale entries are
/// discarded on extraction. Degrees only ever decrease, so the maximum
/// pointer moves monotonically and the total work is linear in the number
/// of degree changes.
#[derive(Debug)]
pub struct DegreeQueue {
    buckets: Vec<BinaryHeap<Reverse<u32>>>,
    degree: Vec<u32>,
    max_degree: usize,
}

impl DegreeQueue {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut max_degree = 0;
        let mut degree = Vec::with_capacity(n);
        for v in 0..n {
            let d = g.degree(v as u32);
            degree.push(d as u32);
            max_degree = max_degree.max(d);
        }
        let mut buckets = vec![BinaryHeap::new(); max_degree + 1];
        for v in 0..n {
            buckets[degree[v] as usize].push(Reverse(v as u32));
        }
        Self {
            buckets,
            degree,
            max_degree,
        }
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.degree[v as usize]
    }

    /// Records that `v` lost one residual neighbor.
    pub fn decrease(&mut self, v: u32) {
        let d = &mut self.degree[v as usize];
        debug_assert!(*d > 0);
        *d -= 1;
        self.buckets[*d as usize].push(Reverse(v));
    }

    /// Extracts the alive vertex of maximum residual degree, ties broken
    /// by smallest id. Returns `(vertex, degree)`.
    pub fn pop_max(&mut self, alive: &AliveMask) -> Option<(u32, u32)> {
        loop {
            match self.buckets[self.max_degree].pop() {
                Some(Reverse(v)) => {
                    if alive.is_alive(v) && self.degree[v as usize] as usize == self.max_degree {
                        return Some((v, self.max_degree as u32));
                    }
                }
                None => {
                    if self.max_degree == 0 {
                        return None;
                    }
                    self.max_degree -= 1;
                }
            }
        }
    }
}

/// Outcome of a size-bounded component search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundedComponent {
    /// The full component, in breadth-first discovery order.
    Within(Vec<u32>),
    /// The component holds more than `limit` vertices; the search stopped
    /// after discovering `limit + 1` of them.
    Exceeded,
}

/// Reusable traversal state. Repeated bounded searches cost time
/// proportional to the vertices they actually visit; the epoch stamp makes
/// per-call cleanup unnecessary.
#[derive(Debug)]
pub struct BfsScratch {
    stamp: Vec<u32>,
    epoch: u32,
    queue: VecDeque<u32>,
}

impl BfsScratch {
    pub fn new(n: usize) -> Self {
        Self {
            stamp: vec![0; n],
            epoch: 0,
            queue: VecDeque::new(),
        }
    }

    fn next_epoch(&mut self) -> u32 {
        if self.epoch == u32::MAX {
            self.stamp.fill(0);
            self.epoch = 0;
        }
        self.epoch += 1;
        self.epoch
    }

    /// Breadth-first search over alive vertices only, limited to `limit`
    /// discoveries. Errors if `start` is not alive.
    pub fn bounded_component(
        &mut self,
        g: &Graph,
        mask: &AliveMask,
        start: u32,
        limit: usize,
    ) -> Result<BoundedComponent, GraphError> {
        if !mask.is_alive(start) {
            return Err(GraphError::StartNotAlive(start));
        }
        let epoch = self.next_epoch();
        self.queue.clear();
        self.queue.push_back(start);
        self.stamp[start as usize] = epoch;
        let mut found = vec![start];
        while let Some(u) = self.queue.pop_front() {
            for &w in g.neighbors(u) {
                if mask.is_alive(w) && self.stamp[w as usize] != epoch {
                    self.stamp[w as usize] = epoch;
                    found.push(w);
                    if found.len() > limit {
                        return Ok(BoundedComponent::Exceeded);
                    }
                    self.queue.push_back(w);
                }
            }
        }
        Ok(BoundedComponent::Within(found))
    }
}

/// One-off wrapper around [`BfsScratch::bounded_component`].
pub fn bounded_component(
    g: &Graph,
    mask: &AliveMask,
    start: u32,
    limit: usize,
) -> Result<BoundedComponent, GraphError> {
    BfsScratch::new(g.vertex_count()).bounded_component(g, mask, start, limit)
}

/// Connected components of the alive subgraph, ordered by their smallest
/// vertex id; members sorted ascending.
pub fn connected_components(g: &Graph, mask: &AliveMask) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    let mut components = Vec::new();
    for start in 0..n as u32 {
        if !mask.is_alive(start) || seen[start as usize] {
            continue;
        }
        let mut members = vec![start];
        seen[start as usize] = true;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if mask.is_alive(w) && !seen[w as usize] {
                    seen[w as usize] = true;
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    components
}

/// True iff every edge of `g` has at least one endpoint in `cover`.
pub fn is_vertex_cover(g: &Graph, cover: &[u32]) -> bool {
    let mut member = vec![false; g.vertex_count()];
    for &v in cover {
        member[v as usize] = true;
    }
    (0..g.vertex_count() as u32)
        .all(|u| member[u as usize] || g.neighbors(u).iter().all(|&v| v < u || member[v as usize]))
}

/// An edge-list graph plus the original vertex labels, in first-seen order.
#[derive(Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub original_ids: Vec<u64>,
}

fn is_comment(line: &str) -> bool {
    line.is_empty() || line.starts_with('#') || line.starts_with('%')
}

/// Reads a whitespace-separated edge list.
///
/// Lines starting with `#` or `%` (and blank lines) are skipped. Each
/// remaining line must begin with two integer tokens; extra tokens are
/// ignored. Vertex labels are remapped to dense 0-based ids in first-seen
/// order; self-loops and duplicate edges are dropped.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<LoadedGraph, GraphError> {
    let mut ids: std::collections::HashMap<u64, u32> = std::collections::HashMap::new();
    let mut original_ids = Vec::new();
    let mut edges = Vec::new();
    let mut intern = |label: u64, ids: &mut std::collections::HashMap<u64, u32>| -> u32 {
        *ids.entry(label).or_insert_with(|| {
            original_ids.push(label);
            (original_ids.len() - 1) as u32
        })
    };
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if is_comment(line) {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let parse = |tok: Option<&str>| tok.and_then(|t| t.parse::<u64>().ok());
        match (parse(tokens.next()), parse(tokens.next())) {
            (Some(a), Some(b)) => {
                let u = intern(a, &mut ids);
                let v = intern(b, &mut ids);
                edges.push((u, v));
            }
            _ => {
                return Err(GraphError::MalformedLine {
                    line: idx + 1,
                    found: line.to_string(),
                })
            }
        }
    }
    let graph = Graph::from_edges(original_ids.len(), edges);
    Ok(LoadedGraph {
        graph,
        original_ids,
    })
}

/// Reads an edge list whose labels are already dense ids below `n`,
/// keeping them as-is. Used when a coordinate sidecar fixes the id space,
/// so isolated vertices survive the round trip.
pub fn load_edge_list_indexed<R: BufRead>(reader: R, n: usize) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if is_comment(line) {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let parse = |tok: Option<&str>| tok.and_then(|t| t.parse::<u64>().ok());
        match (parse(tokens.next()), parse(tokens.next())) {
            (Some(a), Some(b)) => {
                for id in [a, b] {
                    if id >= n as u64 {
                        return Err(GraphError::VertexOutOfRange { id, n });
                    }
                }
                edges.push((a as u32, b as u32));
            }
            _ => {
                return Err(GraphError::MalformedLine {
                    line: idx + 1,
                    found: line.to_string(),
                })
            }
        }
    }
    Ok(Graph::from_edges(n, edges))
}

/// Writes the edge list as `u v` lines with `u < v`, preceded by a short
/// comment header. The output round-trips through [`load_edge_list`].
pub fn write_edge_list<W: Write>(mut writer: W, g: &Graph) -> io::Result<()> {
    writeln!(
        writer,
        "# undirected simple graph: n {} m {}",
        g.vertex_count(),
        g.edge_count()
    )?;
    for (u, v) in g.edges() {
        writeln!(writer, "{u} {v}")?;
    }
    Ok(())
}

/// Writes per-vertex coordinates as `id radius angle` lines. Metadata
/// key-value pairs go first, as `# key value` comment lines.
pub fn write_coordinates<W: Write>(
    mut writer: W,
    coords: &[PolarPoint],
    metadata: &[(String, String)],
) -> io::Result<()> {
    for (key, value) in metadata {
        writeln!(writer, "# {key} {value}")?;
    }
    for (id, p) in coords.iter().enumerate() {
        writeln!(writer, "{id} {} {}", p.radius(), p.angle())?;
    }
    Ok(())
}

/// Reads a coordinate sidecar written by [`write_coordinates`]. Ids must
/// be dense and ascending from zero.
pub fn load_coordinates<R: BufRead>(reader: R) -> Result<Vec<PolarPoint>, GraphError> {
    let mut coords = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if is_comment(line) {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let err = |msg: &str| GraphError::MalformedCoordinate {
            line: idx + 1,
            msg: msg.to_string(),
        };
        let id: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err("missing or invalid vertex id"))?;
        let radius: f64 = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err("missing or invalid radius"))?;
        let angle: f64 = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err("missing or invalid angle"))?;
        if id != coords.len() {
            return Err(err(&format!(
                "vertex ids must be dense and ascending; expected {}, got {id}",
                coords.len()
            )));
        }
        if !radius.is_finite() || radius < 0.0 {
            return Err(err("radius must be finite and nonnegative"));
        }
        if !angle.is_finite() {
            return Err(err("angle must be finite"));
        }
        coords.push(PolarPoint::new(radius, angle));
    }
    Ok(coords)
}

/// Loads a graph from an edge list plus its coordinate sidecar. The
/// sidecar defines the vertex count, so isolated vertices are preserved.
pub fn load_graph_with_coordinates<R1: BufRead, R2: BufRead>(
    edges: R1,
    coordinates: R2,
) -> Result<Graph, GraphError> {
    let coords = load_coordinates(coordinates)?;
    let graph = load_edge_list_indexed(edges, coords.len())?;
    Ok(graph.with_coordinates(coords))
}
