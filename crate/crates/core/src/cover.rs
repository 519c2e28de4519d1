//! Vertex cover algorithms.
//!
//! Three approximate solvers and one exact solver share the masked-graph
//! machinery from [`crate::graph`]:
//!
//! - [`standard_greedy`]: repeatedly take a maximum-degree vertex.
//! - [`adapted_greedy_degree`]: the same loop, but every removal probes the
//!   neighbors' components and solves the small separated ones exactly.
//! - [`adapted_greedy_radius`]: the same improvement driven by vertex
//!   radii instead of degrees; requires coordinates.
//! - [`exact_cover`]: reduction rules (isolated removal and the dominance
//!   rule, which subsumes the degree-one rule) followed by per-component
//!   branch-and-bound with a maximal-matching lower bound.
//!
//! All tie-breaks favor the smallest vertex id and branching explores the
//! include-vertex side first, so every solver is deterministic.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::{
    connected_components, AliveMask, BfsScratch, BoundedComponent, DegreeQueue, Graph,
};

/// Hard cap on [`exact_cover_small`] instances.
pub const SMALL_COMPONENT_CAP: usize = 64;

/// Components beyond this size are not searched by [`exact_cover`]; they
/// only contribute matching/greedy bounds.
const SEARCH_COMPONENT_CAP: usize = 16_384;

#[derive(Debug, Error)]
pub enum CoverError {
    #[error("algorithm requires per-vertex coordinates, but the graph has none")]
    MissingCoordinates,
    #[error("component of size {size} exceeds the exact-solver cap of {cap}")]
    ComponentTooLarge { size: usize, cap: usize },
    #[error("cover of size {cover_size} is below the proven lower bound {lower_bound}")]
    InconsistentBound {
        cover_size: usize,
        lower_bound: usize,
    },
}

/// A vertex cover plus the bookkeeping of how it was assembled: how many
/// vertices the greedy loop took and how many came from exactly solved
/// separated components.
#[derive(Debug, Clone)]
pub struct CoverResult {
    /// The cover, sorted ascending.
    pub cover: Vec<u32>,
    /// Vertices taken by the greedy loop.
    pub greedy_count: usize,
    /// Cover vertices contributed by exactly solved components.
    pub exact_region_cover_count: usize,
    /// Total vertices inside exactly solved components.
    pub exact_region_vertex_count: usize,
    /// Sizes of the exactly solved components, in solve order.
    pub solved_component_sizes: Vec<usize>,
    pub elapsed: Duration,
}

impl CoverResult {
    fn finish(mut acc: Accounting, started: Instant) -> Self {
        acc.cover.sort_unstable();
        debug_assert_eq!(acc.cover.len(), acc.greedy_count + acc.exact_cover_count);
        CoverResult {
            cover: acc.cover,
            greedy_count: acc.greedy_count,
            exact_region_cover_count: acc.exact_cover_count,
            exact_region_vertex_count: acc.exact_vertex_count,
            solved_component_sizes: acc.sizes,
            elapsed: started.elapsed(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactStatus {
    Optimal,
    LowerBoundOnly,
}

/// Result of the exact solver. `Optimal` carries the cover and equal
/// bounds; a timeout degrades to the best bounds proven so far.
#[derive(Debug, Clone)]
pub struct ExactResult {
    pub status: ExactStatus,
    pub cover: Option<Vec<u32>>,
    pub lower_bound: usize,
    pub upper_bound: usize,
}

/// An approximation ratio, flagged when only a lower bound on the optimum
/// was available.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ratio {
    pub value: f64,
    pub is_bound: bool,
}

#[derive(Default)]
struct Accounting {
    cover: Vec<u32>,
    greedy_count: usize,
    exact_cover_count: usize,
    exact_vertex_count: usize,
    sizes: Vec<usize>,
}

/// Component-size cap used by degree-ordered runs for a given tuning
/// parameter: `tau * ceil(lnln n)`, at least 1. The radius-ordered variant
/// uses [`crate::geometry::component_limit`] (`floor(tau * lnln n)`)
/// instead; both grow the exactly-solved region as `tau` grows.
pub fn degree_component_limit(n: usize, tau: f64) -> usize {
    if n < 3 {
        return 1;
    }
    let lln = (n as f64).ln().ln();
    ((tau * lln.ceil()).floor() as usize).max(1)
}

/// Max-degree greedy: take the alive vertex of largest residual degree
/// (ties to the smallest id) until only isolated vertices remain.
pub fn standard_greedy(g: &Graph) -> CoverResult {
    let started = Instant::now();
    let mut mask = AliveMask::new(g.vertex_count());
    let mut queue = DegreeQueue::new(g);
    let mut acc = Accounting::default();
    while let Some((v, d)) = queue.pop_max(&mask) {
        if d == 0 {
            break;
        }
        acc.cover.push(v);
        acc.greedy_count += 1;
        mask.kill(v);
        for &w in g.neighbors(v) {
            if mask.is_alive(w) {
                queue.decrease(w);
            }
        }
    }
    CoverResult::finish(acc, started)
}

/// Degree-ordered adapted greedy: the [`standard_greedy`] loop, where each
/// removal additionally probes the removed vertex's neighbors with a
/// size-bounded search; components of at most `component_limit` vertices
/// are solved exactly and removed whole.
pub fn adapted_greedy_degree(g: &Graph, component_limit: usize) -> CoverResult {
    assert!(component_limit >= 1, "component_limit must be at least 1");
    let started = Instant::now();
    let mut mask = AliveMask::new(g.vertex_count());
    let mut queue = DegreeQueue::new(g);
    let mut bfs = BfsScratch::new(g.vertex_count());
    let mut acc = Accounting::default();
    while let Some((v, d)) = queue.pop_max(&mask) {
        if d == 0 {
            break;
        }
        acc.cover.push(v);
        acc.greedy_count += 1;
        mask.kill(v);
        for &w in g.neighbors(v) {
            if mask.is_alive(w) {
                queue.decrease(w);
            }
        }
        probe_separated_components(g, &mut mask, &mut bfs, v, component_limit, &mut acc);
    }
    CoverResult::finish(acc, started)
}

/// Radius-ordered adapted greedy: vertices are processed by increasing
/// radius (ties to the smallest id). Isolated vertices are skipped, every
/// other encountered vertex is taken into the cover, and the components it
/// separates are probed exactly as in [`adapted_greedy_degree`] with the
/// cap `floor(tau * lnln n)`, at least 1.
pub fn adapted_greedy_radius(g: &Graph, tau: f64) -> Result<CoverResult, CoverError> {
    let started = Instant::now();
    let coords = g.coordinates().ok_or(CoverError::MissingCoordinates)?;
    let limit = crate::geometry::component_limit(g.vertex_count(), tau);
    let mut order: Vec<u32> = (0..g.vertex_count() as u32).collect();
    order.sort_unstable_by(|&a, &b| {
        coords[a as usize]
            .radius()
            .partial_cmp(&coords[b as usize].radius())
            .expect("radii are finite")
            .then(a.cmp(&b))
    });
    let mut mask = AliveMask::new(g.vertex_count());
    let mut bfs = BfsScratch::new(g.vertex_count());
    let mut acc = Accounting::default();
    for &v in &order {
        if !mask.is_alive(v) {
            continue;
        }
        if g.neighbors(v).iter().all(|&w| !mask.is_alive(w)) {
            mask.kill(v);
            continue;
        }
        acc.cover.push(v);
        acc.greedy_count += 1;
        mask.kill(v);
        probe_separated_components(g, &mut mask, &mut bfs, v, limit, &mut acc);
    }
    Ok(CoverResult::finish(acc, started))
}

/// After removing `v`, every separated component contains one of its
/// neighbors, so probing each alive neighbor finds them all. Components
/// within the limit are solved exactly and killed whole; they have no
/// alive neighbors outside themselves, so no degree bookkeeping leaks out.
fn probe_separated_components(
    g: &Graph,
    mask: &mut AliveMask,
    bfs: &mut BfsScratch,
    v: u32,
    limit: usize,
    acc: &mut Accounting,
) {
    for &u in g.neighbors(v) {
        if !mask.is_alive(u) {
            continue;
        }
        match bfs
            .bounded_component(g, mask, u, limit)
            .expect("probe start is alive")
        {
            BoundedComponent::Exceeded => {}
            BoundedComponent::Within(mut comp) => {
                comp.sort_unstable();
                let comp_cover = solve_component(g, mask, &comp);
                acc.exact_vertex_count += comp.len();
                acc.exact_cover_count += comp_cover.len();
                acc.sizes.push(comp.len());
                acc.cover.extend_from_slice(&comp_cover);
                for &x in &comp {
                    mask.kill(x);
                }
            }
        }
    }
}

/// Minimum vertex cover of the induced alive subgraph on `component`,
/// which must contain at most [`SMALL_COMPONENT_CAP`] vertices.
pub fn exact_cover_small(
    g: &Graph,
    mask: &AliveMask,
    component: &[u32],
) -> Result<Vec<u32>, CoverError> {
    if component.len() > SMALL_COMPONENT_CAP {
        return Err(CoverError::ComponentTooLarge {
            size: component.len(),
            cap: SMALL_COMPONENT_CAP,
        });
    }
    let mut members = component.to_vec();
    members.sort_unstable();
    members.dedup();
    let mut budget = Budget::unlimited();
    let (cover, complete) = solve_bits(g, mask, &members, &mut budget);
    debug_assert!(complete, "unlimited budget never aborts");
    Ok(cover)
}

/// Dispatches a separated component to the fastest fitting exact solver.
/// Callers cap component sizes well below anything that could stall, so
/// no time budget applies here.
fn solve_component(g: &Graph, mask: &AliveMask, members: &[u32]) -> Vec<u32> {
    let mut budget = Budget::unlimited();
    if members.len() <= SMALL_COMPONENT_CAP {
        solve_bits(g, mask, members, &mut budget).0
    } else {
        let local = LocalGraph::induce(g, mask, members);
        let (cover_local, _complete) = solve_big(&local, &mut budget);
        cover_local
            .into_iter()
            .map(|i| members[i as usize])
            .collect()
    }
}

/// Size of a greedy maximal matching over the alive edges, taken in
/// `(u, v)` id order. Any matching size is a valid vertex cover lower
/// bound, since a cover needs one endpoint per matched edge.
pub fn matching_lower_bound(g: &Graph, mask: &AliveMask) -> usize {
    let n = g.vertex_count();
    let mut matched = vec![false; n];
    let mut size = 0;
    for u in 0..n as u32 {
        if !mask.is_alive(u) || matched[u as usize] {
            continue;
        }
        for &v in g.neighbors(u) {
            if v > u && mask.is_alive(v) && !matched[v as usize] {
                matched[u as usize] = true;
                matched[v as usize] = true;
                size += 1;
                break;
            }
        }
    }
    size
}

/// Exact minimum vertex cover with a wall-clock budget.
///
/// Applies the reduction rules exhaustively, then solves each kernel
/// component by branch-and-bound. If the deadline expires the result
/// degrades to `LowerBoundOnly` carrying the best proven bounds; the
/// deadline is polled every 2^14 search steps.
pub fn exact_cover(g: &Graph, time_limit: Duration) -> ExactResult {
    let mut budget = Budget::with_deadline(Instant::now().checked_add(time_limit));
    let n = g.vertex_count();
    let mut mask = AliveMask::new(n);
    let mut forced: Vec<u32> = Vec::new();
    root_reduce(g, &mut mask, &mut forced, &mut budget);

    let mut cover = forced.clone();
    let mut lower = forced.len();
    let mut upper = forced.len();
    let mut all_solved = true;
    for comp in connected_components(g, &mask) {
        let solved = if budget.aborted() || comp.len() > SEARCH_COMPONENT_CAP {
            None
        } else if comp.len() <= SMALL_COMPONENT_CAP {
            let (c, complete) = solve_bits(g, &mask, &comp, &mut budget);
            complete.then_some(c)
        } else {
            let local = LocalGraph::induce(g, &mask, &comp);
            let (c, complete) = solve_big(&local, &mut budget);
            complete.then_some(
                c.into_iter()
                    .map(|i| comp[i as usize])
                    .collect::<Vec<u32>>(),
            )
        };
        match solved {
            Some(c) => {
                lower += c.len();
                upper += c.len();
                cover.extend_from_slice(&c);
            }
            None => {
                all_solved = false;
                let local = LocalGraph::induce(g, &mask, &comp);
                lower += local.matching_bound();
                upper += local.greedy_cover_size();
            }
        }
    }
    if all_solved {
        cover.sort_unstable();
        ExactResult {
            status: ExactStatus::Optimal,
            lower_bound: cover.len(),
            upper_bound: cover.len(),
            cover: Some(cover),
        }
    } else {
        ExactResult {
            status: ExactStatus::LowerBoundOnly,
            cover: None,
            lower_bound: lower,
            upper_bound: upper,
        }
    }
}

/// Ratio of `cover_size` to the optimum, or to its best lower bound when
/// the exact solve was cut short (then flagged as a bound). An edgeless
/// optimum of zero yields ratio 1 for the empty cover.
pub fn approximation_ratio(cover_size: usize, opt: &ExactResult) -> Result<Ratio, CoverError> {
    if cover_size < opt.lower_bound {
        return Err(CoverError::InconsistentBound {
            cover_size,
            lower_bound: opt.lower_bound,
        });
    }
    let (denom, is_bound) = match opt.status {
        ExactStatus::Optimal => (opt.upper_bound, false),
        ExactStatus::LowerBoundOnly => (opt.lower_bound, true),
    };
    if denom == 0 {
        return Ok(Ratio {
            value: if cover_size == 0 {
                1.0
            } else {
                cover_size as f64
            },
            is_bound,
        });
    }
    Ok(Ratio {
        value: cover_size as f64 / denom as f64,
        is_bound,
    })
}

// ---------------------------------------------------------------------
// Reductions and search internals
// ---------------------------------------------------------------------

/// Search step counter with a wall-clock deadline polled every 2^14 steps.
struct Budget {
    deadline: Option<Instant>,
    nodes: u64,
    aborted: bool,
}

impl Budget {
    fn unlimited() -> Self {
        Self {
            deadline: None,
            nodes: 0,
            aborted: false,
        }
    }

    /// `None` means the deadline arithmetic overflowed, i.e. effectively
    /// no deadline.
    fn with_deadline(deadline: Option<Instant>) -> Self {
        let aborted = deadline.is_some_and(|d| Instant::now() >= d);
        Self {
            deadline,
            nodes: 0,
            aborted,
        }
    }

    #[inline]
    fn tick(&mut self) -> bool {
        if self.aborted {
            return false;
        }
        self.nodes = self.nodes.wrapping_add(1);
        if self.nodes & 0x3FFF == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.aborted = true;
                    return false;
                }
            }
        }
        true
    }

    fn aborted(&self) -> bool {
        self.aborted
    }
}

/// Exhaustively applies the reduction rules to the whole graph: isolated
/// vertices leave silently, and the first vertex (in ascending id order)
/// that dominates a neighbor joins the cover. `u` dominates `v` when
/// every alive neighbor of `v` other than `u` also neighbors `u`; taking
/// `u` then cannot hurt any optimal solution.
fn root_reduce(g: &Graph, mask: &mut AliveMask, forced: &mut Vec<u32>, budget: &mut Budget) {
    let n = g.vertex_count();
    let mut deg: Vec<u32> = (0..n as u32).map(|v| g.degree(v) as u32).collect();
    let mut mark = vec![0u32; n];
    let mut epoch = 0u32;
    let kill = |v: u32, mask: &mut AliveMask, deg: &mut Vec<u32>| {
        mask.kill(v);
        for &w in g.neighbors(v) {
            if mask.is_alive(w) {
                deg[w as usize] -= 1;
            }
        }
    };
    loop {
        let mut changed = false;
        for u in 0..n as u32 {
            if !budget.tick() {
                return;
            }
            if !mask.is_alive(u) {
                continue;
            }
            if deg[u as usize] == 0 {
                mask.kill(u);
                changed = true;
                continue;
            }
            epoch += 1;
            mark[u as usize] = epoch;
            for &w in g.neighbors(u) {
                if mask.is_alive(w) {
                    mark[w as usize] = epoch;
                }
            }
            let dominates_someone = g.neighbors(u).iter().any(|&v| {
                mask.is_alive(v)
                    && deg[v as usize] <= deg[u as usize]
                    && g.neighbors(v)
                        .iter()
                        .all(|&w| !mask.is_alive(w) || mark[w as usize] == epoch)
            });
            if dominates_someone {
                forced.push(u);
                kill(u, mask, &mut deg);
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

/// Branch-and-bound over a component of at most 64 vertices, with
/// single-word bitset adjacency. Returns the best cover found (always a
/// valid cover) and whether the search completed.
fn solve_bits(
    g: &Graph,
    mask: &AliveMask,
    members: &[u32],
    budget: &mut Budget,
) -> (Vec<u32>, bool) {
    debug_assert!(members.len() <= 64);
    debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
    let k = members.len();
    let mut adj = vec![0u64; k];
    for (i, &v) in members.iter().enumerate() {
        for &w in g.neighbors(v) {
            if mask.is_alive(w) {
                if let Ok(j) = members.binary_search(&w) {
                    adj[i] |= 1u64 << j;
                }
            }
        }
    }
    let alive0: u64 = if k == 64 { !0 } else { (1u64 << k) - 1 };
    let mut search = BitsSearch {
        adj: &adj,
        best: alive0,
        best_size: k as u32,
        budget,
    };
    search.recurse(alive0, 0, 0);
    let complete = !search.budget.aborted;
    let best = search.best;
    (
        (0..k)
            .filter(|&i| best & (1u64 << i) != 0)
            .map(|i| members[i])
            .collect(),
        complete,
    )
}

struct BitsSearch<'a> {
    adj: &'a [u64],
    best: u64,
    best_size: u32,
    budget: &'a mut Budget,
}

impl BitsSearch<'_> {
    fn reduce(&self, alive: &mut u64, cover: &mut u64, size: &mut u32) {
        loop {
            let mut changed = false;
            let mut a = *alive;
            while a != 0 {
                let v = a.trailing_zeros() as usize;
                a &= a - 1;
                if self.adj[v] & *alive == 0 {
                    *alive &= !(1u64 << v);
                    changed = true;
                }
            }
            let mut a = *alive;
            'scan: while a != 0 {
                let u = a.trailing_zeros() as usize;
                let ubit = 1u64 << u;
                a &= a - 1;
                let nu = self.adj[u] & *alive;
                if nu == 0 {
                    continue;
                }
                let closed = nu | ubit;
                let mut nn = nu;
                while nn != 0 {
                    let v = nn.trailing_zeros() as usize;
                    nn &= nn - 1;
                    if self.adj[v] & *alive & !closed == 0 {
                        *cover |= ubit;
                        *size += 1;
                        *alive &= !ubit;
                        changed = true;
                        break 'scan;
                    }
                }
            }
            if !changed {
                return;
            }
        }
    }

    fn matching_bound(&self, alive: u64) -> u32 {
        let mut available = alive;
        let mut size = 0;
        while available != 0 {
            let u = available.trailing_zeros() as usize;
            available &= available - 1;
            let nb = self.adj[u] & available;
            if nb != 0 {
                available &= !(1u64 << nb.trailing_zeros());
                size += 1;
            }
        }
        size
    }

    fn branch_vertex(&self, alive: u64) -> usize {
        let mut best_v = usize::MAX;
        let mut best_deg = 0;
        let mut a = alive;
        while a != 0 {
            let v = a.trailing_zeros() as usize;
            a &= a - 1;
            let d = (self.adj[v] & alive).count_ones();
            if d > best_deg {
                best_deg = d;
                best_v = v;
            }
        }
        best_v
    }

    fn recurse(&mut self, mut alive: u64, mut cover: u64, mut size: u32) {
        if !self.budget.tick() {
            return;
        }
        self.reduce(&mut alive, &mut cover, &mut size);
        if alive == 0 {
            if size < self.best_size {
                self.best_size = size;
                self.best = cover;
            }
            return;
        }
        if size + self.matching_bound(alive) >= self.best_size {
            return;
        }
        let v = self.branch_vertex(alive);
        let vbit = 1u64 << v;
        self.recurse(alive & !vbit, cover | vbit, size + 1);
        let nb = self.adj[v] & alive;
        self.recurse(alive & !(nb | vbit), cover | nb, size + nb.count_ones());
    }
}

/// Induced alive subgraph with local ids, for components too large for a
/// single machine word.
struct LocalGraph {
    adj: Vec<Vec<u32>>,
}

impl LocalGraph {
    fn induce(g: &Graph, mask: &AliveMask, members: &[u32]) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        let adj = members
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .iter()
                    .filter(|&&w| mask.is_alive(w))
                    .filter_map(|&w| members.binary_search(&w).ok().map(|j| j as u32))
                    .collect()
            })
            .collect();
        Self { adj }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    fn matching_bound(&self) -> usize {
        let mut matched = vec![false; self.len()];
        let mut size = 0;
        for u in 0..self.len() {
            if matched[u] {
                continue;
            }
            for &v in &self.adj[u] {
                if v as usize > u && !matched[v as usize] {
                    matched[u] = true;
                    matched[v as usize] = true;
                    size += 1;
                    break;
                }
            }
        }
        size
    }

    /// Plain max-degree greedy, used only to report an upper bound for
    /// components the search could not finish.
    fn greedy_cover_size(&self) -> usize {
        let k = self.len();
        let g = Graph::from_edges(
            k,
            self.adj
                .iter()
                .enumerate()
                .flat_map(|(u, nb)| nb.iter().map(move |&v| (u as u32, v))),
        );
        standard_greedy(&g).cover.len()
    }
}

const WORD_BITS: usize = 64;

fn word_count(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

#[inline]
fn bit_get(words: &[u64], i: usize) -> bool {
    words[i / WORD_BITS] & (1u64 << (i % WORD_BITS)) != 0
}

#[inline]
fn bit_set(words: &mut [u64], i: usize) {
    words[i / WORD_BITS] |= 1u64 << (i % WORD_BITS);
}

#[inline]
fn bit_clear(words: &mut [u64], i: usize) {
    words[i / WORD_BITS] &= !(1u64 << (i % WORD_BITS));
}

/// Branch-and-bound over a component with multiword bitset state. Same
/// rules, bound, and branching order as the single-word solver.
fn solve_big(local: &LocalGraph, budget: &mut Budget) -> (Vec<u32>, bool) {
    let k = local.len();
    let words = word_count(k);
    let mut alive = vec![!0u64; words];
    if !k.is_multiple_of(WORD_BITS) {
        alive[words - 1] = (1u64 << (k % WORD_BITS)) - 1;
    }
    let mut search = BigSearch {
        local,
        mark: vec![0u32; k],
        epoch: 0,
        best: alive.clone(),
        best_size: k,
        budget,
    };
    search.recurse(alive, vec![0u64; words], 0);
    let complete = !search.budget.aborted;
    let best = search.best;
    (
        (0..k as u32)
            .filter(|&i| bit_get(&best, i as usize))
            .collect(),
        complete,
    )
}

struct BigSearch<'a> {
    local: &'a LocalGraph,
    mark: Vec<u32>,
    epoch: u32,
    best: Vec<u64>,
    best_size: usize,
    budget: &'a mut Budget,
}

impl BigSearch<'_> {
    fn degree(&self, v: usize, alive: &[u64]) -> usize {
        self.local.adj[v]
            .iter()
            .filter(|&&w| bit_get(alive, w as usize))
            .count()
    }

    fn reduce(&mut self, alive: &mut [u64], cover: &mut [u64], size: &mut usize) {
        let k = self.local.len();
        loop {
            let mut changed = false;
            for u in 0..k {
                if !bit_get(alive, u) {
                    continue;
                }
                let du = self.degree(u, alive);
                if du == 0 {
                    bit_clear(alive, u);
                    changed = true;
                    continue;
                }
                self.epoch += 1;
                self.mark[u] = self.epoch;
                for &w in &self.local.adj[u] {
                    if bit_get(alive, w as usize) {
                        self.mark[w as usize] = self.epoch;
                    }
                }
                let dominates = self.local.adj[u].iter().any(|&v| {
                    bit_get(alive, v as usize)
                        && self.degree(v as usize, alive) <= du
                        && self.local.adj[v as usize].iter().all(|&w| {
                            !bit_get(alive, w as usize) || self.mark[w as usize] == self.epoch
                        })
                });
                if dominates {
                    bit_set(cover, u);
                    bit_clear(alive, u);
                    *size += 1;
                    changed = true;
                }
            }
            if !changed {
                return;
            }
        }
    }

    fn matching_bound(&self, alive: &[u64]) -> usize {
        let k = self.local.len();
        let mut matched = vec![false; k];
        let mut size = 0;
        for u in 0..k {
            if !bit_get(alive, u) || matched[u] {
                continue;
            }
            for &v in &self.local.adj[u] {
                let v = v as usize;
                if v > u && bit_get(alive, v) && !matched[v] {
                    matched[u] = true;
                    matched[v] = true;
                    size += 1;
                    break;
                }
            }
        }
        size
    }

    fn recurse(&mut self, mut alive: Vec<u64>, mut cover: Vec<u64>, mut size: usize) {
        if !self.budget.tick() {
            return;
        }
        self.reduce(&mut alive, &mut cover, &mut size);
        let k = self.local.len();
        if alive.iter().all(|&w| w == 0) {
            if size < self.best_size {
                self.best_size = size;
                self.best = cover;
            }
            return;
        }
        if size + self.matching_bound(&alive) >= self.best_size {
            return;
        }
        let mut v = usize::MAX;
        let mut best_deg = 0;
        for u in 0..k {
            if bit_get(&alive, u) {
                let d = self.degree(u, &alive);
                if d > best_deg {
                    best_deg = d;
                    v = u;
                }
            }
        }
        let mut inc_alive = alive.clone();
        bit_clear(&mut inc_alive, v);
        let mut inc_cover = cover.clone();
        bit_set(&mut inc_cover, v);
        self.recurse(inc_alive, inc_cover, size + 1);

        let neighbors: Vec<u32> = self.local.adj[v]
            .iter()
            .copied()
            .filter(|&w| bit_get(&alive, w as usize))
            .collect();
        bit_clear(&mut alive, v);
        for &w in &neighbors {
            bit_clear(&mut alive, w as usize);
            bit_set(&mut cover, w as usize);
        }
        self.recurse(alive, cover, size + neighbors.len());
    }
}

#[cfg(test)]
pub(crate) fn brute_force_min_cover(g: &Graph) -> (usize, Vec<u32>) {
    let n = g.vertex_count();
    assert!(n <= 20, "brute force capped at 20 vertices");
    let edges: Vec<_> = g.edges().collect();
    let mut best_size = usize::MAX;
    let mut best = Vec::new();
    for subset in 0u32..(1u32 << n) {
        let size = subset.count_ones() as usize;
        if size >= best_size {
            continue;
        }
        if edges
            .iter()
            .all(|&(u, v)| subset & (1 << u) != 0 || subset & (1 << v) != 0)
        {
            best_size = size;
            best = (0..n as u32).filter(|&v| subset & (1 << v) != 0).collect();
        }
    }
    (best_size, best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_vertex_cover;
    use rand::prelude::*;
    use rand_chacha::ChaCha12Rng;

    fn gnp(n: usize, p: f64, seed: u64) -> Graph {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                if rng.random::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, edges)
    }

    fn random_tree(n: usize, seed: u64) -> Graph {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let edges: Vec<(u32, u32)> = (1..n as u32).map(|v| (rng.random_range(0..v), v)).collect();
        Graph::from_edges(n, edges)
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n as u32 - 1).map(|i| (i, i + 1)))
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n as u32).map(|i| (i, (i + 1) % n as u32)))
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, edges)
    }

    #[test]
    fn standard_greedy_star() {
        let g = Graph::from_edges(6, (1..6).map(|v| (0u32, v as u32)));
        let r = standard_greedy(&g);
        assert_eq!(r.cover, vec![0]);
        assert_eq!(r.greedy_count, 1);
        assert_eq!(r.exact_region_cover_count, 0);
    }

    #[test]
    fn standard_greedy_path4_matches_brute_force_size() {
        let g = path(4);
        let r = standard_greedy(&g);
        assert_eq!(r.cover, vec![1, 2]);
        assert_eq!(brute_force_min_cover(&g).0, 2);
    }

    #[test]
    fn standard_greedy_edgeless() {
        let g = Graph::from_edges(5, Vec::new());
        let r = standard_greedy(&g);
        assert!(r.cover.is_empty());
        assert_eq!(r.greedy_count, 0);
    }

    #[test]
    fn adapted_degree_five_cycle_is_optimal() {
        let g = cycle(5);
        let r = adapted_greedy_degree(&g, 4);
        assert_eq!(r.cover.len(), 3);
        assert_eq!(brute_force_min_cover(&g).0, 3);
        assert_eq!(r.greedy_count, 1);
        assert_eq!(r.exact_region_cover_count, 2);
        assert_eq!(r.exact_region_vertex_count, 4);
        assert!(is_vertex_cover(&g, &r.cover));
    }

    #[test]
    fn adapted_degree_with_unit_limit_equals_standard() {
        // Every component has at least two vertices, so the exact solver
        // only ever fires on separated singletons.
        let graphs = [
            path(4),
            cycle(5),
            complete(6),
            crate::graph::tests::petersen(),
            Graph::from_edges(7, vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6)]),
        ];
        for g in &graphs {
            let std = standard_greedy(g);
            let adapted = adapted_greedy_degree(g, 1);
            assert_eq!(std.cover, adapted.cover);
        }
    }

    #[test]
    fn adapted_never_beats_standard_in_reverse() {
        for seed in 0..30 {
            let g = gnp(35, if seed % 2 == 0 { 0.1 } else { 0.25 }, seed);
            let std = standard_greedy(&g);
            assert!(is_vertex_cover(&g, &std.cover));
            for limit in [1usize, 2, 5, 9] {
                let adapted = adapted_greedy_degree(&g, limit);
                assert!(is_vertex_cover(&g, &adapted.cover));
                assert!(
                    adapted.cover.len() <= std.cover.len(),
                    "seed {seed} limit {limit}: adapted {} > standard {}",
                    adapted.cover.len(),
                    std.cover.len()
                );
                assert_eq!(
                    adapted.cover.len(),
                    adapted.greedy_count + adapted.exact_region_cover_count
                );
                assert!(adapted.solved_component_sizes.iter().all(|&s| s <= limit));
                assert_eq!(
                    adapted.exact_region_vertex_count,
                    adapted.solved_component_sizes.iter().sum::<usize>()
                );
            }
        }
    }

    #[test]
    fn adapted_radius_triangle_splits_work() {
        use crate::geometry::PolarPoint;
        let g = Graph::from_edges(3, vec![(0, 1), (1, 2), (0, 2)]).with_coordinates(vec![
            PolarPoint::new(1.0, 0.0),
            PolarPoint::new(2.0, 1.0),
            PolarPoint::new(3.0, 2.0),
        ]);
        // tau large enough that the component limit reaches 2.
        let r = adapted_greedy_radius(&g, 25.0).unwrap();
        assert_eq!(r.cover.len(), 2);
        assert_eq!(r.greedy_count, 1);
        assert_eq!(r.exact_region_cover_count, 1);
        assert_eq!(r.exact_region_vertex_count, 2);
        assert!(is_vertex_cover(&g, &r.cover));
        assert_eq!(brute_force_min_cover(&g).0, 2);
    }

    #[test]
    fn adapted_radius_requires_coordinates() {
        let g = path(4);
        assert!(matches!(
            adapted_greedy_radius(&g, 1.0),
            Err(CoverError::MissingCoordinates)
        ));
    }

    #[test]
    fn adapted_radius_edgeless() {
        use crate::geometry::PolarPoint;
        let coords = (0..4).map(|i| PolarPoint::new(i as f64, 0.1)).collect();
        let g = Graph::from_edges(4, Vec::new()).with_coordinates(coords);
        let r = adapted_greedy_radius(&g, 5.0).unwrap();
        assert!(r.cover.is_empty());
        assert_eq!(r.greedy_count, 0);
        assert_eq!(r.exact_region_vertex_count, 0);
    }

    #[test]
    fn exact_small_single_edge_takes_smaller_id() {
        let g = Graph::from_edges(2, vec![(0, 1)]);
        let mask = AliveMask::new(2);
        assert_eq!(exact_cover_small(&g, &mask, &[0, 1]).unwrap(), vec![0]);
        // A pendant edge deeper in the id space behaves the same way.
        let g = Graph::from_edges(6, vec![(2, 5)]);
        let mask = AliveMask::new(6);
        assert_eq!(exact_cover_small(&g, &mask, &[2, 5]).unwrap(), vec![2]);
    }

    #[test]
    fn exact_small_cycle_and_petersen() {
        let g = cycle(5);
        let mask = AliveMask::new(5);
        let cover = exact_cover_small(&g, &mask, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(cover.len(), 3);
        assert!(is_vertex_cover(&g, &cover));

        let g = crate::graph::tests::petersen();
        let mask = AliveMask::new(10);
        let members: Vec<u32> = (0..10).collect();
        let cover = exact_cover_small(&g, &mask, &members).unwrap();
        assert_eq!(cover.len(), brute_force_min_cover(&g).0);
        assert_eq!(cover.len(), 6);
        assert!(is_vertex_cover(&g, &cover));
    }

    #[test]
    fn exact_small_at_word_width_boundary() {
        // A 64-vertex path fills the bitset exactly; minimum cover is 32.
        let g = path(64);
        let mask = AliveMask::new(64);
        let members: Vec<u32> = (0..64).collect();
        let cover = exact_cover_small(&g, &mask, &members).unwrap();
        assert_eq!(cover.len(), 32);
        assert!(is_vertex_cover(&g, &cover));
    }

    #[test]
    fn exact_cover_multiword_cycle() {
        // A 90-cycle has no dominated vertex, so the whole graph reaches
        // the multiword search; the optimum is ceil(90 / 2) = 45.
        let g = cycle(90);
        let r = exact_cover(&g, Duration::from_secs(30));
        assert_eq!(r.status, ExactStatus::Optimal);
        assert_eq!(r.upper_bound, 45);
        assert!(is_vertex_cover(&g, r.cover.as_ref().unwrap()));
    }

    #[test]
    fn adapted_degree_limit_above_word_width() {
        // Component cap 89 routes separated pieces through the multiword
        // solver; on a 90-cycle one greedy pick plus an exactly solved
        // 89-path give the optimum.
        let g = cycle(90);
        let r = adapted_greedy_degree(&g, 89);
        assert_eq!(r.cover.len(), 45);
        assert_eq!(r.greedy_count, 1);
        assert_eq!(r.exact_region_vertex_count, 89);
        assert!(is_vertex_cover(&g, &r.cover));
        assert!(r.solved_component_sizes.iter().all(|&s| s <= 89));
    }

    #[test]
    fn exact_small_rejects_oversized_component() {
        let g = Graph::from_edges(70, (0..69u32).map(|i| (i, i + 1)));
        let mask = AliveMask::new(70);
        let members: Vec<u32> = (0..70).collect();
        assert!(matches!(
            exact_cover_small(&g, &mask, &members),
            Err(CoverError::ComponentTooLarge { size: 70, cap: 64 })
        ));
    }

    #[test]
    fn exact_small_respects_mask() {
        // Triangle with one corner removed leaves a single edge.
        let g = Graph::from_edges(3, vec![(0, 1), (1, 2), (0, 2)]);
        let mut mask = AliveMask::new(3);
        mask.kill(0);
        let cover = exact_cover_small(&g, &mask, &[1, 2]).unwrap();
        assert_eq!(cover, vec![1]);
    }

    #[test]
    fn exact_cover_complete_graph() {
        let g = complete(6);
        let r = exact_cover(&g, Duration::from_secs(10));
        assert_eq!(r.status, ExactStatus::Optimal);
        assert_eq!(r.lower_bound, 5);
        assert_eq!(r.upper_bound, 5);
        let cover = r.cover.unwrap();
        assert_eq!(cover.len(), 5);
        assert!(is_vertex_cover(&g, &cover));
    }

    #[test]
    fn exact_cover_trees_match_brute_force() {
        for seed in 0..50 {
            let n = 5 + (seed as usize % 10);
            let g = random_tree(n, seed);
            let r = exact_cover(&g, Duration::from_secs(10));
            assert_eq!(r.status, ExactStatus::Optimal);
            assert_eq!(r.lower_bound, brute_force_min_cover(&g).0, "seed {seed}");
            assert!(is_vertex_cover(&g, r.cover.as_ref().unwrap()));
        }
    }

    #[test]
    fn exact_cover_random_graphs_match_brute_force() {
        for seed in 0..60 {
            let n = 6 + (seed as usize % 7);
            let p = [0.1, 0.3, 0.5][seed as usize % 3];
            let g = gnp(n, p, 1000 + seed);
            let r = exact_cover(&g, Duration::from_secs(10));
            assert_eq!(r.status, ExactStatus::Optimal);
            assert_eq!(
                r.lower_bound,
                brute_force_min_cover(&g).0,
                "seed {seed} n {n} p {p}"
            );
            assert!(is_vertex_cover(&g, r.cover.as_ref().unwrap()));
        }
    }

    #[test]
    fn exact_cover_zero_budget_degrades_to_bounds() {
        let g = cycle(9);
        let r = exact_cover(&g, Duration::from_secs(0));
        assert_eq!(r.status, ExactStatus::LowerBoundOnly);
        assert!(r.cover.is_none());
        assert!(r.lower_bound >= 1);
        assert!(r.lower_bound <= r.upper_bound);
        // The true optimum must sit between the bounds.
        let opt = brute_force_min_cover(&g).0;
        assert!(r.lower_bound <= opt && opt <= r.upper_bound);
    }

    #[test]
    fn solvers_handle_the_empty_graph() {
        let g = Graph::from_edges(0, Vec::new());
        assert!(standard_greedy(&g).cover.is_empty());
        assert!(adapted_greedy_degree(&g, 1).cover.is_empty());
        let r = exact_cover(&g, Duration::from_secs(1));
        assert_eq!(r.status, ExactStatus::Optimal);
        assert_eq!(r.upper_bound, 0);
    }

    #[test]
    fn exact_cover_is_deterministic() {
        for seed in 0..10 {
            let g = gnp(30, 0.2, 7000 + seed);
            let a = exact_cover(&g, Duration::from_secs(10));
            let b = exact_cover(&g, Duration::from_secs(10));
            assert_eq!(a.cover, b.cover, "seed {seed}");
            let ga = adapted_greedy_degree(&g, 5);
            let gb = adapted_greedy_degree(&g, 5);
            assert_eq!(ga.cover, gb.cover, "seed {seed}");
        }
    }

    #[test]
    fn exact_cover_edgeless() {
        let g = Graph::from_edges(4, Vec::new());
        let r = exact_cover(&g, Duration::from_secs(1));
        assert_eq!(r.status, ExactStatus::Optimal);
        assert_eq!(r.cover.unwrap(), Vec::<u32>::new());
        assert_eq!(r.upper_bound, 0);
    }

    #[test]
    fn dominance_step_preserves_optimum() {
        let mut tested = 0;
        for seed in 0..40 {
            let n = 6 + (seed as usize % 7);
            let g = gnp(n, 0.3, 2000 + seed);
            // Find a dominating pair: u adjacent to v with N(v) inside N[u].
            let mut pair = None;
            'outer: for u in 0..n as u32 {
                for &v in g.neighbors(u) {
                    let nu = g.neighbors(u);
                    if g.neighbors(v).iter().all(|&w| w == u || nu.contains(&w)) {
                        pair = Some(u);
                        break 'outer;
                    }
                }
            }
            let Some(u) = pair else { continue };
            tested += 1;
            let (opt_full, _) = brute_force_min_cover(&g);
            let reduced = Graph::from_edges(n, g.edges().filter(|&(a, b)| a != u && b != u));
            let (opt_reduced, _) = brute_force_min_cover(&reduced);
            assert_eq!(opt_full, opt_reduced + 1, "seed {seed}");
        }
        assert!(tested >= 10, "only {tested} graphs had a dominating pair");
    }

    #[test]
    fn matching_bound_examples() {
        let single = Graph::from_edges(2, vec![(0, 1)]);
        assert_eq!(matching_lower_bound(&single, &AliveMask::new(2)), 1);
        let tri = Graph::from_edges(3, vec![(0, 1), (1, 2), (0, 2)]);
        assert_eq!(matching_lower_bound(&tri, &AliveMask::new(3)), 1);
        // Path on ids 0-1-2-3: greedy in id order pairs (0,1) then (2,3).
        assert_eq!(matching_lower_bound(&path(4), &AliveMask::new(4)), 2);
    }

    #[test]
    fn ratio_exact_and_bound() {
        let opt = ExactResult {
            status: ExactStatus::Optimal,
            cover: Some((0..100).collect()),
            lower_bound: 100,
            upper_bound: 100,
        };
        let r = approximation_ratio(103, &opt).unwrap();
        assert!((r.value - 1.03).abs() < 1e-12);
        assert!(!r.is_bound);

        let partial = ExactResult {
            status: ExactStatus::LowerBoundOnly,
            cover: None,
            lower_bound: 90,
            upper_bound: 120,
        };
        let r = approximation_ratio(103, &partial).unwrap();
        assert!(r.is_bound);
        assert!((r.value - 103.0 / 90.0).abs() < 1e-12);

        assert!(matches!(
            approximation_ratio(80, &opt),
            Err(CoverError::InconsistentBound { .. })
        ));
    }

    #[test]
    fn ratio_edgeless_is_one() {
        let opt = ExactResult {
            status: ExactStatus::Optimal,
            cover: Some(Vec::new()),
            lower_bound: 0,
            upper_bound: 0,
        };
        let r = approximation_ratio(0, &opt).unwrap();
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn degree_component_limit_examples() {
        // lnln(1000) = 1.93..., so tau = 10 caps components at 20.
        assert_eq!(degree_component_limit(1000, 10.0), 20);
        assert_eq!(degree_component_limit(1000, 1.0), 2);
        assert_eq!(degree_component_limit(2, 10.0), 1);
    }
}
