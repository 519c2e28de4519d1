//! Independent optima for the exact solver at sizes brute force cannot
//! reach: on bipartite graphs the minimum vertex cover size equals the
//! maximum matching, and cycles/paths have closed forms.

use std::time::Duration;

use rand::prelude::*;
use rand_chacha::ChaCha12Rng;

use hypercover::cover::{exact_cover, ExactStatus};
use hypercover::graph::{is_vertex_cover, Graph};

/// Maximum bipartite matching by augmenting paths; left side `0..a`.
fn max_matching(g: &Graph, a: usize) -> usize {
    let n = g.vertex_count();
    let mut match_of = vec![u32::MAX; n];
    fn augment(g: &Graph, u: u32, match_of: &mut [u32], visited: &mut [bool]) -> bool {
        for &v in g.neighbors(u) {
            if !visited[v as usize] {
                visited[v as usize] = true;
                if match_of[v as usize] == u32::MAX
                    || augment(g, match_of[v as usize], match_of, visited)
                {
                    match_of[v as usize] = u;
                    return true;
                }
            }
        }
        false
    }
    let mut matching = 0;
    for u in 0..a as u32 {
        let mut visited = vec![false; n];
        if augment(g, u, &mut match_of, &mut visited) {
            matching += 1;
        }
    }
    matching
}

#[test]
fn exact_cover_matches_koenig_bound_on_bipartite_graphs() {
    let mut rng = ChaCha12Rng::seed_from_u64(77);
    for round in 0..60u64 {
        let a = rng.random_range(30..=120usize);
        let b = rng.random_range(30..=120usize);
        let p = [0.01, 0.02, 0.05, 0.1][rng.random_range(0..4)];
        let mut edges = Vec::new();
        for u in 0..a as u32 {
            for v in 0..b as u32 {
                if rng.random::<f64>() < p {
                    edges.push((u, a as u32 + v));
                }
            }
        }
        let g = Graph::from_edges(a + b, edges);
        let matching = max_matching(&g, a);
        let ex = exact_cover(&g, Duration::from_secs(60));
        assert_eq!(ex.status, ExactStatus::Optimal, "round {round}");
        assert_eq!(
            ex.upper_bound, matching,
            "round {round}: a={a} b={b} p={p} m={}",
            g.edge_count()
        );
        assert!(is_vertex_cover(&g, ex.cover.as_ref().unwrap()));
    }
}

#[test]
fn exact_cover_matches_closed_forms_past_word_width() {
    for n in 65..=140usize {
        let cycle = Graph::from_edges(n, (0..n as u32).map(|i| (i, (i + 1) % n as u32)));
        let ex = exact_cover(&cycle, Duration::from_secs(60));
        assert_eq!(ex.status, ExactStatus::Optimal);
        assert_eq!(ex.upper_bound, n.div_ceil(2), "cycle {n}");
        let path = Graph::from_edges(n, (0..n as u32 - 1).map(|i| (i, i + 1)));
        let ex = exact_cover(&path, Duration::from_secs(60));
        assert_eq!(ex.upper_bound, n / 2, "path {n}");
    }
}
