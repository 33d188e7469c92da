//! Shared generators for the integration suites.

#![allow(dead_code)]

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use topocoarse::graph::{EdgeWeighting, SpatialGraph};
use topocoarse::io::gen_annulus;
use topocoarse::persistence::{PersistenceDiagram, PersistencePoint};

/// Random spatial graph: `1..=max_n` nodes uniform in `[0,1]^2`, each
/// candidate edge kept independently.
pub fn random_spatial_graph(seed: u64, max_n: usize, edge_prob: f64) -> SpatialGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=max_n);
    let positions: Vec<Vec<f64>> = (0..n)
        .map(|_| vec![rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)])
        .collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_range(0.0..1.0) < edge_prob {
                edges.push((u, v));
            }
        }
    }
    SpatialGraph::new(2, positions, edges, None).expect("generated graph is valid")
}

/// As [`random_spatial_graph`], with strictly positive custom weights.
pub fn random_weighted_graph(seed: u64, max_n: usize, edge_prob: f64) -> SpatialGraph {
    let g = random_spatial_graph(seed, max_n, edge_prob);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let weights: Vec<f64> = (0..g.edge_count())
        .map(|_| rng.random_range(0.05..5.0))
        .collect();
    let has_edges = !weights.is_empty();
    SpatialGraph::new(
        g.dim(),
        g.positions(),
        g.edges().to_vec(),
        has_edges.then_some(weights),
    )
    .expect("weights are valid")
}

/// Random diagram with up to `max_points` finite dimension-`dim` points.
pub fn random_diagram(seed: u64, dim: usize, max_points: usize) -> PersistenceDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.random_range(0..=max_points);
    let points = (0..k)
        .map(|_| {
            let birth = rng.random_range(0.0..5.0);
            let death = birth + rng.random_range(0.01..5.0);
            PersistencePoint {
                dim,
                birth,
                death,
                truncated: false,
            }
        })
        .collect();
    PersistenceDiagram::from_points(points)
}

/// True when all edge weights are pairwise distinct at 1e-6 relative.
/// Floating-point rotations can flip quantile membership on near-ties, so
/// the equivariance suites reject such graphs.
pub fn has_no_near_ties(g: &SpatialGraph, weighting: EdgeWeighting) -> bool {
    let mut ws = g.edge_weights(weighting).expect("valid weighting");
    ws.sort_unstable_by(f64::total_cmp);
    ws.windows(2)
        .all(|w| w[1] - w[0] > 1e-6 * w[1].abs().max(1e-12))
}

/// Annulus graph with pairwise-distinct edge lengths; returns the accepted
/// seed alongside the graph.
pub fn tie_free_annulus(n: usize, p_frac: f64, seed_start: u64) -> (SpatialGraph, u64) {
    let mut seed = seed_start;
    loop {
        let g = gen_annulus(n, 0.7, 1.0, p_frac, seed).expect("valid annulus parameters");
        if g.edge_count() > 0 && has_no_near_ties(&g, EdgeWeighting::Length) {
            return (g, seed);
        }
        seed += 0x1000_0000;
    }
}

/// Relative closeness at tolerance `tol`, absolute near zero.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    if a == b {
        return true;
    }
    if a.is_infinite() || b.is_infinite() {
        return a == b;
    }
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
