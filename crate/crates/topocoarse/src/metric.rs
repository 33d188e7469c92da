//! All-pairs shortest-path metric over a spatial graph.
//!
//! Distances are summed edge weights along paths; pairs in different
//! components are infinite. Per-source searches run in parallel and the
//! assembled matrix is immutable afterwards.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{EdgeWeighting, GraphError, NodeId, SpatialGraph};

#[derive(Debug, Error)]
pub enum MetricError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge ({u}, {v}) has negative weight {value}")]
    NegativeWeight { u: NodeId, v: NodeId, value: f64 },
    #[error("truncation radius must be strictly positive, got {0}")]
    NonPositiveRadius(f64),
}

/// Dense all-pairs distance matrix plus component bookkeeping.
#[derive(Debug, Clone)]
pub struct GraphMetric {
    n: usize,
    dist: Vec<f64>, // n * n, f64::INFINITY across components or past truncation
    component_of: Vec<usize>,
    component_diameters: Vec<f64>,
}

impl GraphMetric {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dist(&self, u: NodeId, v: NodeId) -> f64 {
        self.dist[u * self.n + v]
    }

    pub fn component_of(&self) -> &[usize] {
        &self.component_of
    }

    pub fn component_count(&self) -> usize {
        self.component_of.iter().copied().max().map_or(0, |c| c + 1)
    }

    /// Per-component maximum finite distance (0 for singletons).
    pub fn component_diameters(&self) -> &[f64] {
        &self.component_diameters
    }

    /// Largest component diameter; 0 when every component is a singleton.
    pub fn max_component_diameter(&self) -> f64 {
        self.component_diameters.iter().copied().fold(0.0, f64::max)
    }
}

struct HeapItem {
    dist: f64,
    node: NodeId,
}

impl PartialEq for HeapItem {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for HeapItem {}
impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapItem {
    // reversed so BinaryHeap pops the smallest distance first
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Shortest-path distances between every pair of nodes.
pub fn shortest_path_metric(
    g: &SpatialGraph,
    weighting: EdgeWeighting,
) -> Result<GraphMetric, MetricError> {
    metric_impl(g, weighting, f64::INFINITY)
}

/// As [`shortest_path_metric`], but entries larger than `r_max` are replaced
/// by infinity and each per-source search stops expanding past `r_max`.
pub fn truncated_metric(
    g: &SpatialGraph,
    weighting: EdgeWeighting,
    r_max: f64,
) -> Result<GraphMetric, MetricError> {
    if r_max.is_nan() || r_max <= 0.0 {
        return Err(MetricError::NonPositiveRadius(r_max));
    }
    metric_impl(g, weighting, r_max)
}

fn metric_impl(
    g: &SpatialGraph,
    weighting: EdgeWeighting,
    r_max: f64,
) -> Result<GraphMetric, MetricError> {
    let n = g.node_count();
    let weights = g.edge_weights(weighting)?;
    for (idx, &w) in weights.iter().enumerate() {
        if w < 0.0 {
            let (u, v) = g.edges()[idx];
            return Err(MetricError::NegativeWeight { u, v, value: w });
        }
    }

    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|source| dijkstra(g, &weights, source, r_max))
        .collect();
    let mut dist = Vec::with_capacity(n * n);
    for row in rows {
        dist.extend_from_slice(&row);
    }

    let component_of = components(g);
    let n_components = component_of.iter().copied().max().map_or(0, |c| c + 1);
    let mut component_diameters = vec![0.0_f64; n_components];
    for u in 0..n {
        let c = component_of[u];
        for v in (u + 1)..n {
            let d = dist[u * n + v];
            if d.is_finite() && d > component_diameters[c] {
                component_diameters[c] = d;
            }
        }
    }

    Ok(GraphMetric {
        n,
        dist,
        component_of,
        component_diameters,
    })
}

fn dijkstra(g: &SpatialGraph, weights: &[f64], source: NodeId, r_max: f64) -> Vec<f64> {
    let n = g.node_count();
    let mut dist = vec![f64::INFINITY; n];
    dist[source] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(HeapItem {
        dist: 0.0,
        node: source,
    });
    while let Some(HeapItem { dist: d, node }) = heap.pop() {
        if d > dist[node] || d > r_max {
            continue;
        }
        for &(next, edge_idx) in g.neighbors(node) {
            let nd = d + weights[edge_idx];
            if nd < dist[next] {
                dist[next] = nd;
                heap.push(HeapItem {
                    dist: nd,
                    node: next,
                });
            }
        }
    }
    for d in dist.iter_mut() {
        if *d > r_max {
            *d = f64::INFINITY;
        }
    }
    dist
}

/// Connected components, numbered by smallest member node id.
pub fn components(g: &SpatialGraph) -> Vec<usize> {
    let n = g.node_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v) in g.edges() {
        let ru = find(&mut parent, u);
        let rv = find(&mut parent, v);
        if ru != rv {
            // keep the smaller root so component ids follow node order
            let (lo, hi) = (ru.min(rv), ru.max(rv));
            parent[hi] = lo;
        }
    }
    let mut id_of_root = vec![usize::MAX; n];
    let mut next = 0;
    let mut out = Vec::with_capacity(n);
    for v in 0..n {
        let r = find(&mut parent, v);
        if id_of_root[r] == usize::MAX {
            id_of_root[r] = next;
            next += 1;
        }
        out.push(id_of_root[r]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SpatialGraph;

    fn path_graph() -> SpatialGraph {
        SpatialGraph::new(
            2,
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![3.0, 0.0]],
            vec![(0, 1), (1, 2)],
            None,
        )
        .unwrap()
    }

    #[test]
    fn path_distances_sum() {
        let m = shortest_path_metric(&path_graph(), EdgeWeighting::Length).unwrap();
        assert_eq!(m.dist(0, 2), 3.0);
        assert_eq!(m.dist(0, 1), 1.0);
        assert_eq!(m.dist(1, 1), 0.0);
        assert_eq!(m.component_count(), 1);
        assert_eq!(m.max_component_diameter(), 3.0);
    }

    #[test]
    fn isolated_nodes_are_infinitely_far() {
        let g = SpatialGraph::new(2, vec![vec![0.0, 0.0], vec![5.0, 0.0]], vec![], None).unwrap();
        let m = shortest_path_metric(&g, EdgeWeighting::Length).unwrap();
        assert!(m.dist(0, 1).is_infinite());
        assert_eq!(m.component_count(), 2);
        assert_eq!(m.component_diameters(), &[0.0, 0.0]);
    }

    #[test]
    fn two_hop_path_beats_heavy_direct_edge() {
        // triangle with custom weights {(u,v):1, (v,w):1, (u,w):3} -> d(u,w) = 2
        let g = SpatialGraph::new(
            2,
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]],
            vec![(0, 1), (1, 2), (0, 2)],
            Some(vec![1.0, 1.0, 3.0]),
        )
        .unwrap();
        let m = shortest_path_metric(&g, EdgeWeighting::Custom).unwrap();
        assert_eq!(m.dist(0, 2), 2.0);
    }

    #[test]
    fn truncation_blanks_entries_past_radius() {
        let m = truncated_metric(&path_graph(), EdgeWeighting::Length, 2.0).unwrap();
        assert!(m.dist(0, 2).is_infinite());
        assert_eq!(m.dist(0, 1), 1.0);
        assert_eq!(m.dist(1, 2), 2.0); // == r_max is kept
    }

    #[test]
    fn truncation_at_diameter_is_identity() {
        let full = shortest_path_metric(&path_graph(), EdgeWeighting::Length).unwrap();
        let trunc = truncated_metric(&path_graph(), EdgeWeighting::Length, 3.0).unwrap();
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(full.dist(u, v), trunc.dist(u, v));
            }
        }
    }

    #[test]
    fn tight_truncation_leaves_only_diagonal() {
        let g = SpatialGraph::new(
            2,
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![(0, 1), (0, 2), (1, 2)],
            Some(vec![1.0, 1.0, 1.0]),
        )
        .unwrap();
        let m = truncated_metric(&g, EdgeWeighting::Custom, 0.5).unwrap();
        for u in 0..3 {
            for v in 0..3 {
                if u == v {
                    assert_eq!(m.dist(u, v), 0.0);
                } else {
                    assert!(m.dist(u, v).is_infinite());
                }
            }
        }
    }

    #[test]
    fn negative_weight_rejected() {
        let g = SpatialGraph::new_unchecked(
            2,
            vec![vec![0.0, 0.0], vec![1.0, 0.0]],
            vec![(0, 1)],
            Some(vec![-1.0]),
        );
        assert!(matches!(
            shortest_path_metric(&g, EdgeWeighting::Custom),
            Err(MetricError::NegativeWeight { .. })
        ));
    }

    #[test]
    fn direct_edge_bounds_distance() {
        let g = SpatialGraph::new(
            2,
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, 2.0]],
            vec![(0, 1), (1, 2), (0, 2)],
            None,
        )
        .unwrap();
        let m = shortest_path_metric(&g, EdgeWeighting::Length).unwrap();
        for (idx, &(u, v)) in g.edges().iter().enumerate() {
            let w = g.edge_weight_by_index(EdgeWeighting::Length, idx).unwrap();
            assert!(m.dist(u, v) <= w);
        }
    }
}
