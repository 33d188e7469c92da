//! Graph coarsening by collapsing short edges.
//!
//! Hypernodes are the connected components of the subgraph induced by edges
//! with weight at or below the threshold. Super-edges connect two hypernodes
//! whenever any original edge crosses them; edges inside a block vanish and
//! parallel crossings merge. The coarse graph is re-equipped with Euclidean
//! lengths computed from the new positions.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{EdgeWeighting, GraphError, NodeId, SpatialGraph};

/// Strategy for placing each hypernode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Positioning {
    /// Mean position of the merged nodes.
    #[default]
    Average,
    /// Position of the merged node with the largest weighted degree
    /// (ties broken by smallest node id).
    Degree,
}

/// How crossing custom weights combine into one super-edge weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AggregationRule {
    #[default]
    Min,
    Sum,
}

#[derive(Debug, Error)]
pub enum CoarsenError {
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A partition of the node set into disjoint nonempty blocks covering it.
///
/// Blocks are numbered by their smallest member, and each block lists its
/// members in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodePartition {
    block_of: Vec<usize>,
    blocks: Vec<Vec<NodeId>>,
}

impl NodePartition {
    pub fn block_of(&self, v: NodeId) -> usize {
        self.block_of[v]
    }

    pub fn block_ids(&self) -> &[usize] {
        &self.block_of
    }

    pub fn blocks(&self) -> &[Vec<NodeId>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Output of one coarsening pass.
#[derive(Debug, Clone)]
pub struct CoarseningResult {
    pub coarse: SpatialGraph,
    pub partition: NodePartition,
    pub theta: f64,
    pub positioning: Positioning,
    pub weighting: EdgeWeighting,
}

/// Edges with weight `<= theta` (inclusive), as endpoint pairs.
pub fn sub_graph(
    g: &SpatialGraph,
    weighting: EdgeWeighting,
    theta: f64,
) -> Result<Vec<(NodeId, NodeId)>, CoarsenError> {
    let weights = g.edge_weights(weighting)?;
    Ok(g.edges()
        .iter()
        .zip(&weights)
        .filter(|&(_, &w)| w <= theta)
        .map(|(&e, _)| e)
        .collect())
}

/// Connected components of `(V, E_theta)` as a partition.
pub fn threshold_partition(
    g: &SpatialGraph,
    weighting: EdgeWeighting,
    theta: f64,
) -> Result<NodePartition, CoarsenError> {
    let n = g.node_count();
    let weights = g.edge_weights(weighting)?;
    let mut uf = UnionFind::new(n);
    for (idx, &(u, v)) in g.edges().iter().enumerate() {
        if weights[idx] <= theta {
            uf.union(u, v);
        }
    }
    let mut block_of = Vec::with_capacity(n);
    let mut blocks: Vec<Vec<NodeId>> = Vec::new();
    let mut id_of_root = vec![usize::MAX; n];
    for v in 0..n {
        let r = uf.find(v);
        if id_of_root[r] == usize::MAX {
            id_of_root[r] = blocks.len();
            blocks.push(Vec::new());
        }
        block_of.push(id_of_root[r]);
        blocks[id_of_root[r]].push(v);
    }
    Ok(NodePartition { block_of, blocks })
}

/// Collapses every edge with weight `<= theta` and rebuilds the quotient
/// graph with positions assigned by `positioning`.
pub fn coarsen(
    g: &SpatialGraph,
    weighting: EdgeWeighting,
    theta: f64,
    positioning: Positioning,
) -> Result<CoarseningResult, CoarsenError> {
    let partition = threshold_partition(g, weighting, theta)?;
    let positions = block_positions(g, weighting, &partition, positioning)?;
    let edges = super_edges(g, &partition);
    let coarse = SpatialGraph::new(g.dim(), positions, edges, None)
        .expect("quotient graph satisfies all construction invariants");
    Ok(CoarseningResult {
        coarse,
        partition,
        theta,
        positioning,
        weighting,
    })
}

fn block_positions(
    g: &SpatialGraph,
    weighting: EdgeWeighting,
    partition: &NodePartition,
    positioning: Positioning,
) -> Result<Vec<Vec<f64>>, CoarsenError> {
    let dim = g.dim();
    let mut out = Vec::with_capacity(partition.len());
    for block in partition.blocks() {
        let pos = match positioning {
            Positioning::Average => {
                let mut acc = vec![0.0; dim];
                for &v in block {
                    for (a, &c) in acc.iter_mut().zip(g.position(v)) {
                        *a += c;
                    }
                }
                let inv = 1.0 / block.len() as f64;
                acc.iter_mut().for_each(|a| *a *= inv);
                acc
            }
            Positioning::Degree => {
                // argmax of weighted degree; blocks list nodes ascending, so
                // a strict `>` keeps the smallest id on ties
                let mut best = block[0];
                let mut best_deg = g.weighted_degree(weighting, best)?;
                for &v in &block[1..] {
                    let d = g.weighted_degree(weighting, v)?;
                    if d > best_deg {
                        best = v;
                        best_deg = d;
                    }
                }
                g.position(best).to_vec()
            }
        };
        out.push(pos);
    }
    Ok(out)
}

fn super_edges(g: &SpatialGraph, partition: &NodePartition) -> Vec<(usize, usize)> {
    let mut set = BTreeSet::new();
    for &(u, v) in g.edges() {
        let (bu, bv) = (partition.block_of(u), partition.block_of(v));
        if bu != bv {
            set.insert((bu.min(bv), bu.max(bv)));
        }
    }
    set.into_iter().collect()
}

/// A super-edge (block pair) with its aggregated weight.
pub type WeightedSuperEdge = ((usize, usize), f64);

/// Combines the custom weights of all original edges crossing each block
/// pair. Returns `(super-edge, weight)` rows sorted to match the edge order
/// of the coarse graph produced by [`coarsen`] on the same partition.
pub fn aggregate_custom_weights(
    g: &SpatialGraph,
    partition: &NodePartition,
    rule: AggregationRule,
) -> Result<Vec<WeightedSuperEdge>, CoarsenError> {
    let weights = g.custom_weights().ok_or(GraphError::MissingCustomWeights)?;
    let mut acc: std::collections::BTreeMap<(usize, usize), f64> =
        std::collections::BTreeMap::new();
    for (idx, &(u, v)) in g.edges().iter().enumerate() {
        let (bu, bv) = (partition.block_of(u), partition.block_of(v));
        if bu == bv {
            continue;
        }
        let key = (bu.min(bv), bu.max(bv));
        let w = weights[idx];
        acc.entry(key)
            .and_modify(|cur| match rule {
                AggregationRule::Min => *cur = cur.min(w),
                AggregationRule::Sum => *cur += w,
            })
            .or_insert(w);
    }
    Ok(acc.into_iter().collect())
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.rank[ra] < self.rank[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        if self.rank[ra] == self.rank[rb] {
            self.rank[ra] += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn sub_graph_threshold_is_inclusive() {
        let g = SpatialGraph::new(
            2,
            vec![
                vec![0.0, 0.0],
                vec![1.0, 0.0],
                vec![3.0, 0.0],
                vec![6.0, 0.0],
            ],
            vec![(0, 1), (1, 2), (2, 3)],
            None,
        )
        .unwrap();
        // lengths {1, 2, 3}
        assert_eq!(
            sub_graph(&g, EdgeWeighting::Length, 2.0).unwrap(),
            vec![(0, 1), (1, 2)]
        );
        assert!(sub_graph(&g, EdgeWeighting::Length, 0.0)
            .unwrap()
            .is_empty());
        assert_eq!(sub_graph(&g, EdgeWeighting::Length, 3.0).unwrap().len(), 3);
    }

    #[test]
    fn average_positioning_hand_trace() {
        let r = coarsen(
            &path_graph(),
            EdgeWeighting::Length,
            1.5,
            Positioning::Average,
        )
        .unwrap();
        assert_eq!(r.partition.blocks(), &[vec![0, 1], vec![2]]);
        assert_eq!(r.coarse.node_count(), 2);
        assert_eq!(r.coarse.edges(), &[(0, 1)]);
        assert_eq!(r.coarse.position(0), &[0.5, 0.0]);
        assert_eq!(r.coarse.position(1), &[3.0, 0.0]);
    }

    #[test]
    fn degree_positioning_hand_trace() {
        // weighted degrees: a -> 1, b -> 3, so block {a, b} sits at b
        let r = coarsen(
            &path_graph(),
            EdgeWeighting::Length,
            1.5,
            Positioning::Degree,
        )
        .unwrap();
        assert_eq!(r.coarse.position(0), &[1.0, 0.0]);
        assert_eq!(r.coarse.position(1), &[3.0, 0.0]);
    }

    #[test]
    fn theta_below_min_weight_is_identity() {
        let g = path_graph();
        let r = coarsen(&g, EdgeWeighting::Length, 0.5, Positioning::Average).unwrap();
        assert_eq!(r.partition.len(), g.node_count());
        assert_eq!(r.coarse.edges(), g.edges());
        for v in 0..g.node_count() {
            assert_eq!(r.coarse.position(v), g.position(v));
        }
    }

    #[test]
    fn theta_at_max_collapses_each_component() {
        let g = SpatialGraph::new(
            2,
            vec![
                vec![0.0, 0.0],
                vec![1.0, 0.0],
                vec![10.0, 0.0],
                vec![11.0, 0.0],
            ],
            vec![(0, 1), (2, 3)],
            None,
        )
        .unwrap();
        let r = coarsen(&g, EdgeWeighting::Length, 1.0, Positioning::Average).unwrap();
        assert_eq!(r.partition.len(), 2);
        assert!(r.coarse.edges().is_empty());
    }

    #[test]
    fn degree_tie_breaks_to_smallest_id() {
        // symmetric path: end nodes have equal degree in the middle block
        let g = SpatialGraph::new(
            2,
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]],
            vec![(0, 1), (1, 2)],
            None,
        )
        .unwrap();
        // theta = 1 merges everything; degrees are 1, 2, 1 -> node 1 wins
        let r = coarsen(&g, EdgeWeighting::Length, 1.0, Positioning::Degree).unwrap();
        assert_eq!(r.coarse.position(0), &[1.0, 0.0]);

        // all-equal degrees: two coincident nodes, tie -> node 0
        let g =
            SpatialGraph::new(2, vec![vec![5.0, 1.0], vec![5.0, 1.0]], vec![(0, 1)], None).unwrap();
        let r = coarsen(&g, EdgeWeighting::Length, 1.0, Positioning::Degree).unwrap();
        assert_eq!(r.coarse.position(0), &[5.0, 1.0]);
        assert_eq!(r.partition.blocks(), &[vec![0, 1]]);
    }

    #[test]
    fn parallel_crossings_merge_and_internal_edges_drop() {
        // two tight pairs joined by two long parallel crossings
        let g = SpatialGraph::new(
            2,
            vec![
                vec![0.0, 0.0],
                vec![0.1, 0.0],
                vec![5.0, 0.0],
                vec![5.1, 0.0],
            ],
            vec![(0, 1), (2, 3), (0, 2), (1, 3)],
            None,
        )
        .unwrap();
        let r = coarsen(&g, EdgeWeighting::Length, 0.2, Positioning::Average).unwrap();
        assert_eq!(r.partition.len(), 2);
        assert_eq!(r.coarse.edges(), &[(0, 1)]);
        assert!(r.coarse.validate().is_empty());
    }

    #[test]
    fn aggregate_rules() {
        let g = SpatialGraph::new(
            2,
            vec![
                vec![0.0, 0.0],
                vec![0.1, 0.0],
                vec![5.0, 0.0],
                vec![5.1, 0.0],
            ],
            vec![(0, 1), (2, 3), (0, 2), (1, 3)],
            Some(vec![0.1, 0.1, 2.0, 5.0]),
        )
        .unwrap();
        let p = threshold_partition(&g, EdgeWeighting::Custom, 0.5).unwrap();
        assert_eq!(p.len(), 2);
        let min = aggregate_custom_weights(&g, &p, AggregationRule::Min).unwrap();
        assert_eq!(min, vec![((0, 1), 2.0)]);
        let sum = aggregate_custom_weights(&g, &p, AggregationRule::Sum).unwrap();
        assert_eq!(sum, vec![((0, 1), 7.0)]);

        // single crossing: either rule returns it unchanged
        let p0 = threshold_partition(&g, EdgeWeighting::Custom, 0.0).unwrap();
        let min0 = aggregate_custom_weights(&g, &p0, AggregationRule::Min).unwrap();
        let sum0 = aggregate_custom_weights(&g, &p0, AggregationRule::Sum).unwrap();
        assert_eq!(min0, sum0);
    }

    #[test]
    fn component_count_is_preserved() {
        let g = SpatialGraph::new(
            2,
            vec![
                vec![0.0, 0.0],
                vec![1.0, 0.0],
                vec![2.0, 0.0],
                vec![9.0, 9.0],
            ],
            vec![(0, 1), (1, 2)],
            None,
        )
        .unwrap();
        for theta in [0.0, 0.5, 1.0, 2.0, 10.0] {
            let r = coarsen(&g, EdgeWeighting::Length, theta, Positioning::Average).unwrap();
            let orig = crate::metric::components(&g).iter().copied().max().unwrap() + 1;
            let coarse = crate::metric::components(&r.coarse)
                .iter()
                .copied()
                .max()
                .unwrap()
                + 1;
            assert_eq!(orig, coarse, "theta = {theta}");
        }
    }
}
