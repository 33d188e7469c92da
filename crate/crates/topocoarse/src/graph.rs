//! Spatial graph data model: nodes with coordinates, undirected edges, and
//! optional per-edge weights.
//!
//! A [`SpatialGraph`] is immutable after construction and validated on
//! construction, so every other module can assume its invariants hold.

use thiserror::Error;

/// Dense node identifier in `0..n`.
pub type NodeId = usize;

/// Which scalar equips the edges.
///
/// `Length` derives the weight of every edge from the Euclidean distance
/// between its endpoint positions. `Custom` reads the per-edge weight stored
/// on the graph (e.g. a resistance), which must be present on every edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeWeighting {
    #[default]
    Length,
    Custom,
}

/// A single invariant violation found while validating graph data.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Violation {
    #[error("graph must have at least one node")]
    NoNodes,
    #[error("ambient dimension must be at least 1")]
    ZeroDimension,
    #[error("node {node}: position has {got} coordinates, expected {expected}")]
    PositionDimension {
        node: NodeId,
        expected: usize,
        got: usize,
    },
    #[error("node {node}: non-finite coordinate")]
    NonFiniteCoordinate { node: NodeId },
    #[error("edge ({u}, {v}): endpoint out of range for {n} nodes")]
    InvalidEndpoint { u: NodeId, v: NodeId, n: usize },
    #[error("edge ({node}, {node}): self-loop")]
    SelfLoop { node: NodeId },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: NodeId, v: NodeId },
    #[error("expected {expected} custom weights, got {got}")]
    WeightCountMismatch { expected: usize, got: usize },
    #[error("edge ({u}, {v}): custom weight {value} must be strictly positive and finite")]
    InvalidCustomWeight { u: NodeId, v: NodeId, value: f64 },
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("invalid graph: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("custom weighting requested but the graph carries no custom weights")]
    MissingCustomWeights,
    #[error("edge ({u}, {v}) is not in the graph")]
    NoSuchEdge { u: NodeId, v: NodeId },
}

fn format_violations(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// An undirected graph whose nodes carry coordinates in `R^p`.
///
/// Edges are stored canonically as `(u, v)` with `u < v`, sorted ascending.
/// `custom_weights`, when present, is parallel to `edges`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialGraph {
    dim: usize,
    positions: Vec<f64>, // n * dim, row per node
    edges: Vec<(NodeId, NodeId)>,
    custom_weights: Option<Vec<f64>>,
    adjacency: Vec<Vec<(NodeId, usize)>>, // per node: (neighbor, edge index)
}

impl SpatialGraph {
    /// Builds a graph from per-node positions and an edge list, rejecting any
    /// invariant violation. Edge endpoint order is normalized; the edge list
    /// order is canonicalized (weights follow their edges).
    pub fn new(
        dim: usize,
        positions: Vec<Vec<f64>>,
        edges: Vec<(NodeId, NodeId)>,
        custom_weights: Option<Vec<f64>>,
    ) -> Result<Self, GraphError> {
        let violations = validate_parts(dim, &positions, &edges, custom_weights.as_deref());
        if !violations.is_empty() {
            return Err(GraphError::Invalid(violations));
        }
        Ok(Self::new_unchecked(dim, positions, edges, custom_weights))
    }

    /// Constructs without validation. Callers must uphold all invariants.
    pub(crate) fn new_unchecked(
        dim: usize,
        positions: Vec<Vec<f64>>,
        edges: Vec<(NodeId, NodeId)>,
        custom_weights: Option<Vec<f64>>,
    ) -> Self {
        let n = positions.len();
        let mut flat = Vec::with_capacity(n * dim);
        for pos in &positions {
            flat.extend_from_slice(pos);
        }
        let mut order: Vec<usize> = (0..edges.len()).collect();
        let canon: Vec<(NodeId, NodeId)> =
            edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        order.sort_unstable_by_key(|&i| canon[i]);
        let edges: Vec<(NodeId, NodeId)> = order.iter().map(|&i| canon[i]).collect();
        let custom_weights =
            custom_weights.map(|ws| order.iter().map(|&i| ws[i]).collect::<Vec<_>>());
        let mut adjacency = vec![Vec::new(); n];
        for (idx, &(u, v)) in edges.iter().enumerate() {
            adjacency[u].push((v, idx));
            adjacency[v].push((u, idx));
        }
        Self {
            dim,
            positions: flat,
            edges,
            custom_weights,
            adjacency,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn node_count(&self) -> usize {
        self.positions.len().checked_div(self.dim).unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn position(&self, v: NodeId) -> &[f64] {
        &self.positions[v * self.dim..(v + 1) * self.dim]
    }

    /// Positions as one row per node.
    pub fn positions(&self) -> Vec<Vec<f64>> {
        (0..self.node_count())
            .map(|v| self.position(v).to_vec())
            .collect()
    }

    /// Canonically sorted edge list, each pair with `u < v`.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn custom_weights(&self) -> Option<&[f64]> {
        self.custom_weights.as_deref()
    }

    /// Neighbors of `v` as `(neighbor, edge index)` pairs.
    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, usize)] {
        &self.adjacency[v]
    }

    /// Combinatorial degree (incident edge count).
    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_index(&self, u: NodeId, v: NodeId) -> Option<usize> {
        self.adjacency
            .get(u)?
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, idx)| idx)
    }

    /// Checks that `weighting` can be evaluated on this graph.
    pub fn check_weighting(&self, weighting: EdgeWeighting) -> Result<(), GraphError> {
        match weighting {
            EdgeWeighting::Length => Ok(()),
            EdgeWeighting::Custom if self.custom_weights.is_some() => Ok(()),
            EdgeWeighting::Custom => Err(GraphError::MissingCustomWeights),
        }
    }

    /// Weight of the edge with index `idx` under `weighting`.
    pub fn edge_weight_by_index(
        &self,
        weighting: EdgeWeighting,
        idx: usize,
    ) -> Result<f64, GraphError> {
        let (u, v) = self.edges[idx];
        match weighting {
            EdgeWeighting::Length => Ok(euclidean(self.position(u), self.position(v))),
            EdgeWeighting::Custom => self
                .custom_weights
                .as_ref()
                .map(|ws| ws[idx])
                .ok_or(GraphError::MissingCustomWeights),
        }
    }

    /// Weight of the edge `(u, v)` under `weighting`. Symmetric in the
    /// endpoints; errors if the edge is absent or the weighting is invalid.
    pub fn edge_weight(
        &self,
        weighting: EdgeWeighting,
        u: NodeId,
        v: NodeId,
    ) -> Result<f64, GraphError> {
        self.check_weighting(weighting)?;
        let idx = self
            .edge_index(u, v)
            .ok_or(GraphError::NoSuchEdge { u, v })?;
        self.edge_weight_by_index(weighting, idx)
    }

    /// All edge weights under `weighting`, parallel to `edges()`.
    pub fn edge_weights(&self, weighting: EdgeWeighting) -> Result<Vec<f64>, GraphError> {
        self.check_weighting(weighting)?;
        (0..self.edges.len())
            .map(|idx| self.edge_weight_by_index(weighting, idx))
            .collect()
    }

    /// Sum of incident edge weights; 0 for isolated nodes.
    pub fn weighted_degree(&self, weighting: EdgeWeighting, v: NodeId) -> Result<f64, GraphError> {
        self.check_weighting(weighting)?;
        self.adjacency[v]
            .iter()
            .map(|&(_, idx)| self.edge_weight_by_index(weighting, idx))
            .sum()
    }

    /// Re-checks every invariant; empty on a graph built through [`Self::new`].
    pub fn validate(&self) -> Vec<Violation> {
        validate_parts(
            self.dim,
            &self.positions(),
            &self.edges,
            self.custom_weights.as_deref(),
        )
    }
}

/// Euclidean distance between two coordinate slices of equal length.
pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Reports every invariant violation in the raw graph data. An empty result
/// means the parts describe a valid [`SpatialGraph`].
pub fn validate_parts(
    dim: usize,
    positions: &[Vec<f64>],
    edges: &[(NodeId, NodeId)],
    custom_weights: Option<&[f64]>,
) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = positions.len();
    if n == 0 {
        out.push(Violation::NoNodes);
    }
    if dim == 0 {
        out.push(Violation::ZeroDimension);
    }
    for (node, pos) in positions.iter().enumerate() {
        if pos.len() != dim {
            out.push(Violation::PositionDimension {
                node,
                expected: dim,
                got: pos.len(),
            });
        }
        if pos.iter().any(|c| !c.is_finite()) {
            out.push(Violation::NonFiniteCoordinate { node });
        }
    }
    let mut seen = std::collections::HashSet::new();
    for &(u, v) in edges {
        if u >= n || v >= n {
            out.push(Violation::InvalidEndpoint { u, v, n });
            continue;
        }
        if u == v {
            out.push(Violation::SelfLoop { node: u });
            continue;
        }
        if !seen.insert((u.min(v), u.max(v))) {
            out.push(Violation::DuplicateEdge {
                u: u.min(v),
                v: u.max(v),
            });
        }
    }
    if let Some(ws) = custom_weights {
        if ws.len() != edges.len() {
            out.push(Violation::WeightCountMismatch {
                expected: edges.len(),
                got: ws.len(),
            });
        }
        for (i, &w) in ws.iter().enumerate() {
            if !(w.is_finite() && w > 0.0) {
                let (u, v) = edges.get(i).copied().unwrap_or((0, 0));
                out.push(Violation::InvalidCustomWeight { u, v, value: w });
            }
        }
    }
    out
}
