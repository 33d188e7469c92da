//! Score-driven selection of the coarsening threshold.
//!
//! Candidate thresholds are empirical quantiles of the edge weights. Each
//! grid value is scored as the fraction of surviving edges plus a normalized
//! bottleneck distance between the diagram of the original graph and the
//! diagram of its coarsening; the selected threshold minimizes the score.

use rayon::prelude::*;
use thiserror::Error;

use crate::bottleneck::{diagram_distance, BottleneckError, DiagramDistance};
use crate::coarsen::{coarsen, CoarsenError, CoarseningResult, Positioning};
use crate::filtration::build_filtration;
use crate::graph::{EdgeWeighting, GraphError, SpatialGraph};
use crate::metric::{shortest_path_metric, MetricError};
use crate::persistence::{compute_persistence, PersistenceDiagram, PersistenceError};

#[derive(Debug, Error)]
pub enum SelectError {
    #[error("grid size must be at least 1")]
    ZeroGridSize,
    #[error("cannot build a quantile grid from an empty weight list")]
    EmptyWeights,
    #[error("graph has no edges; nothing to score")]
    NoEdges,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Coarsen(#[from] CoarsenError),
    #[error(transparent)]
    Persistence(#[from] PersistenceError),
    #[error(transparent)]
    Bottleneck(#[from] BottleneckError),
    #[error(
        "at theta={theta}: {source}; the truncation radius {r_max} does not cover the reduced \
         graph's connectivity, increase the r_max fraction"
    )]
    TruncationTooTight {
        theta: f64,
        r_max: f64,
        source: BottleneckError,
    },
}

/// Candidate thresholds: deduplicated ascending empirical quantiles of the
/// edge weights at levels `1/(m+1), ..., m/(m+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaGrid {
    m: usize,
    values: Vec<f64>,
    /// Per grid value, the largest quantile level that maps to it.
    alphas: Vec<f64>,
    levels: Vec<f64>,
}

impl ThetaGrid {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn quantile_levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Builds the threshold grid from observed edge weights. The α-quantile is
/// the lower empirical quantile: the order statistic at rank `ceil(α N)`.
pub fn quantile_grid(weights: &[f64], m: usize) -> Result<ThetaGrid, SelectError> {
    if weights.is_empty() {
        return Err(SelectError::EmptyWeights);
    }
    if m == 0 {
        return Err(SelectError::ZeroGridSize);
    }
    let mut sorted = weights.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let levels: Vec<f64> = (1..=m).map(|i| i as f64 / (m + 1) as f64).collect();
    let mut values = Vec::with_capacity(m);
    let mut alphas = Vec::with_capacity(m);
    for &alpha in &levels {
        let rank = (alpha * n).ceil().max(1.0) as usize;
        let value = sorted[rank - 1];
        if values.last() == Some(&value) {
            // duplicate grid value: keep the largest level mapping to it
            *alphas.last_mut().unwrap() = alpha;
        } else {
            values.push(value);
            alphas.push(alpha);
        }
    }
    Ok(ThetaGrid {
        m,
        values,
        alphas,
        levels,
    })
}

/// One evaluated grid row.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreRow {
    pub theta: f64,
    pub alpha: f64,
    pub edge_ratio: f64,
    pub bottleneck: f64,
    pub score: f64,
}

/// The evaluated score curve and the selected threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreCurve {
    /// Rows in ascending θ order (a θ = 0 debug row first, when requested).
    pub rows: Vec<ScoreRow>,
    /// `1 / max_θ d_B`, or `None` when every coarsening leaves the diagram
    /// unchanged and the topological term is disabled.
    pub lambda: Option<f64>,
    /// Index into `rows` of the selected threshold.
    pub argmin_index: usize,
    pub theta_star: f64,
    pub alpha_star: f64,
}

/// Pipeline parameters; `Default` gives the standard configuration
/// (length weighting, average positioning, grid size 10, r_max at twice the
/// largest component diameter, max-over-dimensions diagram distance).
#[derive(Debug, Clone, Copy)]
pub struct ScoreParams {
    pub weighting: EdgeWeighting,
    pub positioning: Positioning,
    pub grid_size: usize,
    pub r_max_frac: f64,
    pub distance: DiagramDistance,
    /// Prepend a θ = 0 debug row (never selected).
    pub include_zero: bool,
}

impl Default for ScoreParams {
    fn default() -> Self {
        Self {
            weighting: EdgeWeighting::Length,
            positioning: Positioning::Average,
            grid_size: 10,
            r_max_frac: 2.0,
            distance: DiagramDistance::Max,
            include_zero: false,
        }
    }
}

/// Result of [`select`]: the chosen coarsening plus everything needed to
/// report the run.
#[derive(Debug, Clone)]
pub struct Selection {
    pub coarsening: CoarseningResult,
    pub curve: ScoreCurve,
    pub pd_original: PersistenceDiagram,
    pub pd_reduced: PersistenceDiagram,
    pub r_max: f64,
}

impl Selection {
    pub fn theta_star(&self) -> f64 {
        self.curve.theta_star
    }
}

fn reduced_diagram(
    g: &SpatialGraph,
    params: &ScoreParams,
    theta: f64,
    r_max: f64,
) -> Result<(CoarseningResult, PersistenceDiagram), SelectError> {
    let c = coarsen(g, params.weighting, theta, params.positioning)?;
    // the coarse graph is re-equipped with Euclidean lengths from the new
    // positions, whatever weighting drove the collapse
    let metric = shortest_path_metric(&c.coarse, EdgeWeighting::Length)?;
    let pd = compute_persistence(&build_filtration(&metric, r_max))?;
    Ok((c, pd))
}

/// Evaluates the score over the whole quantile grid.
pub fn score_curve(g: &SpatialGraph, params: &ScoreParams) -> Result<ScoreCurve, SelectError> {
    Ok(run_pipeline(g, params)?.1)
}

/// Evaluates the grid and returns the coarsening at the selected threshold.
pub fn select(g: &SpatialGraph, params: &ScoreParams) -> Result<Selection, SelectError> {
    let (pd_original, curve, r_max) = run_pipeline(g, params)?;
    let (coarsening, pd_reduced) = reduced_diagram(g, params, curve.theta_star, r_max)?;
    Ok(Selection {
        coarsening,
        curve,
        pd_original,
        pd_reduced,
        r_max,
    })
}

fn run_pipeline(
    g: &SpatialGraph,
    params: &ScoreParams,
) -> Result<(PersistenceDiagram, ScoreCurve, f64), SelectError> {
    if g.edge_count() == 0 {
        return Err(SelectError::NoEdges);
    }
    let weights = g.edge_weights(params.weighting)?;
    let grid = quantile_grid(&weights, params.grid_size)?;

    // one shared truncation radius keeps capped deaths comparable across
    // the original graph and every coarsening
    let metric = shortest_path_metric(g, params.weighting)?;
    let r_max = params.r_max_frac * metric.max_component_diameter();
    let pd_original = compute_persistence(&build_filtration(&metric, r_max))?;

    let evaluate = |theta: f64, alpha: f64| -> Result<(f64, f64, f64, f64), SelectError> {
        let (c, pd) = reduced_diagram(g, params, theta, r_max)?;
        let edge_ratio = c.coarse.edge_count() as f64 / g.edge_count() as f64;
        let d = diagram_distance(&pd_original, &pd, params.distance).map_err(|source| {
            // a mismatch here can only mean the truncated complex of the
            // reduced graph fell apart
            SelectError::TruncationTooTight {
                theta,
                r_max,
                source,
            }
        })?;
        Ok((theta, alpha, edge_ratio, d))
    };
    let mut evaluated: Vec<(f64, f64, f64, f64)> = grid
        .values()
        .par_iter()
        .zip(grid.alphas().par_iter())
        .map(|(&theta, &alpha)| evaluate(theta, alpha))
        .collect::<Result<_, _>>()?;
    if params.include_zero {
        evaluated.insert(0, evaluate(0.0, 0.0)?);
    }

    let offset = usize::from(params.include_zero);
    let d_max = evaluated[offset..]
        .iter()
        .map(|&(_, _, _, d)| d)
        .fold(0.0, f64::max);
    let lambda = (d_max > 0.0).then(|| 1.0 / d_max);

    let rows: Vec<ScoreRow> = evaluated
        .into_iter()
        .map(|(theta, alpha, edge_ratio, bottleneck)| ScoreRow {
            theta,
            alpha,
            edge_ratio,
            bottleneck,
            score: edge_ratio + lambda.unwrap_or(0.0) * bottleneck,
        })
        .collect();

    // argmin over grid rows only; ties go to the larger threshold
    let mut argmin_index = offset;
    for (idx, row) in rows.iter().enumerate().skip(offset) {
        if row.score <= rows[argmin_index].score {
            argmin_index = idx;
        }
    }
    let curve = ScoreCurve {
        theta_star: rows[argmin_index].theta,
        alpha_star: rows[argmin_index].alpha,
        rows,
        lambda,
        argmin_index,
    };
    Ok((pd_original, curve, r_max))
}
