//! Similarity transforms of spatial graphs: `x ↦ k R x + A` with `R`
//! orthogonal (reflections included), `A` a translation, and `k > 0`.
//!
//! Drives the equivariance test suites and the `transform` CLI subcommand.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::SpatialGraph;

#[derive(Debug, Error)]
pub enum SimilarityError {
    #[error("similarity acts on dimension {expected}, graph has dimension {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("rotation matrix must be {dim}x{dim}, got {len} entries")]
    BadShape { dim: usize, len: usize },
    #[error("matrix is not orthogonal (defect {defect:e})")]
    NotOrthogonal { defect: f64 },
    #[error("scale must be strictly positive, got {0}")]
    NonPositiveScale(f64),
}

const ORTHOGONALITY_TOLERANCE: f64 = 1e-12;

/// An element of the similarity group of `R^p`.
#[derive(Debug, Clone, PartialEq)]
pub struct Similarity {
    dim: usize,
    rotation: Vec<f64>, // row-major p×p
    translation: Vec<f64>,
    scale: f64,
}

impl Similarity {
    pub fn new(
        dim: usize,
        rotation: Vec<f64>,
        translation: Vec<f64>,
        scale: f64,
    ) -> Result<Self, SimilarityError> {
        if rotation.len() != dim * dim {
            return Err(SimilarityError::BadShape {
                dim,
                len: rotation.len(),
            });
        }
        if translation.len() != dim {
            return Err(SimilarityError::BadShape {
                dim,
                len: translation.len(),
            });
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(SimilarityError::NonPositiveScale(scale));
        }
        let defect = orthogonality_defect(&rotation, dim);
        if defect > ORTHOGONALITY_TOLERANCE {
            return Err(SimilarityError::NotOrthogonal { defect });
        }
        Ok(Self {
            dim,
            rotation,
            translation,
            scale,
        })
    }

    pub fn identity(dim: usize) -> Self {
        let mut rotation = vec![0.0; dim * dim];
        for i in 0..dim {
            rotation[i * dim + i] = 1.0;
        }
        Self {
            dim,
            rotation,
            translation: vec![0.0; dim],
            scale: 1.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rotation(&self) -> &[f64] {
        &self.rotation
    }

    pub fn translation(&self) -> &[f64] {
        &self.translation
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Replaces the scale, keeping rotation and translation.
    pub fn with_scale(mut self, scale: f64) -> Result<Self, SimilarityError> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(SimilarityError::NonPositiveScale(scale));
        }
        self.scale = scale;
        Ok(self)
    }

    /// `k R x + A` for a single point.
    pub fn apply_point(&self, x: &[f64]) -> Vec<f64> {
        let p = self.dim;
        (0..p)
            .map(|i| {
                let row = &self.rotation[i * p..(i + 1) * p];
                self.scale * row.iter().zip(x).map(|(r, c)| r * c).sum::<f64>()
                    + self.translation[i]
            })
            .collect()
    }
}

/// Largest absolute entry of `RᵀR − I`.
pub fn orthogonality_defect(rotation: &[f64], dim: usize) -> f64 {
    let mut defect = 0.0_f64;
    for i in 0..dim {
        for j in 0..dim {
            let dot: f64 = (0..dim)
                .map(|k| rotation[k * dim + i] * rotation[k * dim + j])
                .sum();
            let target = if i == j { 1.0 } else { 0.0 };
            defect = defect.max((dot - target).abs());
        }
    }
    defect
}

/// Transforms every node position; edges, ids, and custom weights are
/// untouched.
pub fn apply_similarity(g: &SpatialGraph, s: &Similarity) -> Result<SpatialGraph, SimilarityError> {
    if s.dim() != g.dim() {
        return Err(SimilarityError::DimensionMismatch {
            expected: s.dim(),
            got: g.dim(),
        });
    }
    let positions = (0..g.node_count())
        .map(|v| s.apply_point(g.position(v)))
        .collect();
    Ok(SpatialGraph::new(
        g.dim(),
        positions,
        g.edges().to_vec(),
        g.custom_weights().map(|w| w.to_vec()),
    )
    .expect("similarity preserves graph validity"))
}

/// Seeded random similarity: orthogonal matrix by twice-iterated
/// Gram-Schmidt over random entries (reflections occur naturally),
/// translation uniform in `[-10, 10]^p`, scale log-uniform in `[0.1, 10]`.
pub fn random_similarity(dim: usize, seed: u64) -> Similarity {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rotation = loop {
        let raw: Vec<f64> = (0..dim * dim)
            .map(|_| rng.random_range(-1.0..1.0))
            .collect();
        if let Some(q) = orthogonalize(&raw, dim) {
            break q;
        }
    };
    let translation: Vec<f64> = (0..dim).map(|_| rng.random_range(-10.0..10.0)).collect();
    let scale = (rng.random_range(0.1_f64.ln()..10.0_f64.ln())).exp();
    Similarity::new(dim, rotation, translation, scale)
        .expect("orthogonalized matrix satisfies the similarity invariants")
}

/// Modified Gram-Schmidt on the columns, run twice for numerical
/// orthogonality; `None` when the input is too close to singular.
fn orthogonalize(raw: &[f64], dim: usize) -> Option<Vec<f64>> {
    let mut cols: Vec<Vec<f64>> = (0..dim)
        .map(|j| (0..dim).map(|i| raw[i * dim + j]).collect())
        .collect();
    for _pass in 0..2 {
        for j in 0..dim {
            for k in 0..j {
                let proj: f64 = cols[j].iter().zip(&cols[k]).map(|(a, b)| a * b).sum();
                let prev = cols[k].clone();
                for (c, p) in cols[j].iter_mut().zip(&prev) {
                    *c -= proj * p;
                }
            }
            let norm: f64 = cols[j].iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm < 1e-6 {
                return None;
            }
            cols[j].iter_mut().for_each(|c| *c /= norm);
        }
    }
    let mut out = vec![0.0; dim * dim];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..dim {
            out[i * dim + j] = col[i];
        }
    }
    Some(out)
}
