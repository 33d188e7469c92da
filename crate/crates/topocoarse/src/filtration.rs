//! Simplex streams over the shortest-path metric, up to dimension 2.
//!
//! Two variants are built from the same metric. In both, vertices enter at
//! scale 0 and the pair `{u, v}` enters at `d(u, v)`. The triangle-aware
//! variant delays each triangle to the sum of its two smallest side lengths,
//! so cycles bounded by three edges keep nonzero persistence; the unmodified
//! variant admits a triangle at its longest side, which extinguishes such
//! cycles immediately.

use crate::metric::GraphMetric;

/// One simplex with its appearance scale. Vertices are strictly increasing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilteredSimplex {
    time: f64,
    verts: [usize; 3],
    dim: u8,
}

impl FilteredSimplex {
    pub fn vertex(time: f64, v: usize) -> Self {
        Self {
            time,
            verts: [v, usize::MAX, usize::MAX],
            dim: 0,
        }
    }

    pub fn edge(time: f64, u: usize, v: usize) -> Self {
        debug_assert!(u < v);
        Self {
            time,
            verts: [u, v, usize::MAX],
            dim: 1,
        }
    }

    pub fn triangle(time: f64, u: usize, v: usize, w: usize) -> Self {
        debug_assert!(u < v && v < w);
        Self {
            time,
            verts: [u, v, w],
            dim: 2,
        }
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts[..=self.dim as usize]
    }
}

/// A stream of simplices sorted by `(time, dim, vertices)`, which places
/// every face before its cofaces and makes the order fully deterministic.
#[derive(Debug, Clone)]
pub struct FilteredComplex {
    simplices: Vec<FilteredSimplex>,
    r_max: f64,
    n_vertices: usize,
}

impl FilteredComplex {
    pub fn from_simplices(mut simplices: Vec<FilteredSimplex>, r_max: f64) -> Self {
        sort_stream(&mut simplices);
        let n_vertices = simplices.iter().filter(|s| s.dim() == 0).count();
        Self {
            simplices,
            r_max,
            n_vertices,
        }
    }

    pub fn simplices(&self) -> &[FilteredSimplex] {
        &self.simplices
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// True when every face appears in the stream no later than its cofaces.
    pub fn is_valid_order(&self) -> bool {
        use std::collections::HashMap;
        let mut seen: HashMap<&[usize], usize> = HashMap::new();
        for (idx, s) in self.simplices.iter().enumerate() {
            if s.dim() > 0 {
                for skip in 0..=s.dim() {
                    let face: Vec<usize> = s
                        .vertices()
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    match self
                        .simplices
                        .iter()
                        .position(|t| t.vertices() == face.as_slice())
                    {
                        Some(fi) if fi < idx => {}
                        _ => return false,
                    }
                }
            }
            seen.insert(s.vertices(), idx);
        }
        true
    }
}

fn sort_stream(simplices: &mut [FilteredSimplex]) {
    simplices.sort_unstable_by(|a, b| {
        a.time
            .total_cmp(&b.time)
            .then(a.dim.cmp(&b.dim))
            .then(a.verts.cmp(&b.verts))
    });
}

/// Default truncation radius: twice the largest component diameter, which
/// closes every 1-cycle (each triangle time is at most twice the diameter of
/// its component).
pub fn default_r_max(metric: &GraphMetric) -> f64 {
    2.0 * metric.max_component_diameter()
}

/// Triangle-aware stream: each triangle enters at the sum of its two
/// smallest side lengths.
pub fn build_filtration(metric: &GraphMetric, r_max: f64) -> FilteredComplex {
    build_impl(metric, r_max, TriangleRule::SumOfTwoSmallest)
}

/// Unmodified stream: each triangle enters at its longest side length.
pub fn build_unmodified_filtration(metric: &GraphMetric, r_max: f64) -> FilteredComplex {
    build_impl(metric, r_max, TriangleRule::MaxSide)
}

#[derive(Clone, Copy)]
enum TriangleRule {
    SumOfTwoSmallest,
    MaxSide,
}

fn build_impl(metric: &GraphMetric, r_max: f64, rule: TriangleRule) -> FilteredComplex {
    let n = metric.n();
    let mut simplices = Vec::new();
    for v in 0..n {
        simplices.push(FilteredSimplex::vertex(0.0, v));
    }
    for u in 0..n {
        for v in (u + 1)..n {
            let d = metric.dist(u, v);
            if d.is_finite() && d <= r_max {
                simplices.push(FilteredSimplex::edge(d, u, v));
            }
        }
    }
    for u in 0..n {
        for v in (u + 1)..n {
            let duv = metric.dist(u, v);
            if !duv.is_finite() || duv > r_max {
                continue;
            }
            for w in (v + 1)..n {
                let duw = metric.dist(u, w);
                let dvw = metric.dist(v, w);
                if !(duw.is_finite() && dvw.is_finite()) {
                    continue;
                }
                let mut sides = [duv, duw, dvw];
                sides.sort_unstable_by(f64::total_cmp);
                let time = match rule {
                    // clamped at the longest side: a no-op under the exact
                    // triangle inequality, but floating-point shortest paths
                    // can undershoot it by an ulp and break face order
                    TriangleRule::SumOfTwoSmallest => (sides[0] + sides[1]).max(sides[2]),
                    TriangleRule::MaxSide => sides[2],
                };
                if time <= r_max {
                    simplices.push(FilteredSimplex::triangle(time, u, v, w));
                }
            }
        }
    }
    sort_stream(&mut simplices);
    FilteredComplex {
        simplices,
        r_max,
        n_vertices: n,
    }
}
