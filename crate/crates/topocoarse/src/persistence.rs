//! Persistence diagrams in dimensions 0 and 1 from a filtered simplex stream.
//!
//! Dimension 0 is paired with a union-find pass over the sorted stream: an
//! edge joining two components kills the younger class (elder rule).
//! Dimension 1 pairs cycle-creating edges against triangles via column
//! reduction of the boundary matrix over Z/2. [`naive_persistence_oracle`]
//! reduces the full boundary matrix with no shortcuts and exists solely to
//! cross-check [`compute_persistence`].

use std::collections::HashMap;

use thiserror::Error;

use crate::filtration::FilteredComplex;

#[derive(Debug, Error)]
pub enum PersistenceError {
    #[error("invalid filtration stream: {0}")]
    InvalidFiltration(String),
}

/// One feature: born at `birth`, dead at `death` (`+inf` for essential
/// classes). `truncated` marks deaths capped at the stream's `r_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistencePoint {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
    pub truncated: bool,
}

impl PersistencePoint {
    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }

    pub fn is_essential(&self) -> bool {
        self.death.is_infinite()
    }

    /// Birth equals death; such points never affect bottleneck distances and
    /// are excluded from serialized diagrams by default.
    pub fn is_zero_persistence(&self) -> bool {
        self.death == self.birth
    }
}

/// Canonically sorted multiset of persistence points.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram {
    points: Vec<PersistencePoint>,
    essential_count_dim0: usize,
}

impl PersistenceDiagram {
    pub fn from_points(mut points: Vec<PersistencePoint>) -> Self {
        sort_points(&mut points);
        let essential_count_dim0 = points
            .iter()
            .filter(|p| p.dim == 0 && p.is_essential())
            .count();
        Self {
            points,
            essential_count_dim0,
        }
    }

    /// Every recorded point, including zero-persistence ones.
    pub fn points(&self) -> &[PersistencePoint] {
        &self.points
    }

    pub fn points_in_dim(&self, dim: usize) -> impl Iterator<Item = &PersistencePoint> {
        self.points.iter().filter(move |p| p.dim == dim)
    }

    /// Points of a dimension with strictly positive persistence.
    pub fn significant_in_dim(&self, dim: usize) -> impl Iterator<Item = &PersistencePoint> {
        self.points_in_dim(dim).filter(|p| !p.is_zero_persistence())
    }

    /// Finite `(birth, death)` pairs with strictly positive persistence.
    pub fn finite_pairs_in_dim(&self, dim: usize) -> Vec<(f64, f64)> {
        self.significant_in_dim(dim)
            .filter(|p| !p.is_essential())
            .map(|p| (p.birth, p.death))
            .collect()
    }

    pub fn essential_count_dim0(&self) -> usize {
        self.essential_count_dim0
    }

    /// Largest finite persistence in a dimension; 0 when there is none.
    pub fn max_persistence(&self, dim: usize) -> f64 {
        self.significant_in_dim(dim)
            .filter(|p| !p.is_essential())
            .map(|p| p.persistence())
            .fold(0.0, f64::max)
    }
}

fn sort_points(points: &mut [PersistencePoint]) {
    points.sort_unstable_by(|a, b| {
        a.dim
            .cmp(&b.dim)
            .then(a.birth.total_cmp(&b.birth))
            .then(a.death.total_cmp(&b.death))
            .then(a.truncated.cmp(&b.truncated))
    });
}

/// Computes the diagram of a valid filtration stream.
pub fn compute_persistence(fc: &FilteredComplex) -> Result<PersistenceDiagram, PersistenceError> {
    let simplices = fc.simplices();
    let id_bound = simplices
        .iter()
        .flat_map(|s| s.vertices())
        .copied()
        .max()
        .map_or(0, |m| m + 1);

    let mut points = Vec::new();

    // union-find with per-root creator info for the elder rule
    let mut parent: Vec<usize> = (0..id_bound).collect();
    let mut creator: Vec<(f64, usize)> = vec![(f64::NAN, usize::MAX); id_bound];
    let mut vertex_seen = vec![false; id_bound];
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    let mut edge_ordinal: HashMap<(usize, usize), usize> = HashMap::new();
    let mut edge_times: Vec<f64> = Vec::new();
    let mut edge_positive: Vec<bool> = Vec::new();
    let mut tri_times: Vec<f64> = Vec::new();
    // triangle ordinals incident to each edge, ascending
    let mut cofacets: Vec<Vec<usize>> = Vec::new();

    for s in simplices {
        match s.dim() {
            0 => {
                let v = s.vertices()[0];
                if vertex_seen[v] {
                    return Err(PersistenceError::InvalidFiltration(format!(
                        "duplicate vertex {v}"
                    )));
                }
                vertex_seen[v] = true;
                creator[v] = (s.time(), v);
            }
            1 => {
                let (u, v) = (s.vertices()[0], s.vertices()[1]);
                if !vertex_seen[u] || !vertex_seen[v] {
                    return Err(PersistenceError::InvalidFiltration(format!(
                        "edge ({u}, {v}) precedes one of its vertices"
                    )));
                }
                let ord = edge_times.len();
                if edge_ordinal.insert((u, v), ord).is_some() {
                    return Err(PersistenceError::InvalidFiltration(format!(
                        "duplicate edge ({u}, {v})"
                    )));
                }
                edge_times.push(s.time());
                cofacets.push(Vec::new());
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru == rv {
                    edge_positive.push(true);
                } else {
                    edge_positive.push(false);
                    // the class with the later birth dies; on equal births
                    // the larger creating-vertex id dies
                    let (cu, cv) = (creator[ru], creator[rv]);
                    let (survivor, dying) = if (cu.0, cu.1) <= (cv.0, cv.1) {
                        (ru, rv)
                    } else {
                        (rv, ru)
                    };
                    points.push(PersistencePoint {
                        dim: 0,
                        birth: creator[dying].0,
                        death: s.time(),
                        truncated: false,
                    });
                    parent[dying] = survivor;
                }
            }
            2 => {
                let (u, v, w) = (s.vertices()[0], s.vertices()[1], s.vertices()[2]);
                let tri = tri_times.len();
                for face in [(u, v), (u, w), (v, w)] {
                    match edge_ordinal.get(&face) {
                        Some(&ord) => cofacets[ord].push(tri),
                        None => {
                            return Err(PersistenceError::InvalidFiltration(format!(
                                "triangle ({u}, {v}, {w}) precedes edge {face:?}"
                            )))
                        }
                    }
                }
                tri_times.push(s.time());
            }
            d => {
                return Err(PersistenceError::InvalidFiltration(format!(
                    "unsupported simplex dimension {d}"
                )))
            }
        }
    }

    // essential components
    let mut essential_roots = std::collections::HashSet::new();
    for (v, &seen) in vertex_seen.iter().enumerate() {
        if seen {
            essential_roots.insert(find(&mut parent, v));
        }
    }
    for &r in &essential_roots {
        points.push(PersistencePoint {
            dim: 0,
            birth: creator[r].0,
            death: f64::INFINITY,
            truncated: false,
        });
    }

    // Dimension 1 by reducing the anti-transposed matrix: columns are the
    // cycle-creating edges in reverse filtration order, entries their
    // triangle cofacets, and the pivot is the earliest cofacet. This yields
    // the same persistence pairs as reducing triangle boundaries (the
    // standard duality), while clearing lets the component-killing edges be
    // skipped outright; on metric streams nearly every column claims its
    // pivot immediately instead of dragging through long addition chains.
    let mut pivot_owner: Vec<Option<usize>> = vec![None; tri_times.len()];
    let mut owner_col: Vec<Vec<usize>> = vec![Vec::new(); edge_times.len()];
    for edge in (0..edge_times.len()).rev() {
        if !edge_positive[edge] {
            continue;
        }
        let mut col = std::mem::take(&mut cofacets[edge]);
        loop {
            match col.first() {
                None => {
                    // never killed: capped at the truncation radius
                    let death = fc.r_max();
                    points.push(PersistencePoint {
                        dim: 1,
                        birth: edge_times[edge],
                        death,
                        truncated: death.is_finite(),
                    });
                    break;
                }
                Some(&pivot) => match pivot_owner[pivot] {
                    None => {
                        pivot_owner[pivot] = Some(edge);
                        points.push(PersistencePoint {
                            dim: 1,
                            birth: edge_times[edge],
                            death: tri_times[pivot],
                            truncated: false,
                        });
                        owner_col[edge] = col;
                        break;
                    }
                    Some(other) => col = sym_diff_sorted(&col, &owner_col[other]),
                },
            }
        }
    }

    Ok(PersistenceDiagram::from_points(points))
}

fn sym_diff_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Textbook left-to-right reduction of the full boundary matrix, kept free
/// of shortcuts so it can serve as an independent reference for
/// [`compute_persistence`]. Intended for small streams.
pub fn naive_persistence_oracle(
    fc: &FilteredComplex,
) -> Result<PersistenceDiagram, PersistenceError> {
    use std::collections::BTreeSet;

    let simplices = fc.simplices();
    let m = simplices.len();
    let mut index_of: HashMap<Vec<usize>, usize> = HashMap::new();
    for (idx, s) in simplices.iter().enumerate() {
        if index_of.insert(s.vertices().to_vec(), idx).is_some() {
            return Err(PersistenceError::InvalidFiltration(format!(
                "duplicate simplex {:?}",
                s.vertices()
            )));
        }
    }

    let mut cols: Vec<BTreeSet<usize>> = Vec::with_capacity(m);
    for (idx, s) in simplices.iter().enumerate() {
        let mut col = BTreeSet::new();
        if s.dim() > 0 {
            for skip in 0..s.vertices().len() {
                let face: Vec<usize> = s
                    .vertices()
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                let fi = *index_of.get(&face).ok_or_else(|| {
                    PersistenceError::InvalidFiltration(format!("missing face {face:?}"))
                })?;
                if fi >= idx {
                    return Err(PersistenceError::InvalidFiltration(format!(
                        "face {face:?} does not precede its coface"
                    )));
                }
                col.insert(fi);
            }
        }
        cols.push(col);
    }

    let mut low_owner: HashMap<usize, usize> = HashMap::new();
    for j in 0..m {
        while let Some(&low) = cols[j].iter().next_back() {
            match low_owner.get(&low) {
                Some(&j2) => {
                    let other = cols[j2].clone();
                    cols[j] = cols[j].symmetric_difference(&other).copied().collect();
                }
                None => {
                    low_owner.insert(low, j);
                    break;
                }
            }
        }
    }

    let killed: std::collections::HashSet<usize> = low_owner.keys().copied().collect();
    let mut points = Vec::new();
    for j in 0..m {
        if let Some(&low) = cols[j].iter().next_back() {
            let dim = simplices[low].dim();
            if dim <= 1 {
                points.push(PersistencePoint {
                    dim,
                    birth: simplices[low].time(),
                    death: simplices[j].time(),
                    truncated: false,
                });
            }
        } else if !killed.contains(&j) {
            match simplices[j].dim() {
                0 => points.push(PersistencePoint {
                    dim: 0,
                    birth: simplices[j].time(),
                    death: f64::INFINITY,
                    truncated: false,
                }),
                1 => {
                    let death = fc.r_max();
                    points.push(PersistencePoint {
                        dim: 1,
                        birth: simplices[j].time(),
                        death,
                        truncated: death.is_finite(),
                    });
                }
                _ => {}
            }
        }
    }

    Ok(PersistenceDiagram::from_points(points))
}
