//! Per-graph feature vectors from persistence diagrams.
//!
//! Dimension-1 statistics (mean, max, total persistence, mean birth and
//! death), the L2 norm of the first persistence landscapes, the component
//! count, and the number of degree-1 nodes. Landscapes are evaluated by
//! exact piecewise-linear arithmetic: between consecutive critical abscissas
//! (tent breakpoints and pairwise tent crossings) every order statistic of
//! the tent values is linear, so its squared integral has a closed form.

use crate::graph::SpatialGraph;
use crate::persistence::PersistenceDiagram;

/// Number of landscape levels entering the norm.
pub const LANDSCAPE_LEVELS: usize = 5;

/// Stable feature layout; serialized in field order.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub n_components: usize,
    pub mean_pers_1: f64,
    pub max_pers_1: f64,
    pub total_pers_1: f64,
    pub mean_birth_1: f64,
    pub mean_death_1: f64,
    pub landscape_l2: f64,
    pub n_degree1_nodes: usize,
}

/// Extracts the feature vector of a graph from its persistence diagram.
///
/// Truncated points contribute their capped deaths; every dimension-1
/// statistic is zero when the diagram has no significant dimension-1 points.
pub fn extract_features(g: &SpatialGraph, pd: &PersistenceDiagram) -> FeatureVector {
    let pairs = pd.finite_pairs_in_dim(1);
    let k = pairs.len() as f64;
    let (mut total, mut max, mut birth_sum, mut death_sum) = (0.0, 0.0, 0.0, 0.0);
    for &(b, d) in &pairs {
        let p = d - b;
        total += p;
        max = f64::max(max, p);
        birth_sum += b;
        death_sum += d;
    }
    let (mean_pers_1, mean_birth_1, mean_death_1) = if pairs.is_empty() {
        (0.0, 0.0, 0.0)
    } else {
        (total / k, birth_sum / k, death_sum / k)
    };
    FeatureVector {
        n_components: pd.essential_count_dim0(),
        mean_pers_1,
        max_pers_1: max,
        total_pers_1: total,
        mean_birth_1,
        mean_death_1,
        landscape_l2: landscape_l2_norm(pd, LANDSCAPE_LEVELS),
        n_degree1_nodes: (0..g.node_count()).filter(|&v| g.degree(v) == 1).count(),
    }
}

/// L2 norm of the first `k_max` persistence landscapes of the dimension-1
/// diagram: `sqrt(Σ_k ∫ λ_k(t)² dt)` where `λ_k(t)` is the k-th largest of
/// the tent values `max(0, min(t − b, d − t))` over the diagram points.
pub fn landscape_l2_norm(pd: &PersistenceDiagram, k_max: usize) -> f64 {
    landscape_l2_norm_of_pairs(&pd.finite_pairs_in_dim(1), k_max)
}

/// Same, over raw `(birth, death)` pairs with `death > birth`.
pub fn landscape_l2_norm_of_pairs(pairs: &[(f64, f64)], k_max: usize) -> f64 {
    if pairs.is_empty() || k_max == 0 {
        return 0.0;
    }
    let xs = critical_abscissas(pairs);
    let levels = k_max.min(pairs.len());
    let mut total = 0.0;
    let mut vals0 = tent_values_sorted(pairs, xs[0]);
    for window in xs.windows(2) {
        let (x0, x1) = (window[0], window[1]);
        let vals1 = tent_values_sorted(pairs, x1);
        let dx = x1 - x0;
        if dx > 0.0 {
            for k in 0..levels {
                let (y0, y1) = (vals0[k], vals1[k]);
                // exact integral of a linear segment squared
                total += dx * (y0 * y0 + y0 * y1 + y1 * y1) / 3.0;
            }
        }
        vals0 = vals1;
    }
    total.sqrt()
}

/// Tent value of the point `(b, d)` at `t`.
fn tent(b: f64, d: f64, t: f64) -> f64 {
    (t - b).min(d - t).max(0.0)
}

fn tent_values_sorted(pairs: &[(f64, f64)], t: f64) -> Vec<f64> {
    let mut vals: Vec<f64> = pairs.iter().map(|&(b, d)| tent(b, d, t)).collect();
    vals.sort_unstable_by(|a, b| b.total_cmp(a));
    vals
}

/// All abscissas where some order statistic of the tent values can change
/// slope: tent breakpoints and every up/down crossing of two tents.
fn critical_abscissas(pairs: &[(f64, f64)]) -> Vec<f64> {
    let mut xs = Vec::with_capacity(3 * pairs.len() + pairs.len() * pairs.len());
    for &(b, d) in pairs {
        xs.push(b);
        xs.push((b + d) / 2.0);
        xs.push(d);
    }
    // the rising side of one tent crosses the falling side of another at
    // (b_i + d_j) / 2; extra abscissas are harmless
    for &(b_i, _) in pairs {
        for &(_, d_j) in pairs {
            xs.push((b_i + d_j) / 2.0);
        }
    }
    xs.sort_unstable_by(f64::total_cmp);
    xs.dedup();
    xs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::persistence::PersistencePoint;

    fn diagram(dim1_points: &[(f64, f64)], essentials: usize) -> PersistenceDiagram {
        let mut pts: Vec<PersistencePoint> = dim1_points
            .iter()
            .map(|&(birth, death)| PersistencePoint {
                dim: 1,
                birth,
                death,
                truncated: false,
            })
            .collect();
        for _ in 0..essentials {
            pts.push(PersistencePoint {
                dim: 0,
                birth: 0.0,
                death: f64::INFINITY,
                truncated: false,
            });
        }
        PersistenceDiagram::from_points(pts)
    }

    #[test]
    fn single_point_statistics() {
        let g =
            SpatialGraph::new(2, vec![vec![0.0, 0.0], vec![1.0, 0.0]], vec![(0, 1)], None).unwrap();
        let pd = diagram(&[(1.0, 2.0)], 1);
        let f = extract_features(&g, &pd);
        assert_eq!(f.n_components, 1);
        assert_eq!(f.mean_pers_1, 1.0);
        assert_eq!(f.max_pers_1, 1.0);
        assert_eq!(f.total_pers_1, 1.0);
        assert_eq!(f.mean_birth_1, 1.0);
        assert_eq!(f.mean_death_1, 2.0);
        assert_eq!(f.n_degree1_nodes, 2);
    }

    #[test]
    fn empty_dim1_zeroes_statistics() {
        let g = SpatialGraph::new(2, vec![vec![0.0, 0.0]], vec![], None).unwrap();
        let f = extract_features(&g, &diagram(&[], 1));
        assert_eq!(f.mean_pers_1, 0.0);
        assert_eq!(f.max_pers_1, 0.0);
        assert_eq!(f.total_pers_1, 0.0);
        assert_eq!(f.mean_birth_1, 0.0);
        assert_eq!(f.mean_death_1, 0.0);
        assert_eq!(f.landscape_l2, 0.0);
        assert_eq!(f.n_degree1_nodes, 0);
    }

    #[test]
    fn path_graph_has_two_leaves() {
        let g = SpatialGraph::new(
            2,
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]],
            vec![(0, 1), (1, 2)],
            None,
        )
        .unwrap();
        let f = extract_features(&g, &diagram(&[], 1));
        assert_eq!(f.n_degree1_nodes, 2);
    }

    #[test]
    fn unit_tent_norm_closed_form() {
        // tent of (1, 3): ∫ λ_1² = 2/3
        let norm = landscape_l2_norm(&diagram(&[(1.0, 3.0)], 0), 5);
        assert!((norm - (2.0_f64 / 3.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn disjoint_tents_add_in_the_first_landscape() {
        let norm = landscape_l2_norm(&diagram(&[(0.0, 2.0), (10.0, 12.0)], 0), 5);
        assert!((norm - (4.0_f64 / 3.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn identical_tents_fill_two_levels() {
        // λ_1 = λ_2 = the same tent, so the squared norm doubles
        let norm = landscape_l2_norm(&diagram(&[(1.0, 3.0), (1.0, 3.0)], 0), 5);
        assert!((norm - (4.0_f64 / 3.0).sqrt()).abs() < 1e-12);
        // with a single level allowed, only λ_1 counts
        let norm1 = landscape_l2_norm(&diagram(&[(1.0, 3.0), (1.0, 3.0)], 0), 1);
        assert!((norm1 - (2.0_f64 / 3.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn scaling_diagram_scales_norm_by_k_to_three_halves() {
        let base: Vec<(f64, f64)> = vec![(0.0, 2.0), (0.5, 3.0), (1.0, 1.5)];
        let k = 3.7;
        let scaled: Vec<(f64, f64)> = base.iter().map(|&(b, d)| (k * b, k * d)).collect();
        let n0 = landscape_l2_norm_of_pairs(&base, 5);
        let n1 = landscape_l2_norm_of_pairs(&scaled, 5);
        assert!((n1 - k.powf(1.5) * n0).abs() <= 1e-9 * n1.abs().max(1.0));
    }

    #[test]
    fn quadrature_oracle_agreement() {
        // dense trapezoidal integration over the diagram support
        fn quadrature(pairs: &[(f64, f64)], k_max: usize, samples: usize) -> f64 {
            let lo = pairs.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
            let hi = pairs.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
            let levels = k_max.min(pairs.len());
            let h = (hi - lo) / samples as f64;
            let mut total = 0.0;
            let mut prev = tent_values_sorted(pairs, lo);
            for i in 1..=samples {
                let t = lo + h * i as f64;
                let cur = tent_values_sorted(pairs, t);
                for k in 0..levels {
                    total += h * (prev[k] * prev[k] + cur[k] * cur[k]) / 2.0;
                }
                prev = cur;
            }
            total.sqrt()
        }
        let pairs: Vec<(f64, f64)> = vec![
            (0.0, 4.0),
            (1.0, 2.5),
            (1.5, 6.0),
            (2.0, 2.25),
            (3.0, 5.5),
            (4.9, 5.1),
        ];
        let exact = landscape_l2_norm_of_pairs(&pairs, 5);
        let approx = quadrature(&pairs, 5, 100_000);
        assert!(
            (exact - approx).abs() <= 1e-6 * exact,
            "exact {exact} vs quadrature {approx}"
        );
    }
}
