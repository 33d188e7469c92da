//! Exact bottleneck distance between persistence diagrams.
//!
//! The distance is the smallest `c` such that the two diagrams, each
//! augmented with the diagonal, admit a bijection moving no point by more
//! than `c` in the sup norm. The optimum is always attained at one of a
//! finite set of candidate costs (a pairwise distance or a
//! diagonal-projection cost), so a binary search over that set with a
//! bipartite matching feasibility test at each candidate is exact.

use thiserror::Error;

use crate::persistence::PersistenceDiagram;

#[derive(Debug, Error)]
pub enum BottleneckError {
    #[error("essential dimension-0 counts differ: {left} vs {right}")]
    EssentialMismatch { left: usize, right: usize },
}

/// Which dimensions enter the diagram distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiagramDistance {
    Dim0,
    Dim1,
    /// Maximum of the per-dimension distances over dimensions 0 and 1.
    #[default]
    Max,
}

fn linf(p: (f64, f64), q: (f64, f64)) -> f64 {
    (p.0 - q.0).abs().max((p.1 - q.1).abs())
}

fn diagonal_cost(p: (f64, f64)) -> f64 {
    (p.1 - p.0) / 2.0
}

fn check_essentials(a: &PersistenceDiagram, b: &PersistenceDiagram) -> Result<(), BottleneckError> {
    if a.essential_count_dim0() != b.essential_count_dim0() {
        return Err(BottleneckError::EssentialMismatch {
            left: a.essential_count_dim0(),
            right: b.essential_count_dim0(),
        });
    }
    Ok(())
}

/// Bottleneck distance between the dimension-`dim` parts of two diagrams.
///
/// Essential points must agree in count (they then match each other at zero
/// cost, all births being zero) and are excluded from the matching;
/// truncated points take part with their capped deaths.
pub fn bottleneck_distance(
    a: &PersistenceDiagram,
    b: &PersistenceDiagram,
    dim: usize,
) -> Result<f64, BottleneckError> {
    check_essentials(a, b)?;
    Ok(bottleneck_finite(
        &a.finite_pairs_in_dim(dim),
        &b.finite_pairs_in_dim(dim),
    ))
}

/// Distance between two diagrams under the chosen dimension convention.
pub fn diagram_distance(
    a: &PersistenceDiagram,
    b: &PersistenceDiagram,
    which: DiagramDistance,
) -> Result<f64, BottleneckError> {
    match which {
        DiagramDistance::Dim0 => bottleneck_distance(a, b, 0),
        DiagramDistance::Dim1 => bottleneck_distance(a, b, 1),
        DiagramDistance::Max => {
            Ok(bottleneck_distance(a, b, 0)?.max(bottleneck_distance(a, b, 1)?))
        }
    }
}

fn bottleneck_finite(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let mut candidates = vec![0.0];
    candidates.extend(a.iter().map(|&p| diagonal_cost(p)));
    candidates.extend(b.iter().map(|&q| diagonal_cost(q)));
    for &p in a {
        for &q in b {
            candidates.push(linf(p, q));
        }
    }
    candidates.sort_unstable_by(f64::total_cmp);
    candidates.dedup();

    // smallest feasible candidate
    let mut lo = 0;
    let mut hi = candidates.len() - 1;
    debug_assert!(feasible(a, b, candidates[hi]));
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if feasible(a, b, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

/// Perfect-matching feasibility at cost `c` on the diagonally augmented
/// bipartite graph: left vertices are the points of `a` plus one diagonal
/// slot per point of `b`, right vertices symmetrically.
fn feasible(a: &[(f64, f64)], b: &[(f64, f64)], c: f64) -> bool {
    let (na, nb) = (a.len(), b.len());
    let total = na + nb;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
    for (i, &p) in a.iter().enumerate() {
        for (j, &q) in b.iter().enumerate() {
            if linf(p, q) <= c {
                adj[i].push(j);
            }
        }
        if diagonal_cost(p) <= c {
            adj[i].push(nb + i); // its own diagonal slot
        }
    }
    for (j, &q) in b.iter().enumerate() {
        if diagonal_cost(q) <= c {
            adj[na + j].push(j);
        }
        // slot-to-slot matches are free
        for i in 0..na {
            adj[na + j].push(nb + i);
        }
    }
    max_matching(&adj, total) == total
}

/// Hopcroft–Karp maximum matching; `right_n` right vertices.
fn max_matching(adj: &[Vec<usize>], right_n: usize) -> usize {
    use std::collections::VecDeque;
    let left_n = adj.len();
    const UNMATCHED: usize = usize::MAX;
    let mut match_left = vec![UNMATCHED; left_n];
    let mut match_right = vec![UNMATCHED; right_n];
    let mut size = 0;
    loop {
        // BFS layers from free left vertices
        let mut layer = vec![UNMATCHED; left_n];
        let mut queue = VecDeque::new();
        for (u, &m) in match_left.iter().enumerate() {
            if m == UNMATCHED {
                layer[u] = 0;
                queue.push_back(u);
            }
        }
        let mut found_augmenting = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_right[v];
                if w == UNMATCHED {
                    found_augmenting = true;
                } else if layer[w] == UNMATCHED {
                    layer[w] = layer[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found_augmenting {
            return size;
        }
        fn dfs(
            u: usize,
            adj: &[Vec<usize>],
            layer: &mut [usize],
            match_left: &mut [usize],
            match_right: &mut [usize],
        ) -> bool {
            for idx in 0..adj[u].len() {
                let v = adj[u][idx];
                let w = match_right[v];
                let ok = if w == usize::MAX {
                    true
                } else if layer[w] == layer[u] + 1 {
                    dfs(w, adj, layer, match_left, match_right)
                } else {
                    false
                };
                if ok {
                    match_left[u] = v;
                    match_right[v] = u;
                    return true;
                }
            }
            layer[u] = usize::MAX;
            false
        }
        for u in 0..left_n {
            if match_left[u] == UNMATCHED
                && layer[u] == 0
                && dfs(u, adj, &mut layer, &mut match_left, &mut match_right)
            {
                size += 1;
            }
        }
    }
}

/// Exhaustive minimum over all augmented bijections; reference for
/// [`bottleneck_distance`] on diagrams with few points.
pub fn bottleneck_oracle(
    a: &PersistenceDiagram,
    b: &PersistenceDiagram,
    dim: usize,
) -> Result<f64, BottleneckError> {
    check_essentials(a, b)?;
    let pa = a.finite_pairs_in_dim(dim);
    let pb = b.finite_pairs_in_dim(dim);
    let mut used = vec![false; pb.len()];
    Ok(enumerate_matchings(&pa, &pb, 0, &mut used, 0.0))
}

fn enumerate_matchings(
    a: &[(f64, f64)],
    b: &[(f64, f64)],
    i: usize,
    used: &mut [bool],
    running_max: f64,
) -> f64 {
    if i == a.len() {
        let mut cost = running_max;
        for (j, &u) in used.iter().enumerate() {
            if !u {
                cost = cost.max(diagonal_cost(b[j]));
            }
        }
        return cost;
    }
    // send a[i] to the diagonal
    let mut best = enumerate_matchings(a, b, i + 1, used, running_max.max(diagonal_cost(a[i])));
    // or pair it with any unused point of b
    for j in 0..b.len() {
        if !used[j] {
            used[j] = true;
            let cost = enumerate_matchings(a, b, i + 1, used, running_max.max(linf(a[i], b[j])));
            used[j] = false;
            best = best.min(cost);
        }
    }
    best
}
