//! File formats and synthetic generators.
//!
//! JSON is the canonical graph format; CSV node/edge lists are accepted for
//! interoperability with road-network and biological exports. Floats are
//! serialized as shortest round-trip decimals, so `load(save(g))`
//! reproduces `g` bit-exactly. `+inf` serializes as the token `inf`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::features::FeatureVector;
use crate::filtration::FilteredComplex;
use crate::graph::{euclidean, GraphError, SpatialGraph, Violation};
use crate::persistence::{PersistenceDiagram, PersistencePoint};
use crate::selector::ScoreCurve;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
    #[error("{path}: {msg}")]
    Document { path: String, msg: String },
    #[error("{path}: invalid graph: {}", violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidGraph {
        path: String,
        violations: Vec<Violation>,
    },
    #[error("invalid generator parameters: {0}")]
    Params(String),
}

/// On-disk JSON layout for a spatial graph.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GraphDocument {
    pub dim: usize,
    pub nodes: Vec<NodeRecord>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct NodeRecord {
    pub id: u64,
    pub pos: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EdgeRecord {
    pub u: u64,
    pub v: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
}

/// A validated graph plus the original node ids (for round-tripping) and
/// any ingestion warnings.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: SpatialGraph,
    pub ids: Vec<u64>,
    pub warnings: Vec<String>,
}

/// Loads the canonical JSON format.
pub fn load_graph(path: impl AsRef<Path>) -> Result<LoadedGraph, IoError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: display(path),
        source,
    })?;
    let doc: GraphDocument = serde_json::from_str(&text).map_err(|e| IoError::Parse {
        path: display(path),
        line: e.line(),
        msg: e.to_string(),
    })?;
    graph_from_document(&doc, &display(path))
}

/// Saves as canonical JSON. `ids` replaces the dense `0..n` node ids; it
/// must then cover every node.
pub fn save_graph(
    path: impl AsRef<Path>,
    g: &SpatialGraph,
    ids: Option<&[u64]>,
) -> Result<(), IoError> {
    let path = path.as_ref();
    let doc = document_from_graph(g, ids, &display(path))?;
    let mut text = serde_json::to_string_pretty(&doc).expect("document serialization");
    text.push('\n');
    std::fs::write(path, text).map_err(|source| IoError::File {
        path: display(path),
        source,
    })
}

pub fn document_from_graph(
    g: &SpatialGraph,
    ids: Option<&[u64]>,
    path: &str,
) -> Result<GraphDocument, IoError> {
    let n = g.node_count();
    if let Some(ids) = ids {
        if ids.len() != n {
            return Err(IoError::Document {
                path: path.to_string(),
                msg: format!("id table covers {} nodes, graph has {n}", ids.len()),
            });
        }
    }
    let id_of = |v: usize| ids.map_or(v as u64, |t| t[v]);
    let nodes = (0..n)
        .map(|v| NodeRecord {
            id: id_of(v),
            pos: g.position(v).to_vec(),
        })
        .collect();
    let weights = g.custom_weights();
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .map(|(idx, &(u, v))| EdgeRecord {
            u: id_of(u),
            v: id_of(v),
            weight: weights.map(|w| w[idx]),
        })
        .collect();
    Ok(GraphDocument {
        dim: g.dim(),
        nodes,
        edges,
    })
}

pub fn graph_from_document(doc: &GraphDocument, path: &str) -> Result<LoadedGraph, IoError> {
    let mut ids = Vec::with_capacity(doc.nodes.len());
    let mut dense: HashMap<u64, usize> = HashMap::new();
    let mut positions = Vec::with_capacity(doc.nodes.len());
    for node in &doc.nodes {
        if dense.insert(node.id, ids.len()).is_some() {
            return Err(IoError::Document {
                path: path.to_string(),
                msg: format!("duplicate node id {}", node.id),
            });
        }
        ids.push(node.id);
        positions.push(node.pos.clone());
    }
    let mut raw = Vec::with_capacity(doc.edges.len());
    for e in &doc.edges {
        let lookup = |id: u64| {
            dense.get(&id).copied().ok_or_else(|| IoError::Document {
                path: path.to_string(),
                msg: format!("edge ({}, {}) references unknown node id {id}", e.u, e.v),
            })
        };
        raw.push((lookup(e.u)?, lookup(e.v)?, e.weight));
    }
    assemble_graph(doc.dim, positions, raw, path).map(|(graph, warnings)| LoadedGraph {
        graph,
        ids,
        warnings,
    })
}

/// Shared ingestion tail: symmetrizes directed duplicates with a warning,
/// enforces all-or-none weights, and validates.
fn assemble_graph(
    dim: usize,
    positions: Vec<Vec<f64>>,
    raw_edges: Vec<(usize, usize, Option<f64>)>,
    path: &str,
) -> Result<(SpatialGraph, Vec<String>), IoError> {
    let mut warnings = Vec::new();
    let mut first_orientation: HashMap<(usize, usize), (usize, usize, Option<f64>)> =
        HashMap::new();
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    let mut weight_present = 0usize;
    for (u, v, w) in raw_edges {
        let key = (u.min(v), u.max(v));
        match first_orientation.get(&key) {
            Some(&(fu, fv, fw)) if (fu, fv) != (u, v) && u != v => {
                // reversed duplicate: a directed pair in an undirected model
                if fw == w {
                    warnings.push(format!(
                        "directed edge pair ({fu}, {fv}) / ({u}, {v}) symmetrized"
                    ));
                    continue;
                }
                return Err(IoError::Document {
                    path: path.to_string(),
                    msg: format!("edges ({fu}, {fv}) and ({u}, {v}) carry conflicting weights"),
                });
            }
            _ => {
                first_orientation.entry(key).or_insert((u, v, w));
                edges.push((u, v));
                weights.push(w);
                if w.is_some() {
                    weight_present += 1;
                }
            }
        }
    }
    let custom_weights = if weight_present == 0 {
        None
    } else if weight_present == weights.len() {
        Some(weights.into_iter().map(Option::unwrap).collect())
    } else {
        return Err(IoError::Document {
            path: path.to_string(),
            msg: "some edges carry weights and some do not".to_string(),
        });
    };
    match SpatialGraph::new(dim, positions, edges, custom_weights) {
        Ok(graph) => Ok((graph, warnings)),
        Err(GraphError::Invalid(violations)) => Err(IoError::InvalidGraph {
            path: path.to_string(),
            violations,
        }),
        Err(other) => Err(IoError::Document {
            path: path.to_string(),
            msg: other.to_string(),
        }),
    }
}

/// Loads a CSV node/edge pair: nodes as `id,x,y[,z]`, edges as
/// `u,v[,weight]`, both with a header line.
pub fn load_graph_csv(
    nodes_path: impl AsRef<Path>,
    edges_path: impl AsRef<Path>,
) -> Result<LoadedGraph, IoError> {
    let nodes_path = nodes_path.as_ref();
    let edges_path = edges_path.as_ref();
    let nodes_text = std::fs::read_to_string(nodes_path).map_err(|source| IoError::File {
        path: display(nodes_path),
        source,
    })?;
    let edges_text = std::fs::read_to_string(edges_path).map_err(|source| IoError::File {
        path: display(edges_path),
        source,
    })?;

    let npath = display(nodes_path);
    let mut lines = nonempty_lines(&nodes_text);
    let (hline, header) = lines.next().ok_or_else(|| parse(&npath, 1, "empty file"))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    let dim = match cols.as_slice() {
        ["id", "x", "y"] => 2,
        ["id", "x", "y", "z"] => 3,
        _ => {
            return Err(parse(
                &npath,
                hline,
                "expected header `id,x,y` or `id,x,y,z`",
            ))
        }
    };
    let mut ids = Vec::new();
    let mut dense: HashMap<u64, usize> = HashMap::new();
    let mut positions = Vec::new();
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != dim + 1 {
            return Err(parse(
                &npath,
                line_no,
                &format!("expected {} fields, got {}", dim + 1, fields.len()),
            ));
        }
        let id: u64 = fields[0]
            .parse()
            .map_err(|e| parse(&npath, line_no, &format!("bad node id: {e}")))?;
        let pos: Vec<f64> = fields[1..]
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|e| parse(&npath, line_no, &format!("bad coordinate: {e}")))
            })
            .collect::<Result<_, _>>()?;
        if dense.insert(id, ids.len()).is_some() {
            return Err(parse(&npath, line_no, &format!("duplicate node id {id}")));
        }
        ids.push(id);
        positions.push(pos);
    }

    let epath = display(edges_path);
    let mut lines = nonempty_lines(&edges_text);
    let (hline, header) = lines.next().ok_or_else(|| parse(&epath, 1, "empty file"))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    let has_weight = match cols.as_slice() {
        ["u", "v"] => false,
        ["u", "v", "weight"] => true,
        _ => {
            return Err(parse(
                &epath,
                hline,
                "expected header `u,v` or `u,v,weight`",
            ))
        }
    };
    let mut raw = Vec::new();
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 2 + usize::from(has_weight) {
            return Err(parse(&epath, line_no, "wrong number of fields"));
        }
        let endpoint = |f: &str| -> Result<usize, IoError> {
            let id: u64 = f
                .parse()
                .map_err(|e| parse(&epath, line_no, &format!("bad node id: {e}")))?;
            dense
                .get(&id)
                .copied()
                .ok_or_else(|| parse(&epath, line_no, &format!("unknown node id {id}")))
        };
        let u = endpoint(fields[0])?;
        let v = endpoint(fields[1])?;
        let w = if has_weight {
            Some(
                fields[2]
                    .parse::<f64>()
                    .map_err(|e| parse(&epath, line_no, &format!("bad weight: {e}")))?,
            )
        } else {
            None
        };
        raw.push((u, v, w));
    }
    assemble_graph(dim, positions, raw, &epath).map(|(graph, warnings)| LoadedGraph {
        graph,
        ids,
        warnings,
    })
}

fn nonempty_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse(path: &str, line: usize, msg: &str) -> IoError {
    IoError::Parse {
        path: path.to_string(),
        line,
        msg: msg.to_string(),
    }
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

/// Samples `n` points uniformly (by area) on the annulus between `inner`
/// and `outer` radii and keeps the `floor(p_frac * n(n-1)/2)` shortest of
/// all pairs as edges.
pub fn gen_annulus(
    n: usize,
    inner: f64,
    outer: f64,
    p_frac: f64,
    seed: u64,
) -> Result<SpatialGraph, IoError> {
    if n < 2 {
        return Err(IoError::Params(format!("need at least 2 nodes, got {n}")));
    }
    if !(inner > 0.0 && outer > inner && outer.is_finite()) {
        return Err(IoError::Params(format!(
            "radii must satisfy 0 < inner < outer, got inner={inner} outer={outer}"
        )));
    }
    if !(p_frac > 0.0 && p_frac <= 1.0) {
        return Err(IoError::Params(format!(
            "edge fraction must lie in (0, 1], got {p_frac}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut positions = Vec::with_capacity(n);
    for _ in 0..n {
        let u: f64 = rng.random_range(0.0..1.0);
        let radius = (u * (outer * outer - inner * inner) + inner * inner).sqrt();
        let angle = rng.random_range(0.0..std::f64::consts::TAU);
        positions.push(vec![radius * angle.cos(), radius * angle.sin()]);
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            pairs.push((euclidean(&positions[u], &positions[v]), u, v));
        }
    }
    pairs.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let keep = ((p_frac * (n * (n - 1) / 2) as f64).floor() as usize).min(pairs.len());
    let edges: Vec<(usize, usize)> = pairs[..keep].iter().map(|&(_, u, v)| (u, v)).collect();
    SpatialGraph::new(2, positions, edges, None).map_err(|e| IoError::Params(e.to_string()))
}

fn fmt_death(p: &PersistencePoint) -> String {
    if p.is_essential() {
        "inf".to_string()
    } else {
        format!("{}", p.death)
    }
}

/// Diagram CSV: `dim,birth,death` rows sorted by (dim, birth, death), the
/// death token `inf` for essential classes. Zero-persistence points are
/// dropped unless `keep_zero` is set.
pub fn diagram_csv(pd: &PersistenceDiagram, keep_zero: bool) -> String {
    let mut out = String::from("dim,birth,death\n");
    for p in pd.points() {
        if !keep_zero && p.is_zero_persistence() {
            continue;
        }
        let _ = writeln!(out, "{},{},{}", p.dim, p.birth, fmt_death(p));
    }
    out
}

/// Parses the diagram CSV written by [`diagram_csv`].
pub fn parse_diagram_csv(text: &str, path: &str) -> Result<PersistenceDiagram, IoError> {
    let mut lines = nonempty_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse(path, 1, "empty file"))?;
    if header.split(',').map(str::trim).collect::<Vec<_>>() != ["dim", "birth", "death"] {
        return Err(parse(path, hline, "expected header `dim,birth,death`"));
    }
    let mut points = Vec::new();
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(parse(path, line_no, "expected 3 fields"));
        }
        let dim: usize = fields[0]
            .parse()
            .map_err(|e| parse(path, line_no, &format!("bad dimension: {e}")))?;
        let birth: f64 = fields[1]
            .parse()
            .map_err(|e| parse(path, line_no, &format!("bad birth: {e}")))?;
        let death = if fields[2] == "inf" {
            f64::INFINITY
        } else {
            fields[2]
                .parse()
                .map_err(|e| parse(path, line_no, &format!("bad death: {e}")))?
        };
        if death < birth {
            return Err(parse(path, line_no, "death precedes birth"));
        }
        points.push(PersistencePoint {
            dim,
            birth,
            death,
            truncated: false,
        });
    }
    Ok(PersistenceDiagram::from_points(points))
}

pub fn read_diagram_csv(path: impl AsRef<Path>) -> Result<PersistenceDiagram, IoError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: display(path),
        source,
    })?;
    parse_diagram_csv(&text, &display(path))
}

/// Score-curve CSV with a trailing comment line carrying λ and θ*.
pub fn scores_csv(curve: &ScoreCurve) -> String {
    let mut out = String::from("theta,alpha,edge_ratio,bottleneck,score\n");
    for row in &curve.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            row.theta, row.alpha, row.edge_ratio, row.bottleneck, row.score
        );
    }
    let lambda = curve
        .lambda
        .map_or_else(|| "disabled".to_string(), |l| format!("{l}"));
    let _ = writeln!(out, "# lambda={lambda} theta_star={}", curve.theta_star);
    out
}

/// Features CSV: one row per graph, columns in `FeatureVector` field order.
pub fn features_csv(rows: &[(String, FeatureVector)]) -> String {
    let mut out = String::from(
        "graph,n_components,mean_pers_1,max_pers_1,total_pers_1,mean_birth_1,mean_death_1,landscape_l2,n_degree1_nodes\n",
    );
    for (name, f) in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            name,
            f.n_components,
            f.mean_pers_1,
            f.max_pers_1,
            f.total_pers_1,
            f.mean_birth_1,
            f.mean_death_1,
            f.landscape_l2,
            f.n_degree1_nodes
        );
    }
    out
}

/// Debug dump of a simplex stream.
pub fn filtration_csv(fc: &FilteredComplex) -> String {
    let mut out = String::from("time,dim,v0,v1,v2\n");
    for s in fc.simplices() {
        let vs = s.vertices();
        let cell = |i: usize| vs.get(i).map_or(String::new(), |v| v.to_string());
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            s.time(),
            s.dim(),
            cell(0),
            cell(1),
            cell(2)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeWeighting;

    fn tempdir() -> std::path::PathBuf {
        let dir = std::env::temp_dir().join(format!(
            "topocoarse-io-{}-{:?}",
            std::process::id(),
            std::thread::current().id()
        ));
        std::fs::create_dir_all(&dir).unwrap();
        dir
    }

    #[test]
    fn json_round_trip_is_exact() {
        let g = gen_annulus(16, 0.7, 1.0, 0.3, 42).unwrap();
        let path = tempdir().join("roundtrip.json");
        save_graph(&path, &g, None).unwrap();
        let loaded = load_graph(&path).unwrap();
        assert_eq!(loaded.graph, g);
        assert!(loaded.warnings.is_empty());
        assert_eq!(loaded.ids, (0..16).collect::<Vec<u64>>());
    }

    #[test]
    fn sparse_ids_round_trip() {
        let doc = GraphDocument {
            dim: 2,
            nodes: vec![
                NodeRecord {
                    id: 10,
                    pos: vec![0.0, 0.0],
                },
                NodeRecord {
                    id: 7,
                    pos: vec![1.25, -0.5],
                },
            ],
            edges: vec![EdgeRecord {
                u: 10,
                v: 7,
                weight: Some(2.5),
            }],
        };
        let loaded = graph_from_document(&doc, "mem").unwrap();
        assert_eq!(loaded.ids, vec![10, 7]);
        assert_eq!(loaded.graph.edges(), &[(0, 1)]);
        let back = document_from_graph(&loaded.graph, Some(&loaded.ids), "mem").unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn malformed_json_reports_line() {
        let path = tempdir().join("bad.json");
        std::fs::write(&path, "{\n  \"dim\": oops\n}").unwrap();
        match load_graph(&path) {
            Err(IoError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn duplicate_edge_rows_are_rejected() {
        let doc = GraphDocument {
            dim: 2,
            nodes: vec![
                NodeRecord {
                    id: 0,
                    pos: vec![0.0, 0.0],
                },
                NodeRecord {
                    id: 1,
                    pos: vec![1.0, 0.0],
                },
            ],
            edges: vec![
                EdgeRecord {
                    u: 0,
                    v: 1,
                    weight: None,
                },
                EdgeRecord {
                    u: 0,
                    v: 1,
                    weight: None,
                },
            ],
        };
        match graph_from_document(&doc, "mem") {
            Err(IoError::InvalidGraph { violations, .. }) => {
                assert!(violations
                    .iter()
                    .any(|v| matches!(v, Violation::DuplicateEdge { .. })));
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn reversed_duplicates_symmetrize_with_warning() {
        let doc = GraphDocument {
            dim: 2,
            nodes: vec![
                NodeRecord {
                    id: 0,
                    pos: vec![0.0, 0.0],
                },
                NodeRecord {
                    id: 1,
                    pos: vec![1.0, 0.0],
                },
            ],
            edges: vec![
                EdgeRecord {
                    u: 0,
                    v: 1,
                    weight: None,
                },
                EdgeRecord {
                    u: 1,
                    v: 0,
                    weight: None,
                },
            ],
        };
        let loaded = graph_from_document(&doc, "mem").unwrap();
        assert_eq!(loaded.graph.edge_count(), 1);
        assert_eq!(loaded.warnings.len(), 1);
        assert!(loaded.warnings[0].contains("symmetrized"));
    }

    #[test]
    fn csv_pair_loads() {
        let dir = tempdir();
        let nodes = dir.join("nodes.csv");
        let edges = dir.join("edges.csv");
        std::fs::write(&nodes, "id,x,y\n0,0.0,0.0\n1,3.0,4.0\n").unwrap();
        std::fs::write(&edges, "u,v,weight\n0,1,2.5\n").unwrap();
        let loaded = load_graph_csv(&nodes, &edges).unwrap();
        assert_eq!(loaded.graph.node_count(), 2);
        assert_eq!(
            loaded
                .graph
                .edge_weight(EdgeWeighting::Custom, 0, 1)
                .unwrap(),
            2.5
        );
        assert_eq!(
            loaded
                .graph
                .edge_weight(EdgeWeighting::Length, 0, 1)
                .unwrap(),
            5.0
        );
    }

    #[test]
    fn csv_reports_offending_line() {
        let dir = tempdir();
        let nodes = dir.join("badnodes.csv");
        std::fs::write(&nodes, "id,x,y\n0,0.0,0.0\n1,whoops,4.0\n").unwrap();
        let edges = dir.join("noedges.csv");
        std::fs::write(&edges, "u,v\n").unwrap();
        match load_graph_csv(&nodes, &edges) {
            Err(IoError::Parse { line, msg, .. }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("bad coordinate"));
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn annulus_defaults_and_determinism() {
        let a = gen_annulus(100, 0.7, 1.0, 0.1, 7).unwrap();
        let b = gen_annulus(100, 0.7, 1.0, 0.1, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.node_count(), 100);
        assert_eq!(a.edge_count(), (0.1_f64 * 4950.0).floor() as usize);
        for v in 0..a.node_count() {
            let r = euclidean(a.position(v), &[0.0, 0.0]);
            assert!((0.7..=1.0).contains(&r));
        }
    }

    #[test]
    fn annulus_full_fraction_is_complete() {
        let g = gen_annulus(12, 0.5, 1.0, 1.0, 3).unwrap();
        assert_eq!(g.edge_count(), 12 * 11 / 2);
    }

    #[test]
    fn annulus_rejects_bad_parameters() {
        assert!(gen_annulus(1, 0.7, 1.0, 0.1, 0).is_err());
        assert!(gen_annulus(10, 1.0, 0.7, 0.1, 0).is_err());
        assert!(gen_annulus(10, 0.7, 1.0, 0.0, 0).is_err());
        assert!(gen_annulus(10, 0.7, 1.0, 1.5, 0).is_err());
    }

    #[test]
    fn diagram_csv_round_trip() {
        let pd = PersistenceDiagram::from_points(vec![
            PersistencePoint {
                dim: 0,
                birth: 0.0,
                death: f64::INFINITY,
                truncated: false,
            },
            PersistencePoint {
                dim: 0,
                birth: 0.0,
                death: 1.5,
                truncated: false,
            },
            PersistencePoint {
                dim: 1,
                birth: 0.75,
                death: 0.75,
                truncated: false,
            },
            PersistencePoint {
                dim: 1,
                birth: 1.0,
                death: 2.0,
                truncated: false,
            },
        ]);
        let csv = diagram_csv(&pd, false);
        assert_eq!(csv, "dim,birth,death\n0,0,1.5\n0,0,inf\n1,1,2\n");
        let parsed = parse_diagram_csv(&csv, "mem").unwrap();
        assert_eq!(parsed.essential_count_dim0(), 1);
        assert_eq!(parsed.points().len(), 3);

        // keep_zero retains the flagged point
        let csv_all = diagram_csv(&pd, true);
        assert_eq!(csv_all.lines().count(), 5);
    }

    #[test]
    fn features_csv_layout() {
        let f = FeatureVector {
            n_components: 1,
            mean_pers_1: 1.0,
            max_pers_1: 1.0,
            total_pers_1: 1.0,
            mean_birth_1: 1.0,
            mean_death_1: 2.0,
            landscape_l2: 0.5,
            n_degree1_nodes: 2,
        };
        let csv = features_csv(&[("g.json".to_string(), f)]);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "graph,n_components,mean_pers_1,max_pers_1,total_pers_1,mean_birth_1,mean_death_1,landscape_l2,n_degree1_nodes"
        );
        assert_eq!(lines.next().unwrap(), "g.json,1,1,1,1,1,2,0.5,2");
    }
}
