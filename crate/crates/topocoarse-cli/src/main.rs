//! Command-line surface for the spatial graph coarsening pipeline.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use topocoarse::bottleneck::{diagram_distance, DiagramDistance};
use topocoarse::coarsen::{aggregate_custom_weights, coarsen, AggregationRule, Positioning};
use topocoarse::features::extract_features;
use topocoarse::filtration::{build_filtration, build_unmodified_filtration};
use topocoarse::graph::{EdgeWeighting, SpatialGraph};
use topocoarse::io::{
    self, diagram_csv, features_csv, filtration_csv, read_diagram_csv, scores_csv, LoadedGraph,
};
use topocoarse::metric::shortest_path_metric;
use topocoarse::persistence::compute_persistence;
use topocoarse::selector::{select, ScoreParams};
use topocoarse::similarity::{apply_similarity, random_similarity};

#[derive(Parser)]
#[command(
    name = "topocoarse",
    version,
    about = "Topology-preserving coarsening of spatial graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic graph
    Gen {
        #[command(subcommand)]
        shape: GenShape,
    },
    /// Coarsen at a fixed threshold
    Coarsen {
        #[command(flatten)]
        input: GraphInput,
        /// Collapse every edge with weight <= theta
        #[arg(long)]
        theta: f64,
        #[arg(long, value_enum, default_value_t)]
        positioning: PositioningArg,
        #[arg(long, value_enum, default_value_t)]
        weight: WeightArg,
        /// Attach aggregated custom weights to the coarse graph
        #[arg(long, value_enum)]
        aggregate: Option<AggregateArg>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute a persistence diagram
    Pd {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum, default_value_t)]
        weight: WeightArg,
        /// r_max as a fraction of the largest component diameter
        #[arg(long, default_value_t = 2.0)]
        rmax_frac: f64,
        #[arg(long, value_enum, default_value_t)]
        variant: FiltrationVariant,
        /// Keep zero-persistence points in the output
        #[arg(long)]
        keep_zero: bool,
        /// Also dump the simplex stream as CSV
        #[arg(long)]
        dump_filtration: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Bottleneck distance between two diagram CSVs
    Bottleneck {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        dim: DimArg,
    },
    /// Evaluate the threshold score curve
    ScoreCurve {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        params: PipelineArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Select the best threshold and write all outputs
    Select {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        params: PipelineArgs,
        /// Prefix for `<prefix>.coarse.json`, `<prefix>.scores.csv`,
        /// `<prefix>.pd_orig.csv`, `<prefix>.pd_reduced.csv`
        #[arg(long)]
        out_prefix: String,
    },
    /// Extract feature vectors from one or more graphs
    Features {
        /// Graph file; repeat for a dataset
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        weight: WeightArg,
        #[arg(long, default_value_t = 2.0)]
        rmax_frac: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Apply a seeded random similarity transform
    Transform {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the random scale factor
        #[arg(long)]
        scale: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenShape {
    /// Points on an annulus, keeping the shortest fraction of all pairs
    Annulus {
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 0.7)]
        inner: f64,
        #[arg(long, default_value_t = 1.0)]
        outer: f64,
        /// Fraction of the n(n-1)/2 candidate edges to keep
        #[arg(long, default_value_t = 0.1)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Graph source: one JSON file, or a CSV node/edge pair.
#[derive(Args)]
struct GraphInput {
    /// Graph as JSON
    #[arg(long, conflicts_with_all = ["nodes", "edges"])]
    input: Option<PathBuf>,
    /// Node CSV (`id,x,y[,z]`); requires --edges
    #[arg(long, requires = "edges")]
    nodes: Option<PathBuf>,
    /// Edge CSV (`u,v[,weight]`); requires --nodes
    #[arg(long, requires = "nodes")]
    edges: Option<PathBuf>,
}

impl GraphInput {
    fn load(&self) -> Result<LoadedGraph> {
        let loaded = match (&self.input, &self.nodes, &self.edges) {
            (Some(path), None, None) => io::load_graph(path)?,
            (None, Some(nodes), Some(edges)) => io::load_graph_csv(nodes, edges)?,
            _ => bail!("provide either --input or both --nodes and --edges"),
        };
        for w in &loaded.warnings {
            eprintln!("warning: {w}");
        }
        Ok(loaded)
    }
}

#[derive(Args)]
struct PipelineArgs {
    /// Number of quantile levels in the threshold grid
    #[arg(long, default_value_t = 10)]
    grid_size: usize,
    #[arg(long, value_enum, default_value_t)]
    positioning: PositioningArg,
    #[arg(long, value_enum, default_value_t)]
    weight: WeightArg,
    /// r_max as a fraction of the largest component diameter
    #[arg(long, default_value_t = 2.0)]
    rmax_frac: f64,
    /// Dimensions entering the diagram distance
    #[arg(long, value_enum, default_value_t)]
    dim: DimArg,
    /// Prepend a theta = 0 debug row to the curve
    #[arg(long)]
    include_zero: bool,
}

impl PipelineArgs {
    fn to_params(&self) -> ScoreParams {
        ScoreParams {
            weighting: self.weight.into(),
            positioning: self.positioning.into(),
            grid_size: self.grid_size,
            r_max_frac: self.rmax_frac,
            distance: self.dim.into(),
            include_zero: self.include_zero,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum PositioningArg {
    #[default]
    Average,
    Degree,
}

impl From<PositioningArg> for Positioning {
    fn from(value: PositioningArg) -> Self {
        match value {
            PositioningArg::Average => Positioning::Average,
            PositioningArg::Degree => Positioning::Degree,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum WeightArg {
    #[default]
    Length,
    Custom,
}

impl From<WeightArg> for EdgeWeighting {
    fn from(value: WeightArg) -> Self {
        match value {
            WeightArg::Length => EdgeWeighting::Length,
            WeightArg::Custom => EdgeWeighting::Custom,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum DimArg {
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    One,
    #[default]
    Max,
}

impl From<DimArg> for DiagramDistance {
    fn from(value: DimArg) -> Self {
        match value {
            DimArg::Zero => DiagramDistance::Dim0,
            DimArg::One => DiagramDistance::Dim1,
            DimArg::Max => DiagramDistance::Max,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AggregateArg {
    Min,
    Sum,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum FiltrationVariant {
    /// Triangle-aware: a triangle enters at the sum of its two smallest sides
    #[default]
    Triangle,
    /// Plain Vietoris-Rips: a triangle enters at its longest side
    Plain,
}

fn init_thread_pool() {
    if let Ok(raw) = std::env::var("TOPOCOARSE_THREADS") {
        match raw.trim().parse::<usize>() {
            Ok(0) => {}
            Ok(n) => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            Err(_) => eprintln!("warning: ignoring non-numeric TOPOCOARSE_THREADS={raw}"),
        }
    }
}

fn main() -> ExitCode {
    init_thread_pool();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen { shape } => match shape {
            GenShape::Annulus {
                n,
                inner,
                outer,
                p,
                seed,
                out,
            } => {
                let g = io::gen_annulus(n, inner, outer, p, seed)?;
                io::save_graph(&out, &g, None)?;
                eprintln!(
                    "wrote {} ({} nodes, {} edges)",
                    out.display(),
                    g.node_count(),
                    g.edge_count()
                );
                Ok(())
            }
        },
        Command::Coarsen {
            input,
            theta,
            positioning,
            weight,
            aggregate,
            out,
        } => {
            if theta < 0.0 {
                bail!("--theta must be nonnegative");
            }
            let loaded = input.load()?;
            let result = coarsen(&loaded.graph, weight.into(), theta, positioning.into())?;
            let coarse = match aggregate {
                None => result.coarse.clone(),
                Some(rule) => {
                    let rule = match rule {
                        AggregateArg::Min => AggregationRule::Min,
                        AggregateArg::Sum => AggregationRule::Sum,
                    };
                    let rows = aggregate_custom_weights(&loaded.graph, &result.partition, rule)?;
                    let weights: Vec<f64> = rows.iter().map(|&(_, w)| w).collect();
                    SpatialGraph::new(
                        result.coarse.dim(),
                        result.coarse.positions(),
                        result.coarse.edges().to_vec(),
                        Some(weights),
                    )?
                }
            };
            io::save_graph(&out, &coarse, None)?;
            eprintln!(
                "theta {theta}: {} -> {} nodes, {} -> {} edges",
                loaded.graph.node_count(),
                coarse.node_count(),
                loaded.graph.edge_count(),
                coarse.edge_count()
            );
            Ok(())
        }
        Command::Pd {
            input,
            weight,
            rmax_frac,
            variant,
            keep_zero,
            dump_filtration,
            out,
        } => {
            let loaded = input.load()?;
            let metric = shortest_path_metric(&loaded.graph, weight.into())?;
            let r_max = rmax_frac * metric.max_component_diameter();
            let fc = match variant {
                FiltrationVariant::Triangle => build_filtration(&metric, r_max),
                FiltrationVariant::Plain => build_unmodified_filtration(&metric, r_max),
            };
            if let Some(path) = dump_filtration {
                write_text(&path, &filtration_csv(&fc))?;
            }
            let pd = compute_persistence(&fc)?;
            write_text(&out, &diagram_csv(&pd, keep_zero))?;
            Ok(())
        }
        Command::Bottleneck { a, b, dim } => {
            let da = read_diagram_csv(&a)?;
            let db = read_diagram_csv(&b)?;
            let d = diagram_distance(&da, &db, dim.into())?;
            println!("{d}");
            Ok(())
        }
        Command::ScoreCurve { input, params, out } => {
            let loaded = input.load()?;
            let curve = topocoarse::selector::score_curve(&loaded.graph, &params.to_params())?;
            write_text(&out, &scores_csv(&curve))?;
            eprintln!("theta_star = {}", curve.theta_star);
            Ok(())
        }
        Command::Select {
            input,
            params,
            out_prefix,
        } => {
            let loaded = input.load()?;
            let selection = select(&loaded.graph, &params.to_params())?;
            io::save_graph(
                format!("{out_prefix}.coarse.json"),
                &selection.coarsening.coarse,
                None,
            )?;
            write_text(
                Path::new(&format!("{out_prefix}.scores.csv")),
                &scores_csv(&selection.curve),
            )?;
            write_text(
                Path::new(&format!("{out_prefix}.pd_orig.csv")),
                &diagram_csv(&selection.pd_original, false),
            )?;
            write_text(
                Path::new(&format!("{out_prefix}.pd_reduced.csv")),
                &diagram_csv(&selection.pd_reduced, false),
            )?;
            eprintln!(
                "theta_star = {} (alpha_star = {}): {} -> {} nodes",
                selection.theta_star(),
                selection.curve.alpha_star,
                loaded.graph.node_count(),
                selection.coarsening.coarse.node_count()
            );
            Ok(())
        }
        Command::Features {
            input,
            weight,
            rmax_frac,
            out,
        } => {
            let mut rows = Vec::new();
            for path in &input {
                let loaded = io::load_graph(path)?;
                let metric = shortest_path_metric(&loaded.graph, weight.into())?;
                let r_max = rmax_frac * metric.max_component_diameter();
                let pd = compute_persistence(&build_filtration(&metric, r_max))?;
                rows.push((
                    path.display().to_string(),
                    extract_features(&loaded.graph, &pd),
                ));
            }
            write_text(&out, &features_csv(&rows))?;
            Ok(())
        }
        Command::Transform {
            input,
            seed,
            scale,
            out,
        } => {
            let loaded = input.load()?;
            let mut sim = random_similarity(loaded.graph.dim(), seed);
            if let Some(k) = scale {
                sim = sim.with_scale(k)?;
            }
            let transformed = apply_similarity(&loaded.graph, &sim)?;
            io::save_graph(&out, &transformed, Some(&loaded.ids))?;
            eprintln!(
                "applied similarity (scale {}, seed {seed}) to {} nodes",
                sim.scale(),
                transformed.node_count()
            );
            Ok(())
        }
    }
}
