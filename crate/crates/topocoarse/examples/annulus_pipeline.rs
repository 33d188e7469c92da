//! Runs the full pipeline on a synthetic annulus graph and prints the
//! score curve.
//!
//! ```sh
//! cargo run --release -p topocoarse --example annulus_pipeline
//! ```

use topocoarse::features::extract_features;
use topocoarse::io::gen_annulus;
use topocoarse::selector::{select, ScoreParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = gen_annulus(100, 0.7, 1.0, 0.1, 7)?;
    println!(
        "annulus graph: {} nodes, {} edges",
        g.node_count(),
        g.edge_count()
    );

    let s = select(&g, &ScoreParams::default())?;
    println!("\n  theta      alpha  edge_ratio  bottleneck  score");
    for row in &s.curve.rows {
        let star = if row.theta == s.theta_star() { " <- theta*" } else { "" };
        println!(
            "  {:<9.5}  {:<5.3}  {:<10.4}  {:<10.4}  {:.4}{star}",
            row.theta, row.alpha, row.edge_ratio, row.bottleneck, row.score
        );
    }

    println!(
        "\nselected theta* = {:.5}: {} -> {} nodes, {} -> {} edges",
        s.theta_star(),
        g.node_count(),
        s.coarsening.coarse.node_count(),
        g.edge_count(),
        s.coarsening.coarse.edge_count()
    );
    println!(
        "max cycle persistence: {:.4} -> {:.4}",
        s.pd_original.max_persistence(1),
        s.pd_reduced.max_persistence(1)
    );

    let features = extract_features(&s.coarsening.coarse, &s.pd_reduced);
    println!("reduced-graph features: {features:#?}");
    Ok(())
}
