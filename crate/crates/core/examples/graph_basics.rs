//! Build graphs, inspect connectivity and loop bases, and canonicalise.
//!
//!     cargo run --example graph_basics

use feynman_motives::fixtures;
use feynman_motives::graph::{canonical_form, make_banana, make_wheel, Graph, IncidenceMatrix, LoopBasis};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A triangle with one external leg on each vertex.
    let triangle = Graph::new(3, vec![(0, 1), (1, 2), (2, 0)], vec![0, 1, 2])?;
    let edges: Vec<_> = triangle.edges().iter().map(|e| (e.source, e.target)).collect();
    println!("triangle edges {edges:?}, legs {:?}", triangle.legs());
    println!("  loops = {}, 1PI = {}", triangle.loop_number(), triangle.is_1pi()?);

    let wheel = make_wheel(3)?;
    println!("wheel with 3 spokes: {} edges, 3-edge-connected = {}", wheel.edge_count(), wheel.is_3_edge_connected()?);

    let basis = LoopBasis::dfs(&wheel);
    println!("  DFS spanning tree edges {:?}", basis.tree_edges);
    let inc = IncidenceMatrix::of(&wheel);
    println!("  incidence matrix: {} edges x {} vertices", inc.rows(), inc.eps[0].len());

    // Relabelled copies share a canonical form.
    let a = make_banana(3)?;
    let b = a.reoriented(&[true, false, true]);
    println!("banana(3) canonical forms agree after reorientation: {}", canonical_form(&a)? == canonical_form(&b)?);

    println!("fixtures:");
    for name in fixtures::corpus_names() {
        let g = fixtures::by_name(&name)?;
        println!("  {name:<14} V={} E={} loops={}", g.vertex_count(), g.edge_count(), g.loop_number());
    }
    Ok(())
}
