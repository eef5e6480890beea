//! First and second Symanzik polynomials, two ways, plus the Cremona check.
//!
//!     cargo run --example symanzik

use feynman_motives::fixtures;
use feynman_motives::graph::{make_banana, make_cycle, LoopBasis};
use feynman_motives::symanzik::{cremona_check, psi_determinant, psi_spanning_trees, second_symanzik, Momenta};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["bubble", "sunset", "K4"] {
        let g = fixtures::by_name(name)?;
        let trees = psi_spanning_trees(&g)?;
        let det = psi_determinant(&g, &LoopBasis::dfs(&g))?;
        println!("{name}: Ψ = {trees}");
        println!("  spanning trees and det M agree: {}", trees == det);
    }

    let sunset = fixtures::sunset();
    let p = Momenta::unit_two_point(&sunset)?;
    println!("sunset at p² = 1: P = {}", second_symanzik(&sunset, &p)?);

    for n in 3..=5 {
        let ok = cremona_check(&make_banana(n)?, &make_cycle(n)?)?;
        println!("Cremona banana({n}) <-> cycle({n}): {ok}");
    }
    Ok(())
}
