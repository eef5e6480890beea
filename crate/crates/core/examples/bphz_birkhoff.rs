//! BPHZ recursion against the Birkhoff factorisation of a toy character.
//!
//!     cargo run --example bphz_birkhoff

use feynman_motives::fixtures;
use feynman_motives::graph::Theory;
use feynman_motives::hopf::{bphz, Birkhoff, GraphCharacter, GraphHopf, GraphMonomial};
use feynman_motives::series::{Window, DEFAULT_POLAR_DEPTH};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let th = Theory::phi4();
    let h = GraphHopf::new(th.clone());
    let window = Window::new(DEFAULT_POLAR_DEPTH, 2);
    let phi = GraphCharacter::new("scaled:c=1,logmu=1/2".parse()?, window);
    let bk = Birkhoff::new(&h, &phi, window);

    for (name, g) in fixtures::hopf_corpus(&th) {
        let m = GraphMonomial::generator(h.generator(&g)?);
        let r = bphz(&th, &phi, &g)?;
        println!("{name}");
        println!("  prepared      R̄ = {}", r.prepared);
        println!("  counterterm   φ₋ = {}", r.counterterm);
        println!("  renormalized  φ₊ = {}", r.renormalized);
        println!("  matches Birkhoff: {}", bk.minus(&m)? == r.counterterm && bk.plus(&m)? == r.renormalized);
    }
    Ok(())
}
