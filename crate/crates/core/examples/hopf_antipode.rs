//! Coproduct and antipode in the graph Hopf algebra of φ⁴ theory.
//!
//!     cargo run --example hopf_antipode

use feynman_motives::fixtures;
use feynman_motives::graph::Theory;
use feynman_motives::hopf::{antipode_sides, coassociativity_sides, coproduct, Antipode, GraphHopf, GraphMonomial, Lin};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = GraphHopf::new(Theory::phi4());
    for (name, g) in fixtures::hopf_corpus(h.theory()) {
        let x = Lin::basis(GraphMonomial::generator(h.generator(&g)?));
        println!("{name}");
        let terms: Vec<String> = coproduct(&h, &x)?.iter().map(|((l, r), c)| format!("{c}·{l}⊗{r}")).collect();
        println!("  Δ = {}", terms.join(" + "));
        println!("  S = {}", Antipode::new(&h).apply(&x)?);
        let (l, r) = coassociativity_sides(&h, x.iter().next().unwrap().0)?;
        let (a, b) = antipode_sides(&h, &x)?;
        println!("  coassociative: {}, m(S⊗id)Δ = m(id⊗S)Δ = 0: {}", l == r, a.is_zero() && b.is_zero());
    }
    Ok(())
}
