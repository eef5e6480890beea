//! Iterated-integral coefficients of the universal frame and the scaling check.
//!
//!     cargo run --example rg_frame

use feynman_motives::hopf::Word;
use feynman_motives::rg::{
    fmt_rational, iterated_integral_coeff, iterated_integral_quadrature, scaling_check, universal_singular_frame,
    BetaElement,
};
use num_rational::BigRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:<12} {:>14} {:>20}", "word", "exact", "quadrature");
    for e in universal_singular_frame(3)? {
        let numeric = iterated_integral_quadrature(&e.word, 24)?;
        println!("{:<12} {:>14} {:>20.12}", e.word.to_string(), fmt_rational(&e.coeff), numeric);
    }

    let w = Word(vec![1, 1, 2]);
    println!("coefficient of {w}: {}", fmt_rational(&iterated_integral_coeff(&w)));

    let beta = BetaElement::from_ints(&[1, -2, 3]);
    let rep = scaling_check(&beta, &BigRational::new(1.into(), 2.into()), 4)?;
    println!("scaling check through weight 4: {rep:?}");
    Ok(())
}
