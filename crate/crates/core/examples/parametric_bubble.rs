//! The one-loop bubble in parametric form, integrated by Monte Carlo on the
//! simplex and compared with the Beta-function value.
//!
//!     cargo run --release --example parametric_bubble

use feynman_motives::graph::make_banana;
use feynman_motives::param::{
    build_parametric_two_point, feynman_trick_check, integrate_simplex, momentum_integrand, with_two_point_legs,
    Precision,
};
use feynman_motives::symanzik::Momenta;
use num_rational::BigRational;
use statrs::function::gamma::gamma;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = make_banana(2)?;
    let legged = with_two_point_legs(&g)?;
    println!("momentum space: {}", momentum_integrand(&legged, &Momenta::unit_two_point(&legged)?, 0.0)?);

    for d in [2.5, 3.0, 3.5] {
        let pi = build_parametric_two_point(&g, 1.0, d, 0.0)?;
        let est = integrate_simplex(&pi, Precision::samples(1_000_000))?;
        let exact = gamma(d / 2.0 - 1.0).powi(2) / gamma(d - 2.0);
        println!(
            "D={d}: {:.5} ± {:.5} (exact {exact:.5}, {:.2}σ)",
            est.estimate,
            est.stderr,
            (est.estimate - exact).abs() / est.stderr
        );
    }

    let weights: Vec<BigRational> = [1, 2, 3].iter().map(|&k| BigRational::from_integer(k.into())).collect();
    let trick = feynman_trick_check(&weights)?;
    println!("Feynman trick for 1/(1·2·3): {} vs {} ({})", trick.lhs, trick.rhs, trick.agree);
    Ok(())
}
