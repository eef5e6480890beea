//! Classes of banana hypersurfaces in Z[L], checked by counting points.
//!
//!     cargo run --example banana_class

use feynman_motives::graph::make_banana;
use feynman_motives::motive::{banana_class, point_count_hypersurface, PrimeField};
use feynman_motives::symanzik::psi_spanning_trees;
use num_bigint::BigInt;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 2..=6u32 {
        let class = banana_class(n)?;
        println!("[X_{n}] = {class}   (χ = {})", class.euler_characteristic());
    }

    println!("affine cone counts over F_q, brute force vs (q-1)[X](q)+1:");
    for n in 2..=4u32 {
        let psi = psi_spanning_trees(&make_banana(n as usize)?)?;
        let class = banana_class(n)?;
        for q in [2u64, 3, 5] {
            let brute = point_count_hypersurface(&psi, PrimeField::new(q)?)?;
            let formula = BigInt::from(q - 1) * class.eval_u64(q)? + 1;
            println!("  n={n} q={q}: {brute} vs {formula}");
        }
    }
    Ok(())
}
