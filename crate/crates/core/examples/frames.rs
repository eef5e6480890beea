//! Frame varieties of subspace arrangements: closed classes and brute force.
//!
//!     cargo run --example frames

use feynman_motives::motive::{
    det_hypersurface_bruteforce, det_hypersurface_count, frame_class_2, frame_class_3, frame_count_bruteforce,
    PrimeField, SubspaceFamily, ThreeSubspaceDims,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("two planes in 3-space meeting in a line: {}", frame_class_2(2, 2, 1)?);

    let f3 = PrimeField::new(3)?;
    let fam = SubspaceFamily::new(
        f3,
        3,
        vec![vec![vec![1, 0, 0], vec![0, 1, 0]], vec![vec![0, 1, 0], vec![0, 0, 1]], vec![vec![1, 1, 1]]],
    )?;
    let dims = ThreeSubspaceDims::of(&fam)?;
    let class = frame_class_3(&dims)?;
    println!("two planes and a line over F3: class {class}");
    println!("  at q=3: {}, brute force: {}", class.eval_u64(3)?, frame_count_bruteforce(&fam)?);

    for q in [2u64, 3] {
        let f = PrimeField::new(q)?;
        println!(
            "singular 2x2 symmetric matrices over F{q}: {} (closed form), {} (enumerated)",
            det_hypersurface_count(2, f),
            det_hypersurface_bruteforce(2, f)?
        );
    }
    Ok(())
}
