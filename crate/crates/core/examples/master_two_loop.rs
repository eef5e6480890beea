//! The two-loop closed form: values, the pole at D = 4 and its Laurent series.
//!
//!     cargo run --example master_two_loop

use feynman_motives::param::{eval_master_two_loop, master_laurent, residue_by_differences};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in [3.5, 4.5, 4.0] {
        println!("D={d}: {:?}", eval_master_two_loop(d, 1.0)?);
    }

    let s = master_laurent(4.0, 1.0, 1)?;
    println!("expansion at D = 4 − z:");
    for k in s.val..=1 {
        println!("  z^{k}: {:.10e}", s.coeff(k));
    }
    let [c2, c1] = residue_by_differences(4.0, 1.0, 2, 1e-3)?;
    println!("finite differences: z^-2 {c2:.10e}, z^-1 {c1:.10e}");
    Ok(())
}
