//! Drives the `feynman` command line in-process and prints its JSON.
//!
//!     cargo run --example cli_tour

use feynman_motives::cli::run;

fn main() {
    let calls: &[&[&str]] = &[
        &["psi", "--graph", "sunset"],
        &["class", "banana", "--n", "4", "--check-primes", "2,3"],
        &["renormalize", "--graph", "double-bubble", "--character", "nested:c=1"],
        &["rg-frame", "--max-degree", "2"],
        &["gamma", "--a", "-1", "--order", "2"],
        &["master", "--D", "4"],
        &["frames", "--d1", "2", "--d2", "2", "--d12", "1"],
        &["param", "--graph", "banana:2", "--D", "3", "--samples", "1e5"],
        &["psi", "--graph", "no-such-graph"],
    ];
    for args in calls {
        let out = run(std::iter::once("feynman").chain(args.iter().copied()));
        println!("$ feynman {}  (exit {})", args.join(" "), out.code);
        println!("{}\n", serde_json::to_string_pretty(&out.json).unwrap());
    }
}
