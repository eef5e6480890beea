//! Exact computations on Feynman graphs: graph polynomials, classes in the
//! Grothendieck ring, Hopf-algebraic renormalization and parametric integrals.
//!
//! Each capability has a runnable example:
//!
//! ```text
//! cargo run --example graph_basics       # graphs, loop bases, canonical forms
//! cargo run --example symanzik           # Ψ and P, Cremona check
//! cargo run --example banana_class       # banana classes and point counts
//! cargo run --example frames             # frame classes, determinant hypersurface
//! cargo run --example hopf_antipode      # coproduct and antipode on graphs
//! cargo run --example bphz_birkhoff      # BPHZ against Birkhoff factorization
//! cargo run --example rg_frame           # universal frame coefficients
//! cargo run --release --example parametric_bubble
//! cargo run --example master_two_loop    # two-loop closed form and its poles
//! cargo run --example cli_tour           # the `feynman` binary, in-process
//! ```

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod hopf;
pub mod motive;
pub mod param;
pub mod poly;
pub mod rg;
pub mod series;
pub mod symanzik;

pub use error::{Error, Result};
