//! Classes in ℤ[𝕃] and their finite-field shadows.
//!
//! A Tate class evaluated at 𝕃 = q gives the number of 𝔽_q-points, so every
//! closed-form class here is checked against brute-force point counts.

pub mod class;
pub mod count;
pub mod frames;
pub mod graph_sum;
pub mod linalg;
pub mod upsilon;

pub use class::{affine_cone_class, banana_class, ClassPoly};
pub use count::{
    motivic_feynman_rule, point_count_hypersurface, projective_point_count, torus_point_count,
    PrimeField,
};
pub use frames::{frame_class_2, frame_class_3, frame_count_bruteforce, ThreeSubspaceDims};
pub use graph_sum::{graph_sum_class, graph_sum_over, GraphSumReport, GraphSumVerdict};
pub use linalg::SubspaceFamily;
pub use upsilon::{
    det_hypersurface_bruteforce, det_hypersurface_count, divisor_stratum_count, StratumComponent,
    UpsilonMap,
};
