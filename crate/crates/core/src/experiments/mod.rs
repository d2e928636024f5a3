//! Finite-scale ideal correspondence for coset spaces, and the point
//! derivation at the identity of SU(2).

mod derivation;
mod ideals;

pub use derivation::{point_derivation, torus_profile, DerivationReport, FiniteDifference, FD_STEPS};
pub use ideals::{
    apply_map_to_subspace, generated_ideal, ideal_correspondence, ideal_square_check, saturate, subspace_equal,
    vanishing_ideal, CosetMap, FunctionSpace, IdealCase, IdealSquareReport, SubspaceBasis, SubspaceComparison,
    RANK_TOL,
};
