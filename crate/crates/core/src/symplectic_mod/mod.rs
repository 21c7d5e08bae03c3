//! Symplectic space H over Z or F_p, the cube Λ³H, its quotient V by omega ^ H, and the
//! linear-algebra checks run on them.

mod closure;
mod dscale;
mod faithful;
mod group;
mod kernel;
mod projections;
mod sip;
mod space;
mod trivector;

pub use closure::{
    closure_with_ops, irreducibility_report, quotient_vector, submodule_closure, IrreducibilityReport,
    SeedKind, TrialRecord, Verdict, MAX_LAMBDA3_DIM,
};
pub use dscale::{d_scaling_probe, omega_wedge_block_generators, DProbe, HermiteLattice, MAX_PROBE_DIM};
pub use faithful::{faithfulness_check, FaithfulnessReport, GeneratorCheck};
pub use group::{standard_generators, GroupElement, SparseOp};
pub use kernel::{
    contraction_matrix, contraction_rank_on_omega_wedge, divides_g_minus_1, kappa_bar, kernel_basis,
    kernel_image_in_v, pair_difference,
};
pub use projections::{compose, projection, projection_support, ProjectionKind};
pub use sip::{sip_image, KernelMembership, SipReport};
pub use space::{SymplecticSpace, MAX_GENUS};
pub use trivector::{Ambient, Trivector};
