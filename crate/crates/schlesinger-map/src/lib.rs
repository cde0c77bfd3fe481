//! Elementary Schlesinger transformations {alpha beta; mu nu} of Fuchsian
//! systems, at the level of residues and of the decomposition A_i = B_i C_i,
//! together with the discrete Hamiltonian that generates them.

pub mod error;
pub mod hamiltonian;
pub mod index;
pub mod orbit;
pub mod transform;

pub use error::SchlesingerError;
pub use hamiltonian::{
    discrete_hamiltonian, finite_difference_gradient, hamiltonian_gradient, verify_generating,
    DiscreteHamiltonianInput, GeneratingReport, HamiltonianGradient, SlotResidual,
};
pub use index::TransformationIndex;
pub use orbit::{orbit, orbit_partial, trace_json, OrbitOutcome, OrbitRecord};
pub use transform::{
    elementary_multiplier, forward_multiplier, orthogonality_residual, residue_equation_residual,
    transform_decomposition, transform_system, transform_system_labelled,
};
