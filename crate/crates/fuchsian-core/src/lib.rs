//! Fuchsian systems dY/dx = sum_i A_i/(x - u_i) Y, their Riemann schemes, and
//! the eigenvector decomposition A_i = B_i C_i with C_i B_i = Theta_i.

pub mod decomposition;
pub mod error;
pub mod io;
pub mod linalg;
pub mod scheme;
pub mod system;

pub use decomposition::{
    continuous_hamiltonian, decompose, decompose_ordered, decompose_with, recompose, recompose_with,
    DecompositionPoint, PoleFactors,
};
pub use error::CoreError;
pub use linalg::{c64, CMat, CRow, CVec, C64};
pub use scheme::{accessory_dimension, default_labels, riemann_scheme, RiemannScheme};
pub use system::{build_system, build_system_with, eval_coefficient, FuchsianSystem, Tolerances};
