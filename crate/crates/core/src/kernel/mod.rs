//! Dense complex linear algebra, spin operators and Lie-algebra utilities.

pub mod algebra;
pub mod eig;
pub mod expm;
pub mod matrix;
pub mod scalar;
pub mod spin;

pub use algebra::{killing_form, AlgebraBasis};
pub use eig::{eig_normal, eig_unitary, eigh};
pub use expm::{exp_skew, expm_skew, logm_unitary};
pub use matrix::ComplexMatrix;
pub use scalar::Real;
pub use spin::{spin_operators, Axis, SpinOperators};
