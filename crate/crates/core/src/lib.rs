//! Cartan (KAK) decompositions of special-unitary matrices, Weyl-orbit
//! reachable sets of coupled-spin control systems, and minimum-time pulse
//! synthesis for two-qubit gates.
//!
//! The dense kernel ([`kernel`]) and the LP solver ([`weyl::simplex`]) are
//! generic over the scalar type; everything above them works in `f64`.

// `!(x > 0.0)` is used deliberately so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod flow;
pub mod io;
pub mod kak;
pub mod kernel;
pub mod random;
pub mod roots;
pub mod synth;
pub mod two_qubit;
pub mod weyl;

pub use error::{Error, Result};

/// Double-precision complex matrix.
pub type CMatrix = kernel::ComplexMatrix<f64>;
/// Double-precision algebra basis.
pub type Basis = kernel::AlgebraBasis<f64>;
