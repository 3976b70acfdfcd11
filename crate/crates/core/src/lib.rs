//! Closed forms, numerical oracles and checkers for the singular solution
//! candidate `u = c + P5(x) / |x|^(1+delta)` of a conformal Hessian equation
//! on the punctured unit ball of R^5, where `P5` is the isoparametric Cartan
//! cubic.
//!
//! * [`forms`] evaluates the cubic, the candidate, their derivatives and the
//!   conformal Hessian `u D^2u - |Du|^2 I / 2`.
//! * [`spectra`] holds the closed-form eigenvalue branches of `D^2w` on the
//!   unit sphere as functions of the orbit parameter `p`.
//! * [`numerics`] provides the independent oracles: a Jacobi eigensolver,
//!   second-order forward-mode differentiation, finite differences and
//!   sampling of special orthogonal matrices.
//! * [`verify`] runs the checks and produces [`verify::CheckReport`]s.
//! * [`cli`] (feature `cli`) is the command-line front end.

pub mod error;
pub mod forms;
pub mod numerics;
pub mod spectra;
pub mod verify;

#[cfg(feature = "cli")]
pub mod cli;

pub use error::{Error, Result};
pub use forms::{Candidate, DeltaParam, ShiftConstant, SymMat5, Vec5};
pub use numerics::{OrthoMat5, RngState};
pub use spectra::{OrbitParam, Spectrum5};
pub use verify::CheckReport;
