//! Numerical oracles that arbitrate every closed form in the crate: a cyclic
//! Jacobi eigensolver, second-order forward-mode differentiation, central
//! finite differences, and Haar / exponential-map samples of SO(5).

mod fd;
mod jacobi;
mod jet;
mod ortho;
mod rng;

pub use fd::{fd_gradient, fd_hessian, fd_hessian4};
pub use jacobi::{jacobi_eigen, jacobi_eigen_vectors, MAX_SWEEPS};
pub use jet::{ad_gradient, ad_hessian, ad_jet, Jet2, Scalar};
pub use ortho::{haar_so5, haar_so5_from, skew_exp, OrthoMat5, SkewParam};
pub use rng::{RngState, SampleRng};
