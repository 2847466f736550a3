//! Müntz ball polynomial (MBP) spectral-Galerkin eigensolvers for singular
//! eigenvalue problems on the unit ball.
//!
//! The basis functions are warped products
//! P_k^{(α,β_n)}(2‖x‖^{2θ}−1) · ‖x‖^{θβ_n+1−d/2−μ} · Y_ℓ^n(x̂) whose Müntz
//! exponents are tuned to the solution singularity at the origin, so that
//!
//! * the degenerate problem −∇·(‖x‖^{2μ}∇u) + c‖x‖^{2μ−2}u = λu gets a
//!   diagonal stiffness and tridiagonal (or pentadiagonal) mass matrix, and
//! * the Schrödinger problem −Δu + c‖x‖^{-2}u + z‖x‖^{(2ν−2η)/(η+1)}u = λu
//!   gets banded matrices,
//!
//! with spectral accuracy despite the non-smooth eigenfunctions. The
//! degenerate problem also has a closed-form solution through Bessel-function
//! zeros ([`oracle`]), kept independent of the Galerkin path so each can
//! verify the other.
//!
//! ```
//! use muntz_ball::assembly::{BasisTheta, ProblemConfig};
//! use muntz_ball::oracle::analytic_eigenvalue;
//! use muntz_ball::solver::{solve_spectrum, SpectrumRequest};
//!
//! let req = SpectrumRequest {
//!     config: ProblemConfig::Degenerate { d: 2, mu: 0.5, c: 2.0, basis: BasisTheta::Full },
//!     max_degree: 1,
//!     k_trunc: 24,
//!     count: 2,
//! };
//! let spectrum = solve_spectrum(&req).unwrap();
//! let exact = analytic_eigenvalue(2, 0.5, 2.0, 1, 1).unwrap();
//! assert!((spectrum[1].lambda - exact).abs() < 1e-9);
//! ```

// Domain guards are written as `!(x > bound)` on purpose: the negation
// rejects NaN along with out-of-range values. Frozen reference constants
// keep their full source precision.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::excessive_precision)]

pub mod assembly;
mod dd;
mod error;
pub mod harmonics;
pub mod linalg;
pub mod mbp;
pub mod oracle;
pub mod quadrature;
pub mod solver;
pub mod specfun;

pub use error::{Error, Result};
