//! Analytical solution of the degenerate eigenvalue problem, used as
//! ground truth for verification.
//!
//! Separating the radial equation and substituting ρ = r^{1−μ} turns it
//! into the Bessel equation of order
//!   ν = sqrt(c + (n + d/2 − 1)² + μ(μ + d − 2)) / (1 − μ),
//! so the Dirichlet eigenvalues are λ = ((1−μ) j_{ν,m})² with j_{ν,m} the
//! m-th positive zero of J_ν, and the radial eigenfunction is
//!   u(r) = r^{1−μ−d/2} J_ν(√λ r^{1−μ}/(1−μ)).
//!
//! With μ = c = 0 the order reduces to the classical Fourier–Bessel
//! n + d/2 − 1, which pins down the normalization of ν.

use crate::error::{Error, Result};
use crate::specfun::{bessel_j, bessel_j_zero};

/// One analytic eigenvalue: problem parameters, zero index, Bessel order,
/// and λ = ((1−μ)·j_{ν,m})².
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleEigen {
    pub d: u32,
    pub mu: f64,
    pub c: f64,
    pub n: u32,
    pub m: usize,
    pub nu_order: f64,
    pub zero: f64,
    pub lambda: f64,
}

/// Bessel order ν of the radial problem at harmonic degree n.
pub fn analytic_order(d: u32, mu: f64, c: f64, n: u32) -> Result<f64> {
    if !(mu < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "analytic solution requires mu < 1, got {mu}"
        )));
    }
    let half_shift = n as f64 + d as f64 / 2.0 - 1.0;
    let radicand = c + half_shift * half_shift + mu * (mu + d as f64 - 2.0);
    if radicand < 0.0 {
        return Err(Error::NegativeRadicand(radicand));
    }
    Ok(radicand.sqrt() / (1.0 - mu))
}

/// The m-th analytic eigenvalue in harmonic degree n, with the Bessel zero
/// that produced it.
pub fn oracle_eigen(d: u32, mu: f64, c: f64, n: u32, m: usize) -> Result<OracleEigen> {
    let nu_order = analytic_order(d, mu, c, n)?;
    let zero = bessel_j_zero(nu_order, m)?;
    let lambda = ((1.0 - mu) * zero).powi(2);
    Ok(OracleEigen {
        d,
        mu,
        c,
        n,
        m,
        nu_order,
        zero,
        lambda,
    })
}

/// λ = ((1−μ)·j_{ν,m})².
pub fn analytic_eigenvalue(d: u32, mu: f64, c: f64, n: u32, m: usize) -> Result<f64> {
    Ok(oracle_eigen(d, mu, c, n, m)?.lambda)
}

/// Unnormalized analytic radial eigenfunction
/// r^{1−μ−d/2} J_ν(√λ r^{1−μ}/(1−μ)) for r ∈ (0, 1].
pub fn analytic_radial_eigenfunction(
    d: u32,
    mu: f64,
    c: f64,
    n: u32,
    lambda: f64,
    r: f64,
) -> Result<f64> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::Domain(format!("r must lie in (0, 1], got {r}")));
    }
    let nu = analytic_order(d, mu, c, n)?;
    let arg = lambda.sqrt() * r.powf(1.0 - mu) / (1.0 - mu);
    Ok(r.powf(1.0 - mu - d as f64 / 2.0) * bessel_j(nu, arg)?)
}
