//! Gauss–Jacobi quadrature with real exponents via Golub–Welsch.
//!
//! Rules integrate f(x)·(1−x)^α(1+x)^β over (−1, 1) exactly for polynomial
//! f of degree ≤ 2n−1. This is the independent integration oracle used to
//! verify every closed-form matrix entry and orthogonality relation, and
//! the production path for the quadrature-built Galerkin matrices.

use crate::error::{Error, Result};
use crate::linalg::{symtri_eig, SymTridiag};
use crate::mbp::MbpSpec;
use crate::specfun::beta_ln;

/// An immutable Gauss–Jacobi rule: strictly increasing interior nodes and
/// positive weights for the weight (1−x)^α(1+x)^β.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    alpha: f64,
    beta: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
    pub fn len(&self) -> usize {
        self.nodes.len()
    }
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Weighted sum Σ w_i f(x_i) ≈ ∫ f(x) (1−x)^α (1+x)^β dx.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Zeroth moment 2^{α+β+1} B(α+1, β+1) of the weight.
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Builds the n-point Gauss–Jacobi rule for exponents α, β > −1: nodes are
/// the eigenvalues of the Golub–Welsch symmetric tridiagonal matrix, weights
/// are μ₀ times the squared first eigenvector components.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::Domain(
            "quadrature rule needs at least 1 node".into(),
        ));
    }
    if !(alpha > -1.0) || !(beta > -1.0) {
        return Err(Error::Domain(format!(
            "gauss_jacobi exponents must be > -1, got alpha={alpha}, beta={beta}"
        )));
    }
    let (a, b) = (alpha, beta);
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    diag.push((b - a) / (a + b + 2.0));
    for k in 1..n {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        diag.push((b * b - a * a) / (s * (s + 2.0)));
        // Off-diagonal sqrt(b_k) of the monic three-term recurrence; the
        // k = 1 case uses the cancelled form, valid when a + b + 1 = 0.
        let bk = if k == 1 {
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b).powi(2) * (3.0 + a + b))
        } else {
            4.0 * kf * (kf + a) * (kf + b) * (kf + a + b) / (s * s * (s + 1.0) * (s - 1.0))
        };
        off.push(bk.sqrt());
    }
    let t = SymTridiag::new(diag, off)?;
    let eig = symtri_eig(&t, true);
    let mu0 = (2.0f64.powf(a + b + 1.0)) * beta_ln(a + 1.0, b + 1.0)?.exp();
    let vectors = eig.vectors.expect("vectors requested");
    let mut pairs: Vec<(f64, f64)> = eig
        .values
        .iter()
        .zip(&vectors)
        .map(|(&x, v)| (x, mu0 * v[0] * v[0]))
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(QuadratureRule {
        alpha,
        beta,
        nodes,
        weights,
    })
}

/// Rule for the radial Galerkin integrals of an MBP family after the map
/// ρ = 2r^{2θ} − 1: parameters (max(α,0), β_n), with enough nodes to be
/// exact for integrands of polynomial degree ≤ 2K + extra_degree in ρ.
/// For α = −1 the explicit (1−ρ) boundary factors are folded into the
/// polynomial part, which the node count accounts for.
pub fn radial_rule(
    spec: &MbpSpec,
    n: u32,
    k_trunc: usize,
    extra_degree: usize,
) -> Result<QuadratureRule> {
    let beta = spec.beta_n(n)?;
    let alpha = spec.alpha().max(0.0);
    let nodes = k_trunc + extra_degree.div_ceil(2) + 3;
    gauss_jacobi(nodes, alpha, beta)
}
