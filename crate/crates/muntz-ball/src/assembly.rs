//! Per-harmonic-degree Galerkin matrix assembly.
//!
//! All schemes use the boundary-vanishing α = −1 basis with radial indices
//! k = 1..K (the k = 0 member does not vanish at r = 1). Stiffness
//! diagonals come from the Sobolev orthogonality identity
//!   (∇S_k, ∇S_j)_{r^{2μ}} + c(S_k, S_j)_{r^{2μ−2}} = 2θ(k+β_n)²/(2k+β_n) δ_{kj},
//! mass and potential matrices either from the tridiagonal closed form
//! (θ = 1−μ) or from Gauss–Jacobi quadrature that is exact for the
//! polynomial integrands in ρ = 2r^{2θ} − 1.

use crate::error::{Error, Result};
use crate::linalg::SymBanded;
use crate::mbp::MbpSpec;
use crate::quadrature::radial_rule;
use crate::specfun::jacobi_m1_all;
use serde::{Deserialize, Serialize};

/// Exponent variant of the degenerate-problem basis: θ = 1−μ gives a
/// tridiagonal mass matrix, θ = (1−μ)/2 a pentadiagonal one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisTheta {
    Full,
    Half,
}

/// Which eigenvalue problem is being discretized, with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ProblemConfig {
    /// −∇·(‖x‖^{2μ}∇u) + c‖x‖^{2μ−2} u = λu on the unit ball, u = 0 on the
    /// boundary. Requires −1/2 < μ < 1 and c > 0.
    Degenerate {
        d: u32,
        mu: f64,
        c: f64,
        basis: BasisTheta,
    },
    /// −Δu + (c/‖x‖²) u + z‖x‖^{(2ν−2η)/(η+1)} u = λu, Dirichlet boundary.
    /// η, ν are non-negative integers; z may be negative.
    Fractional {
        d: u32,
        c: f64,
        z: f64,
        eta: u32,
        nu: u32,
    },
}

impl ProblemConfig {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ProblemConfig::Degenerate { d, mu, c, .. } => {
                if d < 1 {
                    return Err(Error::InvalidConfig("dimension must be >= 1".into()));
                }
                if !(mu > -0.5) {
                    return Err(Error::InvalidConfig(format!(
                        "degenerate problem requires mu > -1/2, got {mu}"
                    )));
                }
                if !(mu < 1.0) {
                    return Err(Error::InvalidConfig(format!(
                        "degenerate problem requires mu < 1 so that theta = 1 - mu > 0, got {mu}"
                    )));
                }
                if !(c > 0.0) {
                    return Err(Error::InvalidConfig(format!(
                        "degenerate problem requires c > 0, got {c}"
                    )));
                }
                Ok(())
            }
            ProblemConfig::Fractional { d, c, .. } => {
                if d < 1 {
                    return Err(Error::InvalidConfig("dimension must be >= 1".into()));
                }
                if !(c >= 0.0) {
                    return Err(Error::InvalidConfig(format!(
                        "fractional problem requires c >= 0, got {c}"
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn d(&self) -> u32 {
        match *self {
            ProblemConfig::Degenerate { d, .. } | ProblemConfig::Fractional { d, .. } => d,
        }
    }

    /// The MBP family used for this problem: α = −1 throughout, θ = 1−μ or
    /// (1−μ)/2 for the degenerate problem, θ = 1/(η+1) and μ = 0 for the
    /// fractional one.
    pub fn mbp_spec(&self) -> Result<MbpSpec> {
        self.validate()?;
        match *self {
            ProblemConfig::Degenerate { d, mu, c, basis } => {
                let theta = match basis {
                    BasisTheta::Full => 1.0 - mu,
                    BasisTheta::Half => 0.5 * (1.0 - mu),
                };
                MbpSpec::new(-1.0, mu, theta, c, d)
            }
            ProblemConfig::Fractional { d, c, eta, .. } => {
                MbpSpec::new(-1.0, 0.0, 1.0 / (eta as f64 + 1.0), c, d)
            }
        }
    }
}

/// Stiffness and mass matrices of one radial block (harmonic degree n,
/// radial indices k = 1..K). Mass is SPD; stiffness is diagonal for z = 0
/// and may be indefinite for z < 0.
#[derive(Clone, Debug)]
pub struct RadialBlock {
    pub n: u32,
    pub k_trunc: usize,
    pub stiffness: SymBanded,
    pub mass: SymBanded,
    pub spec: MbpSpec,
    pub config: ProblemConfig,
}

/// Diagonal stiffness entry 2θ(k+β_n)²/(2k+β_n) for k ≥ 1, or the k = 0
/// boundary value θβ_n + 1 − d/2 − μ.
pub fn stiffness_diag_entry(spec: &MbpSpec, n: u32, k: usize) -> Result<f64> {
    let beta = spec.beta_n(n)?;
    if k == 0 {
        return spec.radial_exponent(n);
    }
    let kf = k as f64;
    Ok(2.0 * spec.theta() * (kf + beta) * (kf + beta) / (2.0 * kf + beta))
}

/// Closed-form unweighted mass entry (S_k, S_j) of the θ = 1−μ degenerate
/// basis, valid for all k, j ≥ 0 (five cases; tridiagonal).
pub fn degenerate_mass_entry(beta_n: f64, mu: f64, k: usize, j: usize) -> f64 {
    let scale = 1.0 / (1.0 - mu);
    let b = beta_n;
    let (hi, lo) = if k >= j { (k, j) } else { (j, k) };
    if hi == lo {
        let kf = k as f64;
        if k == 0 {
            scale / (2.0 * (1.0 + b))
        } else {
            scale * (kf + b) * (kf + b)
                / ((2.0 * kf + b - 1.0) * (2.0 * kf + b) * (2.0 * kf + b + 1.0))
        }
    } else if hi == lo + 1 {
        let kf = hi as f64;
        -scale * (kf + b) * (kf + b - 1.0)
            / (2.0 * (2.0 * kf + b - 2.0) * (2.0 * kf + b - 1.0) * (2.0 * kf + b))
    } else {
        0.0
    }
}

/// Tridiagonal mass matrix of the θ = 1−μ degenerate scheme, k = 1..K.
pub fn mass_matrix_degenerate(cfg: &ProblemConfig, n: u32, k_trunc: usize) -> Result<SymBanded> {
    let (mu, basis) = match *cfg {
        ProblemConfig::Degenerate { mu, basis, .. } => (mu, basis),
        _ => {
            return Err(Error::InvalidConfig(
                "mass_matrix_degenerate requires a degenerate config".into(),
            ))
        }
    };
    if basis != BasisTheta::Full {
        return Err(Error::InvalidConfig(
            "closed-form mass matrix requires the theta = 1 - mu basis".into(),
        ));
    }
    let spec = cfg.mbp_spec()?;
    let beta = spec.beta_n(n)?;
    let mut m = SymBanded::zeros(k_trunc, 1);
    for k in 1..=k_trunc {
        m.set(k - 1, k - 1, degenerate_mass_entry(beta, mu, k, k));
        if k >= 2 {
            m.set(k - 1, k - 2, degenerate_mass_entry(beta, mu, k, k - 1));
        }
    }
    Ok(m)
}

/// Diagonal stiffness matrix of the degenerate scheme (either basis).
pub fn stiffness_matrix_degenerate(
    cfg: &ProblemConfig,
    n: u32,
    k_trunc: usize,
) -> Result<SymBanded> {
    if !matches!(cfg, ProblemConfig::Degenerate { .. }) {
        return Err(Error::InvalidConfig(
            "stiffness_matrix_degenerate requires a degenerate config".into(),
        ));
    }
    let spec = cfg.mbp_spec()?;
    let mut s = SymBanded::zeros(k_trunc, 0);
    for k in 1..=k_trunc {
        s.set(k - 1, k - 1, stiffness_diag_entry(&spec, n, k)?);
    }
    Ok(s)
}

/// Banded matrix of radial pair integrals
///   scale · ∫ P_k^{(−1,β_n)}(ρ) P_j^{(−1,β_n)}(ρ) (1+ρ)^{extra_pow+β_n} dρ
/// for k, j = 1..K, assembled by a Gauss–Jacobi rule that integrates the
/// polynomial integrand exactly. Entries with |k−j| > extra_pow + 1 vanish
/// identically and the declared half-bandwidth reflects that.
#[allow(clippy::needless_range_loop)]
fn radial_pair_matrix(
    spec: &MbpSpec,
    n: u32,
    k_trunc: usize,
    extra_pow: u32,
    scale: f64,
) -> Result<SymBanded> {
    let beta = spec.beta_n(n)?;
    let hb = (extra_pow as usize + 1).min(k_trunc.saturating_sub(1));
    let rule = radial_rule(spec, n, k_trunc, extra_pow as usize + 2)?;
    let mut m = SymBanded::zeros(k_trunc, hb);
    // Accumulate per-band dot products over nodes.
    let mut acc = vec![vec![0.0f64; k_trunc]; hb + 1];
    for (&rho, &w) in rule.nodes().iter().zip(rule.weights()) {
        let p = jacobi_m1_all(beta, rho, k_trunc);
        let wfac = w * (1.0 + rho).powi(extra_pow as i32);
        for b in 0..=hb {
            for j in 1..=(k_trunc - b) {
                acc[b][j - 1] += wfac * p[j] * p[j + b];
            }
        }
    }
    for b in 0..=hb {
        for j in 1..=(k_trunc - b) {
            m.set(j + b - 1, j - 1, scale * acc[b][j - 1]);
        }
    }
    Ok(m)
}

/// Degenerate-problem block with the θ = (1−μ)/2 basis: diagonal stiffness,
/// pentadiagonal mass assembled by quadrature.
pub fn matrices_degenerate_half_theta(
    cfg: &ProblemConfig,
    n: u32,
    k_trunc: usize,
) -> Result<RadialBlock> {
    match *cfg {
        ProblemConfig::Degenerate {
            basis: BasisTheta::Half,
            ..
        } => {}
        _ => {
            return Err(Error::InvalidConfig(
                "matrices_degenerate_half_theta requires a degenerate half-theta config".into(),
            ))
        }
    }
    let spec = cfg.mbp_spec()?;
    let beta = spec.beta_n(n)?;
    let stiffness = stiffness_matrix_degenerate(cfg, n, k_trunc)?;
    // Unweighted mass in rho: (1/(4θ)) ((1+ρ)/2)^{β+1}; the (1−μ)/θ − 1 = 1
    // extra power makes it pentadiagonal.
    let scale = 1.0 / (4.0 * spec.theta()) * 2.0f64.powf(-(beta + 1.0));
    let mass = radial_pair_matrix(&spec, n, k_trunc, 1, scale)?;
    Ok(RadialBlock {
        n,
        k_trunc,
        stiffness,
        mass,
        spec,
        config: *cfg,
    })
}

/// Fractional-problem block: stiffness = Sobolev diagonal + z × potential
/// matrix (half-bandwidth ν+1), mass with half-bandwidth η+1, both by
/// exact Gauss–Jacobi quadrature of the (1+ρ)-power integrands.
pub fn matrices_fractional(cfg: &ProblemConfig, n: u32, k_trunc: usize) -> Result<RadialBlock> {
    let (z, eta, nu) = match *cfg {
        ProblemConfig::Fractional { z, eta, nu, .. } => (z, eta, nu),
        _ => {
            return Err(Error::InvalidConfig(
                "matrices_fractional requires a fractional config".into(),
            ))
        }
    };
    let spec = cfg.mbp_spec()?;
    let beta = spec.beta_n(n)?;
    let quarter_theta = 1.0 / (4.0 * spec.theta());

    let mass_scale = quarter_theta * 2.0f64.powf(-(beta + eta as f64));
    let mass = radial_pair_matrix(&spec, n, k_trunc, eta, mass_scale)?;

    let stiff_hb = if z != 0.0 {
        (nu as usize + 1).min(k_trunc.saturating_sub(1))
    } else {
        0
    };
    let mut stiffness = SymBanded::zeros(k_trunc, stiff_hb);
    if z != 0.0 {
        let pot_scale = quarter_theta * 2.0f64.powf(-(beta + nu as f64));
        let potential = radial_pair_matrix(&spec, n, k_trunc, nu, pot_scale)?;
        for j in 0..k_trunc {
            for i in j..=(j + stiff_hb).min(k_trunc - 1) {
                stiffness.set(i, j, z * potential.get(i, j));
            }
        }
    }
    for k in 1..=k_trunc {
        let v = stiffness.get(k - 1, k - 1) + stiffness_diag_entry(&spec, n, k)?;
        stiffness.set(k - 1, k - 1, v);
    }
    // The pencil solve requires an SPD mass; guard here so failures carry
    // the assembly context.
    crate::linalg::cholesky_banded(&mass)?;
    Ok(RadialBlock {
        n,
        k_trunc,
        stiffness,
        mass,
        spec,
        config: *cfg,
    })
}

/// Assembles the radial block for harmonic degree n at truncation K,
/// dispatching on the problem kind and basis variant.
pub fn assemble(cfg: &ProblemConfig, n: u32, k_trunc: usize) -> Result<RadialBlock> {
    cfg.validate()?;
    if k_trunc == 0 {
        return Err(Error::InvalidConfig("truncation K must be >= 1".into()));
    }
    match cfg {
        ProblemConfig::Degenerate {
            basis: BasisTheta::Full,
            ..
        } => {
            let spec = cfg.mbp_spec()?;
            Ok(RadialBlock {
                n,
                k_trunc,
                stiffness: stiffness_matrix_degenerate(cfg, n, k_trunc)?,
                mass: mass_matrix_degenerate(cfg, n, k_trunc)?,
                spec,
                config: *cfg,
            })
        }
        ProblemConfig::Degenerate {
            basis: BasisTheta::Half,
            ..
        } => matrices_degenerate_half_theta(cfg, n, k_trunc),
        ProblemConfig::Fractional { .. } => matrices_fractional(cfg, n, k_trunc),
    }
}
