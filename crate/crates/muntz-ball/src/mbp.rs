//! The Müntz ball polynomial family.
//!
//! A member is the product of a Jacobi polynomial in ρ = 2r^{2θ} − 1, a
//! radial power r^{θβ_n + 1 − d/2 − μ}, and a spherical harmonic of degree
//! n. The family is orthogonal on the unit ball against the weight
//! ‖x‖^{2θ+2μ−2} (1 − ‖x‖^{2θ})^α, and the exponent driver
//!
//!   β_n = sqrt(c + (n + d/2 − 1)² + μ(μ + d − 2)) / θ
//!
//! is chosen so that applying −∇·‖x‖^{2μ}∇ + c‖x‖^{2μ−2} annihilates the
//! 1/r² coefficient, which is what makes the stiffness matrices sparse.

use crate::error::{Error, Result};
use crate::harmonics::HarmonicIndex;
use crate::specfun::{gamma_ln, jacobi_eval_m1, jacobi_rec};

/// Parameter bundle (α, μ, θ, c, d) defining an MBP family.
///
/// α > −1 or exactly −1 (the boundary-vanishing generalized family);
/// μ > −1/2; θ > 0; c ≥ 0 with β_0 real.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MbpSpec {
    alpha: f64,
    mu: f64,
    theta: f64,
    c: f64,
    d: u32,
}

impl MbpSpec {
    pub fn new(alpha: f64, mu: f64, theta: f64, c: f64, d: u32) -> Result<Self> {
        // alpha > -1 classical, or exactly -1 for the generalized family.
        if !(alpha >= -1.0) {
            return Err(Error::InvalidConfig(format!(
                "alpha must be > -1 or exactly -1, got {alpha}"
            )));
        }
        if !(mu > -0.5) {
            return Err(Error::InvalidConfig(format!("mu must be > -1/2, got {mu}")));
        }
        if !(theta > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "theta must be > 0, got {theta}"
            )));
        }
        if !(c >= 0.0) {
            return Err(Error::InvalidConfig(format!("c must be >= 0, got {c}")));
        }
        if d < 1 {
            return Err(Error::InvalidConfig("dimension must be >= 1".into()));
        }
        let spec = MbpSpec {
            alpha,
            mu,
            theta,
            c,
            d,
        };
        spec.beta_n(0)?;
        Ok(spec)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn theta(&self) -> f64 {
        self.theta
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn is_generalized(&self) -> bool {
        self.alpha == -1.0
    }

    /// Müntz exponent driver β_n; strictly increasing in n for d ≥ 2 and
    /// equal for n ∈ {0, 1} when d = 1.
    pub fn beta_n(&self, n: u32) -> Result<f64> {
        let half_shift = n as f64 + self.d as f64 / 2.0 - 1.0;
        let radicand = self.c + half_shift * half_shift + self.mu * (self.mu + self.d as f64 - 2.0);
        if radicand < 0.0 {
            return Err(Error::NegativeRadicand(radicand));
        }
        Ok(radicand.sqrt() / self.theta)
    }

    /// Exponent of the radial power-law factor, θβ_n + 1 − d/2 − μ.
    pub fn radial_exponent(&self, n: u32) -> Result<f64> {
        Ok(self.theta * self.beta_n(n)? + 1.0 - self.d as f64 / 2.0 - self.mu)
    }
}

/// Index of one MBP: radial degree k and harmonic index (d, n, ℓ).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MbpIndex {
    pub k: usize,
    pub harmonic: HarmonicIndex,
}

/// Jacobi value, dispatching on the generalized α = −1 family.
fn jacobi_value(alpha: f64, beta: f64, k: usize, rho: f64) -> f64 {
    if alpha == -1.0 {
        jacobi_eval_m1(k, beta, rho)
    } else {
        jacobi_rec(k, alpha, beta, rho)
    }
}

fn jacobi_d1(alpha: f64, beta: f64, k: usize, rho: f64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let kf = k as f64;
    if alpha == -1.0 {
        0.5 * (kf + beta) * jacobi_rec(k - 1, 0.0, beta + 1.0, rho)
    } else {
        0.5 * (kf + alpha + beta + 1.0) * jacobi_rec(k - 1, alpha + 1.0, beta + 1.0, rho)
    }
}

fn jacobi_d2(alpha: f64, beta: f64, k: usize, rho: f64) -> f64 {
    if k < 2 {
        return 0.0;
    }
    let kf = k as f64;
    if alpha == -1.0 {
        0.25 * (kf + beta) * (kf + beta + 1.0) * jacobi_rec(k - 2, 1.0, beta + 2.0, rho)
    } else {
        0.25 * (kf + alpha + beta + 1.0)
            * (kf + alpha + beta + 2.0)
            * jacobi_rec(k - 2, alpha + 2.0, beta + 2.0, rho)
    }
}

/// Radial part of the MBP: P_k^{(α,β_n)}(2r^{2θ}−1) · r^{θβ_n+1−d/2−μ}.
///
/// At r = 0 the power-law factor takes its limit: 0 for positive exponent,
/// 1 for zero exponent, and a divergence error for negative exponent. For
/// α = −1 and k ≥ 1 the value at r = 1 is an exact zero.
pub fn mbp_radial_eval(spec: &MbpSpec, n: u32, k: usize, r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!("r must lie in [0, 1], got {r}")));
    }
    let beta = spec.beta_n(n)?;
    let p = spec.radial_exponent(n)?;
    let rho = 2.0 * r.powf(2.0 * spec.theta()) - 1.0;
    let poly = jacobi_value(spec.alpha(), beta, k, rho);
    let power = if r == 0.0 {
        if p > 0.0 {
            0.0
        } else if p == 0.0 {
            1.0
        } else {
            return Err(Error::DivergentAtOrigin(p));
        }
    } else {
        r.powf(p)
    };
    Ok(power * poly)
}

/// Squared weighted norm of the MBP against ‖x‖^{2θ+2μ−2}(1−‖x‖^{2θ})^α,
/// the Γ-ratio
///   Γ(k+α+1) Γ(k+β_n+1) / [2θ (2k+α+β_n+1) Γ(k+1) Γ(k+α+β_n+1)].
/// Requires α > −1.
pub fn mbp_norm_sq(spec: &MbpSpec, n: u32, k: usize) -> Result<f64> {
    if spec.is_generalized() {
        return Err(Error::Domain(
            "mbp_norm_sq requires alpha > -1 (the alpha = -1 family is not L2-orthogonal \
             against this weight)"
                .into(),
        ));
    }
    let (a, b) = (spec.alpha(), spec.beta_n(n)?);
    let kf = k as f64;
    // Written with Γ(k+α+β+2) so every Γ argument stays positive even when
    // α + β + 1 < 0 at k = 0.
    let ln = gamma_ln(kf + a + 1.0)? + gamma_ln(kf + b + 1.0)?
        - gamma_ln(kf + 1.0)?
        - gamma_ln(kf + a + b + 2.0)?;
    Ok(ln.exp() * (kf + a + b + 1.0) / (2.0 * spec.theta() * (2.0 * kf + a + b + 1.0)))
}

/// Sturm–Liouville eigenvalue of the weighted radial operator on the MBP:
///   χ = (2θk + θβ_n − μ + 1 − d/2)(2θk + θβ_n + 2θα + 2θ + μ + d/2 − 1).
pub fn chi_eigenvalue(spec: &MbpSpec, n: u32, k: usize) -> Result<f64> {
    let tb = spec.theta() * spec.beta_n(n)?;
    let tk = 2.0 * spec.theta() * k as f64;
    let d2 = spec.d() as f64 / 2.0;
    let first = tk + tb - spec.mu() + 1.0 - d2;
    let second = tk + tb + 2.0 * spec.theta() * (spec.alpha() + 1.0) + spec.mu() + d2 - 1.0;
    Ok(first * second)
}

/// Radial value R(r) with first and second derivatives, in closed form via
/// the Jacobi derivative identities.
fn radial_parts(spec: &MbpSpec, n: u32, k: usize, r: f64) -> Result<(f64, f64, f64)> {
    let beta = spec.beta_n(n)?;
    let p = spec.radial_exponent(n)?;
    let th = spec.theta();
    let a = spec.alpha();
    let rho = 2.0 * r.powf(2.0 * th) - 1.0;
    let g0 = jacobi_value(a, beta, k, rho);
    let g1 = jacobi_d1(a, beta, k, rho);
    let g2 = jacobi_d2(a, beta, k, rho);
    let opr = 1.0 + rho; // 2 r^{2θ}
    let val = r.powf(p) * g0;
    let d1 = r.powf(p - 1.0) * (p * g0 + 2.0 * th * opr * g1);
    let d2 = r.powf(p - 2.0)
        * (p * (p - 1.0) * g0
            + 2.0 * th * opr * (2.0 * p - 1.0 + 2.0 * th) * g1
            + 4.0 * th * th * opr * opr * g2);
    Ok((val, d1, d2))
}

/// The radial Sturm–Liouville operator
///   𝒟R = −(1−r^{2θ})[R'' + (d+2μ−1)/r · R'] + 2θ(α+1) r^{2θ−1} R'
///        + (c + n(n+d−2))/r² · R
/// applied to the radial MBP in closed form. The family satisfies
/// 𝒟R = χ r^{2θ−2} R with χ from [`chi_eigenvalue`].
pub fn apply_radial_sl_operator(spec: &MbpSpec, n: u32, k: usize, r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("r must lie in (0, 1), got {r}")));
    }
    let (val, d1, d2) = radial_parts(spec, n, k, r)?;
    let th = spec.theta();
    let df = spec.d() as f64;
    let nf = n as f64;
    let r2t = r.powf(2.0 * th);
    let angular = spec.c() + nf * (nf + df - 2.0);
    Ok(-(1.0 - r2t) * (d2 + (df + 2.0 * spec.mu() - 1.0) / r * d1)
        + 2.0 * th * (spec.alpha() + 1.0) * r.powf(2.0 * th - 1.0) * d1
        + angular / (r * r) * val)
}

/// Radial form of (−∇·‖x‖^{2μ}∇ + c‖x‖^{2μ−2}) applied to the MBP:
///   −r^{2μ}[R'' + (2μ+d−1)/r · R' − (n(n+d−2)+c)/r² · R].
/// The family satisfies the lowering identity: this equals
/// −4θ²(k+β_n)(k+α+β_n+1) r^{2θ−2+2μ} times the radial part of the
/// (α+2, k−1) member (zero for k = 0).
pub fn apply_degenerate_operator(spec: &MbpSpec, n: u32, k: usize, r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("r must lie in (0, 1), got {r}")));
    }
    let (val, d1, d2) = radial_parts(spec, n, k, r)?;
    let df = spec.d() as f64;
    let nf = n as f64;
    let angular = nf * (nf + df - 2.0) + spec.c();
    Ok(-r.powf(2.0 * spec.mu())
        * (d2 + (2.0 * spec.mu() + df - 1.0) / r * d1 - angular / (r * r) * val))
}
