//! Per-degree radial generalized eigensolves and their aggregation into a
//! global spectrum with multiplicities, plus eigenfunction coefficient
//! recovery, normalization, and point evaluation.

use crate::assembly::{assemble, ProblemConfig, RadialBlock};
use crate::error::{Error, Result};
use crate::harmonics::{harmonic_dim, harmonic_eval, HarmonicIndex};
use crate::linalg::generalized_sym_eig;
use crate::mbp::{mbp_radial_eval, MbpSpec};

/// One computed eigenpair. `coeffs[i]` multiplies the radial basis member
/// k = i+1; the vector is mass-normalized (coeffsᵗ M coeffs = 1) with the
/// first nonzero coefficient positive. The same eigenvalue is shared by all
/// a_n^d harmonics of its degree, recorded as `multiplicity`.
#[derive(Clone, Debug)]
pub struct EigenResult {
    pub lambda: f64,
    pub n: u32,
    /// 1-based index among the eigenvalues of the same harmonic degree.
    pub radial_rank: usize,
    pub multiplicity: u64,
    pub coeffs: Vec<f64>,
    pub spec: MbpSpec,
    pub config: ProblemConfig,
    pub k_trunc: usize,
}

/// A request for the `count` smallest eigenvalues over harmonic degrees
/// n ≤ max_degree at radial truncation K.
#[derive(Clone, Debug)]
pub struct SpectrumRequest {
    pub config: ProblemConfig,
    pub max_degree: u32,
    pub k_trunc: usize,
    pub count: usize,
}

/// Solves the radial pencil S u = λ M u of one block and returns all K
/// Ritz pairs in ascending order, mass-normalized with the documented sign.
///
/// Only the lower part of the Ritz spectrum approximates the continuous
/// problem: as a rule of thumb, treat the top half as unconverged and grow
/// K rather than read deeper into one solve.
pub fn solve_radial(block: &RadialBlock) -> Result<Vec<EigenResult>> {
    let eig = generalized_sym_eig(&block.stiffness, &block.mass, true)?;
    let vectors = eig.vectors.expect("vectors requested");
    let multiplicity = harmonic_dim(block.n, block.config.d());
    Ok(eig
        .values
        .iter()
        .zip(vectors)
        .enumerate()
        .map(|(i, (&lambda, coeffs))| {
            let mut res = EigenResult {
                lambda,
                n: block.n,
                radial_rank: i + 1,
                multiplicity,
                coeffs,
                spec: block.spec,
                config: block.config,
                k_trunc: block.k_trunc,
            };
            fix_sign(&mut res.coeffs);
            res
        })
        .collect())
}

fn fix_sign(coeffs: &mut [f64]) {
    if let Some(first) = coeffs.iter().find(|c| **c != 0.0) {
        if *first < 0.0 {
            for c in coeffs.iter_mut() {
                *c = -*c;
            }
        }
    }
}

/// Rescales so that coeffsᵗ M coeffs = 1 (unit unweighted ball norm of the
/// full eigenfunction) and the first nonzero coefficient is positive.
/// Results from [`solve_radial`] already satisfy this; the operation is
/// idempotent and invariant under common rescaling of the pencil.
pub fn normalize(result: &EigenResult) -> Result<EigenResult> {
    let block = assemble(&result.config, result.n, result.k_trunc)?;
    let mu = block.mass.mat_vec(&result.coeffs);
    let q: f64 = result.coeffs.iter().zip(&mu).map(|(a, b)| a * b).sum();
    if !(q > 0.0) {
        return Err(Error::NotPositiveDefinite { pivot: 0 });
    }
    let mut out = result.clone();
    let s = 1.0 / q.sqrt();
    for c in out.coeffs.iter_mut() {
        *c *= s;
    }
    fix_sign(&mut out.coeffs);
    Ok(out)
}

/// Solves every degree n ≤ max_degree with a_n^d > 0 and returns the
/// `count` smallest eigenvalues, ordered by (λ, n, radial_rank). Each entry
/// is annotated with its multiplicity a_n^d; the radial blocks are
/// ℓ-independent, so one solve per degree covers all of them.
pub fn solve_spectrum(req: &SpectrumRequest) -> Result<Vec<EigenResult>> {
    req.config.validate()?;
    if req.k_trunc == 0 || req.count == 0 {
        return Err(Error::InvalidConfig(
            "spectrum request needs K >= 1 and count >= 1".into(),
        ));
    }
    let mut all = Vec::new();
    for n in 0..=req.max_degree {
        if harmonic_dim(n, req.config.d()) == 0 {
            continue;
        }
        let block = assemble(&req.config, n, req.k_trunc)?;
        all.extend(solve_radial(&block)?);
    }
    all.sort_by(|a, b| {
        a.lambda
            .total_cmp(&b.lambda)
            .then(a.n.cmp(&b.n))
            .then(a.radial_rank.cmp(&b.radial_rank))
    });
    all.truncate(req.count);
    Ok(all)
}

/// Radial profile Σ_k coeffs_k · R_k(r) of the eigenfunction at each r.
pub fn eigenfunction_radial_eval(result: &EigenResult, rs: &[f64]) -> Result<Vec<f64>> {
    rs.iter()
        .map(|&r| {
            let mut acc = 0.0;
            for (i, c) in result.coeffs.iter().enumerate() {
                acc += c * mbp_radial_eval(&result.spec, result.n, i + 1, r)?;
            }
            Ok(acc)
        })
        .collect()
}

/// Full eigenfunction value radial(‖x‖) · Y_ℓ^n(x/‖x‖) at points of the
/// ball, for d ∈ {1, 2, 3}. At the origin the radial limit applies (the
/// boundary-vanishing basis decays there for every solver configuration).
pub fn eigenfunction_eval(result: &EigenResult, ell: u64, points: &[Vec<f64>]) -> Result<Vec<f64>> {
    let d = result.config.d();
    let idx = HarmonicIndex::new(d, result.n, ell)?;
    points
        .iter()
        .map(|p| {
            if p.len() != d as usize {
                return Err(Error::InvalidIndex(format!(
                    "point has {} components, expected {}",
                    p.len(),
                    d
                )));
            }
            let r = p.iter().map(|v| v * v).sum::<f64>().sqrt();
            if r > 1.0 + 1e-12 {
                return Err(Error::Domain(format!(
                    "point lies outside the ball, |x| = {r}"
                )));
            }
            let radial = eigenfunction_radial_eval(result, &[r.min(1.0)])?[0];
            let direction: Vec<f64> = if r == 0.0 {
                // Radial limit is 0 here for n >= 1; any direction works.
                let mut e1 = vec![0.0; d as usize];
                e1[0] = 1.0;
                e1
            } else {
                p.iter().map(|v| v / r).collect()
            };
            Ok(radial * harmonic_eval(&idx, &direction)?)
        })
        .collect()
}
