//! Spherical-harmonic bookkeeping: dimensions a_n^d of the degree-n harmonic
//! spaces for any d ≥ 1, Laplace–Beltrami eigenvalues, and explicit
//! normalized real harmonics for d ∈ {1, 2, 3}.
//!
//! The eigensolvers only ever need a_n^d (all radial blocks decouple by
//! degree); evaluation exists to sample eigenfunctions at points.
//!
//! ℓ-ordering within a degree (fixed convention):
//!   d = 1: n ∈ {0, 1} only, ℓ = 1.
//!   d = 2: ℓ = 1 is cos(nφ), ℓ = 2 is sin(nφ) (n ≥ 1).
//!   d = 3: ℓ enumerates m = 0, 1c, 1s, 2c, 2s, …, nc, ns, with
//!          Condon–Shortley-free associated Legendre functions.

use crate::error::{Error, Result};

/// Dimension a_n^d of the space of degree-n harmonic polynomials in d
/// variables: binom(n+d−1, n) − binom(n+d−3, n−2), the second term vanishing
/// for n ∈ {0, 1}. For d = 1 this yields 1 for n ∈ {0, 1} and 0 otherwise.
pub fn harmonic_dim(n: u32, d: u32) -> u64 {
    assert!(d >= 1, "dimension must be >= 1");
    let first = binom(n as u64 + d as u64 - 1, n as u64);
    let second = if n >= 2 {
        binom(n as u64 + d as u64 - 3, n as u64 - 2)
    } else {
        0
    };
    first - second
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Laplace–Beltrami eigenvalue on degree-n harmonics: −n(n+d−2).
pub fn laplace_beltrami_eig(n: u32, d: u32) -> f64 {
    -((n as f64) * (n as f64 + d as f64 - 2.0))
}

/// Index (d, n, ℓ) of one member of the real harmonic basis,
/// 1 ≤ ℓ ≤ a_n^d.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HarmonicIndex {
    pub d: u32,
    pub n: u32,
    pub ell: u64,
}

impl HarmonicIndex {
    pub fn new(d: u32, n: u32, ell: u64) -> Result<Self> {
        let a = harmonic_dim(n, d);
        if ell == 0 || ell > a {
            return Err(Error::InvalidIndex(format!(
                "harmonic index ell={ell} out of 1..={a} for degree n={n}, d={d}"
            )));
        }
        Ok(HarmonicIndex { d, n, ell })
    }
}

/// Associated Legendre P_n^m(x) without the Condon–Shortley phase.
fn assoc_legendre(n: u32, m: u32, x: f64) -> f64 {
    debug_assert!(m <= n);
    let somx2 = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
    // P_m^m = (2m-1)!! (1-x^2)^{m/2}
    let mut pmm = 1.0;
    let mut fact = 1.0;
    for _ in 0..m {
        pmm *= fact * somx2;
        fact += 2.0;
    }
    if n == m {
        return pmm;
    }
    // P_{m+1}^m = x (2m+1) P_m^m
    let mut pm1 = x * (2.0 * m as f64 + 1.0) * pmm;
    if n == m + 1 {
        return pm1;
    }
    let mut p = 0.0;
    for ll in (m + 2)..=n {
        let llf = ll as f64;
        let mf = m as f64;
        p = (x * (2.0 * llf - 1.0) * pm1 - (llf + mf - 1.0) * pmm) / (llf - mf);
        pmm = pm1;
        pm1 = p;
    }
    p
}

/// Value of the orthonormal real spherical harmonic Y_ℓ^n at a unit vector.
///
/// Supported for d ∈ {1, 2, 3}; the basis satisfies
/// ∫_{S^{d-1}} Y_ℓ^n Y_ι^m dσ = δ_{nm} δ_{ℓι}.
pub fn harmonic_eval(idx: &HarmonicIndex, direction: &[f64]) -> Result<f64> {
    if idx.d > 3 {
        return Err(Error::UnsupportedDimension(idx.d));
    }
    if direction.len() != idx.d as usize {
        return Err(Error::InvalidIndex(format!(
            "direction has {} components, expected {}",
            direction.len(),
            idx.d
        )));
    }
    let norm2: f64 = direction.iter().map(|v| v * v).sum();
    if (norm2.sqrt() - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "direction must be a unit vector, |x| = {}",
            norm2.sqrt()
        )));
    }
    match idx.d {
        1 => {
            let x = direction[0];
            match idx.n {
                0 => Ok(1.0 / 2.0f64.sqrt()),
                1 => Ok(x / 2.0f64.sqrt()),
                n => Err(Error::InvalidIndex(format!("a_{n}^1 = 0: no harmonics"))),
            }
        }
        2 => {
            let phi = direction[1].atan2(direction[0]);
            if idx.n == 0 {
                return if idx.ell == 1 {
                    Ok(1.0 / (2.0 * std::f64::consts::PI).sqrt())
                } else {
                    Err(Error::InvalidIndex(format!(
                        "ell={} exceeds a_0^2 = 1",
                        idx.ell
                    )))
                };
            }
            let nf = idx.n as f64;
            let norm = 1.0 / std::f64::consts::PI.sqrt();
            match idx.ell {
                1 => Ok(norm * (nf * phi).cos()),
                2 => Ok(norm * (nf * phi).sin()),
                ell => Err(Error::InvalidIndex(format!("ell={ell} exceeds a_n^2 = 2"))),
            }
        }
        3 => {
            let (x, y, zc) = (direction[0], direction[1], direction[2]);
            let phi = y.atan2(x);
            let ct = zc.clamp(-1.0, 1.0);
            let n = idx.n;
            // ell = 1 -> m = 0; ell = 2m, 2m+1 -> cos/sin pair of order m.
            let (m, is_sin) = if idx.ell == 1 {
                (0u32, false)
            } else {
                ((idx.ell / 2) as u32, idx.ell % 2 == 1)
            };
            if m > n {
                return Err(Error::InvalidIndex(format!(
                    "ell={} exceeds a_{n}^3 = {}",
                    idx.ell,
                    2 * n + 1
                )));
            }
            let nf = n as f64;
            let mut norm = ((2.0 * nf + 1.0) / (4.0 * std::f64::consts::PI)).sqrt();
            if m > 0 {
                let mut ratio = 1.0; // (n-m)!/(n+m)!
                for j in (n - m + 1)..=(n + m) {
                    ratio /= j as f64;
                }
                norm *= (2.0 * ratio).sqrt();
            }
            let p = assoc_legendre(n, m, ct);
            let ang = if m == 0 {
                1.0
            } else if is_sin {
                (m as f64 * phi).sin()
            } else {
                (m as f64 * phi).cos()
            };
            Ok(norm * p * ang)
        }
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn dims_match_binomial_formula() {
        assert_eq!(harmonic_dim(0, 7), 1);
        assert_eq!(harmonic_dim(2, 3), 5);
        assert_eq!(harmonic_dim(1, 2), 2);
        assert_eq!(harmonic_dim(5, 3), 11);
        // d = 1 carries exactly two harmonics.
        assert_eq!(harmonic_dim(0, 1), 1);
        assert_eq!(harmonic_dim(1, 1), 1);
        assert_eq!(harmonic_dim(2, 1), 0);
        assert_eq!(harmonic_dim(9, 1), 0);
    }

    #[test]
    fn dim_partial_sums_consistent() {
        // Sum of a_n^d over n <= N equals binom(N+d-1,N) + binom(N+d-2,N-1):
        // the dimension of harmonic polynomials of degree <= N.
        for d in 2..=5u32 {
            for nmax in 0..=6u32 {
                let total: u64 = (0..=nmax).map(|n| harmonic_dim(n, d)).sum();
                let want = binom((nmax + d - 1) as u64, nmax as u64)
                    + if nmax >= 1 {
                        binom((nmax + d - 2) as u64, (nmax - 1) as u64)
                    } else {
                        0
                    };
                assert_eq!(total, want, "d={d}, N={nmax}");
            }
        }
    }

    #[test]
    fn beltrami_eigenvalues() {
        assert_eq!(laplace_beltrami_eig(0, 5), 0.0);
        assert_eq!(laplace_beltrami_eig(1, 3), -2.0);
        assert_eq!(laplace_beltrami_eig(2, 2), -4.0);
    }

    #[test]
    fn index_bounds_checked() {
        assert!(HarmonicIndex::new(3, 2, 5).is_ok());
        assert!(HarmonicIndex::new(3, 2, 6).is_err());
        assert!(HarmonicIndex::new(3, 2, 0).is_err());
        assert!(HarmonicIndex::new(1, 2, 1).is_err());
    }

    #[test]
    fn normalization_constants() {
        let y = harmonic_eval(&HarmonicIndex::new(2, 0, 1).unwrap(), &[1.0, 0.0]).unwrap();
        assert_abs_diff_eq!(y, 1.0 / (2.0 * PI).sqrt(), epsilon = 1e-15);
        let y = harmonic_eval(&HarmonicIndex::new(3, 0, 1).unwrap(), &[0.0, 0.0, 1.0]).unwrap();
        assert_abs_diff_eq!(y, 1.0 / (4.0 * PI).sqrt(), epsilon = 1e-15);
        let y = harmonic_eval(&HarmonicIndex::new(1, 1, 1).unwrap(), &[1.0]).unwrap();
        assert_abs_diff_eq!(y, 1.0 / 2.0f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn rejects_bad_directions_and_dims() {
        let idx = HarmonicIndex::new(2, 1, 1).unwrap();
        assert!(harmonic_eval(&idx, &[0.5, 0.5]).is_err());
        let idx = HarmonicIndex { d: 4, n: 0, ell: 1 };
        assert!(matches!(
            harmonic_eval(&idx, &[1.0, 0.0, 0.0, 0.0]),
            Err(Error::UnsupportedDimension(4))
        ));
    }

    #[test]
    fn circle_orthonormality_by_quadrature() {
        // Uniform trapezoid in phi integrates trig polynomials exactly.
        let npts = 64;
        for n in 0..=6u32 {
            for m in 0..=6u32 {
                for ln in 1..=harmonic_dim(n, 2) {
                    for lm in 1..=harmonic_dim(m, 2) {
                        let yi = HarmonicIndex::new(2, n, ln).unwrap();
                        let yj = HarmonicIndex::new(2, m, lm).unwrap();
                        let mut acc = 0.0;
                        for p in 0..npts {
                            let phi = 2.0 * PI * p as f64 / npts as f64;
                            let dir = [phi.cos(), phi.sin()];
                            acc += harmonic_eval(&yi, &dir).unwrap()
                                * harmonic_eval(&yj, &dir).unwrap();
                        }
                        acc *= 2.0 * PI / npts as f64;
                        let want = if n == m && ln == lm { 1.0 } else { 0.0 };
                        assert_abs_diff_eq!(acc, want, epsilon = 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn beltrami_stencil_matches_eigenvalue_on_circle() {
        // On S^1 the Laplace-Beltrami operator is d^2/dphi^2; a central
        // second difference on harmonic_eval must approach -n^2 Y.
        let h = 1e-4;
        for n in 1..=4u32 {
            let idx = HarmonicIndex::new(2, n, 1).unwrap();
            let phi0 = 0.7;
            let y_at = |phi: f64| harmonic_eval(&idx, &[phi.cos(), phi.sin()]).unwrap();
            let stencil = (y_at(phi0 + h) - 2.0 * y_at(phi0) + y_at(phi0 - h)) / (h * h);
            let want = laplace_beltrami_eig(n, 2) * y_at(phi0);
            assert!(
                (stencil - want).abs() <= 1e-4 * want.abs().max(1.0),
                "n={n}: stencil {stencil} vs {want}"
            );
        }
    }
}
