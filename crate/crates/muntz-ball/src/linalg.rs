//! Small dense/banded symmetric linear algebra: symmetric tridiagonal
//! eigensolver (implicit-shift QL), banded Cholesky, and the
//! symmetric-definite generalized eigenproblem S u = λ M u solved by
//! Cholesky reduction to a standard symmetric problem.
//!
//! The generalized path runs in double-double internally: the mass matrices
//! of the fractional scheme grow ill-conditioned with the truncation order,
//! and the reduced matrix has norm up to ~1e10, so eigenvalues near the
//! bottom of the spectrum would otherwise pick up absolute noise of order
//! `eps * norm`. Everything stays O(m^3) dense; at desk scale (m of a few
//! hundred) determinism beats asymptotics.

use crate::dd::Dd;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar abstraction so the eigensolver kernels run in f64 or
/// double-double unchanged.
pub(crate) trait Scalar:
    Copy
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Negligibility threshold for off-diagonal coupling in QL sweeps.
    const QL_EPS: f64;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn hypot(self, other: Self) -> Self {
        let (a, b) = (self.abs(), other.abs());
        let (big, small) = if a > b { (a, b) } else { (b, a) };
        if big.to_f64() == 0.0 {
            return Self::zero();
        }
        let q = small / big;
        big * (Self::one() + q * q).sqrt()
    }
}

impl Scalar for f64 {
    const QL_EPS: f64 = f64::EPSILON;
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
}

impl Scalar for Dd {
    const QL_EPS: f64 = 1e-30;
    fn zero() -> Self {
        Dd::ZERO
    }
    fn one() -> Self {
        Dd::ONE
    }
    fn from_f64(x: f64) -> Self {
        Dd::from_f64(x)
    }
    fn to_f64(self) -> f64 {
        Dd::to_f64(self)
    }
    fn abs(self) -> Self {
        Dd::abs(self)
    }
    fn sqrt(self) -> Self {
        Dd::sqrt(self)
    }
}

/// Real symmetric tridiagonal matrix: `diag` of length m, `offdiag` of
/// length m−1 with `offdiag[i]` the coupling between rows i and i+1.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(Error::InvalidIndex(format!(
                "tridiagonal lengths inconsistent: diag {}, offdiag {}",
                diag.len(),
                offdiag.len()
            )));
        }
        Ok(SymTridiag { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }
}

/// Symmetric banded matrix in lower-triangle storage: `bands[b][i]` holds
/// the entry (i+b, i) for b = 0..=half_bandwidth. Entries outside the band
/// are identically zero by construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymBanded {
    dim: usize,
    half_bandwidth: usize,
    bands: Vec<Vec<f64>>,
}

impl SymBanded {
    pub fn zeros(dim: usize, half_bandwidth: usize) -> Self {
        let bands = (0..=half_bandwidth)
            .map(|b| vec![0.0; dim.saturating_sub(b)])
            .collect();
        SymBanded {
            dim,
            half_bandwidth,
            bands,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_bandwidth(&self) -> usize {
        self.half_bandwidth
    }

    pub fn bands(&self) -> &[Vec<f64>] {
        &self.bands
    }

    /// Entry (i, j); zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        let b = r - c;
        if b > self.half_bandwidth {
            0.0
        } else {
            self.bands[b][c]
        }
    }

    /// Sets entry (i, j) and its mirror. Panics if (i, j) lies outside the
    /// declared band: the zero pattern is structural, not numerical.
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        let b = r - c;
        assert!(
            b <= self.half_bandwidth,
            "entry ({i}, {j}) outside declared half-bandwidth {}",
            self.half_bandwidth
        );
        self.bands[b][c] = value;
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.dim;
        let mut a = vec![vec![0.0; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.get(i, j);
            }
        }
        a
    }

    /// y = A x.
    #[allow(clippy::needless_range_loop)]
    pub fn mat_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim);
        let mut y = vec![0.0; self.dim];
        for (i, yi) in y.iter_mut().enumerate() {
            let lo = i.saturating_sub(self.half_bandwidth);
            let hi = (i + self.half_bandwidth).min(self.dim - 1);
            let mut s = 0.0;
            for j in lo..=hi {
                s += self.get(i, j) * x[j];
            }
            *yi = s;
        }
        y
    }

    /// Max absolute entry, used as a scale for residual tolerances.
    pub fn norm_max(&self) -> f64 {
        self.bands
            .iter()
            .flatten()
            .fold(0.0f64, |m, &v| m.max(v.abs()))
    }
}

/// Eigenvalues in ascending order; `vectors[j]` is the eigenvector for
/// `values[j]` when requested.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Option<Vec<Vec<f64>>>,
}

fn sign_copy<S: Scalar>(magnitude: S, sign_of: S) -> S {
    if sign_of >= S::zero() {
        magnitude.abs()
    } else {
        -magnitude.abs()
    }
}

/// Implicit-shift QL on a symmetric tridiagonal matrix, rotations applied
/// to `z` columns when present. `z[k][j]` is component k of column j.
#[allow(clippy::needless_range_loop)]
fn tql2<S: Scalar>(d: &mut [S], e: &[S], mut z: Option<&mut Vec<Vec<S>>>) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    // Work on a copy of the couplings with a zero sentinel at the end.
    let mut e: Vec<S> = {
        let mut v = e.to_vec();
        v.push(S::zero());
        v
    };
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs().to_f64() + d[m + 1].abs().to_f64();
                if e[m].abs().to_f64() <= S::QL_EPS * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 100 {
                return Err(Error::Domain(
                    "QL iteration failed to converge (this indicates NaN input)".into(),
                ));
            }
            let two = S::from_f64(2.0);
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let r = g.hypot(S::one());
            g = d[m] - d[l] + e[l] / (g + sign_copy(r, g));
            let mut s = S::one();
            let mut c = S::one();
            let mut p = S::zero();
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                let r = f.hypot(g);
                e[i + 1] = r;
                if r.to_f64() == 0.0 {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = S::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                let r2 = (d[i] - g) * s + two * c * b;
                p = s * r2;
                d[i + 1] = g + p;
                g = c * r2 - b;
                if let Some(zz) = z.as_deref_mut() {
                    for row in zz.iter_mut() {
                        f = row[i + 1];
                        row[i + 1] = s * row[i] + c * f;
                        row[i] = c * row[i] - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = S::zero();
        }
    }
    Ok(())
}

/// Householder reduction of a dense symmetric matrix to tridiagonal form,
/// accumulating the orthogonal transform into `a` (EISPACK tred2).
#[allow(clippy::needless_range_loop)]
fn tred2<S: Scalar>(a: &mut [Vec<S>]) -> (Vec<S>, Vec<S>) {
    let n = a.len();
    let mut d = vec![S::zero(); n];
    let mut e = vec![S::zero(); n];
    if n == 1 {
        d[0] = a[0][0];
        a[0][0] = S::one();
        return (d, e);
    }
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = S::zero();
        let mut scale = S::zero();
        if l > 0 {
            for k in 0..=l {
                scale = scale + a[i][k].abs();
            }
            if scale.to_f64() == 0.0 {
                e[i] = a[i][l];
            } else {
                for k in 0..=l {
                    a[i][k] = a[i][k] / scale;
                    h = h + a[i][k] * a[i][k];
                }
                let f = a[i][l];
                let g = if f >= S::zero() { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h = h - f * g;
                a[i][l] = f - g;
                let mut f_acc = S::zero();
                for j in 0..=l {
                    a[j][i] = a[i][j] / h;
                    let mut g_acc = S::zero();
                    for k in 0..=j {
                        g_acc = g_acc + a[j][k] * a[i][k];
                    }
                    for k in (j + 1)..=l {
                        g_acc = g_acc + a[k][j] * a[i][k];
                    }
                    e[j] = g_acc / h;
                    f_acc = f_acc + e[j] * a[i][j];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let f = a[i][j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j][k] = a[j][k] - (f * e[k] + g * a[i][k]);
                    }
                }
            }
        } else {
            e[i] = a[i][l];
        }
        d[i] = h;
    }
    d[0] = S::zero();
    e[0] = S::zero();
    for i in 0..n {
        let l = i;
        if d[i].to_f64() != 0.0 {
            for j in 0..l {
                let mut g = S::zero();
                for k in 0..l {
                    g = g + a[i][k] * a[k][j];
                }
                for k in 0..l {
                    a[k][j] = a[k][j] - g * a[k][i];
                }
            }
        }
        d[i] = a[i][i];
        a[i][i] = S::one();
        for j in 0..l {
            a[j][i] = S::zero();
            a[i][j] = S::zero();
        }
    }
    (d, e)
}

fn sort_eigen<S: Scalar>(d: Vec<S>, z: Option<Vec<Vec<S>>>) -> (Vec<f64>, Option<Vec<Vec<f64>>>) {
    let n = d.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| d[a].to_f64().total_cmp(&d[b].to_f64()));
    let values = idx.iter().map(|&i| d[i].to_f64()).collect();
    let vectors = z.map(|z| {
        idx.iter()
            .map(|&j| (0..n).map(|k| z[k][j].to_f64()).collect())
            .collect()
    });
    (values, vectors)
}

/// All eigenvalues (ascending) of a symmetric tridiagonal matrix, with
/// orthonormal eigenvectors when requested.
pub fn symtri_eig(t: &SymTridiag, want_vectors: bool) -> EigenDecomposition {
    let n = t.dim();
    let mut d: Vec<f64> = t.diag.clone();
    let e: Vec<f64> = t.offdiag.clone();
    let mut z = want_vectors.then(|| {
        let mut ident = vec![vec![0.0f64; n]; n];
        for (i, row) in ident.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        ident
    });
    tql2(&mut d, &e, z.as_mut()).expect("QL on finite symmetric tridiagonal always converges");
    let (values, vectors) = sort_eigen(d, z);
    EigenDecomposition { values, vectors }
}

/// Generic banded Cholesky, lower factor with the same half-bandwidth.
#[allow(clippy::needless_range_loop)]
fn cholesky_banded_generic<S: Scalar>(
    dim: usize,
    hb: usize,
    get: impl Fn(usize, usize) -> S,
) -> Result<Vec<Vec<S>>> {
    // Same storage convention as SymBanded: l[b][i] = L[i+b][i].
    let mut l: Vec<Vec<S>> = (0..=hb)
        .map(|b| vec![S::zero(); dim.saturating_sub(b)])
        .collect();
    let lget = |l: &Vec<Vec<S>>, i: usize, j: usize| -> S {
        if i < j || i - j > hb {
            S::zero()
        } else {
            l[i - j][j]
        }
    };
    for j in 0..dim {
        let mut s = get(j, j);
        for k in j.saturating_sub(hb)..j {
            let v = lget(&l, j, k);
            s = s - v * v;
        }
        if s.to_f64() <= 0.0 {
            return Err(Error::NotPositiveDefinite { pivot: j });
        }
        let piv = s.sqrt();
        l[0][j] = piv;
        for i in (j + 1)..=(j + hb).min(dim - 1) {
            let mut s = get(i, j);
            for k in i.saturating_sub(hb)..j {
                s = s - lget(&l, i, k) * lget(&l, j, k);
            }
            l[i - j][j] = s / piv;
        }
    }
    Ok(l)
}

/// Banded Cholesky factorization M = L·Lᵗ; fails with the offending pivot
/// index if M is not positive definite.
///
/// The factor reuses the lower-triangle band storage of [`SymBanded`]; only
/// reads with row ≥ column are meaningful for L (the mirrored reads give
/// Lᵗ).
pub fn cholesky_banded(m: &SymBanded) -> Result<SymBanded> {
    let l = cholesky_banded_generic::<f64>(m.dim(), m.half_bandwidth(), |i, j| m.get(i, j))?;
    Ok(SymBanded {
        dim: m.dim(),
        half_bandwidth: m.half_bandwidth(),
        bands: l,
    })
}

/// Solves the symmetric-definite pencil S u = λ M u (S symmetric, possibly
/// indefinite; M SPD) by Cholesky reduction: M = LLᵗ, C = L⁻¹SL⁻ᵗ,
/// Householder tridiagonalization and implicit-shift QL on C, then
/// back-substitution u = L⁻ᵗy. Vectors are M-orthonormal. The whole
/// reduction runs in double-double and results are rounded at the end.
#[allow(clippy::needless_range_loop)]
pub fn generalized_sym_eig(
    s: &SymBanded,
    m: &SymBanded,
    want_vectors: bool,
) -> Result<EigenDecomposition> {
    if s.dim() != m.dim() {
        return Err(Error::InvalidIndex(format!(
            "pencil dimension mismatch: {} vs {}",
            s.dim(),
            m.dim()
        )));
    }
    let n = s.dim();
    if n == 0 {
        return Ok(EigenDecomposition {
            values: vec![],
            vectors: want_vectors.then(Vec::new),
        });
    }
    let hb = m.half_bandwidth();
    let l = cholesky_banded_generic::<Dd>(n, hb, |i, j| Dd::from_f64(m.get(i, j)))?;
    let lget = |i: usize, j: usize| -> Dd {
        if i < j || i - j > hb {
            Dd::ZERO
        } else {
            l[i - j][j]
        }
    };

    // X = L^{-1} S, column by column (forward substitution).
    let mut x = vec![vec![Dd::ZERO; n]; n]; // x[i][col]
    for col in 0..n {
        for i in 0..n {
            let mut acc = Dd::from_f64(s.get(i, col));
            for k in i.saturating_sub(hb)..i {
                acc = acc - lget(i, k) * x[k][col];
            }
            x[i][col] = acc / lget(i, i);
        }
    }
    // C = L^{-1} X^T; symmetric in exact arithmetic, symmetrized here.
    let mut c = vec![vec![Dd::ZERO; n]; n];
    for col in 0..n {
        for i in 0..n {
            let mut acc = x[col][i]; // (X^T)[i][col]
            for k in i.saturating_sub(hb)..i {
                acc = acc - lget(i, k) * c[k][col];
            }
            c[i][col] = acc / lget(i, i);
        }
    }
    let half = Dd::from_f64(0.5);
    for i in 0..n {
        for j in 0..i {
            let v = (c[i][j] + c[j][i]) * half;
            c[i][j] = v;
            c[j][i] = v;
        }
    }

    let (mut d, e) = tred2(&mut c);
    let mut z = want_vectors.then_some(c);
    // tred2 couples row i to i-1 through e[i]; the QL kernel expects e[i]
    // between rows i and i+1.
    tql2(&mut d, &e[1..], z.as_mut())?;

    // Back-transform: u = L^{-T} y, column by column (backward substitution).
    if let Some(z) = z.as_mut() {
        for col in 0..n {
            for i in (0..n).rev() {
                let mut acc = z[i][col];
                for k in (i + 1)..=(i + hb).min(n - 1) {
                    acc = acc - lget(k, i) * z[k][col];
                }
                z[i][col] = acc / lget(i, i);
            }
        }
    }
    let (values, vectors) = sort_eigen(d, z);
    Ok(EigenDecomposition { values, vectors })
}
