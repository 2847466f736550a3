//! Shared test oracles: independent computational routes used to verify
//! the production implementations. Nothing here calls the code path it
//! checks.
#![allow(dead_code)] // shared by several test targets with different needs
#![allow(clippy::excessive_precision)]

/// Direct summation of the hypergeometric series
///   P_n^{(α,β)}(x) = Σ_k (n+α+β+1)_k (α+k+1)_{n−k} / (k!(n−k)!) ((x−1)/2)^k.
/// Loses accuracy for large n; kept as an oracle only.
pub fn jacobi_hyper_sum(n: usize, a: f64, b: f64, x: f64) -> f64 {
    jacobi_hyper_sum_with_cond(n, a, b, x).0
}

/// The series value together with Σ|term|, the summation's condition
/// scale: no f64 route can resolve the value below ~eps times that.
pub fn jacobi_hyper_sum_with_cond(n: usize, a: f64, b: f64, x: f64) -> (f64, f64) {
    let nf = n as f64;
    let mut acc = 0.0;
    let mut cond = 0.0;
    for k in 0..=n {
        let kf = k as f64;
        let mut term = 1.0;
        // (n+a+b+1)_k
        for i in 0..k {
            term *= nf + a + b + 1.0 + i as f64;
        }
        // (a+k+1)_{n-k}
        for i in 0..(n - k) {
            term *= a + kf + 1.0 + i as f64;
        }
        // / (k! (n-k)!)
        for i in 1..=k {
            term /= i as f64;
        }
        for i in 1..=(n - k) {
            term /= i as f64;
        }
        term *= (0.5 * (x - 1.0)).powi(k as i32);
        acc += term;
        cond += term.abs();
    }
    (acc, cond)
}

/// Adaptive Simpson quadrature on [a, b] to the requested absolute
/// tolerance.
#[allow(clippy::too_many_arguments)]
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &impl Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }
    fn recur(
        f: &impl Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recur(f, a, fa, m, fm, left, lm, flm, 0.5 * tol, depth - 1)
                + recur(f, m, fm, b, fb, right, rm, frm, 0.5 * tol, depth - 1)
        }
    }
    let (fa, fb) = (f(a), f(b));
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    recur(f, a, fa, b, fb, whole, m, fm, tol, 40)
}

/// Deterministic xorshift64* generator for seeded parameter draws.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed.max(1))
    }

    pub fn next_f64(&mut self) -> f64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        (x >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform draw in [lo, hi).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        let i = (self.next_f64() * items.len() as f64) as usize;
        &items[i.min(items.len() - 1)]
    }
}

/// 4th-order central difference for the first derivative.
pub fn diff1_4th(f: &impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

/// 4th-order central difference for the second derivative.
pub fn diff2_4th(f: &impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h))
        / (12.0 * h * h)
}
