//! Oracle-driven invariants for the special-function, quadrature, harmonic
//! and MBP layers: every closed-form production path is checked against an
//! independent computational route (series summation, finite differences,
//! adaptive or Gaussian quadrature).

mod common;

use common::{
    adaptive_simpson, diff1_4th, diff2_4th, jacobi_hyper_sum, jacobi_hyper_sum_with_cond, Rng,
};
use muntz_ball::harmonics::{harmonic_dim, harmonic_eval, HarmonicIndex};
use muntz_ball::mbp::{mbp_norm_sq, mbp_radial_eval, MbpSpec};
use muntz_ball::quadrature::{gauss_jacobi, radial_rule};
use muntz_ball::specfun::{
    bessel_j, bessel_j_zero, gamma_ln, jacobi_deriv, jacobi_eval, jacobi_eval_m1, JacobiParams,
};

#[test]
fn jacobi_recurrence_matches_hypergeometric_series() {
    let mut rng = Rng::new(0x1a2b3c);
    for _ in 0..200 {
        let a = rng.uniform(-0.9, 5.0);
        let b = rng.uniform(-0.9, 5.0);
        let n = (rng.next_f64() * 21.0) as usize;
        let x = rng.uniform(-1.0, 1.0);
        let p = JacobiParams::new(a, b).unwrap();
        let rec = jacobi_eval(n, &p, x).unwrap();
        let (series, cond) = jacobi_hyper_sum_with_cond(n, a, b, x);
        let endpoint = (gamma_ln(n as f64 + a + 1.0).unwrap()
            - gamma_ln(a + 1.0).unwrap()
            - gamma_ln(n as f64 + 1.0).unwrap())
        .exp();
        let scale = endpoint.abs().max(series.abs());
        // The second addend is the series oracle's own rounding floor: the
        // alternating terms cancel down from Σ|term|.
        let tol = 1e-10 * scale + 64.0 * f64::EPSILON * cond;
        assert!(
            (rec - series).abs() <= tol,
            "n={n}, a={a}, b={b}, x={x}: rec {rec} vs series {series}"
        );
    }
}

#[test]
fn jacobi_sturm_liouville_residual() {
    // -((b-a) - (a+b+2)x) P' - (1-x^2) P'' = n(n+a+b+1) P, with P'' taken
    // from the double application of the derivative identity.
    let mut rng = Rng::new(77);
    for _ in 0..30 {
        let a = rng.uniform(-0.9, 3.0);
        let b = rng.uniform(-0.9, 3.0);
        let n = 1 + (rng.next_f64() * 10.0) as usize;
        let p = JacobiParams::new(a, b).unwrap();
        let lambda = n as f64 * (n as f64 + a + b + 1.0);
        let pmax = (0..20)
            .map(|i| jacobi_eval(n, &p, -0.95 + 0.1 * i as f64).unwrap().abs())
            .fold(0.0f64, f64::max);
        for i in 0..20 {
            let x = -0.95 + 0.1 * i as f64;
            let pv = jacobi_eval(n, &p, x).unwrap();
            let d1 = jacobi_deriv(n, &p, x);
            let d2 = if n >= 2 {
                let shifted = JacobiParams::new(a + 2.0, b + 2.0).unwrap();
                0.25 * (n as f64 + a + b + 1.0)
                    * (n as f64 + a + b + 2.0)
                    * jacobi_eval(n - 2, &shifted, x).unwrap()
            } else {
                0.0
            };
            let resid = -((b - a) - (a + b + 2.0) * x) * d1 - (1.0 - x * x) * d2 - lambda * pv;
            assert!(
                resid.abs() <= 1e-9 * lambda * (pmax + 1.0),
                "residual {resid} at n={n}, a={a}, b={b}, x={x}"
            );
        }
    }
}

#[test]
fn jacobi_parameter_raising_identities() {
    // (2n+a+b+1) P_n^{(a,b)} = (n+a+b+1) P_n^{(a+1,b)} - (n+b) P_{n-1}^{(a+1,b)}
    // and the companion (1-x) lowering identity, pointwise to 1e-11.
    let mut rng = Rng::new(4242);
    for _ in 0..40 {
        let a = rng.uniform(-0.9, 4.0);
        let b = rng.uniform(-0.9, 4.0);
        let n = 1 + (rng.next_f64() * 15.0) as usize;
        let pab = JacobiParams::new(a, b).unwrap();
        let pa1b = JacobiParams::new(a + 1.0, b).unwrap();
        for i in 0..=10 {
            let x = -1.0 + 0.2 * i as f64;
            let nf = n as f64;
            // Scale residuals by the magnitudes of the terms entering the
            // cancellation, not by the (possibly tiny) result.
            let t1 = (2.0 * nf + a + b + 1.0) * jacobi_eval(n, &pab, x).unwrap();
            let t2 = (nf + a + b + 1.0) * jacobi_eval(n, &pa1b, x).unwrap();
            let t3 = (nf + b) * jacobi_eval(n - 1, &pa1b, x).unwrap();
            let scale = t1.abs() + t2.abs() + t3.abs() + 1.0;
            assert!(
                (t1 - (t2 - t3)).abs() <= 1e-11 * scale,
                "raising identity at x={x}, n={n}, a={a}, b={b}"
            );

            let u1 = (nf + 0.5 * (a + b) + 1.0) * (1.0 - x) * jacobi_eval(n, &pa1b, x).unwrap();
            let u2 = (nf + a + 1.0) * jacobi_eval(n, &pab, x).unwrap();
            let u3 = (nf + 1.0) * jacobi_eval(n + 1, &pab, x).unwrap();
            let scale2 = u1.abs() + u2.abs() + u3.abs() + 1.0;
            assert!(
                (u1 - (u2 - u3)).abs() <= 1e-11 * scale2,
                "lowering identity at x={x}, n={n}, a={a}, b={b}"
            );
        }
    }
}

#[test]
fn jacobi_m1_boundary_zero_for_all_degrees() {
    for n in 1..=40 {
        for &beta in &[-0.5, 0.0, 3.0, 7.25] {
            assert_eq!(jacobi_eval_m1(n, beta, 1.0), 0.0, "n={n}, beta={beta}");
        }
    }
}

#[test]
fn jacobi_deriv_matches_central_differences() {
    let p = JacobiParams::new(1.0, 1.0).unwrap();
    let f = |x: f64| jacobi_eval(2, &p, x).unwrap();
    let fd = (f(1e-5) - f(-1e-5)) / 2e-5;
    let exact = jacobi_deriv(2, &p, 0.0);
    assert!((fd - exact).abs() <= 1e-8, "fd {fd} vs exact {exact}");
    // Denser sweep across parameters and points, 4th-order differences.
    let mut rng = Rng::new(5150);
    for _ in 0..30 {
        let a = *rng.pick(&[-1.0, -0.3, 0.0, 1.5, 2.5]);
        let b = rng.uniform(-0.5, 3.0);
        let n = 1 + (rng.next_f64() * 8.0) as usize;
        let p = JacobiParams::new(a, b).unwrap();
        let x0 = rng.uniform(-0.6, 0.6);
        let f = |x: f64| {
            if a == -1.0 {
                jacobi_eval_m1(n, b, x)
            } else {
                jacobi_eval(n, &p, x).unwrap()
            }
        };
        let fd = diff1_4th(&f, x0, 1e-3);
        let exact = jacobi_deriv(n, &p, x0);
        assert!(
            (fd - exact).abs() <= 1e-8 * exact.abs().max(1.0),
            "a={a}, b={b}, n={n}: fd {fd} vs {exact}"
        );
    }
}

#[test]
fn bessel_first_zero_agrees_with_series_bisection() {
    // Independent route: plain bisection of the series on [2, 3].
    let (mut lo, mut hi) = (2.0f64, 3.0f64);
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if bessel_j(0.0, mid).unwrap() > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let bisected = 0.5 * (lo + hi);
    assert!((bisected - 2.404825557695773).abs() <= 1e-12);
    assert!((bessel_j_zero(0.0, 1).unwrap() - bisected).abs() <= 1e-12);
    assert!(bessel_j(0.0, bisected).unwrap().abs() <= 1e-12);
}

#[test]
fn gauss_jacobi_matches_adaptive_quadrature() {
    // beta = sqrt(15): integrate (1+x)^beta x^2 both ways.
    let b = 15.0f64.sqrt();
    let rule = gauss_jacobi(8, 0.0, b).unwrap();
    let gauss = rule.integrate(|x| x * x);
    let adaptive = adaptive_simpson(&|x: f64| (1.0 + x).powf(b) * x * x, -1.0, 1.0, 1e-13);
    assert!(
        (gauss - adaptive).abs() <= 1e-10 * gauss.abs(),
        "gauss {gauss} vs adaptive {adaptive}"
    );
}

#[test]
fn gauss_jacobi_reproduces_jacobi_orthogonality() {
    // Quadrature of P_k P_j against the weight: off-diagonals vanish to
    // 1e-11 of the geometric diagonal mean, diagonal matches the
    // Gamma-ratio closed form to 1e-10.
    let mut rng = Rng::new(99);
    for _ in 0..10 {
        let a = rng.uniform(-0.9, 3.0);
        let b = rng.uniform(-0.9, 3.0);
        let p = JacobiParams::new(a, b).unwrap();
        let rule = gauss_jacobi(40, a, b).unwrap();
        let norm = |k: usize| -> f64 {
            let kf = k as f64;
            ((gamma_ln(kf + a + 1.0).unwrap() + gamma_ln(kf + b + 1.0).unwrap()
                - gamma_ln(kf + 1.0).unwrap()
                - gamma_ln(kf + a + b + 2.0).unwrap())
            .exp())
                * (kf + a + b + 1.0)
                * 2.0f64.powf(a + b + 1.0)
                / (2.0 * kf + a + b + 1.0)
        };
        for k in 0..=15usize {
            for j in 0..=k {
                let q = rule
                    .integrate(|x| jacobi_eval(k, &p, x).unwrap() * jacobi_eval(j, &p, x).unwrap());
                if k == j {
                    let want = norm(k);
                    assert!(
                        (q - want).abs() <= 1e-10 * want,
                        "diag k={k}: {q} vs {want} (a={a}, b={b})"
                    );
                } else {
                    let scale = (norm(k) * norm(j)).sqrt();
                    assert!(
                        q.abs() <= 1e-11 * scale,
                        "offdiag ({k},{j}) = {q}, scale {scale}"
                    );
                }
            }
        }
    }
}

#[test]
fn radial_rule_degree_exactness() {
    // rho^{2K} against the (0, beta_n) weight vs the Beta-moment closed
    // form 2^{b+1} sum_m binom(2K, m) (-1)^m 2^{... } — computed instead by
    // a much finer rule, which is its own independent route at double the
    // node count, plus positivity of the weights.
    let spec = MbpSpec::new(-1.0, 0.5, 0.5, 2.0, 2).unwrap();
    let k_trunc = 10;
    let rule = radial_rule(&spec, 0, k_trunc, 0).unwrap();
    let fine = gauss_jacobi(64, rule.alpha(), rule.beta()).unwrap();
    let f = |x: f64| x.powi(2 * k_trunc as i32);
    assert!((rule.integrate(f) - fine.integrate(f)).abs() <= 1e-12 * fine.integrate(f).abs());
    for w in rule.weights() {
        assert!(*w > 0.0);
    }
}

#[test]
fn sphere_orthonormality_by_tensor_quadrature() {
    // Gauss-Legendre in cos(theta) x uniform in phi integrates the d=3
    // harmonics exactly; the Gram matrix must be the identity.
    let glq = gauss_jacobi(32, 0.0, 0.0).unwrap();
    let nphi = 32usize;
    let nmax = 6u32;
    let mut basis = Vec::new();
    for n in 0..=nmax {
        for ell in 1..=harmonic_dim(n, 3) {
            basis.push(HarmonicIndex::new(3, n, ell).unwrap());
        }
    }
    for (i, yi) in basis.iter().enumerate() {
        for yj in basis.iter().skip(i) {
            let mut acc = 0.0;
            for (&ct, &w) in glq.nodes().iter().zip(glq.weights()) {
                let st = (1.0 - ct * ct).sqrt();
                let mut phi_acc = 0.0;
                for p in 0..nphi {
                    let phi = 2.0 * std::f64::consts::PI * p as f64 / nphi as f64;
                    let dir = [st * phi.cos(), st * phi.sin(), ct];
                    phi_acc += harmonic_eval(yi, &dir).unwrap() * harmonic_eval(yj, &dir).unwrap();
                }
                acc += w * phi_acc * 2.0 * std::f64::consts::PI / nphi as f64;
            }
            let want = if yi == yj { 1.0 } else { 0.0 };
            assert!(
                (acc - want).abs() <= 1e-10,
                "Gram({:?}, {:?}) = {acc}",
                yi,
                yj
            );
        }
    }
}

#[test]
fn mbp_radial_value_against_series_composition() {
    // Independent route: the hypergeometric sum composed with the
    // boundary-factor form of the alpha = -1 family.
    let spec = MbpSpec::new(-1.0, 0.5, 0.5, 2.0, 2).unwrap();
    let (n, k, r) = (0u32, 2usize, 0.49f64);
    let beta = spec.beta_n(n).unwrap();
    let rho = 2.0 * r.powf(2.0 * spec.theta()) - 1.0;
    let poly = (k as f64 + beta) / k as f64
        * (0.5 * (rho - 1.0))
        * jacobi_hyper_sum(k - 1, 1.0, beta, rho);
    let want = poly * r.powf(spec.radial_exponent(n).unwrap());
    let got = mbp_radial_eval(&spec, n, k, r).unwrap();
    assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0));
}

#[test]
fn operator_applications_match_finite_differences() {
    // Both closed-form operator applications against 4th-order central
    // differences of the radial evaluation itself.
    use muntz_ball::mbp::{apply_degenerate_operator, apply_radial_sl_operator};
    let specs = [
        MbpSpec::new(-1.0, 0.5, 0.5, 2.0, 2).unwrap(),
        MbpSpec::new(0.5, 0.25, 0.8, 1.5, 3).unwrap(),
        MbpSpec::new(1.0, -0.2, 1.2, 3.0, 1).unwrap(),
    ];
    let h = 1e-4;
    for spec in specs {
        let (mu, th, c, d) = (spec.mu(), spec.theta(), spec.c(), spec.d() as f64);
        for n in [0u32, 2] {
            for k in [1usize, 3, 5] {
                for &r in &[0.35, 0.62, 0.81] {
                    let u = |x: f64| mbp_radial_eval(&spec, n, k, x).unwrap();
                    let d1 = diff1_4th(&u, r, h);
                    let d2 = diff2_4th(&u, r, h);
                    let nf = n as f64;
                    let ang = nf * (nf + d - 2.0);

                    let fd_sl = -(1.0 - r.powf(2.0 * th)) * (d2 + (d + 2.0 * mu - 1.0) / r * d1)
                        + 2.0 * th * (spec.alpha() + 1.0) * r.powf(2.0 * th - 1.0) * d1
                        + (c + ang) / (r * r) * u(r);
                    let exact = apply_radial_sl_operator(&spec, n, k, r).unwrap();
                    assert!(
                        (fd_sl - exact).abs() <= 1e-7 * exact.abs().max(1.0),
                        "SL operator: fd {fd_sl} vs {exact} (k={k}, r={r})"
                    );

                    let fd_deg = -r.powf(2.0 * mu)
                        * (d2 + (2.0 * mu + d - 1.0) / r * d1 - (ang + c) / (r * r) * u(r));
                    let exact = apply_degenerate_operator(&spec, n, k, r).unwrap();
                    assert!(
                        (fd_deg - exact).abs() <= 1e-7 * exact.abs().max(1.0),
                        "degenerate operator: fd {fd_deg} vs {exact} (k={k}, r={r})"
                    );
                }
            }
        }
    }
}

#[test]
fn oracle_eigenfunction_reference_ratio() {
    // The analytic radial eigenfunction reproduces the reference sample
    // ratio for d=2, mu=1/2, c=1, n=0 at the smallest eigenvalue.
    use muntz_ball::oracle::{analytic_eigenvalue, analytic_radial_eigenfunction};
    let lam = analytic_eigenvalue(2, 0.5, 1.0, 0, 1).unwrap();
    let u = |r: f64| analytic_radial_eigenfunction(2, 0.5, 1.0, 0, lam, r).unwrap();
    let got = u(0.5) / u(0.1);
    let want = 0.024094590264357 / 0.027609083125293;
    assert!(((got - want) / want).abs() <= 1e-8, "{got} vs {want}");
}

#[test]
fn solver_eigenfunction_matches_oracle_up_to_scale() {
    // 20 interior points, least-squares scale fit, 1e-8 relative.
    use muntz_ball::assembly::{BasisTheta, ProblemConfig};
    use muntz_ball::oracle::{analytic_eigenvalue, analytic_radial_eigenfunction};
    use muntz_ball::solver::{
        eigenfunction_radial_eval, normalize, solve_spectrum, SpectrumRequest,
    };
    let (d, mu, c, n) = (2u32, 0.5f64, 2.0f64, 1u32);
    let req = SpectrumRequest {
        config: ProblemConfig::Degenerate {
            d,
            mu,
            c,
            basis: BasisTheta::Full,
        },
        max_degree: n,
        k_trunc: 40,
        count: 60,
    };
    let result = solve_spectrum(&req)
        .unwrap()
        .into_iter()
        .find(|r| r.n == n && r.radial_rank == 1)
        .unwrap();
    let result = normalize(&result).unwrap();
    let lam = analytic_eigenvalue(d, mu, c, n, 1).unwrap();
    let points: Vec<f64> = (1..=20).map(|i| i as f64 / 21.0).collect();
    let ours = eigenfunction_radial_eval(&result, &points).unwrap();
    let exact: Vec<f64> = points
        .iter()
        .map(|&r| analytic_radial_eigenfunction(d, mu, c, n, lam, r).unwrap())
        .collect();
    let scale = exact.iter().zip(&ours).map(|(e, u)| e * u).sum::<f64>()
        / ours.iter().map(|u| u * u).sum::<f64>();
    let emax = exact.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for (e, u) in exact.iter().zip(&ours) {
        assert!(
            (scale * u - e).abs() <= 1e-8 * emax,
            "scaled sample {} vs analytic {e}",
            scale * u
        );
    }
}

#[test]
fn eigenvalue_error_halves_decades_per_doubling() {
    // For the reference disk configuration the log10 error of the ground
    // eigenvalue drops by at least half a decade per doubling of K until
    // it reaches 1e-11 (it does so almost immediately for the full-theta
    // basis, so the half-theta basis carries the informative part).
    use muntz_ball::assembly::{assemble, BasisTheta, ProblemConfig};
    use muntz_ball::oracle::analytic_eigenvalue;
    use muntz_ball::solver::solve_radial;
    let exact = analytic_eigenvalue(2, 0.5, 2.0, 0, 1).unwrap();
    for basis in [BasisTheta::Full, BasisTheta::Half] {
        let cfg = ProblemConfig::Degenerate {
            d: 2,
            mu: 0.5,
            c: 2.0,
            basis,
        };
        let err_at = |k_trunc: usize| -> f64 {
            let block = assemble(&cfg, 0, k_trunc).unwrap();
            (solve_radial(&block).unwrap()[0].lambda - exact).abs()
        };
        let mut prev = err_at(2);
        for k_trunc in [4usize, 8, 16, 32] {
            if prev < 1e-11 {
                break;
            }
            let err = err_at(k_trunc);
            assert!(
                err <= prev * 10.0f64.powf(-0.5),
                "{basis:?}: error {err} at K={k_trunc} fell less than half a decade from {prev}"
            );
            prev = err;
        }
        assert!(prev < 1e-11 || err_at(64) < 1e-11);
    }
}

#[test]
fn mbp_norms_match_quadrature() {
    // Weighted radial Gram diagonal vs the Gamma-ratio closed form for
    // k <= 10 across several specs.
    let specs = [
        MbpSpec::new(0.0, 0.5, 0.5, 2.0, 2).unwrap(),
        MbpSpec::new(1.0, 0.0, 1.0, 1.0, 3).unwrap(),
        MbpSpec::new(2.5, 0.8, 0.4, 0.5, 4).unwrap(),
    ];
    for spec in specs {
        for n in [0u32, 2] {
            let beta = spec.beta_n(n).unwrap();
            let rule = gauss_jacobi(24, spec.alpha(), beta).unwrap();
            let params = JacobiParams::new(spec.alpha(), beta).unwrap();
            for k in 0..=10usize {
                let q = rule.integrate(|rho| {
                    let p = jacobi_eval(k, &params, rho).unwrap();
                    p * p
                }) / (4.0 * spec.theta())
                    / 2.0f64.powf(spec.alpha() + beta);
                let want = mbp_norm_sq(&spec, n, k).unwrap();
                assert!(
                    (q - want).abs() <= 1e-10 * want,
                    "norm mismatch k={k}: {q} vs {want}"
                );
            }
        }
    }
}
