use std::f64::consts::{PI, TAU};

use laplace_contour::asymptotics::{evaluate_asymptotic, series_coefficients, Attachment};
use laplace_contour::complex_core::{branch_power, phase_continue, BranchConfig, Path, Segment, SideHint};
use laplace_contour::gamma::{gamma, gamma_recursion_check, mirror_residual, rgamma};
use laplace_contour::hydrogen::{bound_laplace_data, laguerre, laguerre_rodrigues, PhysicalParams, QuantumState};
use laplace_contour::laplace::{
    build_laplace_data, evaluate_contour_integral, evaluate_many, loop_around, outward_branch_config, LinearODE,
};
use laplace_contour::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn point() -> impl Strategy<Value = Complex64> {
    (-5.0..5.0f64, -5.0..5.0f64).prop_map(|(a, b)| c(a, b))
}

fn away_from_poles() -> impl Strategy<Value = Complex64> {
    (0.0..10.0f64, -PI..PI)
        .prop_map(|(m, t)| Complex64::from_polar(m, t))
        .prop_filter("near a pole of Γ", |p| {
            let k = p.re.round();
            !(k <= 0.0 && (p - k).norm() < 1e-3)
        })
}

proptest! {
    #[test]
    fn integer_powers_ignore_the_branch_config(z in point(), base in point(), k in -6i32..7, dir in -PI..PI) {
        prop_assume!((z - base).norm() > 1e-3);
        let a = branch_power(z, base, c(k as f64, 0.0), &BranchConfig::principal(), SideHint::None).unwrap();
        let cfg = BranchConfig::single_ray(base, Complex64::from_polar(1.0, dir));
        let b = branch_power(z, base, c(k as f64, 0.0), &cfg, SideHint::None).unwrap();
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
    }

    #[test]
    fn phase_change_is_additive(a in point(), b in point(), d in point(), base in point()) {
        prop_assume!((a - b).norm() > 1e-2 && (b - d).norm() > 1e-2);
        let first = Path::new(vec![Segment::line(a, b)]).unwrap();
        let second = Path::new(vec![Segment::line(b, d)]).unwrap();
        let joined = first.concat(&second).unwrap();
        let t1 = phase_continue(&first, base, 0.0);
        let t2 = phase_continue(&second, base, 0.0);
        let tj = phase_continue(&joined, base, 0.0);
        // paths through the base point are rejected
        if let (Ok(t1), Ok(t2), Ok(tj)) = (t1, t2, tj) {
            let sum = t1.total_change().unwrap() + t2.total_change().unwrap();
            prop_assert!((tj.total_change().unwrap() - sum).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_loops_change_phase_by_whole_turns(center in point(), radius in 0.1..3.0f64, base in point(), start in -PI..PI) {
        let dist = (base - center).norm();
        prop_assume!((dist - radius).abs() > 1e-3);
        let track = phase_continue(&Path::circle(center, radius).unwrap(), base, start).unwrap();
        let want = if dist < radius { TAU } else { 0.0 };
        prop_assert!((track.total_change().unwrap() - want).abs() < 1e-12);
        prop_assert!((track.start().unwrap() - start).abs() < 1e-12);
    }

    #[test]
    fn gamma_identities(p in away_from_poles(), k in 1u32..6) {
        prop_assert!(mirror_residual(p).unwrap() < 1e-10);
        prop_assert!(gamma_recursion_check(p, k).unwrap() < 1e-10);
        let g = gamma(p).unwrap();
        prop_assert!((g * rgamma(p) - 1.0).norm() < 1e-12);
    }

    #[test]
    fn partial_fractions_reproduce_p_over_q(
        a in prop::collection::vec(-3.0..3.0f64, 3),
        b in prop::collection::vec(-3.0..3.0f64, 2),
        zs in prop::collection::vec(point(), 20),
    ) {
        // Q = z² + b₁z + b₀, deg P ≤ 1
        let ode = LinearODE::new(vec![(a[0], b[0]), (a[1], b[1]), (0.0, 1.0)]).unwrap();
        let Ok(d) = build_laplace_data(&ode) else { return Ok(()) };
        for z in zs {
            let q = d.q.eval(z);
            prop_assume!(q.norm() > 1e-3);
            let direct = d.p.eval(z) / q;
            prop_assert!((d.partial_fractions(z) - direct).norm() <= 1e-9 * direct.norm().max(1.0));
        }
    }

    #[test]
    fn laguerre_recurrence(m in 1u32..10, alpha in 0u32..10, y in 0.0..20.0f64) {
        let (mf, af) = (m as f64, alpha as f64);
        let lhs = (mf + 1.0) * laguerre(m + 1, alpha, y);
        let rhs = (2.0 * mf + 1.0 + af - y) * laguerre(m, alpha, y) - (mf + af) * laguerre(m - 1, alpha, y);
        let scale = lhs.abs().max(rhs.abs()).max((2.0 * mf + 1.0 + af + y) * laguerre(m, alpha, y).abs()).max(1.0);
        prop_assert!((lhs - rhs).abs() < 1e-10 * scale);
    }

    #[test]
    fn laguerre_forms_agree(m in 0u32..=10, alpha in 0u32..=9, y in 0.1..20.0f64) {
        let s = laguerre(m, alpha, y);
        let r = laguerre_rodrigues(m, alpha, y).unwrap();
        // measured against the largest term of the sum
        let scale = (0..=m).map(|k| laguerre_term(m, alpha, k, y)).fold(s.abs(), f64::max);
        prop_assert!((s - r).abs() < 1e-10 * scale);
    }

    #[test]
    fn zeroth_order_terms_match_the_closed_forms(
        c1 in 0.2..3.0f64,
        l in 0u32..4,
        nu in 0.1..5.0f64,
        r in 1.0..20.0f64,
    ) {
        prop_assume!((nu - nu.round()).abs() > 1e-3);
        let (l, c2) = (l as f64, -c1);
        // rU'' + 2(l+1)U' + (−c₁²r + 2c₁ν)U = 0
        let ode = LinearODE::new(vec![(2.0 * c1 * nu, -c1 * c1), (2.0 * (l + 1.0), 0.0), (0.0, 1.0)]).unwrap();
        let d = build_laplace_data(&ode).unwrap();
        let (a1, a2) = (d.exponents[0], d.exponents[1]);
        let cfg = outward_branch_config(&d).unwrap();
        let i = Complex64::i();

        let hankel = series_coefficients(&d, 1, 0, &cfg, Attachment::Hankel { start_phase: -PI }).unwrap();
        let got = evaluate_asymptotic(&hankel, r, 0).unwrap();
        // e^{c₂r} r^{−α₂} · 2i sin(α₂π) Γ(α₂) · (c₂ − c₁)^{α₁−1}, the last on the
        // cut of c₁ where its phase is π
        let f0 = ((a1 - 1.0) * Complex64::new((c1 - c2).ln(), PI)).exp();
        let want = (c2 * r - a2 * r.ln()).exp() * 2.0 * i * (a2 * PI).sin() * gamma(a2).unwrap() * f0;
        prop_assert!((got - want).norm() <= 1e-12 * want.norm(), "{got} vs {want}");

        let ray = series_coefficients(&d, 0, 0, &cfg, Attachment::Ray { phase: PI, direction: c(-1.0, 0.0) }).unwrap();
        let got = evaluate_asymptotic(&ray, r, 0).unwrap();
        // e^{c₁r} r^{−α₁} e^{iπα₁} Γ(α₁) (c₁ − c₂)^{α₂−1}
        let f0 = (a2 - 1.0) * (c1 - c2).ln();
        let want = (c1 * r - a1 * r.ln() + i * PI * a1 + f0).exp() * gamma(a1).unwrap();
        prop_assert!((got - want).norm() <= 1e-12 * want.norm(), "{got} vs {want}");
    }

    #[test]
    fn series_coefficients_follow_the_product_formula(alpha in 0.1..6.0f64, k in 0usize..12) {
        // α₁ = alpha at c₁ = 1, c₂ = −1, attached at c₂
        let ode = LinearODE::new(vec![(alpha - 1.0, -1.0), (1.0, 0.0), (0.0, 1.0)]).unwrap();
        let mut d = build_laplace_data(&ode).unwrap();
        d.exponents[0] = c(alpha, 0.0);
        let cfg = outward_branch_config(&d).unwrap();
        let s = series_coefficients(&d, 1, k, &cfg, Attachment::Hankel { start_phase: -PI }).unwrap();
        let gap = d.roots[1] - d.roots[0];
        let base = (c(alpha - 1.0 - k as f64, 0.0) * Complex64::new(gap.norm().ln(), PI)).exp();
        let falling: f64 = (1..=k).map(|j| alpha - j as f64).product();
        let fact: f64 = (1..=k).map(|j| j as f64).product();
        let want = base * falling;
        let got = s.coefficients[k] * fact;
        prop_assert!((got - want).norm() <= 1e-10 * got.norm().max(1e-300));
    }

    #[test]
    fn loop_value_ignores_radius_and_config(n in 1u32..6, dl in 0u32..5, frac in 0.1..0.9f64, r in 0.1..6.0f64) {
        prop_assume!(dl < n);
        let state = QuantumState::new(n, n - 1 - dl).unwrap();
        let p = PhysicalParams::atomic();
        let d = bound_laplace_data(&p, state).unwrap();
        let sep = (d.roots[0] - d.roots[1]).norm();
        let a = loop_around(d.roots[1], frac * sep, outward_branch_config(&d).unwrap(), "a").unwrap();
        let b = loop_around(d.roots[1], 0.5 * sep, BranchConfig::principal(), "b").unwrap();
        let ua = evaluate_contour_integral(&a, &d, r, 1e-12).unwrap();
        let ub = evaluate_contour_integral(&b, &d, r, 1e-12).unwrap();
        prop_assert!((ua - ub).norm() <= 1e-9 * ub.norm().max(1e-300));
    }

    #[test]
    fn many_radii_match_single_evaluations(rs in prop::collection::vec(0.1..5.0f64, 1..5)) {
        let p = PhysicalParams::atomic();
        let d = bound_laplace_data(&p, QuantumState::new(3, 0).unwrap()).unwrap();
        let lp = loop_around(d.roots[1], 0.3, outward_branch_config(&d).unwrap(), "γ_f").unwrap();
        let many = evaluate_many(&lp, &d, &rs, 1e-12).unwrap();
        for (r, v) in rs.iter().zip(&many) {
            let one = evaluate_contour_integral(&lp, &d, *r, 1e-12).unwrap();
            prop_assert!((one - v).norm() <= 1e-10 * one.norm());
        }
    }
}

fn laguerre_term(m: u32, alpha: u32, k: u32, y: f64) -> f64 {
    let fact: f64 = (1..=k).map(|j| j as f64).product();
    laguerre_binomial(m + alpha, m - k) * y.powi(k as i32) / fact
}

fn laguerre_binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[test]
fn integrals_are_linear_in_the_contour() {
    // a loop traversed as two half circles equals the full circle
    let p = PhysicalParams::atomic();
    let d = bound_laplace_data(&p, QuantumState::new(2, 0).unwrap()).unwrap();
    let cfg = outward_branch_config(&d).unwrap();
    let c2 = d.roots[1];
    let upper = Path::new(vec![Segment::arc(c2, 0.4, 0.0, PI)]).unwrap();
    let lower = Path::new(vec![Segment::arc(c2, 0.4, PI, TAU)]).unwrap();
    let whole = upper.concat(&lower).unwrap();
    let factors = d.factors();
    let opts = laplace_contour::contour::IntegrateOptions::with_tol(1e-12);
    let f = |path: &Path| {
        laplace_contour::contour::integrate_along(path, &cfg, &factors, &[1.3], &opts)
            .unwrap()
            .values[0]
    };
    let sum = f(&upper) + f(&lower);
    assert!((sum - f(&whole)).norm() < 1e-11 * sum.norm());
}
