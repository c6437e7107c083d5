//! One line per acceptance criterion; exits nonzero if any criterion fails.

#![allow(clippy::excessive_precision)]

use std::process::Command;
use std::time::Instant;

use laplace_contour::asymptotics::{evaluate_asymptotic, optimal_truncation, series_for_contour, MAX_TERMS};
use laplace_contour::gamma::{
    gamma_recursion_check, hankel_branch_config, hankel_contour, hankel_gamma_reciprocal_tol, mirror_residual,
};
use laplace_contour::hydrogen::{
    binomial, bound_energy, bound_laplace_data, chi_bound, chi_bound_scaled, connecting_constant,
    continuum_r0_beta_form, continuum_r0_closed_form, continuum_u5, energy_for_nu, laguerre, laguerre_rodrigues,
    node_count, overlap, radial_laplace_data, radial_residual, real_phase, stencil, u_quadrature, ContinuumParams,
    PhysicalParams, QuantumState, FD_STEP,
};
use laplace_contour::laplace::{
    bound_catalog, classify_contour, evaluate_contour_integral, CatalogGeometry, LaplaceData,
};
use laplace_contour::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const QUAD_TOL: f64 = 1e-12;

type Check = fn() -> Outcome;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn atomic() -> PhysicalParams {
    PhysicalParams::atomic()
}

fn st(n: u32, l: u32) -> QuantumState {
    QuantumState::new(n, l).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn energies() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_laplace-contour"))
        .args(["energies", "10"])
        .env_remove("LAPLACE_CONTOUR_TOL")
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed().as_secs_f64();
    let text = String::from_utf8_lossy(&out.stdout);
    let mut worst = 0.0f64;
    let mut rows = 0;
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let n: f64 = f[0].parse().unwrap();
        let e: f64 = f[1].parse().unwrap();
        worst = worst.max((e + 0.5 / (n * n)).abs());
        rows += 1;
    }
    let pass = out.status.success() && rows == 10 && worst <= 1e-12 && elapsed < 1.0;
    outcome(
        pass,
        format!("energies 10: max |E_n + 1/(2n²)| = {worst:.1e}, {elapsed:.3} s"),
    )
}

fn bound_equivalence() -> Outcome {
    let start = Instant::now();
    let p = atomic();
    let radii = [0.5, 1.0, 2.0, 4.0, 8.0];
    let (mut spread_worst, mut k_worst, mut node_worst) = (0.0f64, 0.0f64, 0.0f64);
    let mut failures = Vec::new();
    for n in 1..=5 {
        for l in 0..n {
            let s = st(n, l);
            let k = connecting_constant(s, &p);
            let mut ratios = Vec::new();
            let mut pairs = Vec::new();
            for &r in &radii {
                let quad = u_quadrature(s, &p, r, QUAD_TOL).unwrap() * r.powi(l as i32);
                let closed = chi_bound_scaled(s, &p, r).unwrap();
                pairs.push((r, quad, closed));
            }
            let peak = pairs.iter().map(|t| t.2.abs()).fold(0.0, f64::max);
            for &(_, quad, closed) in &pairs {
                // a radius on a node of χ says nothing about the ratio
                if closed.abs() > 1e-6 * peak {
                    ratios.push(quad / closed);
                } else {
                    node_worst = node_worst.max((quad - k * closed).norm() / (k.norm() * peak));
                }
            }
            let mean: Complex64 = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
            let spread = ratios.iter().map(|q| (q - mean).norm()).fold(0.0, f64::max) / mean.norm();
            let k_err = (mean - k).norm() / k.norm();
            spread_worst = spread_worst.max(spread);
            k_worst = k_worst.max(k_err);
            if spread >= 1e-8 || k_err >= 1e-8 {
                failures.push(format!("(n={n}, l={l})"));
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = failures.is_empty() && node_worst < 1e-8 && elapsed < 30.0;
    outcome(
        pass,
        format!(
            "γ_f / closed form over n ≤ 5: spread {spread_worst:.1e}, |ratio − K|/|K| {k_worst:.1e}, \
             at nodes {node_worst:.1e}, {elapsed:.2} s{}",
            if failures.is_empty() {
                String::new()
            } else {
                format!(", failing {}", failures.join(" "))
            }
        ),
    )
}

// 1/Γ(p) from mpmath at 30 digits
const RGAMMA: [(f64, f64, f64, f64); 5] = [
    (1.0, 0.0, 1.0, 0.0),
    (0.5, 0.0, 0.564_189_583_547_756_29, 0.0),
    (-0.5, 0.0, -0.282_094_791_773_878_14, 0.0),
    (2.3, 0.0, 0.857_109_621_959_463_05, 0.0),
    (1.0, 0.7, 1.362_427_388_372_235_4, 0.410_762_908_283_135_23),
];

fn hankel() -> Outcome {
    let cfg = hankel_branch_config();
    let (mut err_worst, mut def_worst) = (0.0f64, 0.0f64);
    for (pr, pi, vr, vi) in RGAMMA {
        let p = c(pr, pi);
        let eval = |radius: f64| {
            let path = hankel_contour(radius, 1e-3 * radius).unwrap();
            hankel_gamma_reciprocal_tol(p, &path, &cfg, QUAD_TOL).unwrap()
        };
        let (a, b) = (eval(1.0), eval(2.0));
        let want = c(vr, vi);
        err_worst = err_worst.max((a - want).norm() / want.norm());
        def_worst = def_worst.max((b - a).norm() / a.norm());
    }
    outcome(
        err_worst < 1e-8 && def_worst < 1e-8,
        format!("Hankel 1/Γ: max rel error {err_worst:.1e}, radius 1 → 2 change {def_worst:.1e}"),
    )
}

fn gamma_identities() -> Outcome {
    let mut rng = StdRng::seed_from_u64(20240611);
    let (mut mirror, mut recursion) = (0.0f64, 0.0f64);
    let mut count = 0;
    while count < 100 {
        let p = c(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let near_pole = |q: Complex64| q.im.abs() < 1e-3 && q.re < 0.5 && (q.re - q.re.round()).abs() < 1e-3;
        if p.norm() > 10.0 || near_pole(p) || near_pole(1.0 - p) {
            continue;
        }
        mirror = mirror.max(mirror_residual(p).unwrap());
        recursion = recursion.max(gamma_recursion_check(p, 1).unwrap());
        count += 1;
    }
    outcome(
        mirror < 1e-10 && recursion < 1e-10,
        format!("100 random |p| ≤ 10: mirror {mirror:.1e}, recursion {recursion:.1e}"),
    )
}

fn gamma2_series() -> Outcome {
    let p = atomic();
    let (l, nu) = (0, 1.5);
    let data = radial_laplace_data(&p, l, energy_for_nu(&p, nu).unwrap()).unwrap();
    let sep = (data.roots[0] - data.roots[1]).norm();
    let gamma2 = |r: f64| {
        let cat = bound_catalog(&data, &CatalogGeometry::default().for_radius(r, sep)).unwrap();
        let c2 = cat.into_iter().find(|c| c.label == "γ₂").unwrap();
        let q = evaluate_contour_integral(&c2, &data, r, QUAD_TOL).unwrap();
        let s = series_for_contour(&c2, &data, MAX_TERMS).unwrap();
        (q, s)
    };
    let (q50, s50) = gamma2(50.0);
    let n50 = optimal_truncation(&s50, 50.0);
    let opt_err = (evaluate_asymptotic(&s50, 50.0, n50).unwrap() - q50).norm() / q50.norm();

    // optimal truncation sits at roundoff for these r, so the decrease is
    // shown at a fixed order
    let fixed = 2;
    let errs: Vec<f64> = [20.0, 40.0, 80.0]
        .iter()
        .map(|&r| {
            let (q, s) = gamma2(r);
            (evaluate_asymptotic(&s, r, fixed).unwrap() - q).norm() / q.norm()
        })
        .collect();
    let decreasing = errs.windows(2).all(|w| w[1] < w[0]);

    let r = 20.0;
    let terms = s50.terms(r);
    let n_opt = optimal_truncation(&s50, r);
    let diverges = terms[n_opt + 1..].windows(2).all(|w| w[1].norm() > w[0].norm())
        && terms[MAX_TERMS].norm() > terms[n_opt].norm()
        && s50.term_ratio(MAX_TERMS - 1, r) > 1.0;
    outcome(
        opt_err < 1e-4 && decreasing && diverges,
        format!(
            "γ₂ series, ν = 1.5: optimal (N = {n50}) error at r = 50 {opt_err:.1e}; N = {fixed} errors at r = 20, 40, 80: \
             {:.2e}, {:.2e}, {:.2e}; at r = 20 terms grow past k = {n_opt}, |t_60/t_{n_opt}| = {:.1e}",
            errs[0],
            errs[1],
            errs[2],
            terms[MAX_TERMS].norm() / terms[n_opt].norm()
        ),
    )
}

fn verdicts(data: &LaplaceData) -> Vec<(String, laplace_contour::laplace::Classification)> {
    bound_catalog(data, &CatalogGeometry::default())
        .unwrap()
        .iter()
        .map(|c| (c.label.clone(), classify_contour(c, data).unwrap()))
        .collect()
}

fn rejection_suite() -> Outcome {
    let p = atomic();
    let mut bad = Vec::new();
    for nu in [0.5, 1.5, 2.5] {
        for l in 0..=2 {
            let data = radial_laplace_data(&p, l, energy_for_nu(&p, nu).unwrap()).unwrap();
            let c1 = data.roots[0];
            for (label, v) in verdicts(&data) {
                let ok = match label.as_str() {
                    "γ₁" => !v.finite_at_infinity && (v.leading_infinity_rate - c1).norm() < 1e-12,
                    "γ₂" => v.finite_at_infinity && !v.finite_at_zero,
                    _ => !v.finite_at_infinity,
                } && !v.passes();
                if !ok {
                    bad.push(format!("ν={nu} l={l} {label}"));
                }
            }
        }
    }
    for n in 1..=4 {
        for l in 0..=4 {
            let data = bound_laplace_data(&p, st(n, l)).unwrap();
            let passing: Vec<String> = verdicts(&data)
                .into_iter()
                .filter(|v| v.1.passes())
                .map(|v| v.0)
                .collect();
            let want: Vec<String> = if n > l { vec!["γ_f".into()] } else { vec![] };
            if passing != want {
                bad.push(format!("n={n} l={l} passes {passing:?}"));
            }
        }
    }
    let detail = if bad.is_empty() {
        "ν ∈ {0.5, 1.5, 2.5}, l ≤ 2: γ₁ (∞, rate c₁), γ₂ (0), γ₃/γ₄ (∞) rejected; n ≤ 4: only γ_f passes for n > l, \
         none for n ≤ l"
            .to_string()
    } else {
        format!("unexpected verdicts: {}", bad.join(", "))
    };
    outcome(bad.is_empty(), detail)
}

/// Largest term of the alternating sum for `L_m^{(α)}(y)`, the scale its
/// roundoff is measured against.
fn sum_scale(m: u32, alpha: u32, y: f64) -> f64 {
    (0..=m)
        .map(|k| binomial((m + alpha) as u64, (m - k) as u64) * y.powi(k as i32) / factorial(k))
        .fold(0.0, f64::max)
}

fn laguerre_oracle() -> Outcome {
    let (mut forms, mut recurrence, mut recurrence_by_value) = (0.0f64, 0.0f64, 0.0f64);
    let ys: Vec<f64> = (0..=80).map(|k| 0.1 + 19.9 * k as f64 / 80.0).collect();
    for m in 0..=10u32 {
        for alpha in 0..=9u32 {
            for &y in &ys {
                let s = laguerre(m, alpha, y);
                let r = laguerre_rodrigues(m, alpha, y).unwrap();
                forms = forms.max((s - r).abs() / sum_scale(m, alpha, y).max(s.abs()));
                if m >= 1 {
                    let (mf, af) = (m as f64, alpha as f64);
                    let lhs = (mf + 1.0) * laguerre(m + 1, alpha, y);
                    let rhs = (2.0 * mf + 1.0 + af - y) * s - (mf + af) * laguerre(m - 1, alpha, y);
                    let diff = (lhs - rhs).abs();
                    let by_value = lhs
                        .abs()
                        .max(rhs.abs())
                        .max((2.0 * mf + 1.0 + af + y) * s.abs())
                        .max(1.0);
                    let by_terms = ((mf + 1.0) * sum_scale(m + 1, alpha, y))
                        .max((2.0 * mf + 1.0 + af + y) * sum_scale(m, alpha, y))
                        .max((mf + af) * sum_scale(m - 1, alpha, y))
                        .max(by_value);
                    recurrence = recurrence.max(diff / by_terms);
                    recurrence_by_value = recurrence_by_value.max(diff / by_value);
                }
            }
        }
    }
    outcome(
        forms < 1e-10 && recurrence < 1e-10,
        format!(
            "m ≤ 10, α ≤ 9, y ∈ [0.1, 20], against the largest term: sum vs Rodrigues {forms:.1e}, \
             recurrence {recurrence:.1e} (against the values themselves {recurrence_by_value:.1e})"
        ),
    )
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(|j| j as f64).product()
}

fn orthogonality() -> Outcome {
    let p = atomic();
    let (mut worst, mut nodes_ok) = (0.0f64, true);
    for l in 0..4 {
        for n in l + 1..=4 {
            let s = st(n, l);
            nodes_ok &= node_count(s, &p).unwrap() == (n - l - 1) as usize;
            for m in n + 1..=4 {
                let t = st(m, l);
                let o = overlap(s, t, &p).unwrap();
                let norm = (overlap(s, s, &p).unwrap() * overlap(t, t, &p).unwrap()).sqrt();
                worst = worst.max(o.abs() / norm);
            }
        }
    }
    outcome(
        worst < 1e-8 && nodes_ok,
        format!(
            "n ≠ n′ ≤ 4: max relative overlap {worst:.1e}; node counts {}",
            if nodes_ok { "n − l − 1" } else { "wrong" }
        ),
    )
}

// U₅(0) = −2i(2c)^{2l+1} B(α₁, α₂) sinh(πκ), checked in mpmath against a
// circle integral enclosing the cut
const U5_ZERO: [(f64, u32, f64); 3] = [
    (0.5, 0, -12.566_370_614_359_173),
    (0.5, 1, -16.755_160_819_145_564),
    (0.125, 0, -12.566_370_614_359_173),
];

fn continuum() -> Outcome {
    let p = atomic();
    let (mut beta_worst, mut template_worst, mut phase_worst) = (0.0f64, 0.0f64, 0.0f64);
    for (e, l, im) in U5_ZERO {
        let cont = ContinuumParams::new(&p, e, l).unwrap();
        let quad = continuum_u5(&cont, 0.0, QUAD_TOL).unwrap();
        let want = c(0.0, im);
        let beta = continuum_r0_beta_form(&cont).unwrap();
        beta_worst = beta_worst
            .max((quad - want).norm() / want.norm())
            .max((beta - want).norm() / want.norm());
        let template = continuum_r0_closed_form(&cont).unwrap();
        template_worst = template_worst.max((quad - template).norm() / template.norm());

        let values: Vec<Complex64> = (0..12)
            .map(|k| continuum_u5(&cont, 0.5 + 1.5 * k as f64, QUAD_TOL).unwrap())
            .collect();
        phase_worst = phase_worst.max(real_phase(&values).1);
    }

    // envelope of r|χ| for E = 0.5, l = 0 from its local maxima on [50, 100]
    let cont = ContinuumParams::new(&p, 0.5, 0).unwrap();
    let h = 0.05;
    let grid: Vec<f64> = (0..=1000).map(|k| 50.0 + h * k as f64).collect();
    let env: Vec<f64> = grid
        .iter()
        .map(|&r| r * continuum_u5(&cont, r, QUAD_TOL).unwrap().norm())
        .collect();
    let mut peaks = Vec::new();
    for k in 1..env.len() - 1 {
        let (a, b, d) = (env[k - 1], env[k], env[k + 1]);
        if b >= a && b > d {
            // parabola through the three samples
            let curv = a - 2.0 * b + d;
            let shift = 0.5 * (a - d) / curv;
            peaks.push(b - 0.25 * (a - d) * shift);
        }
    }
    let (lo, hi) = peaks
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let mean = peaks.iter().sum::<f64>() / peaks.len() as f64;
    let spread = (hi - lo) / mean;

    println!(
        "    note: the r = 0 template with prefactor e^{{iπ(α₁−α₂)/2}} and factor (1 + e^{{−2iπ(α₁−α₂)}}) misses the \
         quadrature by {template_worst:.2e} (relative); not used as the reference"
    );
    outcome(
        beta_worst < 1e-8 && spread < 0.05 && phase_worst < 1e-8 && peaks.len() >= 5,
        format!(
            "U₅(0) vs beta form {beta_worst:.1e}; r|χ| envelope spread on [50, 100] {:.2}% over {} peaks; \
             fixed-phase imaginary part {phase_worst:.1e}",
            100.0 * spread,
            peaks.len()
        ),
    )
}

fn ode_residuals() -> Outcome {
    let p = atomic();
    let radii: [f64; 4] = [0.7, 2.0, 5.0, 11.0];
    let residual = |l: u32, e: f64, f: &dyn Fn(f64) -> Complex64| {
        radii
            .iter()
            .map(|&r| {
                let h = FD_STEP * r.max(1.0);
                let vals = stencil(r, h).map(f);
                radial_residual(&p, l, e, r, h, &vals).unwrap()
            })
            .fold(0.0, f64::max)
    };
    let (mut closed, mut quad, mut cont_worst) = (0.0f64, 0.0f64, 0.0f64);
    for (n, l) in [(1, 0), (2, 1), (3, 0), (4, 2)] {
        let s = st(n, l);
        let e = bound_energy(&p, n);
        closed = closed.max(residual(l, e, &|r| c(chi_bound(s, &p, r).unwrap(), 0.0)));
        quad = quad.max(residual(l, e, &|r| {
            r.powi(l as i32) * u_quadrature(s, &p, r, 1e-13).unwrap()
        }));
    }
    for (e, l) in [(0.5, 0), (0.5, 1), (0.125, 0)] {
        let cont = ContinuumParams::new(&p, e, l).unwrap();
        cont_worst = cont_worst.max(residual(l, e, &|r| {
            r.powi(l as i32) * continuum_u5(&cont, r, 1e-13).unwrap()
        }));
    }
    outcome(
        closed < 1e-5 && quad < 1e-5 && cont_worst < 1e-5,
        format!("r ∈ {{0.7, 2, 5, 11}}: bound closed form {closed:.1e}, bound quadrature {quad:.1e}, continuum {cont_worst:.1e}"),
    )
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("energy spectrum", energies),
        ("bound-state equivalence", bound_equivalence),
        ("Hankel 1/Γ", hankel),
        ("mirror and recursion", gamma_identities),
        ("asymptotic series", gamma2_series),
        ("contour rejection", rejection_suite),
        ("Laguerre forms", laguerre_oracle),
        ("orthogonality and nodes", orthogonality),
        ("continuum", continuum),
        ("ODE residuals", ode_residuals),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        println!(
            "criterion {:>2} {}: {} ({})",
            k + 1,
            if o.pass { "PASS" } else { "FAIL" },
            name,
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "{} of {} criteria passed in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
