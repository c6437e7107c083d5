//! Γ on the complex plane.
//!
//! Production values come from a Lanczos sum (g = 607/128, 15 terms) with the
//! reflection formula for `Re p < 1/2`. The Hankel loop integral of `e^z z^{−p}`
//! is kept as an independent check of `1/Γ`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::complex_core::{phase_continue, BranchConfig, CutShape, Path, Segment, SideHint};
use crate::contour::{integrate_along, IntegrateOptions, PowerFactor};
use crate::error::{Error, Result};

const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_C0: f64 = 0.999999999999997092;
const LANCZOS: [f64; 14] = [
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
];
const SQRT_TAU: f64 = 2.5066282746310005;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaMethod {
    ReflectionPlusSeries,
    HankelQuadrature,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaValue {
    pub argument: Complex64,
    pub value: Complex64,
    pub method: GammaMethod,
}

fn pole_index(p: Complex64) -> Option<i64> {
    (p.im == 0.0 && p.re <= 0.0 && p.re.fract() == 0.0).then_some(p.re as i64)
}

/// `sin(πp)` with the real part reduced exactly, so integer `p` gives 0.
pub fn sin_pi(p: Complex64) -> Complex64 {
    let (s, c) = sin_cos_pi_real(p.re);
    let y = PI * p.im;
    Complex64::new(s * y.cosh(), c * y.sinh())
}

fn sin_cos_pi_real(x: f64) -> (f64, f64) {
    let r = x.rem_euclid(2.0);
    // r in [0, 2): reduce to an angle in [−π/4, π/4] around a quarter turn
    let q = (r * 2.0).round();
    let f = (r - 0.5 * q) * PI;
    let (sf, cf) = f.sin_cos();
    match q as i64 % 4 {
        0 => (sf, cf),
        1 => (cf, -sf),
        2 => (-sf, -cf),
        _ => (-cf, sf),
    }
}

/// Lanczos sum for `Re p ≥ 1/2`.
fn lanczos(p: Complex64) -> Complex64 {
    let mut ser = Complex64::new(LANCZOS_C0, 0.0);
    for (j, c) in LANCZOS.iter().enumerate() {
        ser += *c / (p + (j + 1) as f64);
    }
    let t = p + LANCZOS_G + 0.5;
    ((p + 0.5) * t.ln() - t).exp() * SQRT_TAU * ser / p
}

/// Γ(p). Nonpositive integers are poles.
pub fn gamma(p: Complex64) -> Result<Complex64> {
    if let Some(k) = pole_index(p) {
        return Err(Error::Pole(Complex64::new(k as f64, 0.0)));
    }
    if p.im == 0.0 && p.re.fract() == 0.0 && p.re <= 171.0 {
        let mut f = 1.0;
        for k in 2..p.re as i64 {
            f *= k as f64;
        }
        return Ok(Complex64::new(f, 0.0));
    }
    if p.re < 0.5 {
        Ok(PI / (sin_pi(p) * lanczos(1.0 - p)))
    } else {
        Ok(lanczos(p))
    }
}

/// 1/Γ(p); zero at the poles of Γ.
pub fn rgamma(p: Complex64) -> Complex64 {
    if pole_index(p).is_some() {
        return Complex64::default();
    }
    if p.re < 0.5 {
        sin_pi(p) * lanczos(1.0 - p) / PI
    } else {
        1.0 / lanczos(p)
    }
}

pub fn gamma_value(p: Complex64) -> Result<GammaValue> {
    Ok(GammaValue {
        argument: p,
        value: gamma(p)?,
        method: GammaMethod::ReflectionPlusSeries,
    })
}

/// B(a, b) = Γ(a)Γ(b)/Γ(a + b).
pub fn beta(a: Complex64, b: Complex64) -> Result<Complex64> {
    Ok(gamma(a)? * gamma(b)? * rgamma(a + b))
}

/// `|Γ(p+k) − p(p+1)…(p+k−1)Γ(p)| / |Γ(p+k)|`.
pub fn gamma_recursion_check(p: Complex64, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let lhs = gamma(p + k as f64)?;
    let mut prod = gamma(p)?;
    for j in 0..k {
        prod *= p + j as f64;
    }
    Ok((lhs - prod).norm() / lhs.norm())
}

/// `|Γ(p)Γ(1−p) − π/sin(πp)| / |π/sin(πp)|`.
pub fn mirror_residual(p: Complex64) -> Result<f64> {
    let s = sin_pi(p);
    if s == Complex64::default() {
        return Err(Error::Pole(p));
    }
    let rhs = PI / s;
    Ok((gamma(p)? * gamma(1.0 - p)? - rhs).norm() / rhs.norm())
}

/// Keyhole around 0 hugging the negative real axis at distance `offset`.
pub fn hankel_contour(radius: f64, offset: f64) -> Result<Path> {
    Path::hankel(Complex64::default(), radius, offset, Complex64::new(-1.0, 0.0))
}

/// Branch point 0, cut along the negative real axis, principal phases.
pub fn hankel_branch_config() -> BranchConfig {
    BranchConfig::single_ray(Complex64::default(), Complex64::new(-1.0, 0.0))
}

fn validate_hankel(contour: &Path, cfg: &BranchConfig) -> Result<()> {
    let segs = contour.segments();
    let heads_left = |s: &Segment| matches!(*s, Segment::Ray { direction, .. } if direction.re < 0.0);
    let (first, last) = (&segs[0], &segs[segs.len() - 1]);
    let ends_at_infinity =
        matches!(*first, Segment::Ray { inbound: true, .. }) && matches!(*last, Segment::Ray { inbound: false, .. });
    if !ends_at_infinity || !heads_left(first) || !heads_left(last) {
        return Err(Error::Contour(
            "a Hankel contour must come from and return to Re z = −∞".into(),
        ));
    }
    let origin = Complex64::default();
    let idx = cfg.branch_points().iter().position(|b| b.norm() < 1e-12);
    let cut_ok = idx.is_some_and(|i| {
        cfg.cuts().iter().any(|c| {
            c.from == i
                && matches!(c.shape, CutShape::Ray { direction } if direction.im.abs() < 1e-12 && direction.re < 0.0)
        })
    });
    if !cut_ok {
        return Err(Error::Contour(
            "branch configuration must cut the negative real axis from 0".into(),
        ));
    }
    // phase_continue starts at the anchor of the incoming ray
    let anchor = first.end().unwrap_or_default();
    let track = phase_continue(contour, origin, cfg.arg(anchor, origin, SideHint::None)?)?;
    let winding = track.total_change()?;
    if (winding - TAU).abs() > 1e-9 {
        return Err(Error::Contour(format!(
            "contour must wind once counterclockwise around 0 (phase change {winding})"
        )));
    }
    Ok(())
}

/// `(1/2πi) ∮ e^z z^{−p} dz` along a validated Hankel contour.
pub fn hankel_gamma_reciprocal(p: Complex64, contour: &Path, cfg: &BranchConfig) -> Result<Complex64> {
    hankel_gamma_reciprocal_tol(p, contour, cfg, 1e-13)
}

pub fn hankel_gamma_reciprocal_tol(p: Complex64, contour: &Path, cfg: &BranchConfig, tol: f64) -> Result<Complex64> {
    validate_hankel(contour, cfg)?;
    let factor = PowerFactor::new(Complex64::default(), -p);
    let v = integrate_along(contour, cfg, &[factor], &[1.0], &IntegrateOptions::with_tol(tol))?;
    Ok(v.values[0] / Complex64::new(0.0, TAU))
}

/// Hankel value on the default keyhole (radius 1, legs at δ = 1e−3) with
/// the same integral repeated at δ/2; returns both values.
pub fn hankel_gamma_default(p: Complex64) -> Result<(GammaValue, Complex64)> {
    let cfg = hankel_branch_config();
    let v = hankel_gamma_reciprocal(p, &hankel_contour(1.0, 1e-3)?, &cfg)?;
    let half = hankel_gamma_reciprocal(p, &hankel_contour(1.0, 5e-4)?, &cfg)?;
    Ok((
        GammaValue {
            argument: p,
            value: 1.0 / v,
            method: GammaMethod::HankelQuadrature,
        },
        half,
    ))
}
