use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::{reduce_radial, PhysicalParams};
use crate::error::{Error, Result};
use crate::gamma::beta;
use crate::laplace::{
    build_laplace_data, evaluate_contour_integral, segment_branch_config, stadium_around, ContourCandidate, LaplaceData,
};

/// Distance of the stadium from the cut, as a fraction of `c`.
pub const CONTINUUM_DISTANCE: f64 = 0.3;

/// `E > 0`: roots `c₁ = −ic`, `c₂ = ic` with `c = √(2μE)/ħ` and exponents
/// `α₁ = l + 1 + iκ`, `α₂ = l + 1 − iκ`, `κ = 1/(a₀c)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuumParams {
    pub energy: f64,
    pub l: u32,
    pub c: f64,
    pub alpha1: Complex64,
    pub alpha2: Complex64,
    pub data: LaplaceData,
}

impl ContinuumParams {
    pub fn new(params: &PhysicalParams, energy: f64, l: u32) -> Result<Self> {
        if !(energy > 0.0 && energy.is_finite()) {
            return Err(Error::Domain(format!("continuum needs E > 0, got {energy}")));
        }
        let data = build_laplace_data(&reduce_radial(params, l, energy))?;
        let c = params.energy_coefficient(energy).sqrt();
        // roots come sorted as −ic, ic
        let kappa = 1.0 / (params.a0() * c);
        let alpha1 = Complex64::new(l as f64 + 1.0, kappa);
        Ok(ContinuumParams {
            energy,
            l,
            c,
            alpha1,
            alpha2: alpha1.conj(),
            data,
        })
    }
}

/// Closed stadium around the cut from `−ic` to `ic`, at `distance` from it.
pub fn continuum_contour(cont: &ContinuumParams, distance: f64) -> Result<ContourCandidate> {
    let cfg = segment_branch_config(&cont.data)?;
    stadium_around(&cont.data, 0, 1, distance, cfg, "γ₅")
}

/// `U₅(r)` on the default stadium: distance `min(0.3c, 1/r)`, so that
/// `e^{zr}` stays within `e^{±1}` in modulus along it.
pub fn continuum_u5(cont: &ContinuumParams, r: f64, tol: f64) -> Result<Complex64> {
    let mut distance = CONTINUUM_DISTANCE * cont.c;
    if r > 0.0 {
        distance = distance.min(1.0 / r);
    }
    continuum_u5_with_distance(cont, r, distance, tol)
}

pub fn continuum_u5_with_distance(cont: &ContinuumParams, r: f64, distance: f64, tol: f64) -> Result<Complex64> {
    if !(r >= 0.0) {
        return Err(Error::Domain(format!("r must be nonnegative, got {r}")));
    }
    let contour = continuum_contour(cont, distance)?;
    evaluate_contour_integral(&contour, &cont.data, r, tol)
}

/// `e^{iπ/2(α₁−α₂)}(2c)^{2l+1} B(α₁, α₂)(1 + e^{−2iπ(α₁−α₂)})`, the `r = 0`
/// template built from the phases π/2, −π/2 (right of the cut) and −3π/2,
/// 3π/2 (left) without the `dz = 2ic dx` factor. It does not equal `U₅(0)`;
/// see [`continuum_r0_beta_form`].
pub fn continuum_r0_closed_form(cont: &ContinuumParams) -> Result<Complex64> {
    let d = cont.alpha1 - cont.alpha2;
    let i = Complex64::i();
    let b = beta(cont.alpha1, cont.alpha2)?;
    let scale = (2.0 * cont.c).powi(2 * cont.l as i32 + 1);
    Ok((i * FRAC_PI_2 * d).exp() * scale * b * (1.0 + (-2.0 * i * PI * d).exp()))
}

/// `U₅(0)` with `dz = 2ic dx` kept and the left-side phases continued around
/// `−ic` (−3π/2 and −π/2): `i(2c)^{2l+1} B(α₁, α₂)(e^{−πκ} − e^{πκ})`.
pub fn continuum_r0_beta_form(cont: &ContinuumParams) -> Result<Complex64> {
    let i = Complex64::i();
    let (b1, b2) = (cont.alpha1 - 1.0, cont.alpha2 - 1.0);
    let right = (i * FRAC_PI_2 * (b1 - b2)).exp();
    let left = (-i * 1.5 * PI * b1 - i * FRAC_PI_2 * b2).exp();
    let scale = (2.0 * cont.c).powi(2 * cont.l as i32 + 1);
    Ok(i * scale * beta(cont.alpha1, cont.alpha2)? * (right - left))
}

/// Phase `φ` of the largest value and the largest `|Im(v e^{−iφ})|` relative
/// to that value's modulus.
pub fn real_phase(values: &[Complex64]) -> (f64, f64) {
    let Some(big) = values.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())) else {
        return (0.0, 0.0);
    };
    if big.norm() == 0.0 {
        return (0.0, 0.0);
    }
    let rot = Complex64::from_polar(1.0, -big.arg());
    let worst = values.iter().map(|v| (v * rot).im.abs()).fold(0.0, f64::max);
    (big.arg(), worst / big.norm())
}
