use num_complex::Complex64;

use super::{bound_c1, chi_bound, PhysicalParams, QuantumState};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_pieces, QuadOptions};

/// Default finite-difference step, relative to `max(r, 1)`.
pub const FD_STEP: f64 = 1e-3;

/// The five points `r − 2h … r + 2h` of the central stencil.
pub fn stencil(r: f64, h: f64) -> [f64; 5] {
    [r - 2.0 * h, r - h, r, r + h, r + 2.0 * h]
}

/// Relative residual of the radial equation
/// `χ'' + (2/r)χ' + (2μE/ħ² + 2/(a₀r) − l(l+1)/r²)χ` at `r`, from values on
/// [`stencil`]`(r, h)`. Derivatives are fourth-order central differences.
pub fn radial_residual(
    params: &PhysicalParams,
    l: u32,
    e: f64,
    r: f64,
    h: f64,
    values: &[Complex64; 5],
) -> Result<f64> {
    if !(r > 2.0 * h && h > 0.0) {
        return Err(Error::Domain(format!("stencil at r = {r} with h = {h} reaches r ≤ 0")));
    }
    let [m2, m1, c, p1, p2] = *values;
    let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let d2 = (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
    let l = l as f64;
    let terms = [
        d2,
        d1 * (2.0 / r),
        c * params.energy_coefficient(e),
        c * (2.0 / (params.a0() * r)),
        c * (-l * (l + 1.0) / (r * r)),
    ];
    let sum: Complex64 = terms.iter().sum();
    let scale = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
    Ok(if scale == 0.0 { 0.0 } else { sum.norm() / scale })
}

/// `∫₀^∞ χ_a χ_b r² dr` for the Laguerre forms with a common `l`.
pub fn overlap(a: QuantumState, b: QuantumState, params: &PhysicalParams) -> Result<f64> {
    a.radial_order()?;
    b.radial_order()?;
    let decay = bound_c1(params, a.n) + bound_c1(params, b.n);
    // polynomial degree n_a + n_b − 2 plus r²; e^{−40} leaves ~1e-17 of it
    let degree = (a.n + b.n) as f64;
    let r_max = (40.0 + 4.0 * degree * (1.0 + degree.ln())) / decay;
    let pieces: Vec<(f64, f64)> = (0..16)
        .map(|k| (r_max * k as f64 / 16.0, r_max * (k + 1) as f64 / 16.0))
        .collect();
    let opts = QuadOptions {
        abs_tol: 1e-15,
        rel_tol: 1e-13,
        max_intervals: 4000,
    };
    let mut err = None;
    let res = integrate_pieces(
        &pieces,
        1,
        |_, r, out| match (chi_bound(a, params, r), chi_bound(b, params, r)) {
            (Ok(x), Ok(y)) => out[0] = Complex64::new(x * y * r * r, 0.0),
            (Err(e), _) | (_, Err(e)) => {
                err.get_or_insert(e);
                out[0] = Complex64::default();
            }
        },
        &opts,
    )?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(res.into_result()?.values[0].re)
}

/// Sign changes in a sampled sequence, skipping exact zeros.
pub fn count_sign_changes(values: &[f64]) -> usize {
    let mut last = 0.0;
    let mut changes = 0;
    for &v in values {
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            changes += 1;
        }
        last = v;
    }
    changes
}

/// Sign changes of `χ_{n,l}` on `(0, ∞)`, sampled past the last zero of the
/// Laguerre factor.
pub fn node_count(state: QuantumState, params: &PhysicalParams) -> Result<usize> {
    let m = state.radial_order()? as f64;
    let alpha = (2 * state.l + 1) as f64;
    // zeros of L_m^{(α)}(y) lie below 4m + 2α + 2
    let x_max = 0.5 * (4.0 * m + 2.0 * alpha + 10.0);
    let r_max = x_max / bound_c1(params, state.n);
    let points = 400 * (m as usize + 1);
    let samples = (1..=points)
        .map(|k| chi_bound(state, params, r_max * k as f64 / points as f64))
        .collect::<Result<Vec<_>>>()?;
    Ok(count_sign_changes(&samples))
}
