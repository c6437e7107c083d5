//! The hydrogen radial equation
//!
//! `χ'' + (2/r)χ' + (2μE/ħ² + 2/(a₀r) − l(l+1)/r²)χ = 0`
//!
//! reduced by `χ = r^l U` to `rU'' + 2(l+1)U' + (2μE/ħ²·r + 2/a₀)U = 0`,
//! which has linear coefficients. Bound states come from the residue at
//! `c₂ = −√(−2μE)/ħ` once `ν = ħ/(a₀√(−2μE))` is a positive integer `n`;
//! continuum states from a closed contour around the cut joining `±ic`.

mod bound;
mod checks;
mod continuum;

pub use bound::{
    binomial, bound_contour, chi_bound, chi_bound_scaled, connecting_constant, laguerre, laguerre_rodrigues,
    residue_wavefunction_u, u_quadrature, RadialSolution, ScaleConvention, SolutionForm,
};
pub use checks::{count_sign_changes, node_count, overlap, radial_residual, stencil, FD_STEP};
pub use continuum::{
    continuum_contour, continuum_r0_beta_form, continuum_r0_closed_form, continuum_u5, continuum_u5_with_distance,
    real_phase, ContinuumParams, CONTINUUM_DISTANCE,
};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::laplace::{build_laplace_data, LaplaceData, LinearODE};

/// `|ν − round ν|` below this counts as an integer.
pub const INTEGER_TOL: f64 = 1e-9;

/// `ħ`, `μ` and `e²` (Gaussian units, so `e²/r` is an energy).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub hbar: f64,
    pub mu: f64,
    pub e_sq: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        PhysicalParams::atomic()
    }
}

impl PhysicalParams {
    pub fn new(hbar: f64, mu: f64, e_sq: f64) -> Result<Self> {
        if [hbar, mu, e_sq].iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidArgument("ħ, μ and e² must be positive".into()));
        }
        Ok(PhysicalParams { hbar, mu, e_sq })
    }

    pub fn atomic() -> Self {
        PhysicalParams {
            hbar: 1.0,
            mu: 1.0,
            e_sq: 1.0,
        }
    }

    /// CODATA 2018 values with the electron mass; lengths in metres,
    /// energies in joules.
    pub fn si() -> Self {
        const HBAR: f64 = 1.054_571_817e-34;
        const M_E: f64 = 9.109_383_701_5e-31;
        // e²/(4πε₀) in J·m
        const E_SQ: f64 = 2.307_077_552e-28;
        PhysicalParams {
            hbar: HBAR,
            mu: M_E,
            e_sq: E_SQ,
        }
    }

    /// Bohr radius `ħ²/(μe²)`.
    pub fn a0(&self) -> f64 {
        self.hbar * self.hbar / (self.mu * self.e_sq)
    }

    /// Hartree energy `e²/a₀`.
    pub fn hartree(&self) -> f64 {
        self.e_sq / self.a0()
    }

    /// `2μE/ħ²`.
    pub fn energy_coefficient(&self, e: f64) -> f64 {
        2.0 * self.mu * e / (self.hbar * self.hbar)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantumState {
    pub n: u32,
    pub l: u32,
}

impl QuantumState {
    /// Any `n ≥ 1`; whether `n > l` is checked where a pole is needed.
    pub fn new(n: u32, l: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n starts at 1".into()));
        }
        Ok(QuantumState { n, l })
    }

    pub fn is_physical(&self) -> bool {
        self.n > self.l
    }

    /// `n − l − 1`, the order of the pole minus one.
    pub fn radial_order(&self) -> Result<u32> {
        if !self.is_physical() {
            return Err(Error::NoPole(format!(
                "no physical solution for n ≤ l (n = {}, l = {})",
                self.n, self.l
            )));
        }
        Ok(self.n - self.l - 1)
    }
}

/// Coefficients of `rU'' + 2(l+1)U' + (2μE/ħ²·r + 2/a₀)U = 0`.
pub fn reduce_radial(params: &PhysicalParams, l: u32, e: f64) -> LinearODE {
    let l = l as f64;
    LinearODE::new(vec![
        (2.0 / params.a0(), params.energy_coefficient(e)),
        (2.0 * (l + 1.0), 0.0),
        (0.0, 1.0),
    ])
    .expect("the radial equation always has order two")
}

/// `ν = ħ/(a₀√(−2μE))`.
pub fn quantization_parameter(params: &PhysicalParams, e: f64) -> Result<f64> {
    if !(e < 0.0) {
        return Err(Error::Domain(format!("quantization needs E < 0, got {e}")));
    }
    Ok(params.hbar / (params.a0() * (-2.0 * params.mu * e).sqrt()))
}

/// `Some(n)` when `ν` is the positive integer `n`.
pub fn bound_index(nu: f64) -> Option<u32> {
    let n = nu.round();
    (n >= 1.0 && (nu - n).abs() < INTEGER_TOL && n <= u32::MAX as f64).then_some(n as u32)
}

/// `E_n = −ħ²/(2μa₀²n²)`.
pub fn bound_energy(params: &PhysicalParams, n: u32) -> f64 {
    let a0 = params.a0();
    let n = n as f64;
    -params.hbar * params.hbar / (2.0 * params.mu * a0 * a0 * n * n)
}

/// `c₁ = √(−2μE_n)/ħ = 1/(a₀n)`.
pub fn bound_c1(params: &PhysicalParams, n: u32) -> f64 {
    1.0 / (params.a0() * n as f64)
}

/// Laplace data at `E_n` with the exponents snapped to the exact integers
/// `n + l + 1` and `l + 1 − n`.
pub fn bound_laplace_data(params: &PhysicalParams, state: QuantumState) -> Result<LaplaceData> {
    let ode = reduce_radial(params, state.l, bound_energy(params, state.n));
    let mut data = build_laplace_data(&ode)?;
    let c1 = bound_c1(params, state.n);
    let (n, l) = (state.n as f64, state.l as f64);
    data.roots = vec![Complex64::new(c1, 0.0), Complex64::new(-c1, 0.0)];
    data.exponents = vec![Complex64::new(n + l + 1.0, 0.0), Complex64::new(l + 1.0 - n, 0.0)];
    Ok(data)
}

/// Laplace data for general `E < 0`, with `α₁ = ν + l + 1`, `α₂ = −ν + l + 1`.
pub fn radial_laplace_data(params: &PhysicalParams, l: u32, e: f64) -> Result<LaplaceData> {
    build_laplace_data(&reduce_radial(params, l, e))
}

/// The energy whose quantization parameter is `ν`.
pub fn energy_for_nu(params: &PhysicalParams, nu: f64) -> Result<f64> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::Domain(format!("ν must be positive, got {nu}")));
    }
    let k = params.hbar / (params.a0() * nu);
    Ok(-k * k / (2.0 * params.mu))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_examples() {
        let p = PhysicalParams::atomic();
        assert_eq!(
            reduce_radial(&p, 0, -0.5).coeffs(),
            &[(2.0, -1.0), (2.0, 0.0), (0.0, 1.0)]
        );
        let ode = reduce_radial(&p, 1, -0.125);
        assert_eq!(ode.coeffs()[1].0, 4.0);
        assert_eq!(ode.coeffs()[0].1, -0.25);
        assert_eq!(reduce_radial(&p, 0, 0.5).coeffs()[0].1, 1.0);
    }

    #[test]
    fn quantization_examples() {
        let p = PhysicalParams::atomic();
        assert_eq!(quantization_parameter(&p, -0.5).unwrap(), 1.0);
        let nu3 = quantization_parameter(&p, -1.0 / 18.0).unwrap();
        assert_eq!(bound_index(nu3), Some(3));
        let nu = quantization_parameter(&p, -0.2).unwrap();
        assert!((nu - 2.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(bound_index(nu), None);
        assert!(quantization_parameter(&p, 0.0).is_err());
    }

    #[test]
    fn energies() {
        let p = PhysicalParams::atomic();
        assert_eq!(bound_energy(&p, 1), -0.5);
        assert_eq!(bound_energy(&p, 2), -0.125);
        assert_eq!(bound_energy(&p, 10), -0.005);
        let si = PhysicalParams::si();
        // Bohr radius and the hartree, CODATA 2018
        assert!((si.a0() / 5.291_772_109e-11 - 1.0).abs() < 1e-8);
        assert!((bound_energy(&si, 1) / (-0.5 * 4.359_744_722_2e-18) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn bound_data_is_exact() {
        let p = PhysicalParams::atomic();
        let d = bound_laplace_data(&p, QuantumState::new(3, 1).unwrap()).unwrap();
        assert_eq!(d.exponents, vec![Complex64::new(5.0, 0.0), Complex64::new(-1.0, 0.0)]);
        let raw = radial_laplace_data(&p, 1, bound_energy(&p, 3)).unwrap();
        for (a, b) in raw.exponents.iter().zip(&d.exponents) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
