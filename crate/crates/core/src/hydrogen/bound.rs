use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{bound_c1, bound_energy, bound_laplace_data, PhysicalParams, QuantumState};
use crate::error::{Error, Result};
use crate::laplace::{evaluate_contour_integral, loop_around, outward_branch_config, ContourCandidate};

/// `binom(n, k)`, exact while it fits in a `u128`.
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc·(n − i) is divisible by i + 1 after the multiplication
        match acc.checked_mul((n - i) as u128) {
            Some(v) => acc = v / (i as u128 + 1),
            None => return binomial_float(n, k),
        }
    }
    acc as f64
}

fn binomial_float(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `U(r) = 2πi/(n−l−1)! · d^{n−l−1}/dz^{n−l−1} [e^{zr}(z − c₁)^{n+l}]` at `z = c₂`.
///
/// Leibniz gives `2πi e^{c₂r}(c₂ − c₁)^{2l+1} Σ_j binom(n+l, j) w^{m−j}/(m−j)!`
/// with `m = n − l − 1` and `w = (c₂ − c₁)r`.
pub fn residue_wavefunction_u(state: QuantumState, params: &PhysicalParams, r: f64) -> Result<Complex64> {
    let m = state.radial_order()? as u64;
    let c1 = bound_c1(params, state.n);
    let gap = -2.0 * c1;
    let w = gap * r;
    let nl = (state.n + state.l) as u64;
    // Horner in w over k = m − j
    let mut sum = 0.0;
    for k in (0..=m).rev() {
        sum = sum * w + binomial(nl, m - k) / factorial(k);
    }
    let scale = (-c1 * r).exp() * gap.powi(2 * state.l as i32 + 1);
    Ok(Complex64::new(0.0, TAU * scale * sum))
}

fn factorial(k: u64) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// `L_m^{(α)}(y) = Σ_k (−y)^k/k! · binom(m+α, m−k)`.
pub fn laguerre(m: u32, alpha: u32, y: f64) -> f64 {
    let (m, a) = (m as u64, alpha as u64);
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 0..=m {
        if k > 0 {
            term *= -y / k as f64;
        }
        sum += term * binomial(m + a, m - k);
    }
    sum
}

/// `(1/m!) e^y y^{−α} d^m/dy^m [e^{−y} y^{m+α}]`, expanded by Leibniz:
/// `Σ_j binom(m, j) (−1)^{m−j} (m+α)!/((m+α−j)! m!) y^{m−j}`.
pub fn laguerre_rodrigues(m: u32, alpha: u32, y: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!("Rodrigues form needs y > 0, got {y}")));
    }
    let (m, a) = (m as u64, alpha as u64);
    let mut sum = 0.0;
    for j in 0..=m {
        // (m+α)!/(m+α−j)! as a falling factorial
        let falling = (0..j).fold(1.0, |acc, i| acc * (m + a - i) as f64);
        let sign = if (m - j) % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binomial(m, j) * falling * y.powi((m - j) as i32);
    }
    Ok(sum / factorial(m))
}

/// `χ(x) = x^l e^{−x} L_{n−l−1}^{(2l+1)}(2x)` with `x = c₁r`.
pub fn chi_bound(state: QuantumState, params: &PhysicalParams, r: f64) -> Result<f64> {
    let m = state.radial_order()?;
    if !(r >= 0.0) {
        return Err(Error::Domain(format!("r must be nonnegative, got {r}")));
    }
    let x = bound_c1(params, state.n) * r;
    Ok(x.powi(state.l as i32) * (-x).exp() * laguerre(m, 2 * state.l + 1, 2.0 * x))
}

/// `r^l e^{−x} L_{n−l−1}^{(2l+1)}(2x)`: the bracket that `r^l U` equals up
/// to [`connecting_constant`]. It differs from [`chi_bound`] by `c₁^{−l}`.
pub fn chi_bound_scaled(state: QuantumState, params: &PhysicalParams, r: f64) -> Result<f64> {
    let c1 = bound_c1(params, state.n);
    Ok(chi_bound(state, params, r)? / c1.powi(state.l as i32))
}

/// `2πi(−1)^{−2l−1}(2c₁)^{2l+1}`, so that `U = K e^{−x} L_{n−l−1}^{(2l+1)}(2x)`.
pub fn connecting_constant(state: QuantumState, params: &PhysicalParams) -> Complex64 {
    let c1 = bound_c1(params, state.n);
    // (−1)^{−2l−1} = −1
    Complex64::new(0.0, -TAU * (2.0 * c1).powi(2 * state.l as i32 + 1))
}

/// Circle around `c₂`. Its radius is `min(|c₁ − c₂|/2, 1/r)`, which keeps
/// `e^{zr}` within `e^{±1}` of `e^{c₂r}` on the loop.
pub fn bound_contour(state: QuantumState, params: &PhysicalParams, r: f64) -> Result<ContourCandidate> {
    state.radial_order()?;
    let data = bound_laplace_data(params, state)?;
    let d = 2.0 * bound_c1(params, state.n);
    let mut radius = 0.5 * d;
    if r > 0.0 {
        radius = radius.min(1.0 / r);
    }
    loop_around(data.roots[1], radius, outward_branch_config(&data)?, "γ_f")
}

/// `U(r)` by quadrature over the loop around `c₂`.
pub fn u_quadrature(state: QuantumState, params: &PhysicalParams, r: f64, tol: f64) -> Result<Complex64> {
    let c = bound_contour(state, params, r)?;
    let data = bound_laplace_data(params, state)?;
    evaluate_contour_integral(&c, &data, r, tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionForm {
    ResidueQuadrature,
    ResidueClosedForm,
    LaguerreClosedForm,
    ContinuumQuadrature,
}

/// What the overall constant of a solution is.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleConvention {
    /// Ratio of this form to the Laguerre form `x^l e^{−x} L(2x)`; `None` for
    /// continuum solutions, which have no closed form to compare with.
    pub relative_to_laguerre: Option<Complex64>,
    pub normalized: bool,
}

/// `χ(r)` in one of its forms. Bound forms are unnormalized
/// unless built with [`RadialSolution::normalized`].
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    pub params: PhysicalParams,
    pub l: u32,
    pub energy: f64,
    pub state: Option<QuantumState>,
    pub form: SolutionForm,
    pub scale: ScaleConvention,
    pub tol: f64,
    factor: Complex64,
}

impl RadialSolution {
    pub fn bound(state: QuantumState, params: PhysicalParams, form: SolutionForm, tol: f64) -> Result<Self> {
        state.radial_order()?;
        let rel = match form {
            SolutionForm::LaguerreClosedForm => Complex64::new(1.0, 0.0),
            SolutionForm::ResidueClosedForm | SolutionForm::ResidueQuadrature => {
                connecting_constant(state, &params) / bound_c1(&params, state.n).powi(state.l as i32)
            }
            SolutionForm::ContinuumQuadrature => {
                return Err(Error::InvalidArgument("bound states have no continuum form".into()))
            }
        };
        Ok(RadialSolution {
            params,
            l: state.l,
            energy: bound_energy(&params, state.n),
            state: Some(state),
            form,
            scale: ScaleConvention {
                relative_to_laguerre: Some(rel),
                normalized: false,
            },
            tol,
            factor: Complex64::new(1.0, 0.0),
        })
    }

    pub fn continuum(l: u32, energy: f64, params: PhysicalParams, tol: f64) -> Result<Self> {
        if !(energy > 0.0) {
            return Err(Error::Domain(format!("continuum needs E > 0, got {energy}")));
        }
        Ok(RadialSolution {
            params,
            l,
            energy,
            state: None,
            form: SolutionForm::ContinuumQuadrature,
            scale: ScaleConvention {
                relative_to_laguerre: None,
                normalized: false,
            },
            tol,
            factor: Complex64::new(1.0, 0.0),
        })
    }

    /// Divides by `√∫|χ|² r² dr` (bound states only).
    pub fn normalized(mut self) -> Result<Self> {
        let Some(state) = self.state else {
            return Err(Error::InvalidArgument("continuum states are not normalizable".into()));
        };
        let norm = super::overlap(state, state, &self.params)?.sqrt();
        let rel = self.scale.relative_to_laguerre.unwrap_or(Complex64::new(1.0, 0.0));
        self.factor = 1.0 / (norm * rel);
        self.scale.relative_to_laguerre = Some(Complex64::new(1.0 / norm, 0.0));
        self.scale.normalized = true;
        Ok(self)
    }

    /// `χ(r)`.
    pub fn chi(&self, r: f64) -> Result<Complex64> {
        let rl = r.powi(self.l as i32);
        let v = match (self.form, self.state) {
            (SolutionForm::LaguerreClosedForm, Some(s)) => Complex64::new(chi_bound(s, &self.params, r)?, 0.0),
            (SolutionForm::ResidueClosedForm, Some(s)) => rl * residue_wavefunction_u(s, &self.params, r)?,
            (SolutionForm::ResidueQuadrature, Some(s)) => rl * u_quadrature(s, &self.params, r, self.tol)?,
            (SolutionForm::ContinuumQuadrature, None) => {
                let cont = super::ContinuumParams::new(&self.params, self.energy, self.l)?;
                rl * super::continuum_u5(&cont, r, self.tol)?
            }
            _ => unreachable!("constructors pair forms with states"),
        };
        Ok(v * self.factor)
    }
}
