//! The Laplace method for `Σ_m (a_m + b_m x) y^(m)(x) = 0`.
//!
//! With `P(z) = Σ a_m z^m` and `Q(z) = Σ b_m z^m`, solutions are
//! `y(x) = ∫_C e^{xz} R(z) dz` where `R = Π_j (z − c_j)^{α_j − 1}` over the
//! simple roots `c_j` of `Q` and `α_j = P(c_j)/Q'(c_j)`, provided
//! `V(z) = e^{xz} Π_j (z − c_j)^{α_j}` returns to its starting value along `C`.

mod catalog;
mod poly;

pub use catalog::{
    bound_catalog, classify_contour, endpoint_condition_satisfied, evaluate_contour_integral, evaluate_many,
    hankel_around, loop_around, outward_branch_config, ray_from_root, root_to_root, segment_branch_config,
    stadium_around, CatalogGeometry, Classification, ContourCandidate, ContourKind, ZERO_PROBES,
};
pub use poly::Poly;

use num_complex::Complex64;

use crate::contour::PowerFactor;
use crate::error::{Error, Result};

/// Coefficients `(a_m, b_m)` for `m = 0..=order`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearODE {
    coeffs: Vec<(f64, f64)>,
}

impl LinearODE {
    pub fn new(coeffs: Vec<(f64, f64)>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidArgument("an ODE needs order at least 1".into()));
        }
        if coeffs.last() == Some(&(0.0, 0.0)) {
            return Err(Error::InvalidArgument("leading coefficient pair is zero".into()));
        }
        if coeffs.iter().any(|(a, b)| !a.is_finite() || !b.is_finite()) {
            return Err(Error::InvalidArgument("coefficients must be finite".into()));
        }
        Ok(LinearODE { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[(f64, f64)] {
        &self.coeffs
    }

    /// Terms `(a_m + b_m x)·y^(m)` given the derivatives `y, y', y'', …`.
    pub fn terms(&self, x: f64, derivs: &[Complex64]) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .zip(derivs)
            .map(|((a, b), d)| d * (a + b * x))
            .collect()
    }

    /// `|Σ terms| / max |term|`.
    pub fn relative_residual(&self, x: f64, derivs: &[Complex64]) -> f64 {
        let terms = self.terms(x, derivs);
        let sum: Complex64 = terms.iter().sum();
        let scale = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            0.0
        } else {
            sum.norm() / scale
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LaplaceData {
    pub p: Poly,
    pub q: Poly,
    /// Simple roots of `Q`, by descending real part.
    pub roots: Vec<Complex64>,
    /// `α_j = P(c_j)/Q'(c_j)`, matched to `roots`.
    pub exponents: Vec<Complex64>,
}

impl LaplaceData {
    /// Integrand factors `(z − c_j)^{α_j − 1}`.
    pub fn factors(&self) -> Vec<PowerFactor> {
        self.roots
            .iter()
            .zip(&self.exponents)
            .map(|(c, a)| PowerFactor::new(*c, a - 1.0))
            .collect()
    }

    /// `Σ_j α_j/(z − c_j)`, which equals `P(z)/Q(z)`.
    pub fn partial_fractions(&self, z: Complex64) -> Complex64 {
        self.roots.iter().zip(&self.exponents).map(|(c, a)| a / (z - c)).sum()
    }

    pub fn root_index(&self, c: Complex64) -> Option<usize> {
        self.roots
            .iter()
            .position(|r| (r - c).norm() <= 1e-12 * r.norm().max(1.0))
    }
}

/// `P`, `Q`, the roots of `Q` and the exponents `α_j`.
///
/// Repeated roots and `deg P ≥ deg Q` (which would put an exponential factor
/// into `R`) are unsupported.
pub fn build_laplace_data(ode: &LinearODE) -> Result<LaplaceData> {
    let p = Poly::from_real(&ode.coeffs.iter().map(|c| c.0).collect::<Vec<_>>());
    let q = Poly::from_real(&ode.coeffs.iter().map(|c| c.1).collect::<Vec<_>>());
    let dq = match q.degree() {
        None | Some(0) => return Err(Error::Unsupported("Q has no roots; R is a pure exponential".into())),
        Some(d) => d,
    };
    if let Some(dp) = p.degree() {
        if dp >= dq {
            let (quot, _) = p.div_rem(&q)?;
            if !quot.is_zero() {
                return Err(Error::Unsupported(format!(
                    "deg P = {dp} ≥ deg Q = {dq} puts an exponential factor into R"
                )));
            }
        }
    }
    let roots = q.roots()?;
    let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
    for (i, a) in roots.iter().enumerate() {
        for b in &roots[i + 1..] {
            if (a - b).norm() <= 1e-8 * scale {
                return Err(Error::Unsupported(format!("Q has a repeated root near {a}")));
            }
        }
    }
    let dq_poly = q.derivative();
    let exponents = roots.iter().map(|c| p.eval(*c) / dq_poly.eval(*c)).collect();
    Ok(LaplaceData { p, q, roots, exponents })
}
