use laplace_contour::gamma::{hankel_branch_config, hankel_contour, hankel_gamma_reciprocal_tol, rgamma};
use laplace_contour::hydrogen::{
    bound_energy, bound_index, bound_laplace_data, chi_bound, connecting_constant, continuum_r0_beta_form,
    continuum_r0_closed_form, continuum_u5, energy_for_nu, quantization_parameter, radial_laplace_data, u_quadrature,
    ContinuumParams, PhysicalParams, QuantumState,
};
use laplace_contour::laplace::{bound_catalog, classify_contour, CatalogGeometry};
use laplace_contour::Complex64;
use rayon::prelude::*;

use crate::config::{RunConfig, UnitSystem};
use crate::output::{Cell, Table};
use crate::CliError;

pub const MAX_N: u32 = 100;
/// `abs_diff` bound for the wavefunction table, relative to `max |χ|`.
pub const WAVEFUNCTION_CHECK: f64 = 1e-8;
pub const GAMMA_CHECK: f64 = 1e-8;
pub const CONTINUUM_CHECK: f64 = 1e-8;

/// A finished table; `failure` explains a numerical check that did not hold.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub table: Table,
    pub failure: Option<String>,
}

impl Report {
    fn ok(table: Table) -> Self {
        Report { table, failure: None }
    }
}

fn si_params() -> PhysicalParams {
    PhysicalParams::si()
}

/// Lengths and energies given in the run's units, in atomic units.
fn to_atomic_length(cfg: &RunConfig, r: f64) -> f64 {
    match cfg.unit_system {
        UnitSystem::Atomic => r,
        UnitSystem::Si => r / si_params().a0(),
    }
}

fn to_atomic_energy(cfg: &RunConfig, e: f64) -> f64 {
    match cfg.unit_system {
        UnitSystem::Atomic => e,
        UnitSystem::Si => e / si_params().hartree(),
    }
}

fn params_for(cfg: &RunConfig) -> PhysicalParams {
    match cfg.unit_system {
        UnitSystem::Atomic => PhysicalParams::atomic(),
        UnitSystem::Si => si_params(),
    }
}

/// Evaluates `f` over `items` on `cfg.jobs` threads, keeping input order.
fn par_map<T, R, F>(cfg: &RunConfig, items: &[T], f: F) -> Result<Vec<R>, CliError>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R, CliError> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Numerical(format!("could not start worker pool: {e}")))?;
    pool.install(|| items.par_iter().map(&f).collect())
}

fn numerical(context: &str, e: laplace_contour::Error) -> CliError {
    CliError::Numerical(format!("{context}: {e}"))
}

/// Rows `(n, E_n, ν − n)` for `n = 1..=n_max`.
pub fn cmd_energies(cfg: &RunConfig, n_max: u32) -> Result<Report, CliError> {
    if !(1..=MAX_N).contains(&n_max) {
        return Err(CliError::Usage(format!("n_max must lie in 1..={MAX_N}, got {n_max}")));
    }
    let params = params_for(cfg);
    let mut table = Table::new(vec!["n", "energy", "nu_residual"]);
    for n in 1..=n_max {
        let e = bound_energy(&params, n);
        let nu = quantization_parameter(&params, e).map_err(|e| numerical("quantization", e))?;
        table
            .rows
            .push(vec![Cell::Int(n as i64), Cell::Real(e), Cell::Real(nu - n as f64)]);
    }
    Ok(Report::ok(table))
}

/// Rows `(r, χ, Re, Im of r^l U_quad / scale, |difference|)`, where `scale`
/// is the constant between `r^l U` and `χ = x^l e^{−x} L(2x)`.
pub fn cmd_wavefunction(cfg: &RunConfig, n: u32, l: u32) -> Result<Report, CliError> {
    let state = QuantumState::new(n, l).map_err(|e| CliError::Usage(e.to_string()))?;
    if !state.is_physical() {
        return Err(CliError::Usage(format!(
            "no physical solution for n ≤ l (n = {n}, l = {l})"
        )));
    }
    let params = PhysicalParams::atomic();
    let c1 = 1.0 / n as f64;
    let scale = connecting_constant(state, &params) / c1.powi(l as i32);
    let grid = cfg.grid.values();
    let rows = par_map(cfg, &grid, |&r_in| {
        let r = to_atomic_length(cfg, r_in);
        let chi = chi_bound(state, &params, r).map_err(|e| numerical("closed form", e))?;
        let u = u_quadrature(state, &params, r, cfg.tolerance)
            .map_err(|e| numerical(&format!("quadrature at r = {r}"), e))?;
        let quad = u * r.powi(l as i32) / scale;
        Ok((r_in, chi, quad))
    })?;
    let max_chi = rows.iter().map(|(_, chi, _)| chi.abs()).fold(0.0, f64::max);
    let mut table = Table::new(vec!["r", "chi_closed", "chi_quad_re", "chi_quad_im", "abs_diff"]);
    table.header.push(("scale_re", Cell::Real(scale.re)));
    table.header.push(("scale_im", Cell::Real(scale.im)));
    let mut worst: (f64, f64) = (0.0, 0.0);
    for (r, chi, quad) in rows {
        let diff = (quad - chi).norm();
        if diff > worst.0 {
            worst = (diff, r);
        }
        table
            .rows
            .push(vec![r.into(), chi.into(), quad.re.into(), quad.im.into(), diff.into()]);
    }
    let bound = WAVEFUNCTION_CHECK * max_chi;
    table.header.push(("max_abs_diff", Cell::Real(worst.0)));
    table.header.push(("allowed_abs_diff", Cell::Real(bound)));
    let failure = (worst.0 >= bound).then(|| {
        format!(
            "closed form and quadrature disagree: abs_diff {:.3e} at r = {} exceeds {:.3e} (1e-8·max|χ| with max|χ| = {:.6e})",
            worst.0, worst.1, bound, max_chi
        )
    });
    Ok(Report { table, failure })
}

/// One row per cataloged contour with its verdicts.
pub fn cmd_contour_report(cfg: &RunConfig, l: u32, nu: f64) -> Result<Report, CliError> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(CliError::Usage(format!("ν must be positive, got {nu}")));
    }
    let params = PhysicalParams::atomic();
    let data = match bound_index(nu) {
        Some(n) => bound_laplace_data(&params, QuantumState { n, l }),
        None => energy_for_nu(&params, nu).and_then(|e| radial_laplace_data(&params, l, e)),
    }
    .map_err(|e| numerical("Laplace data", e))?;
    let catalog = bound_catalog(&data, &CatalogGeometry::default()).map_err(|e| numerical("catalog", e))?;
    let verdicts = par_map(cfg, &catalog, |c| {
        classify_contour(c, &data).map_err(|e| numerical(&format!("classifying {}", c.label), e))
    })?;
    let mut table = Table::new(vec![
        "contour",
        "endpoint_ok",
        "identically_zero",
        "finite_at_zero",
        "finite_at_infinity",
        "rate_re",
        "rate_im",
        "zero_growth",
        "passes",
    ]);
    table.header.push(("l", Cell::Int(l as i64)));
    table.header.push(("nu", Cell::Real(nu)));
    table.header.push(("alpha1_re", Cell::Real(data.exponents[0].re)));
    table.header.push(("alpha2_re", Cell::Real(data.exponents[1].re)));
    for (c, v) in catalog.iter().zip(verdicts) {
        table.rows.push(vec![
            Cell::Text(c.label.clone()),
            v.endpoint_ok.into(),
            v.identically_zero.into(),
            v.finite_at_zero.into(),
            v.finite_at_infinity.into(),
            v.leading_infinity_rate.re.into(),
            v.leading_infinity_rate.im.into(),
            Cell::Real(v.zero_growth_exponent.unwrap_or(f64::NAN)),
            v.passes().into(),
        ]);
    }
    Ok(Report::ok(table))
}

/// `1/Γ(p)` on the keyhole of radius 1 and of radius 2, against the series.
pub fn cmd_gamma_hankel(cfg: &RunConfig, p: Complex64) -> Result<Report, CliError> {
    let branch = hankel_branch_config();
    let eval = |radius: f64| -> Result<Complex64, CliError> {
        let contour = hankel_contour(radius, 1e-3 * radius).map_err(|e| numerical("contour", e))?;
        hankel_gamma_reciprocal_tol(p, &contour, &branch, cfg.tolerance).map_err(|e| numerical("Hankel quadrature", e))
    };
    let value = eval(1.0)?;
    let deformed = eval(2.0)?;
    let reference = rgamma(p);
    let rel = |v: Complex64| {
        let d = (v - reference).norm();
        if reference.norm() == 0.0 {
            d
        } else {
            d / reference.norm()
        }
    };
    let error = rel(value);
    let deformation = (deformed - value).norm() / value.norm().max(f64::MIN_POSITIVE);
    let mut table = Table::new(vec![
        "p_re",
        "p_im",
        "hankel_re",
        "hankel_im",
        "reference_re",
        "reference_im",
        "rel_error",
        "deformation_change",
    ]);
    table.rows.push(vec![
        p.re.into(),
        p.im.into(),
        value.re.into(),
        value.im.into(),
        reference.re.into(),
        reference.im.into(),
        error.into(),
        deformation.into(),
    ]);
    let failure = (error > GAMMA_CHECK || deformation > GAMMA_CHECK)
        .then(|| format!("Hankel value misses 1/Γ({p}): relative error {error:.3e}, radius change {deformation:.3e}"));
    Ok(Report { table, failure })
}

/// Rows `(r, Re U₅, Im U₅, r·|χ|)` with the `r = 0` checks in the header.
pub fn cmd_continuum(cfg: &RunConfig, energy: f64, l: u32) -> Result<Report, CliError> {
    if !(energy > 0.0 && energy.is_finite()) {
        return Err(CliError::Usage(format!("continuum needs E > 0, got {energy}")));
    }
    let params = PhysicalParams::atomic();
    let e = to_atomic_energy(cfg, energy);
    let cont = ContinuumParams::new(&params, e, l).map_err(|e| numerical("continuum parameters", e))?;
    let at_zero = continuum_u5(&cont, 0.0, cfg.tolerance).map_err(|e| numerical("U₅(0)", e))?;
    let literal = continuum_r0_closed_form(&cont).map_err(|e| numerical("closed form", e))?;
    let beta = continuum_r0_beta_form(&cont).map_err(|e| numerical("beta form", e))?;
    let literal_residual = (at_zero - literal).norm() / literal.norm();
    let beta_residual = (at_zero - beta).norm() / beta.norm();

    let grid = cfg.grid.values();
    let values = par_map(cfg, &grid, |&r_in| {
        let r = to_atomic_length(cfg, r_in);
        let u = continuum_u5(&cont, r, cfg.tolerance).map_err(|e| numerical(&format!("U₅ at r = {r}"), e))?;
        Ok((r_in, r, u))
    })?;
    let mut table = Table::new(vec!["r", "u5_re", "u5_im", "r_abs_chi"]);
    let h = &mut table.header;
    h.push(("energy", Cell::Real(energy)));
    h.push(("l", Cell::Int(l as i64)));
    h.push(("u5_r0_quad_re", Cell::Real(at_zero.re)));
    h.push(("u5_r0_quad_im", Cell::Real(at_zero.im)));
    h.push(("u5_r0_closed_form_re", Cell::Real(literal.re)));
    h.push(("u5_r0_closed_form_im", Cell::Real(literal.im)));
    h.push(("closed_form_residual", Cell::Real(literal_residual)));
    h.push(("u5_r0_beta_form_re", Cell::Real(beta.re)));
    h.push(("u5_r0_beta_form_im", Cell::Real(beta.im)));
    h.push(("beta_form_residual", Cell::Real(beta_residual)));
    for (r_in, r, u) in values {
        let chi = u * r.powi(l as i32);
        table
            .rows
            .push(vec![r_in.into(), u.re.into(), u.im.into(), (r * chi.norm()).into()]);
    }
    let failure = (beta_residual > CONTINUUM_CHECK).then(|| {
        format!("U₅(0) quadrature {at_zero} misses the beta-function value {beta} (relative {beta_residual:.3e})")
    });
    Ok(Report { table, failure })
}
