use std::f64::consts::{FRAC_PI_4, TAU};

use num_complex::Complex64;

use super::LaplaceData;
use crate::complex_core::{integer_exponent, phase_continue, BranchConfig, Cut, Path, Segment};
use crate::contour::{check_endpoints, integrate_along, IntegrateOptions};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContourKind {
    RayFromRoot,
    HankelKeyhole,
    ClosedLoop,
    Dumbbell,
    RootToRoot,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContourCandidate {
    pub path: Path,
    pub cfg: BranchConfig,
    pub kind: ContourKind,
    pub label: String,
}

impl ContourCandidate {
    /// Checks that the path's topology matches `kind`.
    pub fn new(path: Path, cfg: BranchConfig, kind: ContourKind, label: impl Into<String>) -> Result<Self> {
        let (s, e) = (path.start(), path.end());
        let ok = match kind {
            ContourKind::ClosedLoop | ContourKind::Dumbbell => path.is_closed(),
            ContourKind::RayFromRoot => s.is_some() != e.is_some(),
            ContourKind::HankelKeyhole => s.is_none() && e.is_none(),
            ContourKind::RootToRoot => s.is_some() && e.is_some() && !path.is_closed(),
        };
        if !ok {
            return Err(Error::Contour(format!("path topology does not match {kind:?}")));
        }
        Ok(ContourCandidate {
            path,
            cfg,
            kind,
            label: label.into(),
        })
    }
}

/// Sizes of the cataloged contours, relative to `d = |c₁ − c₂|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogGeometry {
    pub hankel_radius: f64,
    /// leg offset as a fraction of the keyhole radius
    pub hankel_offset: f64,
    pub loop_radius: f64,
    pub stadium_distance: f64,
    /// Rays from c₁ leave at this angle to the direction of c₂, which keeps
    /// them clear of c₂ and its cut.
    pub ray_tilt: f64,
}

impl Default for CatalogGeometry {
    fn default() -> Self {
        CatalogGeometry {
            hankel_radius: 0.25,
            hankel_offset: 1e-3,
            loop_radius: 0.5,
            stadium_distance: 0.25,
            ray_tilt: -FRAC_PI_4,
        }
    }
}

impl CatalogGeometry {
    /// Shrinks the keyhole to radius at most `1/r` so that `e^{rz}` does not
    /// swing by more than `e^{±1}` around it. `d` is the root separation.
    pub fn for_radius(self, r: f64, d: f64) -> Self {
        let mut g = self;
        if r > 0.0 && d > 0.0 {
            g.hankel_radius = g.hankel_radius.min(1.0 / (r * d));
        }
        g
    }
}

fn two_roots(data: &LaplaceData) -> Result<(Complex64, Complex64)> {
    match data.roots.as_slice() {
        [c1, c2] => Ok((*c1, *c2)),
        _ => Err(Error::Unsupported(format!(
            "the contour catalog needs exactly two roots, found {}",
            data.roots.len()
        ))),
    }
}

fn unit(z: Complex64) -> Complex64 {
    z / z.norm()
}

/// Both cuts run off to infinity away from the other root: `c₁`'s with phases
/// in `[0, 2π)` when it points along the positive axis, `c₂`'s with phases in
/// `(−π, π]` when it points along the negative axis.
pub fn outward_branch_config(data: &LaplaceData) -> Result<BranchConfig> {
    let (c1, c2) = two_roots(data)?;
    let u = unit(c2 - c1);
    BranchConfig::new(vec![c1, c2], vec![Cut::ray(0, -u), Cut::ray(1, u)], vec![])
}

/// One cut joining the two roots.
pub fn segment_branch_config(data: &LaplaceData) -> Result<BranchConfig> {
    let (c1, c2) = two_roots(data)?;
    BranchConfig::new(vec![c1, c2], vec![Cut::segment(0, 1)], vec![])
}

pub fn ray_from_root(
    data: &LaplaceData,
    root: usize,
    direction: Complex64,
    cfg: BranchConfig,
    label: &str,
) -> Result<ContourCandidate> {
    let path = Path::new(vec![Segment::ray_out(data.roots[root], direction)])?;
    ContourCandidate::new(path, cfg, ContourKind::RayFromRoot, label)
}

pub fn hankel_around(
    data: &LaplaceData,
    root: usize,
    radius: f64,
    offset: f64,
    cut_direction: Complex64,
    cfg: BranchConfig,
    label: &str,
) -> Result<ContourCandidate> {
    let path = Path::hankel(data.roots[root], radius, offset, cut_direction)?;
    ContourCandidate::new(path, cfg, ContourKind::HankelKeyhole, label)
}

pub fn loop_around(center: Complex64, radius: f64, cfg: BranchConfig, label: &str) -> Result<ContourCandidate> {
    ContourCandidate::new(Path::circle(center, radius)?, cfg, ContourKind::ClosedLoop, label)
}

pub fn root_to_root(
    data: &LaplaceData,
    from: usize,
    to: usize,
    cfg: BranchConfig,
    label: &str,
) -> Result<ContourCandidate> {
    let path = Path::new(vec![Segment::line(data.roots[from], data.roots[to])])?;
    ContourCandidate::new(path, cfg, ContourKind::RootToRoot, label)
}

pub fn stadium_around(
    data: &LaplaceData,
    a: usize,
    b: usize,
    distance: f64,
    cfg: BranchConfig,
    label: &str,
) -> Result<ContourCandidate> {
    let path = Path::stadium(data.roots[a], data.roots[b], distance)?;
    ContourCandidate::new(path, cfg, ContourKind::Dumbbell, label)
}

/// The contours examined for a two-root problem.
///
/// With non-integer exponents: γ₁ (ray from c₁), γ₂ (keyhole around c₂),
/// γ₃ (segment c₁ → c₂) and γ₄ (loop around the cut joining the roots).
/// With all exponents integer the integrand is single valued and the
/// candidates are γ_a (ray from c₂ away from c₁), γ_b (ray from c₁), γ_c
/// (segment c₁ → c₂) and γ_f (circle around c₂).
pub fn bound_catalog(data: &LaplaceData, geom: &CatalogGeometry) -> Result<Vec<ContourCandidate>> {
    let (c1, c2) = two_roots(data)?;
    let d = (c1 - c2).norm();
    let u = unit(c2 - c1);
    let tilted = u * Complex64::from_polar(1.0, geom.ray_tilt);
    let single_valued = data.exponents.iter().all(|a| integer_exponent(*a).is_some());
    let cfg = outward_branch_config(data)?;
    if single_valued {
        Ok(vec![
            ray_from_root(data, 1, u, cfg.clone(), "γ_a")?,
            ray_from_root(data, 0, tilted, cfg.clone(), "γ_b")?,
            root_to_root(data, 0, 1, cfg.clone(), "γ_c")?,
            loop_around(c2, geom.loop_radius * d, cfg, "γ_f")?,
        ])
    } else {
        let radius = geom.hankel_radius * d;
        Ok(vec![
            ray_from_root(data, 0, tilted, cfg.clone(), "γ₁")?,
            hankel_around(data, 1, radius, geom.hankel_offset * radius, u, cfg.clone(), "γ₂")?,
            root_to_root(data, 0, 1, cfg, "γ₃")?,
            stadium_around(
                data,
                0,
                1,
                geom.stadium_distance * d,
                segment_branch_config(data)?,
                "γ₄",
            )?,
        ])
    }
}

fn endpoint_ok(end: Option<Complex64>, far: Option<Complex64>, data: &LaplaceData) -> bool {
    match (end, far) {
        (Some(z), _) => data.root_index(z).is_some_and(|j| data.exponents[j].re > 0.0),
        // an infinite end: e^{zr} must decay along the ray
        (None, Some(direction)) => direction.re < 0.0,
        (None, None) => false,
    }
}

fn far_direction(seg: &Segment) -> Option<Complex64> {
    match *seg {
        Segment::Ray { direction, .. } => Some(direction),
        _ => None,
    }
}

/// Whether `V(z) = e^{zr} Π (z − c_j)^{α_j}` takes equal values at both ends.
///
/// Closed paths always qualify; a finite end must sit on a root with
/// `Re α > 0`; an infinite end must run off where `Re z → −∞`.
pub fn endpoint_condition_satisfied(c: &ContourCandidate, data: &LaplaceData, r: f64) -> bool {
    if !(r > 0.0) {
        return false;
    }
    if c.path.is_closed() {
        return true;
    }
    let segs = c.path.segments();
    let first = &segs[0];
    let last = &segs[segs.len() - 1];
    endpoint_ok(c.path.start(), far_direction(first), data) && endpoint_ok(c.path.end(), far_direction(last), data)
}

/// `∫_C e^{rz} R(z) dz`; `tol` bounds the error by `tol·(1 + |U|)`.
pub fn evaluate_contour_integral(c: &ContourCandidate, data: &LaplaceData, r: f64, tol: f64) -> Result<Complex64> {
    Ok(evaluate_many(c, data, &[r], tol)?[0])
}

/// The same contour at several `r`, sharing quadrature nodes.
pub fn evaluate_many(c: &ContourCandidate, data: &LaplaceData, rs: &[f64], tol: f64) -> Result<Vec<Complex64>> {
    if rs.iter().any(|r| !(*r >= 0.0)) {
        return Err(Error::InvalidArgument("r must be nonnegative".into()));
    }
    let probe = rs.iter().cloned().fold(f64::INFINITY, f64::min).max(f64::MIN_POSITIVE);
    if !endpoint_condition_satisfied(c, data, probe) {
        return Err(Error::Contour(format!(
            "{} does not satisfy the endpoint condition",
            c.label
        )));
    }
    // measure the tolerance against the dominant exponential
    let shift = active_roots(c, data)?
        .iter()
        .map(|&j| data.roots[j].re)
        .fold(f64::NEG_INFINITY, f64::max);
    let opts = IntegrateOptions::with_tol(tol).shifted(if shift.is_finite() { shift } else { 0.0 });
    Ok(integrate_along(&c.path, &c.cfg, &data.factors(), rs, &opts)?.values)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub endpoint_ok: bool,
    /// No singularity contributes, so the integral vanishes for every `r`.
    pub identically_zero: bool,
    pub finite_at_zero: bool,
    pub finite_at_infinity: bool,
    /// Root with the largest real part among the contributing ones.
    pub leading_infinity_rate: Complex64,
    /// Fitted `g` in `|U| ∼ r^{−g}` as `r → 0`, when probed.
    pub zero_growth_exponent: Option<f64>,
}

impl Classification {
    /// Finite, nonzero solution at both ends.
    pub fn passes(&self) -> bool {
        self.endpoint_ok && !self.identically_zero && self.finite_at_zero && self.finite_at_infinity
    }
}

pub const ZERO_PROBES: [f64; 3] = [1e-2, 1e-3, 1e-4];
const GROWTH_THRESHOLD: f64 = 0.1;
// the slope fit needs a few digits, not ten
const PROBE_TOL: f64 = 1e-6;

/// Roots that contribute to the integral: attached endpoints, and enclosed
/// roots that are genuine singularities.
fn active_roots(c: &ContourCandidate, data: &LaplaceData) -> Result<Vec<usize>> {
    let mut active = Vec::new();
    let ends = [c.path.start(), c.path.end()];
    for (j, root) in data.roots.iter().enumerate() {
        let attached = ends
            .iter()
            .flatten()
            .any(|e| (e - root).norm() <= 1e-12 * root.norm().max(1.0));
        if attached {
            active.push(j);
            continue;
        }
        let beta = data.exponents[j] - 1.0;
        if integer_exponent(beta).is_some_and(|k| k >= 0) {
            continue;
        }
        let track = phase_continue(&c.path, *root, 0.0)?;
        let winding = (track.total_change()? / TAU).round();
        if winding != 0.0 {
            active.push(j);
        }
    }
    Ok(active)
}

/// Verdicts on the behavior of `U(r)` as `r → 0` and `r → ∞`.
///
/// The large-`r` verdict is analytic: the contributing root with the largest
/// real part sets the growth `e^{c r}`. The small-`r` verdict fits the
/// growth exponent of `|U|` over [`ZERO_PROBES`]. A quadrature failure at a
/// probe is reported as inconclusive.
pub fn classify_contour(c: &ContourCandidate, data: &LaplaceData) -> Result<Classification> {
    let endpoint_ok = endpoint_condition_satisfied(c, data, 1.0);
    let active = active_roots(c, data)?;
    let identically_zero = active.is_empty();
    let leading = active
        .iter()
        .map(|&j| data.roots[j])
        .max_by(|a, b| a.re.total_cmp(&b.re))
        .unwrap_or_default();
    let finite_at_infinity = identically_zero || leading.re <= 0.0;

    let (finite_at_zero, zero_growth_exponent) = if identically_zero {
        (true, None)
    } else if check_endpoints(&c.path, &data.factors()).is_err() {
        // the integral does not exist for any r
        (false, None)
    } else {
        // one probe at a time: |U| can span many decades across them
        let probe = |x: f64| {
            integrate_along(
                &c.path,
                &c.cfg,
                &data.factors(),
                &[x],
                &IntegrateOptions::with_tol(PROBE_TOL),
            )
            .map(|v| v.values[0])
        };
        match ZERO_PROBES.iter().map(|&x| probe(x)).collect::<Result<Vec<_>>>() {
            Ok(values) => {
                let g = growth_exponent(&ZERO_PROBES, &values);
                (g <= GROWTH_THRESHOLD, Some(g))
            }
            Err(Error::Integrability(_)) => (false, None),
            Err(e) => return Err(Error::Inconclusive(format!("small-r probe of {} failed: {e}", c.label))),
        }
    };
    Ok(Classification {
        endpoint_ok,
        identically_zero,
        finite_at_zero,
        finite_at_infinity,
        leading_infinity_rate: leading,
        zero_growth_exponent,
    })
}

/// Least-squares slope of `ln|U|` against `−ln r`.
fn growth_exponent(rs: &[f64], values: &[Complex64]) -> f64 {
    let xs: Vec<f64> = rs.iter().map(|r| -r.ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.norm().max(f64::MIN_POSITIVE).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
