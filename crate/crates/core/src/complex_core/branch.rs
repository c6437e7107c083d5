use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Matching tolerance for branch points and for "lies on a cut".
const POINT_TOL: f64 = 1e-12;

/// Geometry of one cut. Every cut starts at a branch point; a segment cut
/// ends at another branch point, a ray cut at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CutShape {
    Ray { direction: Complex64 },
    Segment { to: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cut {
    pub from: usize,
    pub shape: CutShape,
}

impl Cut {
    pub fn ray(from: usize, direction: Complex64) -> Self {
        Cut {
            from,
            shape: CutShape::Ray {
                direction: direction / direction.norm(),
            },
        }
    }

    pub fn segment(from: usize, to: usize) -> Self {
        Cut {
            from,
            shape: CutShape::Segment { to },
        }
    }
}

/// Phase convention for `(z − branch_points[base])` on the two sides of cut
/// `cut`.
///
/// Walking counterclockwise around the base point, the phase runs from
/// `ccw_start` (on the side the walk leaves the cut) to `ccw_end` (on the side
/// it returns to it), so `ccw_end − ccw_start = 2π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SidePhases {
    pub base: usize,
    pub cut: usize,
    pub ccw_start: f64,
    pub ccw_end: f64,
}

/// Which side of a cut a point on the cut is approached from.
///
/// `Above` is the side whose outward normal has a positive imaginary part;
/// for a vertical cut it is the side with the larger real part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideHint {
    Above,
    Below,
    None,
}

/// Branch points, the cuts joining them, and the phase conventions in force.
///
/// A branch point without an explicit [`SidePhases`] entry uses the default
/// convention: `ccw_start` is the cut angle reduced into `(−2π, 0]`. That
/// reproduces the principal branch for a cut along the negative axis and the
/// `[0, 2π)` branch for a cut along the positive axis. Points that belong to
/// no cut fall back to the principal argument.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchConfig {
    branch_points: Vec<Complex64>,
    cuts: Vec<Cut>,
    phases: Vec<SidePhases>,
}

/// A cut as seen from one of its endpoints.
#[derive(Debug, Clone, Copy)]
struct LocalCut {
    direction: Complex64,
    /// finite length for segment cuts
    length: Option<f64>,
    ccw_start: f64,
}

impl BranchConfig {
    pub fn new(branch_points: Vec<Complex64>, cuts: Vec<Cut>, phases: Vec<SidePhases>) -> Result<Self> {
        let n = branch_points.len();
        for (i, a) in branch_points.iter().enumerate() {
            for b in &branch_points[i + 1..] {
                if (a - b).norm() <= POINT_TOL {
                    return Err(Error::BranchConfig(format!("branch point {a} listed twice")));
                }
            }
        }
        let mut touching = vec![0usize; n];
        for (k, cut) in cuts.iter().enumerate() {
            if cut.from >= n {
                return Err(Error::BranchConfig(format!(
                    "cut {k} starts at unknown branch point {}",
                    cut.from
                )));
            }
            touching[cut.from] += 1;
            match cut.shape {
                CutShape::Ray { direction } => {
                    if !(direction.norm() > 0.0) || !direction.re.is_finite() || !direction.im.is_finite() {
                        return Err(Error::BranchConfig(format!("cut {k} has no direction")));
                    }
                }
                CutShape::Segment { to } => {
                    if to >= n || to == cut.from {
                        return Err(Error::BranchConfig(format!(
                            "cut {k} must end at a different branch point or at infinity"
                        )));
                    }
                    touching[to] += 1;
                }
            }
        }
        if let Some(i) = touching.iter().position(|&t| t > 1) {
            return Err(Error::BranchConfig(format!(
                "branch point {} carries more than one cut",
                branch_points[i]
            )));
        }
        let cfg = BranchConfig {
            branch_points,
            cuts,
            phases,
        };
        cfg.check_crossings()?;
        for (k, ph) in cfg.phases.iter().enumerate() {
            if ph.cut >= cfg.cuts.len() || ph.base >= n {
                return Err(Error::BranchConfig(format!(
                    "phase entry {k} refers to a missing cut or point"
                )));
            }
            if ((ph.ccw_end - ph.ccw_start) - TAU).abs() > 1e-12 {
                return Err(Error::BranchConfig(format!(
                    "phases on the two sides of cut {} differ by {} instead of 2π",
                    ph.cut,
                    ph.ccw_end - ph.ccw_start
                )));
            }
            let dir = cfg.direction_from(ph.cut, ph.base).ok_or_else(|| {
                Error::BranchConfig(format!("cut {} does not end at branch point {}", ph.cut, ph.base))
            })?;
            let mismatch = (ph.ccw_start - dir.arg()).rem_euclid(TAU);
            if mismatch.min(TAU - mismatch) > 1e-9 {
                return Err(Error::BranchConfig(format!(
                    "phase {} is not an angle of cut {} as seen from its branch point",
                    ph.ccw_start, ph.cut
                )));
            }
        }
        Ok(cfg)
    }

    /// No branch points at all: every power uses the principal argument.
    pub fn principal() -> Self {
        BranchConfig {
            branch_points: Vec::new(),
            cuts: Vec::new(),
            phases: Vec::new(),
        }
    }

    /// One branch point with a ray cut and the default phase convention.
    pub fn single_ray(point: Complex64, direction: Complex64) -> Self {
        BranchConfig {
            branch_points: vec![point],
            cuts: vec![Cut::ray(0, direction)],
            phases: Vec::new(),
        }
    }

    pub fn branch_points(&self) -> &[Complex64] {
        &self.branch_points
    }

    pub fn cuts(&self) -> &[Cut] {
        &self.cuts
    }

    pub fn phases(&self) -> &[SidePhases] {
        &self.phases
    }

    fn index_of(&self, point: Complex64) -> Option<usize> {
        self.branch_points
            .iter()
            .position(|b| (b - point).norm() <= POINT_TOL * b.norm().max(1.0))
    }

    fn direction_from(&self, cut: usize, base: usize) -> Option<Complex64> {
        let c = self.cuts[cut];
        match c.shape {
            CutShape::Ray { direction } if c.from == base => Some(direction),
            CutShape::Segment { to } if c.from == base => {
                let d = self.branch_points[to] - self.branch_points[base];
                Some(d / d.norm())
            }
            CutShape::Segment { to } if to == base => {
                let d = self.branch_points[c.from] - self.branch_points[base];
                Some(d / d.norm())
            }
            _ => None,
        }
    }

    fn local_cut(&self, base: usize) -> Option<LocalCut> {
        let (k, cut) = self
            .cuts
            .iter()
            .enumerate()
            .find(|(_, c)| c.from == base || matches!(c.shape, CutShape::Segment { to } if to == base))?;
        let direction = self.direction_from(k, base)?;
        let length = match cut.shape {
            CutShape::Ray { .. } => None,
            CutShape::Segment { to } => Some((self.branch_points[to] - self.branch_points[cut.from]).norm()),
        };
        let ccw_start = self
            .phases
            .iter()
            .find(|p| p.base == base && p.cut == k)
            .map(|p| p.ccw_start)
            .unwrap_or_else(|| default_ccw_start(direction.arg()));
        Some(LocalCut {
            direction,
            length,
            ccw_start,
        })
    }

    /// Argument of `z − base` under this configuration.
    ///
    /// For a segment cut the per-factor discontinuity continues past the far
    /// branch point to infinity; products whose exponents sum to an integer
    /// are continuous across that extension.
    pub fn arg(&self, z: Complex64, base: Complex64, side: SideHint) -> Result<f64> {
        let w = z - base;
        if w.norm() <= POINT_TOL * base.norm().max(1.0) {
            return Err(Error::Domain(format!("argument requested at the branch point {base}")));
        }
        let Some(cut) = self.index_of(base).and_then(|i| self.local_cut(i)) else {
            return principal_arg(w, side, z);
        };
        let rel = w * cut.direction.conj();
        let on_cut = rel.re > 0.0 && rel.im.abs() <= POINT_TOL * w.norm().max(1.0);
        if on_cut {
            let left_is_above = if cut.direction.re.abs() > 1e-15 {
                cut.direction.re > 0.0
            } else {
                -cut.direction.im > 0.0
            };
            return match side {
                SideHint::None => Err(Error::AmbiguousSide { point: z }),
                SideHint::Above if left_is_above => Ok(cut.ccw_start),
                SideHint::Below if !left_is_above => Ok(cut.ccw_start),
                _ => Ok(cut.ccw_start + TAU),
            };
        }
        let _ = cut.length;
        Ok(cut.ccw_start + (w.arg() - cut.direction.arg()).rem_euclid(TAU))
    }

    fn check_crossings(&self) -> Result<()> {
        let shapes: Vec<(Complex64, Complex64, Option<f64>, [usize; 2])> = self
            .cuts
            .iter()
            .map(|c| {
                let a = self.branch_points[c.from];
                match c.shape {
                    CutShape::Ray { direction } => (a, direction, None, [c.from, usize::MAX]),
                    CutShape::Segment { to } => {
                        let d = self.branch_points[to] - a;
                        (a, d / d.norm(), Some(d.norm()), [c.from, to])
                    }
                }
            })
            .collect();
        for i in 0..shapes.len() {
            for j in i + 1..shapes.len() {
                if cuts_cross(shapes[i], shapes[j]) {
                    return Err(Error::BranchConfig(format!("cuts {i} and {j} cross")));
                }
            }
        }
        Ok(())
    }
}

fn default_ccw_start(angle: f64) -> f64 {
    if angle <= 0.0 {
        angle
    } else {
        angle - TAU
    }
}

fn principal_arg(w: Complex64, side: SideHint, z: Complex64) -> Result<f64> {
    if w.re < 0.0 && w.im.abs() <= POINT_TOL * w.norm() {
        return match side {
            SideHint::None => Err(Error::AmbiguousSide { point: z }),
            SideHint::Above => Ok(PI),
            SideHint::Below => Ok(-PI),
        };
    }
    Ok(w.arg())
}

/// Do two cuts (origin, unit direction, optional length, endpoint ids) meet
/// anywhere other than a shared branch point?
fn cuts_cross(
    a: (Complex64, Complex64, Option<f64>, [usize; 2]),
    b: (Complex64, Complex64, Option<f64>, [usize; 2]),
) -> bool {
    let (pa, da, la, ea) = a;
    let (pb, db, lb, eb) = b;
    let la = la.unwrap_or(f64::INFINITY);
    let lb = lb.unwrap_or(f64::INFINITY);
    let shared = ea.iter().any(|x| *x != usize::MAX && eb.contains(x));
    let cross = |u: Complex64, v: Complex64| u.re * v.im - u.im * v.re;
    let denom = cross(da, db);
    let scale = pa.norm().max(pb.norm()).max(1.0);
    if denom.abs() <= 1e-14 {
        // parallel: only collinear overlap matters
        if cross(pb - pa, da).abs() > POINT_TOL * scale {
            return false;
        }
        // project b's extent onto a's axis
        let s0 = ((pb - pa) * da.conj()).re;
        let dir = (db * da.conj()).re.signum();
        let (lo, hi) = if lb.is_infinite() {
            if dir > 0.0 {
                (s0, f64::INFINITY)
            } else {
                (f64::NEG_INFINITY, s0)
            }
        } else {
            let s1 = s0 + dir * lb;
            (s0.min(s1), s0.max(s1))
        };
        let overlap_lo = lo.max(0.0);
        let overlap_hi = hi.min(la);
        let tol = POINT_TOL * scale;
        if overlap_hi - overlap_lo > tol {
            return true;
        }
        // touching at a single point is allowed only at a shared branch point
        return overlap_hi >= overlap_lo - tol && !shared;
    }
    let diff = pb - pa;
    let s = cross(diff, db) / denom;
    let t = cross(diff, da) / denom;
    let tol = POINT_TOL * scale;
    if s < -tol || t < -tol || s > la + tol || t > lb + tol {
        return false;
    }
    let at_endpoint_a = s.abs() <= tol || (la.is_finite() && (s - la).abs() <= tol);
    let at_endpoint_b = t.abs() <= tol || (lb.is_finite() && (t - lb).abs() <= tol);
    !(shared && at_endpoint_a && at_endpoint_b)
}

/// `(z − base)^exponent` with the argument fixed by `cfg`.
///
/// Integer exponents give the plain integer power, whatever `cfg` and `side`.
pub fn branch_power(
    z: Complex64,
    base_point: Complex64,
    exponent: Complex64,
    cfg: &BranchConfig,
    side_hint: SideHint,
) -> Result<Complex64> {
    let w = z - base_point;
    if w.norm() <= POINT_TOL * base_point.norm().max(1.0) {
        return Err(Error::Domain(format!("power evaluated at its base point {base_point}")));
    }
    if let Some(k) = integer_exponent(exponent) {
        return Ok(w.powi(k));
    }
    let phi = cfg.arg(z, base_point, side_hint)?;
    Ok(power_with_phase(w.norm(), phi, exponent))
}

/// `exp(exponent · (ln modulus + i·phase))`.
pub fn power_with_phase(modulus: f64, phase: f64, exponent: Complex64) -> Complex64 {
    (exponent * Complex64::new(modulus.ln(), phase)).exp()
}

/// `Some(k)` when `exponent` is an exact integer that fits an `i32`.
pub fn integer_exponent(exponent: Complex64) -> Option<i32> {
    (exponent.im == 0.0 && exponent.re.fract() == 0.0 && exponent.re.abs() <= i32::MAX as f64)
        .then_some(exponent.re as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn negative_axis() -> BranchConfig {
        BranchConfig::single_ray(c(0.0, 0.0), c(-1.0, 0.0))
    }

    #[test]
    fn integer_power_ignores_the_cut() {
        let v = branch_power(c(2.0, 0.0), c(0.0, 0.0), c(3.0, 0.0), &negative_axis(), SideHint::None).unwrap();
        assert_eq!(v, c(8.0, 0.0));
    }

    #[test]
    fn square_root_from_either_side_of_the_cut() {
        let cfg = negative_axis();
        let above = branch_power(c(-1.0, 0.0), c(0.0, 0.0), c(0.5, 0.0), &cfg, SideHint::Above).unwrap();
        let below = branch_power(c(-1.0, 0.0), c(0.0, 0.0), c(0.5, 0.0), &cfg, SideHint::Below).unwrap();
        assert!((above - c(0.0, 1.0)).norm() < 1e-15);
        assert!((below - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn on_cut_without_hint_is_ambiguous() {
        let err = branch_power(c(-1.0, 0.0), c(0.0, 0.0), c(0.5, 0.0), &negative_axis(), SideHint::None);
        assert!(matches!(err, Err(Error::AmbiguousSide { .. })));
    }

    #[test]
    fn base_point_is_a_domain_error() {
        let err = branch_power(c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0), &negative_axis(), SideHint::Above);
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn positive_axis_cut_uses_zero_to_two_pi() {
        let cfg = BranchConfig::single_ray(c(1.0, 0.0), c(1.0, 0.0));
        assert_eq!(cfg.arg(c(2.0, 0.0), c(1.0, 0.0), SideHint::Above).unwrap(), 0.0);
        assert_eq!(cfg.arg(c(2.0, 0.0), c(1.0, 0.0), SideHint::Below).unwrap(), TAU);
        assert!((cfg.arg(c(0.0, 0.0), c(1.0, 0.0), SideHint::None).unwrap() - PI).abs() < 1e-15);
    }

    #[test]
    fn vertical_segment_cut_matches_the_continuum_convention() {
        // c1 = -i, c2 = +i, cut between them
        let cfg = BranchConfig::new(vec![c(0.0, -1.0), c(0.0, 1.0)], vec![Cut::segment(0, 1)], vec![]).unwrap();
        let right = c(0.0, 0.0);
        // right side: +π/2 for (z + i), −π/2 for (z − i)
        let a1 = cfg.arg(right, c(0.0, -1.0), SideHint::Above).unwrap();
        let a2 = cfg.arg(right, c(0.0, 1.0), SideHint::Above).unwrap();
        assert!((a1 - PI / 2.0).abs() < 1e-15 && (a2 + PI / 2.0).abs() < 1e-15);
        let b1 = cfg.arg(right, c(0.0, -1.0), SideHint::Below).unwrap();
        let b2 = cfg.arg(right, c(0.0, 1.0), SideHint::Below).unwrap();
        assert!((b1 + 1.5 * PI).abs() < 1e-15 && (b2 - 1.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn side_phases_must_differ_by_two_pi() {
        let bad = BranchConfig::new(
            vec![c(0.0, 0.0)],
            vec![Cut::ray(0, c(-1.0, 0.0))],
            vec![SidePhases {
                base: 0,
                cut: 0,
                ccw_start: -PI,
                ccw_end: 0.5 * PI,
            }],
        );
        assert!(matches!(bad, Err(Error::BranchConfig(_))));
        let shifted = BranchConfig::new(
            vec![c(0.0, 0.0)],
            vec![Cut::ray(0, c(-1.0, 0.0))],
            vec![SidePhases {
                base: 0,
                cut: 0,
                ccw_start: PI,
                ccw_end: 3.0 * PI,
            }],
        )
        .unwrap();
        assert!((shifted.arg(c(1.0, 0.0), c(0.0, 0.0), SideHint::None).unwrap() - TAU).abs() < 1e-15);
    }

    #[test]
    fn crossing_cuts_are_rejected() {
        let bad = BranchConfig::new(
            vec![c(-1.0, 0.0), c(0.0, -1.0)],
            vec![Cut::ray(0, c(1.0, 0.0)), Cut::ray(1, c(0.0, 1.0))],
            vec![],
        );
        assert!(matches!(bad, Err(Error::BranchConfig(_))));
        let fine = BranchConfig::new(
            vec![c(1.0, 0.0), c(-1.0, 0.0)],
            vec![Cut::ray(0, c(1.0, 0.0)), Cut::ray(1, c(-1.0, 0.0))],
            vec![],
        );
        assert!(fine.is_ok());
        let overlapping = BranchConfig::new(
            vec![c(1.0, 0.0), c(-1.0, 0.0)],
            vec![Cut::ray(0, c(-1.0, 0.0)), Cut::ray(1, c(-1.0, 0.0))],
            vec![],
        );
        assert!(overlapping.is_err());
    }
}
