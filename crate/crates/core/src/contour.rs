//! Quadrature of `e^{xz} Π_j (z − c_j)^{β_j}` along a [`Path`].
//!
//! Each factor's phase is fixed once, at the reference point of the first
//! segment, by the [`BranchConfig`]; everywhere else it is continued along the
//! path. Rays are cut off where the analytic tail bound drops below the
//! tolerance. A segment that starts or ends on a branch point gets a power
//! substitution that smooths the algebraic endpoint singularity.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::complex_core::{integer_exponent, BranchConfig, Local, Path, PhaseTrack, Segment, SideHint, CONTINUITY_TOL};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_pieces, QuadOptions};

/// One factor `(z − base)^exponent` of the integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerFactor {
    pub base: Complex64,
    pub exponent: Complex64,
}

impl PowerFactor {
    pub fn new(base: Complex64, exponent: Complex64) -> Self {
        PowerFactor { base, exponent }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrateOptions {
    /// Error target `tol·(1 + |I|)`, with `I` measured after the shift below.
    pub tol: f64,
    /// Only consulted when the first segment's reference point lies on a cut.
    pub anchor_side: SideHint,
    /// The integrand is evaluated as `e^{x(z − shift)}…` and the result
    /// multiplied back by `e^{x·shift}`, so the tolerance is relative to the
    /// natural size `e^{x·shift}` of the integral.
    pub exp_shift: f64,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        IntegrateOptions {
            tol: 1e-10,
            anchor_side: SideHint::None,
            exp_shift: 0.0,
        }
    }
}

impl IntegrateOptions {
    pub fn with_tol(tol: f64) -> Self {
        IntegrateOptions {
            tol,
            ..Default::default()
        }
    }

    pub fn shifted(self, exp_shift: f64) -> Self {
        IntegrateOptions { exp_shift, ..self }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContourValue {
    /// One value per requested `x`.
    pub values: Vec<Complex64>,
    /// Quadrature error estimate plus the discarded ray tails, in units of
    /// the largest `e^{x·shift}`.
    pub error: f64,
    pub evaluations: usize,
}

/// Map from the quadrature variable `w ∈ [0, 1]` to a local coordinate.
#[derive(Debug, Clone, Copy)]
struct Piece {
    seg: usize,
    from: Local,
    to: Local,
    /// `u = from + (to − from)·w^m`: clusters nodes at `from`.
    power: u32,
    /// −1 when the piece runs against the path's direction.
    sign: f64,
    /// factor whose branch point sits at `from` (straight segments only)
    root: Option<usize>,
}

impl Piece {
    fn new(seg: &Segment, index: usize, from: Local, to: Local, power: u32) -> Self {
        let forward = match *seg {
            Segment::Line { .. } => true,
            Segment::Arc {
                start_angle, end_angle, ..
            } => end_angle > start_angle,
            Segment::Ray { inbound, .. } => !inbound,
        };
        let sign = if (to > from) == forward { 1.0 } else { -1.0 };
        Piece {
            seg: index,
            from,
            to,
            power,
            sign,
            root: None,
        }
    }

    fn at_root(mut self, root: Option<usize>) -> Self {
        self.root = root;
        self
    }

    /// Local coordinate, its offset from `from`, and `du/dw`.
    fn local(&self, w: f64) -> (Local, f64, f64) {
        let span = self.to - self.from;
        if self.power <= 1 {
            (self.from + span * w, span * w, self.sign * span)
        } else {
            let m = self.power as i32;
            let offset = span * w.powi(m);
            (self.from + offset, offset, self.sign * span * m as f64 * w.powi(m - 1))
        }
    }
}

fn exponent_of_piece(beta: Complex64) -> u32 {
    if let Some(k) = integer_exponent(beta) {
        if k >= 0 {
            return 1;
        }
    }
    let m = (2.0 / (beta.re + 1.0)).ceil();
    m.clamp(2.0, 40.0) as u32
}

/// `dz/du` for the local coordinate of a segment.
fn dz_du(seg: &Segment, u: Local) -> Complex64 {
    match *seg {
        Segment::Line { from, to } => to - from,
        Segment::Arc { radius, .. } => Complex64::i() * Complex64::from_polar(radius, u),
        Segment::Ray { direction, .. } => direction,
    }
}

/// Phase of `z − base` along `path`, fixed by `cfg` at the reference point
/// of the first segment.
pub(crate) fn factor_track(
    path: &Path,
    cfg: &BranchConfig,
    base: Complex64,
    anchor_side: SideHint,
) -> Result<PhaseTrack> {
    let first = &path.segments()[0];
    let anchor = first.point_local(first.reference_local());
    let phase = cfg.arg(anchor, base, anchor_side)?;
    PhaseTrack::from_reference(path, base, 0, phase)
}

fn tracks(
    path: &Path,
    cfg: &BranchConfig,
    factors: &[PowerFactor],
    anchor_side: SideHint,
) -> Result<Vec<Option<PhaseTrack>>> {
    factors
        .iter()
        .map(|f| {
            if integer_exponent(f.exponent).is_some() {
                return Ok(None);
            }
            factor_track(path, cfg, f.base, anchor_side).map(Some)
        })
        .collect()
}

/// Which branch points sit at the start/end of the path.
fn attached(path: &Path, factors: &[PowerFactor]) -> (Option<usize>, Option<usize>) {
    let near = |p: Option<Complex64>| {
        p.and_then(|p| {
            factors
                .iter()
                .position(|f| (f.base - p).norm() <= CONTINUITY_TOL * f.base.norm().max(1.0))
        })
    };
    (near(path.start()), near(path.end()))
}

/// Whether each end of the path is integrable for these exponents.
pub fn check_endpoints(path: &Path, factors: &[PowerFactor]) -> Result<()> {
    let (s, e) = attached(path, factors);
    for j in [s, e].into_iter().flatten() {
        let beta = factors[j].exponent;
        let nonneg_int = integer_exponent(beta).is_some_and(|k| k >= 0);
        if !nonneg_int && beta.re <= -1.0 {
            return Err(Error::Integrability(format!(
                "exponent {beta} at the endpoint {} gives a non-integrable singularity",
                factors[j].base
            )));
        }
    }
    Ok(())
}

/// Tail bound data for a ray: `|integrand| ≤ C s^B e^{−κ s}` for `s ≥ s0`.
struct TailModel {
    c: f64,
    b: f64,
    kappa: f64,
    s0: f64,
}

impl TailModel {
    fn bound(&self, s: f64) -> f64 {
        if self.kappa > 0.0 {
            2.0 * self.c * s.powf(self.b) * (-self.kappa * s).exp() / self.kappa
        } else {
            self.c * s.powf(self.b + 1.0) / (-self.b - 1.0)
        }
    }

    /// Smallest power-of-two multiple of `s0` where the tail is below `target`.
    fn cutoff(&self, target: f64) -> Result<f64> {
        let mut s = self.s0;
        if self.kappa > 0.0 {
            s = s.max(2.0 * self.b.max(0.0) / self.kappa);
        }
        for _ in 0..200 {
            if self.bound(s) <= target {
                return Ok(s);
            }
            s *= 2.0;
        }
        Err(Error::Integrability("ray tail does not decay".into()))
    }
}

fn tail_model(
    seg: &Segment,
    track: &[Option<PhaseTrack>],
    seg_idx: usize,
    factors: &[PowerFactor],
    x_min: f64,
    x_max: f64,
    shift: f64,
) -> Result<TailModel> {
    let Segment::Ray { anchor, direction, .. } = *seg else {
        unreachable!("tail model requested for a finite segment");
    };
    let reach = factors.iter().map(|f| (anchor - f.base).norm()).fold(0.0, f64::max);
    let s0 = 2.0 * reach + 1.0;
    // |e^{xz}| = e^{x Re a} e^{x Re(d) s}; use the slower decay and larger prefactor
    let kappa = -x_min * direction.re;
    let kappa = kappa.min(-x_max * direction.re);
    let lead = anchor.re - shift;
    let x_for_c = if lead >= 0.0 { x_max } else { x_min };
    let mut c = (x_for_c * lead).exp();
    let mut b = 0.0;
    for (f, tr) in factors.iter().zip(track) {
        let beta = f.exponent;
        b += beta.re;
        c *= if beta.re >= 0.0 {
            1.5f64.powf(beta.re)
        } else {
            0.5f64.powf(beta.re)
        };
        if let Some(tr) = tr {
            let p0 = tr.at_local(seg_idx, s0)?;
            let p1 = tr.at_local(seg_idx, f64::INFINITY)?;
            c *= (-beta.im * p0).exp().max((-beta.im * p1).exp());
        }
    }
    if kappa <= 0.0 && b >= -1.0 {
        return Err(Error::Integrability(format!(
            "integrand does not decay along the ray from {anchor} in direction {direction} for x = {x_min}"
        )));
    }
    Ok(TailModel { c, b, kappa, s0 })
}

/// Integrate `e^{xz} Π_j (z − c_j)^{β_j} dz` along `path` for every `x` in
/// `xs` at once.
///
/// Rays are truncated once the tail bound is below `tol·1e−3`.
pub fn integrate_along(
    path: &Path,
    cfg: &BranchConfig,
    factors: &[PowerFactor],
    xs: &[f64],
    opts: &IntegrateOptions,
) -> Result<ContourValue> {
    let tol = opts.tol;
    let shift = opts.exp_shift;
    if xs.is_empty() {
        return Err(Error::InvalidArgument("no evaluation points".into()));
    }
    check_endpoints(path, factors)?;
    let track = tracks(path, cfg, factors, opts.anchor_side)?;
    let (start_root, end_root) = attached(path, factors);
    let x_min = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let x_max = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let segs = path.segments();
    let n = segs.len();

    let mut pieces: Vec<Piece> = Vec::new();
    let mut tail_error = 0.0;
    for (k, seg) in segs.iter().enumerate() {
        let root_at_start = if k == 0 { start_root } else { None };
        let root_at_end = if k + 1 == n { end_root } else { None };
        let m_start = root_at_start.map_or(1, |j| exponent_of_piece(factors[j].exponent));
        let m_end = root_at_end.map_or(1, |j| exponent_of_piece(factors[j].exponent));
        match *seg {
            Segment::Line { .. } => {
                if m_start > 1 && m_end > 1 {
                    pieces.push(Piece::new(seg, k, 0.0, 0.5, m_start).at_root(root_at_start));
                    pieces.push(Piece::new(seg, k, 1.0, 0.5, m_end).at_root(root_at_end));
                } else if m_end > 1 {
                    pieces.push(Piece::new(seg, k, 1.0, 0.0, m_end).at_root(root_at_end));
                } else {
                    pieces.push(Piece::new(seg, k, 0.0, 1.0, m_start).at_root(root_at_start));
                }
            }
            Segment::Arc {
                start_angle, end_angle, ..
            } => {
                let parts = ((end_angle - start_angle).abs() / FRAC_PI_2).ceil().max(1.0) as usize;
                let step = (end_angle - start_angle) / parts as f64;
                for p in 0..parts {
                    let (a, b) = (start_angle + step * p as f64, start_angle + step * (p + 1) as f64);
                    if p == 0 && m_start > 1 {
                        pieces.push(Piece::new(seg, k, a, b, m_start));
                    } else if p + 1 == parts && m_end > 1 {
                        pieces.push(Piece::new(seg, k, b, a, m_end));
                    } else {
                        pieces.push(Piece::new(seg, k, a, b, 1));
                    }
                }
            }
            Segment::Ray { inbound, .. } => {
                let model = tail_model(seg, &track, k, factors, x_min, x_max, shift)?;
                let cut = model.cutoff(tol * 1e-3)?;
                tail_error += model.bound(cut);
                // geometric breakpoints resolve the scale near the anchor
                let mut bounds = vec![cut];
                while bounds.len() < 64 && *bounds.last().unwrap() > 0.25 {
                    let next = bounds.last().unwrap() * 0.5;
                    bounds.push(next);
                }
                bounds.push(0.0);
                bounds.reverse();
                let (m_anchor, root) = if inbound {
                    (m_end, root_at_end)
                } else {
                    (m_start, root_at_start)
                };
                for w in bounds.windows(2) {
                    if w[0] == 0.0 {
                        pieces.push(Piece::new(seg, k, w[0], w[1], m_anchor).at_root(root));
                    } else {
                        pieces.push(Piece::new(seg, k, w[0], w[1], 1));
                    }
                }
            }
        }
    }

    let dim = xs.len();
    let ranges: Vec<(f64, f64)> = pieces.iter().map(|_| (0.0, 1.0)).collect();
    let res = integrate_pieces(
        &ranges,
        dim,
        |pi, w, out| {
            let piece = pieces[pi];
            let seg = &segs[piece.seg];
            let (u, offset, du_dw) = piece.local(w);
            let z = seg.point_local(u);
            let mut log_alg = Complex64::default();
            let mut alg_int = Complex64::new(1.0, 0.0);
            for (j, (f, tr)) in factors.iter().zip(&track).enumerate() {
                // distance to an attached branch point without cancellation
                let dz = if piece.root == Some(j) {
                    dz_du(seg, u) * offset
                } else {
                    z - f.base
                };
                if dz.norm() == 0.0 {
                    // underflow of the endpoint substitution: the weighted
                    // integrand vanishes there
                    out.iter_mut().for_each(|o| *o = Complex64::default());
                    return;
                }
                match tr {
                    None => alg_int *= dz.powi(integer_exponent(f.exponent).unwrap()),
                    Some(tr) => {
                        let phi = tr.at_local_unchecked(piece.seg, u);
                        log_alg += f.exponent * Complex64::new(dz.norm().ln(), phi);
                    }
                }
            }
            let jac = dz_du(seg, u) * du_dw;
            for (o, &x) in out.iter_mut().zip(xs) {
                *o = (log_alg + x * (z - shift)).exp() * alg_int * jac;
            }
        },
        &QuadOptions::with_tol(tol),
    );
    let res = res?;
    let scale: Vec<f64> = xs.iter().map(|x| (x * shift).exp()).collect();
    let values: Vec<Complex64> = res.values.iter().zip(&scale).map(|(v, s)| v * s).collect();
    let error = (res.error + tail_error) * scale.iter().cloned().fold(0.0, f64::max);
    if !res.converged {
        return Err(Error::Accuracy {
            estimate: values[0],
            error_bound: error,
        });
    }
    Ok(ContourValue {
        values,
        error,
        evaluations: res.evaluations,
    })
}
