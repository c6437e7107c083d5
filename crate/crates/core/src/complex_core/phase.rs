use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::path::{Local, Path, Segment};
use crate::error::{Error, Result};

/// Relative distance below which a point counts as lying on a segment.
const HIT_TOL: f64 = 1e-14;

fn hit(point: Complex64, base: Complex64) -> Error {
    Error::Domain(format!("path passes through the base point {base} (at {point})"))
}

/// Change of `arg(z − p)` along the straight piece from `a` to `b`.
/// Either end may be a direction at infinity (`Far`).
#[derive(Clone, Copy)]
enum StraightEnd {
    At(Complex64),
    Far(Complex64),
}

fn straight_change(a: StraightEnd, b: StraightEnd, p: Complex64) -> Result<f64> {
    straight_change_inner(a, b, p, true)
}

fn straight_change_inner(a: StraightEnd, b: StraightEnd, p: Complex64, checked: bool) -> Result<f64> {
    if !checked {
        let w = |e: StraightEnd| match e {
            StraightEnd::At(z) => z - p,
            StraightEnd::Far(dir) => dir,
        };
        let (wa, wb) = (w(a), w(b));
        if wa.norm() == 0.0 || wb.norm() == 0.0 {
            return Ok(0.0);
        }
        return Ok((wb / wa).arg());
    }
    let (wa, wb) = match (a, b) {
        (StraightEnd::At(za), StraightEnd::At(zb)) => {
            let (wa, wb) = (za - p, zb - p);
            let scale = za.norm().max(zb.norm()).max(p.norm()).max(1.0);
            // distance from p to the closed segment [za, zb]
            let d = zb - za;
            let t = if d.norm_sqr() > 0.0 {
                ((p - za) * d.conj()).re / d.norm_sqr()
            } else {
                0.0
            };
            let closest = za + d * t.clamp(0.0, 1.0);
            if (closest - p).norm() <= HIT_TOL * scale {
                return Err(hit(closest, p));
            }
            (wa, wb)
        }
        (StraightEnd::At(za), StraightEnd::Far(dir)) => {
            let wa = za - p;
            let along = (wa.conj() * dir).re;
            let perp = (wa.conj() * dir).im;
            if along < 0.0 && perp.abs() <= HIT_TOL * wa.norm().max(1.0) {
                return Err(hit(za, p));
            }
            if wa.norm() <= HIT_TOL * za.norm().max(1.0) {
                return Err(hit(za, p));
            }
            (wa, dir)
        }
        (StraightEnd::Far(dir), StraightEnd::At(zb)) => {
            return straight_change(StraightEnd::At(zb), StraightEnd::Far(dir), p).map(|d| -d)
        }
        (StraightEnd::Far(_), StraightEnd::Far(_)) => {
            return Err(Error::Path("a straight piece cannot have both ends at infinity".into()))
        }
    };
    Ok((wb / wa).arg())
}

/// Change of `arg(z − p)` along the arc of `center`, `radius` from angle
/// `ta` to angle `tb` (either orientation).
fn arc_change(center: Complex64, radius: f64, ta: f64, tb: f64, p: Complex64) -> Result<f64> {
    if (tb - ta).abs() > PI / 2.0 {
        let mid = 0.5 * (ta + tb);
        return Ok(arc_change(center, radius, ta, mid, p)? + arc_change(center, radius, mid, tb, p)?);
    }
    let za = center + Complex64::from_polar(radius, ta);
    let zb = center + Complex64::from_polar(radius, tb);
    let q = p - center;
    let scale = radius.max(center.norm()).max(1.0);
    let on_circle = (q.norm() - radius).abs() <= HIT_TOL * scale;
    if on_circle {
        let ang = q.arg();
        let (lo, hi) = if ta <= tb { (ta, tb) } else { (tb, ta) };
        let k = ((lo - ang) / TAU).ceil();
        let ang = ang + k * TAU;
        if ang <= hi + 1e-15 {
            return Err(hit(p, p));
        }
    }
    if ta == tb {
        return Ok(0.0);
    }
    // Chord from za to zb plus a correction of ±2π when p sits inside the
    // circular segment cut off by the chord.
    let (wa, wb) = (za - p, zb - p);
    let chord = zb - za;
    let zm = center + Complex64::from_polar(radius, 0.5 * (ta + tb));
    let side = |z: Complex64| (chord.conj() * (z - za)).im;
    let p_side = side(p);
    let inside = q.norm() < radius && p_side * side(zm) > 0.0;
    let orientation = if tb > ta { 1.0 } else { -1.0 };
    let chord_tol = HIT_TOL * scale * chord.norm().max(1e-300);
    if q.norm() < radius && p_side.abs() <= chord_tol {
        // p on the chord itself: the arc sweeps exactly half a turn around it
        return Ok(orientation * PI);
    }
    let base = (wb / wa).arg();
    Ok(if inside { base + orientation * TAU } else { base })
}

/// Change of `arg(z − p)` travelling along `seg` between two local coordinates.
pub(crate) fn segment_change(seg: &Segment, ua: Local, ub: Local, p: Complex64) -> Result<f64> {
    segment_change_inner(seg, ua, ub, p, true)
}

/// Straight pieces skip the "passes through the base" test: used at
/// quadrature nodes, where the base may be a segment endpoint.
fn segment_change_inner(seg: &Segment, ua: Local, ub: Local, p: Complex64, checked: bool) -> Result<f64> {
    match *seg {
        Segment::Line { .. } => straight_change_inner(
            StraightEnd::At(seg.point_local(ua)),
            StraightEnd::At(seg.point_local(ub)),
            p,
            checked,
        ),
        Segment::Arc { center, radius, .. } => arc_change(center, radius, ua, ub, p),
        Segment::Ray { direction, .. } => {
            let end = |u: Local| {
                if u.is_infinite() {
                    StraightEnd::Far(direction)
                } else {
                    StraightEnd::At(seg.point_local(u))
                }
            };
            straight_change_inner(end(ua), end(ub), p, checked)
        }
    }
}

/// Continuous argument of `z − base` along a path.
///
/// Stores the phase at one interior reference point per segment; phases
/// elsewhere are obtained by analytic continuation from that point, so no
/// principal-value jumps occur anywhere along the path.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTrack {
    path: Path,
    base: Complex64,
    reference: Vec<f64>,
}

impl PhaseTrack {
    /// Track anchored by the phase at the reference point of segment `seg`.
    pub(crate) fn from_reference(path: &Path, base: Complex64, seg: usize, phase: f64) -> Result<Self> {
        let segs = path.segments();
        let mut reference = vec![0.0; segs.len()];
        reference[seg] = phase;
        for i in seg + 1..segs.len() {
            let prev = &segs[i - 1];
            let cur = &segs[i];
            reference[i] = reference[i - 1]
                + segment_change(prev, prev.reference_local(), prev.end_local(), base)?
                + segment_change(cur, cur.start_local(), cur.reference_local(), base)?;
        }
        for i in (0..seg).rev() {
            let next = &segs[i + 1];
            let cur = &segs[i];
            reference[i] = reference[i + 1]
                - segment_change(next, next.start_local(), next.reference_local(), base)?
                - segment_change(cur, cur.reference_local(), cur.end_local(), base)?;
        }
        Ok(PhaseTrack {
            path: path.clone(),
            base,
            reference,
        })
    }

    pub fn base(&self) -> Complex64 {
        self.base
    }

    /// Phase on segment `seg` at local coordinate `u`.
    pub(crate) fn at_local(&self, seg: usize, u: Local) -> Result<f64> {
        let s = &self.path.segments()[seg];
        Ok(self.reference[seg] + segment_change(s, s.reference_local(), u, self.base)?)
    }

    /// Phase at a point already known to be admissible (a quadrature node).
    pub(crate) fn at_local_unchecked(&self, seg: usize, u: Local) -> f64 {
        let s = &self.path.segments()[seg];
        self.reference[seg] + segment_change_inner(s, s.reference_local(), u, self.base, false).unwrap_or(0.0)
    }

    /// Phase on segment `seg` at its own parameter `t ∈ [0, 1]`.
    pub fn at_segment(&self, seg: usize, t: f64) -> Result<f64> {
        let s = &self.path.segments()[seg];
        self.at_local(seg, s.local_of(t))
    }

    /// Phase at global parameter `t ∈ [0, 1]`; segment `k` of `n` covers
    /// `[k/n, (k+1)/n]`.
    pub fn at(&self, t: f64) -> Result<f64> {
        let n = self.path.segments().len();
        let scaled = (t.clamp(0.0, 1.0) * n as f64).min(n as f64);
        let seg = (scaled.floor() as usize).min(n - 1);
        self.at_segment(seg, scaled - seg as f64)
    }

    pub fn start(&self) -> Result<f64> {
        self.at(0.0)
    }

    pub fn end(&self) -> Result<f64> {
        self.at(1.0)
    }

    /// Net phase change from the start of the path to its end.
    pub fn total_change(&self) -> Result<f64> {
        Ok(self.end()? - self.start()?)
    }
}

/// Continuous argument of `z(t) − base_point` along `path`, starting from
/// `start_phase` at the path's first finite point (the anchor of an opening
/// inbound ray).
pub fn phase_continue(path: &Path, base_point: Complex64, start_phase: f64) -> Result<PhaseTrack> {
    let first = &path.segments()[0];
    let start_local = match *first {
        Segment::Ray { inbound: true, .. } => first.end_local(),
        _ => first.start_local(),
    };
    let offset = segment_change(first, start_local, first.reference_local(), base_point)?;
    let track = PhaseTrack::from_reference(path, base_point, 0, start_phase + offset)?;
    // the path itself must avoid the base point everywhere, endpoints included
    for (i, seg) in path.segments().iter().enumerate() {
        for end in [seg.start(), seg.end()].into_iter().flatten() {
            if (end - base_point).norm() <= HIT_TOL * end.norm().max(1.0) {
                return Err(hit(end, base_point));
            }
        }
        track.at_local(i, seg.start_local())?;
        track.at_local(i, seg.end_local())?;
    }
    Ok(track)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unit_circle_winds_once() {
        let p = Path::circle(c(0.0, 0.0), 1.0).unwrap();
        let tr = phase_continue(&p, c(0.0, 0.0), 0.0).unwrap();
        assert!((tr.end().unwrap() - TAU).abs() < 1e-12);
        assert!((tr.at(0.25).unwrap() - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn straight_segment_keeps_phase() {
        let p = Path::new(vec![Segment::line(c(1.0, 0.0), c(2.0, 0.0))]).unwrap();
        let tr = phase_continue(&p, c(0.0, 0.0), 0.0).unwrap();
        for t in [0.0, 0.3, 0.7, 1.0] {
            assert_eq!(tr.at(t).unwrap(), 0.0);
        }
    }

    #[test]
    fn circle_not_enclosing_has_zero_net_change() {
        let p = Path::circle(c(3.0, 0.0), 1.0).unwrap();
        let tr = phase_continue(&p, c(0.0, 0.0), 0.0).unwrap();
        assert!(tr.total_change().unwrap().abs() < 1e-12);
    }

    #[test]
    fn hitting_the_base_point_is_an_error() {
        let p = Path::new(vec![Segment::line(c(-1.0, 0.0), c(1.0, 0.0))]).unwrap();
        assert!(matches!(phase_continue(&p, c(0.0, 0.0), 0.0), Err(Error::Domain(_))));
        let circ = Path::circle(c(0.0, 0.0), 1.0).unwrap();
        assert!(phase_continue(&circ, c(0.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn arc_with_base_near_the_rim() {
        // base just inside the rim: the phase must still rise by 2π overall
        let p = Path::circle(c(0.0, 0.0), 1.0).unwrap();
        let tr = phase_continue(&p, c(0.999, 0.001), 0.0).unwrap();
        assert!((tr.total_change().unwrap() - TAU).abs() < 1e-12);
        let tr = phase_continue(&p, c(1.001, 0.0005), 0.0).unwrap();
        assert!(tr.total_change().unwrap().abs() < 1e-12);
    }

    #[test]
    fn keyhole_winds_once_around_its_center() {
        let p = Path::hankel(c(0.0, 0.0), 0.5, 1e-3, c(-1.0, 0.0)).unwrap();
        let anchor = p.segments()[0].end().unwrap();
        let tr = phase_continue(&p, c(0.0, 0.0), anchor.arg()).unwrap();
        assert!((tr.start().unwrap() + PI).abs() < 1e-12);
        assert!((tr.end().unwrap() - PI).abs() < 1e-12);
        let other = phase_continue(&p, c(2.0, 0.0), PI).unwrap();
        assert!(other.total_change().unwrap().abs() < 1e-12);
    }
}
