use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance for joining consecutive segments and closing loops.
pub const CONTINUITY_TOL: f64 = 1e-12;

/// One analytic piece of a contour.
///
/// Every segment is parameterized by `t ∈ [0, 1]` through [`Segment::point`].
/// Rays map `t` onto the half-line with `s = t / (1 − t)` (outbound) or
/// `s = (1 − t) / t` (inbound), so the infinite end sits at `t = 1` or `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Segment {
    Line {
        from: Complex64,
        to: Complex64,
    },
    /// `center + radius·e^{iθ}` for θ running from `start_angle` to
    /// `end_angle`; counterclockwise when `end_angle > start_angle`.
    Arc {
        center: Complex64,
        radius: f64,
        start_angle: f64,
        end_angle: f64,
    },
    /// Half-line `anchor + direction·s`, `s ≥ 0`, with a unit `direction`.
    /// Inbound rays are traversed from infinity toward the anchor.
    Ray {
        anchor: Complex64,
        direction: Complex64,
        inbound: bool,
    },
}

/// Local coordinate on a segment: `t` for lines, θ for arcs, arc length `s`
/// from the anchor for rays (`f64::INFINITY` is the far end).
pub(crate) type Local = f64;

impl Segment {
    pub fn line(from: Complex64, to: Complex64) -> Self {
        Segment::Line { from, to }
    }

    pub fn arc(center: Complex64, radius: f64, start_angle: f64, end_angle: f64) -> Self {
        Segment::Arc {
            center,
            radius,
            start_angle,
            end_angle,
        }
    }

    /// Ray leaving `anchor` toward infinity along `direction` (normalized here).
    pub fn ray_out(anchor: Complex64, direction: Complex64) -> Self {
        Segment::Ray {
            anchor,
            direction: direction / direction.norm(),
            inbound: false,
        }
    }

    /// Ray arriving at `anchor` from infinity; `direction` points from the
    /// anchor toward the far end.
    pub fn ray_in(anchor: Complex64, direction: Complex64) -> Self {
        Segment::Ray {
            anchor,
            direction: direction / direction.norm(),
            inbound: true,
        }
    }

    /// Start point, `None` when the segment starts at infinity.
    pub fn start(&self) -> Option<Complex64> {
        match *self {
            Segment::Line { from, .. } => Some(from),
            Segment::Arc {
                center,
                radius,
                start_angle,
                ..
            } => Some(center + Complex64::from_polar(radius, start_angle)),
            Segment::Ray { anchor, inbound, .. } => (!inbound).then_some(anchor),
        }
    }

    /// End point, `None` when the segment runs off to infinity.
    pub fn end(&self) -> Option<Complex64> {
        match *self {
            Segment::Line { to, .. } => Some(to),
            Segment::Arc {
                center,
                radius,
                end_angle,
                ..
            } => Some(center + Complex64::from_polar(radius, end_angle)),
            Segment::Ray { anchor, inbound, .. } => inbound.then_some(anchor),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Segment::Ray { .. })
    }

    /// `z(t)`; returns an infinite value at the far end of a ray.
    pub fn point(&self, t: f64) -> Complex64 {
        self.point_local(self.local_of(t))
    }

    /// `dz/dt`.
    pub fn derivative(&self, t: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => to - from,
            Segment::Arc {
                radius,
                start_angle,
                end_angle,
                ..
            } => {
                let theta = start_angle + t * (end_angle - start_angle);
                Complex64::i() * Complex64::from_polar(radius, theta) * (end_angle - start_angle)
            }
            Segment::Ray { direction, inbound, .. } => {
                if inbound {
                    -direction / (t * t)
                } else {
                    direction / ((1.0 - t) * (1.0 - t))
                }
            }
        }
    }

    pub fn reversed(&self) -> Self {
        match *self {
            Segment::Line { from, to } => Segment::Line { from: to, to: from },
            Segment::Arc {
                center,
                radius,
                start_angle,
                end_angle,
            } => Segment::Arc {
                center,
                radius,
                start_angle: end_angle,
                end_angle: start_angle,
            },
            Segment::Ray {
                anchor,
                direction,
                inbound,
            } => Segment::Ray {
                anchor,
                direction,
                inbound: !inbound,
            },
        }
    }

    pub(crate) fn local_of(&self, t: f64) -> Local {
        match *self {
            Segment::Line { .. } => t,
            Segment::Arc {
                start_angle, end_angle, ..
            } => start_angle + t * (end_angle - start_angle),
            Segment::Ray { inbound, .. } => {
                let (num, den) = if inbound { (1.0 - t, t) } else { (t, 1.0 - t) };
                if den <= 0.0 {
                    f64::INFINITY
                } else {
                    num / den
                }
            }
        }
    }

    pub(crate) fn point_local(&self, u: Local) -> Complex64 {
        match *self {
            Segment::Line { from, to } => from + (to - from) * u,
            Segment::Arc { center, radius, .. } => center + Complex64::from_polar(radius, u),
            Segment::Ray { anchor, direction, .. } => {
                if u.is_infinite() {
                    Complex64::new(f64::INFINITY, f64::INFINITY)
                } else {
                    anchor + direction * u
                }
            }
        }
    }

    pub(crate) fn start_local(&self) -> Local {
        match *self {
            Segment::Line { .. } => 0.0,
            Segment::Arc { start_angle, .. } => start_angle,
            Segment::Ray { inbound, .. } => {
                if inbound {
                    f64::INFINITY
                } else {
                    0.0
                }
            }
        }
    }

    pub(crate) fn end_local(&self) -> Local {
        match *self {
            Segment::Line { .. } => 1.0,
            Segment::Arc { end_angle, .. } => end_angle,
            Segment::Ray { inbound, .. } => {
                if inbound {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    /// Interior point used as the phase reference for the segment.
    pub(crate) fn reference_local(&self) -> Local {
        match *self {
            Segment::Line { .. } => 0.5,
            Segment::Arc {
                start_angle, end_angle, ..
            } => 0.5 * (start_angle + end_angle),
            Segment::Ray { .. } => 1.0,
        }
    }
}

/// An ordered chain of segments.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    segments: Vec<Segment>,
}

impl Path {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::Path("a path needs at least one segment".into()));
        }
        for (i, seg) in segments.iter().enumerate() {
            match *seg {
                Segment::Line { from, to } => {
                    if (to - from).norm() <= CONTINUITY_TOL {
                        return Err(Error::Path(format!("segment {i} has zero length")));
                    }
                }
                Segment::Arc {
                    radius,
                    start_angle,
                    end_angle,
                    ..
                } => {
                    if !(radius > 0.0) || start_angle == end_angle {
                        return Err(Error::Path(format!("segment {i} is a degenerate arc")));
                    }
                }
                Segment::Ray { direction, inbound, .. } => {
                    if (direction.norm() - 1.0).abs() > 1e-12 {
                        return Err(Error::Path(format!("segment {i}: ray direction must be a unit vector")));
                    }
                    if inbound && i != 0 {
                        return Err(Error::Path("an inbound ray may only open a path".into()));
                    }
                    if !inbound && i + 1 != segments.len() {
                        return Err(Error::Path("an outbound ray may only close a path".into()));
                    }
                }
            }
        }
        for (i, pair) in segments.windows(2).enumerate() {
            let (end, start) = (pair[0].end(), pair[1].start());
            match (end, start) {
                (Some(e), Some(s)) if (e - s).norm() <= CONTINUITY_TOL => {}
                _ => {
                    return Err(Error::Path(format!(
                        "segments {i} and {} do not join (gap between {end:?} and {start:?})",
                        i + 1
                    )))
                }
            }
        }
        Ok(Path { segments })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn start(&self) -> Option<Complex64> {
        self.segments[0].start()
    }

    pub fn end(&self) -> Option<Complex64> {
        self.segments[self.segments.len() - 1].end()
    }

    pub fn is_closed(&self) -> bool {
        matches!((self.start(), self.end()), (Some(a), Some(b)) if (a - b).norm() <= CONTINUITY_TOL)
    }

    /// Path followed by `other`; the junction must be continuous.
    pub fn concat(&self, other: &Path) -> Result<Path> {
        let mut segments = self.segments.clone();
        segments.extend_from_slice(&other.segments);
        Path::new(segments)
    }

    pub fn reversed(&self) -> Path {
        Path {
            segments: self.segments.iter().rev().map(Segment::reversed).collect(),
        }
    }

    /// Full counterclockwise circle starting at angle 0.
    pub fn circle(center: Complex64, radius: f64) -> Result<Path> {
        Path::new(vec![Segment::arc(center, radius, 0.0, TAU)])
    }

    /// Keyhole around `center` whose cut leaves along `cut_direction`.
    ///
    /// The path arrives from infinity on the clockwise side of the cut at
    /// perpendicular distance `offset`, circles `center` counterclockwise at
    /// `radius`, and leaves to infinity on the other side.
    pub fn hankel(center: Complex64, radius: f64, offset: f64, cut_direction: Complex64) -> Result<Path> {
        if !(offset > 0.0 && offset < radius) {
            return Err(Error::Path(format!(
                "keyhole offset {offset} must lie in (0, radius = {radius})"
            )));
        }
        let u = cut_direction / cut_direction.norm();
        let along = (radius * radius - offset * offset).sqrt();
        let tilt = (offset / radius).asin();
        let theta_u = u.arg();
        let incoming = center + u * Complex64::new(along, offset);
        let outgoing = center + u * Complex64::new(along, -offset);
        Path::new(vec![
            Segment::ray_in(incoming, u),
            Segment::arc(center, radius, theta_u + tilt, theta_u + TAU - tilt),
            Segment::ray_out(outgoing, u),
        ])
    }

    /// Counterclockwise stadium enclosing the segment `[a, b]` at distance
    /// `distance`. It starts on the right-hand side of `a → b` next to `a`.
    pub fn stadium(a: Complex64, b: Complex64, distance: f64) -> Result<Path> {
        if !(distance > 0.0) {
            return Err(Error::Path("stadium distance must be positive".into()));
        }
        let u = (b - a) / (b - a).norm();
        let left = Complex64::i() * u * distance;
        let right_angle = (-left).arg();
        let left_angle = left.arg();
        Path::new(vec![
            Segment::line(a - left, b - left),
            Segment::arc(b, distance, right_angle, right_angle + PI),
            Segment::line(b + left, a + left),
            Segment::arc(a, distance, left_angle, left_angle + PI),
        ])
    }
}
