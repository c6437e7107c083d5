//! Globally adaptive Gauss–Kronrod (G10/K21) quadrature for complex, vector
//! valued integrands.
//!
//! The integrand fills one output slot per component, so several related
//! integrals (for example the same contour at neighbouring `x`) share nodes.
//! Error control is on the worst component.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208980248624,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], …, XGK[9]`.
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_intervals: 4000,
        }
    }
}

impl QuadOptions {
    /// `error ≤ tol·(1 + |I|)`.
    pub fn with_tol(tol: f64) -> Self {
        QuadOptions {
            abs_tol: tol,
            rel_tol: tol,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadResult {
    pub values: Vec<Complex64>,
    /// Largest per-component error estimate.
    pub error: f64,
    pub evaluations: usize,
    pub intervals: usize,
    pub converged: bool,
}

impl QuadResult {
    /// The result, or an accuracy error carrying the first component.
    pub fn into_result(self) -> Result<QuadResult> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::Accuracy {
                estimate: self.values.first().copied().unwrap_or_default(),
                error_bound: self.error,
            })
        }
    }
}

struct Interval {
    piece: usize,
    a: f64,
    b: f64,
    values: Vec<Complex64>,
    errors: Vec<f64>,
    /// roundoff floor `50ε·∫|f|` per component
    floors: Vec<f64>,
    worst: f64,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.worst.total_cmp(&other.worst) == Ordering::Equal
    }
}

impl Eq for Interval {}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.worst.total_cmp(&other.worst)
    }
}

fn rescale_error(diff: f64, resabs: f64, resasc: f64) -> f64 {
    let mut err = diff;
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    err
}

/// One 21-point rule on `[a, b]` of piece `piece`.
fn gk21<F>(f: &mut F, piece: usize, a: f64, b: f64, dim: usize, buf: &mut [Vec<Complex64>]) -> Result<Interval>
where
    F: FnMut(usize, f64, &mut [Complex64]),
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    // buf[0] center, buf[2j+1], buf[2j+2] the pair at ±XGK[j]
    for v in buf.iter_mut() {
        v.iter_mut().for_each(|x| *x = Complex64::default());
    }
    f(piece, center, &mut buf[0]);
    for j in 0..10 {
        let dx = half * XGK[j];
        let (lo, hi) = buf[1 + 2 * j..3 + 2 * j].split_at_mut(1);
        f(piece, center - dx, &mut lo[0]);
        f(piece, center + dx, &mut hi[0]);
    }
    let mut values = vec![Complex64::default(); dim];
    let mut errors = vec![0.0; dim];
    let mut floors = vec![0.0; dim];
    for d in 0..dim {
        let fc = buf[0][d];
        let mut kron = fc * WGK[10];
        let mut gauss = Complex64::default();
        let mut resabs = fc.norm() * WGK[10];
        for j in 0..10 {
            let (f1, f2) = (buf[1 + 2 * j][d], buf[2 + 2 * j][d]);
            kron += (f1 + f2) * WGK[j];
            resabs += (f1.norm() + f2.norm()) * WGK[j];
            if j % 2 == 1 {
                gauss += (f1 + f2) * WG[j / 2];
            }
        }
        let mean = kron * 0.5;
        let mut resasc = (fc - mean).norm() * WGK[10];
        for j in 0..10 {
            resasc += ((buf[1 + 2 * j][d] - mean).norm() + (buf[2 + 2 * j][d] - mean).norm()) * WGK[j];
        }
        let h = half.abs();
        if !(kron.re.is_finite() && kron.im.is_finite() && resasc.is_finite()) {
            return Err(Error::Domain(format!(
                "integrand is not finite on [{a}, {b}] of piece {piece}"
            )));
        }
        values[d] = kron * half;
        errors[d] = rescale_error(((kron - gauss) * half).norm(), resabs * h, resasc * h);
        floors[d] = 50.0 * f64::EPSILON * resabs * h;
    }
    let worst = errors.iter().cloned().fold(0.0, f64::max);
    Ok(Interval {
        piece,
        a,
        b,
        values,
        errors,
        floors,
        worst,
    })
}

/// Integrate a `dim`-component integrand over a union of pieces.
///
/// `pieces[k] = (a, b)` is handed back to `f` as `f(k, x, out)` with
/// `x ∈ [a, b]`; `f` writes the `dim` integrand values into `out`. The sum
/// over all pieces is returned. Refinement stops once the total error of
/// every component is below `abs_tol + rel_tol·|I|`. A non-finite integrand
/// value is a domain error; running out of intervals gives `converged =
/// false`.
pub fn integrate_pieces<F>(pieces: &[(f64, f64)], dim: usize, mut f: F, opts: &QuadOptions) -> Result<QuadResult>
where
    F: FnMut(usize, f64, &mut [Complex64]),
{
    let mut buf = vec![vec![Complex64::default(); dim]; 21];
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Interval> = Vec::new();
    let mut evaluations = 0;
    for (k, &(a, b)) in pieces.iter().enumerate() {
        if a == b {
            continue;
        }
        heap.push(gk21(&mut f, k, a, b, dim, &mut buf)?);
        evaluations += 21;
    }
    let totals = |heap: &BinaryHeap<Interval>, frozen: &[Interval]| {
        let mut values = vec![Complex64::default(); dim];
        let mut errors = vec![0.0; dim];
        let mut floors = vec![0.0; dim];
        for iv in heap.iter().chain(frozen.iter()) {
            for d in 0..dim {
                values[d] += iv.values[d];
                errors[d] += iv.errors[d];
                floors[d] += iv.floors[d];
            }
        }
        (values, errors, floors)
    };
    // A component whose error sits at the roundoff floor cannot be improved
    // by subdivision; it counts as converged with that error.
    let done = |values: &[Complex64], errors: &[f64], floors: &[f64]| {
        (0..dim).all(|d| errors[d] <= (opts.abs_tol + opts.rel_tol * values[d].norm()).max(2.0 * floors[d]))
    };
    loop {
        let (values, errors, floors) = totals(&heap, &frozen);
        let intervals = heap.len() + frozen.len();
        let converged = done(&values, &errors, &floors);
        if converged || intervals >= opts.max_intervals || heap.is_empty() {
            return Ok(QuadResult {
                values,
                error: errors.iter().cloned().fold(0.0, f64::max),
                evaluations,
                intervals,
                converged,
            });
        }
        // refine the worst interval; several per pass keeps the bookkeeping cheap
        let batch = (heap.len() / 8).max(1);
        for _ in 0..batch {
            let Some(iv) = heap.pop() else { break };
            let mid = 0.5 * (iv.a + iv.b);
            let width = (iv.b - iv.a).abs();
            if width <= 64.0 * f64::EPSILON * iv.a.abs().max(iv.b.abs()).max(f64::MIN_POSITIVE)
                || mid == iv.a
                || mid == iv.b
            {
                frozen.push(iv);
                continue;
            }
            let left = gk21(&mut f, iv.piece, iv.a, mid, dim, &mut buf)?;
            let right = gk21(&mut f, iv.piece, mid, iv.b, dim, &mut buf)?;
            evaluations += 42;
            heap.push(left);
            heap.push(right);
        }
    }
}

/// Scalar complex integral of `f` over `[a, b]`.
pub fn integrate<F>(mut f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadResult>
where
    F: FnMut(f64) -> Complex64,
{
    integrate_pieces(&[(a, b)], 1, |_, x, out| out[0] = f(x), opts)
}

/// Scalar real integral of `f` over `[a, b]`; returns value and error.
pub fn integrate_real<F>(mut f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    let res = integrate(|x| Complex64::new(f(x), 0.0), a, b, opts)?.into_result()?;
    Ok((res.values[0].re, res.error))
}
