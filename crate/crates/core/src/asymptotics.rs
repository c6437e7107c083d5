//! Large-`r` asymptotic series of contour integrals attached to one root.
//!
//! Near the attachment root `c_a` the other factor is expanded,
//! `(z − c_b)^{α_b − 1} = Σ_k f_k (z − c_a)^k`, and each term is integrated
//! exactly. For a keyhole around `c_a` this gives
//!
//! `U(r) ∼ e^{c_a r} r^{−α_a} · 2πi/Γ(1 − α_a) · Σ_k (−1)^k f_k (α_a)_k r^{−k}`,
//!
//! and for a ray leaving `c_a` toward `Re z → −∞` the prefactor becomes
//! `e^{iΦα_a} Γ(α_a)`, with `Φ` the phase of `z − c_a` on the ray measured
//! from the decay direction (Φ = π for a ray along the negative axis).

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::complex_core::{BranchConfig, Segment, SideHint};
use crate::contour::factor_track;
use crate::error::{Error, Result};
use crate::gamma::{gamma, rgamma};
use crate::laplace::{ContourCandidate, ContourKind, LaplaceData};

pub const MAX_TERMS: usize = 60;

/// How the contour meets the attachment root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Attachment {
    /// Keyhole around the root; `start_phase` is the phase of `z − c_a` on
    /// the incoming leg, which must lie along the negative real direction.
    Hankel { start_phase: f64 },
    /// Ray from the root; `phase` is the phase of `z − c_a` along it and
    /// `direction` its unit direction.
    Ray { phase: f64, direction: Complex64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrefactorRule {
    pub exponential_rate: Complex64,
    pub power: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticSeries {
    pub attachment_root: Complex64,
    pub other_root: Complex64,
    pub alpha_attach: Complex64,
    pub alpha_other: Complex64,
    /// `f_0 … f_K`.
    pub coefficients: Vec<Complex64>,
    pub prefactor_rule: PrefactorRule,
    pub attachment: Attachment,
    /// `2πi/Γ(1 − α_a)` (keyhole) or `e^{iΦα_a}Γ(α_a)` (ray), including any
    /// extra winding of the phase convention.
    pub contour_factor: Complex64,
}

/// `f_0 … f_K` for attachment at root `attach` of a two-root problem, with
/// `f_0 = (c_a − c_b)^{α_b − 1}` on the branch chosen by `cfg`.
pub fn series_coefficients(
    data: &LaplaceData,
    attach: usize,
    k_max: usize,
    cfg: &BranchConfig,
    attachment: Attachment,
) -> Result<AsymptoticSeries> {
    if data.roots.len() != 2 || attach > 1 {
        return Err(Error::Unsupported("asymptotic series need exactly two roots".into()));
    }
    if k_max > MAX_TERMS {
        return Err(Error::InvalidArgument(format!(
            "at most {MAX_TERMS} terms are supported"
        )));
    }
    let other = 1 - attach;
    let (ca, cb) = (data.roots[attach], data.roots[other]);
    let (aa, ab) = (data.exponents[attach], data.exponents[other]);
    let gap = ca - cb;
    if gap.norm() <= 1e-12 * ca.norm().max(1.0) {
        return Err(Error::Domain("coincident roots".into()));
    }
    let f0 = crate::complex_core::branch_power(ca, cb, ab - 1.0, cfg, SideHint::None)?;
    let mut coefficients = Vec::with_capacity(k_max + 1);
    coefficients.push(f0);
    for k in 1..=k_max {
        let prev = coefficients[k - 1];
        coefficients.push(prev * (ab - k as f64) / (gap * k as f64));
    }
    let contour_factor = match attachment {
        Attachment::Hankel { start_phase } => {
            let turns = (start_phase + PI) / TAU;
            if (turns - turns.round()).abs() > 1e-9 {
                return Err(Error::Unsupported(
                    "keyhole legs must run along the negative real direction".into(),
                ));
            }
            let winding = Complex64::new(0.0, TAU * turns.round() * 1.0) * aa;
            winding.exp() * Complex64::new(0.0, TAU) * rgamma(1.0 - aa)
        }
        Attachment::Ray { phase, direction } => {
            if !(direction.re < 0.0) {
                return Err(Error::Domain("ray must run toward Re z = −∞".into()));
            }
            let phi = phase - (-direction).arg();
            (Complex64::new(0.0, phi) * aa).exp() * gamma(aa)?
        }
    };
    Ok(AsymptoticSeries {
        attachment_root: ca,
        other_root: cb,
        alpha_attach: aa,
        alpha_other: ab,
        coefficients,
        prefactor_rule: PrefactorRule {
            exponential_rate: ca,
            power: -aa,
        },
        attachment,
        contour_factor,
    })
}

/// Series for a cataloged keyhole or ray, with the phases its branch
/// configuration imposes.
pub fn series_for_contour(c: &ContourCandidate, data: &LaplaceData, k_max: usize) -> Result<AsymptoticSeries> {
    let segs = c.path.segments();
    match c.kind {
        ContourKind::HankelKeyhole => {
            let Some(Segment::Arc { center, .. }) = segs.get(1).copied() else {
                return Err(Error::Contour("keyhole without a circular part".into()));
            };
            let attach = data
                .root_index(center)
                .ok_or_else(|| Error::Contour("keyhole is not centered on a root".into()))?;
            let track = factor_track(&c.path, &c.cfg, center, SideHint::None)?;
            let Segment::Ray { direction, .. } = segs[0] else {
                unreachable!("keyholes open with a ray")
            };
            if (direction + 1.0).norm() > 1e-12 {
                return Err(Error::Unsupported(
                    "keyhole legs must run along the negative real direction".into(),
                ));
            }
            let start_phase = track.at_segment(0, 0.0)?;
            series_coefficients(data, attach, k_max, &c.cfg, Attachment::Hankel { start_phase })
        }
        ContourKind::RayFromRoot => {
            let Segment::Ray { anchor, direction, .. } = segs[0] else {
                unreachable!("ray contours are a single ray")
            };
            let attach = data
                .root_index(anchor)
                .ok_or_else(|| Error::Contour("ray does not start at a root".into()))?;
            let track = factor_track(&c.path, &c.cfg, anchor, SideHint::None)?;
            let phase = track.at_segment(0, 0.5)?;
            series_coefficients(data, attach, k_max, &c.cfg, Attachment::Ray { phase, direction })
        }
        _ => Err(Error::Unsupported(format!(
            "no asymptotic series for {:?} contours",
            c.kind
        ))),
    }
}

impl AsymptoticSeries {
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `(−1)^k f_k (α_a)_k r^{−k}` for `k = 0..=K`, Pochhammer by recurrence.
    pub fn terms(&self, r: f64) -> Vec<Complex64> {
        let mut poch = Complex64::new(1.0, 0.0);
        let mut rk = 1.0;
        self.coefficients
            .iter()
            .enumerate()
            .map(|(k, f)| {
                if k > 0 {
                    poch *= self.alpha_attach + (k - 1) as f64;
                    rk /= -r;
                }
                f * poch * rk
            })
            .collect()
    }

    /// `|term_{k+1} / term_k|`.
    pub fn term_ratio(&self, k: usize, r: f64) -> f64 {
        let ab = self.alpha_other;
        let aa = self.alpha_attach;
        let gap = self.attachment_root - self.other_root;
        ((ab - (k + 1) as f64) * (aa + k as f64) / (gap * (k + 1) as f64 * r)).norm()
    }

    /// `e^{c_a r} r^{−α_a}` times the contour factor.
    pub fn prefactor(&self, r: f64) -> Complex64 {
        (self.prefactor_rule.exponential_rate * r + self.prefactor_rule.power * r.ln()).exp() * self.contour_factor
    }
}

/// Partial sum through order `n`.
pub fn evaluate_asymptotic(series: &AsymptoticSeries, r: f64, n: usize) -> Result<Complex64> {
    if !(r > 0.0) {
        return Err(Error::Domain("r must be positive".into()));
    }
    if n >= series.len() {
        return Err(Error::InvalidArgument(format!(
            "order {n} needs more than the {} available coefficients",
            series.len()
        )));
    }
    let sum: Complex64 = series.terms(r)[..=n].iter().sum();
    Ok(series.prefactor(r) * sum)
}

/// Index before the first term that is not smaller than its predecessor;
/// the last index when the terms keep shrinking.
pub fn optimal_truncation(series: &AsymptoticSeries, r: f64) -> usize {
    let terms = series.terms(r);
    for k in 0..terms.len().saturating_sub(1) {
        if terms[k + 1].norm() >= terms[k].norm() {
            return k;
        }
    }
    terms.len().saturating_sub(1)
}
