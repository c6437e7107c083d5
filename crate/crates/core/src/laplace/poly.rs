use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex polynomial with coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    /// Trailing zero coefficients are dropped; the zero polynomial has no
    /// coefficients at all.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Complex64::default()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::default(), |acc, c| acc * z + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    /// Quotient and remainder of `self / divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::InvalidArgument("division by the zero polynomial".into()))?;
        let lead = divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Poly::new(vec![]), Poly::new(vec![])));
        };
        if nd < dd {
            return Ok((Poly::new(vec![]), self.clone()));
        }
        let mut quot = vec![Complex64::default(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd] / lead;
            quot[k] = q;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= q * d;
            }
            rem[k + dd] = Complex64::default();
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// All roots, sorted by descending real part, then ascending imaginary
    /// part. Degrees above two use Aberth iteration.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let deg = self
            .degree()
            .ok_or_else(|| Error::InvalidArgument("the zero polynomial has no isolated roots".into()))?;
        let c = &self.coeffs;
        let mut roots = match deg {
            0 => vec![],
            1 => vec![-c[0] / c[1]],
            2 => quadratic_roots(c[2], c[1], c[0]),
            _ => self.aberth()?,
        };
        sort_roots(&mut roots);
        Ok(roots)
    }

    fn aberth(&self) -> Result<Vec<Complex64>> {
        let deg = self.degree().unwrap();
        let d = self.derivative();
        let lead = self.coeffs[deg];
        // Cauchy bound for the starting circle
        let radius = 1.0 + self.coeffs[..deg].iter().map(|c| (c / lead).norm()).fold(0.0, f64::max);
        let mut z: Vec<Complex64> = (0..deg)
            .map(|k| Complex64::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / deg as f64))
            .collect();
        for _ in 0..500 {
            let mut moved: f64 = 0.0;
            for i in 0..deg {
                let p = self.eval(z[i]);
                if p == Complex64::default() {
                    continue;
                }
                let ratio = p / d.eval(z[i]);
                let repulsion: Complex64 = (0..deg).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
                let step = ratio / (1.0 - ratio * repulsion);
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(1.0));
            }
            if moved < 1e-15 {
                return Ok(z);
            }
        }
        Err(Error::Accuracy {
            estimate: z[0],
            error_bound: f64::NAN,
        })
    }
}

fn quadratic_roots(a: Complex64, b: Complex64, c: Complex64) -> Vec<Complex64> {
    let disc = (b * b - 4.0 * a * c).sqrt();
    // pick the sign that avoids cancellation
    let q = if (b.conj() * disc).re >= 0.0 {
        -0.5 * (b + disc)
    } else {
        -0.5 * (b - disc)
    };
    if q == Complex64::default() {
        return vec![Complex64::default(), Complex64::default()];
    }
    vec![q / a, c / q]
}

pub(crate) fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|x, y| y.re.total_cmp(&x.re).then(x.im.total_cmp(&y.im)));
}
