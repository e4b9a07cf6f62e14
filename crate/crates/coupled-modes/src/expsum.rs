use num_complex::Complex64;
use std::ops::{Add, Mul};

/// `∫₀^L e^{iqz} dz`, evaluated without cancellation for small `qL`.
pub fn integrate_exponential(q: f64, length: f64) -> Complex64 {
    let x = 0.5 * q * length;
    let sinc = if x.abs() < 1e-4 {
        1.0 - x * x / 6.0 + x.powi(4) / 120.0
    } else {
        x.sin() / x
    };
    Complex64::from_polar(length * sinc, x)
}

/// A finite sum `Σ_j c_j e^{i p_j z}`.
///
/// All envelopes are of this form, so products of envelopes with plane-wave
/// phase factors stay in it and integrate over `z` in closed form.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExpSum {
    pub terms: Vec<(Complex64, f64)>,
}

impl ExpSum {
    pub fn new(terms: Vec<(Complex64, f64)>) -> Self {
        Self { terms }
    }

    /// The single term `c e^{ipz}`.
    pub fn single(coefficient: Complex64, rate: f64) -> Self {
        Self {
            terms: vec![(coefficient, rate)],
        }
    }

    pub fn evaluate(&self, z: f64) -> Complex64 {
        self.terms.iter().map(|&(c, p)| c * Complex64::from_polar(1.0, p * z)).sum()
    }

    /// Pointwise complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|&(c, p)| (c.conj(), -p)).collect(),
        }
    }

    /// Multiplies by `e^{iqz}`.
    pub fn shifted(&self, q: f64) -> Self {
        Self {
            terms: self.terms.iter().map(|&(c, p)| (c, p + q)).collect(),
        }
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            terms: self.terms.iter().map(|&(c, p)| (c * s, p)).collect(),
        }
    }

    /// `∫₀^L` of the sum.
    pub fn integrate(&self, length: f64) -> Complex64 {
        self.terms.iter().map(|&(c, p)| c * integrate_exponential(p, length)).sum()
    }
}

impl Add for &ExpSum {
    type Output = ExpSum;
    fn add(self, rhs: &ExpSum) -> ExpSum {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&rhs.terms);
        ExpSum { terms }
    }
}

impl Mul for &ExpSum {
    type Output = ExpSum;
    fn mul(self, rhs: &ExpSum) -> ExpSum {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for &(a, p) in &self.terms {
            for &(b, q) in &rhs.terms {
                terms.push((a * b, p + q));
            }
        }
        ExpSum { terms }
    }
}
