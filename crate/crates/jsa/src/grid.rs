use crate::config::OutputChannel;
use crate::error::JsaError;
use num_complex::Complex64;

/// Equally spaced detunings `Δω = ω_s − ω₁` (rad/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetuningGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl DetuningGrid {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self, JsaError> {
        if points < 2 {
            return Err(JsaError::InvalidGrid(format!("need at least 2 points, got {points}")));
        }
        if !(min < max && min.is_finite() && max.is_finite()) {
            return Err(JsaError::InvalidGrid(format!("empty window [{min}, {max}]")));
        }
        Ok(Self { min, max, points })
    }

    /// Window symmetric about zero.
    pub fn symmetric(half_width: f64, points: usize) -> Result<Self, JsaError> {
        Self::new(-half_width, half_width, points)
    }

    pub fn spacing(&self) -> f64 {
        (self.max - self.min) / (self.points - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.points)
            .map(|j| if j + 1 == self.points { self.max } else { self.min + h * j as f64 })
            .collect()
    }

    /// Window widened by `factor` about its centre at the same spacing.
    pub fn widened(&self, factor: f64) -> Self {
        let (mid, half) = (0.5 * (self.min + self.max), 0.5 * (self.max - self.min) * factor);
        let points = ((self.points - 1) as f64 * factor).round() as usize + 1;
        Self {
            min: mid - half,
            max: mid + half,
            points,
        }
    }

    /// Same window with `factor` times as many intervals.
    pub fn refined(&self, factor: usize) -> Self {
        Self {
            points: (self.points - 1) * factor.max(1) + 1,
            ..*self
        }
    }
}

/// Sampled JSA of one output channel.
#[derive(Debug, Clone, PartialEq)]
pub struct JsaGrid {
    pub channel: OutputChannel,
    pub detuning: Vec<f64>,
    pub omega_s: Vec<f64>,
    /// `ω̄_i = ω₁ + ω₂ − ω_s` at every point.
    pub omega_i: Vec<f64>,
    pub amplitude: Vec<Complex64>,
    /// Per-point contributions of each source pair, in `term_labels` order.
    pub terms: Vec<Vec<Complex64>>,
    pub term_labels: Vec<String>,
    /// What the exported intensities are divided by.
    pub normalization_reference: String,
}

impl JsaGrid {
    /// `|Φ|²` at every point.
    pub fn intensity(&self) -> Vec<f64> {
        self.amplitude.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn max_intensity(&self) -> f64 {
        self.amplitude.iter().map(|a| a.norm_sqr()).fold(0.0, f64::max)
    }

    /// Detuning at the largest `|Φ|²`.
    pub fn argmax(&self) -> f64 {
        let mut best = (0.0, f64::NEG_INFINITY);
        for (x, a) in self.detuning.iter().zip(&self.amplitude) {
            if a.norm_sqr() > best.1 {
                best = (*x, a.norm_sqr());
            }
        }
        best.0
    }

    /// `∫|Φ|² dΔω` by the trapezoid rule.
    pub fn integrated_intensity(&self) -> f64 {
        integrate_trapezoid(&self.detuning, &self.intensity())
    }

    /// Largest `|Φ|²` within the outer `fraction` of the window on each
    /// side, relative to the global maximum.
    pub fn tail_ratio(&self, fraction: f64) -> f64 {
        let n = self.amplitude.len();
        let k = ((n as f64 * fraction).ceil() as usize).clamp(1, n);
        let max = self.max_intensity();
        if max == 0.0 {
            return 0.0;
        }
        let edge = self.amplitude[..k]
            .iter()
            .chain(&self.amplitude[n - k..])
            .map(|a| a.norm_sqr())
            .fold(0.0, f64::max);
        edge / max
    }

    /// Intensities divided by `reference`, recording the reference.
    pub fn normalized_intensity(&mut self, reference: f64, description: &str) -> Vec<f64> {
        self.normalization_reference = format!("{description} = {reference:e}");
        self.amplitude.iter().map(|a| a.norm_sqr() / reference).collect()
    }
}

/// Trapezoid rule on a sampled function with Neumaier-compensated
/// summation, so the result does not depend on accumulated rounding.
pub fn integrate_trapezoid(x: &[f64], y: &[f64]) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for j in 1..x.len().min(y.len()) {
        let term = 0.5 * (x[j] - x[j - 1]) * (y[j] + y[j - 1]);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Number of strict local maxima of `y` above `threshold × max(y)`.
pub fn count_peaks(y: &[f64], threshold: f64) -> usize {
    let max = y.iter().copied().fold(0.0, f64::max);
    (1..y.len().saturating_sub(1))
        .filter(|&j| y[j] > y[j - 1] && y[j] >= y[j + 1] && y[j] > threshold * max)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_is_exact_for_linear_data() {
        let x: Vec<f64> = (0..=10).map(|j| j as f64 * 0.1).collect();
        let y: Vec<f64> = x.iter().map(|x| 3.0 * x + 1.0).collect();
        assert!((integrate_trapezoid(&x, &y) - 2.5).abs() < 1e-15);
    }

    #[test]
    fn compensated_sum_survives_many_small_panels() {
        let n = 1_000_001;
        let x: Vec<f64> = (0..n).map(|j| j as f64 / (n - 1) as f64).collect();
        let y = vec![1.0; n];
        assert!((integrate_trapezoid(&x, &y) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn peaks_above_threshold_are_counted() {
        let y = [0.0, 1.0, 0.0, 0.05, 0.0, 0.5, 0.5, 0.0];
        assert_eq!(count_peaks(&y, 0.1), 2);
    }

    #[test]
    fn widening_keeps_spacing_and_centre() {
        let g = DetuningGrid::new(-1.0, 3.0, 41).unwrap();
        let w = g.widened(2.0);
        assert_eq!((w.min, w.max, w.points), (-3.0, 5.0, 81));
        assert!((w.spacing() - g.spacing()).abs() < 1e-15);
        assert_eq!(g.refined(10).points, 401);
        let v = g.values();
        assert_eq!((v[0], v[40]), (-1.0, 3.0));
    }
}
