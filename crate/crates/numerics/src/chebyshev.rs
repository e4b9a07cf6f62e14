//! Polynomial interpolation on Chebyshev points of the second kind, in the
//! numerically stable barycentric form.
//!
//! Used to tabulate smooth but expensive functions of frequency (mode
//! wavenumbers, coupling constants, overlap integrals) once per sweep.

use crate::quadrature::QuadValue;

/// `n` Chebyshev–Lobatto points `(a+b)/2 + (b−a)/2 · cos(jπ/(n−1))`,
/// returned in increasing order. Requires `n ≥ 2`.
pub fn chebyshev_points(n: usize, a: f64, b: f64) -> Vec<f64> {
    let n = n.max(2);
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    (0..n)
        .map(|j| mid - half * (std::f64::consts::PI * j as f64 / (n - 1) as f64).cos())
        .collect()
}

/// Interpolating polynomial through values at [`chebyshev_points`].
#[derive(Debug, Clone, PartialEq)]
pub struct Chebyshev<T> {
    nodes: Vec<f64>,
    values: Vec<T>,
}

impl<T: QuadValue> Chebyshev<T> {
    /// Samples `f` at `n` Chebyshev points of `[a, b]`.
    pub fn sample<F: FnMut(f64) -> T>(n: usize, a: f64, b: f64, mut f: F) -> Self {
        let nodes = chebyshev_points(n, a, b);
        let values = nodes.iter().map(|&x| f(x)).collect();
        Self { nodes, values }
    }

    /// Interpolant through precomputed values at `chebyshev_points(values.len(), a, b)`.
    pub fn from_values(a: f64, b: f64, values: Vec<T>) -> Self {
        Self {
            nodes: chebyshev_points(values.len(), a, b),
            values,
        }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Barycentric evaluation; exact at the nodes.
    pub fn evaluate(&self, x: f64) -> T {
        let n = self.nodes.len();
        let mut num = T::zero();
        let mut den = 0.0;
        for (j, (&xj, &fj)) in self.nodes.iter().zip(&self.values).enumerate() {
            let diff = x - xj;
            if diff == 0.0 {
                return fj;
            }
            let mut w = if j % 2 == 0 { 1.0 } else { -1.0 };
            if j == 0 || j == n - 1 {
                w *= 0.5;
            }
            let t = w / diff;
            num = num + fj * t;
            den += t;
        }
        num * (1.0 / den)
    }
}
