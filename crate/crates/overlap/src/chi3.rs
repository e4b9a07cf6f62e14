/// Cylindrical field component index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    R = 0,
    Phi = 1,
    Z = 2,
}

/// Isotropic third-order susceptibility of a homogeneous medium:
/// `χ_{abcd} = (χ₀/3)(δ_ab δ_cd + δ_ac δ_bd + δ_ad δ_bc)`, i.e. 1 for all
/// indices equal and 1/3 for the eighteen pairwise-equal combinations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chi3Tensor {
    chi0: f64,
}

impl Default for Chi3Tensor {
    fn default() -> Self {
        Self::isotropic(1.0)
    }
}

impl Chi3Tensor {
    pub fn isotropic(chi0: f64) -> Self {
        Self { chi0 }
    }

    pub fn chi0(&self) -> f64 {
        self.chi0
    }

    pub fn component(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        let delta = |x: usize, y: usize| if x == y { 1.0 } else { 0.0 };
        self.chi0 / 3.0 * (delta(a, b) * delta(c, d) + delta(a, c) * delta(b, d) + delta(a, d) * delta(b, c))
    }

    /// Non-zero entries `(a, b, c, d, value)`: 3 diagonal and 18 cross terms.
    pub fn nonzero_terms(&self) -> Vec<(usize, usize, usize, usize, f64)> {
        let mut out = Vec::with_capacity(21);
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        let v = self.component(a, b, c, d);
                        if v != 0.0 {
                            out.push((a, b, c, d, v));
                        }
                    }
                }
            }
        }
        out
    }

    /// The 6×6 contracted-index (Voigt) form with ordering xx, yy, zz, yz,
    /// xz, xy.
    pub fn voigt_matrix(&self) -> [[f64; 6]; 6] {
        let third = self.chi0 / 3.0;
        let mut m = [[0.0; 6]; 6];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = match (i < 3, j < 3) {
                    (true, true) if i == j => self.chi0,
                    (true, true) => third,
                    (false, false) if i == j => third,
                    _ => 0.0,
                };
            }
        }
        m
    }
}
