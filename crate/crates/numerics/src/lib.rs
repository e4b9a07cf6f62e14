//! Numerical kernels shared by the fiber, overlap, grating and spectral
//! modules: bracketed root finding, adaptive 1-D quadrature and
//! integer-order Bessel functions, plus Chebyshev interpolation for
//! tabulating expensive smooth functions.
//!
//! Everything here is a pure function of its inputs and safe to call from
//! any number of threads.

pub mod bessel;
pub mod chebyshev;
pub mod quadrature;
pub mod roots;

pub use bessel::{
    bessel, bessel_j, bessel_j_with_derivative, bessel_k, bessel_k_scaled,
    bessel_k_scaled_with_derivative, bessel_k_with_derivative, BesselError, BesselKind, MAX_ORDER,
};
pub use chebyshev::{chebyshev_points, Chebyshev};
pub use quadrature::{
    integrate, integrate_piecewise, trapezoid, QuadResult, QuadValue, QuadratureError,
    QuadratureSpec,
};
pub use roots::{find_root, scan_sign_changes, RootError, RootSpec};
