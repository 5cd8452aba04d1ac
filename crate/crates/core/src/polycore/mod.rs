//! Exact arithmetic substrate: dyadic numbers, intervals, dense univariate
//! and sparse bivariate integer polynomials.

pub mod bivariate;
pub mod dyadic;
pub mod interval;
pub mod ring;
pub mod univariate;

pub use bivariate::{BivariatePolynomial, Var};
pub use dyadic::{Dyadic, Rounding};
pub use interval::{DyadicInterval, PlanarBox};
pub use ring::{bareiss_determinant, Ring};
pub use univariate::{Poly, UnivariatePolynomial};
