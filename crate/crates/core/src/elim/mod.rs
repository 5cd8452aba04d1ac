//! Symbolic elimination: resultants, signed subresultants, square-free
//! factorization.

mod resultant;
mod subres;
mod yun;

pub use resultant::{resultant, resultant_generic, resultant_univariate};
pub use subres::{pmv, signed_subresultant_coeffs, signed_subresultant_poly};
pub use yun::{gcd_univariate, multiplicity_at, yun_squarefree, SquareFreeFactorization};
