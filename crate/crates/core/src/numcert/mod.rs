//! Certified numerical root finding on bitstream polynomials: Aberth
//! iteration, inclusion discs, and real-root extraction by conjugate
//! separation.

mod aberth;
mod bitstream;
mod clusters;
mod complex;
mod solve;

pub use aberth::{aberth_step, eval_complex, AberthState};
pub use bitstream::{eval_intervals, BitstreamPolynomial, CoefficientOracle};
pub use clusters::{neumaier_clusters, separated_real_roots, Disc, RootCluster, RootClusterSet};
pub use complex::{Complex, ComplexInterval};
pub use solve::{certified_solve, extract_real_roots, SolveOutcome, SolveSession, SolverConfig};
