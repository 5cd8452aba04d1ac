//! Certified real-root isolation and real algebraic numbers.

mod algebraic;
mod bitstream;
mod descartes;

pub use algebraic::{compare, AlgebraicNumber};
pub use bitstream::{bitstream_isolate_simple, MultipleRootInterval};
pub use descartes::{descartes_isolate, real_roots};
