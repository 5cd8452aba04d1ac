//! Certified topology of real algebraic plane curves.
//!
//! Given a square-free `f in Z[x, y]`, [`pipeline::analyze`] returns a
//! straight-line graph isotopic to the real zero set of `f`.

pub mod error;
pub mod polycore;

pub use error::{CurveError, Result};
pub mod bisolve;
pub mod connect;
pub mod elim;
pub mod lift;
pub mod numcert;
pub mod pipeline;
pub mod realroots;
