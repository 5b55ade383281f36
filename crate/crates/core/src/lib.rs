//! Root-system geometry, Stokes data and radial solutions of the tt*-Toda
//! equations of type A_n.
//!
//! * [`roots`]: roots of A_n, Coxeter orbits, projections to the Coxeter
//!   planes and the resulting particle masses.
//! * [`stokes`]: solution parameters m, k, N; closed-form Stokes data; the
//!   Steinberg cross-section and Stokes factors.
//! * [`representation`]: exterior powers, soliton polytopes of ∧^k C^{n+1}
//!   and the functoriality checks.
//! * [`radial`]: Newton solver for the radial equations and the tail fit.
//! * [`cli`], [`render`], [`io`]: command line, SVG and JSON/CSV output.

pub mod cli;
pub mod error;
pub mod io;
pub mod linalg;
pub mod radial;
pub mod render;
pub mod representation;
pub mod roots;
pub mod special;
pub mod stokes;

pub use error::{Error, Result};
