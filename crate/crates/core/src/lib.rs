//! Exact-arithmetic toolkit for secant varieties and maximum X-rank bounds.
//!
//! Everything in this crate is pure computation over the rationals (with a
//! word-size modular fast path) and builds without `std`: an allocator is
//! the only requirement. File formats, reports and the command line live in
//! the companion `ranklab` crate.
//!
//! Module map:
//!
//! - [`matrix`], [`poly`], [`tensor`], [`random`]: exact scalars, dense
//!   matrices with Bareiss and modular rank, multivariate polynomials,
//!   three-way tensors and their flattenings, seeded sampling.
//! - [`varieties`]: Veronese, Grassmann, Segre and the adjoint flag variety
//!   `F(0,1;2)`, with embeddings, tangent cones and the known hypersurface
//!   equations.
//! - [`secant`]: expected/actual secant dimensions, Terracini sampling,
//!   exception tables and generic rank.
//! - [`bounds`]: the maximum-rank bound formulas and per-variety reports.
//! - [`census`]: enumeration of families with a hypersurface secant variety.
//! - [`flag`]: explicit rank decompositions on the tangent space of the flag
//!   variety, with exact verification and fuzzing.
//! - [`witness`]: line restriction and secondary intersections, producing
//!   verified decompositions `P = αQ + βR`.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod census;
mod error;
pub mod flag;
pub mod matrix;
pub mod poly;
pub mod random;
pub mod roots;
pub mod scalar;
pub mod secant;
pub mod tensor;
pub mod varieties;
pub mod witness;

pub use error::{Error, Result};
pub use matrix::{rank_exact, rank_modp, DenseMatrix};
pub use poly::{eval_poly, MultiPoly};
pub use scalar::Scalar;
pub use tensor::{flattening_rank, Mode, Tensor3};
pub use varieties::{AmbientInfo, ParamPoint, VarietyFamily};
