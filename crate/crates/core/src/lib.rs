//! Numerical toolkit for vector-valued dyadic square operators.
//!
//! The crate is organised bottom-up:
//!
//! | module | contents |
//! |--------|----------|
//! | [`young`] | Young functions, inverses, complements, Luxemburg averages |
//! | [`seqnorm`] | monotone norms on finitely supported sequences indexed by ℤ |
//! | [`grid`] | cell-centred grid functions with exact prefix-sum quadrature |
//! | [`maximal`] | Hardy–Littlewood, Orlicz, fractional and sharp maximal operators |
//! | [`weights`] | Muckenhoupt constants, BMO norms, John–Nirenberg checks |
//! | [`kernel`] | the dyadic kernel family and the Hörmander-type evaluators |
//! | [`operator`] | the square operator, its commutators and fractional variants |
//!
//! Everything here is pure computation on in-memory values. File formats,
//! experiment drivers and the command line live in the `hormander-lab` crate.

#![cfg_attr(not(any(feature = "std", test)), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod error;
pub mod grid;
pub mod kernel;
pub mod maximal;
pub mod operator;
pub mod seqnorm;
pub mod weights;
pub mod young;

mod math;
mod quad;
mod solve;
mod wavelet;

pub use error::{Error, Result};
pub use grid::{Grid, GridFunction, VectorGridFunction};
pub use kernel::{DyadicKernel, Flavor, HormanderQuery};
pub use maximal::BallFamily;
pub use operator::OperatorSpec;
pub use seqnorm::{SeqNorm, SparseSeq};
pub use young::{Interval, YoungFunction};
