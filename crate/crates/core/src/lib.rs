//! Scattering in a linearly stratified medium: `(Delta + E + x2) u = 0`.
//!
//! The crate evaluates the medium's fundamental solution by contour quadrature
//! through saddle points ([`contour`]), discretizes boundary integral equations
//! with a high-order Nyström method ([`boundary`], [`alpert`], [`bie`]) and
//! reconstructs and checks fields ([`field`]).

// `!(x > 0.0)` is used on purpose so that NaN is rejected too; reference
// constants keep the digits they were published with.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod alpert;
pub mod bie;
pub mod boundary;
pub mod contour;
pub mod error;
pub mod field;
pub mod geom;
pub mod specfun;

pub use contour::{eval_phi, eval_phi_batch, helmholtz_mode_phi, FsConfig, FsValue};
pub use error::{BatchError, BieError, FsError, SpecFunError};
pub use geom::Point2;
