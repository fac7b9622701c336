//! Lattice zeta functions of the one-dimensional alternating lattice with
//! spacings 1 and Δ, and the zeros of its energy in `s`.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arith;
pub mod asymptotics;
pub mod cli;
pub mod continuation;
pub mod energy;
pub mod error;
pub mod quadrature;
pub mod theta;
pub mod validation;
pub mod zeros;
pub mod zeta;

pub use error::{Error, Result};
