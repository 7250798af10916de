//! Exact homological algebra for the hypersurface perverse schober on the
//! algebraic torus, and the rank-one wall-crossing it induces.
//!
//! The crate is `no_std` with `alloc`; the `std` feature only adds
//! `std::error::Error` impls.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod homalg;
pub mod laurent;
pub mod moduli;
pub mod qmat;
pub mod report;
pub mod schober;
pub mod sections;

pub use laurent::{LaurentError, LaurentPoly, Monomial, Rational, TorusPoint};
