//! Core library for computing the smallest nontrivial Weil height attained
//! by a totally p-adic cubic algebraic number, for primes p >= 5.
//!
//! An algebraic number is *totally p-adic* when its minimal polynomial
//! splits completely over the p-adic field Q_p. This crate provides the
//! exact machinery needed to find, for a given prime, the minimal height
//! among all such cubic numbers:
//!
//! * [`cubic`]: integer cubic polynomials, their lengths, discriminants,
//!   depressed forms, and a complete irreducibility test.
//! * [`measure`]: certified Mahler measure and height computation backed
//!   by exact rational root brackets.
//! * [`padic`]: capped-relative-precision arithmetic in Q_p and in the
//!   unramified quadratic extension Q_p(√-3), with square/cube detection.
//! * [`splitting`]: the complete-splitting criteria for cubics over Q_p,
//!   plus an independent brute-force oracle used for cross-validation.
//! * [`abelian`]: cyclic (abelian) cubic detection, conductor and
//!   splitting-class computation, and the global height-bound certificate
//!   that guarantees the search terminates.
//! * [`corpus`]: enumeration of the finite candidate list and the
//!   per-prime minimal-height search.
//!
//! The crate is `no_std` (with `alloc`); IO, parallelism, file formats and
//! the command-line interface live in the companion `tau3-cli` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod abelian;
pub mod arith;
pub mod corpus;
pub mod cubic;
pub mod measure;
pub mod padic;
pub mod splitting;

pub use cubic::{CubicPoly, DepressedForm};
pub use measure::MeasureValue;
pub use padic::{PadicNumber, QuadExtElem};
pub use splitting::SplitVerdict;
