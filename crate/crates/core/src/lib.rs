//! Logarithmic energy of mean empirical spectral distributions.
//!
//! For the classical unitarily invariant ensembles (GUE, complex Ginibre,
//! square LUE) the mean empirical spectral distribution has an explicit
//! density at every finite dimension `n`, and its penalized logarithmic
//! energy admits a closed form in terms of harmonic numbers and the Euler
//! constant. This crate computes that quantity by three mutually
//! cross-checking routes:
//!
//! 1. [`closedform`] — the exact formulas, including the Ginibre tail
//!    series with certified truncation error;
//! 2. [`logenergy`] over the exact level densities of [`density`] —
//!    singular-kernel quadrature handling the `log |x - y|` diagonal;
//! 3. [`rmt_mc`] — a cross-replica Monte Carlo estimator over sampled
//!    matrices, with in-house eigensolvers.
//!
//! [`identities`] makes the combinatorial and integral lemmas behind the
//! closed forms regression-testable (exact rational arithmetic where
//! possible, high-accuracy quadrature otherwise).
//!
//! The crate is `no_std` (with `alloc`); everything requiring IO, file
//! formats, or a thread pool lives in the companion CLI crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod closedform;
pub mod density;
mod error;
pub mod identities;
mod kahan;
pub mod logenergy;
pub mod quad;
pub mod rmt_mc;
pub mod specfun;

pub use error::{Error, Result};
pub use kahan::KahanSum;
