//! Core library for symbol-pair coding: finite fields, the pair metric and its
//! ball combinatorics, asymptotic rate bounds, Reed-Solomon codes in the pair
//! metric, a list decoder for pair errors, and randomized list-size experiments.
//!
//! The crate is `no_std` (with `alloc`); everything here is deterministic given
//! its inputs and, where randomized, the caller-supplied seed.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod experiments;
pub mod galois;
mod linalg;
pub mod pair_list_decoder;
pub mod pair_metric;
pub mod poly;
pub mod rs_codes;

pub use galois::{BigField, BigFieldElement, Field, FieldElement, GaloisError};
pub use pair_metric::{PairMetricError, PairView, RunProfile, Word};
pub use poly::Poly;
