//! Exact bookkeeping for the Galois action on cohomological automorphic
//! representations and the nonvanishing of their central L-values.
//!
//! The weight layer ([`weyl_root`]) is generic over [`scalar::Scalar`]; every
//! other module works over [`Q`]. Analytic facts about L-functions enter only
//! through an [`eisenstein::AnalyticLedger`] of declared orders.

pub mod scalar;
pub mod weyl_root;
pub mod grp;
pub mod satake;
pub mod dualside;
pub mod archimedean;
pub mod spectra;
pub mod eisenstein;
pub mod normalizer;
pub mod cli;
pub mod selftest;

pub use scalar::{Scalar, Q};

/// Weights with exact rational coordinates.
pub type Weight = weyl_root::Weight<Q>;
/// Root data with exact rational coordinates.
pub type RootDatum = weyl_root::RootDatum<Q>;
