//! Exact analysis of one-dimensional self-similar sets whose first-level
//! intervals may touch, and of their Lipschitz equivalence with the
//! equally spaced dust-like set built from the same ratios.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactnum`] exact ratios, symbolic reals, multiplicative dependence
//!   and the Moran equation;
//! * [`ifscore`] system specifications, words, cylinders and cylinder unions;
//! * [`patches`] touching patches, the `C^k` sets and partition sequences;
//! * [`decide`] necessary conditions, substitutability and the verdict;
//! * [`certify`] graph-directed decomposition certificates and their
//!   finite-depth expansion;
//! * [`document`] the versioned JSON input format.

pub mod certify;
pub mod decide;
pub mod document;
pub mod exactnum;
pub mod ifscore;
pub mod patches;
