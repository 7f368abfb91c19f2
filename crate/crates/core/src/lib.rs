//! Exact-arithmetic verification of the nonexistence of isoparametric
//! submanifolds of `R^52` with marked Dynkin diagram D4 and uniform
//! multiplicity 4.
//!
//! The crate rebuilds every computational step of the argument and reports
//! each as a check:
//!
//! - [`rootsys`]: D4 roots, Cartan matrix, reflections and the Weyl group as
//!   signed permutations.
//! - [`cohomring`]: degree-`m` cohomology bases, the Kronecker pairing, the
//!   induced Weyl actions, and symmetric/invariant polynomials.
//! - [`pontsolve`]: the linear system for the first Pontryagin class of the
//!   curvature distribution `E_{alpha_1}`.
//! - [`vect4`]: rank-4 bundles over `S^4` modeled by their (Euler, p1) pairs.
//! - [`obstruct`]: the end-to-end pipeline and its report.
//! - [`cli`]: the command-line front end.
//!
//! All arithmetic is exact; no floating point is used anywhere.

#![forbid(unsafe_code)]

pub mod cli;
pub mod cohomring;
pub mod linalg;
pub mod obstruct;
pub mod poly;
pub mod pontsolve;
pub mod rational;
pub mod rootsys;
pub mod vect4;

pub use linalg::Matrix;
pub use rational::Rational;
