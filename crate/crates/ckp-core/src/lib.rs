//! Solvers for the chance-constrained binary knapsack problem (CKP) with
//! independent normally distributed item weights.
//!
//! The chance constraint `P{sum a~_j x_j <= b} >= rho` reduces to the
//! deterministic constraint
//!
//! ```text
//! sum_j a_j x_j + kappa * sqrt(sum_j sigma_j^2 x_j^2) <= b,   kappa = Phi^-1(rho)
//! ```
//!
//! This crate provides:
//!
//! * [`ncr`] — a polynomial-time solver for the *non-convex relaxation*
//!   (`x_j` instead of `x_j^2` under the square root), via a parametric
//!   greedy over a candidate set of deviation budgets.
//! * [`approx`] — a 1/2-approximation for the binary problem obtained by
//!   rounding the relaxation optimum.
//! * [`bounds`] — independent upper bounds: a Lagrangian-dual estimate of the
//!   convex (SOCP) relaxation and the submodular-polytope separation oracle.
//! * [`exact`] — exhaustive enumeration and a branch-and-bound using the
//!   non-convex relaxation as bounding function, for ground-truth optima.
//! * [`gen`] — seeded, reproducible benchmark instance families.
//!
//! The crate is `no_std` (with `alloc`); all IO and file formats live in the
//! companion `ckp-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod approx;
pub mod bounds;
pub mod exact;
pub mod gen;
pub mod instance;
pub mod math;
pub mod ncr;

pub use instance::{BinarySolution, FractionalSolution, Instance, Violation};
pub use ncr::{DeltaCandidates, NcrError, NcrResult};
