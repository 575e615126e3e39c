//! Exact computer algebra around the multivariate resultant.
//!
//! The centerpiece is a resultant engine that deforms a target system to a
//! solved initial system of products of linear forms, lifts the roots as
//! truncated power series, and assembles the resultant through the Poisson
//! product formula. On top of it sit randomized procedures for deciding
//! satisfiability over the algebraic closure, counting the points of
//! zero-dimensional varieties, univariate GCDs and distinct-root counts via
//! resultant filtering, radical membership, variety dimension, and tensor
//! rank. Independent brute-force oracles (Sylvester and Macaulay
//! determinants, Euclid, exhaustive search, squarefree decomposition) back
//! every main path, and a small library of uniform constant-depth circuit
//! families is materialized as queryable DAGs.

pub mod arith;
pub mod circuits;
pub mod error;
pub mod homotopy;
pub mod mono;
pub mod oracles;
pub mod param;
pub mod poly;
pub mod reductions;
pub mod ring;
pub mod rng;
pub mod series;
pub mod uni;

pub use error::{Error, Result};
