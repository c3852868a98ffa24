//! Exact and asymptotic counting of restricted integer partitions.
//!
//! The crate has four working layers:
//!
//! - [`count`]: exact arbitrary-precision counts of partitions, with and
//!   without part restrictions, by several independent algorithms plus a
//!   brute-force enumeration oracle.
//! - [`asym`]: extended-precision evaluation of the Hardy-Ramanujan leading
//!   and strong asymptotics, Schur's restricted-partition asymptotic, and the
//!   complementary Schur main term for partitions avoiding a finite part set,
//!   with convergence tables against the exact counts.
//! - [`expansion`]: truncated series algebra in x = n^(-1/2) with
//!   polynomial-in-s coefficients. It mechanically rebuilds the coefficient
//!   polynomials behind the p(n-s) expansion and verifies the alternating
//!   subset-sum identity in exact integer arithmetic.
//! - [`ideals`]: partition-ideal machinery: the subpartition order, unions,
//!   basis-avoiding counts, the Cohen-Remmel equality check, growth-bound
//!   checks, and the oscillating interval-ideal construction with exact toy
//!   checks and log-space certificates.
//!
//! Start with the runnable examples (`cargo run --example exact_counting`,
//! `--example complementary_schur`, ...) or the thin `partition-asym` CLI.

pub mod asym;
pub mod config;
pub mod count;
pub mod error;
pub mod expansion;
pub mod ideals;
pub mod report;
pub mod tolerances;
pub mod verify;
pub mod xreal;

pub use error::{Error, Result};
