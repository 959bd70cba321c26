//! Exact and high-precision computations for rank-3 character vectors.
//!
//! A character vector `(f0, f1, f2)` solving the monic modular differential
//! equation `(D^3 + a E4 D + b E6) f = 0` is determined by the conformal
//! weights `h1, h2`. This crate builds those vectors exactly, enumerates the
//! rational points of the associated elliptic surface, runs the positivity
//! and p-adic integrality sieves, recovers S-matrices numerically with
//! certified error, and carries the Lie-theoretic and prime-window checks.
//!
//! Module map:
//!
//! - [`qseries`]: truncated Puiseux q-expansions and level-one modular forms.
//! - [`hypergeom`]: `3F2` coefficients and their p-adic valuations.
//! - [`characters`]: character vectors and the Frobenius solver.
//! - [`surface`]: the elliptic surface in `(m, x, y)`.
//! - [`sieve`]: positivity regions, coefficient scans, witness searches.
//! - [`monodromy`]: admissible exponent triples and residue pairs.
//! - [`ball`]: midpoint-radius big-float arithmetic.
//! - [`smatrix`]: ball arithmetic, S-matrix extraction, Verlinde, glueing.
//! - [`lie`]: simple Lie algebra data and weight-2 dimensions.
//! - [`primes`]: prime windows in arithmetic progressions.
//! - [`golden`]: the published tables, loaded from `data/`.

pub mod ball;
pub mod characters;
pub mod error;
pub mod golden;
pub mod hypergeom;
pub mod lie;
pub mod monodromy;
pub mod primes;
pub mod qseries;
pub mod rat;
pub mod sieve;
pub mod smatrix;
pub mod surface;

pub use error::{Error, Result};
pub use rat::Q;
