//! Exact number-theoretic machinery for comparing number fields by their
//! prime splitting behaviour.
//!
//! The crate is organized in layers:
//!
//! - [`arith`]: gcd/lcm, Euler's totient, divisor enumeration, factor-closed
//!   sets, primality testing and prime sieving.
//! - [`gcd_matrix`]: symmetric GCD matrices, exact determinants by
//!   fraction-free elimination, and the totient-product determinant identity
//!   for factor-closed sets.
//! - [`signature`]: gcd-sum signatures of integer multisets and exact
//!   reconstruction of a multiset from its signature.
//! - [`spectra`]: eigenvalue-1 multiplicities of powers of permutation-type
//!   matrices, with cycle-counting and characteristic-polynomial oracles.
//! - [`splitting`]: arithmetic types and splitting numbers of good primes of
//!   a monic integer polynomial, via distinct-degree factorization over
//!   prime fields.
//! - [`equiv`]: prime-by-prime comparison of two fields under the type and
//!   count criteria, plus corpus ingestion and machine-readable reports.

pub mod arith;
pub mod equiv;
pub mod gcd_matrix;
pub mod signature;
pub mod spectra;
pub mod splitting;

mod error;

pub use error::Error;
