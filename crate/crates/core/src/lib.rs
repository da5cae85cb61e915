//! Arithmetic of a one-parameter family of cyclic septic fields `K_t`.
//!
//! `K_t` is generated by a root of the monic degree-7 polynomial `f_t`.
//! Its conductor, discriminant and Pólya group are all governed by the prime
//! factorization of the sextic `E(t) = t^6 + 2t^5 + 11t^4 + t^3 + 16t^2 + 4t + 8`.
//! The crate computes those invariants for individual parameters, checks the
//! polynomial identities behind the formulas, and builds CRT certificates for
//! runs of consecutive parameters with large Pólya groups.

pub mod arith;
pub mod blocks;
pub mod error;
pub mod family;
pub mod field;
pub mod poly;

pub use error::{Error, Result};
