//! Construction and verification of mixed Steiner triple systems
//! `MS(2,3, Z_2^n x Z_{k+1} x Z_{l+1})`.
//!
//! A mixed Steiner triple system is a set of weight-3 codewords over a mixed
//! alphabet such that every weight-2 word is at Hamming distance 1 from
//! exactly one codeword. This crate provides:
//!
//! * [`shortest`]: systems with the minimum number `n = k * l` of binary
//!   coordinates, for `k, l = 1 or 3 (mod 6)`, plus a fixed `k = 5, l = 3`
//!   system;
//! * [`subspace`]: systems read off 1-perfect mixed codes built from
//!   partitions of `F_2^N`;
//! * [`pairs_triples`]: pairs-triples designs and their equivalence with
//!   systems over `Z_2^m x Z_{r+1}`;
//! * [`extension`]: lengthening a system with a pairs-triples design;
//! * [`verify`]: brute-force checks that never look at how a design was
//!   built.

pub mod classical;
pub mod error;
pub mod exact_cover;
pub mod extension;
pub mod format;
pub mod model;
pub mod pairs_triples;
pub mod shortest;
pub mod subspace;
pub mod verify;

pub use error::{MstsError, Result};
pub use model::{covers, enumerate_weight2_words, Design, Grid, GridPoint, MixedAlphabet, SparseWord};
pub use verify::{verify_msts, VerificationReport};
