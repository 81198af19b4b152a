//! Exact reconstruction and machine checking of dissection proofs for the
//! sums of powers `S_p(n) = 1^p + 2^p + … + n^p`, `p = 1..4`.
//!
//! The crate is `no_std` (with `alloc`) when built without the default `std`
//! feature; `std` only adds a shared Bernoulli memo table.
//!
//! - [`exact`]: rationals and the field Q(√21).
//! - [`figurate`]: Bernoulli numbers, Faulhaber's formula, the identity registry.
//! - [`pyramid`]: lattice pyramids and their main/secondary sections.
//! - [`dissect`]: dissection certificates, their generators and the exact-cover checker.
//! - [`render`]: deterministic SVG/TikZ figures built from the exact model.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod dissect;
pub mod exact;
pub mod figurate;
pub mod pyramid;
pub mod render;

pub use exact::{quad_compare, quad_to_float, strip_root, QuadExt, Rat};
pub use figurate::{
    bernoulli, evaluate_identity, faulhaber, sum_powers_bruteforce, BernoulliTable, IdentityName, IdentityParams,
    IdentityReport,
};
