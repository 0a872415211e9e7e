//! Prover and verifier toolkit for shifted minimal approximant bases of
//! polynomial matrices over a word-size prime field.
//!
//! Given an order `σ`, a matrix `F ∈ 𝔽_p[x]^{m×n}` with `cdeg(F) < σ` and a
//! shift `s`, a prover computes an `s`-minimal basis `P` of the module of
//! approximants `{p : p·F ≡ 0 mod X^σ}` together with a constant certificate
//! `C`, the degree-0 coefficient of `P·F·X^{-σ}`. The verifier decides
//! whether `(P, C)` is correct with a false-biased Monte-Carlo test whose
//! cost is close to the input size.
//!
//! The crate is `no_std` and only needs `alloc`. All arithmetic goes through
//! a [`FieldCtx`], which can optionally tally every field operation so that
//! verification cost can be compared against recomputation.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod certificate;
pub mod certify;
mod error;
pub mod field;
pub mod instance;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod prover;
pub mod rng;
pub mod truncprod;

pub use certificate::Certificate;
pub use certify::{certify, CertifyOptions, Condition, Verdict};
pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElem, OpCounts, SampleSet};
pub use instance::Instance;
pub use matrix::{ConstMatrix, Order, PolyMatrix, Shift, TruncOrder};
pub use poly::{Degree, Poly};
pub use rng::SeededRng;
