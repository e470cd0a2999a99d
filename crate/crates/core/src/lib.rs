//! A multiprecision laboratory for semi-group-map public-key schemes and
//! the ciphertext-only attacks that break them.
//!
//! The crate is organized around six subsystems:
//!
//! - [`realnum`] — fixed-precision base-B reals (exact scaled integers,
//!   round-half-to-even) with pi, cos, arccos and sqrt.
//! - [`chebyshev`] — three independent evaluators for the Chebyshev maps
//!   T_n(x) plus semi-group utilities.
//! - [`elliptic`] — AGM-based Jacobian elliptic functions cn, sn, cn^-1,
//!   the quarter period K, and the elliptic rational maps R_p(w, k).
//! - [`cryptosystem`] — ElGamal-style key generation, encryption and
//!   decryption over either map family, plus the text key/ciphertext
//!   file formats.
//! - [`attack`] — the index-recovery engine: linear congruences mod B^L
//!   solved by extended Euclid, candidate enumeration over the angle
//!   lattice, and the full ciphertext / key-agreement breaks.
//! - [`protocols`] — the Diffie-Hellman-like key agreement and the
//!   iterated-map entity-authentication scheme, with passive-adversary
//!   breaks for both, runnable as seeded scenarios.

pub mod attack;
pub mod chebyshev;
pub mod cryptosystem;
pub mod elliptic;
pub mod error;
pub mod protocols;
pub mod realnum;

pub use error::{Error, Result};
pub use realnum::{PrecisionConfig, Real};
