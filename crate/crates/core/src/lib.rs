//! Blind signcryption over the order-q subgroup of Z_p*.
//!
//! Building blocks, bottom up:
//!
//! - [`group`]: parameters, scalars, group elements, counted `modexp`.
//! - [`suite`]: hash, keyed hash, stream cipher, key splitting.
//! - [`sdss`]: shortened DSS signatures.
//! - [`zheng`]: Zheng signcryption.
//! - [`blind_sdss`]: the blind SDSS protocol and the unblinding oracle.
//! - [`blind_signcrypt`]: blind signcryption for signer A, requester B and
//!   recipient C.
//! - [`wire`]: canonical binary encoding and hex armor.
//! - [`harness`] and [`bench`]: full-knowledge runs, unlinkability and
//!   tamper suites, exponentiation counts.

pub mod bench;
pub mod blind_sdss;
pub mod blind_signcrypt;
pub mod error;
pub mod group;
pub mod harness;
pub mod rng;
pub mod sdss;
pub mod suite;
pub mod wire;
pub mod zheng;

pub use error::{Error, Result};
pub use group::{GroupElement, GroupParams, Scalar};
pub use sdss::KeyPair;
pub use suite::{CryptoSuite, SuiteId};
