//! Shortened DSS: `r = h(g^k || m)`, `s = k / (r + x) mod q`, verified by
//! recomputing `K = (y * g^r)^s mod p` and checking `h(K || m) = r`.

use rand_core::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{modexp, modinv, rand_scalar_nonzero, GroupElement, GroupParams, Scalar};
use crate::suite::{element_preimage, hash_to_scalar, CryptoSuite};

/// A party's long-term key: secret `x` in `[1, q)` and public `y = g^x`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyPair {
    x: Scalar,
    y: GroupElement,
}

impl std::fmt::Debug for KeyPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("KeyPair").field("y", &self.y).finish_non_exhaustive()
    }
}

impl KeyPair {
    pub fn from_secret(x: Scalar, params: &GroupParams) -> Result<Self> {
        params.check_scalar(&x)?;
        if x.is_zero() {
            return Err(Error::OutOfRange);
        }
        let y = modexp(params.g(), &x, params);
        Ok(KeyPair { x, y })
    }

    /// Rebuilds a pair read from storage, checking `y = g^x`.
    pub fn from_parts(x: Scalar, y: GroupElement, params: &GroupParams) -> Result<Self> {
        let pair = Self::from_secret(x, params)?;
        if pair.y != y {
            return Err(Error::InconsistentKey);
        }
        Ok(pair)
    }

    pub fn secret(&self) -> &Scalar {
        &self.x
    }

    pub fn public(&self) -> &GroupElement {
        &self.y
    }
}

pub fn keygen(params: &GroupParams, rng: &mut (impl RngCore + ?Sized)) -> Result<KeyPair> {
    let x = rand_scalar_nonzero(rng, params.q())?;
    KeyPair::from_secret(x, params)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdssSignature {
    pub r: Scalar,
    pub s: Scalar,
}

/// A signature together with the nonce that produced it. Test mode only;
/// the nonce must never leave the process otherwise.
#[derive(Debug, Clone)]
pub struct SignTrace {
    pub signature: SdssSignature,
    pub nonce: Scalar,
    pub attempts: u32,
}

pub fn sign(
    message: &[u8],
    key: &KeyPair,
    params: &GroupParams,
    suite: &CryptoSuite,
    rng: &mut (impl RngCore + ?Sized),
) -> Result<SdssSignature> {
    sign_with_trace(message, key, params, suite, rng).map(|t| t.signature)
}

pub fn sign_with_trace(
    message: &[u8],
    key: &KeyPair,
    params: &GroupParams,
    suite: &CryptoSuite,
    rng: &mut (impl RngCore + ?Sized),
) -> Result<SignTrace> {
    let mut attempts = 0;
    loop {
        attempts += 1;
        let k = rand_scalar_nonzero(rng, params.q())?;
        let commitment = modexp(params.g(), &k, params);
        let r = hash_to_scalar(&element_preimage(params, &commitment, message), params.q(), suite);
        if r.is_zero() {
            continue;
        }
        let denom = params.add(&r, &key.x);
        let Ok(inv) = modinv(&denom, params.q()) else {
            continue;
        };
        let s = params.mul_scalars(&k, &inv);
        return Ok(SignTrace {
            signature: SdssSignature { r, s },
            nonce: k,
            attempts,
        });
    }
}

/// Recomputes `K = (y * g^r)^s mod p`.
pub fn recover_commitment(
    sig: &SdssSignature,
    signer_pub: &GroupElement,
    params: &GroupParams,
) -> GroupElement {
    let base = params.mul(signer_pub, &modexp(params.g(), &sig.r, params));
    modexp(&base, &sig.s, params)
}

pub fn verify(
    message: &[u8],
    sig: &SdssSignature,
    signer_pub: &GroupElement,
    params: &GroupParams,
    suite: &CryptoSuite,
) -> bool {
    let in_range = params.check_scalar(&sig.r).is_ok()
        && params.check_scalar(&sig.s).is_ok()
        && params.check_element(signer_pub).is_ok();
    if !in_range || sig.r.is_zero() || sig.s.is_zero() {
        return false;
    }
    let k = recover_commitment(sig, signer_pub, params);
    hash_to_scalar(&element_preimage(params, &k, message), params.q(), suite) == sig.r
}
