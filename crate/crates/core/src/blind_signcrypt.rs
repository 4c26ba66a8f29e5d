//! Blind signcryption: requester B encrypts a message for recipient C and
//! obtains signer A's blind signature over it in the same run.
//!
//! A's side is exactly the blind SDSS signer. B derives `(K1, K2)` from
//! `y_C^u`, encrypts with `K1`, tags with `r = KH_{K2}(m, bind_info)` and
//! then blinds `r` as in blind SDSS. C recovers `y_C^u` as
//! `(y_A * T * g^r)^(s * x_C)` and checks the tag.
//!
//! B computes in the order `u -> shared -> K1, K2 -> c -> r -> beta ->
//! alpha -> T`; the messages exchanged are the same three as blind SDSS.

use rand_core::RngCore;
use serde::{Deserialize, Serialize};

use crate::blind_sdss::{
    blind, check_commit, unblind, BlindSignature, ChallengeMsg, CommitMsg, RequesterSecrets,
    RequesterState, ResponseMsg,
};
use crate::error::{Error, Result};
use crate::group::{modexp, rand_scalar_nonzero, GroupElement, GroupParams, Scalar};
use crate::sdss::KeyPair;
use crate::suite::{derive_keys, tag_to_scalar, CryptoSuite, SplitKeys};

pub use crate::blind_sdss::{
    signer_commit as bsc_signer_commit, signer_respond as bsc_signer_respond, SignerSession,
};

/// What C receives: ciphertext, tag scalar, signature scalar and `T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlindSigncryptedText {
    pub c: Vec<u8>,
    pub r: Scalar,
    pub s: Scalar,
    pub t: GroupElement,
}

impl BlindSigncryptedText {
    /// The `(r, s, T)` part, which is a blind SDSS signature shape.
    pub fn signature(&self) -> BlindSignature {
        BlindSignature {
            r: self.r.clone(),
            s: self.s.clone(),
            t: self.t.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Sealed {
    secrets: RequesterSecrets,
    shared: GroupElement,
    keys: SplitKeys,
    c: Vec<u8>,
}

/// Requester B's side of one blind signcryption run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BscRequesterSession {
    state: RequesterState,
    message: Vec<u8>,
    bind_info: Vec<u8>,
    sealed: Option<Sealed>,
}

impl BscRequesterSession {
    pub fn new(message: Vec<u8>, bind_info: Vec<u8>) -> Self {
        BscRequesterSession {
            state: RequesterState::AwaitCommit,
            message,
            bind_info,
            sealed: None,
        }
    }

    pub fn state(&self) -> RequesterState {
        self.state
    }

    /// Test-mode access to `(u, alpha, beta, r, r_bar, T)`.
    pub fn secrets(&self) -> Option<&RequesterSecrets> {
        self.sealed.as_ref().map(|s| &s.secrets)
    }

    /// Test-mode access to `y_C^u`.
    pub fn shared(&self) -> Option<&GroupElement> {
        self.sealed.as_ref().map(|s| &s.shared)
    }

    pub fn challenge(
        &mut self,
        commit: &CommitMsg,
        recipient_pub: &GroupElement,
        params: &GroupParams,
        suite: &CryptoSuite,
        rng: &mut (impl RngCore + ?Sized),
    ) -> Result<ChallengeMsg> {
        if self.state != RequesterState::AwaitCommit {
            return Err(Error::InvalidState);
        }
        check_commit(commit, params)?;
        params.check_element(recipient_pub)?;
        let (u, shared, keys, r) = loop {
            let u = rand_scalar_nonzero(rng, params.q())?;
            let shared = modexp(recipient_pub, &u, params);
            let keys = derive_keys(&shared, params, suite);
            let r = tag_to_scalar(&keys.k2, &self.message, &self.bind_info, params.q(), suite);
            if !r.is_zero() {
                break (u, shared, keys, r);
            }
        };
        let c = suite.encrypt(&keys.k1, &self.message);
        let secrets = blind(u, r, &commit.z, params, rng)?;
        let msg = ChallengeMsg {
            r_bar: secrets.r_bar.clone(),
        };
        self.sealed = Some(Sealed {
            secrets,
            shared,
            keys,
            c,
        });
        self.state = RequesterState::Challenged;
        Ok(msg)
    }

    pub fn finalize(
        &mut self,
        response: &ResponseMsg,
        params: &GroupParams,
    ) -> Result<BlindSigncryptedText> {
        if self.state != RequesterState::Challenged {
            return Err(Error::InvalidState);
        }
        self.state = RequesterState::Done;
        let sealed = self.sealed.as_ref().ok_or(Error::InvalidState)?;
        let s = unblind(&sealed.secrets, response, params)?;
        Ok(BlindSigncryptedText {
            c: sealed.c.clone(),
            r: sealed.secrets.r.clone(),
            s,
            t: sealed.secrets.t.clone(),
        })
    }
}

pub fn bsc_requester_challenge(
    message: &[u8],
    commit: &CommitMsg,
    recipient_pub: &GroupElement,
    bind_info: &[u8],
    params: &GroupParams,
    suite: &CryptoSuite,
    rng: &mut (impl RngCore + ?Sized),
) -> Result<(BscRequesterSession, ChallengeMsg)> {
    let mut session = BscRequesterSession::new(message.to_vec(), bind_info.to_vec());
    let msg = session.challenge(commit, recipient_pub, params, suite, rng)?;
    Ok((session, msg))
}

pub fn bsc_requester_finalize(
    session: &mut BscRequesterSession,
    response: &ResponseMsg,
    params: &GroupParams,
) -> Result<BlindSigncryptedText> {
    session.finalize(response, params)
}

/// `(y_A * T * g^r)^(s * x_C mod q) mod p`.
pub fn recipient_shared(
    ct: &BlindSigncryptedText,
    recipient: &KeyPair,
    signer_pub: &GroupElement,
    params: &GroupParams,
) -> GroupElement {
    let base = params.mul(&params.mul(signer_pub, &ct.t), &modexp(params.g(), &ct.r, params));
    let exp = params.mul_scalars(&ct.s, recipient.secret());
    modexp(&base, &exp, params)
}

/// Recovers the message, or [`Error::TagMismatch`] on any tampering, wrong
/// key or wrong `bind_info`. No partial plaintext is returned on failure.
pub fn unsigncrypt(
    ct: &BlindSigncryptedText,
    recipient: &KeyPair,
    signer_pub: &GroupElement,
    bind_info: &[u8],
    params: &GroupParams,
    suite: &CryptoSuite,
) -> Result<Vec<u8>> {
    let in_range = params.check_scalar(&ct.r).is_ok()
        && params.check_scalar(&ct.s).is_ok()
        && params.check_element(&ct.t).is_ok()
        && params.check_element(signer_pub).is_ok();
    if !in_range || ct.r.is_zero() || ct.s.is_zero() {
        return Err(Error::TagMismatch);
    }
    let shared = recipient_shared(ct, recipient, signer_pub, params);
    let keys = derive_keys(&shared, params, suite);
    let message = suite.decrypt(&keys.k1, &ct.c);
    if tag_to_scalar(&keys.k2, &message, bind_info, params.q(), suite) == ct.r {
        Ok(message)
    } else {
        Err(Error::TagMismatch)
    }
}
