//! Blind SDSS: signer A and requester B run a three-move protocol after
//! which B holds a signature `(r, s, T)` that A cannot link to the session.
//!
//! ```text
//!   A                                   B
//!   k~ <- Z_q*, z = g^k~   --- z --->
//!                                       u <- Z_q*, r = h(g^u || m)
//!                                       beta: r_bar = r + beta != 0
//!                          <-- r_bar -- alpha, T = z^r_bar * g^alpha
//!   s_bar = x_A + r_bar*k~ -- s_bar -->
//!                                       s = u / (r + s_bar + alpha)
//! ```
//!
//! Verification recomputes `g^u = (y_A * T * g^r)^s` and checks
//! `h(g^u || m) = r`.

use num_traits::Zero;
use rand_core::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{
    modexp, modinv, rand_scalar, rand_scalar_nonzero, GroupElement, GroupParams, Scalar,
};
use crate::sdss::KeyPair;
use crate::suite::{element_preimage, hash_to_scalar, CryptoSuite};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommitMsg {
    pub z: GroupElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChallengeMsg {
    pub r_bar: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResponseMsg {
    pub s_bar: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlindSignature {
    pub r: Scalar,
    pub s: Scalar,
    pub t: GroupElement,
}

/// What the signer sees during one run. `k_tilde` is only filled in test
/// mode.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct View {
    pub z: GroupElement,
    pub r_bar: Scalar,
    pub s_bar: Scalar,
    pub k_tilde: Option<Scalar>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignerState {
    Init,
    Committed,
    Responded,
}

/// Signer A's side of one run. Each session answers exactly one challenge.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SignerSession {
    state: SignerState,
    k_tilde: Option<Scalar>,
    z: Option<GroupElement>,
    r_bar: Option<Scalar>,
    s_bar: Option<Scalar>,
}

impl Default for SignerSession {
    fn default() -> Self {
        Self::new()
    }
}

impl SignerSession {
    pub fn new() -> Self {
        SignerSession {
            state: SignerState::Init,
            k_tilde: None,
            z: None,
            r_bar: None,
            s_bar: None,
        }
    }

    pub fn state(&self) -> SignerState {
        self.state
    }

    /// Draws `k~` until `z = g^k~` is coprime to `q`.
    pub fn commit(
        &mut self,
        params: &GroupParams,
        rng: &mut (impl RngCore + ?Sized),
    ) -> Result<CommitMsg> {
        if self.state != SignerState::Init {
            return Err(Error::InvalidState);
        }
        let (k_tilde, z) = loop {
            let k = rand_scalar_nonzero(rng, params.q())?;
            let z = modexp(params.g(), &k, params);
            if coprime_to_q(&z, params) {
                break (k, z);
            }
        };
        self.k_tilde = Some(k_tilde);
        self.z = Some(z.clone());
        self.state = SignerState::Committed;
        Ok(CommitMsg { z })
    }

    /// `s_bar = x_A + r_bar * k~ mod q`. One-shot.
    pub fn respond(
        &mut self,
        challenge: &ChallengeMsg,
        key: &KeyPair,
        params: &GroupParams,
    ) -> Result<ResponseMsg> {
        if self.state != SignerState::Committed {
            return Err(Error::InvalidState);
        }
        params
            .check_scalar(&challenge.r_bar)
            .map_err(|_| Error::BadChallenge)?;
        if challenge.r_bar.is_zero() {
            return Err(Error::BadChallenge);
        }
        let k_tilde = self.k_tilde.as_ref().ok_or(Error::InvalidState)?;
        let s_bar = params.add(key.secret(), &params.mul_scalars(&challenge.r_bar, k_tilde));
        self.r_bar = Some(challenge.r_bar.clone());
        self.s_bar = Some(s_bar.clone());
        self.state = SignerState::Responded;
        Ok(ResponseMsg { s_bar })
    }

    /// The signer's transcript, available once the session has responded.
    pub fn view(&self) -> Option<View> {
        Some(View {
            z: self.z.clone()?,
            r_bar: self.r_bar.clone()?,
            s_bar: self.s_bar.clone()?,
            k_tilde: None,
        })
    }

    /// Like [`view`](Self::view) but including the nonce. Test mode only.
    pub fn view_with_nonce(&self) -> Option<View> {
        let mut view = self.view()?;
        view.k_tilde = self.k_tilde.clone();
        Some(view)
    }
}

pub fn signer_commit(
    params: &GroupParams,
    rng: &mut (impl RngCore + ?Sized),
) -> Result<(SignerSession, CommitMsg)> {
    let mut session = SignerSession::new();
    let msg = session.commit(params, rng)?;
    Ok((session, msg))
}

pub fn signer_respond(
    session: &mut SignerSession,
    challenge: &ChallengeMsg,
    key: &KeyPair,
    params: &GroupParams,
) -> Result<ResponseMsg> {
    session.respond(challenge, key, params)
}

/// gcd(v, q) = 1 for prime q, i.e. v is not a multiple of q.
pub(crate) fn coprime_to_q(v: &GroupElement, params: &GroupParams) -> bool {
    !(v.value() % params.q()).is_zero()
}

pub(crate) fn check_commit(commit: &CommitMsg, params: &GroupParams) -> Result<()> {
    if params.check_element(&commit.z).is_err() || !coprime_to_q(&commit.z, params) {
        return Err(Error::BadCommit);
    }
    Ok(())
}

/// Requester-side randomness and derived values of one run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RequesterSecrets {
    pub u: Scalar,
    pub alpha: Scalar,
    pub beta: Scalar,
    pub r: Scalar,
    pub r_bar: Scalar,
    pub t: GroupElement,
}

/// Given `r`, draws `beta` until `r_bar = r + beta != 0`, then `alpha`, and
/// forms `T = z^r_bar * g^alpha` (= `z^r * z^beta * g^alpha`).
pub(crate) fn blind(
    u: Scalar,
    r: Scalar,
    z: &GroupElement,
    params: &GroupParams,
    rng: &mut (impl RngCore + ?Sized),
) -> Result<RequesterSecrets> {
    let (beta, r_bar) = loop {
        let beta = rand_scalar(rng, params.q())?;
        let r_bar = params.add(&r, &beta);
        if !r_bar.is_zero() {
            break (beta, r_bar);
        }
    };
    let alpha = rand_scalar(rng, params.q())?;
    let t = params.mul(&modexp(z, &r_bar, params), &modexp(params.g(), &alpha, params));
    Ok(RequesterSecrets {
        u,
        alpha,
        beta,
        r,
        r_bar,
        t,
    })
}

/// `s = u / (r + s_bar + alpha) mod q`.
pub(crate) fn unblind(
    secrets: &RequesterSecrets,
    response: &ResponseMsg,
    params: &GroupParams,
) -> Result<Scalar> {
    params.check_scalar(&response.s_bar)?;
    let denom = params.add(&params.add(&secrets.r, &response.s_bar), &secrets.alpha);
    let inv = modinv(&denom, params.q()).map_err(|_| Error::DegenerateDenominator)?;
    Ok(params.mul_scalars(&secrets.u, &inv))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RequesterState {
    AwaitCommit,
    Challenged,
    Done,
}

/// Requester B's side of one run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RequesterSession {
    state: RequesterState,
    message: Vec<u8>,
    secrets: Option<RequesterSecrets>,
}

impl RequesterSession {
    pub fn new(message: Vec<u8>) -> Self {
        RequesterSession {
            state: RequesterState::AwaitCommit,
            message,
            secrets: None,
        }
    }

    pub fn state(&self) -> RequesterState {
        self.state
    }

    pub fn message(&self) -> &[u8] {
        &self.message
    }

    /// Test-mode access to `(u, alpha, beta, r, r_bar, T)`.
    pub fn secrets(&self) -> Option<&RequesterSecrets> {
        self.secrets.as_ref()
    }

    pub fn challenge(
        &mut self,
        commit: &CommitMsg,
        params: &GroupParams,
        suite: &CryptoSuite,
        rng: &mut (impl RngCore + ?Sized),
    ) -> Result<ChallengeMsg> {
        if self.state != RequesterState::AwaitCommit {
            return Err(Error::InvalidState);
        }
        check_commit(commit, params)?;
        let (u, r) = loop {
            let u = rand_scalar_nonzero(rng, params.q())?;
            let gu = modexp(params.g(), &u, params);
            let r = hash_to_scalar(&element_preimage(params, &gu, &self.message), params.q(), suite);
            if !r.is_zero() {
                break (u, r);
            }
        };
        let secrets = blind(u, r, &commit.z, params, rng)?;
        let msg = ChallengeMsg {
            r_bar: secrets.r_bar.clone(),
        };
        self.secrets = Some(secrets);
        self.state = RequesterState::Challenged;
        Ok(msg)
    }

    /// Unblinds the response. A zero denominator aborts the session; the
    /// caller restarts from a fresh commitment.
    pub fn finalize(&mut self, response: &ResponseMsg, params: &GroupParams) -> Result<BlindSignature> {
        if self.state != RequesterState::Challenged {
            return Err(Error::InvalidState);
        }
        self.state = RequesterState::Done;
        let secrets = self.secrets.as_ref().ok_or(Error::InvalidState)?;
        let s = unblind(secrets, response, params)?;
        Ok(BlindSignature {
            r: secrets.r.clone(),
            s,
            t: secrets.t.clone(),
        })
    }
}

pub fn requester_challenge(
    message: &[u8],
    commit: &CommitMsg,
    params: &GroupParams,
    suite: &CryptoSuite,
    rng: &mut (impl RngCore + ?Sized),
) -> Result<(RequesterSession, ChallengeMsg)> {
    let mut session = RequesterSession::new(message.to_vec());
    let msg = session.challenge(commit, params, suite, rng)?;
    Ok((session, msg))
}

pub fn requester_finalize(
    session: &mut RequesterSession,
    response: &ResponseMsg,
    params: &GroupParams,
) -> Result<BlindSignature> {
    session.finalize(response, params)
}

/// `(y_A * T * g^r)^s mod p`, which equals `g^u` for honest signatures.
pub fn recover_commitment(
    r: &Scalar,
    s: &Scalar,
    t: &GroupElement,
    signer_pub: &GroupElement,
    params: &GroupParams,
) -> GroupElement {
    let base = params.mul(&params.mul(signer_pub, t), &modexp(params.g(), r, params));
    modexp(&base, s, params)
}

pub fn verify(
    message: &[u8],
    sig: &BlindSignature,
    signer_pub: &GroupElement,
    params: &GroupParams,
    suite: &CryptoSuite,
) -> bool {
    let in_range = params.check_scalar(&sig.r).is_ok()
        && params.check_scalar(&sig.s).is_ok()
        && params.check_element(&sig.t).is_ok()
        && params.check_element(signer_pub).is_ok();
    if !in_range || sig.r.is_zero() || sig.s.is_zero() {
        return false;
    }
    let k = recover_commitment(&sig.r, &sig.s, &sig.t, signer_pub, params);
    hash_to_scalar(&element_preimage(params, &k, message), params.q(), suite) == sig.r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlindingFactors {
    pub alpha: Scalar,
    pub beta: Scalar,
}

/// Solves for the unique `(alpha, beta)` that would link `view` to `sig`:
/// `beta = r_bar - r` and `alpha = u / s - (r + s_bar)`. Fails unless both
/// `T = z^r * z^beta * g^alpha` and `s = u / (r + s_bar + alpha)` then hold.
pub fn recover_blinding_factors(
    view: &View,
    sig: &BlindSignature,
    u: &Scalar,
    params: &GroupParams,
) -> Result<BlindingFactors> {
    let inv_s = modinv(&sig.s, params.q()).map_err(|_| Error::InconsistentPair)?;
    let beta = params.sub(&view.r_bar, &sig.r);
    let alpha = params.sub(
        &params.mul_scalars(&inv_s, u),
        &params.add(&sig.r, &view.s_bar),
    );

    let t = params.mul(
        &params.mul(&modexp(&view.z, &sig.r, params), &modexp(&view.z, &beta, params)),
        &modexp(params.g(), &alpha, params),
    );
    if t != sig.t {
        return Err(Error::InconsistentPair);
    }
    let denom = params.add(&params.add(&sig.r, &view.s_bar), &alpha);
    let inv = modinv(&denom, params.q()).map_err(|_| Error::InconsistentPair)?;
    if params.mul_scalars(u, &inv) != sig.s {
        return Err(Error::InconsistentPair);
    }
    Ok(BlindingFactors { alpha, beta })
}
