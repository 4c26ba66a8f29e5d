//! Session state carried between invocations in test mode.
//!
//! Files hold nonces (`k_tilde`, `u`), so they are never written in the
//! clear: the JSON form is encrypted under a key derived from the test
//! seed and a per-file random nonce, and authenticated with a keyed hash.
//!
//! Layout: `BSCSTATE1 || nonce(16) || tag(32) || ciphertext`.

use std::path::Path;

use blind_signcrypt::blind_sdss::{RequesterSession, SignerSession};
use blind_signcrypt::blind_signcrypt::BscRequesterSession;
use blind_signcrypt::suite::{std_suite, DIGEST_LEN};
use rand_core::RngCore;
use serde::{Deserialize, Serialize};

use crate::CliError;

const STATE_MAGIC: &[u8] = b"BSCSTATE1";
const NONCE_LEN: usize = 16;

#[derive(Debug, Serialize, Deserialize)]
pub enum SessionState {
    BlindSigner(SignerSession),
    BlindRequester(RequesterSession),
    BscSigner(SignerSession),
    BscRequester(BscRequesterSession),
}

impl SessionState {
    pub fn kind(&self) -> &'static str {
        match self {
            SessionState::BlindSigner(_) => "blind signer",
            SessionState::BlindRequester(_) => "blind requester",
            SessionState::BscSigner(_) => "bsc signer",
            SessionState::BscRequester(_) => "bsc requester",
        }
    }
}

fn subkey(label: u8, seed: u64, nonce: &[u8]) -> [u8; DIGEST_LEN] {
    let mut input = b"bsc-cli state".to_vec();
    input.push(label);
    input.extend_from_slice(&seed.to_be_bytes());
    input.extend_from_slice(nonce);
    std_suite().hash(&input)
}

pub fn seal(state: &SessionState, seed: u64, rng: &mut dyn RngCore) -> Vec<u8> {
    let json = serde_json::to_vec(state).expect("session state serializes");
    let mut nonce = [0u8; NONCE_LEN];
    rng.fill_bytes(&mut nonce);
    let suite = std_suite();
    let ct = suite.encrypt(&subkey(1, seed, &nonce), &json);
    let tag = suite.keyed_hash(&subkey(2, seed, &nonce), &ct);
    let mut out = STATE_MAGIC.to_vec();
    out.extend_from_slice(&nonce);
    out.extend_from_slice(&tag);
    out.extend_from_slice(&ct);
    out
}

pub fn open(bytes: &[u8], seed: u64) -> Result<SessionState, CliError> {
    let body = bytes
        .strip_prefix(STATE_MAGIC)
        .filter(|b| b.len() >= NONCE_LEN + DIGEST_LEN)
        .ok_or_else(|| CliError::Usage("not a session state file".into()))?;
    let (nonce, rest) = body.split_at(NONCE_LEN);
    let (tag, ct) = rest.split_at(DIGEST_LEN);
    let suite = std_suite();
    if suite.keyed_hash(&subkey(2, seed, nonce), ct) != tag {
        return Err(CliError::Usage(
            "session state file is corrupt or was written under a different seed".into(),
        ));
    }
    let json = suite.decrypt(&subkey(1, seed, nonce), ct);
    serde_json::from_slice(&json).map_err(|e| CliError::Usage(format!("session state unreadable: {e}")))
}

pub fn write(path: &Path, state: &SessionState, seed: u64, rng: &mut dyn RngCore) -> Result<(), CliError> {
    std::fs::write(path, seal(state, seed, rng)).map_err(|e| CliError::io(path, e))
}

pub fn read(path: &Path, seed: u64) -> Result<SessionState, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    open(&bytes, seed)
}
