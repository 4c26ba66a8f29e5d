//! Symmetric primitives used by the schemes: the hash `h`, the keyed hash
//! `KH`, the cipher `(E, D)`, key splitting and hash-to-scalar reduction.
//!
//! Two fixed suites exist. `std-v1` uses SHA-256, HMAC-SHA-256 and a
//! SHA-256 counter-mode keystream. `toy-v1` keeps SHA-256 and HMAC but
//! lets tests pin individual hash outputs, and encrypts by XOR with the
//! repeated cipher key.

use std::collections::HashMap;
use std::fmt;

use hmac::{Hmac, Mac};
use num_bigint::BigUint;
use sha2::{Digest, Sha256};

use crate::group::{GroupElement, GroupParams, Scalar};

type HmacSha256 = Hmac<Sha256>;

pub const DIGEST_LEN: usize = 32;

const K1_LABEL: u8 = 0x01;
const K2_LABEL: u8 = 0x02;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuiteId {
    Toy,
    Std,
}

impl SuiteId {
    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::Toy => "toy-v1",
            SuiteId::Std => "std-v1",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "toy-v1" => Some(SuiteId::Toy),
            "std-v1" => Some(SuiteId::Std),
            _ => None,
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Cipher key `K1` and keyed-hash key `K2`, derived from one shared element.
#[derive(Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SplitKeys {
    pub k1: [u8; DIGEST_LEN],
    pub k2: [u8; DIGEST_LEN],
}

impl fmt::Debug for SplitKeys {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SplitKeys(..)")
    }
}

#[derive(Debug, Clone)]
pub struct CryptoSuite {
    id: SuiteId,
    hash_stubs: HashMap<Vec<u8>, BigUint>,
    tag_stubs: HashMap<(Vec<u8>, Vec<u8>), BigUint>,
}

/// The test suite with stubbable hashes and an XOR cipher.
pub fn toy_suite() -> CryptoSuite {
    CryptoSuite::new(SuiteId::Toy)
}

/// SHA-256 / HMAC-SHA-256 / SHA-256 keystream.
pub fn std_suite() -> CryptoSuite {
    CryptoSuite::new(SuiteId::Std)
}

impl CryptoSuite {
    pub fn new(id: SuiteId) -> Self {
        CryptoSuite {
            id,
            hash_stubs: HashMap::new(),
            tag_stubs: HashMap::new(),
        }
    }

    pub fn id(&self) -> SuiteId {
        self.id
    }

    /// Pins `hash_to_scalar(preimage)` to `value`. Toy suite only.
    pub fn with_hash_stub(mut self, preimage: Vec<u8>, value: u64) -> Self {
        assert_eq!(self.id, SuiteId::Toy, "stubs are only honored by the toy suite");
        self.hash_stubs.insert(preimage, value.into());
        self
    }

    /// Pins the keyed-hash scalar of `(message, bind_info)` under `k2`.
    /// Toy suite only.
    pub fn with_tag_stub(mut self, k2: &[u8], message: &[u8], bind_info: &[u8], value: u64) -> Self {
        assert_eq!(self.id, SuiteId::Toy, "stubs are only honored by the toy suite");
        self.tag_stubs
            .insert((k2.to_vec(), tag_input(message, bind_info)), value.into());
        self
    }

    pub fn hash(&self, data: &[u8]) -> [u8; DIGEST_LEN] {
        Sha256::digest(data).into()
    }

    pub fn keyed_hash(&self, key: &[u8], data: &[u8]) -> [u8; DIGEST_LEN] {
        let mut mac = HmacSha256::new_from_slice(key).expect("hmac accepts any key length");
        mac.update(data);
        mac.finalize().into_bytes().into()
    }

    pub fn encrypt(&self, k1: &[u8; DIGEST_LEN], plaintext: &[u8]) -> Vec<u8> {
        self.apply_keystream(k1, plaintext)
    }

    pub fn decrypt(&self, k1: &[u8; DIGEST_LEN], ciphertext: &[u8]) -> Vec<u8> {
        self.apply_keystream(k1, ciphertext)
    }

    fn apply_keystream(&self, k1: &[u8; DIGEST_LEN], data: &[u8]) -> Vec<u8> {
        match self.id {
            SuiteId::Toy => data
                .iter()
                .zip(k1.iter().cycle())
                .map(|(d, k)| d ^ k)
                .collect(),
            SuiteId::Std => {
                let mut out = Vec::with_capacity(data.len());
                for (counter, chunk) in data.chunks(DIGEST_LEN).enumerate() {
                    let mut h = Sha256::new();
                    h.update(k1);
                    h.update((counter as u64).to_be_bytes());
                    let block = h.finalize();
                    out.extend(chunk.iter().zip(block.iter()).map(|(d, k)| d ^ k));
                }
                out
            }
        }
    }
}

/// `K1 = h(0x01 || bytes(shared))`, `K2 = h(0x02 || bytes(shared))`.
pub fn derive_keys(shared: &GroupElement, params: &GroupParams, suite: &CryptoSuite) -> SplitKeys {
    let bytes = params.element_bytes(shared);
    let labeled = |label: u8| {
        let mut buf = Vec::with_capacity(bytes.len() + 1);
        buf.push(label);
        buf.extend_from_slice(&bytes);
        suite.hash(&buf)
    };
    SplitKeys {
        k1: labeled(K1_LABEL),
        k2: labeled(K2_LABEL),
    }
}

/// `h(input)` read as a big-endian integer and reduced modulo `q`.
pub fn hash_to_scalar(input: &[u8], q: &BigUint, suite: &CryptoSuite) -> Scalar {
    if let Some(v) = suite.hash_stubs.get(input) {
        return Scalar::new_unchecked(v % q);
    }
    let digest = suite.hash(input);
    Scalar::new_unchecked(BigUint::from_bytes_be(&digest) % q)
}

/// Canonical hash preimage `bytes(e) || m` shared by every scheme.
pub fn element_preimage(params: &GroupParams, e: &GroupElement, message: &[u8]) -> Vec<u8> {
    let mut buf = params.element_bytes(e);
    buf.extend_from_slice(message);
    buf
}

fn tag_input(message: &[u8], bind_info: &[u8]) -> Vec<u8> {
    let mut buf = Vec::with_capacity(8 + message.len() + bind_info.len());
    buf.extend_from_slice(&(message.len() as u64).to_be_bytes());
    buf.extend_from_slice(message);
    buf.extend_from_slice(bind_info);
    buf
}

/// `KH_{k2}(m, bind_info)` reduced modulo `q`. The keyed-hash input is
/// `len(m) as u64 BE || m || bind_info`.
pub fn tag_to_scalar(
    k2: &[u8],
    message: &[u8],
    bind_info: &[u8],
    q: &BigUint,
    suite: &CryptoSuite,
) -> Scalar {
    let data = tag_input(message, bind_info);
    if !suite.tag_stubs.is_empty() {
        if let Some(v) = suite.tag_stubs.get(&(k2.to_vec(), data.clone())) {
            return Scalar::new_unchecked(v % q);
        }
    }
    let tag = suite.keyed_hash(k2, &data);
    Scalar::new_unchecked(BigUint::from_bytes_be(&tag) % q)
}

/// Default receiver identity: the fixed-width encoding of its public key.
pub fn default_bind_info(params: &GroupParams, recipient_pub: &GroupElement) -> Vec<u8> {
    params.element_bytes(recipient_pub)
}
