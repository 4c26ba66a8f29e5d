//! Canonical binary encoding for every public value and protocol message.
//!
//! ```text
//! envelope := "BSC1" | type:u8 | suite_len:u8 | suite_id | body
//! int      := len:u16 BE | magnitude BE, no leading zero byte (0 is len 0)
//! bytes    := len:u32 BE | raw
//! ```
//!
//! | type | message                | body                  |
//! |------|------------------------|-----------------------|
//! | 0x01 | Params                 | int p, int q, int g   |
//! | 0x02 | PubKey                 | int y                 |
//! | 0x03 | Commit                 | int z                 |
//! | 0x04 | Challenge              | int r_bar             |
//! | 0x05 | Response               | int s_bar             |
//! | 0x06 | SdssSig                | int r, int s          |
//! | 0x07 | SigncryptedText        | bytes c, int r, int s |
//! | 0x08 | BlindSigncryptedText   | bytes c, int r, int s, int T |
//! | 0x09 | BlindSignature         | int r, int s, int T   |
//! | 0x0a | SecretKey              | int x, int y          |
//!
//! Decoding checks structure only. Range checks against a parameter set
//! happen where the values are used.

use std::fmt::Write as _;

use num_bigint::BigUint;
use thiserror::Error;

use crate::blind_sdss::{BlindSignature, ChallengeMsg, CommitMsg, ResponseMsg};
use crate::blind_signcrypt::BlindSigncryptedText;
use crate::group::{GroupElement, ParamsCandidate, Scalar};
use crate::sdss::{KeyPair, SdssSignature};
use crate::suite::SuiteId;
use crate::zheng::SigncryptedText;

pub const MAGIC: &[u8; 4] = b"BSC1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("missing BSC1 magic")]
    BadMagic,
    #[error("unknown message type 0x{0:02x}")]
    UnknownType(u8),
    #[error("input ends inside a field")]
    Truncated,
    #[error("integer has a leading zero byte")]
    NonCanonicalInteger,
    #[error("bytes left over after the last field")]
    TrailingBytes,
    #[error("unknown suite id")]
    UnknownSuite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum MsgType {
    Params = 0x01,
    PubKey = 0x02,
    Commit = 0x03,
    Challenge = 0x04,
    Response = 0x05,
    SdssSig = 0x06,
    SigncryptedText = 0x07,
    BlindSigncryptedText = 0x08,
    BlindSignature = 0x09,
    SecretKey = 0x0a,
}

impl MsgType {
    pub const ALL: [MsgType; 10] = [
        MsgType::Params,
        MsgType::PubKey,
        MsgType::Commit,
        MsgType::Challenge,
        MsgType::Response,
        MsgType::SdssSig,
        MsgType::SigncryptedText,
        MsgType::BlindSigncryptedText,
        MsgType::BlindSignature,
        MsgType::SecretKey,
    ];

    pub fn from_byte(b: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|t| *t as u8 == b)
    }

    /// Label used in the text armor header.
    pub fn label(self) -> &'static str {
        match self {
            MsgType::Params => "PARAMS",
            MsgType::PubKey => "PUBLIC KEY",
            MsgType::Commit => "COMMIT",
            MsgType::Challenge => "CHALLENGE",
            MsgType::Response => "RESPONSE",
            MsgType::SdssSig => "SDSS SIGNATURE",
            MsgType::SigncryptedText => "SIGNCRYPTED TEXT",
            MsgType::BlindSigncryptedText => "BLIND SIGNCRYPTED TEXT",
            MsgType::BlindSignature => "BLIND SIGNATURE",
            MsgType::SecretKey => "SECRET KEY",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WireMessage {
    Params(ParamsCandidate),
    PubKey(GroupElement),
    Commit(CommitMsg),
    Challenge(ChallengeMsg),
    Response(ResponseMsg),
    SdssSig(SdssSignature),
    Signcrypted(SigncryptedText),
    BlindSigncrypted(BlindSigncryptedText),
    BlindSig(BlindSignature),
    /// Stored key pair; rebuild with [`KeyPair::from_parts`].
    SecretKey { x: Scalar, y: GroupElement },
}

impl WireMessage {
    pub fn msg_type(&self) -> MsgType {
        match self {
            WireMessage::Params(_) => MsgType::Params,
            WireMessage::PubKey(_) => MsgType::PubKey,
            WireMessage::Commit(_) => MsgType::Commit,
            WireMessage::Challenge(_) => MsgType::Challenge,
            WireMessage::Response(_) => MsgType::Response,
            WireMessage::SdssSig(_) => MsgType::SdssSig,
            WireMessage::Signcrypted(_) => MsgType::SigncryptedText,
            WireMessage::BlindSigncrypted(_) => MsgType::BlindSigncryptedText,
            WireMessage::BlindSig(_) => MsgType::BlindSignature,
            WireMessage::SecretKey { .. } => MsgType::SecretKey,
        }
    }

    pub fn secret_key(key: &KeyPair) -> Self {
        WireMessage::SecretKey {
            x: key.secret().clone(),
            y: key.public().clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Envelope {
    pub suite: SuiteId,
    pub message: WireMessage,
}

impl Envelope {
    pub fn new(suite: SuiteId, message: WireMessage) -> Self {
        Envelope { suite, message }
    }
}

struct Writer(Vec<u8>);

impl Writer {
    fn int(&mut self, v: &BigUint) {
        let bytes = if v == &BigUint::ZERO { Vec::new() } else { v.to_bytes_be() };
        let len = u16::try_from(bytes.len()).expect("integer wider than 65535 bytes");
        self.0.extend_from_slice(&len.to_be_bytes());
        self.0.extend_from_slice(&bytes);
    }

    fn bytes(&mut self, b: &[u8]) {
        let len = u32::try_from(b.len()).expect("byte field longer than 4 GiB");
        self.0.extend_from_slice(&len.to_be_bytes());
        self.0.extend_from_slice(b);
    }
}

pub fn encode(env: &Envelope) -> Vec<u8> {
    let mut w = Writer(Vec::with_capacity(64));
    w.0.extend_from_slice(MAGIC);
    w.0.push(env.message.msg_type() as u8);
    let suite = env.suite.as_str().as_bytes();
    w.0.push(suite.len() as u8);
    w.0.extend_from_slice(suite);
    match &env.message {
        WireMessage::Params(c) => {
            w.int(&c.p);
            w.int(&c.q);
            w.int(&c.g);
        }
        WireMessage::PubKey(y) => w.int(y.value()),
        WireMessage::Commit(m) => w.int(m.z.value()),
        WireMessage::Challenge(m) => w.int(m.r_bar.value()),
        WireMessage::Response(m) => w.int(m.s_bar.value()),
        WireMessage::SdssSig(sig) => {
            w.int(sig.r.value());
            w.int(sig.s.value());
        }
        WireMessage::Signcrypted(ct) => {
            w.bytes(&ct.c);
            w.int(ct.r.value());
            w.int(ct.s.value());
        }
        WireMessage::BlindSigncrypted(ct) => {
            w.bytes(&ct.c);
            w.int(ct.r.value());
            w.int(ct.s.value());
            w.int(ct.t.value());
        }
        WireMessage::BlindSig(sig) => {
            w.int(sig.r.value());
            w.int(sig.s.value());
            w.int(sig.t.value());
        }
        WireMessage::SecretKey { x, y } => {
            w.int(x.value());
            w.int(y.value());
        }
    }
    w.0
}

struct Reader<'a> {
    buf: &'a [u8],
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], DecodeError> {
        if self.buf.len() < n {
            return Err(DecodeError::Truncated);
        }
        let (head, tail) = self.buf.split_at(n);
        self.buf = tail;
        Ok(head)
    }

    fn u8(&mut self) -> Result<u8, DecodeError> {
        Ok(self.take(1)?[0])
    }

    fn int(&mut self) -> Result<BigUint, DecodeError> {
        let len = u16::from_be_bytes(self.take(2)?.try_into().expect("2 bytes"));
        let raw = self.take(len as usize)?;
        if raw.first() == Some(&0) {
            return Err(DecodeError::NonCanonicalInteger);
        }
        Ok(BigUint::from_bytes_be(raw))
    }

    fn scalar(&mut self) -> Result<Scalar, DecodeError> {
        self.int().map(Scalar::new_unchecked)
    }

    fn element(&mut self) -> Result<GroupElement, DecodeError> {
        self.int().map(GroupElement::new_unchecked)
    }

    fn bytes(&mut self) -> Result<Vec<u8>, DecodeError> {
        let len = u32::from_be_bytes(self.take(4)?.try_into().expect("4 bytes"));
        Ok(self.take(len as usize)?.to_vec())
    }
}

pub fn decode(bytes: &[u8]) -> Result<Envelope, DecodeError> {
    let mut r = Reader { buf: bytes };
    let magic = r.take(4).map_err(|_| DecodeError::BadMagic)?;
    if magic != MAGIC {
        return Err(DecodeError::BadMagic);
    }
    let type_byte = r.u8()?;
    let msg_type = MsgType::from_byte(type_byte).ok_or(DecodeError::UnknownType(type_byte))?;
    let suite_len = r.u8()?;
    let suite_raw = r.take(suite_len as usize)?;
    let suite = std::str::from_utf8(suite_raw)
        .ok()
        .and_then(SuiteId::parse)
        .ok_or(DecodeError::UnknownSuite)?;

    let message = match msg_type {
        MsgType::Params => WireMessage::Params(ParamsCandidate {
            p: r.int()?,
            q: r.int()?,
            g: r.int()?,
        }),
        MsgType::PubKey => WireMessage::PubKey(r.element()?),
        MsgType::Commit => WireMessage::Commit(CommitMsg { z: r.element()? }),
        MsgType::Challenge => WireMessage::Challenge(ChallengeMsg { r_bar: r.scalar()? }),
        MsgType::Response => WireMessage::Response(ResponseMsg { s_bar: r.scalar()? }),
        MsgType::SdssSig => WireMessage::SdssSig(SdssSignature {
            r: r.scalar()?,
            s: r.scalar()?,
        }),
        MsgType::SigncryptedText => WireMessage::Signcrypted(SigncryptedText {
            c: r.bytes()?,
            r: r.scalar()?,
            s: r.scalar()?,
        }),
        MsgType::BlindSigncryptedText => WireMessage::BlindSigncrypted(BlindSigncryptedText {
            c: r.bytes()?,
            r: r.scalar()?,
            s: r.scalar()?,
            t: r.element()?,
        }),
        MsgType::BlindSignature => WireMessage::BlindSig(BlindSignature {
            r: r.scalar()?,
            s: r.scalar()?,
            t: r.element()?,
        }),
        MsgType::SecretKey => WireMessage::SecretKey {
            x: r.scalar()?,
            y: r.element()?,
        },
    };
    if !r.buf.is_empty() {
        return Err(DecodeError::TrailingBytes);
    }
    Ok(Envelope { suite, message })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArmorError {
    #[error("missing or malformed armor header/footer")]
    BadFrame,
    #[error("armor body is not valid hex")]
    BadHex,
    #[error("armor label {found:?} does not match message type {expected:?}")]
    LabelMismatch { expected: &'static str, found: String },
    #[error(transparent)]
    Decode(#[from] DecodeError),
}

const ARMOR_WIDTH: usize = 64;

/// Hex text form for file exchange:
///
/// ```text
/// -----BEGIN BSC1 CHALLENGE-----
/// 4253433104067374642d76310001..
/// -----END BSC1 CHALLENGE-----
/// ```
pub fn armor(env: &Envelope) -> String {
    let label = env.message.msg_type().label();
    let hex = hex::encode(encode(env));
    let mut out = String::with_capacity(hex.len() + hex.len() / ARMOR_WIDTH + 80);
    let _ = writeln!(out, "-----BEGIN BSC1 {label}-----");
    for chunk in hex.as_bytes().chunks(ARMOR_WIDTH) {
        out.push_str(std::str::from_utf8(chunk).expect("hex is ascii"));
        out.push('\n');
    }
    let _ = writeln!(out, "-----END BSC1 {label}-----");
    out
}

pub fn dearmor(text: &str) -> Result<Envelope, ArmorError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or(ArmorError::BadFrame)?;
    let label = header
        .strip_prefix("-----BEGIN BSC1 ")
        .and_then(|l| l.strip_suffix("-----"))
        .ok_or(ArmorError::BadFrame)?;
    let footer = format!("-----END BSC1 {label}-----");
    let mut hex_body = String::new();
    let mut closed = false;
    for line in lines.by_ref() {
        if line == footer {
            closed = true;
            break;
        }
        hex_body.push_str(line);
    }
    if !closed || lines.next().is_some() {
        return Err(ArmorError::BadFrame);
    }
    let bytes = hex::decode(&hex_body).map_err(|_| ArmorError::BadHex)?;
    let env = decode(&bytes)?;
    let expected = env.message.msg_type().label();
    if expected != label {
        return Err(ArmorError::LabelMismatch {
            expected,
            found: label.to_string(),
        });
    }
    Ok(env)
}
