//! In-process three-party runner with full knowledge of every secret.
//!
//! [`run_honest_sessions`] plays A, B and (for blind signcryption) C in one
//! process and checks every algebraic relation of each run before handing
//! the transcript out. [`cross_pairing_check`] then tries to link every
//! signer view to every output: for honest runs each pairing admits
//! consistent blinding factors, so a view says nothing about which output
//! it produced. [`tamper_suite`] flips single bits of a blind signcrypted
//! text and counts rejections.

use std::fmt;

use rand_core::RngCore;

use crate::blind_sdss::{
    self, recover_blinding_factors, recover_commitment, BlindSignature, BlindingFactors,
    RequesterSecrets, RequesterSession, SignerSession, View,
};
use crate::blind_signcrypt::{self, BlindSigncryptedText, BscRequesterSession};
use crate::error::{Error, Result};
use crate::group::{modexp, rand_below, GroupElement, GroupParams, Scalar};
use crate::sdss::{keygen, KeyPair};
use crate::suite::{default_bind_info, CryptoSuite};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    BlindSdss,
    BlindSigncrypt,
}

/// How the runner picks the message of session `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MessagePlan {
    /// `"message-{i}"`; draws nothing from the rng.
    Indexed,
    /// Uniform length in `[0, max_len]`, random bytes.
    Random { max_len: usize },
}

/// Long-term keys and shared context for a batch of runs.
#[derive(Debug, Clone)]
pub struct HarnessSetup {
    pub params: GroupParams,
    pub suite: CryptoSuite,
    pub signer: KeyPair,
    pub recipient: KeyPair,
    pub bind_info: Vec<u8>,
    pub messages: MessagePlan,
}

impl HarnessSetup {
    /// Fresh signer and recipient keys; `bind_info` defaults to the
    /// recipient's encoded public key.
    pub fn generate(
        params: GroupParams,
        suite: CryptoSuite,
        rng: &mut (impl RngCore + ?Sized),
    ) -> Result<Self> {
        let signer = keygen(&params, rng)?;
        let recipient = keygen(&params, rng)?;
        let bind_info = default_bind_info(&params, recipient.public());
        Ok(HarnessSetup {
            params,
            suite,
            signer,
            recipient,
            bind_info,
            messages: MessagePlan::Indexed,
        })
    }

    pub fn with_messages(mut self, plan: MessagePlan) -> Self {
        self.messages = plan;
        self
    }

    fn message_for(&self, index: usize, rng: &mut (impl RngCore + ?Sized)) -> Result<Vec<u8>> {
        match self.messages {
            MessagePlan::Indexed => Ok(format!("message-{index}").into_bytes()),
            MessagePlan::Random { max_len } => {
                let len = rand_below(rng, &(max_len as u64 + 1).into())?;
                let len = usize::try_from(len).expect("bounded by max_len");
                let mut m = vec![0u8; len];
                rng.try_fill_bytes(&mut m)
                    .map_err(|e| Error::RngFailure(e.to_string()))?;
                Ok(m)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Output {
    Signature(BlindSignature),
    Signcrypted(BlindSigncryptedText),
}

impl Output {
    pub fn signature(&self) -> BlindSignature {
        match self {
            Output::Signature(sig) => sig.clone(),
            Output::Signcrypted(ct) => ct.signature(),
        }
    }
}

/// Everything about one honest run.
#[derive(Debug, Clone)]
pub struct FullTranscript {
    pub view: View,
    pub requester_secrets: RequesterSecrets,
    pub output: Output,
    pub message: Vec<u8>,
    /// `y_C^u`, blind signcryption only.
    pub shared: Option<GroupElement>,
}

#[derive(Debug, Clone)]
pub struct HonestRun {
    pub transcripts: Vec<FullTranscript>,
    /// Sessions restarted because `r + s_bar + alpha` vanished.
    pub degenerate_restarts: u64,
}

fn ensure(cond: bool, what: &'static str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::TranscriptInconsistent(what))
    }
}

/// Runs one session end to end, restarting from a fresh commitment on a
/// degenerate denominator. Returns the transcript and the restart count.
pub fn run_session(
    message: &[u8],
    scheme: Scheme,
    setup: &HarnessSetup,
    rng: &mut (impl RngCore + ?Sized),
) -> Result<(FullTranscript, u64)> {
    let params = &setup.params;
    let mut restarts = 0;
    loop {
        let (mut signer, commit) = blind_sdss::signer_commit(params, rng)?;
        let attempt = match scheme {
            Scheme::BlindSdss => {
                let mut req = RequesterSession::new(message.to_vec());
                let ch = req.challenge(&commit, params, &setup.suite, rng)?;
                let resp = signer.respond(&ch, &setup.signer, params)?;
                req.finalize(&resp, params).map(|sig| {
                    let secrets = req.secrets().cloned().expect("challenged");
                    (Output::Signature(sig), secrets, None)
                })
            }
            Scheme::BlindSigncrypt => {
                let mut req = BscRequesterSession::new(message.to_vec(), setup.bind_info.clone());
                let ch = req.challenge(&commit, setup.recipient.public(), params, &setup.suite, rng)?;
                let resp = signer.respond(&ch, &setup.signer, params)?;
                req.finalize(&resp, params).map(|ct| {
                    let secrets = req.secrets().cloned().expect("challenged");
                    (Output::Signcrypted(ct), secrets, req.shared().cloned())
                })
            }
        };
        match attempt {
            Ok((output, secrets, shared)) => {
                let transcript = FullTranscript {
                    view: signer_view(&signer)?,
                    requester_secrets: secrets,
                    output,
                    message: message.to_vec(),
                    shared,
                };
                check_transcript(&transcript, setup)?;
                return Ok((transcript, restarts));
            }
            Err(Error::DegenerateDenominator) => restarts += 1,
            Err(e) => return Err(e),
        }
    }
}

fn signer_view(signer: &SignerSession) -> Result<View> {
    signer
        .view_with_nonce()
        .ok_or(Error::TranscriptInconsistent("signer session did not respond"))
}

/// Asserts every relation an honest run must satisfy.
pub fn check_transcript(t: &FullTranscript, setup: &HarnessSetup) -> Result<()> {
    let params = &setup.params;
    let view = &t.view;
    let sec = &t.requester_secrets;
    let sig = t.output.signature();
    let k_tilde = view
        .k_tilde
        .as_ref()
        .ok_or(Error::TranscriptInconsistent("view lacks the signer nonce"))?;

    ensure(view.z == modexp(params.g(), k_tilde, params), "z = g^k~")?;
    ensure(
        view.s_bar == params.add(setup.signer.secret(), &params.mul_scalars(&view.r_bar, k_tilde)),
        "s_bar = x_A + r_bar k~",
    )?;
    ensure(view.r_bar == sec.r_bar && sec.r_bar == params.add(&sec.r, &sec.beta), "r_bar = r + beta")?;
    ensure(!sec.r.is_zero() && !sig.s.is_zero(), "r, s nonzero")?;
    ensure(
        sig.t == params.mul(&modexp(&view.z, &sec.r_bar, params), &modexp(params.g(), &sec.alpha, params)),
        "T = z^r_bar g^alpha",
    )?;
    let gu = modexp(params.g(), &sec.u, params);
    ensure(
        recover_commitment(&sig.r, &sig.s, &sig.t, setup.signer.public(), params) == gu,
        "(y_A T g^r)^s = g^u",
    )?;

    match &t.output {
        Output::Signature(sig) => ensure(
            blind_sdss::verify(&t.message, sig, setup.signer.public(), params, &setup.suite),
            "signature verifies",
        ),
        Output::Signcrypted(ct) => {
            let shared = t
                .shared
                .as_ref()
                .ok_or(Error::TranscriptInconsistent("missing shared element"))?;
            ensure(*shared == modexp(setup.recipient.public(), &sec.u, params), "shared = y_C^u")?;
            ensure(
                *shared
                    == blind_signcrypt::recipient_shared(ct, &setup.recipient, setup.signer.public(), params),
                "y_C^u = (y_A T g^r)^(s x_C)",
            )?;
            let opened = blind_signcrypt::unsigncrypt(
                ct,
                &setup.recipient,
                setup.signer.public(),
                &setup.bind_info,
                params,
                &setup.suite,
            );
            ensure(opened.as_deref() == Ok(t.message.as_slice()), "recipient recovers m")
        }
    }
}

/// `n` independent honest runs.
pub fn run_honest_sessions(
    n: usize,
    scheme: Scheme,
    setup: &HarnessSetup,
    rng: &mut (impl RngCore + ?Sized),
) -> Result<HonestRun> {
    if n == 0 {
        return Err(Error::Precondition("at least one session"));
    }
    let mut transcripts = Vec::with_capacity(n);
    let mut degenerate_restarts = 0;
    for i in 0..n {
        let message = setup.message_for(i, rng)?;
        let (t, restarts) = run_session(&message, scheme, setup, rng)?;
        degenerate_restarts += restarts;
        transcripts.push(t);
    }
    Ok(HonestRun {
        transcripts,
        degenerate_restarts,
    })
}

/// Outcome of pairing every view with every output.
#[derive(Debug, Clone)]
pub struct CrossPairingReport {
    /// `matrix[i][j]`: view `i` paired with output `j` admits blinding factors.
    pub matrix: Vec<Vec<bool>>,
    /// Recovered factors for each same-session pair.
    pub diagonal: Vec<Option<BlindingFactors>>,
}

impl CrossPairingReport {
    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn passes(&self) -> usize {
        self.matrix.iter().flatten().filter(|p| **p).count()
    }

    pub fn all_pass(&self) -> bool {
        self.passes() == self.size() * self.size()
    }

    /// Columns (outputs) with at least one failing pairing.
    pub fn failing_columns(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&j| self.matrix.iter().any(|row| !row[j]))
            .collect()
    }

    /// `pair_i,pair_j,pass` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("pair_i,pair_j,pass\n");
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, pass) in row.iter().enumerate() {
                out.push_str(&format!("{i},{j},{pass}\n"));
            }
        }
        out
    }
}

impl fmt::Display for CrossPairingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size();
        writeln!(f, "cross-pairing: {}/{} pairings admit blinding factors", self.passes(), n * n)?;
        let failing = self.failing_columns();
        if !failing.is_empty() {
            writeln!(f, "failing outputs: {failing:?}")?;
        }
        Ok(())
    }
}

/// For every `(view_i, output_j)` solves for `(alpha, beta)` using `u_j`
/// and records whether the linking equations hold.
pub fn cross_pairing_check(
    transcripts: &[FullTranscript],
    params: &GroupParams,
) -> Result<CrossPairingReport> {
    if transcripts.len() < 2 {
        return Err(Error::Precondition("cross-pairing needs at least two transcripts"));
    }
    let sigs: Vec<BlindSignature> = transcripts.iter().map(|t| t.output.signature()).collect();
    let mut matrix = Vec::with_capacity(transcripts.len());
    let mut diagonal = Vec::with_capacity(transcripts.len());
    for (i, ti) in transcripts.iter().enumerate() {
        let mut row = Vec::with_capacity(transcripts.len());
        for (j, (tj, sig)) in transcripts.iter().zip(&sigs).enumerate() {
            let res = recover_blinding_factors(&ti.view, sig, &tj.requester_secrets.u, params);
            if i == j {
                diagonal.push(res.as_ref().ok().cloned());
            }
            row.push(res.is_ok());
        }
        matrix.push(row);
    }
    Ok(CrossPairingReport { matrix, diagonal })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TamperTarget {
    /// Any bit of `c`, `r`, `s` or `T`.
    All,
    CiphertextOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TamperReport {
    pub trials: usize,
    pub rejections: usize,
    /// The untouched text still opens.
    pub control_accepted: bool,
    /// Bit offsets (into `c || r || s || T`) whose flip was not rejected.
    pub accepted_flips: Vec<usize>,
}

impl TamperReport {
    pub fn all_rejected(&self) -> bool {
        self.rejections == self.trials
    }
}

impl fmt::Display for TamperReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tamper: {}/{} flips rejected (control {})",
            self.rejections,
            self.trials,
            if self.control_accepted { "accepted" } else { "REJECTED" }
        )
    }
}

fn flip_bit(bytes: &mut [u8], bit: usize) {
    bytes[bit / 8] ^= 0x80 >> (bit % 8);
}

/// Flips one random bit per trial and unsigncrypts the result.
pub fn tamper_suite(
    transcript: &FullTranscript,
    trials: usize,
    target: TamperTarget,
    setup: &HarnessSetup,
    rng: &mut (impl RngCore + ?Sized),
) -> Result<TamperReport> {
    let Output::Signcrypted(ct) = &transcript.output else {
        return Err(Error::Precondition("tamper suite needs a blind signcryption transcript"));
    };
    let params = &setup.params;
    let open = |ct: &BlindSigncryptedText| {
        blind_signcrypt::unsigncrypt(
            ct,
            &setup.recipient,
            setup.signer.public(),
            &setup.bind_info,
            params,
            &setup.suite,
        )
    };
    let control_accepted = open(ct).is_ok();

    let c_bits = ct.c.len() * 8;
    let r_bits = params.scalar_len() * 8;
    let t_bits = params.element_len() * 8;
    let space = match target {
        TamperTarget::All => c_bits + 2 * r_bits + t_bits,
        TamperTarget::CiphertextOnly => c_bits,
    };
    if trials > 0 && space == 0 {
        return Err(Error::Precondition("nothing to tamper with"));
    }

    let mut rejections = 0;
    let mut accepted_flips = Vec::new();
    for _ in 0..trials {
        let bit = usize::try_from(rand_below(rng, &(space as u64).into())?).expect("bounded");
        let mut tampered = ct.clone();
        if bit < c_bits {
            flip_bit(&mut tampered.c, bit);
        } else if bit < c_bits + r_bits {
            let mut b = params.scalar_bytes(&ct.r);
            flip_bit(&mut b, bit - c_bits);
            tampered.r = Scalar::new_unchecked(num_bigint::BigUint::from_bytes_be(&b));
        } else if bit < c_bits + 2 * r_bits {
            let mut b = params.scalar_bytes(&ct.s);
            flip_bit(&mut b, bit - c_bits - r_bits);
            tampered.s = Scalar::new_unchecked(num_bigint::BigUint::from_bytes_be(&b));
        } else {
            let mut b = params.element_bytes(&ct.t);
            flip_bit(&mut b, bit - c_bits - 2 * r_bits);
            tampered.t = GroupElement::new_unchecked(num_bigint::BigUint::from_bytes_be(&b));
        }
        match open(&tampered) {
            Err(Error::TagMismatch) => rejections += 1,
            _ => accepted_flips.push(bit),
        }
    }
    Ok(TamperReport {
        trials,
        rejections,
        control_accepted,
        accepted_flips,
    })
}
