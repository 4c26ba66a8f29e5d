//! Per-party modular exponentiation counts for one honest run of each
//! scheme, read off the [`modexp`](crate::group::modexp) counter.
//!
//! Every `modexp` call counts once. There is no simultaneous
//! multi-exponentiation, so `T = z^r_bar * g^alpha` costs two.
//! Key generation is not counted.

use std::fmt;

use rand_core::RngCore;

use crate::blind_sdss;
use crate::blind_signcrypt;
use crate::error::{Error, Result};
use crate::group::{ExpCounter, GroupParams};
use crate::sdss::{self, keygen};
use crate::suite::{default_bind_info, CryptoSuite};
use crate::zheng;

pub const STRATEGY_NOTE: &str = "one count per modexp call; no simultaneous multi-exponentiation \
(T = z^r_bar * g^alpha counts as 2); key generation excluded";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchScheme {
    Sdss,
    Zheng,
    Blind,
    Bsc,
}

impl BenchScheme {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "sdss" => Some(BenchScheme::Sdss),
            "zheng" => Some(BenchScheme::Zheng),
            "blind" => Some(BenchScheme::Blind),
            "bsc" => Some(BenchScheme::Bsc),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BenchScheme::Sdss => "sdss",
            BenchScheme::Zheng => "zheng",
            BenchScheme::Blind => "blind",
            BenchScheme::Bsc => "bsc",
        }
    }
}

/// One party's share of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartyCount {
    pub party: char,
    pub role: &'static str,
    /// Counts per protocol step, in order.
    pub steps: Vec<(&'static str, u64)>,
    pub expected: u64,
}

impl PartyCount {
    pub fn total(&self) -> u64 {
        self.steps.iter().map(|(_, c)| c).sum()
    }

    pub fn matches(&self) -> bool {
        self.total() == self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpReport {
    pub scheme: BenchScheme,
    pub parties: Vec<PartyCount>,
}

impl ExpReport {
    pub fn party(&self, party: char) -> Option<&PartyCount> {
        self.parties.iter().find(|p| p.party == party)
    }

    pub fn all_match(&self) -> bool {
        self.parties.iter().all(PartyCount::matches)
    }
}

impl fmt::Display for ExpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scheme {}: modular exponentiations per party", self.scheme.name())?;
        for p in &self.parties {
            let steps: Vec<String> = p.steps.iter().map(|(s, c)| format!("{s}={c}")).collect();
            writeln!(
                f,
                "  {} ({}): {} [expected {}] {}  ({})",
                p.party,
                p.role,
                p.total(),
                p.expected,
                if p.matches() { "ok" } else { "MISMATCH" },
                steps.join(", ")
            )?;
        }
        writeln!(f, "  strategy: {STRATEGY_NOTE}")
    }
}

fn measure<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, u64)> {
    let counter = ExpCounter::start();
    let out = f()?;
    Ok((out, counter.elapsed()))
}

fn party(party: char, role: &'static str, steps: Vec<(&'static str, u64)>, expected: u64) -> PartyCount {
    PartyCount {
        party,
        role,
        steps,
        expected,
    }
}

/// Runs one honest instance of `scheme` and counts each party's
/// exponentiations. A degenerate blind run is retried from scratch.
pub fn count_exponentiations(
    scheme: BenchScheme,
    params: &GroupParams,
    suite: &CryptoSuite,
    rng: &mut (impl RngCore + ?Sized),
) -> Result<ExpReport> {
    let alice = keygen(params, rng)?;
    let other = keygen(params, rng)?;
    let message = b"exponentiation count probe";
    let bind = default_bind_info(params, other.public());

    let parties = match scheme {
        BenchScheme::Sdss => {
            let (sig, sign) = measure(|| sdss::sign(message, &alice, params, suite, rng))?;
            let (ok, verify) = measure(|| Ok(sdss::verify(message, &sig, alice.public(), params, suite)))?;
            if !ok {
                return Err(Error::TranscriptInconsistent("signature verifies"));
            }
            vec![
                party('A', "signer", vec![("sign", sign)], 1),
                party('B', "verifier", vec![("verify", verify)], 2),
            ]
        }
        BenchScheme::Zheng => {
            let (ct, seal) =
                measure(|| zheng::signcrypt(message, &alice, other.public(), &bind, params, suite, rng))?;
            let (_, open) =
                measure(|| zheng::unsigncrypt(&ct, &other, alice.public(), &bind, params, suite))?;
            vec![
                party('A', "sender", vec![("seal", seal)], 1),
                party('B', "recipient", vec![("open", open)], 2),
            ]
        }
        BenchScheme::Blind => loop {
            let ((mut signer, commit), a_commit) = measure(|| blind_sdss::signer_commit(params, rng))?;
            let ((mut req, ch), b_challenge) =
                measure(|| blind_sdss::requester_challenge(message, &commit, params, suite, rng))?;
            let (resp, a_respond) = measure(|| signer.respond(&ch, &alice, params))?;
            let (sig, b_finalize) = match measure(|| req.finalize(&resp, params)) {
                Ok(v) => v,
                Err(Error::DegenerateDenominator) => continue,
                Err(e) => return Err(e),
            };
            let (ok, verify) =
                measure(|| Ok(blind_sdss::verify(message, &sig, alice.public(), params, suite)))?;
            if !ok {
                return Err(Error::TranscriptInconsistent("signature verifies"));
            }
            break vec![
                party('A', "signer", vec![("commit", a_commit), ("respond", a_respond)], 1),
                party('B', "requester", vec![("challenge", b_challenge), ("finalize", b_finalize)], 3),
                party('C', "verifier", vec![("verify", verify)], 2),
            ];
        },
        BenchScheme::Bsc => loop {
            let ((mut signer, commit), a_commit) =
                measure(|| blind_signcrypt::bsc_signer_commit(params, rng))?;
            let ((mut req, ch), b_challenge) = measure(|| {
                blind_signcrypt::bsc_requester_challenge(
                    message,
                    &commit,
                    other.public(),
                    &bind,
                    params,
                    suite,
                    rng,
                )
            })?;
            let (resp, a_respond) = measure(|| signer.respond(&ch, &alice, params))?;
            let (ct, b_finalize) = match measure(|| req.finalize(&resp, params)) {
                Ok(v) => v,
                Err(Error::DegenerateDenominator) => continue,
                Err(e) => return Err(e),
            };
            let (_, open) = measure(|| {
                blind_signcrypt::unsigncrypt(&ct, &other, alice.public(), &bind, params, suite)
            })?;
            break vec![
                party('A', "signer", vec![("commit", a_commit), ("respond", a_respond)], 1),
                party('B', "requester", vec![("challenge", b_challenge), ("finalize", b_finalize)], 3),
                party('C', "recipient", vec![("open", open)], 2),
            ];
        },
    };
    Ok(ExpReport { scheme, parties })
}
