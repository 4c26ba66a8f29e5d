//! `bsc`: drives SDSS, Zheng signcryption, blind SDSS and blind
//! signcryption from the shell. Every message crosses process boundaries
//! as an armored wire file.
//!
//! Exit codes: 0 success, 1 verification or tag failure, 2 anything else.

mod state;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use blind_signcrypt::bench::{count_exponentiations, BenchScheme};
use blind_signcrypt::blind_sdss::{self, RequesterSession, SignerSession};
use blind_signcrypt::blind_signcrypt::{self as bsc, BscRequesterSession};
use blind_signcrypt::group::{generate_params, validate_params};
use blind_signcrypt::sdss::{self, keygen};
use blind_signcrypt::suite::default_bind_info;
use blind_signcrypt::wire::{armor, dearmor, ArmorError, Envelope, WireMessage};
use blind_signcrypt::{zheng, CryptoSuite, Error, GroupElement, GroupParams, KeyPair, SuiteId};
use clap::{Args, Parser, Subcommand};
use rand_chacha::ChaCha20Rng;
use rand_core::{OsRng, RngCore, SeedableRng};
use thiserror::Error as ThisError;

use crate::state::SessionState;

#[derive(Debug, ThisError)]
pub enum CliError {
    /// A signature or tag did not check out.
    #[error("{0}")]
    Reject(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Armor { path: PathBuf, source: ArmorError },
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_owned(), source }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Reject(_) | CliError::Lib(Error::TagMismatch) => 1,
            _ => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn parse_suite(s: &str) -> Result<SuiteId, String> {
    SuiteId::parse(s).ok_or_else(|| format!("unknown suite {s:?}; expected toy-v1 or std-v1"))
}

#[derive(Debug, Parser)]
#[command(name = "bsc", version, about = "Blind signcryption toolkit")]
struct Cli {
    /// Hash/cipher suite.
    #[arg(long, global = true, default_value = "std-v1", value_parser = parse_suite)]
    suite: SuiteId,
    /// Group parameters: a preset name (toy23, desk512) or a params file.
    #[arg(long, global = true, default_value = "desk512")]
    params: String,
    /// Deterministic randomness and on-disk session state.
    #[arg(long, global = true)]
    test_mode: bool,
    /// RNG seed; only valid with --test-mode.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    #[command(subcommand)]
    Params(ParamsCmd),
    /// Writes a secret key file and a public key file.
    Keygen {
        #[arg(long)]
        secret_out: PathBuf,
        #[arg(long)]
        public_out: PathBuf,
    },
    #[command(subcommand)]
    Sdss(SdssCmd),
    #[command(subcommand)]
    Zheng(ZhengCmd),
    /// Blind SDSS signing session.
    #[command(subcommand)]
    Blind(BlindCmd),
    /// Blind signcryption session.
    #[command(subcommand)]
    Bsc(BscCmd),
    /// Counts modular exponentiations per party for one honest run.
    Bench {
        #[arg(long, default_value = "bsc")]
        scheme: String,
        /// Only report this party (A, B or C).
        #[arg(long)]
        party: Option<char>,
    },
}

#[derive(Debug, Subcommand)]
enum ParamsCmd {
    /// Writes a preset or freshly generated parameter set.
    Gen {
        #[arg(long, conflicts_with_all = ["bits_p", "bits_q"])]
        preset: Option<String>,
        #[arg(long, requires = "bits_q")]
        bits_p: Option<u64>,
        #[arg(long, requires = "bits_p")]
        bits_q: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Checks primality, order and generator of a params file.
    Validate { file: PathBuf },
}

#[derive(Debug, Subcommand)]
enum SdssCmd {
    Sign {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    Verify {
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        sig: PathBuf,
    },
}

#[derive(Debug, Args)]
struct BindArg {
    /// Recipient binding bytes; defaults to the encoded recipient key.
    #[arg(long)]
    bind_info: Option<String>,
}

impl BindArg {
    fn resolve(&self, params: &GroupParams, recipient: &GroupElement) -> Vec<u8> {
        match &self.bind_info {
            Some(s) => s.as_bytes().to_vec(),
            None => default_bind_info(params, recipient),
        }
    }
}

#[derive(Debug, Subcommand)]
enum ZhengCmd {
    Seal {
        /// Sender secret key.
        #[arg(long)]
        key: PathBuf,
        /// Recipient public key.
        #[arg(long)]
        to: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        bind: BindArg,
    },
    Open {
        /// Recipient secret key.
        #[arg(long)]
        key: PathBuf,
        /// Sender public key.
        #[arg(long)]
        from: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        /// Plaintext destination; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        bind: BindArg,
    },
}

#[derive(Debug, Subcommand)]
enum BlindCmd {
    /// Signer: commit to a fresh nonce.
    Commit {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Requester: blind the message against a commitment.
    Challenge {
        #[arg(long)]
        commit: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Signer: answer the challenge.
    Respond {
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        challenge: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Requester: unblind the response into a signature.
    Finalize {
        #[arg(long)]
        response: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    Verify {
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        sig: PathBuf,
    },
    /// Whole session in one process; needs no state files.
    Run {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum BscCmd {
    /// Signer: commit to a fresh nonce.
    Commit {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Requester: encrypt to the recipient and blind against a commitment.
    Challenge {
        #[arg(long)]
        commit: PathBuf,
        /// Recipient public key.
        #[arg(long)]
        to: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        bind: BindArg,
    },
    /// Signer: answer the challenge.
    Respond {
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        challenge: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Requester: unblind the response into a signcrypted text.
    Finalize {
        #[arg(long)]
        response: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recipient: decrypt and verify.
    Open {
        /// Recipient secret key.
        #[arg(long)]
        key: PathBuf,
        /// Signer public key.
        #[arg(long)]
        from: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        bind: BindArg,
    },
    /// Whole session in one process; needs no state files.
    Run {
        /// Signer secret key.
        #[arg(long)]
        key: PathBuf,
        /// Recipient public key.
        #[arg(long)]
        to: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        bind: BindArg,
    },
}

/// Resolved global settings.
struct Ctx {
    suite_id: SuiteId,
    suite: CryptoSuite,
    params_spec: String,
    /// `Some` in test mode.
    seed: Option<u64>,
    rng: Box<dyn RngCore>,
}

impl Ctx {
    fn new(cli: &Cli, argv: &[OsString]) -> CliResult<Self> {
        if cli.seed.is_some() && !cli.test_mode {
            return Err(CliError::Usage("--seed requires --test-mode".into()));
        }
        let seed = cli.test_mode.then(|| cli.seed.unwrap_or(0));
        let rng: Box<dyn RngCore> = match seed {
            // Same seed and same arguments give the same bytes.
            Some(seed) => {
                let mut input = b"bsc-cli rng".to_vec();
                input.extend_from_slice(&seed.to_be_bytes());
                for arg in argv.iter().skip(1) {
                    let arg = arg.as_encoded_bytes();
                    input.extend_from_slice(&(arg.len() as u64).to_be_bytes());
                    input.extend_from_slice(arg);
                }
                let digest = blind_signcrypt::suite::std_suite().hash(&input);
                Box::new(ChaCha20Rng::from_seed(digest))
            }
            None => Box::new(OsRng),
        };
        Ok(Ctx {
            suite_id: cli.suite,
            suite: CryptoSuite::new(cli.suite),
            params_spec: cli.params.clone(),
            seed,
            rng,
        })
    }

    fn params(&self) -> CliResult<GroupParams> {
        if let Some(p) = GroupParams::named(&self.params_spec) {
            return Ok(p);
        }
        let path = Path::new(&self.params_spec);
        if !path.exists() {
            return Err(CliError::Usage(format!(
                "--params {:?} is neither a preset (toy23, desk512) nor a file",
                self.params_spec
            )));
        }
        match self.read(path)? {
            WireMessage::Params(c) => Ok(validate_params(&c)?),
            other => Err(wrong_type(path, "params", &other)),
        }
    }

    fn state_seed(&self, what: &str) -> CliResult<u64> {
        self.seed.ok_or_else(|| {
            CliError::Usage(format!(
                "{what} keeps nonces in a state file and is only allowed with --test-mode; \
                 use the `run` subcommand to do the whole session in one process"
            ))
        })
    }

    fn read(&self, path: &Path) -> CliResult<WireMessage> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let env = dearmor(&text).map_err(|source| CliError::Armor { path: path.to_owned(), source })?;
        if env.suite != self.suite_id {
            return Err(CliError::Usage(format!(
                "{}: written for suite {}, running with {}",
                path.display(),
                env.suite.as_str(),
                self.suite_id.as_str()
            )));
        }
        Ok(env.message)
    }

    fn write(&self, path: &Path, message: WireMessage) -> CliResult<()> {
        let text = armor(&Envelope::new(self.suite_id, message));
        std::fs::write(path, text).map_err(|e| CliError::io(path, e))
    }

    fn key(&self, path: &Path, params: &GroupParams) -> CliResult<KeyPair> {
        match self.read(path)? {
            WireMessage::SecretKey { x, y } => Ok(KeyPair::from_parts(x, y, params)?),
            other => Err(wrong_type(path, "secret key", &other)),
        }
    }

    fn public(&self, path: &Path, params: &GroupParams) -> CliResult<GroupElement> {
        match self.read(path)? {
            WireMessage::PubKey(y) => {
                params.check_element(&y)?;
                Ok(y)
            }
            WireMessage::SecretKey { y, .. } => {
                params.check_element(&y)?;
                Ok(y)
            }
            other => Err(wrong_type(path, "public key", &other)),
        }
    }

    fn load_state(&self, path: &Path, what: &str) -> CliResult<SessionState> {
        let seed = self.state_seed(what)?;
        state::read(path, seed)
    }

    fn save_state(&mut self, path: &Path, st: &SessionState, what: &str) -> CliResult<()> {
        let seed = self.state_seed(what)?;
        state::write(path, st, seed, &mut *self.rng)
    }
}

fn wrong_type(path: &Path, expected: &str, got: &WireMessage) -> CliError {
    CliError::Usage(format!(
        "{}: expected {expected}, found {}",
        path.display(),
        got.msg_type().label().to_lowercase()
    ))
}

fn wrong_state(path: &Path, expected: &str, got: &SessionState) -> CliError {
    CliError::Usage(format!(
        "{}: expected {expected} state, found {} state",
        path.display(),
        got.kind()
    ))
}

fn read_input(path: &Path) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|e| CliError::io(path, e))
}

fn emit_plaintext(out: Option<&Path>, m: &[u8]) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, m).map_err(|e| CliError::io(path, e)),
        None => std::io::stdout()
            .write_all(m)
            .map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

macro_rules! expect_msg {
    ($ctx:expr, $path:expr, $variant:path, $what:literal) => {
        match $ctx.read($path)? {
            $variant(v) => v,
            other => return Err(wrong_type($path, $what, &other)),
        }
    };
}

fn run_params(ctx: &mut Ctx, cmd: ParamsCmd) -> CliResult<()> {
    match cmd {
        ParamsCmd::Gen { preset, bits_p, bits_q, out } => {
            let params = match (preset, bits_p, bits_q) {
                (_, Some(bp), Some(bq)) => generate_params(bp, bq, &mut *ctx.rng)?,
                (Some(name), _, _) => GroupParams::named(&name)
                    .ok_or_else(|| CliError::Usage(format!("unknown preset {name:?}")))?,
                _ => ctx.params()?,
            };
            ctx.write(&out, WireMessage::Params(params.to_candidate()))?;
            println!("params: p {} bits, q {} bits", params.p().bits(), params.q().bits());
        }
        ParamsCmd::Validate { file } => {
            let candidate = expect_msg!(ctx, &file, WireMessage::Params, "params");
            match validate_params(&candidate) {
                Ok(p) => println!("valid: p {} bits, q {} bits", p.p().bits(), p.q().bits()),
                Err(e) => return Err(CliError::Reject(format!("invalid params: {e}"))),
            }
        }
    }
    Ok(())
}

fn run_sdss(ctx: &mut Ctx, cmd: SdssCmd) -> CliResult<()> {
    let params = ctx.params()?;
    match cmd {
        SdssCmd::Sign { key, input, out } => {
            let key = ctx.key(&key, &params)?;
            let m = read_input(&input)?;
            let sig = sdss::sign(&m, &key, &params, &ctx.suite, &mut *ctx.rng)?;
            ctx.write(&out, WireMessage::SdssSig(sig))?;
        }
        SdssCmd::Verify { public, input, sig } => {
            let y = ctx.public(&public, &params)?;
            let m = read_input(&input)?;
            let sig = expect_msg!(ctx, &sig, WireMessage::SdssSig, "sdss signature");
            if !sdss::verify(&m, &sig, &y, &params, &ctx.suite) {
                return Err(CliError::Reject("signature invalid".into()));
            }
            println!("signature valid");
        }
    }
    Ok(())
}

fn run_zheng(ctx: &mut Ctx, cmd: ZhengCmd) -> CliResult<()> {
    let params = ctx.params()?;
    match cmd {
        ZhengCmd::Seal { key, to, input, out, bind } => {
            let sender = ctx.key(&key, &params)?;
            let recipient = ctx.public(&to, &params)?;
            let m = read_input(&input)?;
            let bind = bind.resolve(&params, &recipient);
            let ct = zheng::signcrypt(&m, &sender, &recipient, &bind, &params, &ctx.suite, &mut *ctx.rng)?;
            ctx.write(&out, WireMessage::Signcrypted(ct))?;
        }
        ZhengCmd::Open { key, from, input, out, bind } => {
            let recipient = ctx.key(&key, &params)?;
            let sender = ctx.public(&from, &params)?;
            let ct = expect_msg!(ctx, &input, WireMessage::Signcrypted, "signcrypted text");
            let bind = bind.resolve(&params, recipient.public());
            let m = zheng::unsigncrypt(&ct, &recipient, &sender, &bind, &params, &ctx.suite)?;
            emit_plaintext(out.as_deref(), &m)?;
        }
    }
    Ok(())
}

fn run_blind(ctx: &mut Ctx, cmd: BlindCmd) -> CliResult<()> {
    let params = ctx.params()?;
    match cmd {
        BlindCmd::Commit { state, out } => {
            ctx.state_seed("blind commit")?;
            let mut session = SignerSession::new();
            let commit = session.commit(&params, &mut *ctx.rng)?;
            ctx.save_state(&state, &SessionState::BlindSigner(session), "blind commit")?;
            ctx.write(&out, WireMessage::Commit(commit))?;
        }
        BlindCmd::Challenge { commit, input, state, out } => {
            ctx.state_seed("blind challenge")?;
            let commit = expect_msg!(ctx, &commit, WireMessage::Commit, "commit");
            let m = read_input(&input)?;
            let mut session = RequesterSession::new(m);
            let ch = session.challenge(&commit, &params, &ctx.suite, &mut *ctx.rng)?;
            ctx.save_state(&state, &SessionState::BlindRequester(session), "blind challenge")?;
            ctx.write(&out, WireMessage::Challenge(ch))?;
        }
        BlindCmd::Respond { key, challenge, state, out } => {
            let st = ctx.load_state(&state, "blind respond")?;
            let SessionState::BlindSigner(mut session) = st else {
                return Err(wrong_state(&state, "blind signer", &st));
            };
            let key = ctx.key(&key, &params)?;
            let ch = expect_msg!(ctx, &challenge, WireMessage::Challenge, "challenge");
            let resp = session.respond(&ch, &key, &params);
            // Persist the spent state even on failure so the nonce is never reused.
            ctx.save_state(&state, &SessionState::BlindSigner(session), "blind respond")?;
            ctx.write(&out, WireMessage::Response(resp?))?;
        }
        BlindCmd::Finalize { response, state, out } => {
            let st = ctx.load_state(&state, "blind finalize")?;
            let SessionState::BlindRequester(mut session) = st else {
                return Err(wrong_state(&state, "blind requester", &st));
            };
            let resp = expect_msg!(ctx, &response, WireMessage::Response, "response");
            let sig = session.finalize(&resp, &params);
            ctx.save_state(&state, &SessionState::BlindRequester(session), "blind finalize")?;
            ctx.write(&out, WireMessage::BlindSig(sig?))?;
        }
        BlindCmd::Verify { public, input, sig } => {
            let y = ctx.public(&public, &params)?;
            let m = read_input(&input)?;
            let sig = expect_msg!(ctx, &sig, WireMessage::BlindSig, "blind signature");
            if !blind_sdss::verify(&m, &sig, &y, &params, &ctx.suite) {
                return Err(CliError::Reject("signature invalid".into()));
            }
            println!("signature valid");
        }
        BlindCmd::Run { key, input, out } => {
            let key = ctx.key(&key, &params)?;
            let m = read_input(&input)?;
            let sig = loop {
                let (mut signer, commit) = blind_sdss::signer_commit(&params, &mut *ctx.rng)?;
                let (mut req, ch) = blind_sdss::requester_challenge(&m, &commit, &params, &ctx.suite, &mut *ctx.rng)?;
                let resp = signer.respond(&ch, &key, &params)?;
                match req.finalize(&resp, &params) {
                    Err(Error::DegenerateDenominator) => continue,
                    other => break other?,
                }
            };
            ctx.write(&out, WireMessage::BlindSig(sig))?;
        }
    }
    Ok(())
}

fn run_bsc(ctx: &mut Ctx, cmd: BscCmd) -> CliResult<()> {
    let params = ctx.params()?;
    match cmd {
        BscCmd::Commit { state, out } => {
            ctx.state_seed("bsc commit")?;
            let mut session = SignerSession::new();
            let commit = session.commit(&params, &mut *ctx.rng)?;
            ctx.save_state(&state, &SessionState::BscSigner(session), "bsc commit")?;
            ctx.write(&out, WireMessage::Commit(commit))?;
        }
        BscCmd::Challenge { commit, to, input, state, out, bind } => {
            ctx.state_seed("bsc challenge")?;
            let commit = expect_msg!(ctx, &commit, WireMessage::Commit, "commit");
            let recipient = ctx.public(&to, &params)?;
            let m = read_input(&input)?;
            let bind = bind.resolve(&params, &recipient);
            let mut session = BscRequesterSession::new(m, bind);
            let ch = session.challenge(&commit, &recipient, &params, &ctx.suite, &mut *ctx.rng)?;
            ctx.save_state(&state, &SessionState::BscRequester(session), "bsc challenge")?;
            ctx.write(&out, WireMessage::Challenge(ch))?;
        }
        BscCmd::Respond { key, challenge, state, out } => {
            let st = ctx.load_state(&state, "bsc respond")?;
            let SessionState::BscSigner(mut session) = st else {
                return Err(wrong_state(&state, "bsc signer", &st));
            };
            let key = ctx.key(&key, &params)?;
            let ch = expect_msg!(ctx, &challenge, WireMessage::Challenge, "challenge");
            let resp = session.respond(&ch, &key, &params);
            ctx.save_state(&state, &SessionState::BscSigner(session), "bsc respond")?;
            ctx.write(&out, WireMessage::Response(resp?))?;
        }
        BscCmd::Finalize { response, state, out } => {
            let st = ctx.load_state(&state, "bsc finalize")?;
            let SessionState::BscRequester(mut session) = st else {
                return Err(wrong_state(&state, "bsc requester", &st));
            };
            let resp = expect_msg!(ctx, &response, WireMessage::Response, "response");
            let ct = session.finalize(&resp, &params);
            ctx.save_state(&state, &SessionState::BscRequester(session), "bsc finalize")?;
            ctx.write(&out, WireMessage::BlindSigncrypted(ct?))?;
        }
        BscCmd::Open { key, from, input, out, bind } => {
            let recipient = ctx.key(&key, &params)?;
            let signer = ctx.public(&from, &params)?;
            let ct = expect_msg!(ctx, &input, WireMessage::BlindSigncrypted, "blind signcrypted text");
            let bind = bind.resolve(&params, recipient.public());
            let m = bsc::unsigncrypt(&ct, &recipient, &signer, &bind, &params, &ctx.suite)?;
            emit_plaintext(out.as_deref(), &m)?;
        }
        BscCmd::Run { key, to, input, out, bind } => {
            let key = ctx.key(&key, &params)?;
            let recipient = ctx.public(&to, &params)?;
            let m = read_input(&input)?;
            let bind = bind.resolve(&params, &recipient);
            let ct = loop {
                let (mut signer, commit) = bsc::bsc_signer_commit(&params, &mut *ctx.rng)?;
                let (mut req, ch) = bsc::bsc_requester_challenge(
                    &m,
                    &commit,
                    &recipient,
                    &bind,
                    &params,
                    &ctx.suite,
                    &mut *ctx.rng,
                )?;
                let resp = signer.respond(&ch, &key, &params)?;
                match req.finalize(&resp, &params) {
                    Err(Error::DegenerateDenominator) => continue,
                    other => break other?,
                }
            };
            ctx.write(&out, WireMessage::BlindSigncrypted(ct))?;
        }
    }
    Ok(())
}

fn run_bench(ctx: &mut Ctx, scheme: &str, party: Option<char>) -> CliResult<()> {
    let params = ctx.params()?;
    let scheme = BenchScheme::parse(scheme)
        .ok_or_else(|| CliError::Usage(format!("unknown scheme {scheme:?}; expected sdss, zheng, blind or bsc")))?;
    let report = count_exponentiations(scheme, &params, &ctx.suite, &mut *ctx.rng)?;
    match party {
        None => print!("{report}"),
        Some(c) => {
            let c = c.to_ascii_uppercase();
            let p = report
                .party(c)
                .ok_or_else(|| CliError::Usage(format!("scheme {} has no party {c}", scheme.name())))?;
            let steps: Vec<String> = p.steps.iter().map(|(s, n)| format!("{s}={n}")).collect();
            println!(
                "scheme {} party {} ({}): {} modular exponentiations [{}]",
                scheme.name(),
                p.party,
                p.role,
                p.total(),
                steps.join(", ")
            );
            println!("strategy: {}", blind_signcrypt::bench::STRATEGY_NOTE);
        }
    }
    if !report.all_match() {
        return Err(CliError::Usage(format!("counts differ from expectation:\n{report}")));
    }
    Ok(())
}

fn run(cli: Cli, argv: &[OsString]) -> CliResult<()> {
    let mut ctx = Ctx::new(&cli, argv)?;
    match cli.command {
        Command::Params(cmd) => run_params(&mut ctx, cmd),
        Command::Keygen { secret_out, public_out } => {
            let params = ctx.params()?;
            let key = keygen(&params, &mut *ctx.rng)?;
            ctx.write(&secret_out, WireMessage::secret_key(&key))?;
            ctx.write(&public_out, WireMessage::PubKey(key.public().clone()))
        }
        Command::Sdss(cmd) => run_sdss(&mut ctx, cmd),
        Command::Zheng(cmd) => run_zheng(&mut ctx, cmd),
        Command::Blind(cmd) => run_blind(&mut ctx, cmd),
        Command::Bsc(cmd) => run_bsc(&mut ctx, cmd),
        Command::Bench { scheme, party } => run_bench(&mut ctx, &scheme, party),
    }
}

fn main() -> ExitCode {
    let argv: Vec<OsString> = std::env::args_os().collect();
    // clap exits with 2 on usage errors.
    let cli = Cli::parse_from(&argv);
    match run(cli, &argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bsc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
