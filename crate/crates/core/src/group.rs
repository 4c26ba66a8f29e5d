//! Modular arithmetic over the order-q subgroup of Z_p*.
//!
//! Scalars live in `[0, q)` and group elements in `[1, p)`; every value is
//! stored reduced. Every call to [`modexp`] bumps a per-thread counter so
//! callers can measure how many exponentiations an operation costs.

use std::cell::Cell;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_core::RngCore;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, ParamName, Result};

/// Miller-Rabin rounds; each round has error at most 1/4, so 40 rounds stay
/// below 2^-80.
pub const PRIMALITY_ROUNDS: usize = 40;

const MAX_GENERATION_ATTEMPTS: u64 = 200_000;

thread_local! {
    static EXP_COUNT: Cell<u64> = const { Cell::new(0) };
}

/// Number of [`modexp`] calls made on the current thread so far.
pub fn exp_count() -> u64 {
    EXP_COUNT.with(Cell::get)
}

/// Measures the number of [`modexp`] calls between `start` and `elapsed`.
#[derive(Debug, Clone, Copy)]
pub struct ExpCounter {
    start: u64,
}

impl ExpCounter {
    pub fn start() -> Self {
        ExpCounter { start: exp_count() }
    }

    pub fn elapsed(&self) -> u64 {
        exp_count() - self.start
    }
}

/// An integer in `[0, q)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Scalar(BigUint);

impl Scalar {
    /// Wraps a value without checking it against `q`. Protocol entry points
    /// re-check incoming values with [`GroupParams::check_scalar`].
    pub(crate) fn new_unchecked(value: BigUint) -> Self {
        Scalar(value)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self.0)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// An integer in `[1, p)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(BigUint);

impl GroupElement {
    pub(crate) fn new_unchecked(value: BigUint) -> Self {
        GroupElement(value)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement({})", self.0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// An unvalidated `(p, q, g)` triple, e.g. as read off the wire.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamsCandidate {
    pub p: BigUint,
    pub q: BigUint,
    pub g: BigUint,
}

/// Validated public parameters: primes `p`, `q` with `q | p - 1` and a
/// generator `g` of the order-`q` subgroup.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupParams {
    p: BigUint,
    q: BigUint,
    g: GroupElement,
    p_len: usize,
    q_len: usize,
}

impl fmt::Debug for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupParams")
            .field("p_bits", &self.p.bits())
            .field("q_bits", &self.q.bits())
            .finish()
    }
}

/// Seed fed to [`rng::seeded`](crate::rng::seeded) to produce the `desk512` set.
pub const DESK512_SEED: u64 = 512_160;
const DESK512_P: &str = "bf463e55d6c86d906b5dde315421fc42ddaceec4be93a89ce1f3e35280fc3ad9\
                         1f0061b4a0d802b4a9eb93e931bce0bfaf8bdf9b0e7ee5056029cdb2f3349e6b";
const DESK512_Q: &str = "aece82d89f0e4f4cb9c7a24c73f56d02179d82f1";
const DESK512_G: &str = "9c4e797ad5458ec3b2a229d31b0508fa71bd530d83075bfa4778b2cf1b40abe6\
                         25ff01d9131f8dcaba0fcef48f6dacae3585b8cfd1af7a06c23815bd765ceb16";

impl GroupParams {
    fn from_validated(p: BigUint, q: BigUint, g: BigUint) -> Self {
        let p_len = byte_len(&p);
        let q_len = byte_len(&q);
        GroupParams {
            p,
            q,
            g: GroupElement(g),
            p_len,
            q_len,
        }
    }

    /// The small test group (p, q, g) = (23, 11, 2).
    pub fn toy23() -> Self {
        Self::from_validated(23u32.into(), 11u32.into(), 2u32.into())
    }

    /// A 512-bit p / 160-bit q group generated from a fixed seed.
    /// Well below modern security margins; meant for desk-scale runs.
    pub fn desk512() -> Self {
        let parse = |s: &str| BigUint::parse_bytes(s.as_bytes(), 16).expect("valid hex constant");
        Self::from_validated(parse(DESK512_P), parse(DESK512_Q), parse(DESK512_G))
    }

    /// Looks up a built-in parameter set by name.
    pub fn named(name: &str) -> Option<Self> {
        match name {
            "toy23" => Some(Self::toy23()),
            "desk512" => Some(Self::desk512()),
            _ => None,
        }
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    pub fn g(&self) -> &GroupElement {
        &self.g
    }

    pub fn to_candidate(&self) -> ParamsCandidate {
        ParamsCandidate {
            p: self.p.clone(),
            q: self.q.clone(),
            g: self.g.0.clone(),
        }
    }

    /// Byte width of `p`; group elements hash and serialize at this width.
    pub fn element_len(&self) -> usize {
        self.p_len
    }

    /// Byte width of `q`.
    pub fn scalar_len(&self) -> usize {
        self.q_len
    }

    pub fn scalar(&self, value: BigUint) -> Result<Scalar> {
        if value < self.q {
            Ok(Scalar(value))
        } else {
            Err(Error::OutOfRange)
        }
    }

    pub fn scalar_u64(&self, value: u64) -> Result<Scalar> {
        self.scalar(value.into())
    }

    /// Reduces an arbitrary integer modulo `q`.
    pub fn reduce(&self, value: &BigUint) -> Scalar {
        Scalar(value % &self.q)
    }

    pub fn element(&self, value: BigUint) -> Result<GroupElement> {
        if !value.is_zero() && value < self.p {
            Ok(GroupElement(value))
        } else {
            Err(Error::OutOfRange)
        }
    }

    pub fn element_u64(&self, value: u64) -> Result<GroupElement> {
        self.element(value.into())
    }

    pub fn check_scalar(&self, s: &Scalar) -> Result<()> {
        if s.0 < self.q {
            Ok(())
        } else {
            Err(Error::OutOfRange)
        }
    }

    pub fn check_element(&self, e: &GroupElement) -> Result<()> {
        if !e.0.is_zero() && e.0 < self.p {
            Ok(())
        } else {
            Err(Error::OutOfRange)
        }
    }

    /// `e^q == 1 mod p`. Not counted as a protocol exponentiation.
    pub fn is_subgroup_member(&self, e: &GroupElement) -> bool {
        self.check_element(e).is_ok() && e.0.modpow(&self.q, &self.p).is_one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        Scalar((&a.0 + &b.0) % &self.q)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        Scalar((&a.0 + &self.q - &b.0 % &self.q) % &self.q)
    }

    pub fn mul_scalars(&self, a: &Scalar, b: &Scalar) -> Scalar {
        Scalar((&a.0 * &b.0) % &self.q)
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement((&a.0 * &b.0) % &self.p)
    }

    /// Fixed-width big-endian encoding of a group element.
    pub fn element_bytes(&self, e: &GroupElement) -> Vec<u8> {
        to_fixed_be(&e.0, self.p_len)
    }

    /// Fixed-width big-endian encoding of a scalar.
    pub fn scalar_bytes(&self, s: &Scalar) -> Vec<u8> {
        to_fixed_be(&s.0, self.q_len)
    }
}

fn byte_len(n: &BigUint) -> usize {
    n.bits().div_ceil(8) as usize
}

pub(crate) fn to_fixed_be(n: &BigUint, width: usize) -> Vec<u8> {
    let raw = if n.is_zero() { Vec::new() } else { n.to_bytes_be() };
    let mut out = vec![0u8; width.saturating_sub(raw.len())];
    out.extend_from_slice(&raw);
    out
}

/// `base^exp mod p`. Counted by [`exp_count`].
pub fn modexp(base: &GroupElement, exp: &Scalar, params: &GroupParams) -> GroupElement {
    EXP_COUNT.with(|c| c.set(c.get() + 1));
    GroupElement(base.0.modpow(&exp.0, &params.p))
}

/// Inverse of `a` modulo the prime `q`.
pub fn modinv(a: &Scalar, q: &BigUint) -> Result<Scalar> {
    let a = &a.0 % q;
    if a.is_zero() {
        return Err(Error::ZeroInverse);
    }
    // Fermat: a^(q-2) for prime q.
    let exp = q - 2u32;
    Ok(Scalar(a.modpow(&exp, q)))
}

fn fill(rng: &mut (impl RngCore + ?Sized), buf: &mut [u8]) -> Result<()> {
    rng.try_fill_bytes(buf)
        .map_err(|e| Error::RngFailure(e.to_string()))
}

/// Uniform integer in `[0, bound)` by masked rejection sampling. Consumes
/// `ceil(bits(bound - 1) / 8)` bytes per draw, so scripted byte sources map
/// one byte to one draw for small bounds.
pub(crate) fn rand_below(rng: &mut (impl RngCore + ?Sized), bound: &BigUint) -> Result<BigUint> {
    if bound.is_zero() {
        return Err(Error::Precondition("sampling bound must be positive"));
    }
    let max = bound - 1u32;
    let bits = max.bits();
    if bits == 0 {
        return Ok(BigUint::zero());
    }
    let len = bits.div_ceil(8) as usize;
    let top_mask = if bits.is_multiple_of(8) { 0xff } else { (1u8 << (bits % 8)) - 1 };
    let mut buf = vec![0u8; len];
    loop {
        fill(rng, &mut buf)?;
        buf[0] &= top_mask;
        let candidate = BigUint::from_bytes_be(&buf);
        if &candidate < bound {
            return Ok(candidate);
        }
    }
}

/// Uniform scalar in `[0, q)`.
pub fn rand_scalar(rng: &mut (impl RngCore + ?Sized), q: &BigUint) -> Result<Scalar> {
    rand_below(rng, q).map(Scalar)
}

/// Uniform scalar in `[1, q)`.
pub fn rand_scalar_nonzero(rng: &mut (impl RngCore + ?Sized), q: &BigUint) -> Result<Scalar> {
    if q <= &BigUint::one() {
        return Err(Error::Precondition("q must exceed 1"));
    }
    loop {
        let v = rand_below(rng, q)?;
        if !v.is_zero() {
            return Ok(Scalar(v));
        }
    }
}

const SMALL_PRIMES: [u32; 54] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251,
];

/// Miller-Rabin with [`PRIMALITY_ROUNDS`] bases drawn from a generator
/// seeded by the candidate, so the answer is reproducible.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &sp in SMALL_PRIMES.iter() {
        let sp = BigUint::from(sp);
        if n == &sp {
            return true;
        }
        if (n % &sp).is_zero() {
            return false;
        }
    }

    let n_minus_1 = n - 1u32;
    let trailing = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> trailing;

    let seed: [u8; 32] = Sha256::digest(n.to_bytes_be()).into();
    let mut rng = ChaCha20Rng::from_seed(seed);
    // bases in [2, n - 2]
    let span = n - 3u32;
    'witness: for _ in 0..PRIMALITY_ROUNDS {
        let a = rand_below(&mut rng, &span).expect("chacha never fails") + 2u32;
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..trailing {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Checks a candidate triple and returns validated parameters.
pub fn validate_params(candidate: &ParamsCandidate) -> Result<GroupParams> {
    let ParamsCandidate { p, q, g } = candidate;
    if !is_probable_prime(p) {
        return Err(Error::NotPrime(ParamName::P));
    }
    if !is_probable_prime(q) {
        return Err(Error::NotPrime(ParamName::Q));
    }
    if !(p - 1u32).is_multiple_of(q) {
        return Err(Error::OrderMismatch);
    }
    if g.is_zero() || g >= p || g.is_one() || !g.modpow(q, p).is_one() {
        return Err(Error::BadGenerator);
    }
    Ok(GroupParams::from_validated(p.clone(), q.clone(), g.clone()))
}

fn rand_exact_bits(rng: &mut (impl RngCore + ?Sized), bits: u64) -> Result<BigUint> {
    let len = bits.div_ceil(8) as usize;
    let mut buf = vec![0u8; len];
    fill(rng, &mut buf)?;
    let extra = (len as u64) * 8 - bits;
    buf[0] &= 0xffu8 >> extra;
    buf[0] |= 0x80u8 >> extra;
    Ok(BigUint::from_bytes_be(&buf))
}

/// Generates `p` of `bits_p` bits and `q` of `bits_q` bits with `q | p - 1`,
/// and `g = h^((p-1)/q) mod p` for random `h`.
pub fn generate_params(
    bits_p: u64,
    bits_q: u64,
    rng: &mut (impl RngCore + ?Sized),
) -> Result<GroupParams> {
    if bits_q < 8 {
        return Err(Error::Precondition("bits_q must be at least 8"));
    }
    if bits_q >= bits_p {
        return Err(Error::Precondition("bits_q must be smaller than bits_p"));
    }

    let mut attempts = 0u64;
    let q = loop {
        attempts += 1;
        if attempts > MAX_GENERATION_ATTEMPTS {
            return Err(Error::GenerationTimeout(MAX_GENERATION_ATTEMPTS));
        }
        let mut c = rand_exact_bits(rng, bits_q)?;
        c |= BigUint::one();
        if is_probable_prime(&c) {
            break c;
        }
    };

    let two_q = &q << 1u32;
    let mut attempts = 0u64;
    let p = loop {
        attempts += 1;
        if attempts > MAX_GENERATION_ATTEMPTS {
            return Err(Error::GenerationTimeout(MAX_GENERATION_ATTEMPTS));
        }
        let x = rand_exact_bits(rng, bits_p)?;
        let c = &x - (&x % &two_q) + 1u32;
        if c.bits() == bits_p && is_probable_prime(&c) {
            break c;
        }
    };

    let cofactor = (&p - 1u32) / &q;
    let span = &p - 3u32;
    let mut attempts = 0u64;
    let g = loop {
        attempts += 1;
        if attempts > MAX_GENERATION_ATTEMPTS {
            return Err(Error::GenerationTimeout(MAX_GENERATION_ATTEMPTS));
        }
        let h = rand_below(rng, &span)? + 2u32;
        let g = h.modpow(&cofactor, &p);
        if !g.is_one() {
            break g;
        }
    };

    validate_params(&ParamsCandidate { p, q, g })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::ScriptedRng;

    fn naive_pow(base: u64, exp: u64, p: u64) -> u64 {
        let mut acc = 1 % p;
        for _ in 0..exp {
            acc = acc * base % p;
        }
        acc
    }

    fn ext_euclid_inverse(a: i64, m: i64) -> Option<i64> {
        let (mut old_r, mut r) = (a, m);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let quot = old_r / r;
            (old_r, r) = (r, old_r - quot * r);
            (old_s, s) = (s, old_s - quot * s);
        }
        if old_r != 1 {
            return None;
        }
        Some(old_s.rem_euclid(m))
    }

    #[test]
    fn modexp_worked_values() {
        let params = GroupParams::toy23();
        let two = params.element_u64(2).unwrap();
        let eight = params.element_u64(8).unwrap();
        // exponent 11 is q itself; reduced scalars cannot hold it, so use the raw check
        assert!(params.is_subgroup_member(&two));
        assert_eq!(modexp(&eight, &params.scalar_u64(5).unwrap(), &params).value(), &16u32.into());
        assert_eq!(modexp(&two, &params.scalar_u64(0).unwrap(), &params).value(), &1u32.into());
        assert_eq!(naive_pow(2, 11, 23), 1);
        assert_eq!(naive_pow(8, 5, 23), 16);
    }

    #[test]
    fn modexp_matches_naive_for_small_primes() {
        for p in (3u64..=97).filter(|n| is_probable_prime(&BigUint::from(*n))) {
            let q = p - 1;
            let params = GroupParams::from_validated(p.into(), q.into(), 1u32.into());
            for base in 1..p {
                for exp in 0..q {
                    let got = modexp(
                        &GroupElement(base.into()),
                        &Scalar(exp.into()),
                        &params,
                    );
                    assert_eq!(got.value(), &naive_pow(base, exp, p).into(), "{base}^{exp} mod {p}");
                }
            }
        }
    }

    #[test]
    fn modinv_matches_extended_euclid() {
        let q = BigUint::from(11u32);
        assert_eq!(modinv(&Scalar(10u32.into()), &q).unwrap().value(), &10u32.into());
        assert_eq!(modinv(&Scalar(1u32.into()), &q).unwrap().value(), &1u32.into());
        assert_eq!(modinv(&Scalar(0u32.into()), &q), Err(Error::ZeroInverse));
        for a in 1..11i64 {
            let inv = modinv(&Scalar((a as u64).into()), &q).unwrap();
            assert_eq!(inv.value(), &(ext_euclid_inverse(a, 11).unwrap() as u64).into());
        }
    }

    #[test]
    fn modinv_times_a_is_one_desk() {
        let params = GroupParams::desk512();
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = rand_scalar_nonzero(&mut rng, params.q()).unwrap();
            let inv = modinv(&a, params.q()).unwrap();
            assert!(params.mul_scalars(&a, &inv).value().is_one());
        }
    }

    #[test]
    fn subgroup_closure() {
        for params in [GroupParams::toy23(), GroupParams::desk512()] {
            let mut rng = ChaCha20Rng::seed_from_u64(3);
            for _ in 0..50 {
                let k = rand_scalar(&mut rng, params.q()).unwrap();
                let e = modexp(params.g(), &k, &params);
                assert!(params.is_subgroup_member(&e));
            }
        }
    }

    #[test]
    fn validate_params_cases() {
        let c = |p: u32, q: u32, g: u32| ParamsCandidate { p: p.into(), q: q.into(), g: g.into() };
        assert!(validate_params(&c(23, 11, 2)).is_ok());
        assert_eq!(validate_params(&c(23, 11, 1)), Err(Error::BadGenerator));
        assert_eq!(validate_params(&c(24, 11, 2)), Err(Error::NotPrime(ParamName::P)));
        assert_eq!(validate_params(&c(23, 9, 2)), Err(Error::NotPrime(ParamName::Q)));
        assert_eq!(validate_params(&c(23, 7, 2)), Err(Error::OrderMismatch));
        // 5 has order 22 mod 23
        assert_eq!(validate_params(&c(23, 11, 5)), Err(Error::BadGenerator));
        assert_eq!(validate_params(&c(23, 11, 0)), Err(Error::BadGenerator));
    }

    #[test]
    fn builtin_sets_validate() {
        for params in [GroupParams::toy23(), GroupParams::desk512()] {
            let again = validate_params(&params.to_candidate()).unwrap();
            assert_eq!(again, params);
        }
        let desk = GroupParams::desk512();
        assert_eq!(desk.p().bits(), 512);
        assert_eq!(desk.q().bits(), 160);
    }

    #[test]
    fn primality_agrees_with_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0u64..5000 {
            assert_eq!(is_probable_prime(&n.into()), trial(n), "n = {n}");
        }
        // Carmichael numbers
        for n in [561u64, 1105, 1729, 2465, 2821, 6601, 8911, 41041, 825265] {
            assert!(!is_probable_prime(&n.into()));
        }
    }

    #[test]
    fn desk512_regenerates_from_seed() {
        let start = std::time::Instant::now();
        let mut rng = crate::rng::seeded(DESK512_SEED);
        let params = generate_params(512, 160, &mut rng).unwrap();
        assert!(start.elapsed() < std::time::Duration::from_secs(10));
        assert_eq!(params, GroupParams::desk512());
    }

    #[test]
    fn generate_small_params() {
        let mut rng = ChaCha20Rng::seed_from_u64(16);
        let params = generate_params(16, 8, &mut rng).unwrap();
        assert_eq!(params.p().bits(), 16);
        assert_eq!(params.q().bits(), 8);
        assert!(validate_params(&params.to_candidate()).is_ok());
    }

    #[test]
    fn generate_rejects_bad_bit_lengths() {
        let mut rng = ChaCha20Rng::seed_from_u64(0);
        assert!(matches!(generate_params(8, 16, &mut rng), Err(Error::Precondition(_))));
        assert!(matches!(generate_params(64, 4, &mut rng), Err(Error::Precondition(_))));
    }

    #[test]
    fn scalar_sampling_range_and_determinism() {
        let q = BigUint::from(11u32);
        let mut rng = ChaCha20Rng::seed_from_u64(99);
        for _ in 0..1000 {
            let s = rand_scalar_nonzero(&mut rng, &q).unwrap();
            assert!(!s.is_zero() && s.value() < &q);
        }
        let a = rand_scalar_nonzero(&mut ChaCha20Rng::seed_from_u64(5), &q).unwrap();
        let b = rand_scalar_nonzero(&mut ChaCha20Rng::seed_from_u64(5), &q).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn scripted_bytes_map_to_draws() {
        let q = BigUint::from(11u32);
        // 0 is skipped for the nonzero draw; 13 and 0x1f mask to values >= q and are rejected
        let mut rng = ScriptedRng::new([0u8, 0x1d, 13, 5]);
        assert_eq!(rand_scalar_nonzero(&mut rng, &q).unwrap().value(), &5u32.into());
        assert!(matches!(rand_scalar(&mut rng, &q), Err(Error::RngFailure(_))));
    }

    #[test]
    fn scalar_arithmetic_wraps() {
        let params = GroupParams::toy23();
        let s = |v| params.scalar_u64(v).unwrap();
        assert_eq!(params.add(&s(7), &s(6)), s(2));
        assert_eq!(params.sub(&s(2), &s(7)), s(6));
        assert_eq!(params.mul_scalars(&s(9), &s(5)), s(1));
        assert_eq!(params.scalar_u64(11), Err(Error::OutOfRange));
        assert_eq!(params.element_u64(0), Err(Error::OutOfRange));
        assert_eq!(params.element_u64(23), Err(Error::OutOfRange));
    }

    #[test]
    fn exp_counter_counts_modexp_only() {
        let params = GroupParams::toy23();
        let counter = ExpCounter::start();
        let e = modexp(params.g(), &params.scalar_u64(3).unwrap(), &params);
        let _ = params.is_subgroup_member(&e);
        let _ = modinv(&params.scalar_u64(3).unwrap(), params.q());
        assert_eq!(counter.elapsed(), 1);
    }
}
