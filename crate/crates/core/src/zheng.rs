//! Zheng signcryption built on SDSS.
//!
//! The sender draws `k`, derives `(K1, K2)` from `y_B^k`, tags the message
//! with `r = KH_{K2}(m, bind_info)` and signs with `s = k / (r + x_A)`. The
//! recipient rebuilds the same shared element as `(y_A * g^r)^(s * x_B)`.

use rand_core::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{modexp, modinv, rand_scalar_nonzero, GroupElement, GroupParams, Scalar};
use crate::sdss::KeyPair;
use crate::suite::{derive_keys, tag_to_scalar, CryptoSuite};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigncryptedText {
    pub c: Vec<u8>,
    pub r: Scalar,
    pub s: Scalar,
}

/// Sender-side secrets of one signcryption, exposed for tests.
#[derive(Debug, Clone)]
pub struct SealTrace {
    pub text: SigncryptedText,
    pub nonce: Scalar,
    pub shared: GroupElement,
}

#[allow(clippy::too_many_arguments)]
pub fn signcrypt(
    message: &[u8],
    sender: &KeyPair,
    recipient_pub: &GroupElement,
    bind_info: &[u8],
    params: &GroupParams,
    suite: &CryptoSuite,
    rng: &mut (impl RngCore + ?Sized),
) -> Result<SigncryptedText> {
    signcrypt_with_trace(message, sender, recipient_pub, bind_info, params, suite, rng)
        .map(|t| t.text)
}

#[allow(clippy::too_many_arguments)]
pub fn signcrypt_with_trace(
    message: &[u8],
    sender: &KeyPair,
    recipient_pub: &GroupElement,
    bind_info: &[u8],
    params: &GroupParams,
    suite: &CryptoSuite,
    rng: &mut (impl RngCore + ?Sized),
) -> Result<SealTrace> {
    params.check_element(recipient_pub)?;
    loop {
        let k = rand_scalar_nonzero(rng, params.q())?;
        let shared = modexp(recipient_pub, &k, params);
        let keys = derive_keys(&shared, params, suite);
        let r = tag_to_scalar(&keys.k2, message, bind_info, params.q(), suite);
        if r.is_zero() {
            continue;
        }
        let Ok(inv) = modinv(&params.add(&r, sender.secret()), params.q()) else {
            continue;
        };
        let s = params.mul_scalars(&k, &inv);
        let c = suite.encrypt(&keys.k1, message);
        return Ok(SealTrace {
            text: SigncryptedText { c, r, s },
            nonce: k,
            shared,
        });
    }
}

/// `(y_A * g^r)^(s * x_B mod q) mod p`.
pub fn recipient_shared(
    ct: &SigncryptedText,
    recipient: &KeyPair,
    sender_pub: &GroupElement,
    params: &GroupParams,
) -> GroupElement {
    let base = params.mul(sender_pub, &modexp(params.g(), &ct.r, params));
    let exp = params.mul_scalars(&ct.s, recipient.secret());
    modexp(&base, &exp, params)
}

pub fn unsigncrypt(
    ct: &SigncryptedText,
    recipient: &KeyPair,
    sender_pub: &GroupElement,
    bind_info: &[u8],
    params: &GroupParams,
    suite: &CryptoSuite,
) -> Result<Vec<u8>> {
    let in_range = params.check_scalar(&ct.r).is_ok()
        && params.check_scalar(&ct.s).is_ok()
        && params.check_element(sender_pub).is_ok();
    if !in_range || ct.r.is_zero() || ct.s.is_zero() {
        return Err(Error::TagMismatch);
    }
    let shared = recipient_shared(ct, recipient, sender_pub, params);
    let keys = derive_keys(&shared, params, suite);
    let message = suite.decrypt(&keys.k1, &ct.c);
    if tag_to_scalar(&keys.k2, &message, bind_info, params.q(), suite) == ct.r {
        Ok(message)
    } else {
        Err(Error::TagMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{seeded, ScriptedRng};
    use crate::sdss::keygen;
    use crate::suite::{default_bind_info, std_suite, toy_suite};

    struct Toy {
        params: GroupParams,
        alice: KeyPair,
        bob: KeyPair,
        suite: CryptoSuite,
    }

    fn toy() -> Toy {
        let params = GroupParams::toy23();
        let alice = KeyPair::from_secret(params.scalar_u64(3).unwrap(), &params).unwrap();
        let bob = KeyPair::from_secret(params.scalar_u64(4).unwrap(), &params).unwrap();
        let shared = params.element_u64(6).unwrap();
        let keys = derive_keys(&shared, &params, &toy_suite());
        let suite = toy_suite().with_tag_stub(&keys.k2, b"hello", b"bob", 7);
        Toy { params, alice, bob, suite }
    }

    #[test]
    fn toy_vector() {
        let t = toy();
        assert_eq!(t.bob.public(), &t.params.element_u64(16).unwrap());
        let trace = signcrypt_with_trace(
            b"hello",
            &t.alice,
            t.bob.public(),
            b"bob",
            &t.params,
            &t.suite,
            &mut ScriptedRng::new([5]),
        )
        .unwrap();
        assert_eq!(trace.shared, t.params.element_u64(6).unwrap());
        assert_eq!(trace.text.r, t.params.scalar_u64(7).unwrap());
        assert_eq!(trace.text.s, t.params.scalar_u64(6).unwrap());
        assert_eq!(
            recipient_shared(&trace.text, &t.bob, t.alice.public(), &t.params),
            t.params.element_u64(6).unwrap()
        );
        let m = unsigncrypt(&trace.text, &t.bob, t.alice.public(), b"bob", &t.params, &t.suite).unwrap();
        assert_eq!(m, b"hello");
    }

    #[test]
    fn toy_vector_rejections() {
        let t = toy();
        let ct = signcrypt(b"hello", &t.alice, t.bob.public(), b"bob", &t.params, &t.suite, &mut ScriptedRng::new([5]))
            .unwrap();

        let mut flipped = ct.clone();
        flipped.c[0] ^= 1;
        assert_eq!(
            unsigncrypt(&flipped, &t.bob, t.alice.public(), b"bob", &t.params, &t.suite),
            Err(Error::TagMismatch)
        );

        let wrong = KeyPair::from_secret(t.params.scalar_u64(5).unwrap(), &t.params).unwrap();
        assert_eq!(
            unsigncrypt(&ct, &wrong, t.alice.public(), b"bob", &t.params, &t.suite),
            Err(Error::TagMismatch)
        );
        assert_eq!(
            unsigncrypt(&ct, &t.bob, t.alice.public(), b"eve", &t.params, &t.suite),
            Err(Error::TagMismatch)
        );
    }

    #[test]
    fn key_agreement_identity_holds() {
        let params = GroupParams::desk512();
        let suite = std_suite();
        let mut rng = seeded(77);
        for _ in 0..50 {
            let alice = keygen(&params, &mut rng).unwrap();
            let bob = keygen(&params, &mut rng).unwrap();
            let trace =
                signcrypt_with_trace(b"msg", &alice, bob.public(), b"", &params, &suite, &mut rng).unwrap();
            assert_eq!(trace.shared, modexp(bob.public(), &trace.nonce, &params));
            assert_eq!(recipient_shared(&trace.text, &bob, alice.public(), &params), trace.shared);
        }
    }

    #[test]
    fn fresh_nonce_each_time() {
        let params = GroupParams::desk512();
        let suite = std_suite();
        let mut rng = seeded(78);
        let alice = keygen(&params, &mut rng).unwrap();
        let bob = keygen(&params, &mut rng).unwrap();
        let bind = default_bind_info(&params, bob.public());
        let mut seen = std::collections::HashSet::new();
        for _ in 0..100 {
            let ct = signcrypt(b"same message", &alice, bob.public(), &bind, &params, &suite, &mut rng).unwrap();
            assert!(seen.insert(ct.c));
        }
    }

    #[test]
    fn large_and_empty_messages_roundtrip() {
        let params = GroupParams::desk512();
        let suite = std_suite();
        let mut rng = seeded(79);
        let alice = keygen(&params, &mut rng).unwrap();
        let bob = keygen(&params, &mut rng).unwrap();
        for len in [0usize, 1, 31, 32, 33, 65536] {
            let msg: Vec<u8> = (0..len).map(|i| (i * 7) as u8).collect();
            let ct = signcrypt(&msg, &alice, bob.public(), b"id", &params, &suite, &mut rng).unwrap();
            assert_eq!(ct.c.len(), len);
            assert_eq!(unsigncrypt(&ct, &bob, alice.public(), b"id", &params, &suite).unwrap(), msg);
        }
    }
}
