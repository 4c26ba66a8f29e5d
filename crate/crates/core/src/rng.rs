//! Random sources for test mode.
//!
//! Production callers pass an OS-backed generator. Tests either seed a
//! [`ChaCha20Rng`](rand_chacha::ChaCha20Rng) via [`seeded`] or script the
//! exact bytes each draw consumes with [`ScriptedRng`].

use std::collections::VecDeque;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_core::{Error as RngError, RngCore};

/// Deterministic generator for reproducible runs.
pub fn seeded(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Replays a fixed byte script and fails once it runs dry.
///
/// Scalar sampling reads `ceil(bits(q - 1) / 8)` bytes per draw (top byte
/// masked), so for toy groups each byte is one draw: the script
/// `[5, 4, 2, 6]` yields nonces 5, 4, 2, 6 in order.
#[derive(Debug, Clone, Default)]
pub struct ScriptedRng {
    bytes: VecDeque<u8>,
}

impl ScriptedRng {
    pub fn new(bytes: impl IntoIterator<Item = u8>) -> Self {
        ScriptedRng {
            bytes: bytes.into_iter().collect(),
        }
    }

    /// Appends the big-endian bytes of each value, each padded to `width`.
    pub fn push_values(&mut self, width: usize, values: &[u64]) {
        for v in values {
            let be = v.to_be_bytes();
            let take = width.min(8);
            for _ in take..width {
                self.bytes.push_back(0);
            }
            self.bytes.extend(&be[8 - take..]);
        }
    }

    pub fn remaining(&self) -> usize {
        self.bytes.len()
    }
}

impl RngCore for ScriptedRng {
    fn next_u32(&mut self) -> u32 {
        let mut buf = [0u8; 4];
        self.fill_bytes(&mut buf);
        u32::from_be_bytes(buf)
    }

    fn next_u64(&mut self) -> u64 {
        let mut buf = [0u8; 8];
        self.fill_bytes(&mut buf);
        u64::from_be_bytes(buf)
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.try_fill_bytes(dest).expect("byte script exhausted")
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), RngError> {
        if self.bytes.len() < dest.len() {
            return Err(RngError::new("byte script exhausted"));
        }
        for b in dest.iter_mut() {
            *b = self.bytes.pop_front().expect("length checked");
        }
        Ok(())
    }
}
