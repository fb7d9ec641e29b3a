//! Deterministic pseudo-randomness for the sampling-based planner and the
//! sweep harness.
//!
//! The generator is SplitMix64: a 64-bit counter walked by a fixed odd
//! increment, pushed through an avalanching finalizer. It is tiny, has no
//! state beyond one word, and — crucially for reproducible experiments —
//! the full recurrence is spelled out below, so the streams can be
//! recomputed bit for bit in any language without linking this crate.
//!
//! Seeds for independent streams (one per sweep point, one per trial) are
//! derived with [`derive_seed`] rather than by jumping a single stream, so
//! adding or reordering points never perturbs the draws of the others.

/// Increment of the underlying counter: the odd 64-bit golden-ratio
/// constant, which makes consecutive states maximally far apart in the
/// avalanche sense.
const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Output finalizer of SplitMix64 (Stafford's "Mix13" variant): two
/// xor-shift-multiply rounds and a closing xor-shift.
///
/// Also used on its own as a cheap 64-bit hash by [`derive_seed`].
#[inline]
pub fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed of child stream `index` from a parent seed.
///
/// The parent seed is hashed before the index is folded in, so the child
/// streams of distinct parents differ even when parent seeds are small
/// consecutive integers (as CLI-supplied seeds usually are).
#[inline]
pub fn derive_seed(parent: u64, index: u64) -> u64 {
    mix(mix(parent) ^ index)
}

/// SplitMix64 pseudo-random generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    /// Creates a generator; equal seeds produce equal streams.
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Next raw 64-bit value: advance the counter, finalize it.
    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix(self.state)
    }

    /// Uniform draw from the *inclusive* range `[1, n]`.
    ///
    /// Uses rejection sampling: raw values falling in the final partial
    /// copy of `n` at the top of the 64-bit range (there are `2^64 mod n`
    /// such values) are discarded and redrawn, so every result is exactly
    /// equally likely rather than merely close to it.
    ///
    /// # Panics
    ///
    /// Panics if `n` is zero.
    pub fn uniform_inclusive(&mut self, n: u64) -> u64 {
        assert!(n > 0, "uniform_inclusive requires a nonempty range");
        if n == 1 {
            return 1;
        }
        // 2^64 mod n, computed without 128-bit arithmetic.
        let rem = (u64::MAX % n + 1) % n;
        loop {
            let x = self.next_u64();
            if x <= u64::MAX - rem {
                return x % n + 1;
            }
        }
    }
}
