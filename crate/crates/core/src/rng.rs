//! Small deterministic generator for seeded sampling and prime search.
//!
//! SplitMix64 is enough here: every consumer is either rejection sampling
//! (instance generation, prime candidates) or seed splitting for batch
//! trials, and reproducibility matters more than statistical strength.

/// SplitMix64 stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `[0, bound)` by rejection; `bound` must be nonzero.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// Uniform value in the inclusive range `[lo, hi]`.
    pub fn next_i64_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let width = (hi as i128 - lo as i128 + 1) as u64;
        lo.wrapping_add(self.next_below(width) as i64)
    }

    /// Derive an independent child seed, for per-trial streams.
    pub fn split(&mut self) -> u64 {
        self.next_u64()
    }
}
