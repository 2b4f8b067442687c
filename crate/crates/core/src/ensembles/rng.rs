//! Counter-based random integers.
//!
//! Every draw is a pure function of `(seed, index, position, attempt)`, so a
//! sample can be regenerated from its index alone and the order in which
//! workers visit indices has no effect on the output.

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Keyed stream of 64-bit words for one coefficient slot.
#[derive(Clone, Copy, Debug)]
pub struct CounterRng {
    key: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(seed: u64, index: u64, position: u64) -> Self {
        let mut key = mix64(seed.wrapping_add(GOLDEN));
        key = mix64(key ^ index.wrapping_mul(GOLDEN).wrapping_add(0x2545_f491_4f6c_dd1d));
        key = mix64(key ^ position.wrapping_mul(0xd1b5_4a32_d192_ed03).wrapping_add(GOLDEN));
        Self { key, counter: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(self.key.wrapping_add(self.counter.wrapping_mul(GOLDEN)))
    }

    /// Uniform integer in `0..span` (`span == 0` means the full 2^64 range),
    /// by rejection so that no residue is favoured.
    pub fn below(&mut self, span: u64) -> u64 {
        if span == 0 {
            return self.next_u64();
        }
        let zone = u64::MAX - (u64::MAX - span + 1) % span;
        loop {
            let v = self.next_u64();
            if v <= zone {
                return v % span;
            }
        }
    }

    /// Uniform integer in the inclusive range `lo..=hi` (`lo <= hi`).
    pub fn in_range(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi as i128 - lo as i128 + 1) as u128;
        let span = if span == 1u128 << 64 { 0 } else { span as u64 };
        (lo as i128 + self.below(span) as i128) as i64
    }
}
