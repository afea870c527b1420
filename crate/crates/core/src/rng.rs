//! Seeded pseudo-randomness for the Las Vegas solvers.
//!
//! Every randomized operation takes an explicit seed and draws from a
//! splitmix64 stream, so any run can be replayed bit for bit. Independent
//! trials use streams derived with [`Rng64::derive`]; first success in trial
//! order wins.

/// splitmix64 generator. Small state, full 64-bit period, and trivially
/// reproducible across platforms.
#[derive(Debug, Clone)]
pub struct Rng64 {
    state: u64,
}

impl Rng64 {
    pub fn new(seed: u64) -> Self {
        Rng64 { state: seed }
    }

    /// Derive an independent stream for sub-task `stream`: the child seed is
    /// the parent seed advanced by a fixed tag mix. Used to keep concurrent
    /// trials deterministic regardless of scheduling.
    pub fn derive(seed: u64, stream: u64) -> Self {
        let mut r = Rng64::new(seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        r.next_u64();
        r
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `[0, bound)` by rejection sampling.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// Uniform value in `[0, bound)` for bounds up to 2^127.
    pub fn below_u128(&mut self, bound: u128) -> u128 {
        assert!(bound > 0);
        if bound <= u64::MAX as u128 {
            return self.below(bound as u64) as u128;
        }
        let zone = u128::MAX - (u128::MAX % bound);
        loop {
            let v = ((self.next_u64() as u128) << 64) | self.next_u64() as u128;
            if v < zone {
                return v % bound;
            }
        }
    }
}
