//! Counter-based pseudo-random numbers.
//!
//! Every draw is a pure function of `(seed, site, fiber)`, so a field can be
//! generated in any order, in parallel, or over a shifted window and still
//! agree bit for bit.

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// 64 random bits keyed by `(seed, site, fiber)`.
pub fn draw_u64(seed: u64, site: i64, fiber: u64) -> u64 {
    let a = mix(seed.wrapping_add(GOLDEN));
    let b = mix(a ^ (site as u64).wrapping_mul(GOLDEN));
    mix(b ^ fiber.wrapping_add(1).wrapping_mul(0xd6e8_feb8_6659_fd93))
}

/// Uniform on `[0, 1)` with 53 random mantissa bits.
pub fn draw_unit(seed: u64, site: i64, fiber: u64) -> f64 {
    (draw_u64(seed, site, fiber) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// A sequential stream over the counter space, for Monte-Carlo sampling.
#[derive(Clone, Debug)]
pub struct CounterStream {
    seed: u64,
    stream: u64,
    counter: i64,
}

impl CounterStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self {
            seed,
            stream,
            counter: 0,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let v = draw_u64(self.seed, self.counter, self.stream);
        self.counter += 1;
        v
    }

    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `[0, n)`; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }
}
