//! Seeded Gaussian sampling with a pinned, platform-independent generator.
//!
//! The uniform source is SplitMix64 (Steele, Lea & Flood 2014): a 64-bit
//! counter advanced by the golden-ratio increment and passed through a fixed
//! avalanche mix. Uniforms take the top 53 bits. Normal deviates come from
//! the Box–Muller transform, consuming two uniforms per pair of outputs:
//!
//! ```text
//! u1 = (top53(x) + 1) * 2^-53        in (0, 1]
//! u2 =  top53(y)      * 2^-53        in [0, 1)
//! r  = sqrt(-2 ln u1)
//! z0 = r cos(2 pi u2),  z1 = r sin(2 pi u2)
//! ```
//!
//! `z0` is returned first and `z1` is cached for the next call. All
//! transcendental functions come from `libm`, so the stream is bitwise
//! identical on every target.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const INV_2_53: f64 = 1.0 / (1u64 << 53) as f64;

/// Single-owner Gaussian stream. Not `Sync` by intent of use; clone to fork.
#[derive(Debug, Clone)]
pub struct SeededRng {
    seed: u64,
    state: u64,
    spare: Option<f64>,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng {
            seed,
            state: seed,
            spare: None,
        }
    }

    /// The seed this stream was created from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * INV_2_53
    }

    /// Standard normal deviate.
    pub fn next_gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * INV_2_53;
        let u2 = self.next_uniform();
        let r = libm::sqrt(-2.0 * libm::log(u1));
        let theta = 2.0 * core::f64::consts::PI * u2;
        self.spare = Some(r * libm::sin(theta));
        r * libm::cos(theta)
    }
}
