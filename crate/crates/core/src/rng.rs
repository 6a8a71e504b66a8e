//! Seeded random streams.
//!
//! Every randomized routine takes a base seed and derives one ChaCha stream per
//! draw, so draw `i` produces the same colouring whether draws run serially or
//! in parallel.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Environment variable consulted by the CLI for the default seed.
pub const SEED_ENV: &str = "STABLECUT_SEED";

pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
