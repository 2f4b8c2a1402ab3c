//! Seeded random number generation.
//!
//! Every random quantity in the crate is drawn from ChaCha20
//! (`rand_chacha::ChaCha20Rng`) keyed with `seed_from_u64(seed)`. Independent
//! sub-streams are obtained with [`split`], which selects a ChaCha stream id
//! on the same key, so results are reproducible bit-for-bit per seed and
//! independent of evaluation order when work is fanned out.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub type QRng = ChaCha20Rng;

pub fn rng(seed: u64) -> QRng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Stream `stream` of the generator keyed by `seed`.
pub fn split(seed: u64, stream: u64) -> QRng {
    let mut r = ChaCha20Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}
