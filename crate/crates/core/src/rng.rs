use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random stream used by every randomized routine in the crate.
pub type SolverRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SolverRng {
    ChaCha8Rng::seed_from_u64(seed)
}

const TRIAL_MIX: u64 = 0x9E37_79B9_7F4A_7C15;

/// Seed for trial `index` of a campaign: the base seed XORed with an odd
/// multiplicative mix of the index.
pub fn trial_seed(base: u64, index: u64) -> u64 {
    base ^ index.wrapping_add(1).wrapping_mul(TRIAL_MIX)
}
