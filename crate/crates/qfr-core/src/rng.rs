//! Seed derivation helpers. All randomness in this crate flows through a
//! permuted-congruential generator so that identical seeds reproduce
//! identical streams bit for bit.

use rand::SeedableRng;
use rand_pcg::Pcg64;

/// SplitMix64 finalizer; used to derive independent substreams from a base
/// seed so that work can be partitioned without changing results.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Substream seed for (`seed`, `stream`); distinct streams are independent.
pub fn derive_stream(seed: u64, stream: u64) -> u64 {
    splitmix64(seed ^ splitmix64(stream.wrapping_add(0xa076_1d64_78bd_642f)))
}

pub fn pcg(seed: u64) -> Pcg64 {
    Pcg64::seed_from_u64(seed)
}
