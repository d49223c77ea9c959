//! Counter-based randomness.
//!
//! Every random decision in the crate is a pure function of a seed, a stream
//! tag and up to two integer keys. Replaying the same inputs in any order
//! therefore yields the same decisions, and independent workers never need to
//! share generator state.

/// Stream tag for edge sampling in the sparsifiers.
pub const STREAM_SAMPLE: u64 = 0x5350_4152_5349_4659;
/// Stream tag for undirected block-model pairs.
pub const STREAM_SBM: u64 = 0x5342_4d5f_554e_4449;
/// Stream tag for directed block-model arcs.
pub const STREAM_DSBM: u64 = 0x5342_4d5f_4449_5245;
/// Stream tag for power-iteration start vectors.
pub const STREAM_START: u64 = 0x5354_4152_545f_5645;
/// Stream tag for deriving child seeds.
pub const STREAM_DERIVE: u64 = 0x4445_5249_5645_5345;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// 64 well-mixed bits keyed by `(seed, stream, a, b)`.
#[inline]
pub fn keyed_bits(seed: u64, stream: u64, a: u64, b: u64) -> u64 {
    let mut h = mix64(seed ^ mix64(stream));
    h = mix64(h.wrapping_add(GOLDEN) ^ a);
    mix64(h.wrapping_add(GOLDEN) ^ b)
}

/// Uniform draw in `[0, 1)` with 53 bits of resolution.
#[inline]
pub fn keyed_uniform(seed: u64, stream: u64, a: u64, b: u64) -> f64 {
    (keyed_bits(seed, stream, a, b) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Child seed number `index` of `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    keyed_bits(seed, STREAM_DERIVE, index, 0)
}
