//! Named random streams split off a single seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default seed used when the caller does not pick one.
pub const DEFAULT_SEED: u64 = 0x1d1a_b5ee_d000_0001;

/// 64-bit FNV-1a hash of a stream name.
pub fn fnv1a(name: &str) -> u64 {
    name.bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

/// Substream `index` of the stream called `name`. Different names or indices
/// give independent ChaCha streams of the same key.
pub fn stream(seed: u64, name: &str, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fnv1a(name) ^ index);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u32> = (0..4).map(|_| 0).scan(stream(7, "restart", 0), |r, _: u32| Some(r.gen())).collect();
        let b: Vec<u32> = (0..4).map(|_| 0).scan(stream(7, "restart", 0), |r, _: u32| Some(r.gen())).collect();
        let c: Vec<u32> = (0..4).map(|_| 0).scan(stream(7, "restart", 1), |r, _: u32| Some(r.gen())).collect();
        let d: Vec<u32> = (0..4).map(|_| 0).scan(stream(7, "base", 0), |r, _: u32| Some(r.gen())).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn fnv_reference_values() {
        assert_eq!(fnv1a(""), 0xcbf2_9ce4_8422_2325);
        assert_eq!(fnv1a("a"), 0xaf63_dc4c_8601_ec8c);
    }
}
