//! Deterministic derivation of per-frame RNG streams.
//!
//! Every frame's generator is seeded from the master seed and the frame's
//! grid position, so a sweep produces identical results for any worker
//! count, chunking, or cell execution order.

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z ^= z >> 30;
    z = z.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z ^= z >> 27;
    z = z.wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    z
}

/// Seed of the RNG stream for one frame: the master seed mixed with the
/// SNR index, strategy index and frame index, each offset by a distinct
/// odd constant and folded in through [`mix64`].
pub fn frame_seed(seed: u64, snr_index: u64, strategy_index: u64, frame_index: u64) -> u64 {
    let mut z = seed;
    z = mix64(z ^ snr_index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = mix64(z ^ strategy_index.wrapping_add(1).wrapping_mul(0xC2B2_AE3D_27D4_EB4F));
    z = mix64(z ^ frame_index.wrapping_add(1).wrapping_mul(0x1656_67B1_9E37_79F9));
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn streams_are_distinct_across_the_grid() {
        let mut seen = HashSet::new();
        for snr in 0..8u64 {
            for strat in 0..4u64 {
                for frame in 0..64u64 {
                    assert!(seen.insert(frame_seed(42, snr, strat, frame)));
                }
            }
        }
    }

    #[test]
    fn derivation_is_positional() {
        assert_eq!(frame_seed(7, 1, 2, 3), frame_seed(7, 1, 2, 3));
        assert_ne!(frame_seed(7, 1, 2, 3), frame_seed(8, 1, 2, 3));
        assert_ne!(frame_seed(7, 2, 1, 3), frame_seed(7, 1, 2, 3));
    }
}
