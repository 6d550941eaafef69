use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::CampaignError;

/// Train count for `n` items: `round(ratio * n)` with halves rounded up,
/// clamped so both sides are nonempty.
pub fn train_count(n: usize, ratio: f64) -> usize {
    ((ratio * n as f64 + 0.5).floor() as usize).clamp(1, n.saturating_sub(1).max(1))
}

/// Seeded shuffle, then the first `train_count` items go to train. Both halves
/// keep the shuffled order.
pub fn split_dataset<T: Clone>(
    items: &[T],
    ratio: f64,
    seed: u64,
) -> Result<(Vec<T>, Vec<T>), CampaignError> {
    if items.len() < 2 {
        return Err(CampaignError::TooFewToSplit(items.len()));
    }
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(CampaignError::Invalid {
            field: "split_ratio".into(),
            reason: "must lie strictly between 0 and 1".into(),
        });
    }
    let mut shuffled = items.to_vec();
    shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let val = shuffled.split_off(train_count(items.len(), ratio));
    Ok((shuffled, val))
}

/// Stable 64-bit FNV-1a, used to derive per-dataset split seeds from names.
pub fn name_hash(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(train_count(10, 0.8), 8);
        assert_eq!(train_count(626, 0.8), 501);
        assert_eq!(train_count(2, 0.99), 1);
        assert_eq!(train_count(2, 0.01), 1);
    }

    #[test]
    fn too_small() {
        assert!(split_dataset(&[1], 0.8, 0).is_err());
    }
}
