use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::heterodyne::HeterodyneParams;

/// `count` parameter points drawn from `seed`.
///
/// Even positions have `A = B`; odd positions have `B/A ∈ [0.2, 0.9]`.
/// Weights lie in `[0.5, 2]`, angles in `[−π, π)`.
pub fn sweep_points(seed: u64, count: usize) -> Vec<HeterodyneParams> {
    use std::f64::consts::PI;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let a = rng.random_range(0.5..2.0);
            let ratio = rng.random_range(0.2..0.9);
            let alpha = rng.random_range(-PI..PI);
            let beta = rng.random_range(-PI..PI);
            let b = if i % 2 == 0 { a } else { a * ratio };
            HeterodyneParams::new(a, b, alpha, beta).expect("sampled weights are positive")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternates_regimes_and_repeats() {
        let pts = sweep_points(0, 20);
        assert_eq!(pts.len(), 20);
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(p.is_shapiro_wagner(), i % 2 == 0);
        }
        assert_eq!(pts, sweep_points(0, 20));
        assert_ne!(pts, sweep_points(1, 20));
    }
}
