//! Seeded fixtures for the solver benchmarks.

use mnc_core::random::instance_rng;
use mnc_core::{NormTag, PointSet, SpaceTag, Vector};
use rand::Rng;

/// `n` points with coordinates uniform in `[-1, 1]`.
pub fn random_points(seed: u64, n: usize, dim: usize, norm: NormTag) -> PointSet {
    let mut rng = instance_rng(seed, n as u64);
    let points = (0..n)
        .map(|_| Vector::new((0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect()).expect("finite"))
        .collect();
    PointSet::new(SpaceTag::new(dim, norm).expect("dim"), points).expect("point set")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_seeded() {
        let a = random_points(3, 10, 2, NormTag::L2);
        let b = random_points(3, 10, 2, NormTag::L2);
        assert_eq!(a.points(), b.points());
        assert_eq!(a.points().len(), 10);
    }
}
