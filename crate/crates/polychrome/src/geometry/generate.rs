//! Seeded instance generators. ChaCha8 keyed by the 64-bit seed makes every
//! generated instance reproducible across platforms and runs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::PointSet;
use crate::error::{Error, Result};

const MAX_REDRAWS: usize = 64;

/// `n` points uniform in `[0,1)^dim`, redrawn wholesale in the (measure-zero)
/// event of a general-position collision at 64-bit granularity.
pub fn random_point_set(dim: usize, n: usize, seed: u64) -> Result<PointSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_REDRAWS {
        let points: Vec<Vec<f64>> =
            (0..n).map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect()).collect();
        if let Ok(ps) = PointSet::new(dim, points) {
            return Ok(ps);
        }
    }
    Err(Error::InvalidParameter(format!(
        "could not draw {n} points in general position after {MAX_REDRAWS} attempts"
    )))
}

/// Planar points with x uniform in `[0,1)` and y uniform in `[0, slabs)`, so
/// unit-height instances span roughly `slabs` integer slabs. Redraws until
/// the unit-height degeneracy preconditions hold as well.
pub fn random_unit_height_point_set(n: usize, slabs: usize, seed: u64) -> Result<PointSet> {
    if slabs == 0 {
        return Err(Error::InvalidParameter("slab count must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_REDRAWS {
        let points: Vec<Vec<f64>> = (0..n)
            .map(|_| vec![rng.gen::<f64>(), rng.gen::<f64>() * slabs as f64])
            .collect();
        if let Ok(ps) = PointSet::new(2, points) {
            if ps.check_unit_height_preconditions().is_ok() {
                return Ok(ps);
            }
        }
    }
    Err(Error::InvalidParameter(format!(
        "could not draw a non-degenerate unit-height instance after {MAX_REDRAWS} attempts"
    )))
}
