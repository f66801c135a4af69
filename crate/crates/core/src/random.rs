//! Seeded random families for property campaigns.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ck::{CkFamily, GridDomain};
use crate::error::Result;
use crate::family::{Domain, Function, FunctionFamily};
use crate::normed::{NormTag, SpaceTag, Vector};

/// Upper limits for generated families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyLimits {
    pub max_domain: usize,
    pub max_functions: usize,
    pub max_dim: usize,
}

impl Default for FamilyLimits {
    fn default() -> Self {
        FamilyLimits {
            max_domain: 8,
            max_functions: 6,
            max_dim: 4,
        }
    }
}

/// Per-instance generator, independent of how many instances precede it.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Half the coordinates are snapped to multiples of 1/4 so that ties occur.
fn coord(rng: &mut ChaCha8Rng) -> f64 {
    let x: f64 = rng.gen_range(-1.0..=1.0);
    if rng.gen_bool(0.5) {
        (x * 4.0).round() / 4.0
    } else {
        x
    }
}

pub fn random_family(rng: &mut ChaCha8Rng, norm: NormTag, limits: FamilyLimits) -> Result<FunctionFamily> {
    let n = rng.gen_range(1..=limits.max_domain);
    let count = rng.gen_range(1..=limits.max_functions);
    let dim = rng.gen_range(1..=limits.max_dim);
    let space = SpaceTag::new(dim, norm)?;
    let functions = (0..count)
        .map(|i| {
            let values = (0..n)
                .map(|_| Vector::new((0..dim).map(|_| coord(rng)).collect()).expect("finite"))
                .collect();
            Function::new(format!("f{i}"), values)
        })
        .collect();
    FunctionFamily::new(Domain::indexed(n)?, space, functions)
}

/// `count` families, cycling through the norm tags.
pub fn campaign(seed: u64, count: usize, limits: FamilyLimits) -> Result<Vec<FunctionFamily>> {
    (0..count)
        .map(|i| {
            let mut rng = instance_rng(seed, i as u64);
            random_family(&mut rng, NormTag::ALL[i % NormTag::ALL.len()], limits)
        })
        .collect()
}

/// Random smooth family (cubic polynomials plus a sine term) sampled on a
/// uniform grid and differentiated up to order `k`.
pub fn random_ck_family(rng: &mut ChaCha8Rng, k: usize, grid_points: usize, max_functions: usize) -> Result<CkFamily> {
    let grid = GridDomain::interval(0.0, 1.0, grid_points)?;
    let dim = rng.gen_range(1..=2);
    let norm = NormTag::ALL[rng.gen_range(0..NormTag::ALL.len())];
    let space = SpaceTag::new(dim, norm)?;
    let count = rng.gen_range(1..=max_functions);
    let mut functions = Vec::with_capacity(count);
    for i in 0..count {
        let coefs: Vec<[f64; 5]> = (0..dim)
            .map(|_| std::array::from_fn(|_| rng.gen_range(-1.0..=1.0)))
            .collect();
        functions.push(grid.sample(&format!("f{i}"), |t| {
            coefs
                .iter()
                .map(|c| c[0] + c[1] * t + c[2] * t * t + c[3] * t * t * t + c[4] * (3.0 * t).sin())
                .collect()
        })?);
    }
    let base = FunctionFamily::new(grid.to_domain(), space, functions)?;
    CkFamily::differentiate(base, grid, k)
}
