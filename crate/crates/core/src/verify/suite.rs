//! The Monte Carlo suites run by `heinz verify schwarz` and `heinz verify ratio`.

use serde::Serialize;

use super::maps::{derive_seed, random_map_family};
use super::{schwarz_grid, verify_generalized_schwarz, verify_ratio_bound};
use crate::ballharmonic::{uniform_on_sphere, SignMap};
use crate::error::Result;
use crate::report::{ReportPoint, VerificationReport};
use crate::Real;

/// Directions per radius in the Schwarz grid: the axis plus random ones.
pub const SCHWARZ_DIRECTIONS: usize = 3;

// Substream tags for seeds derived from the user seed.
const STREAM_GRID: u64 = 1 << 40;
const STREAM_DIRECTION: u64 = 2 << 40;
const STREAM_SAMPLES: u64 = 3 << 40;
const STREAM_ODD_MAPS: u64 = 4 << 40;
const STREAM_EXTREMAL: u64 = 5 << 40;

/// A report with the name of the check, the dimension and, for random map
/// families, the index of the map.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedReport<T> {
    pub name: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<usize>,
    #[serde(flatten)]
    pub report: VerificationReport<T>,
}

impl<T> NamedReport<T> {
    pub fn new(name: &str, n: usize, map: Option<usize>, report: VerificationReport<T>) -> Self {
        Self {
            name: name.to_string(),
            n,
            map,
            report,
        }
    }
}

/// `"schwarz"` for each of `maps` random into-ball maps on the grid
/// `radii × (N + 2 random directions)`, then the sign map on the axis as
/// `"schwarz-extremal"` (inequality) and `"schwarz-saturation"` (equality
/// within twice the budget).
pub fn schwarz_suite<T: Real>(
    n: usize,
    maps: usize,
    samples: usize,
    seed: u64,
    radii: &[T],
) -> Result<Vec<NamedReport<T>>> {
    let grid = schwarz_grid(n, radii, SCHWARZ_DIRECTIONS, derive_seed(seed, STREAM_GRID))?;
    let mut out = Vec::with_capacity(maps + 2);
    for (i, map) in random_map_family::<T>(n, maps, seed, false).iter().enumerate() {
        let s = derive_seed(seed, STREAM_SAMPLES + i as u64);
        out.push(NamedReport::new(
            "schwarz",
            n,
            Some(i),
            verify_generalized_schwarz(map, n, &grid, samples, s)?,
        ));
    }
    let axis = schwarz_grid(n, radii, 1, 0)?;
    let rep = verify_generalized_schwarz(&SignMap { n }, n, &axis, samples, derive_seed(seed, STREAM_EXTREMAL))?;
    let two = T::one() + T::one();
    let saturation = rep
        .points
        .iter()
        .map(|p| ReportPoint::identity(p.x.clone(), p.lhs, p.rhs, two * p.budget))
        .collect();
    out.push(NamedReport::new("schwarz-extremal", n, None, rep));
    out.push(NamedReport::new(
        "schwarz-saturation",
        n,
        None,
        VerificationReport::from_points(saturation),
    ));
    Ok(out)
}

/// `"ratio"` for each of `maps` antisymmetrized random maps along `N` and one
/// random direction, then the sign map along `N` as `"ratio-extremal"`.
pub fn ratio_suite<T: Real>(
    n: usize,
    maps: usize,
    samples: usize,
    seed: u64,
    radii: &[T],
) -> Result<Vec<NamedReport<T>>> {
    let mut axis = vec![T::zero(); n];
    axis[n - 1] = T::one();
    let random = uniform_on_sphere::<T>(n, 1, derive_seed(seed, STREAM_DIRECTION)).remove(0);
    let family = random_map_family::<T>(n, maps, derive_seed(seed, STREAM_ODD_MAPS), true);
    let mut out = Vec::with_capacity(maps + 1);
    for (i, map) in family.iter().enumerate() {
        let s = derive_seed(seed, STREAM_SAMPLES + i as u64);
        let reps = [&axis, &random]
            .into_iter()
            .map(|d| verify_ratio_bound(map, n, radii, d, samples, s))
            .collect::<Result<Vec<_>>>()?;
        out.push(NamedReport::new("ratio", n, Some(i), VerificationReport::merge(reps)));
    }
    let rep = verify_ratio_bound(&SignMap { n }, n, radii, &axis, samples, derive_seed(seed, STREAM_EXTREMAL))?;
    out.push(NamedReport::new("ratio-extremal", n, None, rep));
    Ok(out)
}
