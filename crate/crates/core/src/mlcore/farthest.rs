use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_k, nearest, squared_distance, Dataset, Partition};
use crate::error::MlError;

#[derive(Clone, Debug, PartialEq)]
pub struct FarthestFirstResult {
    pub partition: Partition,
    /// Point indices of the centers in the order they were chosen.
    pub centers: Vec<usize>,
}

/// Farthest-first traversal with a seeded random first center.
pub fn farthest_first(data: &Dataset, k: usize, seed: u64) -> Result<FarthestFirstResult, MlError> {
    check_k(k, data.n())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first = rng.random_range(0..data.n());
    farthest_first_from(data, k, first)
}

/// Farthest-first traversal from a given first center. Each next center is
/// the point with the largest distance to its nearest chosen center (lowest
/// index on ties); points go to their nearest center.
pub fn farthest_first_from(
    data: &Dataset,
    k: usize,
    first: usize,
) -> Result<FarthestFirstResult, MlError> {
    let n = data.n();
    check_k(k, n)?;
    let mut centers = vec![first];
    let mut is_center = vec![false; n];
    is_center[first] = true;
    let mut min_d: Vec<f64> = data
        .points()
        .map(|p| squared_distance(p, data.point(first)))
        .collect();
    while centers.len() < k {
        let mut best: Option<usize> = None;
        for i in 0..n {
            if !is_center[i] && best.is_none_or(|b| min_d[i] > min_d[b]) {
                best = Some(i);
            }
        }
        let c = best.expect("k <= n leaves a non-center point");
        centers.push(c);
        is_center[c] = true;
        for (i, p) in data.points().enumerate() {
            min_d[i] = min_d[i].min(squared_distance(p, data.point(c)));
        }
    }
    let assignment = (0..n)
        .map(|i| match centers.iter().position(|&c| c == i) {
            Some(own) => own,
            None => nearest(data.point(i), centers.iter().map(|&c| data.point(c))).0,
        })
        .collect();
    Ok(FarthestFirstResult {
        partition: Partition { assignment, k },
        centers,
    })
}
