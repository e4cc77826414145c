use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check_k, nearest, squared_distance, Dataset, Partition, MAX_ITERATIONS};
use crate::error::MlError;

#[derive(Clone, Debug, PartialEq)]
pub struct KMeansResult {
    pub partition: Partition,
    pub centroids: Vec<Vec<f64>>,
    /// Within-cluster sum of squared distances.
    pub inertia: f64,
    /// Inertia after every update step.
    pub inertia_history: Vec<f64>,
    pub iterations: usize,
}

fn centroids_of(data: &Dataset, assignment: &[usize], k: usize, old: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let d = data.d();
    let mut sums = vec![vec![0.0; d]; k];
    let mut counts = vec![0usize; k];
    for (p, &c) in data.points().zip(assignment) {
        counts[c] += 1;
        for (s, x) in sums[c].iter_mut().zip(p) {
            *s += x;
        }
    }
    sums.into_iter()
        .zip(counts)
        .enumerate()
        .map(|(c, (s, n))| {
            if n == 0 {
                old[c].clone()
            } else {
                s.into_iter().map(|x| x / n as f64).collect()
            }
        })
        .collect()
}

fn inertia(data: &Dataset, assignment: &[usize], centroids: &[Vec<f64>]) -> f64 {
    data.points()
        .zip(assignment)
        .map(|(p, &c)| squared_distance(p, &centroids[c]))
        .sum()
}

/// Move one point into every empty cluster: the point farthest from its
/// own centroid among clusters that can spare one.
fn fill_empty(data: &Dataset, assignment: &mut [usize], centroids: &mut [Vec<f64>], k: usize) -> bool {
    let mut changed = false;
    loop {
        let mut sizes = vec![0usize; k];
        for &c in assignment.iter() {
            sizes[c] += 1;
        }
        let Some(empty) = sizes.iter().position(|&s| s == 0) else {
            return changed;
        };
        let mut best: Option<(usize, f64)> = None;
        for (i, p) in data.points().enumerate() {
            let c = assignment[i];
            if sizes[c] < 2 {
                continue;
            }
            let dist = squared_distance(p, &centroids[c]);
            if best.is_none_or(|(_, b)| dist > b) {
                best = Some((i, dist));
            }
        }
        // k <= n guarantees some cluster has two members
        let (i, _) = best.expect("a cluster with at least two points");
        assignment[i] = empty;
        centroids[empty] = data.point(i).to_vec();
        changed = true;
    }
}

/// Lloyd's algorithm from k distinct points drawn by the seeded generator.
/// Stops at an assignment fixpoint or after 300 iterations.
pub fn kmeans(data: &Dataset, k: usize, seed: u64) -> Result<KMeansResult, MlError> {
    let n = data.n();
    check_k(k, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centroids: Vec<Vec<f64>> = index::sample(&mut rng, n, k)
        .into_iter()
        .map(|i| data.point(i).to_vec())
        .collect();

    let mut assignment = vec![usize::MAX; n];
    let mut history = Vec::new();
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let mut next: Vec<usize> = data
            .points()
            .map(|p| nearest(p, centroids.iter().map(Vec::as_slice)).0)
            .collect();
        let reseeded = fill_empty(data, &mut next, &mut centroids, k);
        if next == assignment && !reseeded {
            break;
        }
        assignment = next;
        centroids = centroids_of(data, &assignment, k, &centroids);
        history.push(inertia(data, &assignment, &centroids));
    }
    Ok(KMeansResult {
        inertia: inertia(data, &assignment, &centroids),
        partition: Partition { assignment, k },
        centroids,
        inertia_history: history,
        iterations,
    })
}
