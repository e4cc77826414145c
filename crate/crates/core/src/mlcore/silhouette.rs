use super::{distance, Dataset, Partition};
use crate::error::MlError;

#[derive(Clone, Debug, PartialEq)]
pub struct SilhouetteResult {
    pub scores: Vec<f64>,
    /// Mean score of each cluster; `None` for empty clusters.
    pub cluster_means: Vec<Option<f64>>,
}

impl SilhouetteResult {
    pub fn mean(&self) -> f64 {
        self.scores.iter().sum::<f64>() / self.scores.len() as f64
    }
}

/// Silhouette `(b - a) / max(a, b)` of every point with Euclidean distance.
/// Points in singleton clusters score 0; empty clusters are ignored.
pub fn silhouette(data: &Dataset, partition: &Partition) -> Result<SilhouetteResult, MlError> {
    let n = data.n();
    if partition.assignment.len() != n || partition.assignment.iter().any(|&c| c >= partition.k) {
        return Err(MlError::BadData);
    }
    let sizes = partition.sizes();
    if sizes.iter().filter(|&&s| s > 0).count() < 2 {
        return Err(MlError::SingleCluster);
    }
    let k = partition.k;
    let mut scores = Vec::with_capacity(n);
    let mut sums = vec![0.0; k];
    for i in 0..n {
        let own = partition.assignment[i];
        let mut total = vec![0.0; k];
        for j in 0..n {
            if j != i {
                total[partition.assignment[j]] += distance(data.point(i), data.point(j));
            }
        }
        let s = if sizes[own] == 1 {
            0.0
        } else {
            let a = total[own] / (sizes[own] - 1) as f64;
            let b = (0..k)
                .filter(|&c| c != own && sizes[c] > 0)
                .map(|c| total[c] / sizes[c] as f64)
                .fold(f64::INFINITY, f64::min);
            let m = a.max(b);
            if m > 0.0 {
                (b - a) / m
            } else {
                0.0
            }
        };
        sums[own] += s;
        scores.push(s);
    }
    let cluster_means = sums
        .into_iter()
        .zip(&sizes)
        .map(|(s, &size)| (size > 0).then(|| s / size as f64))
        .collect();
    Ok(SilhouetteResult {
        scores,
        cluster_means,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(a: &[usize], k: usize) -> Partition {
        Partition {
            assignment: a.to_vec(),
            k,
        }
    }

    #[test]
    fn distant_pairs_score_high() {
        let d = Dataset::unlabelled(vec![vec![0.0], vec![0.1], vec![100.0], vec![100.1]]).unwrap();
        let r = silhouette(&d, &part(&[0, 0, 1, 1], 2)).unwrap();
        assert!(r.scores.iter().all(|&s| s > 0.9));
        assert!(r.cluster_means.iter().all(|m| m.unwrap() > 0.9));
    }

    #[test]
    fn midpoint_scores_zero() {
        // point 2 sits halfway: a = 5 to its partner at 5, b = 5 to the other pair
        let d = Dataset::unlabelled(vec![vec![-5.0], vec![-5.0], vec![0.0], vec![5.0], vec![5.0]])
            .unwrap();
        let r = silhouette(&d, &part(&[0, 0, 1, 1, 1], 2)).unwrap();
        let a: f64 = (5.0 + 5.0) / 2.0;
        let b: f64 = 5.0;
        assert!((r.scores[2] - (b - a) / a.max(b)).abs() < 1e-12);
        assert!(r.scores[2].abs() < 1e-12);
    }

    #[test]
    fn singletons_and_empty_clusters() {
        let d = Dataset::unlabelled(vec![vec![0.0], vec![1.0], vec![5.0]]).unwrap();
        let r = silhouette(&d, &part(&[0, 0, 2], 3)).unwrap();
        assert_eq!(r.scores[2], 0.0);
        assert_eq!(r.cluster_means[1], None);
        assert_eq!(
            silhouette(&d, &part(&[1, 1, 1], 3)),
            Err(MlError::SingleCluster)
        );
    }
}
