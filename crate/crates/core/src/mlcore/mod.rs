//! Numerical algorithms used by the clustering pipeline. All of them are
//! deterministic functions of their input and seed.

mod farthest;
mod gmm;
mod kmeans;
mod pca;
mod silhouette;
mod standardize;

pub use farthest::{farthest_first, farthest_first_from, FarthestFirstResult};
pub use gmm::{gmm_em, GmmResult};
pub use kmeans::{kmeans, KMeansResult};
pub use pca::{pca_fit_transform, PcaModel};
pub use silhouette::{silhouette, SilhouetteResult};
pub use standardize::{standardize, Standardization};

use crate::error::MlError;

pub const MAX_ITERATIONS: usize = 300;

/// `n` points of dimension `d`, stored row-major, each with a label.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    n: usize,
    d: usize,
    values: Vec<f64>,
    pub labels: Vec<String>,
}

impl Dataset {
    pub fn from_rows(rows: Vec<Vec<f64>>, labels: Vec<String>) -> Result<Self, MlError> {
        let n = rows.len();
        let d = rows.first().map_or(0, Vec::len);
        if n == 0 || d == 0 || labels.len() != n || rows.iter().any(|r| r.len() != d) {
            return Err(MlError::BadData);
        }
        let values: Vec<f64> = rows.into_iter().flatten().collect();
        if values.iter().any(|v| !v.is_finite()) {
            return Err(MlError::BadData);
        }
        Ok(Dataset {
            n,
            d,
            values,
            labels,
        })
    }

    /// Unlabelled points; labels become the row indices.
    pub fn unlabelled(rows: Vec<Vec<f64>>) -> Result<Self, MlError> {
        let labels = (0..rows.len()).map(|i| i.to_string()).collect();
        Self::from_rows(rows, labels)
    }

    pub(crate) fn from_flat(n: usize, d: usize, values: Vec<f64>, labels: Vec<String>) -> Self {
        debug_assert_eq!(values.len(), n * d);
        Dataset {
            n,
            d,
            values,
            labels,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.values[i * self.d..(i + 1) * self.d]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.d)
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.points().map(move |p| p[j])
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.points().map(<[f64]>::to_vec).collect()
    }
}

/// Cluster index for every point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub assignment: Vec<usize>,
    pub k: usize,
}

impl Partition {
    /// Point indices of every cluster, in cluster order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (i, &c) in self.assignment.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.k];
        for &c in &self.assignment {
            out[c] += 1;
        }
        out
    }
}

pub fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    squared_distance(a, b).sqrt()
}

fn check_k(k: usize, n: usize) -> Result<(), MlError> {
    if k == 0 {
        Err(MlError::ZeroClusters)
    } else if k > n {
        Err(MlError::KTooLarge { k, n })
    } else {
        Ok(())
    }
}

/// Index of the nearest center, lowest index on ties.
fn nearest<'a>(p: &[f64], centers: impl IntoIterator<Item = &'a [f64]>) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (j, c) in centers.into_iter().enumerate() {
        let d = squared_distance(p, c);
        if d < best.1 {
            best = (j, d);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_ragged_and_non_finite() {
        assert_eq!(
            Dataset::unlabelled(vec![vec![1.0], vec![1.0, 2.0]]),
            Err(MlError::BadData)
        );
        assert_eq!(Dataset::unlabelled(vec![vec![f64::NAN]]), Err(MlError::BadData));
        assert_eq!(Dataset::unlabelled(vec![]), Err(MlError::BadData));
        assert_eq!(Dataset::unlabelled(vec![vec![]]), Err(MlError::BadData));
    }

    #[test]
    fn row_access() {
        let d = Dataset::unlabelled(vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(d.point(1), &[3.0, 4.0]);
        assert_eq!(d.column(0).collect::<Vec<_>>(), vec![1.0, 3.0]);
        assert_eq!(d.labels, vec!["0", "1"]);
    }

    #[test]
    fn partition_members() {
        let p = Partition {
            assignment: vec![1, 0, 1],
            k: 3,
        };
        assert_eq!(p.members(), vec![vec![1], vec![0, 2], vec![]]);
        assert_eq!(p.sizes(), vec![1, 2, 0]);
    }
}
