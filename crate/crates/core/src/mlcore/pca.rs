use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::Dataset;

/// Principal axes of a dataset, from the eigendecomposition of its
/// covariance matrix (normalised by n).
#[derive(Clone, Debug)]
pub struct PcaModel {
    pub mean: DVector<f64>,
    /// d×r, orthonormal columns, strongest axis first.
    pub components: DMatrix<f64>,
    /// All d eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    /// Explained-variance ratio of each kept component.
    pub explained_ratio: Vec<f64>,
}

impl PcaModel {
    pub fn n_components(&self) -> usize {
        self.components.ncols()
    }

    pub fn transform(&self, point: &[f64]) -> Vec<f64> {
        let x = DVector::from_column_slice(point) - &self.mean;
        (self.components.transpose() * x).iter().copied().collect()
    }

    pub fn inverse_transform(&self, projected: &[f64]) -> Vec<f64> {
        let z = DVector::from_column_slice(projected);
        (&self.components * z + &self.mean).iter().copied().collect()
    }
}

/// Project onto the fewest components whose cumulative explained variance
/// reaches `variance_target`.
pub fn pca_fit_transform(data: &Dataset, variance_target: f64) -> (Dataset, PcaModel) {
    let (n, d) = (data.n(), data.d());
    let x = DMatrix::from_row_iterator(n, d, data.points().flatten().copied());
    let mean = DVector::from_iterator(d, (0..d).map(|j| x.column(j).mean()));
    let mut centered = x;
    for mut row in centered.row_iter_mut() {
        row -= mean.transpose();
    }
    let cov = centered.transpose() * &centered / n as f64;
    let eig = SymmetricEigen::new(cov);

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i].max(0.0)).collect();
    let total: f64 = eigenvalues.iter().sum();

    let r = if total <= 0.0 {
        1
    } else {
        let mut acc = 0.0;
        let mut r = d;
        for (i, ev) in eigenvalues.iter().enumerate() {
            acc += ev / total;
            if acc >= variance_target - 1e-12 {
                r = i + 1;
                break;
            }
        }
        r
    };
    let components = DMatrix::from_fn(d, r, |row, col| eig.eigenvectors[(row, order[col])]);
    let explained_ratio = eigenvalues[..r]
        .iter()
        .map(|ev| if total > 0.0 { ev / total } else { 0.0 })
        .collect();

    let projected = &centered * &components;
    let values: Vec<f64> = projected.row_iter().flat_map(|r| r.iter().copied().collect::<Vec<_>>()).collect();
    let model = PcaModel {
        mean,
        components,
        eigenvalues,
        explained_ratio,
    };
    (Dataset::from_flat(n, r, values, data.labels.clone()), model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_in_three_dimensions_needs_one_component() {
        let rows = (0..10)
            .map(|i| {
                let t = i as f64 - 4.5;
                vec![t, 2.0 * t, -t]
            })
            .collect();
        let d = Dataset::unlabelled(rows).unwrap();
        let (p, m) = pca_fit_transform(&d, 0.9);
        assert_eq!(p.d(), 1);
        assert!((m.explained_ratio[0] - 1.0).abs() < 1e-12);
        for (i, orig) in d.points().enumerate() {
            let back = m.inverse_transform(p.point(i));
            for (a, b) in back.iter().zip(orig) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn full_rank_square_keeps_both() {
        let d = Dataset::unlabelled(vec![
            vec![1.0, 1.0],
            vec![1.0, -1.0],
            vec![-1.0, 1.0],
            vec![-1.0, -1.0],
        ])
        .unwrap();
        let (p, m) = pca_fit_transform(&d, 1.0);
        assert_eq!(p.d(), 2);
        assert!((m.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((m.eigenvalues[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_data_keeps_one_zero_component() {
        let d = Dataset::unlabelled(vec![vec![0.0, 0.0]; 3]).unwrap();
        let (p, _) = pca_fit_transform(&d, 0.95);
        assert_eq!(p.d(), 1);
        assert!(p.points().all(|x| x[0] == 0.0));
    }
}
