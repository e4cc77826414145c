use super::Dataset;
use crate::error::MlError;

/// Per-feature mean and (population) standard deviation.
#[derive(Clone, Debug, PartialEq)]
pub struct Standardization {
    pub means: Vec<f64>,
    pub stddevs: Vec<f64>,
}

const ZERO_VARIANCE: f64 = 1e-12;

/// Z-score every feature. Features with zero variance become all zeros.
pub fn standardize(data: &Dataset) -> Result<(Dataset, Standardization), MlError> {
    let (n, d) = (data.n(), data.d());
    if n < 2 {
        return Err(MlError::TooFewPoints { needed: 2, got: n });
    }
    let mut means = vec![0.0; d];
    let mut stddevs = vec![0.0; d];
    for j in 0..d {
        let m = data.column(j).sum::<f64>() / n as f64;
        let var = data.column(j).map(|x| (x - m) * (x - m)).sum::<f64>() / n as f64;
        means[j] = m;
        stddevs[j] = var.sqrt();
    }
    let mut values = Vec::with_capacity(n * d);
    for p in data.points() {
        for j in 0..d {
            let s = stddevs[j];
            // relative test so that huge constant columns are still constant
            if s <= ZERO_VARIANCE * means[j].abs().max(1.0) {
                values.push(0.0);
            } else {
                values.push((p[j] - means[j]) / s);
            }
        }
    }
    Ok((
        Dataset::from_flat(n, d, values, data.labels.clone()),
        Standardization { means, stddevs },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points() {
        let d = Dataset::unlabelled(vec![vec![1.0, 5.0], vec![3.0, 5.0]]).unwrap();
        let (s, st) = standardize(&d).unwrap();
        assert_eq!(s.rows(), vec![vec![-1.0, 0.0], vec![1.0, 0.0]]);
        assert_eq!(st.means, vec![2.0, 5.0]);
    }

    #[test]
    fn constant_column() {
        let d = Dataset::unlabelled(vec![vec![5.0], vec![5.0], vec![5.0]]).unwrap();
        assert_eq!(standardize(&d).unwrap().0.rows(), vec![vec![0.0]; 3]);
        let big = Dataset::unlabelled(vec![vec![1e12 + 0.1]; 4]).unwrap();
        assert!(standardize(&big).unwrap().0.points().all(|p| p[0] == 0.0));
    }

    #[test]
    fn one_point_is_too_few() {
        let d = Dataset::unlabelled(vec![vec![1.0]]).unwrap();
        assert_eq!(
            standardize(&d),
            Err(MlError::TooFewPoints { needed: 2, got: 1 })
        );
    }
}
