use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check_k, Dataset, Partition, MAX_ITERATIONS};
use crate::error::MlError;

pub const VARIANCE_FLOOR: f64 = 1e-6;
const COLLAPSED: f64 = 1e-10;
const TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct GmmResult {
    /// Hard assignment by maximum responsibility.
    pub partition: Partition,
    pub weights: Vec<f64>,
    pub means: Vec<Vec<f64>>,
    pub variances: Vec<Vec<f64>>,
    pub log_likelihood: f64,
    /// Log-likelihood of the parameters in force at each E step.
    pub log_likelihood_history: Vec<f64>,
    /// Index into the history where the latest re-seeding took effect.
    pub reseeded_at: Option<usize>,
}

struct Model {
    weights: Vec<f64>,
    means: Vec<Vec<f64>>,
    variances: Vec<Vec<f64>>,
}

impl Model {
    fn log_density(&self, c: usize, p: &[f64]) -> f64 {
        let mut s = self.weights[c].ln();
        for ((x, m), v) in p.iter().zip(&self.means[c]).zip(&self.variances[c]) {
            s -= 0.5 * ((2.0 * std::f64::consts::PI * v).ln() + (x - m) * (x - m) / v);
        }
        s
    }
}

fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// Responsibilities (n×k) and total log-likelihood.
fn e_step(data: &Dataset, model: &Model, k: usize) -> (Vec<Vec<f64>>, f64) {
    let mut ll = 0.0;
    let resp = data
        .points()
        .map(|p| {
            let logs: Vec<f64> = (0..k).map(|c| model.log_density(c, p)).collect();
            let norm = log_sum_exp(&logs);
            ll += norm;
            logs.into_iter().map(|l| (l - norm).exp()).collect()
        })
        .collect();
    (resp, ll)
}

fn global_variance(data: &Dataset) -> Vec<f64> {
    let n = data.n() as f64;
    (0..data.d())
        .map(|j| {
            let m = data.column(j).sum::<f64>() / n;
            let v = data.column(j).map(|x| (x - m) * (x - m)).sum::<f64>() / n;
            v.max(VARIANCE_FLOOR)
        })
        .collect()
}

/// Expectation maximisation for a mixture of Gaussians with diagonal
/// covariances. Means start at k distinct seeded points, variances at the
/// global per-feature variance.
pub fn gmm_em(data: &Dataset, k: usize, seed: u64) -> Result<GmmResult, MlError> {
    let (n, d) = (data.n(), data.d());
    check_k(k, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let global = global_variance(data);
    let mut model = Model {
        weights: vec![1.0 / k as f64; k],
        means: index::sample(&mut rng, n, k)
            .into_iter()
            .map(|i| data.point(i).to_vec())
            .collect(),
        variances: vec![global.clone(); k],
    };
    let mut reseeded = vec![false; k];
    let mut reseeded_at = None;
    let mut history = Vec::new();

    let (mut resp, mut ll) = e_step(data, &model, k);
    for _ in 0..MAX_ITERATIONS {
        history.push(ll);
        let nk: Vec<f64> = (0..k).map(|c| resp.iter().map(|r| r[c]).sum()).collect();
        let mut reseed = None;
        for c in 0..k {
            if nk[c] < COLLAPSED {
                if reseeded[c] {
                    return Err(MlError::DegenerateComponent(c));
                }
                reseed = Some(c);
                break;
            }
            let mut mean = vec![0.0; d];
            for (r, p) in resp.iter().zip(data.points()) {
                for (m, x) in mean.iter_mut().zip(p) {
                    *m += r[c] * x;
                }
            }
            mean.iter_mut().for_each(|m| *m /= nk[c]);
            let mut var = vec![0.0; d];
            for (r, p) in resp.iter().zip(data.points()) {
                for ((v, x), m) in var.iter_mut().zip(p).zip(&mean) {
                    *v += r[c] * (x - m) * (x - m);
                }
            }
            var.iter_mut()
                .for_each(|v| *v = (*v / nk[c]).max(VARIANCE_FLOOR));
            model.weights[c] = nk[c] / n as f64;
            model.means[c] = mean;
            model.variances[c] = var;
        }
        if let Some(c) = reseed {
            // put the collapsed component on the worst explained point
            let worst = data
                .points()
                .map(|p| {
                    let logs: Vec<f64> = (0..k).map(|j| model.log_density(j, p)).collect();
                    log_sum_exp(&logs)
                })
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .map(|(i, _)| i)
                .unwrap_or(0);
            reseeded[c] = true;
            model.means[c] = data.point(worst).to_vec();
            model.variances[c] = global.clone();
            model.weights = vec![1.0 / k as f64; k];
            (resp, ll) = e_step(data, &model, k);
            reseeded_at = Some(history.len());
            continue;
        }
        let (next_resp, next_ll) = e_step(data, &model, k);
        let improvement = next_ll - ll;
        resp = next_resp;
        ll = next_ll;
        if improvement.abs() <= TOLERANCE * ll.abs().max(1.0) {
            history.push(ll);
            break;
        }
    }

    let assignment = resp
        .iter()
        .map(|r| {
            let mut best = 0;
            for c in 1..k {
                if r[c] > r[best] {
                    best = c;
                }
            }
            best
        })
        .collect();
    Ok(GmmResult {
        partition: Partition { assignment, k },
        weights: model.weights,
        means: model.means,
        variances: model.variances,
        log_likelihood: ll,
        log_likelihood_history: history,
        reseeded_at,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_component_is_the_sample_moments() {
        let d = Dataset::unlabelled(vec![vec![1.0, 0.0], vec![3.0, 0.0], vec![5.0, 3.0]]).unwrap();
        let r = gmm_em(&d, 1, 0).unwrap();
        assert!((r.means[0][0] - 3.0).abs() < 1e-12);
        assert!((r.means[0][1] - 1.0).abs() < 1e-12);
        assert!((r.variances[0][0] - 8.0 / 3.0).abs() < 1e-12);
        assert!((r.variances[0][1] - 2.0).abs() < 1e-12);
        assert_eq!(r.weights, vec![1.0]);
    }

    #[test]
    fn separated_blobs_split() {
        let d = Dataset::unlabelled(vec![
            vec![0.0, 0.0],
            vec![0.2, 0.1],
            vec![0.1, 0.3],
            vec![9.0, 9.0],
            vec![9.2, 9.1],
            vec![9.1, 9.3],
        ])
        .unwrap();
        for seed in 0..10 {
            let a = gmm_em(&d, 2, seed).unwrap().partition.assignment;
            assert!(a[..3].iter().all(|&c| c == a[0]));
            assert!(a[3..].iter().all(|&c| c == a[3]));
            assert_ne!(a[0], a[3]);
        }
    }

    #[test]
    fn duplicate_points_respect_floor() {
        let d = Dataset::unlabelled(vec![vec![2.0]; 4]).unwrap();
        let r = gmm_em(&d, 2, 1).unwrap();
        assert!(r.variances.iter().flatten().all(|&v| v >= VARIANCE_FLOOR));
    }

    #[test]
    fn log_sum_exp_is_stable() {
        assert!((log_sum_exp(&[-1000.0, -1000.0]) - (-1000.0 + 2f64.ln())).abs() < 1e-12);
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
    }
}
