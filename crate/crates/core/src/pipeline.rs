//! Repeated clustering of a corpus and the two ways of using it: a general
//! report of recurring lemma groups, and a suggestion for one goal.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{MlError, PipelineError};
use crate::features::{agreement, extract_table, FeatureVector, TacticUniverse, GOAL_COLUMNS};
use crate::mlcore::{
    farthest_first, gmm_em, kmeans, pca_fit_transform, silhouette, standardize, Dataset, Partition,
};
use crate::model::{Algorithm, ClusterEntry, ClusterReport, EngineConfig, Level, ProofTrace};

pub const MIN_CORPUS: usize = 6;

/// Number of clusters for granularity `g` on `l` lemmas: ⌊l/(11-g)⌋, at least 2.
pub fn granularity_to_k(g: u8, l: usize) -> Result<usize, PipelineError> {
    if !(1..=5).contains(&g) {
        return Err(PipelineError::OutOfRange {
            name: "granularity",
            value: i64::from(g),
        });
    }
    if l < MIN_CORPUS {
        return Err(PipelineError::CorpusTooSmall(l));
    }
    Ok((l / (11 - usize::from(g))).max(2))
}

/// Minimum frequency (percent) a cluster needs to be reported.
pub fn frequency_threshold(f: u8) -> Result<f64, PipelineError> {
    match f {
        1 => Ok(5.0),
        2 => Ok(15.0),
        3 => Ok(30.0),
        _ => Err(PipelineError::OutOfRange {
            name: "frequency",
            value: i64::from(f),
        }),
    }
}

/// Clusters of one run that passed the proximity filter.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunOutcome {
    pub run: usize,
    pub seed: u64,
    /// Lemma set and mean silhouette of each surviving cluster.
    pub clusters: Vec<(BTreeSet<String>, f64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Suggestion {
    pub lemmas: BTreeSet<String>,
    pub frequency_pct: f64,
}

fn to_dataset(vectors: &[FeatureVector]) -> Result<Dataset, PipelineError> {
    let first = vectors.first().ok_or(PipelineError::CorpusTooSmall(0))?;
    if vectors
        .iter()
        .any(|v| v.level != first.level || v.values.len() != first.values.len())
    {
        return Err(PipelineError::InconsistentVectors);
    }
    Ok(Dataset::from_rows(
        vectors.iter().map(|v| v.values.clone()).collect(),
        vectors.iter().map(|v| v.lemma_name.clone()).collect(),
    )?)
}

/// Standardize, then reduce with PCA when the dimension exceeds `pca_min_dim`.
pub fn prepare(vectors: &[FeatureVector], config: &EngineConfig) -> Result<Dataset, PipelineError> {
    let data = to_dataset(vectors)?;
    let (data, _) = standardize(&data)?;
    if config.pca && data.d() > config.pca_min_dim {
        Ok(pca_fit_transform(&data, config.variance_target).0)
    } else {
        Ok(data)
    }
}

fn partition(data: &Dataset, k: usize, algorithm: Algorithm, seed: u64) -> Result<Partition, MlError> {
    Ok(match algorithm {
        Algorithm::KMeans => kmeans(data, k, seed)?.partition,
        Algorithm::GaussianMixture => gmm_em(data, k, seed)?.partition,
        Algorithm::FarthestFirst => farthest_first(data, k, seed)?.partition,
    })
}

/// One clustering run followed by the proximity filter. A mixture run whose
/// component collapses twice contributes no clusters.
pub fn run_once(
    data: &Dataset,
    k: usize,
    config: &EngineConfig,
    run: usize,
) -> Result<RunOutcome, PipelineError> {
    let seed = config.master_seed.wrapping_add(run as u64);
    let mut outcome = RunOutcome {
        run,
        seed,
        clusters: Vec::new(),
    };
    let p = match partition(data, k, config.algorithm, seed) {
        Ok(p) => p,
        Err(MlError::DegenerateComponent(_)) => return Ok(outcome),
        Err(e) => return Err(e.into()),
    };
    let sil = match silhouette(data, &p) {
        Ok(s) => s,
        Err(MlError::SingleCluster) => return Ok(outcome),
        Err(e) => return Err(e.into()),
    };
    for (members, mean) in p.members().into_iter().zip(sil.cluster_means) {
        if let Some(mean) = mean.filter(|m| *m >= config.proximity_threshold) {
            let lemmas = members.iter().map(|&i| data.labels[i].clone()).collect();
            outcome.clusters.push((lemmas, mean));
        }
    }
    Ok(outcome)
}

/// Every run of the protocol, in run order.
pub fn cluster_runs(
    vectors: &[FeatureVector],
    config: &EngineConfig,
) -> Result<Vec<RunOutcome>, PipelineError> {
    config.validate()?;
    let k = granularity_to_k(config.granularity, vectors.len())?;
    let data = prepare(vectors, config)?;
    (0..config.runs)
        .into_par_iter()
        .map(|run| run_once(&data, k, config, run))
        .collect()
}

/// Count identical lemma sets across runs and keep the frequent ones.
pub fn aggregate(outcomes: &[RunOutcome], config: &EngineConfig) -> Result<ClusterReport, PipelineError> {
    let threshold = frequency_threshold(config.frequency_param)?;
    let mut counts: BTreeMap<&BTreeSet<String>, usize> = BTreeMap::new();
    for o in outcomes {
        for (set, _) in &o.clusters {
            *counts.entry(set).or_default() += 1;
        }
    }
    let mut entries: Vec<ClusterEntry> = counts
        .into_iter()
        .map(|(set, c)| ClusterEntry {
            lemmas: set.clone(),
            frequency_pct: 100.0 * c as f64 / config.runs as f64,
        })
        .filter(|e| e.frequency_pct >= threshold)
        .collect();
    entries.sort_by(|a, b| {
        b.frequency_pct
            .total_cmp(&a.frequency_pct)
            .then_with(|| a.lemmas.cmp(&b.lemmas))
    });
    Ok(ClusterReport {
        entries,
        config: Some(config.clone()),
    })
}

/// Cluster the corpus `runs` times and report lemma groups found at least
/// as often as the frequency threshold.
pub fn cluster_corpus(
    vectors: &[FeatureVector],
    config: &EngineConfig,
) -> Result<ClusterReport, PipelineError> {
    let outcomes = cluster_runs(vectors, config)?;
    aggregate(&outcomes, config)
}

/// Number of leading goal-table rows the partial proof fills. A present row
/// always has a non-zero tactic code, so trailing all-zero rows are steps
/// not written yet.
pub fn goal_prefix_rows(current: &FeatureVector) -> usize {
    current
        .values
        .chunks(GOAL_COLUMNS)
        .rposition(|row| row.iter().any(|x| *x != 0.0))
        .map_or(0, |i| i + 1)
}

/// Cluster the corpus together with the goal being proved and return the
/// most frequent reported group that contains it, without the goal itself.
/// A corpus lemma with the goal's name is replaced by the goal.
///
/// At goal level the comparison is relative to the steps written so far:
/// every vector is cut to the rows the partial proof fills.
pub fn suggest_for_goal(
    vectors: &[FeatureVector],
    current: &FeatureVector,
    config: &EngineConfig,
) -> Result<Option<Suggestion>, PipelineError> {
    let width = match current.level {
        Level::Goal => goal_prefix_rows(current).max(1) * GOAL_COLUMNS,
        _ => current.values.len(),
    };
    let cut = |v: &FeatureVector| {
        let mut v = v.clone();
        v.values.truncate(width);
        v
    };
    let mut all: Vec<FeatureVector> = vectors
        .iter()
        .filter(|v| v.lemma_name != current.lemma_name)
        .map(cut)
        .collect();
    all.push(cut(current));
    let report = cluster_corpus(&all, config)?;
    // entries are already sorted by descending frequency
    Ok(report
        .entries
        .into_iter()
        .filter(|e| e.lemmas.contains(&current.lemma_name) && e.lemmas.len() > 1)
        .map(|mut e| {
            e.lemmas.remove(&current.lemma_name);
            Suggestion {
                lemmas: e.lemmas,
                frequency_pct: e.frequency_pct,
            }
        })
        .next())
}

/// Symbolic cell agreement between two lemmas of a corpus.
pub fn agreement_report(
    corpus: &[ProofTrace],
    lemma_a: &str,
    lemma_b: &str,
    level: Level,
    universe: &TacticUniverse,
) -> Result<(usize, usize), PipelineError> {
    let find = |name: &str| {
        corpus
            .iter()
            .find(|t| t.lemma_name == name)
            .ok_or_else(|| PipelineError::UnknownLemma(name.to_string()))
    };
    let a = extract_table(find(lemma_a)?, level, universe)?;
    let b = extract_table(find(lemma_b)?, level, universe)?;
    Ok(agreement(&a, &b)?)
}
