//! One line per acceptance criterion. Exits non-zero if any fails.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use proofminer::features::{encode_branching, extract_corpus, BranchingCode, FeatureVector, TacticUniverse};
use proofminer::io::{
    parse_arff, parse_cluster_xml, parse_csv, render_arff, render_cluster_xml, render_csv, Corpus,
};
use proofminer::mlcore::{
    distance, gmm_em, kmeans, pca_fit_transform, silhouette, Dataset, Partition,
};
use proofminer::parser::read_trace_file;
use proofminer::pipeline::{
    agreement_report, aggregate, cluster_corpus, cluster_runs, frequency_threshold,
    granularity_to_k, suggest_for_goal,
};
use proofminer::{EngineConfig, Level, ProofTrace};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn traces(name: &str) -> Vec<ProofTrace> {
    read_trace_file(fixtures().join(name)).expect("fixture parses")
}

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, name: &str, ok: bool, detail: String) {
        if !ok {
            self.failed += 1;
        }
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

fn within(t: Duration, limit: Duration) -> bool {
    t < limit
}

fn granularity(r: &mut Report) {
    let start = Instant::now();
    let ks: Vec<usize> = (1..=5).map(|g| granularity_to_k(g, 205).unwrap()).collect();
    let k70 = granularity_to_k(3, 70).unwrap();
    let t = start.elapsed();
    let ok = ks == [20, 22, 25, 29, 34] && k70 == 8 && within(t, Duration::from_millis(1));
    r.line("granularity formula", ok, format!("l=205 -> {ks:?}, l=70 g=3 -> {k70}, {t:?} (limit 1ms)"));
}

fn thresholds(r: &mut Report) {
    let fs: Vec<f64> = (1..=3).map(|f| frequency_threshold(f).unwrap()).collect();
    r.line("frequency thresholds", fs == [5.0, 15.0, 30.0], format!("f=1,2,3 -> {fs:?}"));
}

fn shapes(r: &mut Report) {
    let bigop = traces("bigop.trace");
    let initial = traces("initial.trace");
    let ssr = TacticUniverse::ssreflect();
    let len = |t: &[ProofTrace], level, u: &TacticUniverse| {
        let (v, _) = extract_corpus(t, level, u).unwrap();
        let lens: BTreeSet<usize> = v.iter().map(|v| v.values.len()).collect();
        lens.into_iter().collect::<Vec<_>>()
    };
    let goal = len(&bigop, Level::Goal, &ssr);
    let goal_init = len(&initial, Level::Goal, &TacticUniverse::plain_coq());
    let tactic = len(&bigop, Level::Tactic, &ssr);
    let tree = len(&bigop, Level::Tree, &ssr);
    let ok = goal == [30] && goal_init == [30] && tactic == [30] && tree == [40];
    r.line(
        "vector shapes",
        ok,
        format!("goal {goal:?}/{goal_init:?}, tactic (SSReflect) {tactic:?}, tree {tree:?}"),
    );
}

fn branching(r: &mut Report) {
    let got: Vec<u64> = [(1, vec![2]), (2, vec![0, 1]), (3, vec![0])]
        .into_iter()
        .map(|(l, c)| encode_branching(&BranchingCode::new(l, c)).unwrap())
        .collect();
    r.line("branching codes", got == [12, 201, 30], format!("(1,[2]) (2,[0,1]) (3,[0]) -> {got:?}"));
}

fn agreement_ordering(r: &mut Report) {
    let bigop = traces("bigop.trace");
    let ssr = TacticUniverse::ssreflect();
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for level in [Level::Goal, Level::Tactic, Level::Tree] {
        let close = agreement_report(&bigop, "sum_first_n", "fact_prod", level, &ssr).unwrap();
        let far = agreement_report(&bigop, "sum_first_n", "sum_first_n_odd", level, &ssr).unwrap();
        ok &= close.0 > far.0;
        parts.push(format!("{level}: {}/{} vs {}/{}", close.0, close.1, far.0, far.1));
    }
    let t = start.elapsed();
    ok &= within(t, Duration::from_secs(1));
    r.line(
        "agreement ordering",
        ok,
        format!("fact_prod vs sum_first_n_odd: {}; {t:?} (limit 1s)", parts.join(", ")),
    );
}

fn initial_clusters(r: &mut Report) {
    let initial = traces("initial.trace");
    let (vectors, _) = extract_corpus(&initial, Level::Goal, &TacticUniverse::plain_coq()).unwrap();
    let start = Instant::now();
    let g3 = cluster_corpus(&vectors, &EngineConfig::default()).unwrap();
    let g5 = cluster_corpus(&vectors, &EngineConfig { granularity: 5, ..Default::default() }).unwrap();
    let t = start.elapsed();

    let four = ["mult_n_0", "mult_0_n", "app_l_nil", "app_nil_l"];
    let inductive = ["app_l_nil", "mult_n_0", "plus_n_0", "minus_n_0"];
    let simplification = ["mult_0_n", "app_nil_l", "plus_0_n", "minus_0_n"];
    let at3 = g3
        .entries
        .iter()
        .filter(|e| four.iter().all(|n| e.lemmas.contains(*n)))
        .map(|e| format!("{}%", e.frequency_pct))
        .collect::<Vec<_>>();
    let at5 = g5
        .entries
        .iter()
        .filter(|e| {
            inductive.iter().all(|n| e.lemmas.contains(*n))
                && !simplification.iter().any(|n| e.lemmas.contains(*n))
        })
        .map(|e| format!("{}%", e.frequency_pct))
        .collect::<Vec<_>>();
    let ok = !at3.is_empty() && !at5.is_empty() && within(t, Duration::from_secs(30));
    r.line(
        "clustering on Initial",
        ok,
        format!(
            "seed 0, 200 runs: g=3 clusters with all four at {at3:?}; g=5 inductive-only clusters at {at5:?}; {t:?} (limit 30s)"
        ),
    );
}

fn suggestion(r: &mut Report) {
    let bigop = traces("bigop.trace");
    let partial = read_trace_file(fixtures().join("sum_first_n_partial.trace")).unwrap().remove(0);
    let mut config = EngineConfig::default();
    let conf = std::fs::read_to_string(fixtures().join("suggest.conf")).unwrap();
    config.apply_config_text(&conf).unwrap();

    let universe = TacticUniverse::detect(&bigop);
    let (vectors, symbols) = extract_corpus(&bigop, config.level, &universe).unwrap();
    let mut corpus = Corpus::empty(universe);
    corpus.symbols = symbols;
    let current = corpus.encode(&partial, config.level).unwrap();

    let series = bigop.iter().filter(|t| t.lemma_name.starts_with("sum_") || t.lemma_name.starts_with("prod_")).count();
    let start = Instant::now();
    let at5 = suggest_for_goal(&vectors, &current, &config).unwrap();
    let at3 = suggest_for_goal(&vectors, &current, &EngineConfig { granularity: 3, ..config.clone() }).unwrap();
    let t = start.elapsed();

    let only_fact = at5.as_ref().is_some_and(|s| s.lemmas.len() == 1 && s.lemmas.contains("fact_prod"));
    let has_fact = at3.as_ref().is_some_and(|s| s.lemmas.contains("fact_prod"));
    let show = |s: &Option<proofminer::pipeline::Suggestion>| match s {
        Some(s) => format!("{:?} at {}%", s.lemmas, s.frequency_pct),
        None => "none".into(),
    };
    r.line(
        "goal-dependent suggestion",
        only_fact && has_fact && series >= 20 && within(t, Duration::from_secs(60)),
        format!(
            "{} lemmas, {series} series, {} {}: g=5 -> {}; g=3 -> {}; {t:?} (limit 60s)",
            bigop.len(),
            config.algorithm,
            format_args!("seed {}", config.master_seed),
            show(&at5),
            show(&at3),
        ),
    );
}

fn random_rows(rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let n = rng.random_range(6..30);
    let d = rng.random_range(1..6);
    (0..n).map(|_| (0..d).map(|_| rng.random_range(-20.0..20.0)).collect()).collect()
}

fn brute_silhouette(rows: &[Vec<f64>], p: &Partition) -> Vec<f64> {
    (0..rows.len())
        .map(|i| {
            let mut sum = vec![0.0; p.k];
            let mut cnt = vec![0usize; p.k];
            for j in 0..rows.len() {
                if i != j {
                    sum[p.assignment[j]] += distance(&rows[i], &rows[j]);
                    cnt[p.assignment[j]] += 1;
                }
            }
            let own = p.assignment[i];
            if cnt[own] == 0 {
                return 0.0;
            }
            let a = sum[own] / cnt[own] as f64;
            let b = (0..p.k)
                .filter(|&c| c != own && cnt[c] > 0)
                .map(|c| sum[c] / cnt[c] as f64)
                .fold(f64::INFINITY, f64::min);
            if a.max(b) == 0.0 { 0.0 } else { (b - a) / a.max(b) }
        })
        .collect()
}

fn property_suites(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut failures: Vec<&str> = Vec::new();
    let mut fail = |what: &'static str| {
        if !failures.contains(&what) {
            failures.push(what);
        }
    };

    for round in 0..50u64 {
        let rows = random_rows(&mut rng);
        let data = Dataset::unlabelled(rows.clone()).unwrap();
        let k = rng.random_range(2..=3.min(rows.len()));

        let km = kmeans(&data, k, round).unwrap();
        if km.inertia_history.windows(2).any(|w| w[1] > w[0] * (1.0 + 1e-12) + 1e-12) {
            fail("k-means inertia");
        }
        if let Ok(g) = gmm_em(&data, k, round) {
            let from = g.reseeded_at.map_or(0, |i| i + 1).min(g.log_likelihood_history.len());
            if g.log_likelihood_history[from..]
                .windows(2)
                .any(|w| w[1] < w[0] - 1e-9 * w[0].abs().max(1.0))
            {
                fail("GMM log-likelihood");
            }
        }
        let (_, pca) = pca_fit_transform(&data, 0.9);
        let gram = pca.components.transpose() * &pca.components;
        if (gram - DMatrix::<f64>::identity(pca.n_components(), pca.n_components())).amax() >= 1e-8 {
            fail("PCA orthonormality");
        }
        let sil = silhouette(&data, &km.partition).unwrap();
        let want = brute_silhouette(&rows, &km.partition);
        if sil.scores.iter().zip(&want).any(|(a, b)| (a - b).abs() >= 1e-9) {
            fail("silhouette oracle");
        }

        // threshold monotonicity on a seeded random corpus
        let vectors: Vec<FeatureVector> = rows
            .iter()
            .enumerate()
            .map(|(i, v)| FeatureVector {
                lemma_name: format!("l{i}"),
                level: Level::Goal,
                values: v.clone(),
                saturated: false,
            })
            .collect();
        let config = EngineConfig { runs: 20, master_seed: round, granularity: 5, ..Default::default() };
        let outcomes = cluster_runs(&vectors, &config).unwrap();
        let at = |f| aggregate(&outcomes, &EngineConfig { frequency_param: f, ..config.clone() }).unwrap().entries;
        let (f1, f2, f3) = (at(1), at(2), at(3));
        if !f3.iter().all(|e| f2.contains(e)) || !f2.iter().all(|e| f1.contains(e)) {
            fail("threshold monotonicity");
        }

        let arff = render_arff(&vectors, "random");
        if parse_arff(&arff, Path::new("mem")).ok().map(|a| a.rows) != Some(rows.clone()) {
            fail("ARFF round trip");
        }
        let csv = parse_csv(&render_csv(&vectors), Path::new("mem")).unwrap();
        if csv.iter().flatten().zip(rows.iter().flatten()).any(|(a, b)| (a - b).abs() > 1e-12 * b.abs().max(1.0)) {
            fail("CSV round trip");
        }
        let report = aggregate(&outcomes, &config).unwrap();
        let back = parse_cluster_xml(&render_cluster_xml(&report)).unwrap();
        if back.entries != report.entries {
            fail("XML round trip");
        }
    }

    let initial = traces("initial.trace");
    let (vectors, _) = extract_corpus(&initial, Level::Goal, &TacticUniverse::plain_coq()).unwrap();
    let config = EngineConfig { runs: 50, master_seed: 9, ..Default::default() };
    let a = render_cluster_xml(&cluster_corpus(&vectors, &config).unwrap());
    let b = render_cluster_xml(&cluster_corpus(&vectors, &config).unwrap());
    if a != b {
        fail("pipeline determinism");
    }

    r.line(
        "property suites",
        failures.is_empty(),
        if failures.is_empty() {
            "inertia, log-likelihood (1e-9), PCA orthonormality (1e-8), silhouette oracle (1e-9), thresholds on 50 corpora, XML/ARFF exact, CSV (1e-12), determinism".into()
        } else {
            format!("failed: {}", failures.join(", "))
        },
    );
}

fn core_only(r: &mut Report) {
    let manifest = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("Cargo.toml")).unwrap();
    let deps = manifest.split("[dependencies]").nth(1).unwrap_or("");
    let deps = deps.split("\n[").next().unwrap_or("");
    let ok = !deps.contains("path") && !deps.contains("webui");
    r.line("core builds alone", ok, "this target depends on the core crate and registry crates only".into());
}

fn main() {
    let mut r = Report { failed: 0 };
    granularity(&mut r);
    thresholds(&mut r);
    shapes(&mut r);
    branching(&mut r);
    agreement_ordering(&mut r);
    initial_clusters(&mut r);
    suggestion(&mut r);
    property_suites(&mut r);
    core_only(&mut r);
    if r.failed > 0 {
        println!("{} criteria failed", r.failed);
        std::process::exit(1);
    }
}
