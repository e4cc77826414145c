use std::collections::BTreeMap;
use std::ffi::OsStr;
use std::fs;
use std::path::{Path, PathBuf};

use proofminer::features::{TacticUniverse, UniverseMode};
use proofminer::io::{export_library, import_libraries, write_cluster_xml, Corpus, Library};
use proofminer::parser::{merge_script_into_trace, parse_script, parse_traces, read_trace_file};
use proofminer::pipeline::{cluster_corpus, suggest_for_goal, Suggestion};
use proofminer::{ClusterReport, EngineConfig, Level, ProofTrace};

use crate::error::CliError;

/// Where each engine setting came from, lowest precedence first.
#[derive(Clone, Debug, Default)]
pub struct EngineOverrides {
    pub config_text: Option<String>,
    pub env_seed: Option<String>,
    pub flags: Vec<(&'static str, String)>,
}

impl EngineOverrides {
    /// Defaults, then the config file, then `PROOFMINER_SEED`, then flags.
    pub fn resolve(&self) -> Result<EngineConfig, CliError> {
        let mut config = EngineConfig::default();
        if let Some(text) = &self.config_text {
            config.apply_config_text(text)?;
        }
        if let Some(seed) = &self.env_seed {
            config
                .set("seed", seed.trim())
                .map_err(|_| CliError::Usage(format!("PROOFMINER_SEED={seed:?} is not a seed")))?;
        }
        for (k, v) in &self.flags {
            config.set(k, v)?;
        }
        config.validate()?;
        Ok(config)
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn is_script(path: &Path) -> bool {
    path.extension() == Some(OsStr::new("v"))
}

/// Proofs read from scripts (`.v`) and trace files, with sidecar traces
/// merged into the scripts that have one.
pub struct Loaded {
    pub traces: Vec<ProofTrace>,
    pub scripts: BTreeMap<String, String>,
    pub warnings: Vec<String>,
}

pub fn load_proofs(inputs: &[PathBuf], sidecars: &[PathBuf], library: &str) -> Result<Loaded, CliError> {
    let mut side: BTreeMap<String, ProofTrace> = BTreeMap::new();
    for path in sidecars {
        for t in read_trace_file(path).map_err(|e| CliError::parse(path, e))? {
            side.insert(t.lemma_name.clone(), t);
        }
    }
    let mut out = Loaded {
        traces: Vec::new(),
        scripts: BTreeMap::new(),
        warnings: Vec::new(),
    };
    for path in inputs {
        if !is_script(path) {
            out.traces.extend(read_trace_file(path).map_err(|e| CliError::parse(path, e))?);
            continue;
        }
        let source = read_text(path)?;
        for proof in parse_script(&source).map_err(|e| CliError::parse(path, e))? {
            let known = side.get(&proof.lemma_name);
            if known.is_none() {
                out.warnings.push(format!(
                    "{}: no trace for {}, goal-level data left absent",
                    path.display(),
                    proof.lemma_name
                ));
            }
            let trace = merge_script_into_trace(&proof, known, library).map_err(|e| CliError::parse(path, e))?;
            out.scripts.insert(proof.lemma_name.clone(), proof.render());
            out.traces.push(trace);
        }
    }
    Ok(out)
}

#[derive(Debug)]
pub struct ExtractSummary {
    pub library: String,
    pub out: PathBuf,
    pub level: Level,
    pub lengths: Vec<(String, usize)>,
    pub warnings: Vec<String>,
}

pub fn extract(
    inputs: &[PathBuf],
    sidecars: &[PathBuf],
    library: Option<&str>,
    out: Option<&Path>,
    level: Level,
    mode: Option<UniverseMode>,
) -> Result<ExtractSummary, CliError> {
    let first = inputs.first().ok_or_else(|| CliError::Usage("no input files".into()))?;
    let name = match library {
        Some(n) => n.to_string(),
        None => first
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "library".into()),
    };
    let mut loaded = load_proofs(inputs, sidecars, &name)?;
    let universe = match mode {
        Some(m) => TacticUniverse::for_mode(m),
        None => TacticUniverse::detect(&loaded.traces),
    };
    if level == Level::Tree {
        let bare = loaded.traces.iter().filter(|t| t.tree.is_none()).count();
        if bare > 0 {
            loaded
                .warnings
                .push(format!("{bare} proofs have no tree data; their tree vectors are all zero"));
        }
    }
    let out = out.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from(format!("{name}.export")));
    let lib = Library {
        name: name.clone(),
        universe,
        traces: loaded.traces,
        scripts: loaded.scripts,
    };
    let export = export_library(&lib, &out)?;
    Ok(ExtractSummary {
        library: name,
        out,
        level,
        lengths: export
            .vectors(level)
            .iter()
            .map(|v| (v.lemma_name.clone(), v.values.len()))
            .collect(),
        warnings: loaded.warnings,
    })
}

pub fn load_corpus(dirs: &[PathBuf]) -> Result<Corpus, CliError> {
    if dirs.is_empty() {
        return Err(CliError::Usage("at least one export directory is needed".into()));
    }
    Ok(import_libraries(dirs)?)
}

pub fn cluster(corpus: &Corpus, config: &EngineConfig) -> Result<ClusterReport, CliError> {
    Ok(cluster_corpus(corpus.vectors(config.level), config)?)
}

/// Clusters as a frequency-sorted table, one cluster per line.
pub fn render_table(report: &ClusterReport) -> String {
    let mut s = String::new();
    if let Some(c) = &report.config {
        s.push_str(&format!(
            "{} at {} level, g={} f={}, {} runs from seed {}\n",
            c.algorithm, c.level, c.granularity, c.frequency_param, c.runs, c.master_seed
        ));
    }
    if report.entries.is_empty() {
        s.push_str("no cluster passed the thresholds\n");
    }
    for e in &report.entries {
        let names: Vec<&str> = e.lemmas.iter().map(String::as_str).collect();
        s.push_str(&format!("{:>6}%  {}\n", e.frequency_pct, names.join(" ")));
    }
    s
}

/// The one proof in a partial-proof document, script or trace.
pub fn parse_partial(text: &str, script: bool, sidecar: Option<&str>) -> Result<ProofTrace, CliError> {
    let mut proofs = if script {
        let side = match sidecar {
            Some(t) => parse_traces(t).map_err(|e| CliError::parse("sidecar", e))?,
            None => Vec::new(),
        };
        let mut out = Vec::new();
        for p in parse_script(text).map_err(|e| CliError::parse("partial proof", e))? {
            let known = side.iter().find(|t| t.lemma_name == p.lemma_name);
            out.push(merge_script_into_trace(&p, known, "").map_err(|e| CliError::parse("partial proof", e))?);
        }
        out
    } else {
        parse_traces(text).map_err(|e| CliError::parse("partial proof", e))?
    };
    match proofs.len() {
        1 => Ok(proofs.remove(0)),
        n => Err(CliError::Input(format!("expected one partial proof, found {n}"))),
    }
}

pub fn read_partial(path: &Path, sidecar: Option<&Path>) -> Result<ProofTrace, CliError> {
    let text = read_text(path)?;
    let side = sidecar.map(read_text).transpose()?;
    parse_partial(&text, is_script(path), side.as_deref()).map_err(|e| match e {
        CliError::Parse { source, .. } => CliError::parse(path, source),
        other => other,
    })
}

/// The most frequent cluster holding the partial proof, if any passes.
pub fn suggest(corpus: &Corpus, partial: &ProofTrace, config: &EngineConfig) -> Result<Option<Suggestion>, CliError> {
    let vectors = corpus.vectors(config.level);
    if vectors.is_empty() {
        return Ok(None);
    }
    let current = corpus.encode(partial, config.level)?;
    Ok(suggest_for_goal(vectors, &current, config)?)
}

pub fn render_suggestion(corpus: &Corpus, suggestion: Option<&Suggestion>) -> String {
    let Some(s) = suggestion else {
        return "no suggestion\n".into();
    };
    let mut out = format!("suggested in {}% of runs:\n", s.frequency_pct);
    for name in &s.lemmas {
        match corpus.lemma(name) {
            Some(l) if !l.statement.is_empty() => out.push_str(&format!("  {name} : {}\n", l.statement)),
            _ => out.push_str(&format!("  {name}\n")),
        }
    }
    out
}

pub fn write_report(report: &ClusterReport, path: &Path) -> Result<(), CliError> {
    Ok(write_cluster_xml(report, path)?)
}
