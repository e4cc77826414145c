//! Library export directories.
//!
//! ```text
//! <dir>/lemmas.json   library name, tactic universe, symbol tables, lemmas
//! <dir>/goal.csv      one goal-level vector per lemma, in lemma order
//! <dir>/tactic.csv
//! <dir>/tree.csv
//! ```

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::csv::{parse_csv, render_csv};
use super::{read_file, write_file};
use crate::error::{ExportError, FeatureError};
use crate::features::{
    build_symbols, encode_table, extract_table, extract_vectors, vector_len, FeatureVector,
    TacticUniverse, VALUE_CAP,
};
use crate::model::{Level, ProofTrace, SymbolTables};

pub const LEMMAS_FILE: &str = "lemmas.json";
pub const GOAL_FILE: &str = "goal.csv";
pub const TACTIC_FILE: &str = "tactic.csv";
pub const TREE_FILE: &str = "tree.csv";

const LEVELS: [(Level, &str); 3] = [
    (Level::Goal, GOAL_FILE),
    (Level::Tactic, TACTIC_FILE),
    (Level::Tree, TREE_FILE),
];

/// Proofs of one library, ready to export.
#[derive(Clone, Debug)]
pub struct Library {
    pub name: String,
    pub universe: TacticUniverse,
    pub traces: Vec<ProofTrace>,
    /// Proof source text by lemma name, when known.
    pub scripts: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaRecord {
    pub name: String,
    pub statement: String,
    pub library: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub script: Option<String>,
    pub trace: ProofTrace,
}

#[derive(Serialize, Deserialize)]
struct LemmasFile {
    library: String,
    universe: TacticUniverse,
    symbols: SymbolTables,
    lemmas: Vec<LemmaRecord>,
}

/// Contents of one export directory.
#[derive(Clone, Debug, PartialEq)]
pub struct LibraryExport {
    pub library: String,
    pub universe: TacticUniverse,
    pub symbols: SymbolTables,
    pub lemmas: Vec<LemmaRecord>,
    pub goal: Vec<FeatureVector>,
    pub tactic: Vec<FeatureVector>,
    pub tree: Vec<FeatureVector>,
}

impl LibraryExport {
    pub fn vectors(&self, level: Level) -> &[FeatureVector] {
        match level {
            Level::Goal => &self.goal,
            Level::Tactic => &self.tactic,
            Level::Tree => &self.tree,
        }
    }
}

/// Encode a library at all three levels and write its four files.
pub fn export_library(library: &Library, dir: &Path) -> Result<LibraryExport, ExportError> {
    if let Some(t) = library.traces.iter().find(|t| !t.complete) {
        return Err(ExportError::IncompleteProof(t.lemma_name.clone()));
    }
    let symbols = build_symbols(&library.traces);
    let enc = |level| extract_vectors(&library.traces, level, &library.universe, &symbols);
    let export = LibraryExport {
        library: library.name.clone(),
        universe: library.universe.clone(),
        lemmas: library
            .traces
            .iter()
            .map(|t| LemmaRecord {
                name: t.lemma_name.clone(),
                statement: t.statement.clone(),
                library: library.name.clone(),
                script: library.scripts.get(&t.lemma_name).cloned(),
                trace: t.clone(),
            })
            .collect(),
        goal: enc(Level::Goal)?,
        tactic: enc(Level::Tactic)?,
        tree: enc(Level::Tree)?,
        symbols,
    };

    std::fs::create_dir_all(dir).map_err(|e| ExportError::io(dir, e))?;
    let file = LemmasFile {
        library: export.library.clone(),
        universe: export.universe.clone(),
        symbols: export.symbols.clone(),
        lemmas: export.lemmas.clone(),
    };
    let json = serde_json::to_string_pretty(&file).expect("lemma list serializes");
    write_file(&dir.join(LEMMAS_FILE), &(json + "\n"))?;
    for (level, name) in LEVELS {
        write_file(&dir.join(name), &render_csv(export.vectors(level)))?;
    }
    Ok(export)
}

pub fn import_library(dir: &Path) -> Result<LibraryExport, ExportError> {
    let lpath = dir.join(LEMMAS_FILE);
    let file: LemmasFile =
        serde_json::from_str(&read_file(&lpath)?).map_err(|e| ExportError::Format {
            path: lpath.clone(),
            line: e.line(),
            reason: e.to_string(),
        })?;
    let mut vectors = Vec::new();
    for (level, name) in LEVELS {
        let path = dir.join(name);
        let rows = parse_csv(&read_file(&path)?, &path)?;
        let want = vector_len(level, file.universe.len());
        let bad = |line: usize, reason: String| ExportError::Format {
            path: path.clone(),
            line,
            reason,
        };
        if rows.len() != file.lemmas.len() {
            return Err(bad(
                rows.len(),
                format!("{} rows for {} lemmas", rows.len(), file.lemmas.len()),
            ));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != want) {
            return Err(bad(i + 1, format!("expected {want} columns")));
        }
        vectors.push(
            rows.into_iter()
                .zip(&file.lemmas)
                .map(|(values, l)| FeatureVector {
                    lemma_name: l.name.clone(),
                    level,
                    saturated: values.iter().any(|v| v.abs() >= VALUE_CAP),
                    values,
                })
                .collect::<Vec<_>>(),
        );
    }
    let tree = vectors.pop().unwrap_or_default();
    let tactic = vectors.pop().unwrap_or_default();
    let goal = vectors.pop().unwrap_or_default();
    Ok(LibraryExport {
        library: file.library,
        universe: file.universe,
        symbols: file.symbols,
        lemmas: file.lemmas,
        goal,
        tactic,
        tree,
    })
}

/// Several exported libraries attached to each other. Symbol tables and
/// tactic universe are those of the first library.
#[derive(Clone, Debug, PartialEq)]
pub struct Corpus {
    pub libraries: Vec<String>,
    pub universe: TacticUniverse,
    pub symbols: SymbolTables,
    pub lemmas: Vec<LemmaRecord>,
    pub goal: Vec<FeatureVector>,
    pub tactic: Vec<FeatureVector>,
    pub tree: Vec<FeatureVector>,
}

impl Corpus {
    pub fn empty(universe: TacticUniverse) -> Self {
        Corpus {
            libraries: Vec::new(),
            universe,
            symbols: SymbolTables::new(),
            lemmas: Vec::new(),
            goal: Vec::new(),
            tactic: Vec::new(),
            tree: Vec::new(),
        }
    }

    pub fn vectors(&self, level: Level) -> &[FeatureVector] {
        match level {
            Level::Goal => &self.goal,
            Level::Tactic => &self.tactic,
            Level::Tree => &self.tree,
        }
    }

    pub fn lemma(&self, name: &str) -> Option<&LemmaRecord> {
        self.lemmas.iter().find(|l| l.name == name)
    }

    pub fn traces(&self) -> Vec<ProofTrace> {
        self.lemmas.iter().map(|l| l.trace.clone()).collect()
    }

    /// Encode a (possibly unfinished) proof against the corpus symbol
    /// tables, extending them with any symbol they lack.
    pub fn encode(&self, trace: &ProofTrace, level: Level) -> Result<FeatureVector, FeatureError> {
        let mut symbols = self.symbols.clone();
        symbols.intern_trace(trace);
        let table = extract_table(trace, level, &self.universe)?;
        Ok(encode_table(&table, &trace.lemma_name, &symbols))
    }
}

/// Import and concatenate export directories. A lemma whose name is already
/// taken is renamed `library.lemma`. Symbol codes of the first library are
/// kept; later libraries extend its tables.
pub fn import_libraries<P: AsRef<Path>>(dirs: &[P]) -> Result<Corpus, ExportError> {
    let mut corpus: Option<Corpus> = None;
    for dir in dirs {
        let export = import_library(dir.as_ref())?;
        let Some(c) = corpus.as_mut() else {
            corpus = Some(Corpus {
                libraries: vec![export.library],
                universe: export.universe,
                symbols: export.symbols,
                lemmas: export.lemmas,
                goal: export.goal,
                tactic: export.tactic,
                tree: export.tree,
            });
            continue;
        };
        if c.universe != export.universe {
            return Err(ExportError::UniverseMismatch);
        }
        let mut taken: HashSet<String> = c.lemmas.iter().map(|l| l.name.clone()).collect();
        let mut renamed = Vec::with_capacity(export.lemmas.len());
        for l in &export.lemmas {
            let name = if taken.contains(&l.name) {
                format!("{}.{}", export.library, l.name)
            } else {
                l.name.clone()
            };
            taken.insert(name.clone());
            renamed.push(name);
        }
        // codes of a later library only mean something in its own tables,
        // so its lemmas are re-encoded against the growing corpus tables
        for (l, name) in export.lemmas.into_iter().zip(&renamed) {
            c.symbols.intern_trace(&l.trace);
            for level in [Level::Goal, Level::Tactic, Level::Tree] {
                let table = extract_table(&l.trace, level, &c.universe)?;
                let v = encode_table(&table, name, &c.symbols);
                match level {
                    Level::Goal => c.goal.push(v),
                    Level::Tactic => c.tactic.push(v),
                    Level::Tree => c.tree.push(v),
                }
            }
            c.lemmas.push(LemmaRecord {
                name: name.clone(),
                ..l
            });
        }
        c.libraries.push(export.library);
    }
    Ok(corpus.unwrap_or_else(|| Corpus::empty(TacticUniverse::plain_coq())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ProofStep, TacticApp};

    fn trace(name: &str, tactic: &str) -> ProofTrace {
        let steps = vec![ProofStep {
            goal_top_symbol: Some("equal".into()),
            tactics: vec![TacticApp::new(tactic, vec![])],
            n_subgoals_after: Some(0),
        }];
        ProofTrace {
            lemma_name: name.into(),
            statement: format!("{name} statement"),
            library: "L".into(),
            tree: crate::model::ProofTree::from_steps(&steps),
            steps,
            complete: true,
        }
    }

    fn library(name: &str, traces: Vec<ProofTrace>) -> Library {
        Library {
            name: name.into(),
            universe: TacticUniverse::plain_coq(),
            traces,
            scripts: BTreeMap::new(),
        }
    }

    #[test]
    fn export_writes_four_files_and_imports_back() {
        let dir = tempfile::tempdir().unwrap();
        let lib = library("L", vec![trace("a", "trivial"), trace("b", "auto")]);
        let written = export_library(&lib, dir.path()).unwrap();
        let mut files: Vec<String> = std::fs::read_dir(dir.path())
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .collect();
        files.sort();
        assert_eq!(files, vec!["goal.csv", "lemmas.json", "tactic.csv", "tree.csv"]);
        assert_eq!(import_library(dir.path()).unwrap(), written);
        assert_eq!(written.tactic[0].values.len(), 50);
    }

    #[test]
    fn admitted_proof_is_refused() {
        let dir = tempfile::tempdir().unwrap();
        let mut t = trace("a", "trivial");
        t.complete = false;
        assert!(matches!(
            export_library(&library("L", vec![t]), dir.path()),
            Err(ExportError::IncompleteProof(n)) if n == "a"
        ));
    }

    #[test]
    fn empty_library_has_zero_rows() {
        let dir = tempfile::tempdir().unwrap();
        export_library(&library("E", vec![]), dir.path()).unwrap();
        for f in [GOAL_FILE, TACTIC_FILE, TREE_FILE] {
            assert_eq!(std::fs::read_to_string(dir.path().join(f)).unwrap(), "");
        }
        let back = import_library(dir.path()).unwrap();
        assert!(back.lemmas.is_empty() && back.goal.is_empty());
    }

    #[test]
    fn colliding_names_are_prefixed() {
        let d1 = tempfile::tempdir().unwrap();
        let d2 = tempfile::tempdir().unwrap();
        export_library(&library("A", vec![trace("x", "trivial"), trace("y", "auto")]), d1.path())
            .unwrap();
        export_library(&library("B", vec![trace("x", "auto")]), d2.path()).unwrap();
        let c = import_libraries(&[d1.path(), d2.path()]).unwrap();
        let names: Vec<&str> = c.goal.iter().map(|v| v.lemma_name.as_str()).collect();
        assert_eq!(names, vec!["x", "y", "B.x"]);
        assert_eq!(c.lemma("B.x").unwrap().statement, "x statement");
        assert_eq!(c.libraries, vec!["A", "B"]);
    }

    #[test]
    fn row_count_mismatch_is_a_format_error() {
        let dir = tempfile::tempdir().unwrap();
        export_library(&library("A", vec![trace("x", "trivial")]), dir.path()).unwrap();
        std::fs::write(dir.path().join(TREE_FILE), "").unwrap();
        assert!(matches!(
            import_library(dir.path()),
            Err(ExportError::Format { .. })
        ));
    }

    #[test]
    fn encode_extends_symbols() {
        let dir = tempfile::tempdir().unwrap();
        export_library(&library("A", vec![trace("x", "trivial")]), dir.path()).unwrap();
        let c = import_libraries(&[dir.path()]).unwrap();
        let v = c.encode(&trace("new", "lia"), Level::Goal).unwrap();
        // trivial = 1, lia appended as 2
        assert_eq!(v.values[0], 2.0);
        assert_eq!(c.encode(&trace("x", "trivial"), Level::Goal).unwrap().values, c.goal[0].values);
    }
}
