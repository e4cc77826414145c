//! Shared domain types: proof traces, symbol tables, engine configuration
//! and cluster reports.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

/// How an argument of a tactic relates to the proof context.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArgKind {
    None,
    Hyp,
    Ih,
    ExternalLemma(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arg {
    /// Type of the argument (`nat`, `list`, `Prop`, ...). `None` when the
    /// type was not recorded (script-only traces).
    pub arg_type: Option<String>,
    pub kind: ArgKind,
}

impl Arg {
    pub fn new(arg_type: impl Into<String>, kind: ArgKind) -> Self {
        Arg {
            arg_type: Some(arg_type.into()),
            kind,
        }
    }

    pub fn untyped(kind: ArgKind) -> Self {
        Arg {
            arg_type: None,
            kind,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TacticApp {
    pub name: String,
    pub args: Vec<Arg>,
}

impl TacticApp {
    pub fn new(name: impl Into<String>, args: Vec<Arg>) -> Self {
        TacticApp {
            name: name.into(),
            args,
        }
    }
}

/// One proof sentence together with the goal it was applied to.
///
/// A `;`-chained sentence is a single step listing every tactic of the chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofStep {
    pub goal_top_symbol: Option<String>,
    pub tactics: Vec<TacticApp>,
    pub n_subgoals_after: Option<usize>,
}

/// A node of the proof tree. Each node is one proof step; its children are
/// the steps applied to the subgoals it generated, left to right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    /// Index into [`ProofTrace::steps`].
    pub step: usize,
    pub depth: usize,
    pub closed: bool,
    pub children: Vec<TreeNode>,
}

impl TreeNode {
    pub fn leaf(step: usize, depth: usize, closed: bool) -> Self {
        TreeNode {
            step,
            depth,
            closed,
            children: Vec::new(),
        }
    }

    /// Visit every node of the subtree in pre-order.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a TreeNode)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
    }

    pub fn max_depth(&self) -> usize {
        self.children
            .iter()
            .map(TreeNode::max_depth)
            .max()
            .unwrap_or(self.depth)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTree {
    pub root: TreeNode,
}

impl ProofTree {
    /// Nodes grouped by depth (index 0 is depth 1), left to right.
    pub fn levels(&self) -> Vec<Vec<&TreeNode>> {
        let mut levels: Vec<Vec<&TreeNode>> = Vec::new();
        let mut frontier = vec![&self.root];
        while !frontier.is_empty() {
            let next = frontier
                .iter()
                .flat_map(|n| n.children.iter())
                .collect::<Vec<_>>();
            levels.push(frontier);
            frontier = next;
        }
        levels
    }

    /// Rebuild the tree from subgoal counts, assuming every step acts on the
    /// first open goal (script order). Returns `None` if a count is missing
    /// or the steps do not form a single tree.
    pub fn from_steps(steps: &[ProofStep]) -> Option<ProofTree> {
        fn build(steps: &[ProofStep], next: &mut usize, depth: usize) -> Option<TreeNode> {
            let idx = *next;
            let step = steps.get(idx)?;
            *next += 1;
            let n = step.n_subgoals_after?;
            let mut node = TreeNode::leaf(idx, depth, n == 0);
            for _ in 0..n {
                if *next >= steps.len() {
                    // open goal left at the end of an unfinished proof
                    break;
                }
                node.children.push(build(steps, next, depth + 1)?);
            }
            Some(node)
        }
        if steps.is_empty() {
            return None;
        }
        let mut next = 0;
        let root = build(steps, &mut next, 1)?;
        (next == steps.len()).then_some(ProofTree { root })
    }
}

/// One lemma's recorded derivation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub lemma_name: String,
    pub statement: String,
    pub library: String,
    pub steps: Vec<ProofStep>,
    pub tree: Option<ProofTree>,
    /// The proof ends in `Qed`.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyCompleteProof,
    EmptyTactics { step: usize },
    ClosedNodeHasChildren { step: usize },
    ChildDepth { step: usize },
    TreeStepOutOfRange { step: usize },
    /// `n_subgoals_after = 0` must coincide with a closed node.
    ClosedMismatch { step: usize },
    ChildCountMismatch { step: usize, expected: usize, found: usize },
    OpenLeafInCompleteProof { step: usize },
    StepNotInTree { step: usize },
    EmptyLemmaName,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyCompleteProof => write!(f, "empty complete proof"),
            Violation::EmptyTactics { step } => write!(f, "step {step} has no tactics"),
            Violation::ClosedNodeHasChildren { step } => {
                write!(f, "closed node has children (step {step})")
            }
            Violation::ChildDepth { step } => {
                write!(f, "child depth is not parent depth + 1 (step {step})")
            }
            Violation::TreeStepOutOfRange { step } => {
                write!(f, "tree refers to missing step {step}")
            }
            Violation::ClosedMismatch { step } => write!(
                f,
                "step {step}: zero subgoals must coincide with a closed node"
            ),
            Violation::ChildCountMismatch {
                step,
                expected,
                found,
            } => write!(
                f,
                "step {step}: {found} children in tree but {expected} subgoals recorded"
            ),
            Violation::OpenLeafInCompleteProof { step } => {
                write!(f, "open leaf at step {step} in a finished proof")
            }
            Violation::StepNotInTree { step } => write!(f, "step {step} does not appear in the tree"),
            Violation::EmptyLemmaName => write!(f, "empty lemma name"),
        }
    }
}

/// Collect every invariant violation of a trace. An empty list means the
/// trace is accepted by all extractors.
pub fn validate_trace(trace: &ProofTrace) -> Vec<Violation> {
    let mut out = Vec::new();
    if trace.lemma_name.is_empty() {
        out.push(Violation::EmptyLemmaName);
    }
    if trace.complete && trace.steps.is_empty() {
        out.push(Violation::EmptyCompleteProof);
    }
    for (i, s) in trace.steps.iter().enumerate() {
        if s.tactics.is_empty() {
            out.push(Violation::EmptyTactics { step: i });
        }
    }
    let Some(tree) = &trace.tree else {
        return out;
    };
    let mut seen = vec![false; trace.steps.len()];
    fn check(
        node: &TreeNode,
        trace: &ProofTrace,
        seen: &mut [bool],
        out: &mut Vec<Violation>,
    ) {
        if node.closed && !node.children.is_empty() {
            out.push(Violation::ClosedNodeHasChildren { step: node.step });
        }
        for c in &node.children {
            if c.depth != node.depth + 1 {
                out.push(Violation::ChildDepth { step: c.step });
            }
        }
        match trace.steps.get(node.step) {
            None => out.push(Violation::TreeStepOutOfRange { step: node.step }),
            Some(step) => {
                seen[node.step] = true;
                if let Some(n) = step.n_subgoals_after {
                    if (n == 0) != node.closed {
                        out.push(Violation::ClosedMismatch { step: node.step });
                    }
                    let found = node.children.len();
                    if found > n || (trace.complete && found != n) {
                        out.push(Violation::ChildCountMismatch {
                            step: node.step,
                            expected: n,
                            found,
                        });
                    }
                }
                if trace.complete && node.children.is_empty() && !node.closed {
                    out.push(Violation::OpenLeafInCompleteProof { step: node.step });
                }
            }
        }
        for c in &node.children {
            check(c, trace, seen, out);
        }
    }
    if tree.root.depth != 1 {
        out.push(Violation::ChildDepth {
            step: tree.root.step,
        });
    }
    check(&tree.root, trace, &mut seen, &mut out);
    for (i, s) in seen.iter().enumerate() {
        if !s {
            out.push(Violation::StepNotInTree { step: i });
        }
    }
    out
}

/// Symbol namespaces with their own code sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Namespace {
    Tactic,
    Type,
    TopSymbol,
    Lemma,
}

impl Namespace {
    pub const ALL: [Namespace; 4] = [
        Namespace::Tactic,
        Namespace::Type,
        Namespace::TopSymbol,
        Namespace::Lemma,
    ];

    /// First code handed out in this namespace. Lemma codes start after
    /// the reserved argument-kind codes `no = 0`, `Hyp = 1`, `IH = 2`.
    pub fn base(self) -> u64 {
        match self {
            Namespace::Lemma => 3,
            _ => 1,
        }
    }
}

/// Append-only bijection between symbols and consecutive integer codes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolTable {
    symbols: Vec<String>,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl SymbolTable {
    fn from_symbols(symbols: Vec<String>) -> Self {
        let index = symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        SymbolTable { symbols, index }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }
}

/// The four code tables (tactic, type, top symbol, lemma), each assigning
/// consecutive integers in order of first appearance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolTables {
    tables: [SymbolTable; 4],
}

fn slot(ns: Namespace) -> usize {
    match ns {
        Namespace::Tactic => 0,
        Namespace::Type => 1,
        Namespace::TopSymbol => 2,
        Namespace::Lemma => 3,
    }
}

impl SymbolTables {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, ns: Namespace, symbol: &str) -> u64 {
        let t = &mut self.tables[slot(ns)];
        let i = match t.index.get(symbol) {
            Some(&i) => i,
            None => {
                t.symbols.push(symbol.to_string());
                t.index.insert(symbol.to_string(), t.symbols.len() - 1);
                t.symbols.len() - 1
            }
        };
        ns.base() + i as u64
    }

    pub fn code(&self, ns: Namespace, symbol: &str) -> Option<u64> {
        self.tables[slot(ns)]
            .index
            .get(symbol)
            .map(|&i| ns.base() + i as u64)
    }

    pub fn symbol(&self, ns: Namespace, code: u64) -> Option<&str> {
        let i = code.checked_sub(ns.base())? as usize;
        self.tables[slot(ns)].symbols.get(i).map(String::as_str)
    }

    pub fn table(&self, ns: Namespace) -> &SymbolTable {
        &self.tables[slot(ns)]
    }

    pub fn is_empty(&self) -> bool {
        self.tables.iter().all(SymbolTable::is_empty)
    }

    /// Intern every symbol a trace mentions, in order of appearance.
    pub fn intern_trace(&mut self, trace: &ProofTrace) {
        for step in &trace.steps {
            for t in &step.tactics {
                self.intern(Namespace::Tactic, &t.name);
            }
            for t in &step.tactics {
                for a in &t.args {
                    if let Some(ty) = &a.arg_type {
                        self.intern(Namespace::Type, ty);
                    }
                }
                // `none` fills argument cells of tactics with fewer than two arguments
                if t.args.len() < 2 {
                    self.intern(Namespace::Type, crate::features::NONE_TYPE);
                }
            }
            for t in &step.tactics {
                for a in &t.args {
                    if let ArgKind::ExternalLemma(l) = &a.kind {
                        self.intern(Namespace::Lemma, l);
                    }
                }
            }
            if let Some(top) = &step.goal_top_symbol {
                self.intern(Namespace::TopSymbol, top);
            }
        }
    }
}

/// Serialized form: one symbol list per namespace, in code order.
#[derive(Serialize, Deserialize)]
struct SymbolTablesRepr {
    tactic: Vec<String>,
    #[serde(rename = "type")]
    ty: Vec<String>,
    top_symbol: Vec<String>,
    lemma: Vec<String>,
}

impl Serialize for SymbolTables {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SymbolTablesRepr {
            tactic: self.tables[0].symbols.clone(),
            ty: self.tables[1].symbols.clone(),
            top_symbol: self.tables[2].symbols.clone(),
            lemma: self.tables[3].symbols.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymbolTables {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = SymbolTablesRepr::deserialize(d)?;
        for list in [&r.tactic, &r.ty, &r.top_symbol, &r.lemma] {
            let distinct: BTreeSet<&String> = list.iter().collect();
            if distinct.len() != list.len() {
                return Err(serde::de::Error::custom("duplicate symbol in table"));
            }
        }
        Ok(SymbolTables {
            tables: [
                SymbolTable::from_symbols(r.tactic),
                SymbolTable::from_symbols(r.ty),
                SymbolTable::from_symbols(r.top_symbol),
                SymbolTable::from_symbols(r.lemma),
            ],
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Goal,
    Tactic,
    Tree,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::Goal, Level::Tactic, Level::Tree];

    pub fn as_str(self) -> &'static str {
        match self {
            Level::Goal => "goal",
            Level::Tactic => "tactic",
            Level::Tree => "tree",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Level {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "goal" => Ok(Level::Goal),
            "tactic" => Ok(Level::Tactic),
            "tree" => Ok(Level::Tree),
            _ => Err(ConfigError::Invalid {
                key: "level".into(),
                value: s.into(),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    KMeans,
    GaussianMixture,
    FarthestFirst,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [
        Algorithm::KMeans,
        Algorithm::GaussianMixture,
        Algorithm::FarthestFirst,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::KMeans => "kmeans",
            Algorithm::GaussianMixture => "gaussian",
            Algorithm::FarthestFirst => "farthest-first",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "kmeans" | "k-means" => Ok(Algorithm::KMeans),
            "gaussian" | "gmm" | "em" | "gaussian-mixture" => Ok(Algorithm::GaussianMixture),
            "farthest-first" | "farthestfirst" | "ff" => Ok(Algorithm::FarthestFirst),
            _ => Err(ConfigError::Invalid {
                key: "algorithm".into(),
                value: s.into(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub algorithm: Algorithm,
    pub level: Level,
    pub granularity: u8,
    pub frequency_param: u8,
    pub runs: usize,
    pub master_seed: u64,
    pub proximity_threshold: f64,
    pub pca_min_dim: usize,
    pub pca: bool,
    pub variance_target: f64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            algorithm: Algorithm::KMeans,
            level: Level::Goal,
            granularity: 3,
            frequency_param: 1,
            runs: 200,
            master_seed: 0,
            proximity_threshold: 0.5,
            pca_min_dim: 15,
            pca: true,
            variance_target: 0.95,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |key: &str, value: String| {
            Err(ConfigError::Invalid {
                key: key.into(),
                value,
            })
        };
        if !(1..=5).contains(&self.granularity) {
            return bad("granularity", self.granularity.to_string());
        }
        if !(1..=3).contains(&self.frequency_param) {
            return bad("frequency", self.frequency_param.to_string());
        }
        if self.runs == 0 {
            return bad("runs", "0".into());
        }
        if !(-1.0..=1.0).contains(&self.proximity_threshold) {
            return bad("proximity_threshold", self.proximity_threshold.to_string());
        }
        if !(self.variance_target > 0.0 && self.variance_target <= 1.0) {
            return bad("variance_target", self.variance_target.to_string());
        }
        Ok(())
    }

    /// Apply one `key=value` override.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let invalid = || ConfigError::Invalid {
            key: key.into(),
            value: value.into(),
        };
        match key {
            "algorithm" => self.algorithm = value.parse()?,
            "level" => self.level = value.parse()?,
            "granularity" | "g" => self.granularity = value.parse().map_err(|_| invalid())?,
            "frequency" | "f" => self.frequency_param = value.parse().map_err(|_| invalid())?,
            "runs" => self.runs = value.parse().map_err(|_| invalid())?,
            "seed" | "master_seed" => self.master_seed = value.parse().map_err(|_| invalid())?,
            "proximity_threshold" => {
                self.proximity_threshold = value.parse().map_err(|_| invalid())?
            }
            "pca_min_dim" => self.pca_min_dim = value.parse().map_err(|_| invalid())?,
            "pca" => self.pca = value.parse().map_err(|_| invalid())?,
            "variance_target" => self.variance_target = value.parse().map_err(|_| invalid())?,
            _ => return Err(ConfigError::UnknownKey(key.into())),
        }
        Ok(())
    }

    /// Apply a `key=value` document (`#` comments, blank lines ignored).
    pub fn apply_config_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or(ConfigError::Syntax { line: i + 1 })?;
            self.set(k.trim(), v.trim())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterEntry {
    pub lemmas: BTreeSet<String>,
    pub frequency_pct: f64,
}

/// Frequency-annotated lemma groupings, sorted by descending frequency.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterReport {
    pub entries: Vec<ClusterEntry>,
    pub config: Option<EngineConfig>,
}

impl ClusterReport {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Does some entry contain every lemma in `names`?
    pub fn has_cluster_with<S: AsRef<str>>(&self, names: &[S]) -> bool {
        self.entries
            .iter()
            .any(|e| names.iter().all(|n| e.lemmas.contains(n.as_ref())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn step(top: &str, tactic: &str, n: usize) -> ProofStep {
        ProofStep {
            goal_top_symbol: Some(top.into()),
            tactics: vec![TacticApp::new(tactic, vec![])],
            n_subgoals_after: Some(n),
        }
    }

    fn app_nil_l() -> ProofTrace {
        let steps = vec![
            ProofStep {
                goal_top_symbol: Some("forall".into()),
                tactics: vec![TacticApp::new(
                    "intro",
                    vec![Arg::new("list", ArgKind::None)],
                )],
                n_subgoals_after: Some(1),
            },
            ProofStep {
                goal_top_symbol: Some("equal".into()),
                tactics: vec![TacticApp::new("simpl", vec![]), TacticApp::new("trivial", vec![])],
                n_subgoals_after: Some(0),
            },
        ];
        let tree = ProofTree::from_steps(&steps);
        ProofTrace {
            lemma_name: "app_nil_l".into(),
            statement: "forall l : list A, [] ++ l = l".into(),
            library: "Initial".into(),
            steps,
            tree,
            complete: true,
        }
    }

    #[test]
    fn app_nil_l_is_valid() {
        assert_eq!(validate_trace(&app_nil_l()), vec![]);
    }

    #[test]
    fn empty_complete_proof_is_flagged() {
        let mut t = app_nil_l();
        t.steps.clear();
        t.tree = None;
        let v = validate_trace(&t);
        assert_eq!(v, vec![Violation::EmptyCompleteProof]);
        assert_eq!(v[0].to_string(), "empty complete proof");
    }

    #[test]
    fn closed_node_with_children_is_flagged() {
        let mut t = app_nil_l();
        let tree = t.tree.as_mut().unwrap();
        tree.root.closed = true;
        let v = validate_trace(&t);
        assert!(v.contains(&Violation::ClosedNodeHasChildren { step: 0 }));
        assert!(v
            .iter()
            .any(|v| v.to_string().contains("closed node has children")));
    }

    #[test]
    fn tree_from_steps_follows_first_open_goal() {
        // elim (2) ; rewrite (0) ; move (1) ; rewrite (0)
        let steps = vec![
            step("equal", "elim", 2),
            step("equal", "rewrite", 0),
            step("forall", "move =>", 1),
            step("equal", "rewrite", 0),
        ];
        let tree = ProofTree::from_steps(&steps).unwrap();
        let levels = tree.levels();
        assert_eq!(levels.len(), 3);
        assert_eq!(levels[1].iter().map(|n| n.step).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(levels[2][0].step, 3);
        assert!(levels[2][0].closed);
    }

    #[test]
    fn tree_from_steps_rejects_leftover_steps() {
        let steps = vec![step("equal", "trivial", 0), step("equal", "trivial", 0)];
        assert!(ProofTree::from_steps(&steps).is_none());
    }

    #[test]
    fn interning_is_idempotent_and_contiguous() {
        let mut s = SymbolTables::new();
        assert_eq!(s.intern(Namespace::Tactic, "elim"), 1);
        assert_eq!(s.intern(Namespace::Tactic, "rewrite"), 2);
        assert_eq!(s.intern(Namespace::Tactic, "elim"), 1);
        assert_eq!(s.intern(Namespace::Lemma, "big_nil"), 3);
        assert_eq!(s.intern(Namespace::Lemma, "mulnC"), 4);
        assert_eq!(s.code(Namespace::Tactic, "case"), None);
        assert_eq!(s.symbol(Namespace::Lemma, 4), Some("mulnC"));
        assert_eq!(s.symbol(Namespace::Lemma, 2), None);
    }

    #[test]
    fn symbol_tables_serde_round_trip() {
        let mut s = SymbolTables::new();
        s.intern_trace(&app_nil_l());
        let json = serde_json::to_string(&s).unwrap();
        let back: SymbolTables = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.code(Namespace::Tactic, "simpl"), Some(2));
    }

    #[test]
    fn config_validation() {
        let mut c = EngineConfig::default();
        assert!(c.validate().is_ok());
        c.granularity = 6;
        assert!(c.validate().is_err());
        c.granularity = 5;
        c.frequency_param = 0;
        assert!(c.validate().is_err());
        c.frequency_param = 3;
        c.proximity_threshold = 1.5;
        assert!(c.validate().is_err());
    }

    #[test]
    fn config_text_overrides() {
        let mut c = EngineConfig::default();
        c.apply_config_text("# comment\nalgorithm = gaussian\ng=5\nseed=42\n\nlevel=tactic")
            .unwrap();
        assert_eq!(c.algorithm, Algorithm::GaussianMixture);
        assert_eq!(c.granularity, 5);
        assert_eq!(c.master_seed, 42);
        assert_eq!(c.level, Level::Tactic);
        assert!(c.apply_config_text("bogus=1").is_err());
        assert!(c.apply_config_text("novalue").is_err());
    }
}
