//! Goal-, tactic- and tree-level feature tables, their numeric encoding and
//! symbolic agreement between lemmas.
//!
//! A table is a grid of symbolic [`Cell`]s. Encoding maps every cell to one
//! number through the corpus [`SymbolTables`]: counts stay as they are,
//! symbols become their codes, multi-element cells concatenate the decimal
//! digits of their elements and type cells are negated. The grid is then
//! flattened row by row.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::FeatureError;
use crate::model::{ArgKind, Level, Namespace, ProofStep, ProofTrace, SymbolTables, TacticApp};

/// Type recorded for tactics that take no argument.
pub const NONE_TYPE: &str = "none";

/// Magnitude cap for encoded cells.
pub const VALUE_CAP: f64 = 1e12;

/// Number of goal rows (g1..g5) and tree levels (td1..td5).
pub const TRACKED_ROWS: usize = 5;

pub const GOAL_COLUMNS: usize = 6;
pub const TACTIC_COLUMNS: usize = 5;

const ARG_NO: u64 = 0;
const ARG_HYP: u64 = 1;
const ARG_IH: u64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UniverseMode {
    PlainCoq,
    SSReflect,
}

/// The tactics that get their own row in tactic tables and their own column
/// in tree tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TacticUniverse {
    pub mode: UniverseMode,
    pub tactics: Vec<String>,
}

const SSREFLECT_TACTICS: [&str; 6] = ["move =>", "move :", "move/", "rewrite", "case", "elim"];
const PLAIN_COQ_TACTICS: [&str; 10] = [
    "intro", "intros", "apply", "rewrite", "simpl", "trivial", "auto", "induction", "destruct",
    "case",
];

impl TacticUniverse {
    pub fn ssreflect() -> Self {
        TacticUniverse {
            mode: UniverseMode::SSReflect,
            tactics: SSREFLECT_TACTICS.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn plain_coq() -> Self {
        TacticUniverse {
            mode: UniverseMode::PlainCoq,
            tactics: PLAIN_COQ_TACTICS.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn for_mode(mode: UniverseMode) -> Self {
        match mode {
            UniverseMode::PlainCoq => Self::plain_coq(),
            UniverseMode::SSReflect => Self::ssreflect(),
        }
    }

    /// SSReflect if any proof uses a `move` form, plain Coq otherwise.
    pub fn detect(traces: &[ProofTrace]) -> Self {
        let ssr = traces.iter().any(|t| {
            t.steps
                .iter()
                .flat_map(|s| &s.tactics)
                .any(|a| a.name.starts_with("move"))
        });
        if ssr {
            Self::ssreflect()
        } else {
            Self::plain_coq()
        }
    }

    pub fn len(&self) -> usize {
        self.tactics.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tactics.is_empty()
    }
}

/// One element of an argument-kind cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KindItem {
    No,
    Hyp,
    Ih,
    Lemma(String),
}

/// Tree-level branching factor: the depth, then one subbranch count per
/// node of that depth, left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BranchingCode {
    pub level: usize,
    pub subbranch_counts: Vec<usize>,
}

impl BranchingCode {
    pub fn new(level: usize, subbranch_counts: Vec<usize>) -> Self {
        BranchingCode {
            level,
            subbranch_counts,
        }
    }

    /// Decimal digits of the code: level digit followed by one digit per branch.
    pub fn digits(&self) -> Result<String, FeatureError> {
        if !(1..=TRACKED_ROWS).contains(&self.level) {
            return Err(FeatureError::LevelOutOfRange(self.level));
        }
        let mut s = self.level.to_string();
        for &c in &self.subbranch_counts {
            if c > 9 {
                return Err(FeatureError::CountOverflow(c));
            }
            s.push(char::from(b'0' + c as u8));
        }
        Ok(s)
    }
}

/// Integer value of a branching code, e.g. `(2, [0, 1])` → 201.
pub fn encode_branching(code: &BranchingCode) -> Result<u64, FeatureError> {
    code.digits()?
        .parse()
        .map_err(|_| FeatureError::CountOverflow(code.subbranch_counts.len()))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cell {
    /// A `-` entry: the row or the tactic does not occur.
    Absent,
    Count(usize),
    Tactics(Vec<String>),
    Types(Vec<String>),
    Kinds(Vec<KindItem>),
    TopSymbols(Vec<String>),
    Branching(BranchingCode),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Absent => f.write_str("-"),
            Cell::Count(n) => write!(f, "{n}"),
            Cell::Tactics(v) => f.write_str(&v.join(";")),
            Cell::Types(v) | Cell::TopSymbols(v) => f.write_str(&v.join(",")),
            Cell::Kinds(v) => {
                let parts: Vec<String> = v
                    .iter()
                    .map(|k| match k {
                        KindItem::No => "no".to_string(),
                        KindItem::Hyp => "Hyp".to_string(),
                        KindItem::Ih => "IH".to_string(),
                        KindItem::Lemma(l) => l.clone(),
                    })
                    .collect();
                f.write_str(&parts.join(","))
            }
            Cell::Branching(b) => match b.digits() {
                Ok(d) => f.write_str(&d),
                Err(_) => f.write_str("?"),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureTable {
    pub level: Level,
    pub rows: usize,
    pub cols: usize,
    /// Row-major.
    pub cells: Vec<Cell>,
}

impl FeatureTable {
    fn absent(level: Level, rows: usize, cols: usize) -> Self {
        FeatureTable {
            level,
            rows,
            cols,
            cells: vec![Cell::Absent; rows * cols],
        }
    }

    pub fn cell(&self, row: usize, col: usize) -> &Cell {
        &self.cells[row * self.cols + col]
    }

    fn set(&mut self, row: usize, col: usize, c: Cell) {
        self.cells[row * self.cols + col] = c;
    }

    pub fn row(&self, row: usize) -> &[Cell] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub lemma_name: String,
    pub level: Level,
    pub values: Vec<f64>,
    /// Some cell hit the magnitude cap.
    pub saturated: bool,
}

/// Length of the flattened vector for a level.
pub fn vector_len(level: Level, universe_size: usize) -> usize {
    match level {
        Level::Goal => TRACKED_ROWS * GOAL_COLUMNS,
        Level::Tactic => universe_size * TACTIC_COLUMNS,
        Level::Tree => TRACKED_ROWS * (universe_size + 2),
    }
}

fn arg_types(args: &[&crate::model::Arg]) -> Cell {
    if args.is_empty() {
        return Cell::Types(vec![NONE_TYPE.to_string()]);
    }
    let known: Vec<String> = args.iter().filter_map(|a| a.arg_type.clone()).collect();
    if known.is_empty() {
        Cell::Absent
    } else {
        Cell::Types(known)
    }
}

fn arg_kinds(args: &[&crate::model::Arg]) -> Cell {
    let items: Vec<KindItem> = args
        .iter()
        .filter_map(|a| match &a.kind {
            ArgKind::None => None,
            ArgKind::Hyp => Some(KindItem::Hyp),
            ArgKind::Ih => Some(KindItem::Ih),
            ArgKind::ExternalLemma(l) => Some(KindItem::Lemma(l.clone())),
        })
        .collect();
    if items.is_empty() {
        Cell::Kinds(vec![KindItem::No])
    } else {
        Cell::Kinds(items)
    }
}

fn step_args(step: &ProofStep) -> Vec<&crate::model::Arg> {
    step.tactics.iter().flat_map(|t| &t.args).collect()
}

/// 5×6 table over the first five proof steps: tactics, number of tactics,
/// argument types, argument kinds, goal top symbol, generated subgoals.
pub fn extract_goal_table(trace: &ProofTrace) -> FeatureTable {
    let mut t = FeatureTable::absent(Level::Goal, TRACKED_ROWS, GOAL_COLUMNS);
    for (row, step) in trace.steps.iter().take(TRACKED_ROWS).enumerate() {
        let args = step_args(step);
        t.set(
            row,
            0,
            Cell::Tactics(step.tactics.iter().map(|a| a.name.clone()).collect()),
        );
        t.set(row, 1, Cell::Count(step.tactics.len()));
        t.set(row, 2, arg_types(&args));
        t.set(row, 3, arg_kinds(&args));
        if let Some(top) = &step.goal_top_symbol {
            t.set(row, 4, Cell::TopSymbols(vec![top.clone()]));
        }
        if let Some(n) = step.n_subgoals_after {
            t.set(row, 5, Cell::Count(n));
        }
    }
    t
}

/// |universe|×5 table: first argument type, remaining argument types,
/// argument kinds, top symbols where applied, number of applications.
/// Tactics outside the universe are ignored.
pub fn extract_tactic_table(trace: &ProofTrace, universe: &TacticUniverse) -> FeatureTable {
    let mut t = FeatureTable::absent(Level::Tactic, universe.len(), TACTIC_COLUMNS);
    for (row, name) in universe.tactics.iter().enumerate() {
        let apps: Vec<(&TacticApp, &ProofStep)> = trace
            .steps
            .iter()
            .flat_map(|s| s.tactics.iter().map(move |a| (a, s)))
            .filter(|(a, _)| &a.name == name)
            .collect();
        if apps.is_empty() {
            continue;
        }
        let args: Vec<&crate::model::Arg> = apps.iter().flat_map(|(a, _)| &a.args).collect();
        let first = match args.first() {
            None => Cell::Types(vec![NONE_TYPE.to_string()]),
            Some(a) => a
                .arg_type
                .clone()
                .map(|ty| Cell::Types(vec![ty]))
                .unwrap_or(Cell::Absent),
        };
        t.set(row, 0, first);
        t.set(row, 1, arg_types(args.get(1..).unwrap_or(&[])));
        t.set(row, 2, arg_kinds(&args));
        let tops: Vec<String> = apps
            .iter()
            .filter_map(|(_, s)| s.goal_top_symbol.clone())
            .collect();
        if !tops.is_empty() {
            t.set(row, 3, Cell::TopSymbols(tops));
        }
        t.set(row, 4, Cell::Count(apps.len()));
    }
    t
}

/// 5×(|universe|+2) table over tree depths 1..5. Per tactic column the
/// tracked parameter is the argument-kind list for `rewrite` and the
/// argument types otherwise; the last two columns are the branching code
/// and the number of branches closed at that depth.
pub fn extract_tree_table(
    trace: &ProofTrace,
    universe: &TacticUniverse,
) -> Result<FeatureTable, FeatureError> {
    let cols = universe.len() + 2;
    let mut t = FeatureTable::absent(Level::Tree, TRACKED_ROWS, cols);
    let Some(tree) = &trace.tree else {
        return Ok(t);
    };
    for (row, nodes) in tree.levels().into_iter().take(TRACKED_ROWS).enumerate() {
        for (col, name) in universe.tactics.iter().enumerate() {
            let apps: Vec<&TacticApp> = nodes
                .iter()
                .filter_map(|n| trace.steps.get(n.step))
                .flat_map(|s| &s.tactics)
                .filter(|a| &a.name == name)
                .collect();
            if apps.is_empty() {
                continue;
            }
            let args: Vec<&crate::model::Arg> = apps.iter().flat_map(|a| &a.args).collect();
            let cell = if name == "rewrite" {
                arg_kinds(&args)
            } else {
                arg_types(&args)
            };
            t.set(row, col, cell);
        }
        let code = BranchingCode::new(row + 1, nodes.iter().map(|n| n.children.len()).collect());
        code.digits()?;
        t.set(row, cols - 2, Cell::Branching(code));
        t.set(
            row,
            cols - 1,
            Cell::Count(nodes.iter().filter(|n| n.closed).count()),
        );
    }
    Ok(t)
}

pub fn extract_table(
    trace: &ProofTrace,
    level: Level,
    universe: &TacticUniverse,
) -> Result<FeatureTable, FeatureError> {
    Ok(match level {
        Level::Goal => extract_goal_table(trace),
        Level::Tactic => extract_tactic_table(trace, universe),
        Level::Tree => extract_tree_table(trace, universe)?,
    })
}

fn code_of(symbols: &SymbolTables, ns: Namespace, s: &str) -> u64 {
    symbols
        .code(ns, s)
        .unwrap_or_else(|| panic!("symbol {s:?} missing from the {ns:?} table; intern the corpus first"))
}

/// Parse a digit string, capping the magnitude. Returns the value and
/// whether it was capped.
fn digits_value(digits: &str) -> (f64, bool) {
    let v: f64 = digits.parse().unwrap_or(0.0);
    if v > VALUE_CAP {
        (VALUE_CAP, true)
    } else {
        (v, false)
    }
}

fn concat<I: IntoIterator<Item = u64>>(codes: I) -> String {
    codes.into_iter().map(|c| c.to_string()).collect()
}

/// Numeric value of one cell and whether it saturated.
///
/// Panics if a symbol of the cell was never interned in `symbols`.
pub fn encode_cell(cell: &Cell, symbols: &SymbolTables) -> (f64, bool) {
    match cell {
        Cell::Absent => (0.0, false),
        Cell::Count(n) => digits_value(&n.to_string()),
        Cell::Tactics(v) => {
            digits_value(&concat(v.iter().map(|s| code_of(symbols, Namespace::Tactic, s))))
        }
        Cell::TopSymbols(v) => {
            digits_value(&concat(v.iter().map(|s| code_of(symbols, Namespace::TopSymbol, s))))
        }
        Cell::Types(v) => {
            let (x, sat) =
                digits_value(&concat(v.iter().map(|s| code_of(symbols, Namespace::Type, s))));
            (-x, sat)
        }
        Cell::Kinds(v) => digits_value(&concat(v.iter().map(|k| match k {
            KindItem::No => ARG_NO,
            KindItem::Hyp => ARG_HYP,
            KindItem::Ih => ARG_IH,
            KindItem::Lemma(l) => code_of(symbols, Namespace::Lemma, l),
        }))),
        Cell::Branching(b) => match b.digits() {
            Ok(d) => digits_value(&d),
            Err(_) => (VALUE_CAP, true),
        },
    }
}

/// Flatten a table into its numeric vector, row by row.
pub fn encode_table(table: &FeatureTable, lemma_name: &str, symbols: &SymbolTables) -> FeatureVector {
    let mut saturated = false;
    let values = table
        .cells
        .iter()
        .map(|c| {
            let (v, s) = encode_cell(c, symbols);
            saturated |= s;
            v
        })
        .collect();
    FeatureVector {
        lemma_name: lemma_name.to_string(),
        level: table.level,
        values,
        saturated,
    }
}

/// Number of cells that agree symbolically, and the total cell count.
pub fn agreement(a: &FeatureTable, b: &FeatureTable) -> Result<(usize, usize), FeatureError> {
    if a.level != b.level || a.rows != b.rows || a.cols != b.cols {
        return Err(FeatureError::DimensionMismatch);
    }
    let matches = a.cells.iter().zip(&b.cells).filter(|(x, y)| x == y).count();
    Ok((matches, a.cells.len()))
}

/// Symbol tables over a whole corpus, in order of appearance.
pub fn build_symbols(traces: &[ProofTrace]) -> SymbolTables {
    let mut symbols = SymbolTables::new();
    for t in traces {
        symbols.intern_trace(t);
    }
    symbols
}

/// Encode every trace at one level with already-built symbol tables.
pub fn extract_vectors(
    traces: &[ProofTrace],
    level: Level,
    universe: &TacticUniverse,
    symbols: &SymbolTables,
) -> Result<Vec<FeatureVector>, FeatureError> {
    traces
        .iter()
        .map(|t| {
            let table = extract_table(t, level, universe)?;
            Ok(encode_table(&table, &t.lemma_name, symbols))
        })
        .collect()
}

/// Build the symbol tables of a corpus and encode it at one level.
pub fn extract_corpus(
    traces: &[ProofTrace],
    level: Level,
    universe: &TacticUniverse,
) -> Result<(Vec<FeatureVector>, SymbolTables), FeatureError> {
    let symbols = build_symbols(traces);
    let vectors = extract_vectors(traces, level, universe, &symbols)?;
    Ok((vectors, symbols))
}
