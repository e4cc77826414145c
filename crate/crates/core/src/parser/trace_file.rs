//! Reader and writer for the enriched trace format.
//!
//! ```text
//! library Initial
//! lemma mult_n_0
//! statement forall n : nat, 0 = n * 0
//! step top=forall subgoals=2
//!   tactic induction arg nat:none
//! step top=equal subgoals=0
//!   tactic simpl
//!   tactic trivial
//! step top=equal subgoals=0
//!   tactic simpl
//!   tactic trivial
//! tree (1 (2, closed) (3, closed))
//! qed
//! ```
//!
//! `-` marks an absent value (`top=-`, `subgoals=-`, `arg -:hyp`, `tree -`).
//! Tree node numbers are 1-based step indices. When a lemma has no `tree`
//! line the tree is rebuilt from the subgoal counts.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::ParseError;
use crate::model::{
    validate_trace, Arg, ArgKind, ProofStep, ProofTrace, ProofTree, TacticApp, TreeNode,
};

fn format_err(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError::Format {
        line,
        reason: reason.into(),
    }
}

struct Pending {
    name: String,
    statement: Option<String>,
    steps: Vec<ProofStep>,
    tree_text: String,
    tree_line: usize,
}

pub fn read_trace_file(path: impl AsRef<Path>) -> Result<Vec<ProofTrace>, ParseError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_traces(&text)
}

/// Parse a trace document. Every trace is validated; the first violation
/// rejects the whole document.
pub fn parse_traces(text: &str) -> Result<Vec<ProofTrace>, ParseError> {
    let mut library: Option<String> = None;
    let mut current: Option<Pending> = None;
    let mut out: Vec<ProofTrace> = Vec::new();
    let mut names = HashSet::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "library" => {
                if current.is_some() {
                    return Err(format_err(line_no, "library inside a lemma block"));
                }
                if rest.is_empty() {
                    return Err(format_err(line_no, "missing library name"));
                }
                library = Some(rest.to_string());
            }
            "lemma" => {
                if library.is_none() {
                    return Err(format_err(line_no, "lemma before `library` header"));
                }
                if current.is_some() {
                    return Err(format_err(line_no, "previous lemma not terminated"));
                }
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(format_err(line_no, "lemma needs a single-word name"));
                }
                current = Some(Pending {
                    name: rest.to_string(),
                    statement: None,
                    steps: Vec::new(),
                    tree_text: String::new(),
                    tree_line: 0,
                });
            }
            "statement" => {
                let p = current
                    .as_mut()
                    .ok_or_else(|| format_err(line_no, "statement outside a lemma"))?;
                p.statement = Some(rest.to_string());
            }
            "step" => {
                let p = current
                    .as_mut()
                    .ok_or_else(|| format_err(line_no, "step outside a lemma"))?;
                p.steps.push(parse_step_header(rest, line_no)?);
            }
            "tactic" => {
                let p = current
                    .as_mut()
                    .ok_or_else(|| format_err(line_no, "tactic outside a lemma"))?;
                let step = p
                    .steps
                    .last_mut()
                    .ok_or_else(|| format_err(line_no, "tactic before any step"))?;
                step.tactics.push(parse_tactic_line(rest, line_no)?);
            }
            "tree" => {
                let p = current
                    .as_mut()
                    .ok_or_else(|| format_err(line_no, "tree outside a lemma"))?;
                if p.tree_text.is_empty() {
                    p.tree_line = line_no;
                }
                p.tree_text.push(' ');
                p.tree_text.push_str(rest);
            }
            "qed" | "admitted" => {
                let p = current
                    .take()
                    .ok_or_else(|| format_err(line_no, "terminator outside a lemma"))?;
                let trace = finish(p, library.clone().unwrap_or_default(), key == "qed")?;
                if !names.insert(trace.lemma_name.clone()) {
                    return Err(ParseError::DuplicateLemma(trace.lemma_name));
                }
                if let Some(v) = validate_trace(&trace).into_iter().next() {
                    return Err(ParseError::Invalid {
                        lemma: trace.lemma_name,
                        violation: v,
                    });
                }
                out.push(trace);
            }
            other => return Err(format_err(line_no, format!("unknown directive {other:?}"))),
        }
    }
    if let Some(p) = current {
        return Err(format_err(
            text.lines().count(),
            format!("lemma {} is not terminated by qed/admitted", p.name),
        ));
    }
    Ok(out)
}

fn finish(p: Pending, library: String, complete: bool) -> Result<ProofTrace, ParseError> {
    let tree_src = p.tree_text.trim();
    let tree = if tree_src.is_empty() {
        ProofTree::from_steps(&p.steps)
    } else if tree_src == "-" {
        None
    } else {
        Some(parse_tree(tree_src, p.tree_line)?)
    };
    Ok(ProofTrace {
        lemma_name: p.name,
        statement: p.statement.unwrap_or_default(),
        library,
        steps: p.steps,
        tree,
        complete,
    })
}

fn parse_step_header(rest: &str, line: usize) -> Result<ProofStep, ParseError> {
    let mut top = None;
    let mut subgoals = None;
    let mut seen_top = false;
    let mut seen_sub = false;
    for field in rest.split_whitespace() {
        match field.split_once('=') {
            Some(("top", v)) => {
                seen_top = true;
                if v.is_empty() {
                    return Err(format_err(line, "empty top symbol"));
                }
                top = (v != "-").then(|| v.to_string());
            }
            Some(("subgoals", v)) => {
                seen_sub = true;
                if v != "-" {
                    let n: i64 = v
                        .parse()
                        .map_err(|_| format_err(line, format!("bad subgoal count {v:?}")))?;
                    if n < 0 {
                        return Err(format_err(line, format!("negative subgoal count {n}")));
                    }
                    subgoals = Some(n as usize);
                }
            }
            _ => return Err(format_err(line, format!("unexpected step field {field:?}"))),
        }
    }
    if !seen_top || !seen_sub {
        return Err(format_err(line, "step needs top=<symbol> and subgoals=<n>"));
    }
    Ok(ProofStep {
        goal_top_symbol: top,
        tactics: Vec::new(),
        n_subgoals_after: subgoals,
    })
}

fn parse_tactic_line(rest: &str, line: usize) -> Result<TacticApp, ParseError> {
    let words: Vec<&str> = rest.split_whitespace().collect();
    let name_end = words.iter().position(|w| *w == "arg").unwrap_or(words.len());
    if name_end == 0 {
        return Err(format_err(line, "tactic needs a name"));
    }
    let name = words[..name_end].join(" ");
    let mut args = Vec::new();
    let mut i = name_end;
    while i < words.len() {
        if words[i] != "arg" {
            return Err(format_err(line, format!("expected `arg`, found {:?}", words[i])));
        }
        let item = words
            .get(i + 1)
            .ok_or_else(|| format_err(line, "`arg` without a value"))?;
        args.push(parse_arg(item, line)?);
        i += 2;
    }
    Ok(TacticApp { name, args })
}

fn parse_arg(item: &str, line: usize) -> Result<Arg, ParseError> {
    let mut parts = item.splitn(3, ':');
    let ty = parts.next().unwrap_or("");
    let kind = parts
        .next()
        .ok_or_else(|| format_err(line, format!("arg {item:?} needs <type>:<kind>")))?;
    let lemma = parts.next();
    if ty.is_empty() {
        return Err(format_err(line, format!("arg {item:?} has an empty type")));
    }
    let kind = match (kind, lemma) {
        ("none", None) => ArgKind::None,
        ("hyp", None) => ArgKind::Hyp,
        ("ih", None) => ArgKind::Ih,
        ("lemma", Some(l)) if !l.is_empty() => ArgKind::ExternalLemma(l.to_string()),
        ("lemma", _) => return Err(format_err(line, "external lemma needs a name")),
        _ => return Err(format_err(line, format!("bad argument kind in {item:?}"))),
    };
    Ok(Arg {
        arg_type: (ty != "-").then(|| ty.to_string()),
        kind,
    })
}

/// `node := "(" INT ["," ("closed" | "open")] node* ")"`
fn parse_tree(item: &str, line: usize) -> Result<ProofTree, ParseError> {
    struct P<'a> {
        s: &'a [u8],
        i: usize,
        line: usize,
    }
    impl P<'_> {
        fn ws(&mut self) {
            while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
                self.i += 1;
            }
        }
        fn eat(&mut self, c: u8) -> bool {
            self.ws();
            if self.s.get(self.i) == Some(&c) {
                self.i += 1;
                true
            } else {
                false
            }
        }
        fn word(&mut self) -> &str {
            self.ws();
            let start = self.i;
            while self.i < self.s.len() && self.s[self.i].is_ascii_alphanumeric() {
                self.i += 1;
            }
            std::str::from_utf8(&self.s[start..self.i]).unwrap_or("")
        }
        fn node(&mut self, depth: usize) -> Result<TreeNode, ParseError> {
            if !self.eat(b'(') {
                return Err(format_err(self.line, "tree: expected `(`"));
            }
            let line = self.line;
            let idx: usize = self
                .word()
                .parse()
                .map_err(|_| format_err(line, "tree: expected a step number"))?;
            if idx == 0 {
                return Err(format_err(line, "tree: step numbers start at 1"));
            }
            let mut closed = false;
            if self.eat(b',') {
                match self.word() {
                    "closed" => closed = true,
                    "open" => {}
                    w => return Err(format_err(line, format!("tree: unknown node flag {w:?}"))),
                }
            }
            let mut children = Vec::new();
            loop {
                self.ws();
                match self.s.get(self.i) {
                    Some(b'(') => children.push(self.node(depth + 1)?),
                    Some(b')') => {
                        self.i += 1;
                        break;
                    }
                    _ => return Err(format_err(line, "tree: unbalanced parentheses")),
                }
            }
            Ok(TreeNode {
                step: idx - 1,
                depth,
                closed,
                children,
            })
        }
    }
    let mut p = P {
        s: item.as_bytes(),
        i: 0,
        line,
    };
    let root = p.node(1)?;
    p.ws();
    if p.i != p.s.len() {
        return Err(format_err(line, "tree: trailing text after the root node"));
    }
    Ok(ProofTree { root })
}

fn write_tree(node: &TreeNode, out: &mut String) {
    let _ = write!(out, "({}", node.step + 1);
    if node.closed {
        out.push_str(", closed");
    }
    for c in &node.children {
        out.push(' ');
        write_tree(c, out);
    }
    out.push(')');
}

/// Render traces in the trace format. `parse_traces` of the result yields
/// the same traces.
pub fn write_traces(traces: &[ProofTrace]) -> String {
    let mut out = String::new();
    let mut library: Option<&str> = None;
    for t in traces {
        if library != Some(t.library.as_str()) {
            let _ = writeln!(out, "library {}", t.library);
            library = Some(&t.library);
        }
        let _ = writeln!(out, "lemma {}", t.lemma_name);
        let _ = writeln!(out, "statement {}", t.statement);
        for s in &t.steps {
            let top = s.goal_top_symbol.as_deref().unwrap_or("-");
            let sub = s
                .n_subgoals_after
                .map(|n| n.to_string())
                .unwrap_or_else(|| "-".into());
            let _ = writeln!(out, "step top={top} subgoals={sub}");
            for tac in &s.tactics {
                out.push_str("  tactic ");
                out.push_str(&tac.name);
                for a in &tac.args {
                    let ty = a.arg_type.as_deref().unwrap_or("-");
                    let kind = match &a.kind {
                        ArgKind::None => "none".to_string(),
                        ArgKind::Hyp => "hyp".to_string(),
                        ArgKind::Ih => "ih".to_string(),
                        ArgKind::ExternalLemma(l) => format!("lemma:{l}"),
                    };
                    let _ = write!(out, " arg {ty}:{kind}");
                }
                out.push('\n');
            }
        }
        match &t.tree {
            Some(tree) => {
                out.push_str("tree ");
                write_tree(&tree.root, &mut out);
                out.push('\n');
            }
            None => out.push_str("tree -\n"),
        }
        out.push_str(if t.complete { "qed\n" } else { "admitted\n" });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const MULT_N_0: &str = "library Initial
lemma mult_n_0
statement forall n : nat, 0 = n * 0
step top=forall subgoals=2
  tactic induction arg nat:none
step top=equal subgoals=0
  tactic simpl
  tactic trivial
step top=equal subgoals=0
  tactic simpl
  tactic trivial
qed
";

    #[test]
    fn mult_n_0_has_two_branches() {
        let traces = parse_traces(MULT_N_0).unwrap();
        assert_eq!(traces.len(), 1);
        let t = &traces[0];
        assert_eq!(t.steps.len(), 3);
        let tree = t.tree.as_ref().unwrap();
        assert_eq!(tree.root.children.len(), 2);
        assert!(tree.root.children.iter().all(|c| c.closed));
        assert_eq!(t.library, "Initial");
        assert!(t.complete);
    }

    #[test]
    fn explicit_tree_matches_derived_one() {
        let explicit = MULT_N_0.replace("qed", "tree (1 (2, closed)\ntree (3, closed))\nqed");
        assert_eq!(parse_traces(&explicit).unwrap(), parse_traces(MULT_N_0).unwrap());
    }

    #[test]
    fn duplicate_lemma() {
        let body = MULT_N_0.replace("mult_n_0", "foo");
        let twice = format!("{body}{}", body.replace("library Initial\n", ""));
        match parse_traces(&twice) {
            Err(ParseError::DuplicateLemma(n)) => assert_eq!(n, "foo"),
            other => panic!("expected DuplicateLemma, got {other:?}"),
        }
    }

    #[test]
    fn negative_subgoal_count() {
        let bad = MULT_N_0.replace("subgoals=2", "subgoals=-1");
        match parse_traces(&bad) {
            Err(ParseError::Format { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected FormatError, got {other:?}"),
        }
    }

    #[test]
    fn invalid_tree_is_rejected() {
        let bad = MULT_N_0.replace("qed", "tree (1, closed (2, closed) (3, closed))\nqed");
        assert!(matches!(
            parse_traces(&bad),
            Err(ParseError::Invalid { .. })
        ));
    }

    #[test]
    fn format_errors() {
        for (doc, what) in [
            ("lemma a\nqed\n", "no library"),
            ("library L\nlemma a\nstep top=x\nqed\n", "missing subgoals"),
            ("library L\nlemma a\nstep top=x subgoals=0\n  tactic t arg nat\nqed\n", "arg kind"),
            ("library L\nlemma a\nstep top=x subgoals=0\n  tactic t arg nat:lemma\nqed\n", "lemma name"),
            ("library L\nlemma a\nstep top=x subgoals=0\n  tactic t\n", "unterminated"),
            ("library L\nlemma a\nbogus\nqed\n", "directive"),
            ("library L\nlemma a\nstep top=x subgoals=0\n  tactic t\ntree (1, closed\nqed\n", "tree parens"),
        ] {
            assert!(
                matches!(parse_traces(doc), Err(ParseError::Format { .. })),
                "{what}"
            );
        }
    }

    #[test]
    fn absent_fields_round_trip() {
        let doc = "library L
lemma a
statement P
step top=- subgoals=-
  tactic rewrite arg -:lemma:foo arg -:ih
tree -
admitted
";
        let t = parse_traces(doc).unwrap();
        assert_eq!(t[0].steps[0].goal_top_symbol, None);
        assert_eq!(t[0].tree, None);
        assert_eq!(write_traces(&t), doc);
    }
}
