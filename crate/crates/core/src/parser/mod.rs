//! Proof-script and trace-file input.

mod script;
mod trace_file;

pub use script::{
    parse_script, parse_tactic, tokenize, Keyword, ScriptProof, ScriptWarning, Sentence, Token,
    TokenKind,
};
pub use trace_file::{parse_traces, read_trace_file, write_traces};

use crate::error::ParseError;
use crate::model::{Arg, ProofStep, ProofTrace, ProofTree, TacticApp};

/// Combine a parsed script with an optional sidecar trace of the same lemma.
///
/// Tactic names and argument lists come from the script. Goal-level data
/// (top symbols, subgoal counts, argument types and kinds, the tree) come
/// from the sidecar when present and are left absent otherwise.
pub fn merge_script_into_trace(
    script: &ScriptProof,
    partial: Option<&ProofTrace>,
    library: &str,
) -> Result<ProofTrace, ParseError> {
    let Some(side) = partial else {
        let steps = script
            .sentences
            .iter()
            .map(|s| ProofStep {
                goal_top_symbol: None,
                tactics: s.tactics.clone(),
                n_subgoals_after: None,
            })
            .collect();
        return Ok(ProofTrace {
            lemma_name: script.lemma_name.clone(),
            statement: script.statement.clone(),
            library: library.to_string(),
            steps,
            tree: None,
            complete: script.complete,
        });
    };

    if side.lemma_name != script.lemma_name {
        return Err(ParseError::NameMismatch {
            script: script.lemma_name.clone(),
            trace: side.lemma_name.clone(),
        });
    }
    if side.steps.len() != script.sentences.len() {
        return Err(ParseError::StepMismatch {
            lemma: script.lemma_name.clone(),
            script: script.sentences.len(),
            trace: side.steps.len(),
        });
    }
    let steps = script
        .sentences
        .iter()
        .zip(&side.steps)
        .map(|(sentence, known)| ProofStep {
            goal_top_symbol: known.goal_top_symbol.clone(),
            n_subgoals_after: known.n_subgoals_after,
            tactics: sentence
                .tactics
                .iter()
                .enumerate()
                .map(|(j, tac)| {
                    let known_tac = known.tactics.get(j);
                    TacticApp {
                        name: tac.name.clone(),
                        args: tac
                            .args
                            .iter()
                            .enumerate()
                            .map(|(m, a)| match known_tac.and_then(|k| k.args.get(m)) {
                                Some(k) => Arg {
                                    arg_type: k.arg_type.clone(),
                                    kind: k.kind.clone(),
                                },
                                None => a.clone(),
                            })
                            .collect(),
                    }
                })
                .collect(),
        })
        .collect::<Vec<_>>();
    let tree = side.tree.clone().or_else(|| ProofTree::from_steps(&steps));
    Ok(ProofTrace {
        lemma_name: script.lemma_name.clone(),
        statement: script.statement.clone(),
        library: library.to_string(),
        steps,
        tree,
        complete: script.complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ArgKind, TreeNode};

    const SCRIPT: &str = "Lemma app_nil_l : forall l : list A, [] ++ l = l.
Proof.
intro l.
simpl;trivial.
Qed.";

    const SIDECAR: &str = "library Initial
lemma app_nil_l
statement forall l : list A, [] ++ l = l
step top=forall subgoals=1
  tactic intro arg list:none
step top=equal subgoals=0
  tactic simpl
  tactic trivial
qed
";

    /// Built field by field from the proof listing of `app_nil_l`.
    fn app_nil_l_fixture() -> ProofTrace {
        ProofTrace {
            lemma_name: "app_nil_l".into(),
            statement: "forall l : list A, [] ++ l = l".into(),
            library: "Initial".into(),
            steps: vec![
                ProofStep {
                    goal_top_symbol: Some("forall".into()),
                    tactics: vec![TacticApp::new("intro", vec![Arg::new("list", ArgKind::None)])],
                    n_subgoals_after: Some(1),
                },
                ProofStep {
                    goal_top_symbol: Some("equal".into()),
                    tactics: vec![
                        TacticApp::new("simpl", vec![]),
                        TacticApp::new("trivial", vec![]),
                    ],
                    n_subgoals_after: Some(0),
                },
            ],
            tree: Some(ProofTree {
                root: TreeNode {
                    step: 0,
                    depth: 1,
                    closed: false,
                    children: vec![TreeNode::leaf(1, 2, true)],
                },
            }),
            complete: true,
        }
    }

    #[test]
    fn merge_with_sidecar_equals_fixture() {
        let script = &parse_script(SCRIPT).unwrap()[0];
        let side = &parse_traces(SIDECAR).unwrap()[0];
        let merged = merge_script_into_trace(script, Some(side), "Initial").unwrap();
        assert_eq!(merged, app_nil_l_fixture());
    }

    #[test]
    fn merge_without_sidecar_leaves_goal_fields_absent() {
        let script = &parse_script(SCRIPT).unwrap()[0];
        let merged = merge_script_into_trace(script, None, "Initial").unwrap();
        assert!(merged.steps.iter().all(|s| s.goal_top_symbol.is_none()));
        assert!(merged.steps.iter().all(|s| s.n_subgoals_after.is_none()));
        assert!(merged.tree.is_none());
        assert_eq!(merged.steps[0].tactics[0].args[0].arg_type, None);
    }

    #[test]
    fn merge_name_mismatch() {
        let script = &parse_script(&SCRIPT.replace("app_nil_l", "a")).unwrap()[0];
        let side = &parse_traces(&SIDECAR.replace("app_nil_l", "b")).unwrap()[0];
        assert!(matches!(
            merge_script_into_trace(script, Some(side), "Initial"),
            Err(ParseError::NameMismatch { .. })
        ));
    }
}
