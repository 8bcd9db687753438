//! Structured program documents, as exchanged with the UI.
//!
//! A program document is `{"body":[STMT,...]}` where each statement is one of
//!
//! ```text
//! {"t":"move","n":INT,"id":INT}
//! {"t":"left","id":INT}
//! {"t":"right","id":INT}
//! {"t":"repeat","n":INT,"id":INT,"body":[...]}
//! {"t":"while","cond":COND,"id":INT,"body":[...]}
//! {"t":"if","cond":COND,"id":INT,"then":[...],"else":[...]}
//! ```
//!
//! and `COND` is `{"c":"ahead_clear"|"left_clear"|"right_clear"|"at_goal"}`
//! or `{"c":"not","inner":COND}`.

use serde::{Deserialize, Serialize};

use crate::diag::{Code, Diagnostic};
use crate::dsl::ast::{Condition, Program, Statement, StmtKind};
use crate::dsl::limits::check_limits;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProgramDoc {
    pub body: Vec<StmtDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "t", rename_all = "lowercase", deny_unknown_fields)]
pub enum StmtDoc {
    Move {
        n: i64,
        id: i64,
    },
    Left {
        id: i64,
    },
    Right {
        id: i64,
    },
    Repeat {
        n: i64,
        id: i64,
        body: Vec<StmtDoc>,
    },
    While {
        cond: CondDoc,
        id: i64,
        body: Vec<StmtDoc>,
    },
    If {
        cond: CondDoc,
        id: i64,
        then: Vec<StmtDoc>,
        #[serde(rename = "else", default)]
        otherwise: Vec<StmtDoc>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "c", rename_all = "snake_case", deny_unknown_fields)]
pub enum CondDoc {
    AheadClear,
    LeftClear,
    RightClear,
    AtGoal,
    Not { inner: Box<CondDoc> },
}

impl From<&Condition> for CondDoc {
    fn from(cond: &Condition) -> Self {
        match cond {
            Condition::AheadClear => CondDoc::AheadClear,
            Condition::LeftClear => CondDoc::LeftClear,
            Condition::RightClear => CondDoc::RightClear,
            Condition::AtGoal => CondDoc::AtGoal,
            Condition::Not(inner) => CondDoc::Not {
                inner: Box::new(inner.as_ref().into()),
            },
        }
    }
}

impl From<&CondDoc> for Condition {
    fn from(doc: &CondDoc) -> Self {
        match doc {
            CondDoc::AheadClear => Condition::AheadClear,
            CondDoc::LeftClear => Condition::LeftClear,
            CondDoc::RightClear => Condition::RightClear,
            CondDoc::AtGoal => Condition::AtGoal,
            CondDoc::Not { inner } => Condition::negate(inner.as_ref().into()),
        }
    }
}

fn stmt_to_doc(stmt: &Statement) -> StmtDoc {
    let id = stmt.id as i64;
    let block = |b: &[Statement]| b.iter().map(stmt_to_doc).collect();
    match &stmt.kind {
        StmtKind::Move { squares } => StmtDoc::Move {
            n: *squares as i64,
            id,
        },
        StmtKind::TurnLeft => StmtDoc::Left { id },
        StmtKind::TurnRight => StmtDoc::Right { id },
        StmtKind::Repeat { times, body } => StmtDoc::Repeat {
            n: *times as i64,
            id,
            body: block(body),
        },
        StmtKind::While { cond, body } => StmtDoc::While {
            cond: cond.into(),
            id,
            body: block(body),
        },
        StmtKind::IfElse {
            cond,
            then_branch,
            else_branch,
        } => StmtDoc::If {
            cond: cond.into(),
            id,
            then: block(then_branch),
            otherwise: block(else_branch),
        },
    }
}

pub fn program_to_doc(program: &Program) -> ProgramDoc {
    ProgramDoc {
        body: program.body.iter().map(stmt_to_doc).collect(),
    }
}

pub fn program_to_json(program: &Program) -> serde_json::Value {
    serde_json::to_value(program_to_doc(program)).expect("program documents always serialize")
}

fn saturate(n: i64) -> u32 {
    n.clamp(0, u32::MAX as i64) as u32
}

/// Converts a document into a program. Ids are recomputed in pre-order and
/// must agree with the ones embedded in the document; every static limit is
/// re-checked.
pub fn program_from_doc(doc: &ProgramDoc) -> Result<Program, Vec<Diagnostic>> {
    fn convert(docs: &[StmtDoc], next: &mut u32, mismatches: &mut Vec<Diagnostic>) -> Vec<Statement> {
        docs.iter()
            .map(|doc| {
                let id = *next;
                *next += 1;
                let embedded = match doc {
                    StmtDoc::Move { id, .. }
                    | StmtDoc::Left { id }
                    | StmtDoc::Right { id }
                    | StmtDoc::Repeat { id, .. }
                    | StmtDoc::While { id, .. }
                    | StmtDoc::If { id, .. } => *id,
                };
                if embedded != id as i64 {
                    mismatches.push(
                        Diagnostic::new(
                            Code::EJson,
                            format!("statement id {embedded} should be {id} (ids are numbered in order)"),
                        )
                        .at_statement(id),
                    );
                }
                let kind = match doc {
                    StmtDoc::Move { n, .. } => StmtKind::Move { squares: saturate(*n) },
                    StmtDoc::Left { .. } => StmtKind::TurnLeft,
                    StmtDoc::Right { .. } => StmtKind::TurnRight,
                    StmtDoc::Repeat { n, body, .. } => StmtKind::Repeat {
                        times: saturate(*n),
                        body: convert(body, next, mismatches),
                    },
                    StmtDoc::While { cond, body, .. } => StmtKind::While {
                        cond: cond.into(),
                        body: convert(body, next, mismatches),
                    },
                    StmtDoc::If {
                        cond,
                        then,
                        otherwise,
                        ..
                    } => {
                        let cond = cond.into();
                        let then_branch = convert(then, next, mismatches);
                        let else_branch = convert(otherwise, next, mismatches);
                        StmtKind::IfElse {
                            cond,
                            then_branch,
                            else_branch,
                        }
                    }
                };
                Statement { id, kind }
            })
            .collect()
    }

    let mut next = 0;
    let mut diags = Vec::new();
    let body = convert(&doc.body, &mut next, &mut diags);
    let program = Program {
        body,
        source_text: None,
    };
    diags.extend(check_limits(&program, None));
    if diags.is_empty() {
        Ok(program)
    } else {
        Err(diags)
    }
}

pub fn program_from_json(value: &serde_json::Value) -> Result<Program, Vec<Diagnostic>> {
    let doc = ProgramDoc::deserialize(value).map_err(|e| vec![json_error(e)])?;
    program_from_doc(&doc)
}

pub fn program_from_json_str(text: &str) -> Result<Program, Vec<Diagnostic>> {
    let doc: ProgramDoc = serde_json::from_str(text).map_err(|e| vec![json_error(e)])?;
    program_from_doc(&doc)
}

pub fn json_error(e: serde_json::Error) -> Diagnostic {
    Diagnostic::new(Code::EJson, format!("malformed document: {e}"))
}
