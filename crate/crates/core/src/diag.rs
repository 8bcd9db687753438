use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

/// Machine-readable diagnostic codes. This is the complete set; every
/// diagnostic produced anywhere in the engine uses one of these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Code {
    // program text and documents
    EParse,
    EJson,
    EMoveRange,
    ELoopRange,
    EDepth,
    ESize,
    ENotDepth,
    // program against a level
    EMoveOob,
    // level documents
    EDim,
    EStartOob,
    EGoalOob,
    EWallOob,
    EStartOnWall,
    EGoalOnWall,
    EStartEqGoal,
    // level store
    EUnsolvable,
    ENotFound,
    EIo,
    // scoring and requests
    ETraceMismatch,
    ETime,
    ETarget,
    ELimits,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::EParse => "E_PARSE",
            Code::EJson => "E_JSON",
            Code::EMoveRange => "E_MOVE_RANGE",
            Code::ELoopRange => "E_LOOP_RANGE",
            Code::EDepth => "E_DEPTH",
            Code::ESize => "E_SIZE",
            Code::ENotDepth => "E_NOT_DEPTH",
            Code::EMoveOob => "E_MOVE_OOB",
            Code::EDim => "E_DIM",
            Code::EStartOob => "E_START_OOB",
            Code::EGoalOob => "E_GOAL_OOB",
            Code::EWallOob => "E_WALL_OOB",
            Code::EStartOnWall => "E_START_ON_WALL",
            Code::EGoalOnWall => "E_GOAL_ON_WALL",
            Code::EStartEqGoal => "E_START_EQ_GOAL",
            Code::EUnsolvable => "E_UNSOLVABLE",
            Code::ENotFound => "E_NOT_FOUND",
            Code::EIo => "E_IO",
            Code::ETraceMismatch => "E_TRACE_MISMATCH",
            Code::ETime => "E_TIME",
            Code::ETarget => "E_TARGET",
            Code::ELimits => "E_LIMITS",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Byte offsets into program source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl From<Range<usize>> for Span {
    fn from(r: Range<usize>) -> Self {
        Span {
            start: r.start,
            end: r.end,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub code: Code,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub statement_id: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span: Option<Span>,
}

impl Diagnostic {
    pub fn new(code: Code, message: impl Into<String>) -> Self {
        Diagnostic {
            code,
            message: message.into(),
            statement_id: None,
            span: None,
        }
    }

    pub fn at_statement(mut self, id: u32) -> Self {
        self.statement_id = Some(id);
        self
    }

    pub fn with_span(mut self, span: impl Into<Span>) -> Self {
        self.span = Some(span.into());
        self
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)?;
        if let Some(id) = self.statement_id {
            write!(f, " (statement {id})")?;
        }
        if let Some(span) = self.span {
            write!(f, " [bytes {}..{}]", span.start, span.end)?;
        }
        Ok(())
    }
}

/// Wire shape for error responses: `{"diagnostics":[...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosticList {
    pub diagnostics: Vec<Diagnostic>,
}
