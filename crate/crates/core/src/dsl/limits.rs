//! Static limits every program must satisfy before it may run.

use crate::diag::{Code, Diagnostic, Span};
use crate::dsl::ast::{Program, StmtKind};

pub const MIN_COUNT: u32 = 1;
/// Upper bound for both `move` distances and `repeat` counts.
pub const MAX_COUNT: u32 = 99;
/// Longest chain of nested statements (a top-level `move` has depth 1).
pub const MAX_DEPTH: usize = 8;
pub const MAX_STATEMENTS: usize = 200;
pub const MAX_NOT_DEPTH: usize = 4;

pub fn count_in_range(n: u32) -> bool {
    (MIN_COUNT..=MAX_COUNT).contains(&n)
}

pub fn move_range_message(n: impl std::fmt::Display) -> String {
    format!("the robot can move between {MIN_COUNT} and {MAX_COUNT} squares, not {n}")
}

pub fn loop_range_message(n: impl std::fmt::Display) -> String {
    format!("a repeat loop runs between {MIN_COUNT} and {MAX_COUNT} times, not {n}")
}

pub fn not_depth_message(depth: usize) -> String {
    format!("a condition can use at most {MAX_NOT_DEPTH} 'not's in a row, found {depth}")
}

pub fn depth_message() -> String {
    format!("blocks can only be nested {MAX_DEPTH} statements deep")
}

pub fn size_message(count: usize) -> String {
    format!("a program can have at most {MAX_STATEMENTS} statements, this one has {count}")
}

/// Checks ranges, nesting depth, `not` depth and size. `spans`, when given,
/// is indexed by statement id and used to locate each diagnostic in the
/// source text.
pub fn check_limits(program: &Program, spans: Option<&[Span]>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut depth_reported = false;
    let mut count = 0usize;
    let locate = |d: Diagnostic, id: u32| -> Diagnostic {
        let d = d.at_statement(id);
        match spans.and_then(|s| s.get(id as usize)) {
            Some(span) => d.with_span(*span),
            None => d,
        }
    };

    program.visit(|stmt, depth| {
        count += 1;
        match &stmt.kind {
            StmtKind::Move { squares } if !count_in_range(*squares) => {
                out.push(locate(
                    Diagnostic::new(Code::EMoveRange, move_range_message(squares)),
                    stmt.id,
                ));
            }
            StmtKind::Repeat { times, .. } if !count_in_range(*times) => {
                out.push(locate(
                    Diagnostic::new(Code::ELoopRange, loop_range_message(times)),
                    stmt.id,
                ));
            }
            _ => {}
        }
        if let Some(cond) = stmt.condition() {
            let nots = cond.not_depth();
            if nots > MAX_NOT_DEPTH {
                out.push(locate(
                    Diagnostic::new(Code::ENotDepth, not_depth_message(nots)),
                    stmt.id,
                ));
            }
        }
        if depth > MAX_DEPTH && !depth_reported {
            depth_reported = true;
            out.push(locate(Diagnostic::new(Code::EDepth, depth_message()), stmt.id));
        }
    });

    if count > MAX_STATEMENTS {
        out.push(locate(
            Diagnostic::new(Code::ESize, size_message(count)),
            MAX_STATEMENTS as u32,
        ));
    }
    out
}
