//! Canonical text form: two-space indentation, one statement per line,
//! opening brace on the statement's line.

use std::fmt::Write;

use crate::dsl::ast::{Program, Statement, StmtKind};

const INDENT: &str = "  ";

pub fn print_program(program: &Program) -> String {
    let mut out = String::new();
    print_block(&mut out, &program.body, 0);
    out
}

fn print_block(out: &mut String, block: &[Statement], depth: usize) {
    for stmt in block {
        print_statement(out, stmt, depth);
    }
}

fn open_block(out: &mut String, block: &[Statement], depth: usize) {
    out.push_str(" {\n");
    print_block(out, block, depth + 1);
    out.push_str(&INDENT.repeat(depth));
    out.push('}');
}

fn print_statement(out: &mut String, stmt: &Statement, depth: usize) {
    out.push_str(&INDENT.repeat(depth));
    match &stmt.kind {
        StmtKind::Move { squares } => {
            let _ = write!(out, "move {squares}");
        }
        StmtKind::TurnLeft => out.push_str("left"),
        StmtKind::TurnRight => out.push_str("right"),
        StmtKind::Repeat { times, body } => {
            let _ = write!(out, "repeat {times}");
            open_block(out, body, depth);
        }
        StmtKind::While { cond, body } => {
            let _ = write!(out, "while {cond}");
            open_block(out, body, depth);
        }
        StmtKind::IfElse {
            cond,
            then_branch,
            else_branch,
        } => {
            let _ = write!(out, "if {cond}");
            open_block(out, then_branch, depth);
            if !else_branch.is_empty() {
                out.push_str(" else");
                open_block(out, else_branch, depth);
            }
        }
    }
    out.push('\n');
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::ast::Condition;
    use crate::dsl::parse_program;

    #[test]
    fn formatting_rules() {
        assert_eq!(print_program(&Program::new(vec![Statement::move_by(3)])), "move 3\n");
        assert_eq!(
            print_program(&Program::new(vec![Statement::repeat(2, vec![Statement::left()])])),
            "repeat 2 {\n  left\n}\n"
        );
        assert_eq!(print_program(&Program::default()), "");
    }

    #[test]
    fn nested_if_else() {
        let p = Program::new(vec![Statement::while_loop(
            Condition::negate(Condition::AtGoal),
            vec![Statement::if_else(
                Condition::AheadClear,
                vec![Statement::move_by(1)],
                vec![Statement::right()],
            )],
        )]);
        let text = print_program(&p);
        assert_eq!(
            text,
            "while not at_goal {\n  if ahead_clear {\n    move 1\n  } else {\n    right\n  }\n}\n"
        );
        assert_eq!(parse_program(&text).unwrap(), p);
    }

    #[test]
    fn canonicalises_messy_input() {
        let p = parse_program("repeat 3{move 2 right}# done\nif at_goal{}").unwrap();
        assert_eq!(print_program(&p), "repeat 3 {\n  move 2\n  right\n}\nif at_goal {\n}\n");
    }
}
