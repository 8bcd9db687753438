//! Read-only renderings of a program: English sentences for students and a
//! TouchDevelop-style script for export. Output uses LF line endings.

use serde::{Deserialize, Serialize};

use crate::dsl::ast::{Condition, Program, Statement, StmtKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RenderTarget {
    Pseudocode,
    TouchDevelop,
}

impl RenderTarget {
    pub fn from_name(name: &str) -> Option<RenderTarget> {
        match name {
            "pseudocode" => Some(RenderTarget::Pseudocode),
            "touchdevelop" => Some(RenderTarget::TouchDevelop),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RenderTarget::Pseudocode => "pseudocode",
            RenderTarget::TouchDevelop => "touchdevelop",
        }
    }
}

pub fn render(program: &Program, target: RenderTarget) -> String {
    match target {
        RenderTarget::Pseudocode => emit_pseudocode(program),
        RenderTarget::TouchDevelop => emit_touchdevelop(program),
    }
}

struct Lines {
    out: String,
    indent: &'static str,
}

impl Lines {
    fn line(&mut self, depth: usize, text: &str) {
        for _ in 0..depth {
            self.out.push_str(self.indent);
        }
        self.out.push_str(text);
        self.out.push('\n');
    }
}

fn phrase(cond: &Condition) -> String {
    match cond {
        Condition::AheadClear => "the path ahead is clear".into(),
        Condition::LeftClear => "the path to the left is clear".into(),
        Condition::RightClear => "the path to the right is clear".into(),
        Condition::AtGoal => "the robot is at the goal".into(),
        Condition::Not(inner) => format!("it is not true that {}", phrase(inner)),
    }
}

pub fn emit_pseudocode(program: &Program) -> String {
    fn block(lines: &mut Lines, stmts: &[Statement], depth: usize) {
        for stmt in stmts {
            match &stmt.kind {
                StmtKind::Move { squares: 1 } => lines.line(depth, "go straight for 1 square"),
                StmtKind::Move { squares } => lines.line(depth, &format!("go straight for {squares} squares")),
                StmtKind::TurnLeft => lines.line(depth, "turn left"),
                StmtKind::TurnRight => lines.line(depth, "turn right"),
                StmtKind::Repeat { times, body } => {
                    lines.line(depth, &format!("repeat {times} times"));
                    block(lines, body, depth + 1);
                }
                StmtKind::While { cond, body } => {
                    lines.line(depth, &format!("while {}", phrase(cond)));
                    block(lines, body, depth + 1);
                }
                StmtKind::IfElse {
                    cond,
                    then_branch,
                    else_branch,
                } => {
                    lines.line(depth, &format!("if {}", phrase(cond)));
                    block(lines, then_branch, depth + 1);
                    if !else_branch.is_empty() {
                        lines.line(depth, "otherwise");
                        block(lines, else_branch, depth + 1);
                    }
                }
            }
        }
    }
    let mut lines = Lines {
        out: String::new(),
        indent: "    ",
    };
    block(&mut lines, &program.body, 0);
    lines.out
}

fn td_condition(cond: &Condition) -> String {
    match cond {
        Condition::AheadClear => "robot->ahead_clear()".into(),
        Condition::LeftClear => "robot->left_clear()".into(),
        Condition::RightClear => "robot->right_clear()".into(),
        Condition::AtGoal => "robot->at_goal()".into(),
        Condition::Not(inner) => format!("not {}", td_condition(inner)),
    }
}

/// Loop variable for a `for` nested inside `outer_loops` other `for`s.
fn loop_var(outer_loops: usize) -> String {
    match outer_loops {
        0 => "i".into(),
        n => format!("i{}", n + 1),
    }
}

pub fn emit_touchdevelop(program: &Program) -> String {
    fn block(lines: &mut Lines, stmts: &[Statement], depth: usize, loops: usize) {
        for stmt in stmts {
            match &stmt.kind {
                StmtKind::Move { squares } => lines.line(depth, &format!("robot->go_straight({squares})")),
                StmtKind::TurnLeft => lines.line(depth, "robot->turn_left()"),
                StmtKind::TurnRight => lines.line(depth, "robot->turn_right()"),
                StmtKind::Repeat { times, body } => {
                    lines.line(depth, &format!("for 0 <= {} < {times} do {{", loop_var(loops)));
                    block(lines, body, depth + 1, loops + 1);
                    lines.line(depth, "}");
                }
                StmtKind::While { cond, body } => {
                    lines.line(depth, &format!("while {} do {{", td_condition(cond)));
                    block(lines, body, depth + 1, loops);
                    lines.line(depth, "}");
                }
                StmtKind::IfElse {
                    cond,
                    then_branch,
                    else_branch,
                } => {
                    lines.line(depth, &format!("if {} then {{", td_condition(cond)));
                    block(lines, then_branch, depth + 1, loops);
                    lines.line(depth, "} else {");
                    block(lines, else_branch, depth + 1, loops);
                    lines.line(depth, "}");
                }
            }
        }
    }
    let mut lines = Lines {
        out: String::new(),
        indent: "  ",
    };
    lines.line(0, "action run_maze() {");
    block(&mut lines, &program.body, 1, 0);
    lines.line(0, "}");
    lines.out
}
