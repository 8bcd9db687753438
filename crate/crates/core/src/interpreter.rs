//! Step-by-step execution of a program against a level.
//!
//! Execution is a pure function of `(program, level, limits)` and produces a
//! complete [`Trace`]; the UI animates playback from the trace alone.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::diag::{Code, Diagnostic};
use crate::dsl::ast::{Condition, Program, Statement, StmtKind};
use crate::dsl::limits::{self, check_limits};
use crate::model::{Cell, Direction, Level, RobotPose, Turn};

pub const DEFAULT_MAX_STEPS: u32 = 10_000;
pub const MAX_STEP_LIMIT: u32 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExecLimits {
    pub max_primitive_steps: u32,
}

impl Default for ExecLimits {
    fn default() -> Self {
        ExecLimits {
            max_primitive_steps: DEFAULT_MAX_STEPS,
        }
    }
}

impl ExecLimits {
    pub fn new(max_primitive_steps: u32) -> Result<Self, Diagnostic> {
        let limits = ExecLimits { max_primitive_steps };
        limits.check()?;
        Ok(limits)
    }

    pub fn check(&self) -> Result<(), Diagnostic> {
        if (1..=MAX_STEP_LIMIT).contains(&self.max_primitive_steps) {
            Ok(())
        } else {
            Err(Diagnostic::new(
                Code::ELimits,
                format!(
                    "the step limit must be between 1 and {MAX_STEP_LIMIT}, not {}",
                    self.max_primitive_steps
                ),
            ))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "e")]
pub enum TraceEvent {
    #[serde(rename = "enter")]
    StmtEnter {
        #[serde(rename = "id")]
        statement_id: u32,
    },
    #[serde(rename = "moved")]
    Moved { from: Cell, to: Cell, facing: Direction },
    #[serde(rename = "turned")]
    Turned {
        #[serde(rename = "id")]
        statement_id: u32,
        from: Direction,
        to: Direction,
    },
    #[serde(rename = "cond")]
    ConditionEval {
        #[serde(rename = "id")]
        statement_id: u32,
        value: bool,
    },
    #[serde(rename = "crashed")]
    Crashed { at: Cell, attempted: Cell },
    #[serde(rename = "goal")]
    GoalReached { at: Cell },
    #[serde(rename = "limit")]
    StepLimitHit,
}

impl TraceEvent {
    pub fn is_terminal(&self) -> bool {
        matches!(
            self,
            TraceEvent::Crashed { .. } | TraceEvent::GoalReached { .. } | TraceEvent::StepLimitHit
        )
    }

    /// True for the events that cost one primitive step.
    pub fn is_primitive(&self) -> bool {
        matches!(
            self,
            TraceEvent::Moved { .. } | TraceEvent::Turned { .. } | TraceEvent::ConditionEval { .. }
        )
    }

    /// The statement this event highlights, if any.
    pub fn statement_id(&self) -> Option<u32> {
        match self {
            TraceEvent::StmtEnter { statement_id }
            | TraceEvent::Turned { statement_id, .. }
            | TraceEvent::ConditionEval { statement_id, .. } => Some(*statement_id),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Goal,
    Crash,
    StepLimit,
    /// The program ran out of statements before reaching the goal.
    Ended,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub outcome: Outcome,
    /// Pose at the end of the run; on a crash, the last good pose.
    #[serde(rename = "final")]
    pub final_pose: RobotPose,
    #[serde(rename = "steps")]
    pub primitive_steps: u32,
    pub events: Vec<TraceEvent>,
}

impl Trace {
    pub fn reached_goal(&self) -> bool {
        self.outcome == Outcome::Goal
    }

    /// The stable JSON document, with a trailing newline.
    pub fn to_document(&self) -> String {
        let mut s = serde_json::to_string(self).expect("traces always serialize");
        s.push('\n');
        s
    }
}

/// Upper bound on the number of events a run may record.
///
/// Each primitive step emits at most a handful of events, but nested
/// `repeat` blocks can enter statements without taking any step. Running out
/// of event budget ends the run exactly like the step limit does.
pub fn event_budget(limits: &ExecLimits, statement_count: usize) -> usize {
    4 * limits.max_primitive_steps as usize + statement_count
}

pub fn eval_condition(cond: &Condition, pose: &RobotPose, level: &Level) -> bool {
    match cond {
        Condition::AheadClear => level.cell_free(pose.forward_cell()),
        Condition::LeftClear => level.cell_free(pose.turned(Turn::Left).forward_cell()),
        Condition::RightClear => level.cell_free(pose.turned(Turn::Right).forward_cell()),
        Condition::AtGoal => pose.cell == level.goal,
        Condition::Not(inner) => !eval_condition(inner, pose, level),
    }
}

/// Why a run stopped early. The terminal event has already been recorded.
enum Halt {
    Goal,
    Crash,
    Limit,
}

type Flow = Result<(), Halt>;

struct Machine<'a> {
    level: &'a Level,
    pose: RobotPose,
    steps: u32,
    max_steps: u32,
    events: Vec<TraceEvent>,
    /// Slots left for non-terminal events; one slot is always kept for the
    /// terminal event.
    budget: usize,
}

impl Machine<'_> {
    fn stop_at_limit(&mut self) -> Flow {
        self.events.push(TraceEvent::StepLimitHit);
        Err(Halt::Limit)
    }

    fn record(&mut self, event: TraceEvent) -> Flow {
        if self.budget == 0 {
            return self.stop_at_limit();
        }
        self.budget -= 1;
        self.events.push(event);
        Ok(())
    }

    fn primitive(&mut self, event: TraceEvent) -> Flow {
        if self.budget == 0 || self.steps >= self.max_steps {
            return self.stop_at_limit();
        }
        self.steps += 1;
        self.record(event)
    }

    fn test(&mut self, id: u32, cond: &Condition) -> Result<bool, Halt> {
        let value = eval_condition(cond, &self.pose, self.level);
        self.primitive(TraceEvent::ConditionEval {
            statement_id: id,
            value,
        })?;
        Ok(value)
    }

    fn step_forward(&mut self) -> Flow {
        let from = self.pose.cell;
        let target = self.pose.forward_cell();
        if !self.level.cell_free(target) {
            self.events.push(TraceEvent::Crashed {
                at: from,
                attempted: target,
            });
            return Err(Halt::Crash);
        }
        self.primitive(TraceEvent::Moved {
            from,
            to: target,
            facing: self.pose.facing,
        })?;
        self.pose.cell = target;
        if target == self.level.goal {
            self.events.push(TraceEvent::GoalReached { at: target });
            return Err(Halt::Goal);
        }
        Ok(())
    }

    fn turn(&mut self, id: u32, turn: Turn) -> Flow {
        let from = self.pose.facing;
        let to = from.rotate(turn);
        self.primitive(TraceEvent::Turned {
            statement_id: id,
            from,
            to,
        })?;
        self.pose.facing = to;
        Ok(())
    }

    fn block(&mut self, block: &[Statement]) -> Flow {
        block.iter().try_for_each(|s| self.statement(s))
    }

    fn statement(&mut self, stmt: &Statement) -> Flow {
        self.record(TraceEvent::StmtEnter { statement_id: stmt.id })?;
        match &stmt.kind {
            StmtKind::Move { squares } => (0..*squares).try_for_each(|_| self.step_forward()),
            StmtKind::TurnLeft => self.turn(stmt.id, Turn::Left),
            StmtKind::TurnRight => self.turn(stmt.id, Turn::Right),
            StmtKind::Repeat { times, body } => (0..*times).try_for_each(|_| self.block(body)),
            StmtKind::While { cond, body } => {
                while self.test(stmt.id, cond)? {
                    self.block(body)?;
                }
                Ok(())
            }
            StmtKind::IfElse {
                cond,
                then_branch,
                else_branch,
            } => {
                if self.test(stmt.id, cond)? {
                    self.block(then_branch)
                } else {
                    self.block(else_branch)
                }
            }
        }
    }
}

/// Runs `program` on `level`. The program should already have passed
/// [`validate_program`]; every failure mode is reported as an [`Outcome`].
pub fn execute(program: &Program, level: &Level, limits: &ExecLimits) -> Trace {
    let budget = event_budget(limits, program.statement_count());
    let mut machine = Machine {
        level,
        pose: level.start,
        steps: 0,
        max_steps: limits.max_primitive_steps,
        events: Vec::new(),
        budget: budget.saturating_sub(1),
    };
    let outcome = match machine.block(&program.body) {
        Ok(()) => Outcome::Ended,
        Err(Halt::Goal) => Outcome::Goal,
        Err(Halt::Crash) => Outcome::Crash,
        Err(Halt::Limit) => Outcome::StepLimit,
    };
    Trace {
        outcome,
        final_pose: machine.pose,
        primitive_steps: machine.steps,
        events: machine.events,
    }
}

/// Static checks of a program against a level. Never simulates.
pub fn validate_program(program: &Program, level: &Level) -> Vec<Diagnostic> {
    let mut diags = check_limits(program, None);
    let reach = level.width.max(level.height);
    program.visit(|stmt, _| {
        if let StmtKind::Move { squares } = stmt.kind {
            if limits::count_in_range(squares) && squares > reach {
                diags.push(
                    Diagnostic::new(
                        Code::EMoveOob,
                        format!(
                            "moving {squares} squares would leave this {}x{} maze",
                            level.width, level.height
                        ),
                    )
                    .at_statement(stmt.id),
                );
            }
        }
    });
    diags
}

/// Human-readable step list. Not a stable format.
pub fn render_pretty(trace: &Trace) -> String {
    let mut out = String::new();
    for (i, event) in trace.events.iter().enumerate() {
        let _ = write!(out, "{i:>5}  ");
        let _ = match event {
            TraceEvent::StmtEnter { statement_id } => writeln!(out, "statement {statement_id}"),
            TraceEvent::Moved { from, to, facing } => writeln!(out, "  move {from} -> {to} facing {facing}"),
            TraceEvent::Turned {
                statement_id,
                from,
                to,
            } => writeln!(out, "  turn {from} -> {to} (statement {statement_id})"),
            TraceEvent::ConditionEval { statement_id, value } => {
                writeln!(out, "  condition of statement {statement_id} is {value}")
            }
            TraceEvent::Crashed { at, attempted } => writeln!(out, "CRASH at {at} trying to enter {attempted}"),
            TraceEvent::GoalReached { at } => writeln!(out, "GOAL reached at {at}"),
            TraceEvent::StepLimitHit => writeln!(out, "STOPPED: step limit reached"),
        };
    }
    let outcome = match trace.outcome {
        Outcome::Goal => "goal reached",
        Outcome::Crash => "crashed",
        Outcome::StepLimit => "step limit reached",
        Outcome::Ended => "program ended before the goal",
    };
    let _ = writeln!(
        out,
        "outcome: {outcome}; final position {} facing {}; {} steps",
        trace.final_pose.cell, trace.final_pose.facing, trace.primitive_steps
    );
    out
}
