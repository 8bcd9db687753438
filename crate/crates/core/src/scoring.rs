//! Level score from the program, its trace and the authoring time.
//!
//! All bonuses are gated on reaching the goal:
//!
//! ```text
//! completion = 500                      (goal reached)
//! constructs = 100 * |executed kinds|   (of repeat, while, if)
//! brevity    = max(0, 300 - 20 * statements)
//! speed      = max(0, 200 - floor(seconds))
//! ```
//!
//! The constants are [`ScoringConfig`] defaults and may be overridden.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::diag::{Code, Diagnostic};
use crate::dsl::ast::{ConstructKind, Program};
use crate::interpreter::{Outcome, Trace, TraceEvent};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScoringConfig {
    pub completion: u32,
    pub per_construct: u32,
    pub brevity_base: u32,
    pub brevity_per_statement: u32,
    pub speed_base: u32,
}

impl Default for ScoringConfig {
    fn default() -> Self {
        ScoringConfig {
            completion: 500,
            per_construct: 100,
            brevity_base: 300,
            brevity_per_statement: 20,
            speed_base: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoreBreakdown {
    pub completion: u64,
    pub constructs: u64,
    pub brevity: u64,
    pub speed: u64,
    pub total: u64,
    #[serde(rename = "statements")]
    pub statement_count: u64,
    #[serde(rename = "kinds", with = "kinds_serde")]
    pub construct_kinds_used: BTreeSet<ConstructKind>,
}

mod kinds_serde {
    use std::collections::BTreeSet;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::dsl::ast::ConstructKind;

    pub fn serialize<S: Serializer>(kinds: &BTreeSet<ConstructKind>, s: S) -> Result<S::Ok, S::Error> {
        kinds.iter().map(|k| k.as_str()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeSet<ConstructKind>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|k| match k.as_str() {
                "repeat" => Ok(ConstructKind::Repeat),
                "while" => Ok(ConstructKind::While),
                "if" => Ok(ConstructKind::If),
                other => Err(serde::de::Error::custom(format_args!("unknown construct kind {other:?}"))),
            })
            .collect()
    }
}

pub fn check_elapsed(elapsed_seconds: f64) -> Result<(), Diagnostic> {
    if elapsed_seconds.is_finite() && elapsed_seconds >= 0.0 {
        Ok(())
    } else {
        Err(Diagnostic::new(
            Code::ETime,
            format!("elapsed time must be a non-negative number of seconds, not {elapsed_seconds}"),
        ))
    }
}

/// Construct kinds whose statements were entered or tested during the run.
pub fn executed_kinds(program: &Program, trace: &Trace) -> Result<BTreeSet<ConstructKind>, Diagnostic> {
    let by_id = program.statements_by_id();
    let mut kinds = BTreeSet::new();
    for event in &trace.events {
        let Some(id) = event.statement_id() else {
            continue;
        };
        let stmt = by_id.get(id as usize).ok_or_else(|| {
            Diagnostic::new(
                Code::ETraceMismatch,
                format!("trace refers to statement {id} but the program has {}", by_id.len()),
            )
            .at_statement(id)
        })?;
        let is_highlight = matches!(event, TraceEvent::StmtEnter { .. } | TraceEvent::ConditionEval { .. });
        if let (true, Some(kind)) = (is_highlight, stmt.construct_kind()) {
            kinds.insert(kind);
        }
    }
    Ok(kinds)
}

pub fn compute_score(
    program: &Program,
    trace: &Trace,
    elapsed_seconds: f64,
    config: &ScoringConfig,
) -> Result<ScoreBreakdown, Diagnostic> {
    check_elapsed(elapsed_seconds)?;
    let kinds = executed_kinds(program, trace)?;
    let statements = program.statement_count() as u64;

    if trace.outcome != Outcome::Goal {
        return Ok(ScoreBreakdown {
            completion: 0,
            constructs: 0,
            brevity: 0,
            speed: 0,
            total: 0,
            statement_count: statements,
            construct_kinds_used: kinds,
        });
    }

    // Saturating float-to-int cast; anything past u64 is far beyond speed_base.
    let seconds = elapsed_seconds.floor() as u64;
    let completion = config.completion as u64;
    let constructs = config.per_construct as u64 * kinds.len() as u64;
    let brevity = (config.brevity_base as u64).saturating_sub(config.brevity_per_statement as u64 * statements);
    let speed = (config.speed_base as u64).saturating_sub(seconds);
    Ok(ScoreBreakdown {
        completion,
        constructs,
        brevity,
        speed,
        total: completion + constructs + brevity + speed,
        statement_count: statements,
        construct_kinds_used: kinds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_program;
    use crate::interpreter::{execute, ExecLimits};
    use crate::model::{Cell, Direction, Level, RobotPose};

    fn five_by_five() -> Level {
        Level {
            id: "t".into(),
            name: "t".into(),
            width: 5,
            height: 5,
            start: RobotPose::new(Cell::new(0, 0), Direction::E),
            goal: Cell::new(4, 0),
            walls: Default::default(),
        }
    }

    fn score(text: &str, seconds: f64) -> ScoreBreakdown {
        let program = parse_program(text).unwrap();
        let trace = execute(&program, &five_by_five(), &ExecLimits::default());
        compute_score(&program, &trace, seconds, &ScoringConfig::default()).unwrap()
    }

    #[test]
    fn worked_examples() {
        let s = score("move 4", 30.0);
        assert_eq!((s.completion, s.constructs, s.brevity, s.speed, s.total), (500, 0, 280, 170, 950));

        let s = score("repeat 4 { move 1 }", 30.0);
        assert_eq!((s.completion, s.constructs, s.brevity, s.speed, s.total), (500, 100, 260, 170, 1030));
        assert_eq!(s.construct_kinds_used.len(), 1);

        assert_eq!(score("repeat 4 { move 1 }", 200.0).speed, 0);
        assert_eq!(score("repeat 4 { move 1 }", 1e300).total, 860);
        assert_eq!(score("move 4", 30.9).speed, 170);
    }

    #[test]
    fn failure_scores_zero() {
        let s = score("left move 1", 3.0);
        assert_eq!(s.total, 0);
        assert_eq!((s.completion, s.constructs, s.brevity, s.speed), (0, 0, 0, 0));
        assert_eq!(score("move 2", 3.0).total, 0);
    }

    #[test]
    fn dead_branches_do_not_count() {
        // the while never runs its body, the if is never reached as a construct
        let s = score("if at_goal { repeat 2 { left } } move 4", 10.0);
        assert_eq!(s.construct_kinds_used, [ConstructKind::If].into_iter().collect());
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"completion":500,"constructs":100,"brevity":220,"speed":190,"total":1010,"statements":4,"kinds":["if"]}"#
        );
    }

    #[test]
    fn rejects_bad_time_and_foreign_traces() {
        let program = parse_program("move 4").unwrap();
        let trace = execute(&program, &five_by_five(), &ExecLimits::default());
        let cfg = ScoringConfig::default();
        for t in [-1.0, f64::NAN, f64::INFINITY] {
            assert_eq!(compute_score(&program, &trace, t, &cfg).unwrap_err().code, Code::ETime);
        }
        let other = parse_program("left left move 4").unwrap();
        let foreign = execute(&other, &five_by_five(), &ExecLimits::default());
        assert_eq!(
            compute_score(&program, &foreign, 1.0, &cfg).unwrap_err().code,
            Code::ETraceMismatch
        );
    }

    #[test]
    fn config_overrides() {
        let cfg: ScoringConfig = serde_json::from_str(r#"{"completion": 1000}"#).unwrap();
        assert_eq!(cfg.completion, 1000);
        assert_eq!(cfg.speed_base, 200);
        assert!(serde_json::from_str::<ScoringConfig>(r#"{"bonus": 1}"#).is_err());
    }
}
