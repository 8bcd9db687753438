//! Request-level operations shared by the CLI and the HTTP service, so both
//! front ends produce the same bytes for the same inputs.

use roborun_core::codegen::{render, RenderTarget};
use roborun_core::dsl::{parse_program, program_from_json};
use roborun_core::scoring::{compute_score, ScoreBreakdown, ScoringConfig};
use roborun_core::{execute, validate_program, Code, Diagnostic, ExecLimits, Level, Program, Trace};
use serde_json::Value;

pub type Diags = Vec<Diagnostic>;

/// A program given either as source text or as a program document.
pub fn program_from_value(value: &Value) -> Result<Program, Diags> {
    match value {
        Value::String(text) => parse_program(text),
        Value::Object(_) => program_from_json(value),
        _ => Err(vec![Diagnostic::new(
            Code::EJson,
            "\"program\" must be program text or a program document",
        )]),
    }
}

/// Static checks followed by execution.
pub fn run(program: &Program, level: &Level, limits: &ExecLimits) -> Result<Trace, Diags> {
    limits.check().map_err(|d| vec![d])?;
    let diags = validate_program(program, level);
    if !diags.is_empty() {
        return Err(diags);
    }
    Ok(execute(program, level, limits))
}

pub fn run_and_score(
    program: &Program,
    level: &Level,
    limits: &ExecLimits,
    elapsed_seconds: f64,
    config: &ScoringConfig,
) -> Result<(Trace, ScoreBreakdown), Diags> {
    roborun_core::scoring::check_elapsed(elapsed_seconds).map_err(|d| vec![d])?;
    let trace = run(program, level, limits)?;
    let score = compute_score(program, &trace, elapsed_seconds, config).map_err(|d| vec![d])?;
    Ok((trace, score))
}

pub fn export(program: &Program, target: &str) -> Result<String, Diags> {
    let target = RenderTarget::from_name(target).ok_or_else(|| {
        vec![Diagnostic::new(
            Code::ETarget,
            format!("unknown export target {target:?}; use \"pseudocode\" or \"touchdevelop\""),
        )]
    })?;
    Ok(render(program, target))
}

/// Compact JSON with a trailing newline, the form every JSON output uses.
pub fn to_document<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("response types always serialize");
    s.push('\n');
    s
}

pub fn describe(diag: &Diagnostic) -> String {
    let mut line = format!("{}: {}", diag.code.as_str(), diag.message);
    if let Some(id) = diag.statement_id {
        line.push_str(&format!(" (statement {id})"));
    }
    if let Some(span) = diag.span {
        line.push_str(&format!(" [bytes {}..{}]", span.start, span.end));
    }
    line
}
