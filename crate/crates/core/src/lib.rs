//! RoboRun engine: a small robot-maze language for teaching control flow.
//!
//! Programs are parsed from text ([`dsl::parse_program`]) or JSON
//! ([`dsl::program_from_json`]), run against a [`model::Level`] by
//! [`interpreter::execute`] to produce a playback [`interpreter::Trace`],
//! scored with [`scoring::compute_score`] and rendered for students by
//! [`codegen`].

pub mod codegen;
pub mod diag;
pub mod dsl;
pub mod gen;
pub mod interpreter;
pub mod levels;
pub mod model;
pub mod scoring;

pub use diag::{Code, Diagnostic};
pub use dsl::{parse_program, print_program, Program};
pub use interpreter::{execute, validate_program, ExecLimits, Outcome, Trace, TraceEvent};
pub use model::{Cell, Direction, Level, RobotPose};
