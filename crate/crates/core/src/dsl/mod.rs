//! The RoboRun language: AST, text grammar, canonical printer and JSON codec.

pub mod ast;
pub mod json;
pub mod limits;
pub mod parser;
pub mod printer;

pub use ast::{Condition, ConstructKind, Program, Statement, StmtKind};
pub use json::{program_from_json, program_from_json_str, program_to_json, ProgramDoc};
pub use limits::check_limits;
pub use parser::parse_program;
pub use printer::print_program;
