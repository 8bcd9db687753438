//! Command-line and HTTP front ends for the RoboRun engine.

pub mod cli;
pub mod engine;
pub mod service;
