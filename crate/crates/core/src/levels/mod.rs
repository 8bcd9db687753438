//! Level validation, solvability, the bundled pack and the on-disk store.

mod pack;
mod store;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::diag::{Code, Diagnostic};
use crate::dsl::json::json_error;
use crate::model::{Cell, Level, MAX_DIMENSION};

pub use pack::bundled_pack;
pub use store::{LevelStore, StoreError};

/// Checks every level invariant; empty means valid.
pub fn validate_level(level: &Level) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let dim_ok = |n: u32| (1..=MAX_DIMENSION).contains(&n);
    if !dim_ok(level.width) || !dim_ok(level.height) {
        out.push(Diagnostic::new(
            Code::EDim,
            format!(
                "a maze must be between 1x1 and {MAX_DIMENSION}x{MAX_DIMENSION}, not {}x{}",
                level.width, level.height
            ),
        ));
    }
    let start = level.start.cell;
    if !level.in_bounds(start) {
        out.push(Diagnostic::new(Code::EStartOob, format!("the start {start} is outside the maze")));
    } else if level.walls.contains(&start) {
        out.push(Diagnostic::new(Code::EStartOnWall, format!("the start {start} is on a wall")));
    }
    if !level.in_bounds(level.goal) {
        out.push(Diagnostic::new(
            Code::EGoalOob,
            format!("the goal {} is outside the maze", level.goal),
        ));
    } else if level.walls.contains(&level.goal) {
        out.push(Diagnostic::new(
            Code::EGoalOnWall,
            format!("the goal {} is on a wall", level.goal),
        ));
    }
    if start == level.goal {
        out.push(Diagnostic::new(
            Code::EStartEqGoal,
            "the robot cannot start on the goal",
        ));
    }
    for wall in level.walls.iter().filter(|w| !level.in_bounds(**w)) {
        out.push(Diagnostic::new(Code::EWallOob, format!("the wall at {wall} is outside the maze")));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolvabilityReport {
    pub reachable: bool,
    /// Moves on a shortest path; present iff reachable.
    #[serde(rename = "shortest")]
    pub shortest_cells: Option<u32>,
}

/// Breadth-first search over free cells from the start. Turning is free, so
/// facing plays no part in reachability.
pub fn check_solvable(level: &Level) -> SolvabilityReport {
    let unreachable = SolvabilityReport {
        reachable: false,
        shortest_cells: None,
    };
    let dims_ok = (1..=MAX_DIMENSION).contains(&level.width) && (1..=MAX_DIMENSION).contains(&level.height);
    if !dims_ok || !level.cell_free(level.start.cell) || !level.cell_free(level.goal) {
        return unreachable;
    }
    let width = level.width as usize;
    let index = |c: Cell| c.y as usize * width + c.x as usize;
    let mut dist = vec![u32::MAX; width * level.height as usize];
    let mut queue = VecDeque::new();
    dist[index(level.start.cell)] = 0;
    queue.push_back(level.start.cell);
    while let Some(cell) = queue.pop_front() {
        let d = dist[index(cell)];
        if cell == level.goal {
            return SolvabilityReport {
                reachable: true,
                shortest_cells: Some(d),
            };
        }
        for next in cell.neighbours() {
            if level.cell_free(next) && dist[index(next)] == u32::MAX {
                dist[index(next)] = d + 1;
                queue.push_back(next);
            }
        }
    }
    unreachable
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSummary {
    pub id: String,
    pub name: String,
    pub width: u32,
    pub height: u32,
    pub shortest: Option<u32>,
}

impl LevelSummary {
    pub fn of(level: &Level) -> Self {
        LevelSummary {
            id: level.id.clone(),
            name: level.name.clone(),
            width: level.width,
            height: level.height,
            shortest: check_solvable(level).shortest_cells,
        }
    }
}

/// Decodes a level document and checks the level invariants.
pub fn level_from_json(text: &str) -> Result<Level, Vec<Diagnostic>> {
    let level: Level = serde_json::from_str(text).map_err(|e| vec![json_error(e)])?;
    checked(level)
}

pub fn level_from_value(value: &serde_json::Value) -> Result<Level, Vec<Diagnostic>> {
    let level = Level::deserialize(value).map_err(|e| vec![json_error(e)])?;
    checked(level)
}

fn checked(level: Level) -> Result<Level, Vec<Diagnostic>> {
    let diags = validate_level(&level);
    if diags.is_empty() {
        Ok(level)
    } else {
        Err(diags)
    }
}

/// The on-disk form of a level: pretty JSON with a trailing newline.
pub fn level_to_document(level: &Level) -> String {
    let mut s = serde_json::to_string_pretty(level).expect("levels always serialize");
    s.push('\n');
    s
}
