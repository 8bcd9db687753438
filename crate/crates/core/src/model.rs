//! Grid geometry and the level a program runs in.
//!
//! Coordinates have their origin in the top-left corner: `x` grows east and
//! `y` grows south, so facing north decreases `y`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest accepted level width or height.
pub const MAX_DIMENSION: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    N,
    E,
    S,
    W,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Turn {
    Left,
    Right,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::N, Direction::E, Direction::S, Direction::W];

    /// Counterclockwise quarter turn.
    pub fn left(self) -> Direction {
        match self {
            Direction::N => Direction::W,
            Direction::W => Direction::S,
            Direction::S => Direction::E,
            Direction::E => Direction::N,
        }
    }

    /// Clockwise quarter turn.
    pub fn right(self) -> Direction {
        match self {
            Direction::N => Direction::E,
            Direction::E => Direction::S,
            Direction::S => Direction::W,
            Direction::W => Direction::N,
        }
    }

    pub fn rotate(self, turn: Turn) -> Direction {
        match turn {
            Turn::Left => self.left(),
            Turn::Right => self.right(),
        }
    }

    /// Unit offset `(dx, dy)` of one step in this direction.
    pub fn delta(self) -> (i32, i32) {
        match self {
            Direction::N => (0, -1),
            Direction::E => (1, 0),
            Direction::S => (0, 1),
            Direction::W => (-1, 0),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::N => "N",
            Direction::E => "E",
            Direction::S => "S",
            Direction::W => "W",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A grid cell. Signed so that the cell in front of a robot on the border
/// can be represented before it is bounds-checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

impl Cell {
    pub const fn new(x: i32, y: i32) -> Self {
        Cell { x, y }
    }

    pub fn step(self, facing: Direction) -> Cell {
        let (dx, dy) = facing.delta();
        Cell::new(self.x + dx, self.y + dy)
    }

    pub fn neighbours(self) -> impl Iterator<Item = Cell> {
        Direction::ALL.into_iter().map(move |d| self.step(d))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "PoseDoc", into = "PoseDoc")]
pub struct RobotPose {
    pub cell: Cell,
    pub facing: Direction,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PoseDoc {
    x: i32,
    y: i32,
    facing: Direction,
}

impl From<PoseDoc> for RobotPose {
    fn from(doc: PoseDoc) -> Self {
        RobotPose::new(Cell::new(doc.x, doc.y), doc.facing)
    }
}

impl From<RobotPose> for PoseDoc {
    fn from(pose: RobotPose) -> Self {
        PoseDoc {
            x: pose.cell.x,
            y: pose.cell.y,
            facing: pose.facing,
        }
    }
}

impl RobotPose {
    pub const fn new(cell: Cell, facing: Direction) -> Self {
        RobotPose { cell, facing }
    }

    /// The cell one step ahead. Not bounds-checked.
    pub fn forward_cell(&self) -> Cell {
        self.cell.step(self.facing)
    }

    pub fn turned(self, turn: Turn) -> RobotPose {
        RobotPose::new(self.cell, self.facing.rotate(turn))
    }
}

/// A maze: grid size, walls, where the robot starts and where it must go.
///
/// Construction does not check the level invariants; run
/// [`crate::levels::validate_level`] on anything that came from outside.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Level {
    pub id: String,
    pub name: String,
    pub width: u32,
    pub height: u32,
    pub start: RobotPose,
    pub goal: Cell,
    #[serde(deserialize_with = "walls_without_duplicates")]
    pub walls: BTreeSet<Cell>,
}

fn walls_without_duplicates<'de, D>(de: D) -> Result<BTreeSet<Cell>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    let cells = Vec::<Cell>::deserialize(de)?;
    let mut walls = BTreeSet::new();
    for cell in cells {
        if !walls.insert(cell) {
            return Err(serde::de::Error::custom(format_args!(
                "duplicate wall at {cell}"
            )));
        }
    }
    Ok(walls)
}

impl Level {
    pub fn in_bounds(&self, cell: Cell) -> bool {
        cell.x >= 0 && cell.y >= 0 && (cell.x as i64) < self.width as i64 && (cell.y as i64) < self.height as i64
    }

    /// True iff the robot may stand on `cell`: inside the grid and not a wall.
    pub fn cell_free(&self, cell: Cell) -> bool {
        self.in_bounds(cell) && !self.walls.contains(&cell)
    }

    pub fn free_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let (w, h) = (self.width.min(MAX_DIMENSION) as i32, self.height.min(MAX_DIMENSION) as i32);
        (0..h)
            .flat_map(move |y| (0..w).map(move |x| Cell::new(x, y)))
            .filter(|c| !self.walls.contains(c))
    }
}

pub fn rotate(facing: Direction, turn: Turn) -> Direction {
    facing.rotate(turn)
}

pub fn forward_cell(pose: &RobotPose) -> Cell {
    pose.forward_cell()
}

pub fn cell_free(level: &Level, cell: Cell) -> bool {
    level.cell_free(cell)
}
