//! Random valid programs and levels, for fuzzing and property tests.

use rand::Rng;

use crate::dsl::ast::{Condition, Program, Statement};
use crate::dsl::limits::{MAX_COUNT, MAX_DEPTH, MAX_NOT_DEPTH, MAX_STATEMENTS};
use crate::model::{Cell, Direction, Level, RobotPose};

#[derive(Debug, Clone, Copy)]
pub struct ProgramShape {
    pub max_depth: usize,
    pub max_statements: usize,
    /// Largest `move`/`repeat` count to generate.
    pub max_count: u32,
    /// Longest block to generate.
    pub max_block: usize,
}

impl Default for ProgramShape {
    fn default() -> Self {
        ProgramShape {
            max_depth: MAX_DEPTH,
            max_statements: MAX_STATEMENTS,
            max_count: MAX_COUNT,
            max_block: 6,
        }
    }
}

pub fn random_condition(rng: &mut impl Rng) -> Condition {
    let base = match rng.gen_range(0..4) {
        0 => Condition::AheadClear,
        1 => Condition::LeftClear,
        2 => Condition::RightClear,
        _ => Condition::AtGoal,
    };
    // mostly plain, sometimes negated, rarely deeply negated
    let nots = match rng.gen_range(0..10) {
        0..=5 => 0,
        6..=8 => 1,
        _ => rng.gen_range(2..=MAX_NOT_DEPTH),
    };
    (0..nots).fold(base, |c, _| Condition::negate(c))
}

fn random_count(rng: &mut impl Rng, max: u32) -> u32 {
    let max = max.clamp(1, MAX_COUNT);
    if rng.gen_bool(0.8) {
        rng.gen_range(1..=max.min(4))
    } else {
        rng.gen_range(1..=max)
    }
}

struct Builder<'a, R> {
    rng: &'a mut R,
    shape: ProgramShape,
    remaining: usize,
}

impl<R: Rng> Builder<'_, R> {
    fn block(&mut self, depth: usize) -> Vec<Statement> {
        let len = self.rng.gen_range(0..=self.shape.max_block);
        let mut out = Vec::new();
        for _ in 0..len {
            if self.remaining == 0 {
                break;
            }
            out.push(self.statement(depth));
        }
        out
    }

    fn statement(&mut self, depth: usize) -> Statement {
        self.remaining -= 1;
        let can_nest = depth < self.shape.max_depth;
        let pick = if can_nest {
            self.rng.gen_range(0..10)
        } else {
            self.rng.gen_range(0..5)
        };
        let max = self.shape.max_count;
        match pick {
            0 | 1 => Statement::move_by(random_count(self.rng, max)),
            2 | 3 => Statement::left(),
            4 => Statement::right(),
            5 | 6 => {
                let times = random_count(self.rng, max);
                Statement::repeat(times, self.block(depth + 1))
            }
            7 | 8 => {
                let cond = random_condition(self.rng);
                Statement::while_loop(cond, self.block(depth + 1))
            }
            _ => {
                let cond = random_condition(self.rng);
                let then_branch = self.block(depth + 1);
                let else_branch = if self.rng.gen_bool(0.5) {
                    self.block(depth + 1)
                } else {
                    Vec::new()
                };
                Statement::if_else(cond, then_branch, else_branch)
            }
        }
    }
}

/// A random program within the static limits (and within `shape`).
pub fn random_program(rng: &mut impl Rng, shape: &ProgramShape) -> Program {
    let shape = ProgramShape {
        max_depth: shape.max_depth.min(MAX_DEPTH),
        max_statements: shape.max_statements.min(MAX_STATEMENTS),
        ..*shape
    };
    let mut builder = Builder {
        rng,
        shape,
        remaining: shape.max_statements,
    };
    let body = builder.block(1);
    Program::new(body)
}

/// A random valid level with side lengths in `min_side..=max_side` and each
/// cell walled with probability `wall_density`. Not necessarily solvable.
pub fn random_level(rng: &mut impl Rng, min_side: u32, max_side: u32, wall_density: f64) -> Level {
    loop {
        let width = rng.gen_range(min_side..=max_side);
        let height = rng.gen_range(min_side..=max_side);
        if width * height < 2 {
            continue;
        }
        let cell = |rng: &mut _| Cell::new(Rng::gen_range(rng, 0..width as i32), Rng::gen_range(rng, 0..height as i32));
        let start = cell(rng);
        let goal = cell(rng);
        if start == goal {
            continue;
        }
        let mut walls = std::collections::BTreeSet::new();
        for y in 0..height as i32 {
            for x in 0..width as i32 {
                let c = Cell::new(x, y);
                if c != start && c != goal && rng.gen_bool(wall_density) {
                    walls.insert(c);
                }
            }
        }
        let facing = Direction::ALL[rng.gen_range(0..4)];
        return Level {
            id: "random".into(),
            name: "Random".into(),
            width,
            height,
            start: RobotPose::new(start, facing),
            goal,
            walls,
        };
    }
}
