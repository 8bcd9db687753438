//! Test-only oracles, kept independent of the engine's own code paths.
//!
//! Also included by the `roborun` acceptance suite via `#[path]`.

#![allow(dead_code)]

use std::collections::BTreeSet;

use roborun_core::dsl::{Condition, Program, StmtKind};
use roborun_core::interpreter::event_budget;
use roborun_core::{Cell, Direction, ExecLimits, Level, Outcome, RobotPose, Trace, TraceEvent};

pub fn level(
    width: u32,
    height: u32,
    start: (i32, i32, Direction),
    goal: (i32, i32),
    walls: &[(i32, i32)],
) -> Level {
    Level {
        id: "test".into(),
        name: "Test".into(),
        width,
        height,
        start: RobotPose::new(Cell::new(start.0, start.1), start.2),
        goal: Cell::new(goal.0, goal.1),
        walls: walls.iter().map(|&(x, y)| Cell::new(x, y)).collect::<BTreeSet<_>>(),
    }
}

/// 3x3, wall column at x = 1, start (0,0) facing east, goal (2,2).
pub fn unsolvable_column() -> Level {
    level(3, 3, (0, 0, Direction::E), (2, 2), &[(1, 0), (1, 1), (1, 2)])
}

/// One row of `len` open cells, robot at the west end facing east, goal at
/// the east end.
pub fn corridor(len: u32) -> Level {
    level(len, 1, (0, 0, Direction::E), (len as i32 - 1, 0), &[])
}

fn free(level: &Level, c: Cell) -> bool {
    c.x >= 0
        && c.y >= 0
        && c.x < level.width as i32
        && c.y < level.height as i32
        && !level.walls.contains(&c)
}

fn ahead(c: Cell, d: Direction) -> Cell {
    match d {
        Direction::N => Cell::new(c.x, c.y - 1),
        Direction::S => Cell::new(c.x, c.y + 1),
        Direction::E => Cell::new(c.x + 1, c.y),
        Direction::W => Cell::new(c.x - 1, c.y),
    }
}

fn ccw(d: Direction) -> Direction {
    match d {
        Direction::N => Direction::W,
        Direction::W => Direction::S,
        Direction::S => Direction::E,
        Direction::E => Direction::N,
    }
}

fn cw(d: Direction) -> Direction {
    ccw(ccw(ccw(d)))
}

fn holds(cond: &Condition, pose: RobotPose, level: &Level) -> bool {
    match cond {
        Condition::AheadClear => free(level, ahead(pose.cell, pose.facing)),
        Condition::LeftClear => free(level, ahead(pose.cell, ccw(pose.facing))),
        Condition::RightClear => free(level, ahead(pose.cell, cw(pose.facing))),
        Condition::AtGoal => pose.cell == level.goal,
        Condition::Not(inner) => !holds(inner, pose, level),
    }
}

/// Replays a trace from the level start and checks every trace invariant.
pub fn audit_trace(program: &Program, level: &Level, limits: &ExecLimits, trace: &Trace) -> Result<(), String> {
    let stmts = program.statements_by_id();
    let n = stmts.len();
    let events = &trace.events;

    let terminals: Vec<usize> = (0..events.len()).filter(|&i| events[i].is_terminal()).collect();
    if terminals.len() > 1 {
        return Err(format!("{} terminal events", terminals.len()));
    }
    if let Some(&i) = terminals.first() {
        if i + 1 != events.len() {
            return Err(format!("terminal event at {i} is not last"));
        }
    }
    let expected = match events.last() {
        Some(TraceEvent::GoalReached { .. }) => Outcome::Goal,
        Some(TraceEvent::Crashed { .. }) => Outcome::Crash,
        Some(TraceEvent::StepLimitHit) => Outcome::StepLimit,
        _ => Outcome::Ended,
    };
    if expected != trace.outcome {
        return Err(format!("outcome {:?} but terminal implies {:?}", trace.outcome, expected));
    }

    let primitive = events
        .iter()
        .filter(|e| matches!(e, TraceEvent::Moved { .. } | TraceEvent::Turned { .. } | TraceEvent::ConditionEval { .. }))
        .count();
    if primitive != trace.primitive_steps as usize {
        return Err(format!("{primitive} primitive events but steps = {}", trace.primitive_steps));
    }
    if trace.primitive_steps > limits.max_primitive_steps {
        return Err("step limit exceeded".into());
    }
    if events.len() > 4 * limits.max_primitive_steps as usize + n {
        return Err(format!("{} events exceeds the memory bound", events.len()));
    }
    if trace.outcome == Outcome::StepLimit
        && trace.primitive_steps != limits.max_primitive_steps
        && events.len() != event_budget(limits, n)
    {
        return Err("stopped at the limit without exhausting steps or events".into());
    }

    let mut pose = level.start;
    for (i, event) in events.iter().enumerate() {
        match *event {
            TraceEvent::StmtEnter { statement_id } => {
                if statement_id as usize >= n {
                    return Err(format!("event {i}: unknown statement {statement_id}"));
                }
            }
            TraceEvent::Moved { from, to, facing } => {
                if from != pose.cell || facing != pose.facing || to != ahead(pose.cell, pose.facing) {
                    return Err(format!("event {i}: move inconsistent with pose {pose:?}"));
                }
                if !free(level, to) {
                    return Err(format!("event {i}: moved onto a blocked cell {to:?}"));
                }
                pose.cell = to;
                if to == level.goal && !matches!(events.get(i + 1), Some(TraceEvent::GoalReached { .. })) {
                    return Err(format!("event {i}: reached the goal without stopping"));
                }
            }
            TraceEvent::Turned { statement_id, from, to } => {
                let turn = match stmts.get(statement_id as usize).map(|s| &s.kind) {
                    Some(StmtKind::TurnLeft) => ccw(from),
                    Some(StmtKind::TurnRight) => cw(from),
                    _ => return Err(format!("event {i}: turn from a non-turn statement")),
                };
                if from != pose.facing || to != turn {
                    return Err(format!("event {i}: bad turn"));
                }
                pose.facing = to;
            }
            TraceEvent::ConditionEval { statement_id, value } => {
                let Some(cond) = stmts.get(statement_id as usize).and_then(|s| s.condition()) else {
                    return Err(format!("event {i}: condition of a statement without one"));
                };
                if holds(cond, pose, level) != value {
                    return Err(format!("event {i}: condition value is wrong"));
                }
            }
            TraceEvent::Crashed { at, attempted } => {
                if at != pose.cell || attempted != ahead(pose.cell, pose.facing) || free(level, attempted) {
                    return Err(format!("event {i}: bad crash"));
                }
            }
            TraceEvent::GoalReached { at } => {
                if at != pose.cell || at != level.goal {
                    return Err(format!("event {i}: bad goal event"));
                }
            }
            TraceEvent::StepLimitHit => {}
        }
    }
    if pose != trace.final_pose {
        return Err(format!("replayed pose {pose:?} differs from final {:?}", trace.final_pose));
    }
    if !free(level, trace.final_pose.cell) {
        return Err("robot ended on a blocked cell".into());
    }
    Ok(())
}

/// Shortest start-to-goal distance by repeated relaxation until nothing
/// changes (no queue, no visiting order).
pub fn relaxation_distance(level: &Level) -> Option<u32> {
    let (w, h) = (level.width as i32, level.height as i32);
    let idx = |c: Cell| (c.y * w + c.x) as usize;
    let mut dist = vec![u32::MAX; (w * h) as usize];
    dist[idx(level.start.cell)] = 0;
    loop {
        let mut changed = false;
        for y in 0..h {
            for x in 0..w {
                let c = Cell::new(x, y);
                if !free(level, c) {
                    continue;
                }
                for d in [Direction::N, Direction::E, Direction::S, Direction::W] {
                    let nb = ahead(c, d);
                    if free(level, nb) && dist[idx(nb)] != u32::MAX && dist[idx(nb)] + 1 < dist[idx(c)] {
                        dist[idx(c)] = dist[idx(nb)] + 1;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    match dist[idx(level.goal)] {
        u32::MAX => None,
        d => Some(d),
    }
}

/// Movement-only view of a trace: moves, turn directions and condition
/// values, without statement ids.
pub fn behaviour(trace: &Trace) -> Vec<String> {
    trace
        .events
        .iter()
        .filter_map(|e| match e {
            TraceEvent::StmtEnter { .. } => None,
            TraceEvent::Turned { from, to, .. } => Some(format!("turn {from}->{to}")),
            TraceEvent::ConditionEval { value, .. } => Some(format!("cond {value}")),
            other => Some(format!("{other:?}")),
        })
        .collect()
}

/// Shortest start-to-goal length by depth-first enumeration of simple paths,
/// skipping only branches that provably cannot beat the best found so far.
/// Exponential; only meant for small grids.
pub fn simple_path_distance(level: &Level) -> Option<u32> {
    fn dfs(level: &Level, at: Cell, len: u32, seen: &mut BTreeSet<Cell>, best: &mut Option<u32>) {
        let remaining = at.x.abs_diff(level.goal.x) + at.y.abs_diff(level.goal.y);
        if best.is_some_and(|b| len + remaining >= b) {
            return;
        }
        if at == level.goal {
            *best = Some(best.map_or(len, |b| b.min(len)));
            return;
        }
        for d in [Direction::N, Direction::E, Direction::S, Direction::W] {
            let nb = ahead(at, d);
            if free(level, nb) && seen.insert(nb) {
                dfs(level, nb, len + 1, seen, best);
                seen.remove(&nb);
            }
        }
    }
    let mut best = None;
    let mut seen = BTreeSet::from([level.start.cell]);
    dfs(level, level.start.cell, 0, &mut seen, &mut best);
    best
}
