use std::fmt;

/// Sensor predicates usable in `while` and `if`. All are relative to the
/// robot's current facing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Condition {
    AheadClear,
    LeftClear,
    RightClear,
    AtGoal,
    Not(Box<Condition>),
}

impl Condition {
    pub fn negate(inner: Condition) -> Condition {
        Condition::Not(Box::new(inner))
    }

    /// Number of nested `not` wrappers.
    pub fn not_depth(&self) -> usize {
        let mut depth = 0;
        let mut cur = self;
        while let Condition::Not(inner) = cur {
            depth += 1;
            cur = inner;
        }
        depth
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            Condition::AheadClear => "ahead_clear",
            Condition::LeftClear => "left_clear",
            Condition::RightClear => "right_clear",
            Condition::AtGoal => "at_goal",
            Condition::Not(_) => "not",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Not(inner) => write!(f, "not {inner}"),
            other => f.write_str(other.keyword()),
        }
    }
}

/// The three compound statement kinds that earn a construct bonus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstructKind {
    Repeat,
    While,
    If,
}

impl ConstructKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ConstructKind::Repeat => "repeat",
            ConstructKind::While => "while",
            ConstructKind::If => "if",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    /// Pre-order index of this statement within its program.
    pub id: u32,
    pub kind: StmtKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StmtKind {
    Move { squares: u32 },
    TurnLeft,
    TurnRight,
    Repeat { times: u32, body: Vec<Statement> },
    While { cond: Condition, body: Vec<Statement> },
    IfElse {
        cond: Condition,
        then_branch: Vec<Statement>,
        else_branch: Vec<Statement>,
    },
}

impl Statement {
    pub fn new(kind: StmtKind) -> Self {
        Statement { id: 0, kind }
    }

    pub fn move_by(squares: u32) -> Self {
        Self::new(StmtKind::Move { squares })
    }

    pub fn left() -> Self {
        Self::new(StmtKind::TurnLeft)
    }

    pub fn right() -> Self {
        Self::new(StmtKind::TurnRight)
    }

    pub fn repeat(times: u32, body: Vec<Statement>) -> Self {
        Self::new(StmtKind::Repeat { times, body })
    }

    pub fn while_loop(cond: Condition, body: Vec<Statement>) -> Self {
        Self::new(StmtKind::While { cond, body })
    }

    pub fn if_else(cond: Condition, then_branch: Vec<Statement>, else_branch: Vec<Statement>) -> Self {
        Self::new(StmtKind::IfElse {
            cond,
            then_branch,
            else_branch,
        })
    }

    pub fn construct_kind(&self) -> Option<ConstructKind> {
        match self.kind {
            StmtKind::Repeat { .. } => Some(ConstructKind::Repeat),
            StmtKind::While { .. } => Some(ConstructKind::While),
            StmtKind::IfElse { .. } => Some(ConstructKind::If),
            _ => None,
        }
    }

    pub fn condition(&self) -> Option<&Condition> {
        match &self.kind {
            StmtKind::While { cond, .. } | StmtKind::IfElse { cond, .. } => Some(cond),
            _ => None,
        }
    }

    /// Child blocks in syntactic order (`then` before `else`).
    pub fn blocks(&self) -> Vec<&[Statement]> {
        match &self.kind {
            StmtKind::Repeat { body, .. } | StmtKind::While { body, .. } => vec![body],
            StmtKind::IfElse {
                then_branch,
                else_branch,
                ..
            } => vec![then_branch, else_branch],
            _ => Vec::new(),
        }
    }

    fn blocks_mut(&mut self) -> Vec<&mut Vec<Statement>> {
        match &mut self.kind {
            StmtKind::Repeat { body, .. } | StmtKind::While { body, .. } => vec![body],
            StmtKind::IfElse {
                then_branch,
                else_branch,
                ..
            } => vec![then_branch, else_branch],
            _ => Vec::new(),
        }
    }
}

/// A whole program: the student's command queue.
///
/// Equality compares the statement tree only; `source_text` is ignored.
#[derive(Debug, Clone, Default)]
pub struct Program {
    pub body: Vec<Statement>,
    pub source_text: Option<String>,
}

impl PartialEq for Program {
    fn eq(&self, other: &Self) -> bool {
        self.body == other.body
    }
}

impl Eq for Program {}

impl Program {
    /// Builds a program and assigns pre-order ids to every statement.
    pub fn new(body: Vec<Statement>) -> Self {
        let mut program = Program {
            body,
            source_text: None,
        };
        program.renumber();
        program
    }

    pub fn renumber(&mut self) {
        fn walk(block: &mut [Statement], next: &mut u32) {
            for stmt in block {
                stmt.id = *next;
                *next += 1;
                for child in stmt.blocks_mut() {
                    walk(child, next);
                }
            }
        }
        let mut next = 0;
        walk(&mut self.body, &mut next);
    }

    /// True iff the stored ids are exactly the pre-order numbering.
    pub fn ids_are_preorder(&self) -> bool {
        let mut expected = 0u32;
        let mut ok = true;
        self.visit(|stmt, _| {
            ok &= stmt.id == expected;
            expected += 1;
        });
        ok
    }

    /// Calls `f(statement, depth)` for every statement in pre-order.
    /// Top-level statements have depth 1.
    pub fn visit<'a>(&'a self, mut f: impl FnMut(&'a Statement, usize)) {
        fn walk<'a>(block: &'a [Statement], depth: usize, f: &mut impl FnMut(&'a Statement, usize)) {
            for stmt in block {
                f(stmt, depth);
                for child in stmt.blocks() {
                    walk(child, depth + 1, f);
                }
            }
        }
        walk(&self.body, 1, &mut f);
    }

    pub fn statement_count(&self) -> usize {
        let mut n = 0;
        self.visit(|_, _| n += 1);
        n
    }

    /// Length of the longest chain of nested statements; 0 for an empty program.
    pub fn depth(&self) -> usize {
        let mut max = 0;
        self.visit(|_, d| max = max.max(d));
        max
    }

    /// Statements indexed by id. Only meaningful when ids are pre-order.
    pub fn statements_by_id(&self) -> Vec<&Statement> {
        let mut out = Vec::new();
        self.visit(|s, _| out.push(s));
        out
    }
}
