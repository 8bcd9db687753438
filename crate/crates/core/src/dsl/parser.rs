//! Recursive-descent parser for the textual program form.
//!
//! ```text
//! program   = { statement } ;
//! statement = "move" INT | "left" | "right"
//!           | "repeat" INT block
//!           | "while" condition block
//!           | "if" condition block [ "else" block ] ;
//! block     = "{" { statement } "}" ;
//! condition = "ahead_clear" | "left_clear" | "right_clear"
//!           | "at_goal" | "not" condition ;
//! INT       = decimal 1..99 ;
//! ```
//!
//! Whitespace is insignificant and `#` starts a comment that runs to the end
//! of the line.

use crate::diag::{Code, Diagnostic, Span};
use crate::dsl::ast::{Condition, Program, Statement, StmtKind};
use crate::dsl::limits::{self, MAX_DEPTH, MAX_NOT_DEPTH};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok<'a> {
    Word(&'a str),
    Int(i64),
    LBrace,
    RBrace,
    Eof,
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    tok: Tok<'a>,
    span: Span,
}

fn lex(src: &str) -> Result<Vec<Token<'_>>, Diagnostic> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'{' | b'}' => {
                i += 1;
                let tok = if b == b'{' { Tok::LBrace } else { Tok::RBrace };
                tokens.push(Token {
                    tok,
                    span: (start..i).into(),
                });
            }
            b'-' | b'0'..=b'9' => {
                if b == b'-' {
                    i += 1;
                }
                let digits = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits {
                    return Err(Diagnostic::new(Code::EParse, "'-' must be followed by a number")
                        .with_span(start..i));
                }
                // Saturate: anything this large is out of range anyway.
                let magnitude = src[digits..i].parse::<i64>().unwrap_or(i64::MAX);
                let value = if b == b'-' { -magnitude } else { magnitude };
                tokens.push(Token {
                    tok: Tok::Int(value),
                    span: (start..i).into(),
                });
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push(Token {
                    tok: Tok::Word(&src[start..i]),
                    span: (start..i).into(),
                });
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                let end = start + ch.len_utf8();
                return Err(Diagnostic::new(Code::EParse, format!("unexpected character {ch:?}"))
                    .with_span(start..end));
            }
        }
    }
    tokens.push(Token {
        tok: Tok::Eof,
        span: (src.len()..src.len()).into(),
    });
    Ok(tokens)
}

/// Marker for a syntax error that has already been recorded.
struct Abort;

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Token<'a>>,
    pos: usize,
    diags: Vec<Diagnostic>,
    /// Source span of each statement, indexed by id.
    spans: Vec<Span>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Token<'a> {
        self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token<'a> {
        let t = self.tokens[self.pos];
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&mut self, span: Span, message: impl Into<String>) -> Result<T, Abort> {
        self.diags.push(Diagnostic::new(Code::EParse, message).with_span(span));
        Err(Abort)
    }

    fn describe(&self, tok: Token<'a>) -> String {
        match tok.tok {
            Tok::Word(w) => format!("'{w}'"),
            Tok::Int(_) => format!("the number {}", &self.src[tok.span.start..tok.span.end]),
            Tok::LBrace => "'{'".into(),
            Tok::RBrace => "'}'".into(),
            Tok::Eof => "the end of the program".into(),
        }
    }

    fn program(&mut self) -> Result<Vec<Statement>, Abort> {
        let mut body = Vec::new();
        loop {
            match self.peek().tok {
                Tok::Eof => return Ok(body),
                Tok::RBrace => {
                    let t = self.bump();
                    return self.fail(t.span, "this '}' does not close any block");
                }
                _ => body.push(self.statement(1)?),
            }
        }
    }

    fn block(&mut self, depth: usize) -> Result<Vec<Statement>, Abort> {
        let open = self.peek();
        if open.tok != Tok::LBrace {
            let what = self.describe(open);
            return self.fail(open.span, format!("expected '{{' to start a block, found {what}"));
        }
        self.bump();
        let mut body = Vec::new();
        loop {
            match self.peek().tok {
                Tok::RBrace => {
                    self.bump();
                    return Ok(body);
                }
                Tok::Eof => return self.fail(open.span, "this '{' is never closed with '}'"),
                _ => body.push(self.statement(depth)?),
            }
        }
    }

    fn count(&mut self, keyword: &str) -> Result<u32, Abort> {
        let t = self.bump();
        let Tok::Int(n) = t.tok else {
            let what = self.describe(t);
            return self.fail(t.span, format!("expected a number after '{keyword}', found {what}"));
        };
        if n < limits::MIN_COUNT as i64 || n > limits::MAX_COUNT as i64 {
            let text = &self.src[t.span.start..t.span.end];
            let (code, message) = if keyword == "move" {
                (Code::EMoveRange, limits::move_range_message(text))
            } else {
                (Code::ELoopRange, limits::loop_range_message(text))
            };
            self.diags.push(Diagnostic::new(code, message).with_span(t.span));
        }
        Ok(n.clamp(0, u32::MAX as i64) as u32)
    }

    fn condition(&mut self) -> Result<Condition, Abort> {
        let first = self.peek().span;
        let mut nots = 0usize;
        while self.peek().tok == Tok::Word("not") {
            self.bump();
            nots += 1;
        }
        let t = self.bump();
        let mut cond = match t.tok {
            Tok::Word("ahead_clear") => Condition::AheadClear,
            Tok::Word("left_clear") => Condition::LeftClear,
            Tok::Word("right_clear") => Condition::RightClear,
            Tok::Word("at_goal") => Condition::AtGoal,
            _ => {
                let what = self.describe(t);
                return self.fail(
                    t.span,
                    format!(
                        "expected a condition (ahead_clear, left_clear, right_clear, at_goal), found {what}"
                    ),
                );
            }
        };
        if nots > MAX_NOT_DEPTH {
            self.diags.push(
                Diagnostic::new(Code::ENotDepth, limits::not_depth_message(nots))
                    .with_span(first.start..t.span.end),
            );
        }
        // Already rejected past the limit; keep the tree shallow.
        for _ in 0..nots.min(MAX_NOT_DEPTH + 1) {
            cond = Condition::negate(cond);
        }
        Ok(cond)
    }

    fn statement(&mut self, depth: usize) -> Result<Statement, Abort> {
        let head = self.bump();
        let id = self.spans.len() as u32;
        self.spans.push(head.span);
        if depth > MAX_DEPTH {
            self.diags.push(
                Diagnostic::new(Code::EDepth, limits::depth_message())
                    .at_statement(id)
                    .with_span(head.span),
            );
            return Err(Abort);
        }
        let kind = match head.tok {
            Tok::Word("move") => StmtKind::Move {
                squares: self.count("move")?,
            },
            Tok::Word("left") => StmtKind::TurnLeft,
            Tok::Word("right") => StmtKind::TurnRight,
            Tok::Word("repeat") => {
                let times = self.count("repeat")?;
                let body = self.block(depth + 1)?;
                StmtKind::Repeat { times, body }
            }
            Tok::Word("while") => {
                let cond = self.condition()?;
                let body = self.block(depth + 1)?;
                StmtKind::While { cond, body }
            }
            Tok::Word("if") => {
                let cond = self.condition()?;
                let then_branch = self.block(depth + 1)?;
                let else_branch = if self.peek().tok == Tok::Word("else") {
                    self.bump();
                    self.block(depth + 1)?
                } else {
                    Vec::new()
                };
                StmtKind::IfElse {
                    cond,
                    then_branch,
                    else_branch,
                }
            }
            Tok::Word("else") => return self.fail(head.span, "'else' must follow the block of an 'if'"),
            Tok::Word(w) => {
                return self.fail(
                    head.span,
                    format!("unknown command '{w}' (try move, left, right, repeat, while or if)"),
                )
            }
            _ => {
                let what = self.describe(head);
                return self.fail(head.span, format!("expected a command, found {what}"));
            }
        };
        let end = self.tokens[self.pos.saturating_sub(1)].span.end;
        self.spans[id as usize] = (head.span.start..end).into();
        Ok(Statement { id, kind })
    }
}

/// Parses program text. On failure returns every diagnostic found; a
/// syntax error stops parsing at the first offending token.
pub fn parse_program(text: &str) -> Result<Program, Vec<Diagnostic>> {
    let tokens = lex(text).map_err(|d| vec![d])?;
    let mut parser = Parser {
        src: text,
        tokens,
        pos: 0,
        diags: Vec::new(),
        spans: Vec::new(),
    };
    let body = parser.program();
    let mut diags = parser.diags;
    let body = match body {
        Ok(body) if diags.is_empty() || diags.iter().all(|d| d.code != Code::EParse) => body,
        _ => return Err(diags),
    };
    let program = Program {
        body,
        source_text: Some(text.to_owned()),
    };
    debug_assert!(program.ids_are_preorder());
    // Ranges and negation were reported with token spans above; only the
    // whole-program limits remain.
    diags.extend(
        limits::check_limits(&program, Some(&parser.spans))
            .into_iter()
            .filter(|d| matches!(d.code, Code::EDepth | Code::ESize)),
    );
    if diags.is_empty() {
        Ok(program)
    } else {
        Err(diags)
    }
}
