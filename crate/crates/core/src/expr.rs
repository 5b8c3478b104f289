//! Surface syntax for game forms.
//!
//! ```text
//! expr := "empty"
//!       | "star(" NAT ")"
//!       | "nim(" NAT ("," NAT)* ")"
//!       | "pass(" expr ")"
//!       | "split(" expr "," expr ")"
//!       | "sum(" expr ("," expr)+ ")"
//!       | "{" [expr ("," expr)*] "}"
//! ```
//!
//! Whitespace is ignored between tokens. `{...}` lists options literally,
//! which lets any interned form be printed back as an expression.

use std::fmt;

use thiserror::Error;

use crate::game::Label;
use crate::{Arena, GameError, GameId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameExpr {
    Empty,
    Star(u32),
    Nim(Vec<u32>),
    Pass(Box<GameExpr>),
    Split(Box<GameExpr>, Box<GameExpr>),
    Sum(Vec<GameExpr>),
    Options(Vec<GameExpr>),
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

impl fmt::Display for GameExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameExpr::Empty => f.write_str("empty"),
            GameExpr::Star(n) => write!(f, "star({n})"),
            GameExpr::Nim(piles) => {
                f.write_str("nim(")?;
                write_list(f, piles)?;
                f.write_str(")")
            }
            GameExpr::Pass(e) => write!(f, "pass({e})"),
            GameExpr::Split(g, h) => write!(f, "split({g},{h})"),
            GameExpr::Sum(terms) => {
                f.write_str("sum(")?;
                write_list(f, terms)?;
                f.write_str(")")
            }
            GameExpr::Options(opts) => {
                f.write_str("{")?;
                write_list(f, opts)?;
                f.write_str("}")
            }
        }
    }
}

impl GameExpr {
    /// Builds the form in `arena`.
    pub fn eval(&self, arena: &mut Arena) -> Result<GameId, GameError> {
        match self {
            GameExpr::Empty => Ok(arena.empty()),
            GameExpr::Star(n) => arena.nimber(*n),
            GameExpr::Nim(piles) => arena.nim_position(piles),
            GameExpr::Pass(e) => {
                let g = e.eval(arena)?;
                arena.pass_op(g)
            }
            GameExpr::Split(g, h) => {
                let g = g.eval(arena)?;
                let h = h.eval(arena)?;
                arena.split_sum(g, h)
            }
            GameExpr::Sum(terms) => {
                let mut acc = arena.empty();
                for t in terms {
                    let g = t.eval(arena)?;
                    acc = arena.disjunctive_sum(acc, g)?;
                }
                Ok(acc)
            }
            GameExpr::Options(opts) => {
                let ids = opts.iter().map(|e| e.eval(arena)).collect::<Result<Vec<_>, _>>()?;
                arena.mk_game(ids)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: expected {}, found {found}", expected.join(" or "))]
    Syntax { offset: usize, expected: Vec<&'static str>, found: String },
    #[error("number at offset {offset} does not fit in 32 bits")]
    Overflow { offset: usize },
    #[error("expression nested deeper than {MAX_DEPTH} at offset {offset}")]
    TooDeep { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::Overflow { offset } | ParseError::TooDeep { offset } => {
                *offset
            }
        }
    }
}

const MAX_DEPTH: usize = 1000;

pub fn parse_expr(text: &str) -> Result<GameExpr, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, depth: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.unexpected(vec!["end of input"]));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&mut self, expected: Vec<&'static str>) -> ParseError {
        self.skip_ws();
        let found = match self.src.get(self.pos) {
            None => "end of input".to_string(),
            Some(_) => {
                let rest = String::from_utf8_lossy(&self.src[self.pos..]);
                format!("{:?}", rest.chars().next().unwrap_or('?'))
            }
        };
        ParseError::Syntax { offset: self.pos, expected, found }
    }

    fn eat(&mut self, c: u8, name: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(vec![name]))
        }
    }

    fn nat(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected(vec!["number"]));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| ParseError::Overflow { offset: start })
    }

    fn word(&mut self) -> &[u8] {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn expr(&mut self) -> Result<GameExpr, ParseError> {
        if self.depth >= MAX_DEPTH {
            return Err(ParseError::TooDeep { offset: self.pos });
        }
        self.depth += 1;
        let e = self.expr_inner();
        self.depth -= 1;
        e
    }

    fn expr_inner(&mut self) -> Result<GameExpr, ParseError> {
        const STARTS: [&str; 7] = ["empty", "star", "nim", "pass", "split", "sum", "'{'"];
        if self.peek() == Some(b'{') {
            self.pos += 1;
            let mut opts = Vec::new();
            if self.peek() == Some(b'}') {
                self.pos += 1;
                return Ok(GameExpr::Options(opts));
            }
            loop {
                opts.push(self.expr()?);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b'}') => {
                        self.pos += 1;
                        return Ok(GameExpr::Options(opts));
                    }
                    _ => return Err(self.unexpected(vec!["','", "'}'"])),
                }
            }
        }
        let start = self.pos;
        let word = self.word().to_vec();
        let e = match word.as_slice() {
            b"empty" => GameExpr::Empty,
            b"star" => {
                self.eat(b'(', "'('")?;
                let n = self.nat()?;
                self.eat(b')', "')'")?;
                GameExpr::Star(n)
            }
            b"nim" => {
                self.eat(b'(', "'('")?;
                let mut piles = vec![self.nat()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    piles.push(self.nat()?);
                }
                self.eat(b')', "')'")?;
                GameExpr::Nim(piles)
            }
            b"pass" => {
                self.eat(b'(', "'('")?;
                let inner = self.expr()?;
                self.eat(b')', "')'")?;
                GameExpr::Pass(Box::new(inner))
            }
            b"split" => {
                self.eat(b'(', "'('")?;
                let g = self.expr()?;
                self.eat(b',', "','")?;
                let h = self.expr()?;
                self.eat(b')', "')'")?;
                GameExpr::Split(Box::new(g), Box::new(h))
            }
            b"sum" => {
                self.eat(b'(', "'('")?;
                let mut terms = vec![self.expr()?];
                self.eat(b',', "','")?;
                terms.push(self.expr()?);
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    terms.push(self.expr()?);
                }
                self.eat(b')', "')'")?;
                GameExpr::Sum(terms)
            }
            _ => {
                self.pos = start;
                return Err(self.unexpected(STARTS.to_vec()));
            }
        };
        Ok(e)
    }
}

/// An expression that evaluates to `g` in `arena`, reconstructed from how
/// each node was first built.
pub fn expr_of(arena: &Arena, g: GameId) -> GameExpr {
    if g == GameId::EMPTY {
        return GameExpr::Empty;
    }
    match arena.label(g) {
        Label::Star(n) => GameExpr::Star(*n),
        Label::Nim(piles) => GameExpr::Nim(piles.to_vec()),
        Label::Pass(inner) => GameExpr::Pass(Box::new(expr_of(arena, *inner))),
        Label::Split(a, b) => GameExpr::Split(Box::new(expr_of(arena, *a)), Box::new(expr_of(arena, *b))),
        Label::Sum(a, b) => GameExpr::Sum(vec![expr_of(arena, *a), expr_of(arena, *b)]),
        Label::Literal => GameExpr::Options(arena.options(g).iter().map(|&o| expr_of(arena, o)).collect()),
    }
}

/// Printed form of [`expr_of`].
pub fn format_game(arena: &Arena, g: GameId) -> String {
    expr_of(arena, g).to_string()
}
