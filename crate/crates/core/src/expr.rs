//! A small expression language for building posets from the command line:
//!
//! ```text
//! chain(r)  boolean(r)  dual(e)  hdouble(e)  double(e, [a,b], k)
//! limitposet(n, {[a,b], ...}, N)  glue(e, e, {r, ...})  appendixA1(N)
//! ```

use crate::constructions::{
    appendix_a1, boolean_lattice, chain, double_interval, glue, horizontal_double, limit_family_poset, DoublingSpec,
    GlueSpec,
};
use crate::error::{Error, Result};
use crate::poset::GradedPoset;
use crate::systems::IntervalSystem;

/// Parsed construction expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Chain(usize),
    Boolean(usize),
    Dual(Box<Expr>),
    HDouble(Box<Expr>),
    Double(Box<Expr>, (usize, usize), usize),
    LimitPoset(usize, Vec<(usize, usize)>, usize),
    Glue(Box<Expr>, Box<Expr>, Vec<usize>),
    AppendixA1(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    Num(usize),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok<'_>>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = s[start..i].parse().map_err(|_| Error::Parse(format!("number too large at {start}")))?;
            out.push(Tok::Num(n));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Tok::Ident(&s[start..i]));
        } else if "()[]{},".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} at {i}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok<'a>>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Tok<'a>> {
        self.toks.get(self.pos).copied()
    }

    fn next(&mut self) -> Result<Tok<'a>> {
        let t = self.peek().ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        Ok(t)
    }

    fn sym(&mut self, c: char) -> Result<()> {
        match self.next()? {
            Tok::Sym(d) if d == c => Ok(()),
            t => Err(Error::Parse(format!("expected '{c}', found {t:?}"))),
        }
    }

    fn num(&mut self) -> Result<usize> {
        match self.next()? {
            Tok::Num(n) => Ok(n),
            t => Err(Error::Parse(format!("expected a number, found {t:?}"))),
        }
    }

    fn interval(&mut self) -> Result<(usize, usize)> {
        self.sym('[')?;
        let a = self.num()?;
        self.sym(',')?;
        let b = self.num()?;
        self.sym(']')?;
        Ok((a, b))
    }

    /// `{ item, item, ... }`, possibly empty.
    fn braced<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        self.sym('{')?;
        let mut out = Vec::new();
        if self.peek() == Some(Tok::Sym('}')) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            match self.next()? {
                Tok::Sym(',') => continue,
                Tok::Sym('}') => return Ok(out),
                t => return Err(Error::Parse(format!("expected ',' or '}}', found {t:?}"))),
            }
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let name = match self.next()? {
            Tok::Ident(name) => name,
            t => return Err(Error::Parse(format!("expected a construction name, found {t:?}"))),
        };
        self.sym('(')?;
        let e = match name {
            "chain" => Expr::Chain(self.num()?),
            "boolean" => Expr::Boolean(self.num()?),
            "appendixA1" => Expr::AppendixA1(self.num()?),
            "dual" => Expr::Dual(Box::new(self.expr()?)),
            "hdouble" => Expr::HDouble(Box::new(self.expr()?)),
            "double" => {
                let inner = self.expr()?;
                self.sym(',')?;
                let iv = self.interval()?;
                self.sym(',')?;
                Expr::Double(Box::new(inner), iv, self.num()?)
            }
            "limitposet" => {
                let n = self.num()?;
                self.sym(',')?;
                let system = self.braced(Self::interval)?;
                self.sym(',')?;
                Expr::LimitPoset(n, system, self.num()?)
            }
            "glue" => {
                let a = self.expr()?;
                self.sym(',')?;
                let b = self.expr()?;
                self.sym(',')?;
                let ranks = self.braced(Self::num)?;
                Expr::Glue(Box::new(a), Box::new(b), ranks)
            }
            other => return Err(Error::Parse(format!("unknown construction {other:?}"))),
        };
        self.sym(')')?;
        Ok(e)
    }
}

pub fn parse(s: &str) -> Result<Expr> {
    let mut p = Parser { toks: tokenize(s)?, pos: 0 };
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(Error::Parse(format!("trailing input starting at {t:?}")));
    }
    Ok(e)
}

/// Parses an interval list such as `{[1,2],[3,4]}`.
pub fn parse_intervals(s: &str) -> Result<Vec<(usize, usize)>> {
    let mut p = Parser { toks: tokenize(s)?, pos: 0 };
    let out = p.braced(Parser::interval)?;
    if let Some(t) = p.peek() {
        return Err(Error::Parse(format!("trailing input starting at {t:?}")));
    }
    Ok(out)
}

impl Expr {
    pub fn build(&self) -> Result<GradedPoset> {
        match self {
            Expr::Chain(r) => {
                if *r == 0 {
                    return Err(Error::Parse("chain rank must be positive".into()));
                }
                Ok(chain(*r))
            }
            Expr::Boolean(r) => {
                if *r == 0 || *r > 12 {
                    return Err(Error::Parse(format!("boolean rank {r} outside 1..=12")));
                }
                Ok(boolean_lattice(*r))
            }
            Expr::Dual(e) => Ok(e.build()?.dual()),
            Expr::HDouble(e) => Ok(horizontal_double(&e.build()?)),
            Expr::Double(e, (a, b), k) => double_interval(&e.build()?, DoublingSpec::new(*a, *b, *k)),
            Expr::LimitPoset(n, system, copies) => {
                limit_family_poset(&IntervalSystem::new(*n, system.clone())?, *copies)
            }
            Expr::Glue(a, b, ranks) => {
                glue(&GlueSpec { left: a.build()?, right: b.build()?, ranks: ranks.clone(), bijection: None })
            }
            Expr::AppendixA1(copies) => appendix_a1(*copies),
        }
    }
}

/// Parses and builds in one step.
pub fn construct(s: &str) -> Result<GradedPoset> {
    parse(s)?.build()
}
