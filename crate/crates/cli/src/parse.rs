//! Recursive descent parser for rational expressions, vector fields and maps.
//!
//! ```text
//! field  := ['+'|'-'] [expr] deriv (('+'|'-') [expr] deriv)* | '0'
//! deriv  := 'd/dx' | 'd/dy'
//! map    := '(' expr ',' expr ')'
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | power
//! power  := atom ['^' ['-'] integer]
//! atom   := integer | 'x' | 'y' | 'i' | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```
//!
//! A derivation binds loosest: `y^2 + x d/dy` is `(y^2 + x) d/dy`.

use std::fmt;

use birflow::exact_algebra::{BiRat, FieldContext, Scalar};
use birflow::vector_fields::{BirationalMap, SurfaceModel, VectorField};
use num::BigInt;

pub const DEFAULT_DEGREE_BOUND: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    Syntax { line: usize, col: usize, msg: String },
    DegreeOverflow { line: usize, col: usize, bound: usize },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { line, col, msg } => write!(f, "syntax error at {}:{}: {}", line, col, msg),
            ParseError::DegreeOverflow { line, col, bound } => {
                write!(f, "degree overflow at {}:{}: total degree exceeds {}", line, col, bound)
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    X,
    Y,
    I,
    Sqrt,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Dx,
    Dy,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Int(n) => return write!(f, "`{}`", n),
            Tok::X => "`x`",
            Tok::Y => "`y`",
            Tok::I => "`i`",
            Tok::Sqrt => "`sqrt`",
            Tok::Plus => "`+`",
            Tok::Minus => "`-`",
            Tok::Star => "`*`",
            Tok::Slash => "`/`",
            Tok::Caret => "`^`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Comma => "`,`",
            Tok::Dx => "`d/dx`",
            Tok::Dy => "`d/dy`",
            Tok::End => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut k, mut line, mut col) = (0, 1, 1);
    while k < chars.len() {
        let c = chars[k];
        let pos = Pos { line, col };
        let err = |msg: String| ParseError::Syntax { line: pos.line, col: pos.col, msg };
        if c == '\n' {
            k += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            k += 1;
            col += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' | '\u{2212}' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            k += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), pos));
            col += k - start;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_alphanumeric() {
                k += 1;
            }
            let word: String = chars[start..k].iter().collect();
            let tok = match word.as_str() {
                "x" => Tok::X,
                "y" => Tok::Y,
                "i" => Tok::I,
                "sqrt" => Tok::Sqrt,
                "d" if chars.get(k) == Some(&'/') => {
                    let rest: String = chars[k + 1..].iter().take_while(|c| c.is_ascii_alphanumeric()).collect();
                    let tok = match rest.as_str() {
                        "dx" => Tok::Dx,
                        "dy" => Tok::Dy,
                        _ => return Err(err(format!("unknown derivation `d/{}`", rest))),
                    };
                    k += 1 + rest.len();
                    tok
                }
                _ => return Err(err(format!("unknown identifier `{}`", word))),
            };
            out.push((tok, pos));
            col += k - start;
            continue;
        }
        return Err(err(format!("unexpected character `{}`", c)));
    }
    out.push((Tok::End, Pos { line, col }));
    Ok(out)
}

/// Parser state over one input string.
pub struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    bound: usize,
    ctx: FieldContext,
}

impl Parser {
    pub fn new(text: &str, ctx: &FieldContext, bound: usize) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, at: 0, bound, ctx: ctx.clone() })
    }

    /// The coefficient field after any `sqrt` met in the input.
    pub fn context(&self) -> &FieldContext {
        &self.ctx
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn error_at(&self, pos: Pos, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { line: pos.line, col: pos.col, msg: msg.into() }
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        self.error_at(self.pos(), msg)
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {}, found {}", t, self.peek())))
        }
    }

    fn check_degree(&self, r: &BiRat, pos: Pos) -> Result<(), ParseError> {
        if r.num().total_degree().max(r.den().total_degree()) > self.bound {
            return Err(ParseError::DegreeOverflow { line: pos.line, col: pos.col, bound: self.bound });
        }
        Ok(())
    }

    pub fn finish(&mut self) -> Result<(), ParseError> {
        self.expect(Tok::End)
    }

    pub fn expr(&mut self) -> Result<BiRat, ParseError> {
        let neg = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if neg { -&first } else { first };
        loop {
            let pos = self.pos();
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
            self.check_degree(&acc, pos)?;
        }
    }

    fn term(&mut self) -> Result<BiRat, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(self.error_at(pos, "division by zero"));
                    }
                    acc = &acc / &d;
                }
                _ => return Ok(acc),
            }
            self.check_degree(&acc, pos)?;
        }
    }

    fn unary(&mut self) -> Result<BiRat, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<BiRat, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let pos = self.pos();
        self.bump();
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        let e = match self.bump() {
            Tok::Int(n) => n,
            t => return Err(self.error_at(pos, format!("exponent must be an integer, found {}", t))),
        };
        let deg = base.num().total_degree().max(base.den().total_degree());
        let e: i64 = match i64::try_from(&e) {
            Ok(e) if deg == 0 || e.unsigned_abs() as usize <= self.bound / deg => e,
            _ => return Err(ParseError::DegreeOverflow { line: pos.line, col: pos.col, bound: self.bound }),
        };
        if neg && base.is_zero() {
            return Err(self.error_at(pos, "division by zero"));
        }
        Ok(base.pow(if neg { -e } else { e }))
    }

    fn atom(&mut self) -> Result<BiRat, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(BiRat::constant(Scalar::from_bigint(n))),
            Tok::X => Ok(BiRat::x()),
            Tok::Y => Ok(BiRat::y()),
            Tok::I => Ok(BiRat::constant(Scalar::i())),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Sqrt => {
                self.expect(Tok::LParen)?;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                let c = e.as_constant().ok_or_else(|| self.error_at(pos, "sqrt needs a constant argument"))?;
                let ext = self.ctx.extend_by_sqrt(&c).map_err(|e| self.error_at(pos, e.to_string()))?;
                self.ctx = ext.context;
                Ok(BiRat::constant(ext.root))
            }
            t => Err(self.error_at(pos, format!("expected an expression, found {}", t))),
        }
    }

    pub fn field(&mut self, s: SurfaceModel) -> Result<VectorField, ParseError> {
        let (mut px, mut py) = (BiRat::zero(), BiRat::zero());
        if let Tok::Int(n) = self.peek() {
            if n == &BigInt::from(0) && self.toks.get(self.at + 1).map(|t| &t.0) == Some(&Tok::End) {
                self.bump();
                return Ok(VectorField::zero(s));
            }
        }
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Tok::Minus => {
                    self.bump();
                    true
                }
                Tok::Plus => {
                    self.bump();
                    false
                }
                _ if first => false,
                Tok::End => break,
                t => return Err(self.error(format!("expected `+`, `-` or end of input, found {}", t))),
            };
            first = false;
            let coef = match self.peek() {
                Tok::Dx | Tok::Dy => BiRat::one(),
                _ => self.expr()?,
            };
            let coef = if neg { -&coef } else { coef };
            match self.peek() {
                Tok::Dx => px = &px + &coef,
                Tok::Dy => py = &py + &coef,
                t => return Err(self.error(format!("expected `d/dx` or `d/dy`, found {}", t))),
            }
            self.bump();
        }
        Ok(VectorField::new(s, px, py))
    }

    pub fn map(&mut self) -> Result<(BiRat, BiRat), ParseError> {
        self.expect(Tok::LParen)?;
        let f1 = self.expr()?;
        self.expect(Tok::Comma)?;
        let f2 = self.expr()?;
        self.expect(Tok::RParen)?;
        Ok((f1, f2))
    }
}

/// Parses a whole string as a vector field, threading the coefficient field.
pub fn parse_field_in(text: &str, s: SurfaceModel, ctx: &mut FieldContext, bound: usize) -> Result<VectorField, ParseError> {
    let mut p = Parser::new(text, ctx, bound)?;
    let f = p.field(s)?;
    p.finish()?;
    *ctx = p.context().clone();
    Ok(f)
}

pub fn parse_field(text: &str, s: SurfaceModel) -> Result<VectorField, ParseError> {
    parse_field_in(text, s, &mut FieldContext::gaussian(), DEFAULT_DEGREE_BOUND)
}

pub fn parse_expr_in(text: &str, ctx: &mut FieldContext, bound: usize) -> Result<BiRat, ParseError> {
    let mut p = Parser::new(text, ctx, bound)?;
    let e = p.expr()?;
    p.finish()?;
    *ctx = p.context().clone();
    Ok(e)
}

pub fn parse_expr(text: &str) -> Result<BiRat, ParseError> {
    parse_expr_in(text, &mut FieldContext::gaussian(), DEFAULT_DEGREE_BOUND)
}

/// `(f1, f2)` as a self-map of `s`; the inverse is found or the map is rejected.
pub fn parse_map_in(text: &str, s: SurfaceModel, ctx: &mut FieldContext, bound: usize) -> Result<BirationalMap, MapError> {
    let mut p = Parser::new(text, ctx, bound)?;
    let (f1, f2) = p.map()?;
    p.finish()?;
    *ctx = p.context().clone();
    Ok(BirationalMap::new(s, s, f1, f2)?)
}

pub fn parse_map(text: &str, s: SurfaceModel) -> Result<BirationalMap, MapError> {
    parse_map_in(text, s, &mut FieldContext::gaussian(), DEFAULT_DEGREE_BOUND)
}

#[derive(Debug)]
pub enum MapError {
    Parse(ParseError),
    Engine(birflow::Error),
}

impl From<ParseError> for MapError {
    fn from(e: ParseError) -> Self {
        MapError::Parse(e)
    }
}

impl From<birflow::Error> for MapError {
    fn from(e: birflow::Error) -> Self {
        MapError::Engine(e)
    }
}

impl fmt::Display for MapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapError::Parse(e) => e.fmt(f),
            MapError::Engine(e) => e.fmt(f),
        }
    }
}

/// Exact scalar literal: a constant expression.
pub fn parse_scalar_in(text: &str, ctx: &mut FieldContext) -> Result<Scalar, ParseError> {
    let e = parse_expr_in(text, ctx, DEFAULT_DEGREE_BOUND)?;
    e.as_constant().ok_or_else(|| ParseError::Syntax { line: 1, col: 1, msg: format!("`{}` is not a constant", text) })
}

#[cfg(test)]
mod tests {
    use super::*;

    const S: SurfaceModel = SurfaceModel::F(0);

    #[test]
    fn derivation_binds_loosest() {
        let f = parse_field("y^2+x d/dy", S).unwrap();
        assert_eq!(f, VectorField::from_terms(S, &[], &[(1, 0, 2), (1, 1, 0)]));
    }

    #[test]
    fn signs_and_bare_derivations() {
        let f = parse_field("-d/dx + x d/dy - y d/dy", S).unwrap();
        assert_eq!(f, VectorField::from_terms(S, &[(-1, 0, 0)], &[(1, 1, 0), (-1, 0, 1)]));
        assert_eq!(parse_field("0", S).unwrap(), VectorField::zero(S));
    }

    #[test]
    fn unknown_variable_reports_position() {
        match parse_field("x d/dz", S) {
            Err(ParseError::Syntax { line, col, .. }) => assert_eq!((line, col), (1, 3)),
            other => panic!("{:?}", other),
        }
        match parse_field("x +\n  z d/dx", S) {
            Err(ParseError::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 3)),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn degree_bound() {
        assert!(parse_field("x^64 d/dx", S).is_ok());
        assert!(matches!(parse_field("x^65 d/dx", S), Err(ParseError::DegreeOverflow { .. })));
        assert!(matches!(parse_field("(x^40)*(y^40) d/dx", S), Err(ParseError::DegreeOverflow { .. })));
        assert!(matches!(parse_field("x^99999999999999999999 d/dx", S), Err(ParseError::DegreeOverflow { .. })));
    }

    #[test]
    fn map_and_sqrt() {
        let m = parse_map("(y/(x+1), y/(x-1))", S).unwrap();
        assert_eq!(m.f1, parse_expr("y/(x+1)").unwrap());
        let mut ctx = FieldContext::gaussian();
        let r = parse_expr_in("sqrt(2)*sqrt(2)", &mut ctx, 64).unwrap();
        assert_eq!(r, BiRat::constant(Scalar::from_i64(2)));
        assert!(ctx.radicand().is_some());
    }

    #[test]
    fn errors() {
        assert!(parse_field("x d/dx +", S).is_err());
        assert!(parse_field("x", S).is_err());
        assert!(parse_expr("1/(x-x)").is_err());
        assert!(parse_expr("x^y").is_err());
        assert!(parse_expr("(x").is_err());
    }
}
