//! Polynomial expression parser.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' nat)?
//! base     := rational | var | '(' expr ')' | '-' factor
//! var      := 'x' digits | 'x' | 'a'
//! rational := int ('/' nat)?
//! ```

use std::fmt;

use kravchuk_core::arith::Rational;
use kravchuk_core::poly::{Polynomial, Variable};
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {at}: {message}")]
    Syntax { at: Position, message: String },
    #[error("unknown token `{token}` at {at}")]
    UnknownToken { at: Position, token: String },
    #[error("negative exponent at {at}")]
    NegativeExponent { at: Position },
    #[error("exponent `{digits}` at {at} does not fit in 32 bits")]
    ExponentOverflow { at: Position, digits: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(String),
    Var(Variable),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Int(s) => write!(f, "`{s}`"),
            Token::Var(v) => write!(f, "`{v}`"),
            Token::Plus => f.write_str("`+`"),
            Token::Minus => f.write_str("`-`"),
            Token::Star => f.write_str("`*`"),
            Token::Caret => f.write_str("`^`"),
            Token::Slash => f.write_str("`/`"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
            Token::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Token, Position)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let at = Position { line, column };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c.is_ascii_alphanumeric() || c == '_' {
            let mut word = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    word.push(d);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            out.push((classify_word(&word, at)?, at));
            continue;
        }
        let token = match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '^' => Token::Caret,
            '/' => Token::Slash,
            '(' => Token::LParen,
            ')' => Token::RParen,
            _ => return Err(ParseError::UnknownToken { at, token: c.to_string() }),
        };
        chars.next();
        column += 1;
        out.push((token, at));
    }
    out.push((Token::End, Position { line, column }));
    Ok(out)
}

fn classify_word(word: &str, at: Position) -> Result<Token, ParseError> {
    if word.bytes().all(|b| b.is_ascii_digit()) {
        return Ok(Token::Int(word.to_string()));
    }
    match word {
        "x" => return Ok(Token::Var(Variable::X)),
        "a" => return Ok(Token::Var(Variable::A)),
        _ => {}
    }
    if let Some(digits) = word.strip_prefix('x') {
        if digits.bytes().all(|b| b.is_ascii_digit()) {
            if let Ok(i) = digits.parse::<u32>() {
                return Ok(Token::Var(Variable::Indexed(i)));
            }
        }
    }
    Err(ParseError::UnknownToken { at, token: word.to_string() })
}

/// Syntax tree of a parsed expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(Rational),
    Var(Variable),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
}

impl Expr {
    pub fn eval(&self) -> Polynomial {
        match self {
            Expr::Const(c) => Polynomial::constant(c.clone()),
            Expr::Var(v) => Polynomial::var(*v),
            Expr::Add(l, r) => l.eval() + r.eval(),
            Expr::Sub(l, r) => l.eval() - r.eval(),
            Expr::Mul(l, r) => l.eval() * r.eval(),
            Expr::Pow(b, e) => b.eval().pow(*e),
            Expr::Neg(e) => -e.eval(),
        }
    }
}

struct Parser {
    tokens: Vec<(Token, Position)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn at(&self) -> Position {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> (Token, Position) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { at: self.at(), message: message.into() })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Token::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if *self.peek() != Token::Caret {
            return Ok(base);
        }
        self.bump();
        let (token, at) = self.bump();
        match token {
            Token::Int(digits) => match digits.parse::<u32>() {
                Ok(e) => Ok(Expr::Pow(Box::new(base), e)),
                Err(_) => Err(ParseError::ExponentOverflow { at, digits }),
            },
            Token::Minus => Err(ParseError::NegativeExponent { at }),
            other => Err(ParseError::Syntax { at, message: format!("expected exponent, found {other}") }),
        }
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        let (token, at) = self.bump();
        match token {
            Token::Int(digits) => {
                let num: BigInt = digits.parse().expect("digits");
                if *self.peek() != Token::Slash {
                    return Ok(Expr::Const(Rational::from_integer(num)));
                }
                self.bump();
                let (den, den_at) = self.bump();
                match den {
                    Token::Int(d) => {
                        let den: BigInt = d.parse().expect("digits");
                        if den.is_zero() {
                            return Err(ParseError::Syntax { at: den_at, message: "zero denominator".into() });
                        }
                        Ok(Expr::Const(Rational::new(num, den)))
                    }
                    other => Err(ParseError::Syntax {
                        at: den_at,
                        message: format!("expected denominator, found {other}"),
                    }),
                }
            }
            Token::Var(v) => Ok(Expr::Var(v)),
            Token::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Token::RParen {
                    return self.error(format!("expected `)`, found {}", self.peek()));
                }
                self.bump();
                Ok(inner)
            }
            Token::Minus => Ok(Expr::Neg(Box::new(self.factor()?))),
            other => Err(ParseError::Syntax { at, message: format!("unexpected {other}") }),
        }
    }
}

pub fn parse_ast(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { tokens: tokenize(text)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Token::End {
        return p.error(format!("unexpected {}", p.peek()));
    }
    Ok(e)
}

/// Parses and expands into canonical form.
pub fn parse_expr(text: &str) -> Result<Polynomial, ParseError> {
    Ok(parse_ast(text)?.eval())
}
