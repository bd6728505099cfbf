//! Text input for polynomial systems.
//!
//! ```text
//! # comment
//! vars: x y z
//! x^3*y^2 + x + 3
//! 4*y*z^5 + 8*x^2*y^4*z^4 - 1
//! x + y + z - 1
//! ```
//!
//! The `vars:` header is optional; without it variables are numbered in order
//! of first appearance. Multiplication is always explicit.

use thiserror::Error;

use super::{PolySystem, Polynomial};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: unknown identifier `{name}`")]
    UnknownIdentifier { name: String, line: usize, column: usize },
    #[error("system is not square: {equations} equation(s) in {vars} variable(s)")]
    NonSquare { equations: usize, vars: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(u32),
    Num(f64),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, column });
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let mut decimal = false;
            if i < chars.len() && chars[i] == '.' {
                decimal = true;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let lit: String = chars[start..i].iter().collect();
            if lit == "." {
                return Err(syntax(line, column, "malformed number literal"));
            }
            if i < chars.len() && (chars[i].is_alphabetic() || chars[i] == '_') {
                return Err(syntax(
                    line,
                    i + 1,
                    "implicit multiplication is not supported; write `*` explicitly",
                ));
            }
            let tok = if decimal {
                Tok::Num(
                    lit.parse()
                        .map_err(|_| syntax(line, column, "malformed number literal"))?,
                )
            } else {
                match lit.parse::<u32>() {
                    Ok(v) => Tok::Int(v),
                    Err(_) => Tok::Num(
                        lit.parse()
                            .map_err(|_| syntax(line, column, "malformed number literal"))?,
                    ),
                }
            };
            out.push(Token { tok, column });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                column,
            });
        } else {
            return Err(syntax(line, column, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    line: usize,
    end_column: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |t| t.column)
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        syntax(self.line, self.column(), message)
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.scale(-1.0))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek() {
                Some(Tok::Int(e)) => {
                    let e = *e;
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("exponent must be a non-negative integer literal")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let column = self.column();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Polynomial::constant(f64::from(v), self.nvars()))
            }
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Polynomial::constant(v, self.nvars()))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.vars.iter().position(|v| *v == name) {
                    Some(k) => Ok(Polynomial::variable(k, self.nvars())),
                    None => Err(ParseError::UnknownIdentifier {
                        name,
                        line: self.line,
                        column,
                    }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.err("expected `)`")),
                }
            }
            Some(_) => Err(self.err("expected a number, variable or `(`")),
            None => Err(self.err("unexpected end of line")),
        }
    }
}

struct Line<'a> {
    number: usize,
    body: &'a str,
    tokens: Vec<Token>,
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn parse_line(line: &Line<'_>, vars: &[String]) -> Result<Polynomial, ParseError> {
    let mut parser = Parser {
        tokens: &line.tokens,
        pos: 0,
        line: line.number,
        end_column: line.body.chars().count() + 1,
        vars,
    };
    let p = parser.expr()?;
    if parser.pos != line.tokens.len() {
        let msg = match parser.peek() {
            Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::Num(_)) | Some(Tok::LParen) => {
                "implicit multiplication is not supported; write `*` explicitly"
            }
            _ => "unexpected token",
        };
        return Err(parser.err(msg));
    }
    Ok(p)
}

/// Parses a single polynomial over the given variables.
pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<Polynomial, ParseError> {
    let body = strip_comment(text);
    let line = Line {
        number: 1,
        body,
        tokens: tokenize(body, 1)?,
    };
    parse_line(&line, vars)
}

/// Parses a system in the text input format.
pub fn parse_system(text: &str) -> Result<PolySystem, ParseError> {
    let mut header: Option<Vec<String>> = None;
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let number = idx + 1;
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let trimmed = body.trim_start();
        if let Some(rest) = trimmed.strip_prefix("vars:") {
            if header.is_some() || !lines.is_empty() {
                let column = body.len() - trimmed.len() + 1;
                return Err(syntax(number, column, "`vars:` must be the first line"));
            }
            let names: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
            for name in &names {
                let ok = name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                    && name.chars().all(|c| c.is_alphanumeric() || c == '_');
                if !ok {
                    return Err(syntax(number, 1, format!("invalid variable name `{name}`")));
                }
                if names.iter().filter(|n| *n == name).count() > 1 {
                    return Err(syntax(number, 1, format!("duplicate variable `{name}`")));
                }
            }
            header = Some(names);
            continue;
        }
        lines.push(Line {
            number,
            body,
            tokens: tokenize(body, number)?,
        });
    }

    let vars = match header {
        Some(v) => v,
        None => {
            let mut seen: Vec<String> = Vec::new();
            for line in &lines {
                for t in &line.tokens {
                    if let Tok::Ident(name) = &t.tok {
                        if !seen.contains(name) {
                            seen.push(name.clone());
                        }
                    }
                }
            }
            seen
        }
    };

    let polys = lines
        .iter()
        .map(|line| parse_line(line, &vars))
        .collect::<Result<Vec<_>, _>>()?;
    PolySystem::new(polys, vars)
}
