//! Expression parser shared by the CLI and the test suites.
//!
//! Grammar:
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := scalar-literal | generator ['^' k] | '(' expr ')'
//! scalar-literal := integer ['/' integer] | 't' ['^' k]
//! ```
//!
//! Juxtaposition is not multiplication; `*` is always explicit. Factor order
//! is preserved (products are noncommutative).

use crate::field::{Field, Scalar};
use crate::ncpoly::{GenCtx, NcPoly, Word};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: expected {expected}")]
    Syntax { pos: usize, expected: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("bad scalar literal: {0}")]
    BadScalarLiteral(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Sym(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = bytes[start..i].iter().collect();
                out.push((start, Tok::Int(digits.parse().unwrap())));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Sym(bytes[start..i].iter().collect())));
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: i,
                    expected: format!("a token, found {:?}", c),
                })
            }
        }
    }
    Ok(out)
}

/// Abstract syntax; powers are resolved during evaluation.
#[derive(Debug, Clone, PartialEq)]
enum Expr {
    Frac(BigInt, BigInt),
    SymPow(String, u32),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    src_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.src_len)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::Syntax {
                pos: self.here(),
                expected: what.to_string(),
            })
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut negate_first = false;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            negate_first = true;
        } else if self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate_first {
            acc = Expr::Neg(Box::new(acc));
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = Expr::Add(Box::new(acc), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = Expr::Sub(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = Expr::Mul(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn power_suffix(&mut self) -> Result<u32, ParseError> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(1);
        }
        self.pos += 1;
        match self.bump() {
            Some(Tok::Int(n)) => {
                u32::try_from(n.clone()).map_err(|_| ParseError::BadScalarLiteral(format!(
                    "exponent {} out of range",
                    n
                )))
            }
            _ => Err(ParseError::Syntax {
                pos: self.here(),
                expected: "an integer exponent after ^".into(),
            }),
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.bump() {
                        Some(Tok::Int(d)) => {
                            if d == BigInt::from(0) {
                                return Err(ParseError::BadScalarLiteral(
                                    "zero denominator".into(),
                                ));
                            }
                            Ok(Expr::Frac(n, d))
                        }
                        _ => Err(ParseError::Syntax {
                            pos: self.here(),
                            expected: "an integer denominator".into(),
                        }),
                    }
                } else {
                    Ok(Expr::Frac(n, BigInt::from(1)))
                }
            }
            Some(Tok::Sym(name)) => {
                let k = self.power_suffix()?;
                Ok(Expr::SymPow(name, k))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "a closing parenthesis")?;
                Ok(inner)
            }
            _ => Err(ParseError::Syntax {
                pos,
                expected: "a number, generator or parenthesised expression".into(),
            }),
        }
    }
}

fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        src_len: src.len(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::Syntax {
            pos: p.here(),
            expected: "end of input".into(),
        });
    }
    Ok(e)
}

fn scalar_of_t_power(field: &Field, k: u32) -> Result<Scalar, ParseError> {
    if !field.has_extension() {
        return Err(ParseError::BadScalarLiteral(
            "`t` requires a field with an extension".into(),
        ));
    }
    let t = field.gen_t().expect("extension generator");
    let mut acc = field.one();
    for _ in 0..k {
        acc = acc.mul(&t);
    }
    Ok(acc)
}

fn eval_ncpoly(e: &Expr, ctx: &GenCtx) -> Result<NcPoly, ParseError> {
    let field = ctx.field();
    Ok(match e {
        Expr::Frac(n, d) => {
            let num = field.scalar_from_bigint(n);
            let den = field.scalar_from_bigint(d);
            let c = num
                .try_div(&den)
                .map_err(|_| ParseError::BadScalarLiteral(format!("{}/{}", n, d)))?;
            NcPoly::constant(ctx, c)
        }
        Expr::SymPow(name, k) => {
            if name == "t" {
                NcPoly::constant(ctx, scalar_of_t_power(field, *k)?)
            } else {
                let Some(idx) = ctx.gen_index(name) else {
                    return Err(ParseError::UnknownGenerator(name.clone()));
                };
                NcPoly::monomial(ctx, Word(vec![idx; *k as usize]), field.one())
            }
        }
        Expr::Add(a, b) => eval_ncpoly(a, ctx)?.add(&eval_ncpoly(b, ctx)?),
        Expr::Sub(a, b) => eval_ncpoly(a, ctx)?.sub(&eval_ncpoly(b, ctx)?),
        Expr::Mul(a, b) => eval_ncpoly(a, ctx)?.mul(&eval_ncpoly(b, ctx)?),
        Expr::Neg(a) => eval_ncpoly(a, ctx)?.neg(),
    })
}

fn eval_scalar(e: &Expr, field: &Field) -> Result<Scalar, ParseError> {
    Ok(match e {
        Expr::Frac(n, d) => {
            let num = field.scalar_from_bigint(n);
            let den = field.scalar_from_bigint(d);
            num.try_div(&den)
                .map_err(|_| ParseError::BadScalarLiteral(format!("{}/{}", n, d)))?
        }
        Expr::SymPow(name, k) => {
            if name == "t" {
                scalar_of_t_power(field, *k)?
            } else {
                return Err(ParseError::UnknownGenerator(name.clone()));
            }
        }
        Expr::Add(a, b) => eval_scalar(a, field)?.add(&eval_scalar(b, field)?),
        Expr::Sub(a, b) => eval_scalar(a, field)?.sub(&eval_scalar(b, field)?),
        Expr::Mul(a, b) => eval_scalar(a, field)?.mul(&eval_scalar(b, field)?),
        Expr::Neg(a) => eval_scalar(a, field)?.neg(),
    })
}

/// Univariate polynomial in `t` over a prime field, as a constant-first
/// coefficient vector. Used for minimal polynomials.
fn eval_unipoly(e: &Expr, field: &Field) -> Result<Vec<Scalar>, ParseError> {
    fn add(f: &Field, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = a.len().max(b.len());
        (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(|| f.zero());
                let y = b.get(i).cloned().unwrap_or_else(|| f.zero());
                x.add(&y)
            })
            .collect()
    }
    fn mul(f: &Field, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![f.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
        out
    }
    Ok(match e {
        Expr::Frac(n, d) => {
            let num = field.scalar_from_bigint(n);
            let den = field.scalar_from_bigint(d);
            vec![num
                .try_div(&den)
                .map_err(|_| ParseError::BadScalarLiteral(format!("{}/{}", n, d)))?]
        }
        Expr::SymPow(name, k) => {
            if name != "t" {
                return Err(ParseError::UnknownGenerator(name.clone()));
            }
            let mut v = vec![field.zero(); *k as usize + 1];
            let last = v.len() - 1;
            v[last] = field.one();
            v
        }
        Expr::Add(a, b) => add(field, &eval_unipoly(a, field)?, &eval_unipoly(b, field)?),
        Expr::Sub(a, b) => {
            let bb: Vec<Scalar> = eval_unipoly(b, field)?.iter().map(|s| s.neg()).collect();
            add(field, &eval_unipoly(a, field)?, &bb)
        }
        Expr::Mul(a, b) => mul(field, &eval_unipoly(a, field)?, &eval_unipoly(b, field)?),
        Expr::Neg(a) => eval_unipoly(a, field)?.iter().map(|s| s.neg()).collect(),
    })
}

fn eval_commpoly(e: &Expr, field: &Field) -> Result<crate::commalg::CommPoly, ParseError> {
    use crate::commalg::CommPoly;
    Ok(match e {
        Expr::Frac(n, d) => {
            let num = field.scalar_from_bigint(n);
            let den = field.scalar_from_bigint(d);
            let c = num
                .try_div(&den)
                .map_err(|_| ParseError::BadScalarLiteral(format!("{}/{}", n, d)))?;
            CommPoly::constant(field, c)
        }
        Expr::SymPow(name, k) => match name.as_str() {
            "t" => CommPoly::constant(field, scalar_of_t_power(field, *k)?),
            "x" => CommPoly::monomial(field, [*k, 0, 0], field.one()),
            "y" => CommPoly::monomial(field, [0, *k, 0], field.one()),
            "z" => CommPoly::monomial(field, [0, 0, *k], field.one()),
            _ => return Err(ParseError::UnknownGenerator(name.clone())),
        },
        Expr::Add(a, b) => eval_commpoly(a, field)?.add(&eval_commpoly(b, field)?),
        Expr::Sub(a, b) => eval_commpoly(a, field)?.sub(&eval_commpoly(b, field)?),
        Expr::Mul(a, b) => eval_commpoly(a, field)?.mul(&eval_commpoly(b, field)?),
        Expr::Neg(a) => eval_commpoly(a, field)?.neg(),
    })
}

/// Parse a commutative polynomial in `x, y, z` over the given field.
pub fn parse_commpoly(src: &str, field: &Field) -> Result<crate::commalg::CommPoly, ParseError> {
    eval_commpoly(&parse_expr(src)?, field)
}

/// Parse a noncommutative polynomial over the given generator context.
pub fn parse_ncpoly(src: &str, ctx: &GenCtx) -> Result<NcPoly, ParseError> {
    eval_ncpoly(&parse_expr(src)?, ctx)
}

/// Parse a scalar expression (no generators, `t` allowed on extensions).
pub fn parse_scalar(src: &str, field: &Field) -> Result<Scalar, ParseError> {
    eval_scalar(&parse_expr(src)?, field)
}

/// Parse a monic minimal polynomial in `t` over the prime field,
/// constant-first with the leading coefficient included.
pub fn parse_minpoly(src: &str, prime_field: &Field) -> Result<Vec<Scalar>, ParseError> {
    let mut v = eval_unipoly(&parse_expr(src)?, prime_field)?;
    while v.last().map(|s| s.is_zero()).unwrap_or(false) {
        v.pop();
    }
    Ok(v)
}

/// Parse `;`-separated noncommutative polynomials.
pub fn parse_ncpoly_list(src: &str, ctx: &GenCtx) -> Result<Vec<NcPoly>, ParseError> {
    src.split(';')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| parse_ncpoly(s, ctx))
        .collect()
}

/// Parse a matrix given as `;`-separated rows of `,`-separated scalar
/// expressions.
pub fn parse_matrix(src: &str, field: &Field) -> Result<crate::linalg::Matrix, ParseError> {
    let mut rows = Vec::new();
    for row in src.split(';') {
        let row = row.trim();
        if row.is_empty() {
            continue;
        }
        let entries: Result<Vec<Scalar>, ParseError> = row
            .split(',')
            .map(|e| parse_scalar(e.trim(), field))
            .collect();
        rows.push(entries?);
    }
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(ParseError::Syntax {
            pos: 0,
            expected: "a rectangular matrix".into(),
        });
    }
    Ok(crate::linalg::Matrix::from_rows(field, rows))
}
