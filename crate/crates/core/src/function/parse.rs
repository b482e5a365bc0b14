//! Recursive-descent parser for the function expression language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := REAL '*' factor
//!         | '-' factor
//!         | '[' REAL ',' REAL ']'
//!         | VAR
//!         | IDENT '(' expr (',' expr)* ')'
//!         | '(' expr ')'
//! ```
//!
//! `VAR` is `X1`..`Xn`. `IDENT` is a builtin name such as `mean`, `luk-impl`
//! or `max-lex-lower`; hyphenated names are only recognized when they name a
//! builtin, so `X1-X2` still lexes as a subtraction.

use std::fmt;

use crate::interval::Interval;

use super::builtin::{is_call_name, Builtin};
use super::expr::Expr;
use super::FunctionError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: expected {}, found {}",
            self.line,
            self.column,
            self.expected.join(" or "),
            self.found
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(x) => write!(f, "number {x}"),
            Tok::Ident(s) => write!(f, "identifier {s:?}"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Comma => f.write_str("','"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::LBracket => f.write_str("'['"),
            Tok::RBracket => f.write_str("']'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            ',' => Some(Tok::Comma),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            _ => None,
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let (tok, len) = if let Some(t) = single {
            (t, 1)
        } else if c.is_ascii_digit() || c == '.' {
            let len = scan_number(&chars[i..]);
            let text: String = chars[i..i + len].iter().collect();
            let value = text.parse::<f64>().map_err(|_| SyntaxError {
                line,
                column: col,
                expected: vec!["number".into()],
                found: format!("{text:?}"),
            })?;
            (Tok::Num(value), len)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let len = scan_ident(&chars[i..]);
            (Tok::Ident(chars[i..i + len].iter().collect()), len)
        } else {
            return Err(SyntaxError {
                line,
                column: col,
                expected: vec!["expression".into()],
                found: format!("character {c:?}"),
            });
        };
        out.push(Token {
            tok,
            line: start_line,
            column: start_col,
        });
        i += len;
        col += len;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

fn scan_number(s: &[char]) -> usize {
    let mut n = 0;
    while n < s.len() && s[n].is_ascii_digit() {
        n += 1;
    }
    if n < s.len() && s[n] == '.' {
        n += 1;
        while n < s.len() && s[n].is_ascii_digit() {
            n += 1;
        }
    }
    if n < s.len() && (s[n] == 'e' || s[n] == 'E') {
        let mut m = n + 1;
        if m < s.len() && (s[m] == '+' || s[m] == '-') {
            m += 1;
        }
        if m < s.len() && s[m].is_ascii_digit() {
            while m < s.len() && s[m].is_ascii_digit() {
                m += 1;
            }
            n = m;
        }
    }
    n
}

fn scan_ident(s: &[char]) -> usize {
    let word = |from: usize| {
        let mut n = from;
        while n < s.len() && (s[n].is_ascii_alphanumeric() || s[n] == '_') {
            n += 1;
        }
        n
    };
    let plain = word(0);
    // extend over `-word` segments as long as the result stays a builtin prefix
    let mut best = plain;
    let mut end = plain;
    while end + 1 < s.len() && s[end] == '-' && s[end + 1].is_ascii_alphabetic() {
        end = word(end + 1);
        let candidate: String = s[..end].iter().collect();
        if is_call_name(&candidate) {
            best = end;
        }
    }
    best
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    arity: usize,
}

const FACTOR_START: [&str; 6] = ["number", "'-'", "'['", "variable", "function call", "'('"];

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> FunctionError {
        let t = self.peek();
        FunctionError::Syntax(SyntaxError {
            line: t.line,
            column: t.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.to_string(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), FunctionError> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&tok.to_string()]))
        }
    }

    fn expr(&mut self) -> Result<Expr, FunctionError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, FunctionError> {
        let mut lhs = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn signed_real(&mut self) -> Result<f64, FunctionError> {
        let negative = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().tok {
            Tok::Num(x) => {
                self.bump();
                Ok(if negative { -x } else { x })
            }
            _ => Err(self.error(&["number"])),
        }
    }

    fn factor(&mut self) -> Result<Expr, FunctionError> {
        let start = self.peek().clone();
        match start.tok {
            Tok::Num(alpha) => {
                self.bump();
                if self.peek().tok != Tok::Star {
                    return Err(self.error(&["'*'"]));
                }
                self.bump();
                Ok(Expr::Scale(alpha, Box::new(self.factor()?)))
            }
            Tok::Minus => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            Tok::LBracket => {
                self.bump();
                let lo = self.signed_real()?;
                self.expect(Tok::Comma)?;
                let hi = self.signed_real()?;
                self.expect(Tok::RBracket)?;
                let c = Interval::new(lo, hi).map_err(|_| {
                    FunctionError::Syntax(SyntaxError {
                        line: start.line,
                        column: start.column,
                        expected: vec!["interval with lo <= hi".into()],
                        found: format!("[{lo},{hi}]"),
                    })
                })?;
                Ok(Expr::Const(c))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(ref name) => {
                if let Some(k) = variable_index(name) {
                    self.bump();
                    if k == 0 || k > self.arity {
                        return Err(FunctionError::Arity {
                            name: name.clone(),
                            expected: self.arity,
                            found: k,
                        });
                    }
                    return Ok(Expr::Var(k - 1));
                }
                self.bump();
                if self.peek().tok != Tok::LParen {
                    return Err(self.error(&["'('"]));
                }
                let builtin = Builtin::lookup(name)
                    .ok_or_else(|| FunctionError::UnknownBuiltin(name.clone()))?;
                self.bump();
                let mut args = vec![self.expr()?];
                while self.peek().tok == Tok::Comma {
                    self.bump();
                    args.push(self.expr()?);
                }
                self.expect(Tok::RParen)?;
                if let Some(n) = builtin.fixed_arity() {
                    if n != args.len() {
                        return Err(FunctionError::Arity {
                            name: name.clone(),
                            expected: n,
                            found: args.len(),
                        });
                    }
                }
                Ok(Expr::Call(builtin, args))
            }
            _ => Err(self.error(&FACTOR_START)),
        }
    }
}

fn variable_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('X')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    // absurdly long indices are out of range anyway
    Some(digits.parse().unwrap_or(usize::MAX))
}

/// Parses `src` as an expression over `X1..X{arity}`.
pub fn parse_expr(src: &str, arity: usize) -> Result<Expr, FunctionError> {
    let tokens = lex(src).map_err(FunctionError::Syntax)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        arity,
    };
    let e = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.error(&["'+'", "'-'", "'*'", "end of input"]));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::OrderSpec;

    fn x(i: usize) -> Box<Expr> {
        Box::new(Expr::Var(i))
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse_expr("X1 + X2 * X3 - X1", 3).unwrap();
        assert_eq!(
            e,
            Expr::Sub(
                Box::new(Expr::Add(x(0), Box::new(Expr::Mul(x(1), x(2))))),
                x(0)
            )
        );
        let e = parse_expr("0.5*X1*X2", 2).unwrap();
        assert_eq!(e, Expr::Mul(Box::new(Expr::Scale(0.5, x(0))), x(1)));
    }

    #[test]
    fn hyphenated_names_versus_subtraction() {
        assert_eq!(parse_expr("X1-X2", 2).unwrap(), Expr::Sub(x(0), x(1)));
        assert_eq!(
            parse_expr("luk-impl(X1, X2)", 2).unwrap(),
            Expr::Call(
                Builtin::LukasiewiczImplication,
                vec![Expr::Var(0), Expr::Var(1)]
            )
        );
        assert_eq!(
            parse_expr("max-lex-lower(X2,X1)", 2).unwrap(),
            Expr::Call(
                Builtin::Max(OrderSpec::LEX_LOWER),
                vec![Expr::Var(1), Expr::Var(0)]
            )
        );
        assert_eq!(
            parse_expr("X1-mean(X1,X2)", 2).unwrap(),
            Expr::Sub(
                x(0),
                Box::new(Expr::Call(Builtin::Mean, vec![Expr::Var(0), Expr::Var(1)]))
            )
        );
    }

    #[test]
    fn constants_accept_signs_and_exponents() {
        assert_eq!(
            parse_expr("[-1, 2.5e-1]", 1).unwrap(),
            Expr::Const(Interval::new(-1.0, 0.25).unwrap())
        );
    }

    #[test]
    fn arity_errors() {
        assert!(matches!(
            parse_expr("X1 + X3", 2),
            Err(FunctionError::Arity {
                found: 3,
                expected: 2,
                ..
            })
        ));
        assert!(matches!(
            parse_expr("X0", 2),
            Err(FunctionError::Arity { .. })
        ));
        assert!(matches!(
            parse_expr("luk-impl(X1)", 2),
            Err(FunctionError::Arity {
                expected: 2,
                found: 1,
                ..
            })
        ));
    }

    #[test]
    fn syntax_errors_carry_position_and_expectations() {
        let err = parse_expr("X1 +\n  * X2", 2).unwrap_err();
        let FunctionError::Syntax(e) = err else {
            panic!("expected syntax error, got {err:?}")
        };
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.expected.contains(&"variable".to_string()));
        assert_eq!(e.found, "'*'");

        let FunctionError::Syntax(e) = parse_expr("0.5 X1", 1).unwrap_err() else {
            panic!()
        };
        assert_eq!(e.expected, vec!["'*'".to_string()]);
        assert_eq!(e.column, 5);

        let FunctionError::Syntax(e) = parse_expr("(X1", 1).unwrap_err() else {
            panic!()
        };
        assert_eq!(e.found, "end of input");

        assert!(matches!(
            parse_expr("X1 $ X1", 1),
            Err(FunctionError::Syntax(_))
        ));
        assert!(matches!(
            parse_expr("[0.5,0.1]", 1),
            Err(FunctionError::Syntax(_))
        ));
        assert!(matches!(
            parse_expr("X1 X1", 1),
            Err(FunctionError::Syntax(_))
        ));
        assert!(matches!(
            parse_expr("foo", 1),
            Err(FunctionError::Syntax(_))
        ));
        assert!(matches!(
            parse_expr("median(X1)", 1),
            Err(FunctionError::UnknownBuiltin(_))
        ));
    }
}
