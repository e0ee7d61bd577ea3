//! Prefix grammar for coupling expressions.
//!
//! ```text
//! expr  := name
//!        | co(expr, expr) | cy(expr, expr) | cyf(expr, expr)
//!        | kron(expr, expr) | add(expr, expr)
//!        | scale(re, expr) | scale(re, im, expr)
//! name  := I | COP | COM | CYP | CYM | <named gate>
//! ```
//!
//! Names are case-insensitive. `I` is the dimension-polymorphic identity;
//! `COP`/`COM`/`CYP`/`CYM` are σco+, σco−, σcy+, σcy−. Any name accepted by
//! [`NamedGate::from_name`] (X, H, CNOT, SWAP, CC, …) is a leaf.

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::expr::CouplingExpr;
use super::ops::ControlCyclicOps;
use super::NamedGate;

pub fn parse_expr(src: &str) -> Result<CouplingExpr> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(format!("expected '{want}', found end of input"))),
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '/' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected a name, found '{c}'")),
                None => self.error("expected a name, found end of input"),
            });
        }
        Ok(&self.src[start..self.pos])
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E') {
                self.pos += 1;
            } else {
                break;
            }
        }
        let text = &self.src[start..self.pos];
        text.parse().map_err(|_| Error::Parse {
            position: start,
            message: format!("invalid number '{text}'"),
        })
    }

    fn peek_is_number(&mut self) -> bool {
        self.skip_ws();
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || matches!(c, '-' | '+' | '.'))
    }

    fn expr(&mut self) -> Result<CouplingExpr> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let name = self.ident()?;
        self.skip_ws();
        if self.peek() != Some('(') {
            return leaf(name).ok_or(Error::Parse {
                position: start,
                message: format!("unknown gate or operator '{name}'"),
            });
        }
        self.pos += 1;
        let lower = name.to_ascii_lowercase();
        let e = match lower.as_str() {
            "co" | "cy" | "cyf" | "kron" | "add" => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                match lower.as_str() {
                    "co" => CouplingExpr::co(a, b),
                    "cy" => CouplingExpr::cy(a, b),
                    "cyf" => CouplingExpr::cy_flipped(a, b),
                    "kron" => CouplingExpr::tensor(a, b),
                    _ => CouplingExpr::sum(a, b),
                }
            }
            "scale" => {
                let re = self.number()?;
                self.expect(',')?;
                let im = if self.peek_is_number() {
                    let im = self.number()?;
                    self.expect(',')?;
                    im
                } else {
                    0.0
                };
                let e = self.expr()?;
                CouplingExpr::scale(Complex64::new(re, im), e)
            }
            _ => {
                return Err(Error::Parse {
                    position: start,
                    message: format!("unknown function '{name}'"),
                })
            }
        };
        self.expect(')')?;
        Ok(e)
    }
}

fn leaf(name: &str) -> Option<CouplingExpr> {
    let ops = ControlCyclicOps::new();
    match name.to_ascii_uppercase().as_str() {
        "I" => Some(CouplingExpr::Identity),
        "COP" => Some(CouplingExpr::leaf(ops.co_plus)),
        "COM" => Some(CouplingExpr::leaf(ops.co_minus)),
        "CYP" => Some(CouplingExpr::leaf(ops.cy_plus)),
        "CYM" => Some(CouplingExpr::leaf(ops.cy_minus)),
        _ => NamedGate::from_name(name).ok().map(|g| g.expr()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::pauli;

    #[test]
    fn parses_cnot() {
        let e = parse_expr("co(I, X)").unwrap();
        let m = e.to_matrix().unwrap();
        assert_eq!(m.permutation().unwrap(), vec![0, 1, 3, 2]);
    }

    #[test]
    fn malformed_input_reports_position() {
        match parse_expr("co(I,") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
        match parse_expr("co(I X)") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
        match parse_expr("foo(I, X)") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 0),
            other => panic!("{other:?}"),
        }
        assert!(parse_expr("X)").is_err());
        assert!(parse_expr("").is_err());
        assert!(parse_expr("bogus").is_err());
    }

    #[test]
    fn scale_forms() {
        let m = parse_expr("scale(2, X)").unwrap().to_matrix().unwrap();
        assert_eq!(m, pauli(1).scale(2.0.into()));
        let m = parse_expr("scale(0, -1, Y)").unwrap().to_matrix().unwrap();
        assert_eq!(m, pauli(2).scale(Complex64::new(0.0, -1.0)));
    }

    #[test]
    fn display_round_trips_symbolic_trees() {
        let e = parse_expr("cyf(kron(I, I), add(I, scale(-1, 0, I)))").unwrap();
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn case_insensitive() {
        assert_eq!(
            parse_expr("CO(i, x)").unwrap().to_matrix().unwrap(),
            parse_expr("co(I, X)").unwrap().to_matrix().unwrap()
        );
    }
}
