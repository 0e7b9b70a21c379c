use super::lexer::{tokenize, Spanned, Token};
use super::Expr;
use crate::error::{Error, Result};

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].token
    }

    fn bump(&mut self) -> Spanned {
        let t = self.tokens[self.pos].clone();
        if t.token != Token::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> Error {
        let t = &self.tokens[self.pos];
        Error::Syntax {
            line: t.line,
            column: t.column,
            found: t.token.describe(),
            expected: expected.into(),
        }
    }

    fn union(&mut self) -> Result<Expr> {
        let mut lhs = self.inter()?;
        while *self.peek() == Token::Pipe {
            self.bump();
            lhs = Expr::union(lhs, self.inter()?);
        }
        Ok(lhs)
    }

    fn inter(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while *self.peek() == Token::Amp {
            self.bump();
            lhs = Expr::intersect(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Token::Tilde {
            self.bump();
            return Ok(Expr::complement(self.unary()?));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expr> {
        let mut e = self.primary()?;
        while *self.peek() == Token::Star {
            self.bump();
            match *self.peek() {
                Token::Number(x) if x > 0.0 && x.is_finite() => {
                    self.bump();
                    e = Expr::scale(e, x);
                }
                Token::Number(_) => return Err(self.error("positive finite number")),
                _ => return Err(self.error("number")),
            }
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Token::Ident(name) => {
                self.bump();
                Ok(Expr::Var(name))
            }
            Token::Empty => {
                self.bump();
                Ok(Expr::Empty)
            }
            Token::Full => {
                self.bump();
                Ok(Expr::Full)
            }
            Token::LParen => {
                self.bump();
                let e = self.union()?;
                if *self.peek() != Token::RParen {
                    return Err(self.error("'|', '&', '*' or ')'"));
                }
                self.bump();
                Ok(e)
            }
            _ => Err(self.error("identifier, EMPTY, FULL, '~' or '('")),
        }
    }
}

/// Parses an expression; errors carry line, column and the expected tokens.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let e = p.union()?;
    if *p.peek() != Token::Eof {
        return Err(p.error("'|', '&', '*' or end of input"));
    }
    Ok(e)
}
