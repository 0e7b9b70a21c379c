//! Mnesor expressions over named fuzzy sets.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! union     := inter ('|' inter)*
//! inter     := unary ('&' unary)*
//! unary     := '~' unary | postfix
//! postfix   := primary ('*' number)*
//! primary   := IDENT | 'EMPTY' | 'FULL' | '(' union ')'
//! ```

mod eval;
mod lexer;
mod parser;
mod simplify;

use std::fmt;

pub use eval::Env;
pub use parser::parse;
pub use simplify::{simplify, simplify_counted, UNIT_TOL};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Var(String),
    Union(Box<Expr>, Box<Expr>),
    Intersect(Box<Expr>, Box<Expr>),
    Complement(Box<Expr>),
    /// External multiplication by a literal `> 0`.
    Scale(Box<Expr>, f64),
    Empty,
    Full,
}

impl Expr {
    pub fn var(name: impl Into<String>) -> Expr {
        Expr::Var(name.into())
    }

    pub fn union(l: Expr, r: Expr) -> Expr {
        Expr::Union(Box::new(l), Box::new(r))
    }

    pub fn intersect(l: Expr, r: Expr) -> Expr {
        Expr::Intersect(Box::new(l), Box::new(r))
    }

    pub fn complement(e: Expr) -> Expr {
        Expr::Complement(Box::new(e))
    }

    pub fn scale(e: Expr, lambda: f64) -> Expr {
        Expr::Scale(Box::new(e), lambda)
    }

    pub fn node_count(&self) -> usize {
        match self {
            Expr::Var(_) | Expr::Empty | Expr::Full => 1,
            Expr::Complement(e) | Expr::Scale(e, _) => 1 + e.node_count(),
            Expr::Union(l, r) | Expr::Intersect(l, r) => 1 + l.node_count() + r.node_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Var(_) | Expr::Empty | Expr::Full => 1,
            Expr::Complement(e) | Expr::Scale(e, _) => 1 + e.depth(),
            Expr::Union(l, r) | Expr::Intersect(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn scale_count(&self) -> usize {
        match self {
            Expr::Var(_) | Expr::Empty | Expr::Full => 0,
            Expr::Complement(e) => e.scale_count(),
            Expr::Scale(e, _) => 1 + e.scale_count(),
            Expr::Union(l, r) | Expr::Intersect(l, r) => l.scale_count() + r.scale_count(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Union(..) => 1,
            Expr::Intersect(..) => 2,
            Expr::Complement(_) => 3,
            Expr::Scale(..) => 4,
            Expr::Var(_) | Expr::Empty | Expr::Full => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Var(name) => write!(f, "{name}"),
            Expr::Empty => write!(f, "EMPTY"),
            Expr::Full => write!(f, "FULL"),
            Expr::Union(l, r) => {
                l.fmt_at(f, 1)?;
                write!(f, " | ")?;
                r.fmt_at(f, 2)
            }
            Expr::Intersect(l, r) => {
                l.fmt_at(f, 2)?;
                write!(f, " & ")?;
                r.fmt_at(f, 3)
            }
            Expr::Complement(e) => {
                write!(f, "~")?;
                e.fmt_at(f, 3)
            }
            Expr::Scale(e, lambda) => {
                e.fmt_at(f, 4)?;
                write!(f, " * {lambda}")
            }
        }
    }
}

/// Canonical form with minimal parentheses.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}
