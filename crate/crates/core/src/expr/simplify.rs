//! Rewriting with the semimodule and complement identities, read left to right.
//!
//! Every rule either removes nodes, merges two scale literals into one, or
//! moves a scale above a complement (`~(X*a) -> (~X)*(1/a)`), and no rule
//! moves a scale back below one, so rewriting terminates.

use super::Expr;

/// A folded literal this close to 1 is treated as 1.
pub const UNIT_TOL: f64 = 1e-12;

fn is_unit(lambda: f64) -> bool {
    (lambda - 1.0).abs() <= UNIT_TOL
}

/// One rewrite at the root, if any rule matches.
fn rewrite_root(e: &Expr) -> Option<Expr> {
    use Expr::*;
    match e {
        Complement(x) => match x.as_ref() {
            Complement(inner) => Some((**inner).clone()),
            Full => Some(Empty),
            Empty => Some(Full),
            Scale(inner, a) => Some(Expr::scale(Expr::complement((**inner).clone()), 1.0 / a)),
            _ => None,
        },
        Scale(x, a) if is_unit(*a) => Some((**x).clone()),
        Scale(x, b) => match x.as_ref() {
            Scale(inner, a) => Some(Expr::scale((**inner).clone(), a * b)),
            _ => None,
        },
        Union(l, r) => {
            if l == r {
                return Some((**l).clone());
            }
            match (l.as_ref(), r.as_ref()) {
                (x, Empty) | (Empty, x) => Some(x.clone()),
                (x, Intersect(p, q)) | (Intersect(p, q), x)
                    if x == p.as_ref() || x == q.as_ref() =>
                {
                    Some(x.clone())
                }
                (Scale(x, a), Scale(y, b)) if x == y => Some(Expr::scale((**x).clone(), a.max(*b))),
                (Scale(x, a), Scale(y, b)) if a == b => {
                    Some(Expr::scale(Expr::union((**x).clone(), (**y).clone()), *a))
                }
                _ => None,
            }
        }
        Intersect(l, r) => {
            if l == r {
                return Some((**l).clone());
            }
            match (l.as_ref(), r.as_ref()) {
                (x, Full) | (Full, x) => Some(x.clone()),
                (x, Union(p, q)) | (Union(p, q), x) if x == p.as_ref() || x == q.as_ref() => {
                    Some(x.clone())
                }
                (Scale(x, a), Scale(y, b)) if a == b => Some(Expr::scale(
                    Expr::intersect((**x).clone(), (**y).clone()),
                    *a,
                )),
                _ => None,
            }
        }
        _ => None,
    }
}

struct Rewriter {
    applications: usize,
}

impl Rewriter {
    fn normalize(&mut self, e: &Expr) -> Expr {
        let e = match e {
            Expr::Var(_) | Expr::Empty | Expr::Full => e.clone(),
            Expr::Complement(x) => Expr::complement(self.normalize(x)),
            Expr::Scale(x, a) => Expr::scale(self.normalize(x), *a),
            Expr::Union(l, r) => Expr::union(self.normalize(l), self.normalize(r)),
            Expr::Intersect(l, r) => Expr::intersect(self.normalize(l), self.normalize(r)),
        };
        match rewrite_root(&e) {
            Some(next) => {
                self.applications += 1;
                self.normalize(&next)
            }
            None => e,
        }
    }
}

/// Rewrites to a fixpoint, returning the normal form and the number of rule applications.
pub fn simplify_counted(e: &Expr) -> (Expr, usize) {
    let mut rw = Rewriter { applications: 0 };
    let out = rw.normalize(e);
    (out, rw.applications)
}

pub fn simplify(e: &Expr) -> Expr {
    simplify_counted(e).0
}
