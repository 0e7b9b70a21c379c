#![allow(dead_code)]

use mnesor::expr::{Env, Expr};
use mnesor::{Carrier, ComplementConfig, FuzzySet, Grade};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const VARS: [&str; 3] = ["A", "B", "C"];
const LITERALS: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];

pub fn grade(rng: &mut ChaCha8Rng) -> Grade {
    match rng.gen_range(0..10) {
        0 => Grade::ZERO,
        1 => Grade::ONE,
        _ => Grade::new(rng.gen::<f64>()).unwrap(),
    }
}

pub fn set(rng: &mut ChaCha8Rng, carrier: &Carrier) -> FuzzySet {
    let grades = (0..carrier.len()).map(|_| grade(rng)).collect();
    FuzzySet::from_grades(carrier.clone(), grades).unwrap()
}

pub fn discrete_carrier(n: usize) -> Carrier {
    Carrier::discrete((0..n).map(|i| format!("x{i}"))).unwrap()
}

pub fn env(rng: &mut ChaCha8Rng, k: f64) -> Env {
    let carrier = discrete_carrier(5);
    let mut env = Env::new(ComplementConfig::new(k).unwrap());
    for v in VARS {
        env.bind(v, set(rng, &carrier)).unwrap();
    }
    env
}

/// Random AST of depth at most `depth`, biased towards shapes the simplifier rewrites.
pub fn expr(rng: &mut ChaCha8Rng, depth: usize) -> Expr {
    if depth <= 1 || rng.gen_range(0..5) == 0 {
        return match rng.gen_range(0..10) {
            0 => Expr::Empty,
            1 => Expr::Full,
            i => Expr::var(VARS[i % 3]),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..6) {
        0 | 1 => {
            // Shared subterm so idempotence and absorption can fire.
            let l = expr(rng, d);
            let r = if rng.gen_bool(0.3) {
                l.clone()
            } else {
                expr(rng, d)
            };
            if rng.gen_bool(0.5) {
                Expr::union(l, r)
            } else {
                Expr::intersect(l, r)
            }
        }
        2 => {
            let x = expr(rng, d.saturating_sub(1).max(1));
            let y = expr(rng, d.saturating_sub(1).max(1));
            if rng.gen_bool(0.5) {
                Expr::union(x.clone(), Expr::intersect(x, y))
            } else {
                Expr::intersect(x.clone(), Expr::union(y, x))
            }
        }
        3 => Expr::complement(expr(rng, d)),
        _ => {
            let lambda = if rng.gen_bool(0.7) {
                LITERALS[rng.gen_range(0..LITERALS.len())]
            } else {
                rng.gen_range(0.05..4.0)
            };
            Expr::scale(expr(rng, d), lambda)
        }
    }
}

/// `c_k(x)` straight from the closed form, endpoints by definition.
pub fn ck_reference(k: f64, x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else if x == 1.0 {
        0.0
    } else {
        (k / x.ln()).exp()
    }
}

/// Max of `|c_k(x) - (1 - x)|` over `points` uniform samples of `[0, 1]`.
pub fn sup_gap_scan(k: f64, points: usize) -> (f64, f64) {
    let mut best = (0.0, 0.0);
    for i in 0..points {
        let x = i as f64 / (points - 1) as f64;
        let gap = (ck_reference(k, x) - (1.0 - x)).abs();
        if gap > best.0 {
            best = (gap, x);
        }
    }
    best
}
