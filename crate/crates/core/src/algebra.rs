//! Instance-agnostic law catalog and randomized checker.
//!
//! Any type implementing [`Mnesor`] can be run against the semimodule axioms,
//! the complement axioms and their consequences. Each trial draws from its own
//! generator seeded by `(seed, law, trial)`, so reports do not depend on the
//! order in which trials execute.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Generator handed to [`Mnesor::sample`].
pub type TrialRng = ChaCha8Rng;

/// Default bounds for sampled scalars.
pub const SCALAR_RANGE: (f64, f64) = (0.05, 4.0);

/// Range of complement parameters drawn by the power-identity law.
pub const K_RANGE: (f64, f64) = (0.1, 5.0);

/// A semimodule over `(R+, max, *)`, optionally with top and complement.
///
/// Implementations must be pure: the checker calls them from many threads.
pub trait Mnesor: Sync {
    type Elem: Clone + Send;

    fn zero(&self) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// External multiplication; the checker only passes `lambda > 0`.
    fn scale(&self, a: &Self::Elem, lambda: f64) -> Self::Elem;

    /// Largest pointwise distance between two elements.
    fn deviation(&self, a: &Self::Elem, b: &Self::Elem) -> f64;

    fn equal(&self, a: &Self::Elem, b: &Self::Elem, tol: f64) -> bool {
        self.deviation(a, b) <= tol
    }

    /// Draws an element. Must depend only on the generator state.
    fn sample(&self, rng: &mut TrialRng) -> Result<Self::Elem>;

    fn describe(&self, a: &Self::Elem) -> Value;

    fn scalar_range(&self) -> (f64, f64) {
        SCALAR_RANGE
    }

    fn top(&self) -> Option<Self::Elem> {
        None
    }

    fn complement(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// A meet computed independently of the complement, if the instance has one.
    fn native_meet(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// `c_k` and raw powers, for grade-level instances.
    fn power_family(&self) -> Option<&dyn PowerFamily<Self::Elem>> {
        None
    }
}

pub trait PowerFamily<E>: Sync {
    fn ck(&self, k: f64, a: &E) -> E;
    fn pow(&self, a: &E, n: f64) -> E;
}

/// `a ⊆ b` iff `a + b = b`.
pub fn leq<M: Mnesor>(m: &M, a: &M::Elem, b: &M::Elem, tol: f64) -> bool {
    m.equal(&m.add(a, b), b, tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Requirement {
    Base,
    Complemented,
    PowerFamily,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Law {
    pub id: &'static str,
    pub statement: &'static str,
    pub requires: Requirement,
    pub elements: usize,
    pub scalars: usize,
}

const fn law(
    id: &'static str,
    statement: &'static str,
    requires: Requirement,
    elements: usize,
    scalars: usize,
) -> Law {
    Law {
        id,
        statement,
        requires,
        elements,
        scalars,
    }
}

use Requirement::{Base, Complemented};

static CATALOG: [Law; 19] = [
    law("L1", "unit: A*1 = A", Base, 1, 0),
    law("L2", "scale-join: A*l + A*m = A*max(l, m)", Base, 1, 2),
    law(
        "L3",
        "join distributivity: (A + B)*l = A*l + B*l",
        Base,
        2,
        1,
    ),
    law("L4", "scale composition: (A*l)*m = A*(l m)", Base, 1, 2),
    law("L5", "idempotent addition: A + A = A", Base, 1, 0),
    law(
        "L6",
        "order coherence: A <= A + B, 0 <= A, A + 0 = A",
        Base,
        2,
        0,
    ),
    law(
        "L7",
        "selectivity: l <= 1 => A*l <= A; l >= 1 => A <= A*l",
        Base,
        1,
        1,
    ),
    law("L8", "empty scale: 0*l = 0 for l in (0, 1]", Base, 0, 1),
    law("L9", "involution: ~~A = A", Complemented, 1, 0),
    law("L10", "complement of top: ~1 = 0", Complemented, 0, 0),
    law(
        "L11",
        "complement scale: ~(A*l) = (~A)*(1/l)",
        Complemented,
        1,
        1,
    ),
    law(
        "L12",
        "antitone complement: A <= B => ~B <= ~A",
        Complemented,
        2,
        0,
    ),
    law("L13", "top scale: 1*l = 1 for l >= 1", Complemented, 0, 1),
    law(
        "L14",
        "meet is the De Morgan composite ~(~A + ~B), a lower bound",
        Complemented,
        2,
        0,
    ),
    law(
        "L15",
        "scale distributes over meet: (A*l) & (B*l) = (A & B)*l",
        Complemented,
        2,
        1,
    ),
    law("L16", "meet idempotent: A & A = A", Complemented, 1, 0),
    law(
        "L17",
        "absorption: A + (A & B) = A, A & (A + B) = A",
        Complemented,
        2,
        0,
    ),
    law(
        "L18",
        "lattice: join and meet commutative and associative",
        Base,
        3,
        0,
    ),
    law(
        "L19",
        "c_k power identities: c_k(x)^n = c_(kn)(x), c_k(x^n) = c_(k/n)(x)",
        Requirement::PowerFamily,
        1,
        2,
    ),
];

pub fn law_catalog() -> &'static [Law] {
    &CATALOG
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub check: &'static str,
    pub inputs: Value,
    pub lhs: Value,
    pub rhs: Value,
    pub deviation: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Checked,
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawReport {
    pub id: &'static str,
    pub run: usize,
    pub failures: usize,
    pub counterexample: Option<Counterexample>,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub seed: u64,
    pub cases: usize,
    pub tol: f64,
    pub verdict: Verdict,
    pub laws: Vec<LawReport>,
}

impl CheckReport {
    pub fn law(&self, id: &str) -> Option<&LawReport> {
        self.laws.iter().find(|l| l.id == id)
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// How trials are scheduled. Without the `parallel` feature both run sequentially.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

enum TrialError {
    Fail(Box<Counterexample>),
    Instance(Error),
}

impl From<Error> for TrialError {
    fn from(e: Error) -> Self {
        TrialError::Instance(e)
    }
}

type Trial = std::result::Result<(), TrialError>;

fn missing(cap: &str) -> TrialError {
    TrialError::Instance(Error::Instance(format!("instance does not provide {cap}")))
}

/// splitmix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn trial_seed(seed: u64, law: usize, trial: usize) -> u64 {
    mix(mix(mix(seed) ^ law as u64) ^ trial as u64)
}

struct Ctx<'a, M: Mnesor> {
    m: &'a M,
    tol: f64,
    trial: usize,
    rng: TrialRng,
    inputs: Map<String, Value>,
}

impl<'a, M: Mnesor> Ctx<'a, M> {
    fn elem(&mut self, name: &str) -> Result<M::Elem> {
        let e = self.m.sample(&mut self.rng)?;
        self.inputs.insert(name.to_string(), self.m.describe(&e));
        Ok(e)
    }

    /// Log-uniform scalar; the first trials pin it to 1 and either side of 1.
    fn scalar(&mut self, name: &str) -> f64 {
        let (lo, hi) = self.m.scalar_range();
        let v = match self.trial {
            0 => 1.0,
            1 => 1.0 - 1e-6,
            2 => 1.0 + 1e-6,
            _ => (self.rng.gen_range(lo.ln()..=hi.ln())).exp(),
        };
        self.inputs.insert(name.to_string(), Value::from(v));
        v
    }

    fn uniform(&mut self, name: &str, (lo, hi): (f64, f64)) -> f64 {
        let v = self.rng.gen_range(lo..=hi);
        self.inputs.insert(name.to_string(), Value::from(v));
        v
    }

    fn fail(&self, check: &'static str, lhs: &M::Elem, rhs: &M::Elem) -> TrialError {
        TrialError::Fail(Box::new(Counterexample {
            trial: self.trial,
            check,
            inputs: Value::Object(self.inputs.clone()),
            lhs: self.m.describe(lhs),
            rhs: self.m.describe(rhs),
            deviation: self.m.deviation(lhs, rhs),
        }))
    }

    fn eq(&self, check: &'static str, lhs: &M::Elem, rhs: &M::Elem) -> Trial {
        if self.m.equal(lhs, rhs, self.tol) {
            Ok(())
        } else {
            Err(self.fail(check, lhs, rhs))
        }
    }

    /// `lhs ⊆ rhs`; a failure reports `lhs + rhs` against `rhs`.
    fn le(&self, check: &'static str, lhs: &M::Elem, rhs: &M::Elem) -> Trial {
        let joined = self.m.add(lhs, rhs);
        if self.m.equal(&joined, rhs, self.tol) {
            Ok(())
        } else {
            Err(self.fail(check, &joined, rhs))
        }
    }

    fn c(&self, a: &M::Elem) -> std::result::Result<M::Elem, TrialError> {
        self.m.complement(a).ok_or_else(|| missing("a complement"))
    }

    fn top(&self) -> std::result::Result<M::Elem, TrialError> {
        self.m.top().ok_or_else(|| missing("a top element"))
    }

    fn meet(&self, a: &M::Elem, b: &M::Elem) -> std::result::Result<M::Elem, TrialError> {
        let joined = self.m.add(&self.c(a)?, &self.c(b)?);
        self.c(&joined)
    }
}

fn run_law<M: Mnesor>(cx: &mut Ctx<'_, M>, id: &str, complemented: bool) -> Trial {
    let m = cx.m;
    match id {
        "L1" => {
            let a = cx.elem("A")?;
            cx.eq("A*1 = A", &m.scale(&a, 1.0), &a)
        }
        "L2" => {
            let a = cx.elem("A")?;
            let l = cx.scalar("lambda");
            let mu = cx.scalar("mu");
            let lhs = m.add(&m.scale(&a, l), &m.scale(&a, mu));
            cx.eq("A*l + A*m = A*max(l, m)", &lhs, &m.scale(&a, l.max(mu)))
        }
        "L3" => {
            let a = cx.elem("A")?;
            let b = cx.elem("B")?;
            let l = cx.scalar("lambda");
            let lhs = m.scale(&m.add(&a, &b), l);
            let rhs = m.add(&m.scale(&a, l), &m.scale(&b, l));
            cx.eq("(A + B)*l = A*l + B*l", &lhs, &rhs)
        }
        "L4" => {
            let a = cx.elem("A")?;
            let l = cx.scalar("lambda");
            let mu = cx.scalar("mu");
            cx.eq(
                "(A*l)*m = A*(l m)",
                &m.scale(&m.scale(&a, l), mu),
                &m.scale(&a, l * mu),
            )
        }
        "L5" => {
            let a = cx.elem("A")?;
            cx.eq("A + A = A", &m.add(&a, &a), &a)
        }
        "L6" => {
            let a = cx.elem("A")?;
            let b = cx.elem("B")?;
            let zero = m.zero();
            cx.eq("A + 0 = A", &m.add(&a, &zero), &a)?;
            cx.le("0 <= A", &zero, &a)?;
            cx.le("A <= A + B", &a, &m.add(&a, &b))
        }
        "L7" => {
            let a = cx.elem("A")?;
            let l = cx.scalar("lambda");
            let scaled = m.scale(&a, l);
            if l <= 1.0 {
                cx.le("l <= 1 => A*l <= A", &scaled, &a)?;
            }
            if l >= 1.0 {
                cx.le("l >= 1 => A <= A*l", &a, &scaled)?;
            }
            Ok(())
        }
        "L8" => {
            let l = cx.scalar("lambda");
            let l = if l > 1.0 { 1.0 / l } else { l };
            let zero = m.zero();
            cx.eq("0*l = 0", &m.scale(&zero, l), &zero)
        }
        "L9" => {
            let a = cx.elem("A")?;
            cx.eq("~~A = A", &cx.c(&cx.c(&a)?)?, &a)
        }
        "L10" => cx.eq("~1 = 0", &cx.c(&cx.top()?)?, &m.zero()),
        "L11" => {
            let a = cx.elem("A")?;
            let l = cx.scalar("lambda");
            let lhs = cx.c(&m.scale(&a, l))?;
            let rhs = m.scale(&cx.c(&a)?, 1.0 / l);
            cx.eq("~(A*l) = (~A)*(1/l)", &lhs, &rhs)
        }
        "L12" => {
            let a = cx.elem("A")?;
            let x = cx.elem("X")?;
            let b = m.add(&a, &x);
            cx.le("A <= A + X => ~(A + X) <= ~A", &cx.c(&b)?, &cx.c(&a)?)
        }
        "L13" => {
            let l = cx.scalar("lambda");
            let l = if l < 1.0 { 1.0 / l } else { l };
            let top = cx.top()?;
            cx.eq("1*l = 1", &m.scale(&top, l), &top)
        }
        "L14" => {
            let a = cx.elem("A")?;
            let b = cx.elem("B")?;
            let composite = cx.meet(&a, &b)?;
            if let Some(native) = m.native_meet(&a, &b) {
                cx.eq("~(~A + ~B) = A & B", &composite, &native)?;
            }
            cx.le("A & B <= A", &composite, &a)?;
            cx.le("A & B <= B", &composite, &b)
        }
        "L15" => {
            let a = cx.elem("A")?;
            let b = cx.elem("B")?;
            let l = cx.scalar("lambda");
            let lhs = cx.meet(&m.scale(&a, l), &m.scale(&b, l))?;
            let rhs = m.scale(&cx.meet(&a, &b)?, l);
            cx.eq("(A*l) & (B*l) = (A & B)*l", &lhs, &rhs)
        }
        "L16" => {
            let a = cx.elem("A")?;
            cx.eq("A & A = A", &cx.meet(&a, &a)?, &a)
        }
        "L17" => {
            let a = cx.elem("A")?;
            let b = cx.elem("B")?;
            cx.eq("A + (A & B) = A", &m.add(&a, &cx.meet(&a, &b)?), &a)?;
            cx.eq("A & (A + B) = A", &cx.meet(&a, &m.add(&a, &b))?, &a)
        }
        "L18" => {
            let a = cx.elem("A")?;
            let b = cx.elem("B")?;
            let c = cx.elem("C")?;
            cx.eq("A + B = B + A", &m.add(&a, &b), &m.add(&b, &a))?;
            cx.eq(
                "(A + B) + C = A + (B + C)",
                &m.add(&m.add(&a, &b), &c),
                &m.add(&a, &m.add(&b, &c)),
            )?;
            if complemented {
                cx.eq("A & B = B & A", &cx.meet(&a, &b)?, &cx.meet(&b, &a)?)?;
                cx.eq(
                    "(A & B) & C = A & (B & C)",
                    &cx.meet(&cx.meet(&a, &b)?, &c)?,
                    &cx.meet(&a, &cx.meet(&b, &c)?)?,
                )?;
            }
            Ok(())
        }
        "L19" => {
            let family = m.power_family().ok_or_else(|| missing("c_k powers"))?;
            let a = cx.elem("x")?;
            let k = cx.uniform("k", K_RANGE);
            let n = cx.scalar("n");
            cx.eq(
                "c_k(x)^n = c_(kn)(x)",
                &family.pow(&family.ck(k, &a), n),
                &family.ck(k * n, &a),
            )?;
            cx.eq(
                "c_k(x^n) = c_(k/n)(x)",
                &family.ck(k, &family.pow(&a, n)),
                &family.ck(k / n, &a),
            )
        }
        other => unreachable!("law {other} has no checking procedure"),
    }
}

/// Runs the catalog with the default scheduling.
pub fn check<M: Mnesor>(m: &M, cases: usize, seed: u64, tol: f64) -> Result<CheckReport> {
    check_with(m, cases, seed, tol, Execution::default())
}

pub fn check_with<M: Mnesor>(
    m: &M,
    cases: usize,
    seed: u64,
    tol: f64,
    execution: Execution,
) -> Result<CheckReport> {
    if cases == 0 {
        return Err(Error::Precondition("cases must be at least 1".into()));
    }
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::Precondition(format!("tolerance {tol} must be >= 0")));
    }
    let complemented = m.complement(&m.zero()).is_some();
    if complemented && m.top().is_none() {
        return Err(Error::Instance(
            "complemented instance has no top element".into(),
        ));
    }
    let powered = m.power_family().is_some();

    let mut laws = Vec::with_capacity(CATALOG.len());
    for (index, law) in CATALOG.iter().enumerate() {
        let applicable = match law.requires {
            Requirement::Base => true,
            Requirement::Complemented => complemented,
            Requirement::PowerFamily => powered,
        };
        if !applicable {
            laws.push(LawReport {
                id: law.id,
                run: 0,
                failures: 0,
                counterexample: None,
                status: Status::Skipped,
            });
            continue;
        }
        let trial = |t: usize| {
            let mut cx = Ctx {
                m,
                tol,
                trial: t,
                rng: TrialRng::seed_from_u64(trial_seed(seed, index, t)),
                inputs: Map::new(),
            };
            run_law(&mut cx, law.id, complemented)
        };
        let outcomes: Vec<Trial> = match execution {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..cases).into_par_iter().map(trial).collect(),
            _ => (0..cases).map(trial).collect(),
        };
        let mut failures = 0;
        let mut first = None;
        for outcome in outcomes {
            match outcome {
                Ok(()) => {}
                Err(TrialError::Fail(cx)) => {
                    failures += 1;
                    first.get_or_insert(*cx);
                }
                Err(TrialError::Instance(e)) => return Err(e),
            }
        }
        laws.push(LawReport {
            id: law.id,
            run: cases,
            failures,
            counterexample: first,
            status: Status::Checked,
        });
    }
    let verdict = if laws.iter().all(|l| l.failures == 0) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(CheckReport {
        seed,
        cases,
        tol,
        verdict,
        laws,
    })
}
