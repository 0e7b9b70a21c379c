//! Concrete mnesor instances for the checker, and deliberately broken mutants.

use rand::Rng;
use serde_json::{json, Value};

use crate::algebra::{Mnesor, PowerFamily, TrialRng};
use crate::error::{Error, Result};
use crate::fuzzy_set::{Carrier, FuzzySet};
use crate::grade::{ComplementConfig, Grade, Scalar};

/// Random grade: 10% exactly 0, 10% exactly 1, otherwise uniform on (0, 1).
pub fn random_grade(rng: &mut TrialRng) -> Grade {
    let r: f64 = rng.gen();
    if r < 0.1 {
        Grade::ZERO
    } else if r < 0.2 {
        Grade::ONE
    } else {
        Grade::new(rng.gen::<f64>()).expect("gen::<f64>() lies in [0, 1)")
    }
}

fn scalar(lambda: f64) -> Scalar {
    Scalar::new(lambda).expect("checker passes positive scalars")
}

/// Single grades with `max`, `^(1/lambda)` and `c_k`.
#[derive(Clone, Copy, Debug, Default)]
pub struct GradeInstance {
    pub cfg: ComplementConfig,
}

impl GradeInstance {
    pub fn new(cfg: ComplementConfig) -> Self {
        GradeInstance { cfg }
    }
}

impl Mnesor for GradeInstance {
    type Elem = Grade;

    fn zero(&self) -> Grade {
        Grade::ZERO
    }

    fn add(&self, a: &Grade, b: &Grade) -> Grade {
        a.max(*b)
    }

    fn scale(&self, a: &Grade, lambda: f64) -> Grade {
        a.scale(scalar(lambda)).expect("positive scalar")
    }

    fn deviation(&self, a: &Grade, b: &Grade) -> f64 {
        (a.value() - b.value()).abs()
    }

    fn sample(&self, rng: &mut TrialRng) -> Result<Grade> {
        Ok(random_grade(rng))
    }

    fn describe(&self, a: &Grade) -> Value {
        json!(a.value())
    }

    fn top(&self) -> Option<Grade> {
        Some(Grade::ONE)
    }

    fn complement(&self, a: &Grade) -> Option<Grade> {
        Some(self.cfg.apply(*a))
    }

    fn native_meet(&self, a: &Grade, b: &Grade) -> Option<Grade> {
        Some(a.min(*b))
    }

    fn power_family(&self) -> Option<&dyn PowerFamily<Grade>> {
        Some(self)
    }
}

impl PowerFamily<Grade> for GradeInstance {
    fn ck(&self, k: f64, a: &Grade) -> Grade {
        ComplementConfig::new(k).expect("k > 0").apply(*a)
    }

    fn pow(&self, a: &Grade, n: f64) -> Grade {
        a.pow(n).expect("n > 0")
    }
}

/// Fuzzy sets on a fixed carrier, with random grades per point.
#[derive(Clone, Debug)]
pub struct FuzzySetInstance {
    carrier: Carrier,
    cfg: ComplementConfig,
}

impl FuzzySetInstance {
    pub fn new(carrier: Carrier, cfg: ComplementConfig) -> Result<Self> {
        if carrier.is_empty() {
            return Err(Error::Instance("carrier has no points".into()));
        }
        Ok(FuzzySetInstance { carrier, cfg })
    }

    /// Universe `u0 .. u{size-1}`.
    pub fn discrete(size: usize, cfg: ComplementConfig) -> Result<Self> {
        FuzzySetInstance::new(Carrier::discrete((0..size).map(|i| format!("u{i}")))?, cfg)
    }

    /// Grid on `[0, 1]` with `n` samples.
    pub fn sampled(n: usize, cfg: ComplementConfig) -> Result<Self> {
        FuzzySetInstance::new(Carrier::sampled(0.0, 1.0, n)?, cfg)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }
}

impl Mnesor for FuzzySetInstance {
    type Elem = FuzzySet;

    fn zero(&self) -> FuzzySet {
        FuzzySet::empty(self.carrier.clone())
    }

    fn add(&self, a: &FuzzySet, b: &FuzzySet) -> FuzzySet {
        a.union(b).expect("shared carrier")
    }

    fn scale(&self, a: &FuzzySet, lambda: f64) -> FuzzySet {
        a.scale(scalar(lambda)).expect("positive scalar")
    }

    fn deviation(&self, a: &FuzzySet, b: &FuzzySet) -> f64 {
        a.max_deviation(b).unwrap_or(f64::INFINITY)
    }

    fn sample(&self, rng: &mut TrialRng) -> Result<FuzzySet> {
        let grades = (0..self.carrier.len()).map(|_| random_grade(rng)).collect();
        FuzzySet::from_grades(self.carrier.clone(), grades)
    }

    fn describe(&self, a: &FuzzySet) -> Value {
        a.grades().iter().map(|g| g.value()).collect()
    }

    fn top(&self) -> Option<FuzzySet> {
        Some(FuzzySet::full(self.carrier.clone()))
    }

    fn complement(&self, a: &FuzzySet) -> Option<FuzzySet> {
        Some(a.complement(self.cfg))
    }

    fn native_meet(&self, a: &FuzzySet, b: &FuzzySet) -> Option<FuzzySet> {
        a.pointwise_min(b).ok()
    }
}

pub mod mutants {
    //! Grade-level instances with exactly one operation broken.

    use super::*;

    #[derive(Clone, Copy, Debug, PartialEq, Eq)]
    pub enum Mutation {
        /// `x^lambda` instead of `x^(1/lambda)`.
        ScaleExponent,
        /// `1 - x` as complement, with the power laws still enabled.
        LinearComplement,
        /// `min` as addition.
        MinAddition,
        /// `c_0.4(c_0.5(x))`, which is not an involution.
        ComposedComplement,
    }

    impl Mutation {
        pub const ALL: [Mutation; 4] = [
            Mutation::ScaleExponent,
            Mutation::LinearComplement,
            Mutation::MinAddition,
            Mutation::ComposedComplement,
        ];

        pub fn name(self) -> &'static str {
            match self {
                Mutation::ScaleExponent => "scale-exponent",
                Mutation::LinearComplement => "linear-complement",
                Mutation::MinAddition => "min-addition",
                Mutation::ComposedComplement => "composed-complement",
            }
        }
    }

    #[derive(Clone, Copy, Debug)]
    pub struct Mutant {
        pub mutation: Mutation,
        base: GradeInstance,
    }

    impl Mutant {
        pub fn new(mutation: Mutation, cfg: ComplementConfig) -> Self {
            Mutant {
                mutation,
                base: GradeInstance::new(cfg),
            }
        }
    }

    fn linear(a: &Grade) -> Grade {
        Grade::new(1.0 - a.value()).expect("1 - x stays in [0, 1]")
    }

    impl Mnesor for Mutant {
        type Elem = Grade;

        fn zero(&self) -> Grade {
            Grade::ZERO
        }

        fn add(&self, a: &Grade, b: &Grade) -> Grade {
            match self.mutation {
                Mutation::MinAddition => a.min(*b),
                _ => a.max(*b),
            }
        }

        fn scale(&self, a: &Grade, lambda: f64) -> Grade {
            match self.mutation {
                Mutation::ScaleExponent => a.pow(lambda).expect("positive exponent"),
                _ => self.base.scale(a, lambda),
            }
        }

        fn deviation(&self, a: &Grade, b: &Grade) -> f64 {
            self.base.deviation(a, b)
        }

        fn sample(&self, rng: &mut TrialRng) -> Result<Grade> {
            self.base.sample(rng)
        }

        fn describe(&self, a: &Grade) -> Value {
            self.base.describe(a)
        }

        fn top(&self) -> Option<Grade> {
            Some(Grade::ONE)
        }

        fn complement(&self, a: &Grade) -> Option<Grade> {
            Some(match self.mutation {
                Mutation::LinearComplement => linear(a),
                Mutation::ComposedComplement => {
                    let outer = ComplementConfig::new(0.4).expect("k > 0");
                    let inner = ComplementConfig::new(0.5).expect("k > 0");
                    outer.apply(inner.apply(*a))
                }
                _ => self.base.cfg.apply(*a),
            })
        }

        fn native_meet(&self, a: &Grade, b: &Grade) -> Option<Grade> {
            Some(a.min(*b))
        }

        fn power_family(&self) -> Option<&dyn PowerFamily<Grade>> {
            Some(self)
        }
    }

    impl PowerFamily<Grade> for Mutant {
        fn ck(&self, k: f64, a: &Grade) -> Grade {
            match self.mutation {
                Mutation::LinearComplement => linear(a),
                _ => self.base.ck(k, a),
            }
        }

        fn pow(&self, a: &Grade, n: f64) -> Grade {
            self.base.pow(a, n)
        }
    }
}
