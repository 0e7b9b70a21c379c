//! Fuzzy sets over a finite labelled universe or a uniform sample grid.
//!
//! Both kinds share one representation: a [`Carrier`] and a dense vector of
//! grades aligned with it. Binary operations demand identical carriers; there
//! is no implicit universe merging and no resampling.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::grade::{ComplementConfig, Grade, Scalar};

/// Uniform grid `x_i = lo + i * (hi - lo) / (n - 1)`, endpoints inclusive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    lo: f64,
    hi: f64,
    n: usize,
}

impl Grid {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Grid> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(domain(format!(
                "grid bounds must satisfy lo < hi, got [{lo}, {hi}]"
            )));
        }
        if n < 2 {
            return Err(domain(format!("grid needs at least 2 samples, got {n}")));
        }
        Ok(Grid { lo, hi, n })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn x(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            return self.hi;
        }
        self.lo + i as f64 * (self.hi - self.lo) / (self.n - 1) as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|i| self.x(i))
    }
}

/// The domain a fuzzy set is defined over.
#[derive(Clone, Debug)]
pub enum Carrier {
    Discrete(Arc<[String]>),
    Sampled(Grid),
}

impl Carrier {
    /// A discrete universe; labels must be unique.
    pub fn discrete<I, S>(labels: I) -> Result<Carrier>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(domain(format!("duplicate universe label {l:?}")));
            }
        }
        Ok(Carrier::Discrete(labels.into()))
    }

    pub fn sampled(lo: f64, hi: f64, n: usize) -> Result<Carrier> {
        Grid::new(lo, hi, n).map(Carrier::Sampled)
    }

    pub fn len(&self) -> usize {
        match self {
            Carrier::Discrete(labels) => labels.len(),
            Carrier::Sampled(grid) => grid.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn labels(&self) -> Option<&[String]> {
        match self {
            Carrier::Discrete(labels) => Some(labels),
            Carrier::Sampled(_) => None,
        }
    }

    pub fn grid(&self) -> Option<&Grid> {
        match self {
            Carrier::Sampled(grid) => Some(grid),
            Carrier::Discrete(_) => None,
        }
    }

    fn ensure_same(&self, other: &Carrier) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::Incompatible(format!("{self} vs {other}")))
        }
    }
}

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Carrier::Discrete(a), Carrier::Discrete(b)) => Arc::ptr_eq(a, b) || a == b,
            (Carrier::Sampled(a), Carrier::Sampled(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::Discrete(labels) => write!(f, "discrete universe of {} labels", labels.len()),
            Carrier::Sampled(g) => write!(f, "grid [{}, {}] with {} samples", g.lo, g.hi, g.n),
        }
    }
}

/// Piecewise-linear membership shapes used to build sampled sets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shape {
    RampUp(f64, f64),
    RampDown(f64, f64),
    Triangle(f64, f64, f64),
    Trapezoid(f64, f64, f64, f64),
    Constant(f64),
}

impl Shape {
    /// Parses the `kind` / `params` pair of a shape descriptor.
    pub fn from_kind(kind: &str, params: &[f64]) -> Result<Shape> {
        let want = match kind {
            "ramp-up" | "ramp-down" => 2,
            "triangle" => 3,
            "trapezoid" => 4,
            "constant" => 1,
            _ => return Err(domain(format!("unknown shape kind {kind:?}"))),
        };
        if params.len() != want {
            return Err(domain(format!(
                "shape {kind} takes {want} parameters, got {}",
                params.len()
            )));
        }
        let p = params;
        let shape = match kind {
            "ramp-up" => Shape::RampUp(p[0], p[1]),
            "ramp-down" => Shape::RampDown(p[0], p[1]),
            "triangle" => Shape::Triangle(p[0], p[1], p[2]),
            "trapezoid" => Shape::Trapezoid(p[0], p[1], p[2], p[3]),
            _ => Shape::Constant(p[0]),
        };
        shape.validate()?;
        Ok(shape)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Shape::RampUp(..) => "ramp-up",
            Shape::RampDown(..) => "ramp-down",
            Shape::Triangle(..) => "triangle",
            Shape::Trapezoid(..) => "trapezoid",
            Shape::Constant(_) => "constant",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ordered =
            |ps: &[f64]| ps.iter().all(|p| p.is_finite()) && ps.windows(2).all(|w| w[0] <= w[1]);
        let ok = match *self {
            Shape::RampUp(a, b) | Shape::RampDown(a, b) => ordered(&[a, b]),
            Shape::Triangle(a, b, c) => ordered(&[a, b, c]),
            Shape::Trapezoid(a, b, c, d) => ordered(&[a, b, c, d]),
            Shape::Constant(v) => (0.0..=1.0).contains(&v),
        };
        if ok {
            Ok(())
        } else {
            Err(domain(format!(
                "invalid {} parameters: {self:?}",
                self.kind()
            )))
        }
    }

    /// Membership at `x`, clamped to `[0, 1]`.
    pub fn membership(&self, x: f64) -> f64 {
        let m = match *self {
            Shape::RampUp(a, b) => {
                if x >= b {
                    1.0
                } else if x <= a {
                    0.0
                } else {
                    (x - a) / (b - a)
                }
            }
            Shape::RampDown(a, b) => {
                if x <= a {
                    1.0
                } else if x >= b {
                    0.0
                } else {
                    (b - x) / (b - a)
                }
            }
            Shape::Triangle(a, b, c) => Shape::Trapezoid(a, b, b, c).membership(x),
            Shape::Trapezoid(a, b, c, d) => {
                if (b..=c).contains(&x) {
                    1.0
                } else if x <= a || x >= d {
                    0.0
                } else if x < b {
                    (x - a) / (b - a)
                } else {
                    (d - x) / (d - c)
                }
            }
            Shape::Constant(v) => v,
        };
        m.clamp(0.0, 1.0)
    }
}

/// A fuzzy set: one grade per carrier point.
#[derive(Clone, Debug)]
pub struct FuzzySet {
    carrier: Carrier,
    grades: Vec<Grade>,
}

impl FuzzySet {
    /// Discrete set from `(label, grade)` pairs; labels not listed get grade 0.
    pub fn discrete<'a, I>(carrier: Carrier, grades: I) -> Result<FuzzySet>
    where
        I: IntoIterator<Item = (&'a str, Grade)>,
    {
        let labels = carrier
            .labels()
            .ok_or_else(|| domain("discrete set needs a discrete universe"))?;
        let mut out = vec![Grade::ZERO; labels.len()];
        for (label, g) in grades {
            let i = labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| domain(format!("label {label:?} not in universe")))?;
            out[i] = g;
        }
        Ok(FuzzySet {
            carrier,
            grades: out,
        })
    }

    /// Sampled set on `grid`; `samples` must have exactly one grade per grid point.
    pub fn sampled(grid: Grid, samples: Vec<Grade>) -> Result<FuzzySet> {
        if samples.len() != grid.len() {
            return Err(domain(format!(
                "grid has {} points but {} samples were given",
                grid.len(),
                samples.len()
            )));
        }
        Ok(FuzzySet {
            carrier: Carrier::Sampled(grid),
            grades: samples,
        })
    }

    /// Grades aligned with the carrier order.
    pub fn from_grades(carrier: Carrier, grades: Vec<Grade>) -> Result<FuzzySet> {
        if grades.len() != carrier.len() {
            return Err(domain(format!(
                "carrier has {} points but {} grades were given",
                carrier.len(),
                grades.len()
            )));
        }
        Ok(FuzzySet { carrier, grades })
    }

    pub fn from_shape(shape: Shape, grid: Grid) -> Result<FuzzySet> {
        shape.validate()?;
        let grades = grid
            .points()
            .map(|x| Grade::new(shape.membership(x)))
            .collect::<Result<Vec<_>>>()?;
        FuzzySet::sampled(grid, grades)
    }

    pub fn empty(carrier: Carrier) -> FuzzySet {
        let n = carrier.len();
        FuzzySet {
            carrier,
            grades: vec![Grade::ZERO; n],
        }
    }

    pub fn full(carrier: Carrier) -> FuzzySet {
        let n = carrier.len();
        FuzzySet {
            carrier,
            grades: vec![Grade::ONE; n],
        }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    pub fn grade_of(&self, label: &str) -> Option<Grade> {
        let labels = self.carrier.labels()?;
        labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.grades[i])
    }

    fn zip_with(&self, other: &FuzzySet, f: impl Fn(Grade, Grade) -> Grade) -> Result<FuzzySet> {
        self.carrier.ensure_same(&other.carrier)?;
        Ok(FuzzySet {
            carrier: self.carrier.clone(),
            grades: self
                .grades
                .iter()
                .zip(&other.grades)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    fn map(&self, f: impl Fn(Grade) -> Grade) -> FuzzySet {
        FuzzySet {
            carrier: self.carrier.clone(),
            grades: self.grades.iter().map(|&g| f(g)).collect(),
        }
    }

    /// Pointwise max.
    pub fn union(&self, other: &FuzzySet) -> Result<FuzzySet> {
        self.zip_with(other, Grade::max)
    }

    /// Pointwise min, the closed form the De Morgan intersection collapses to.
    pub fn pointwise_min(&self, other: &FuzzySet) -> Result<FuzzySet> {
        self.zip_with(other, Grade::min)
    }

    /// External multiplication, pointwise `mu^(1/lambda)`.
    pub fn scale(&self, lambda: Scalar) -> Result<FuzzySet> {
        lambda.scaling()?;
        Ok(self.map(|g| g.scale(lambda).expect("lambda checked positive")))
    }

    pub fn complement(&self, cfg: ComplementConfig) -> FuzzySet {
        self.map(|g| cfg.apply(g))
    }

    /// Intersection as the De Morgan composite `~(~A | ~B)`.
    pub fn intersect(&self, other: &FuzzySet, cfg: ComplementConfig) -> Result<FuzzySet> {
        Ok(self
            .complement(cfg)
            .union(&other.complement(cfg))?
            .complement(cfg))
    }

    /// `A ⊆ B` iff every grade of `A` is at most the grade of `B` plus `tol`.
    pub fn is_subset(&self, other: &FuzzySet, tol: f64) -> Result<bool> {
        self.carrier.ensure_same(&other.carrier)?;
        Ok(self
            .grades
            .iter()
            .zip(&other.grades)
            .all(|(a, b)| a.value() <= b.value() + tol))
    }

    /// Same carrier and all grades within `tol`; never errors.
    pub fn approx_eq(&self, other: &FuzzySet, tol: f64) -> bool {
        self.max_deviation(other).is_some_and(|d| d <= tol)
    }

    /// Largest pointwise `|a - b|`, or `None` when the carriers differ.
    pub fn max_deviation(&self, other: &FuzzySet) -> Option<f64> {
        if self.carrier != other.carrier {
            return None;
        }
        Some(
            self.grades
                .iter()
                .zip(&other.grades)
                .map(|(a, b)| (a.value() - b.value()).abs())
                .fold(0.0, f64::max),
        )
    }
}
