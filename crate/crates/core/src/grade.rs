//! Membership grades on the unit interval.
//!
//! A [`Grade`] carries its value twice: linearly in `[0, 1]` and as the
//! natural log in `[-inf, 0]`. Scaling and the `c_k` complement are single
//! divisions in log space (`l / lambda` and `k / l`), so both are computed
//! there; the linear value is always `exp(log)` of the stored log, except for
//! grades built from a linear value, where the value is kept verbatim.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Result};

/// Default absolute tolerance for approximate equality, linear domain.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Default complement parameter.
pub const DEFAULT_K: f64 = 0.4;

#[derive(Clone, Copy)]
pub struct Grade {
    value: f64,
    log: f64,
}

impl Grade {
    pub const ZERO: Grade = Grade {
        value: 0.0,
        log: f64::NEG_INFINITY,
    };
    pub const ONE: Grade = Grade {
        value: 1.0,
        log: 0.0,
    };

    /// Builds a grade from a linear value in `[0, 1]`.
    pub fn new(v: f64) -> Result<Grade> {
        if !(0.0..=1.0).contains(&v) {
            return Err(domain(format!("grade {v} outside [0, 1]")));
        }
        Ok(if v == 0.0 {
            Grade::ZERO
        } else if v == 1.0 {
            Grade::ONE
        } else {
            Grade {
                value: v,
                log: v.ln(),
            }
        })
    }

    /// Builds a grade from its natural log, which must lie in `[-inf, 0]`.
    pub fn from_log(l: f64) -> Result<Grade> {
        if l.is_nan() || l > 0.0 {
            return Err(domain(format!("log-grade {l} outside [-inf, 0]")));
        }
        Ok(Grade::from_log_unchecked(l))
    }

    // Caller guarantees l <= 0 and not NaN.
    fn from_log_unchecked(l: f64) -> Grade {
        if l == 0.0 {
            Grade::ONE
        } else if l == f64::NEG_INFINITY {
            Grade::ZERO
        } else {
            Grade {
                value: l.exp(),
                log: l,
            }
        }
    }

    pub fn value(self) -> f64 {
        self.value
    }

    pub fn log_value(self) -> f64 {
        self.log
    }

    /// Pointwise addition of the fuzzy instance.
    pub fn max(self, other: Grade) -> Grade {
        if other.log > self.log {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Grade) -> Grade {
        if other.log < self.log {
            other
        } else {
            self
        }
    }

    /// External multiplication: `a^(1/lambda)`, computed as `log / lambda`.
    pub fn scale(self, lambda: Scalar) -> Result<Grade> {
        let lambda = lambda.scaling()?;
        Ok(Grade::from_log_unchecked(self.log / lambda))
    }

    /// Raw power `a^n` for `n > 0`.
    pub fn pow(self, n: f64) -> Result<Grade> {
        if !(n > 0.0 && n.is_finite()) {
            return Err(domain(format!(
                "exponent {n} must be a positive finite real"
            )));
        }
        Ok(Grade::from_log_unchecked(self.log * n))
    }

    /// `|a - b| <= tol` in the linear domain.
    pub fn approx_eq(self, other: Grade, tol: f64) -> bool {
        (self.value - other.value).abs() <= tol
    }
}

impl PartialEq for Grade {
    fn eq(&self, other: &Self) -> bool {
        self.log == other.log
    }
}

impl PartialOrd for Grade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.log.partial_cmp(&other.log)
    }
}

impl fmt::Debug for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Grade({})", self.value)
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

impl Serialize for Grade {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.value)
    }
}

impl<'de> Deserialize<'de> for Grade {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        Grade::new(v).map_err(serde::de::Error::custom)
    }
}

/// An element of the scalar semiring `(R+, max, *)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Scalar(f64);

impl Scalar {
    pub const ONE: Scalar = Scalar(1.0);

    pub fn new(v: f64) -> Result<Scalar> {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(domain(format!("scalar {v} must be a finite real >= 0")));
        }
        Ok(Scalar(v))
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// Scalar addition.
    pub fn oplus(self, other: Scalar) -> Scalar {
        Scalar(self.0.max(other.0))
    }

    pub fn otimes(self, other: Scalar) -> Scalar {
        Scalar(self.0 * other.0)
    }

    pub fn recip(self) -> Result<Scalar> {
        Scalar::new(1.0 / self.scaling()?)
    }

    /// The value as a scaling factor; zero has no inverse and is rejected.
    pub fn scaling(self) -> Result<f64> {
        if self.0 > 0.0 {
            Ok(self.0)
        } else {
            Err(domain("scaling factor must be > 0"))
        }
    }
}

impl TryFrom<f64> for Scalar {
    type Error = crate::Error;

    fn try_from(v: f64) -> Result<Scalar> {
        Scalar::new(v)
    }
}

/// The complement family `c_k(x) = exp(k / ln x)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplementConfig {
    k: f64,
}

impl ComplementConfig {
    pub fn new(k: f64) -> Result<ComplementConfig> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(domain(format!("complement parameter k = {k} must be > 0")));
        }
        Ok(ComplementConfig { k })
    }

    pub fn k(self) -> f64 {
        self.k
    }

    /// `c_k(a)`, with `c_k(0) = 1` and `c_k(1) = 0` taken as explicit branches.
    pub fn apply(self, a: Grade) -> Grade {
        if a.log == f64::NEG_INFINITY {
            Grade::ONE
        } else if a.log == 0.0 {
            Grade::ZERO
        } else {
            // k / l is in [-inf, 0) here; overflow to -inf means the grade is 0.
            Grade::from_log_unchecked(self.k / a.log)
        }
    }
}

impl Default for ComplementConfig {
    fn default() -> Self {
        ComplementConfig { k: DEFAULT_K }
    }
}
