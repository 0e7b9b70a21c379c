use std::collections::BTreeMap;

use super::Expr;
use crate::error::{domain, Error, Result};
use crate::fuzzy_set::{Carrier, FuzzySet};
use crate::grade::{ComplementConfig, Scalar};
use crate::setfile::SetDefinitions;

/// Variable bindings on one shared carrier.
#[derive(Clone, Debug)]
pub struct Env {
    sets: BTreeMap<String, FuzzySet>,
    carrier: Option<Carrier>,
    cfg: ComplementConfig,
}

impl Env {
    /// An environment with no carrier yet; the first binding fixes it.
    pub fn new(cfg: ComplementConfig) -> Env {
        Env {
            sets: BTreeMap::new(),
            carrier: None,
            cfg,
        }
    }

    pub fn with_carrier(carrier: Carrier, cfg: ComplementConfig) -> Env {
        Env {
            sets: BTreeMap::new(),
            carrier: Some(carrier),
            cfg,
        }
    }

    pub fn from_definitions(defs: &SetDefinitions, cfg: ComplementConfig) -> Result<Env> {
        let mut env = Env::new(cfg);
        for (name, set) in &defs.sets {
            env.bind(name.clone(), set.clone())?;
        }
        Ok(env)
    }

    pub fn bind(&mut self, name: impl Into<String>, set: FuzzySet) -> Result<()> {
        let name = name.into();
        match &self.carrier {
            Some(c) if c != set.carrier() => {
                return Err(Error::Incompatible(format!(
                    "set {name:?} is on {} but the environment uses {c}",
                    set.carrier()
                )))
            }
            Some(_) => {}
            None => self.carrier = Some(set.carrier().clone()),
        }
        self.sets.insert(name, set);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&FuzzySet> {
        self.sets.get(name)
    }

    pub fn carrier(&self) -> Option<&Carrier> {
        self.carrier.as_ref()
    }

    pub fn config(&self) -> ComplementConfig {
        self.cfg
    }

    fn require_carrier(&self) -> Result<Carrier> {
        self.carrier
            .clone()
            .ok_or_else(|| domain("EMPTY and FULL need a carrier; bind at least one set"))
    }

    /// Structural evaluation of `e`.
    pub fn eval(&self, e: &Expr) -> Result<FuzzySet> {
        match e {
            Expr::Var(name) => self
                .sets
                .get(name)
                .cloned()
                .ok_or_else(|| Error::Unbound(name.clone())),
            Expr::Empty => Ok(FuzzySet::empty(self.require_carrier()?)),
            Expr::Full => Ok(FuzzySet::full(self.require_carrier()?)),
            Expr::Union(l, r) => self.eval(l)?.union(&self.eval(r)?),
            Expr::Intersect(l, r) => self.eval(l)?.intersect(&self.eval(r)?, self.cfg),
            Expr::Complement(x) => Ok(self.eval(x)?.complement(self.cfg)),
            Expr::Scale(x, lambda) => self.eval(x)?.scale(Scalar::new(*lambda)?),
        }
    }
}
