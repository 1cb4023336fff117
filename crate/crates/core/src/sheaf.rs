//! The catalog of sheaves whose cohomology we can compute, and a caching evaluator.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::cohomology::{line_cohom, CohomTable, SplitBundle};
use crate::complex::MonomialComplex;
use crate::error::{Error, Result};
use crate::hypercohom::{hypercohom, omega_cohom};
use crate::scroll::{DivClass, Scroll};

/// `Ω^i_{X|P^m}(twist)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OmegaSpec {
    pub i: i64,
    pub twist: DivClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SheafSpec {
    Split(SplitBundle),
    Omega(OmegaSpec),
    /// A complex read as a sheaf through its hypercohomology in degrees `0..=dim X`.
    Complex(Box<MonomialComplex>),
}

impl SheafSpec {
    pub fn line(d: DivClass) -> Self {
        SheafSpec::Split(SplitBundle::line(d))
    }

    pub fn split(summands: &[(i64, i64)]) -> Result<Self> {
        Ok(SheafSpec::Split(SplitBundle::new(
            summands.iter().map(|&d| d.into()).collect(),
        )?))
    }

    pub fn omega(i: i64, twist: DivClass) -> Self {
        SheafSpec::Omega(OmegaSpec { i, twist })
    }

    pub fn validate(&self, x: &Scroll) -> Result<()> {
        match self {
            SheafSpec::Split(_) => Ok(()),
            SheafSpec::Omega(o) if o.i < 0 || o.i > x.n() as i64 => Err(Error::IndexOutOfRange {
                index: o.i,
                max: x.n() as i64,
            }),
            SheafSpec::Omega(_) => Ok(()),
            SheafSpec::Complex(c) if c.m != x.m() || c.n != x.n() || c.twists != x.twists() => {
                Err(Error::InvalidComplex("complex was built on a different scroll".into()))
            }
            SheafSpec::Complex(_) => Ok(()),
        }
    }

    pub fn as_split(&self) -> Option<&SplitBundle> {
        match self {
            SheafSpec::Split(e) => Some(e),
            _ => None,
        }
    }

    pub fn twisted(&self, x: &Scroll, t: DivClass) -> SheafSpec {
        match self {
            SheafSpec::Split(e) => SheafSpec::Split(e.twisted(t)),
            SheafSpec::Omega(o) => SheafSpec::omega(o.i, o.twist + t),
            SheafSpec::Complex(c) => SheafSpec::Complex(Box::new(c.twisted(x, t))),
        }
    }

    /// The dual bundle. For `Ω^i(T)` this uses `(Ω^i)^∨ ≅ Ω^{n-i}⟨n+1, -c⟩`.
    pub fn dual(&self, x: &Scroll) -> Result<SheafSpec> {
        match self {
            SheafSpec::Split(e) => Ok(SheafSpec::Split(e.dual())),
            SheafSpec::Omega(o) => Ok(SheafSpec::omega(
                x.n() as i64 - o.i,
                DivClass::new(x.n() as i64 + 1, -x.c()) - o.twist,
            )),
            SheafSpec::Complex(_) => Err(Error::NotSplit),
        }
    }
}

impl fmt::Display for SheafSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SheafSpec::Split(e) => {
                let parts: Vec<String> = e.summands().iter().map(|d| format!("O{d}")).collect();
                write!(f, "{}", parts.join(" ⊕ "))
            }
            SheafSpec::Omega(o) => write!(f, "Ω^{}{}", o.i, o.twist),
            SheafSpec::Complex(c) => write!(f, "complex with {} terms", c.terms.len()),
        }
    }
}

/// Computes `h^•(E ⊗ O(T))` for catalog sheaves, memoising the engine-backed ones.
pub struct Evaluator {
    x: Scroll,
    line_cache: RwLock<HashMap<DivClass, CohomTable>>,
    omega_cache: RwLock<HashMap<(i64, DivClass), CohomTable>>,
}

impl Evaluator {
    pub fn new(x: Scroll) -> Self {
        Evaluator {
            x,
            line_cache: RwLock::new(HashMap::new()),
            omega_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn scroll(&self) -> &Scroll {
        &self.x
    }

    pub fn cohom(&self, e: &SheafSpec, t: DivClass) -> Result<CohomTable> {
        e.validate(&self.x)?;
        match e {
            SheafSpec::Split(b) => {
                let mut total = CohomTable::zero(self.x.dim() + 1);
                for &d in b.summands() {
                    total.add_assign(&self.line(d + t));
                }
                Ok(total)
            }
            SheafSpec::Omega(o) => self.omega(o.i, o.twist + t),
            SheafSpec::Complex(c) => hypercohom(&self.x, &c.twisted(&self.x, t))?.to_table(self.x.dim()),
        }
    }

    /// `h^degree(E ⊗ O(T))`; zero outside `0..=dim X`.
    pub fn h(&self, e: &SheafSpec, degree: usize, t: DivClass) -> Result<BigUint> {
        if degree > self.x.dim() {
            return Ok(BigUint::default());
        }
        Ok(self.cohom(e, t)?.get(degree))
    }

    fn line(&self, d: DivClass) -> CohomTable {
        if let Some(hit) = self.line_cache.read().expect("cache lock").get(&d) {
            return hit.clone();
        }
        let table = line_cohom(&self.x, d);
        self.line_cache.write().expect("cache lock").insert(d, table.clone());
        table
    }

    fn omega(&self, i: i64, t: DivClass) -> Result<CohomTable> {
        if let Some(hit) = self.omega_cache.read().expect("cache lock").get(&(i, t)) {
            return Ok(hit.clone());
        }
        let table = omega_cohom(&self.x, i, t)?;
        self.omega_cache
            .write()
            .expect("cache lock")
            .insert((i, t), table.clone());
        Ok(table)
    }
}
