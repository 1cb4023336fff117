//! Closed-form line-bundle cohomology on scrolls.
//!
//! For `O(pH + qF)`: with `p ≥ 0` the cohomology is that of `Sym^p V ⊗ O(q)`
//! on the base; with `-n ≤ p < 0` everything vanishes; with `p < -n` it is the
//! dual of `Sym^{-p-n-1} V ⊗ O(c - q - 1 - m)` placed in complementary degrees.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scroll::{DivClass, Scroll};

/// `C(n, k)` for `n ≥ 0`, computed multiplicatively.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `(h^0, h^m)` of `O(d)` on `P^m`. For `m = 0` both describe degree 0 and
/// exactly one of them is 1.
pub fn pm_cohom(m: usize, d: i64) -> (BigUint, BigUint) {
    let m64 = m as u64;
    let h0 = if d >= 0 {
        binomial(d as u64 + m64, m64)
    } else {
        BigUint::zero()
    };
    let dual = -d - 1;
    let hm = if dual >= m as i64 {
        binomial(dual as u64, m64)
    } else {
        BigUint::zero()
    };
    (h0, hm)
}

/// Iterator over weak compositions of `k` into `parts` nonnegative parts, in
/// lexicographically decreasing order of the first part.
pub struct WeakCompositions {
    current: Vec<u64>,
    done: bool,
}

impl WeakCompositions {
    pub fn new(k: u64, parts: usize) -> Self {
        assert!(parts > 0, "need at least one part");
        let mut current = vec![0; parts];
        current[0] = k;
        WeakCompositions { current, done: false }
    }
}

impl Iterator for WeakCompositions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let len = self.current.len();
        // move one unit from the rightmost nonzero part (excluding the last) one step right,
        // collecting everything after it
        match (0..len - 1).rev().find(|&i| self.current[i] > 0) {
            None => self.done = true,
            Some(i) => {
                let tail: u64 = self.current[i + 1..].iter().sum();
                self.current[i] -= 1;
                for v in &mut self.current[i + 1..] {
                    *v = 0;
                }
                self.current[i + 1] = tail + 1;
            }
        }
        Some(out)
    }
}

/// The twists of `Sym^k V` as a multiset `{Σ β_j a_j}` (value → multiplicity).
pub fn sym_twists(x: &Scroll, k: i64) -> Result<BTreeMap<i64, u64>> {
    if k < 0 {
        return Err(Error::NegativePower(k));
    }
    let a = x.twists();
    let mut out = BTreeMap::new();
    for beta in WeakCompositions::new(k as u64, a.len()) {
        let t: i64 = beta.iter().zip(a).map(|(b, ai)| *b as i64 * ai).sum();
        *out.entry(t).or_insert(0) += 1;
    }
    Ok(out)
}

/// Cohomology dimensions `h^0, …, h^{dim X}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CohomTable {
    #[serde(serialize_with = "ser_dims", deserialize_with = "de_dims")]
    pub h: Vec<BigUint>,
}

impl CohomTable {
    pub fn zero(len: usize) -> Self {
        CohomTable {
            h: vec![BigUint::zero(); len],
        }
    }

    pub fn from_u64(values: &[u64]) -> Self {
        CohomTable {
            h: values.iter().map(|&v| BigUint::from(v)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    pub fn get(&self, i: usize) -> BigUint {
        self.h.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.h.iter().all(Zero::is_zero)
    }

    /// `Σ (-1)^i h^i`.
    pub fn euler_characteristic(&self) -> i128 {
        self.h
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let v = v.to_i128().expect("dimension fits in i128");
                if i % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    }

    pub fn add_assign(&mut self, other: &CohomTable) {
        if self.h.len() < other.h.len() {
            self.h.resize(other.h.len(), BigUint::zero());
        }
        for (a, b) in self.h.iter_mut().zip(&other.h) {
            *a += b;
        }
    }

    pub fn as_u64(&self) -> Vec<u64> {
        self.h
            .iter()
            .map(|v| v.to_u64().expect("dimension fits in u64"))
            .collect()
    }
}

impl fmt::Display for CohomTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.h.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

fn ser_dims<S: Serializer>(h: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(h.len()))?;
    for v in h {
        match v.to_u64() {
            Some(small) => seq.serialize_element(&small)?,
            None => seq.serialize_element(&v.to_string())?,
        }
    }
    seq.end()
}

fn de_dims<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigUint>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Dim {
        Small(u64),
        Big(String),
    }
    let raw = Vec::<Dim>::deserialize(d)?;
    raw.into_iter()
        .map(|v| match v {
            Dim::Small(x) => Ok(BigUint::from(x)),
            Dim::Big(s) => s.parse().map_err(de::Error::custom),
        })
        .collect()
}

/// Serializes a single dimension like the entries of a [`CohomTable`].
pub fn ser_dim<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(small) => s.serialize_u64(small),
        None => s.serialize_str(&v.to_string()),
    }
}

pub fn de_dim<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigUint, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Dim {
        Small(u64),
        Big(String),
    }
    match Dim::deserialize(d)? {
        Dim::Small(x) => Ok(BigUint::from(x)),
        Dim::Big(s) => s.parse().map_err(de::Error::custom),
    }
}

/// A nonempty direct sum of line bundles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<DivClass>", into = "Vec<DivClass>")]
pub struct SplitBundle {
    summands: Vec<DivClass>,
}

impl TryFrom<Vec<DivClass>> for SplitBundle {
    type Error = Error;
    fn try_from(v: Vec<DivClass>) -> Result<Self> {
        SplitBundle::new(v)
    }
}

impl From<SplitBundle> for Vec<DivClass> {
    fn from(e: SplitBundle) -> Self {
        e.summands
    }
}

impl SplitBundle {
    pub fn new(mut summands: Vec<DivClass>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::EmptyBundle);
        }
        summands.sort();
        Ok(SplitBundle { summands })
    }

    pub fn line(d: DivClass) -> Self {
        SplitBundle { summands: vec![d] }
    }

    pub fn summands(&self) -> &[DivClass] {
        &self.summands
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn dual(&self) -> SplitBundle {
        SplitBundle::new(self.summands.iter().map(|d| -*d).collect()).expect("nonempty")
    }

    pub fn twisted(&self, t: DivClass) -> SplitBundle {
        SplitBundle::new(self.summands.iter().map(|d| *d + t).collect()).expect("nonempty")
    }

    /// Multiset union.
    pub fn union(&self, other: &SplitBundle) -> SplitBundle {
        let mut s = self.summands.clone();
        s.extend_from_slice(&other.summands);
        SplitBundle::new(s).expect("nonempty")
    }
}

/// `h^•(X, O(D))` in closed form.
pub fn line_cohom(x: &Scroll, d: DivClass) -> CohomTable {
    let (m, n) = (x.m(), x.n());
    let mut table = CohomTable::zero(n + m + 1);
    let DivClass { p, q } = d;
    if p >= 0 {
        for (t, mult) in sym_twists(x, p).expect("p >= 0") {
            let (h0, hm) = pm_cohom(m, t + q);
            table.h[0] += h0 * mult;
            table.h[m] += hm * mult;
        }
    } else if p < -(n as i64) {
        let k = -p - n as i64 - 1;
        let shift = x.c() - q - 1 - m as i64;
        for (t, mult) in sym_twists(x, k).expect("k >= 0") {
            let (h0, hm) = pm_cohom(m, t + shift);
            table.h[n + m] += h0 * mult;
            table.h[n] += hm * mult;
        }
    }
    table
}

/// Additivity over summands, each twisted by `t`.
pub fn bundle_cohom(x: &Scroll, e: &SplitBundle, t: DivClass) -> CohomTable {
    let mut table = CohomTable::zero(x.dim() + 1);
    for d in e.summands() {
        table.add_assign(&line_cohom(x, *d + t));
    }
    table
}

pub fn euler_char(x: &Scroll, d: DivClass) -> i128 {
    line_cohom(x, d).euler_characteristic()
}

/// `O(pH + qF)` is generated by global sections iff every summand of
/// `Sym^p V ⊗ O(q)` has nonnegative degree.
pub fn is_globally_generated(x: &Scroll, d: DivClass) -> bool {
    d.p >= 0 && d.p * x.twists()[0] + d.q >= 0
}
