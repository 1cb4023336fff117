//! Scroll data and Picard-lattice arithmetic.
//!
//! A scroll is the projectivisation `X = P(O(a_0) ⊕ … ⊕ O(a_n))` over `P^m`.
//! Its Picard group is generated by `H` (the relative `O(1)`) and `F` (the
//! pullback of a hyperplane of the base); a class `pH + qF` is a [`DivClass`].

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Picard class `pH + qF`, serialized as `[p, q]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct DivClass {
    pub p: i64,
    pub q: i64,
}

impl DivClass {
    pub const ZERO: DivClass = DivClass { p: 0, q: 0 };

    pub const fn new(p: i64, q: i64) -> Self {
        DivClass { p, q }
    }
}

impl From<(i64, i64)> for DivClass {
    fn from((p, q): (i64, i64)) -> Self {
        DivClass { p, q }
    }
}

impl From<DivClass> for (i64, i64) {
    fn from(d: DivClass) -> Self {
        (d.p, d.q)
    }
}

impl Add for DivClass {
    type Output = DivClass;
    fn add(self, rhs: DivClass) -> DivClass {
        DivClass::new(self.p + rhs.p, self.q + rhs.q)
    }
}

impl Sub for DivClass {
    type Output = DivClass;
    fn sub(self, rhs: DivClass) -> DivClass {
        DivClass::new(self.p - rhs.p, self.q - rhs.q)
    }
}

impl Neg for DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        DivClass::new(-self.p, -self.q)
    }
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// Raw JSON form of a scroll, validated through [`Scroll::new`].
#[derive(Deserialize)]
struct ScrollDescriptor {
    m: i64,
    n: i64,
    a: Vec<i64>,
}

/// A scroll over `P^m` with fibre `P^n` and sorted twists `a_0 ≤ … ≤ a_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ScrollDescriptor")]
pub struct Scroll {
    m: usize,
    n: usize,
    a: Vec<i64>,
    #[serde(skip)]
    c: i64,
}

impl TryFrom<ScrollDescriptor> for Scroll {
    type Error = Error;
    fn try_from(d: ScrollDescriptor) -> Result<Self> {
        Scroll::new(d.m, d.n, d.a)
    }
}

impl Scroll {
    /// Builds a scroll; the twists are sorted ascending.
    pub fn new(m: i64, n: i64, mut a: Vec<i64>) -> Result<Self> {
        if m < 0 || n < 0 {
            return Err(Error::InvalidScroll(format!("negative dimension m={m}, n={n}")));
        }
        if m + n == 0 {
            return Err(Error::InvalidScroll("m = n = 0 describes a point".into()));
        }
        if a.len() as i64 != n + 1 {
            return Err(Error::InvalidScroll(format!(
                "expected {} twists for n = {n}, got {}",
                n + 1,
                a.len()
            )));
        }
        a.sort_unstable();
        let c = a.iter().sum();
        Ok(Scroll {
            m: m as usize,
            n: n as usize,
            a,
            c,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `dim X = n + m`.
    pub fn dim(&self) -> usize {
        self.n + self.m
    }

    pub fn twists(&self) -> &[i64] {
        &self.a
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn is_positive(&self) -> bool {
        self.a[0] > 0
    }

    pub fn is_semipositive(&self) -> bool {
        self.a[0] >= 0
    }

    /// `ω_X = O(-(n+1)H + (c-1-m)F)`.
    pub fn canonical_class(&self) -> DivClass {
        DivClass::new(-(self.n as i64 + 1), self.c - 1 - self.m as i64)
    }

    /// `ω_{X|P^m} = O(-(n+1)H + cF)`.
    pub fn relative_canonical(&self) -> DivClass {
        DivClass::new(-(self.n as i64 + 1), self.c)
    }

    /// `K_X - D`.
    pub fn serre_dual_twist(&self, d: DivClass) -> DivClass {
        self.canonical_class() - d
    }

    /// `a_I = Σ_{i∈I} a_i` for a subset given as a bitmask over `0..=n`.
    pub fn a_sum(&self, subset: u32) -> i64 {
        (0..=self.n).filter(|i| subset & (1 << i) != 0).map(|i| self.a[i]).sum()
    }

    /// Canonical representative of a class: on `P^n` (m = 0) `F` vanishes, and
    /// on `P^m` (n = 0) `H = cF`.
    pub fn normalize(&self, d: DivClass) -> DivClass {
        if self.m == 0 {
            DivClass::new(d.p, 0)
        } else if self.n == 0 {
            DivClass::new(0, d.p * self.c + d.q)
        } else {
            d
        }
    }

    /// Replaces `V` by `V ⊗ O(w)`: the variety is unchanged, `H' = H + wF`.
    pub fn normalize_twist(&self, w: i64) -> (Scroll, ClassMap) {
        let a = self.a.iter().map(|ai| ai + w).collect();
        let x = Scroll::new(self.m as i64, self.n as i64, a).expect("shifting twists keeps the shape");
        (x, ClassMap { w })
    }
}

impl fmt::Display for Scroll {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scroll{{m={}, n={}, a={:?}}}", self.m, self.n, self.a)
    }
}

/// Translation of classes from the `H` basis to the `H' = H + wF` basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassMap {
    pub w: i64,
}

impl ClassMap {
    /// `pH + qF = pH' + (q - wp)F`.
    pub fn apply(&self, d: DivClass) -> DivClass {
        DivClass::new(d.p, d.q - self.w * d.p)
    }

    pub fn inverse(&self) -> ClassMap {
        ClassMap { w: -self.w }
    }
}
