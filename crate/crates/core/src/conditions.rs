//! Vanishing-condition families and sound finite windows for their
//! "for every integer t" quantifiers.
//!
//! A [`Condition`] asks for `h^degree(E ⊗ O(offset + tH)) = 0` (or the same
//! for `E^∨`). Families with a free `t` are decided over the window returned
//! by [`nonvanishing_window`], outside of which every condition vanishes for
//! closed-form reasons.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::subsets_of_size;
use crate::error::{Error, Result};
use crate::scroll::{DivClass, Scroll};
use crate::sheaf::SheafSpec;

/// Index data attached to a condition; unused fields are omitted in JSON.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexData {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// `|I|` for conditions indexed by subsets of `{0..n}`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset_size: Option<usize>,
    /// `a_I`; subsets with equal size and `a_I` give the same condition.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_sum: Option<i64>,
}

impl IndexData {
    fn ij(i: usize, j: usize) -> Self {
        IndexData {
            i: Some(i),
            j: Some(j),
            ..Default::default()
        }
    }

    fn j(j: usize) -> Self {
        IndexData {
            j: Some(j),
            ..Default::default()
        }
    }

    fn subset(size: usize, a_sum: i64) -> Self {
        IndexData {
            subset_size: Some(size),
            a_sum: Some(a_sum),
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    /// Letter of the condition within its family.
    pub label: String,
    pub index: IndexData,
    pub degree: usize,
    /// Applies to `E^∨` instead of `E`.
    pub dual: bool,
    pub offset: DivClass,
}

impl Condition {
    fn new(label: &str, index: IndexData, degree: usize, dual: bool, offset: DivClass) -> Self {
        Condition {
            label: label.into(),
            index,
            degree,
            dual,
            offset,
        }
    }
}

fn dc(p: i64, q: i64) -> DivClass {
    DivClass::new(p, q)
}

/// Distinct values of `a_I` over subsets of the given size.
pub fn subset_sums(x: &Scroll, size: usize) -> Vec<i64> {
    let set: BTreeSet<i64> = subsets_of_size(x.n() + 1, size)
        .into_iter()
        .map(|s| x.a_sum(s))
        .collect();
    set.into_iter().collect()
}

/// `(p,q)`-regularity: condition (a) `h^{n+j}(E(𝐩)⟨-n, c-j-1⟩)` and (b)
/// `h^{i+j}(E(𝐩)⟨-i, i-j⟩)`, offsets relative to `𝐩`, ordered by `(i, j)`
/// with (a) filed under `i = n`.
pub fn pq_regularity(x: &Scroll) -> Vec<Condition> {
    let (m, n, c) = (x.m(), x.n(), x.c());
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..=m {
            if (i, j) != (0, 0) {
                out.push(Condition::new(
                    "b",
                    IndexData::ij(i, j),
                    i + j,
                    false,
                    dc(-(i as i64), i as i64 - j as i64),
                ));
            }
        }
    }
    for j in 0..=m {
        if (n, j) != (0, 0) {
            out.push(Condition::new(
                "a",
                IndexData::ij(n, j),
                n + j,
                false,
                dc(-(n as i64), c - j as i64 - 1),
            ));
        }
    }
    out
}

/// Multigraded regularity with respect to `{H, F}`: `h^{i+j}(E(𝐩)⟨-i, -j⟩)`
/// for `1 ≤ i + j ≤ dim X`.
pub fn ms_regularity(x: &Scroll) -> Vec<Condition> {
    let dim = x.dim();
    let mut out = Vec::new();
    for i in 0..=dim {
        for j in 0..=dim - i {
            if i + j >= 1 {
                out.push(Condition::new(
                    "ms",
                    IndexData::ij(i, j),
                    i + j,
                    false,
                    dc(-(i as i64), -(j as i64)),
                ));
            }
        }
    }
    out
}

/// The rational normal scroll form of `(p,q)`-regularity (`m = 1`):
/// (a) `h^{n+1}⟨-n, c-2⟩`, `h^n⟨-n, c-1⟩`; (b) `h^{i+1}⟨-i, i-1⟩`;
/// (c) `h^i⟨-i, i⟩` for `0 < i < n`.
pub fn rns_regularity(x: &Scroll) -> Vec<Condition> {
    let (n, c) = (x.n(), x.c());
    let mut out = Vec::new();
    for i in 0..n {
        out.push(Condition::new(
            "b",
            IndexData::ij(i, 1),
            i + 1,
            false,
            dc(-(i as i64), i as i64 - 1),
        ));
        if i > 0 {
            out.push(Condition::new(
                "c",
                IndexData::ij(i, 0),
                i,
                false,
                dc(-(i as i64), i as i64),
            ));
        }
    }
    out.push(Condition::new(
        "a",
        IndexData::ij(n, 1),
        n + 1,
        false,
        dc(-(n as i64), c - 2),
    ));
    if n > 0 {
        out.push(Condition::new(
            "a",
            IndexData::ij(n, 0),
            n,
            false,
            dc(-(n as i64), c - 1),
        ));
    }
    out
}

/// Pure `O(tH)` splitting: (a) `h^{n+j}⟨t, c-j-1⟩`, `j < m`; (b) `h^{i+j}⟨t, i-j⟩`.
pub fn splitting_o(x: &Scroll) -> Vec<Condition> {
    let (m, n, c) = (x.m(), x.n(), x.c());
    let mut out = Vec::new();
    for j in 0..m {
        out.push(Condition::new(
            "a",
            IndexData::j(j),
            n + j,
            false,
            dc(0, c - j as i64 - 1),
        ));
    }
    out.extend(splitting_b(x, &[(0, 0)], 0..=m));
    out
}

fn splitting_b(x: &Scroll, skip: &[(usize, usize)], js: std::ops::RangeInclusive<usize>) -> Vec<Condition> {
    let mut out = Vec::new();
    for i in 0..x.n() {
        for j in js.clone() {
            if !skip.contains(&(i, j)) {
                out.push(Condition::new(
                    "b",
                    IndexData::ij(i, j),
                    i + j,
                    false,
                    dc(0, i as i64 - j as i64),
                ));
            }
        }
    }
    out
}

fn splitting_d(x: &Scroll) -> Vec<Condition> {
    let mut out = Vec::new();
    for size in 1..=x.n() {
        for a in subset_sums(x, size) {
            for dual in [false, true] {
                out.push(Condition::new(
                    "d",
                    IndexData::subset(size, a),
                    size,
                    dual,
                    dc(0, a - 1),
                ));
            }
        }
    }
    out
}

/// Splitting into `O, O(F), O(H-F)` up to `tH`: (a) `1 ≤ j < m`; (b) without
/// `(0,0), (0,m)`; (c) `h^{j+1}(E^∨⟨t, -j⟩)`; (d) `h^{|I|}` of `E` and `E^∨` at `⟨t, a_I - 1⟩`.
pub fn splitting_ofh(x: &Scroll) -> Vec<Condition> {
    let (m, n, c) = (x.m(), x.n(), x.c());
    let mut out = Vec::new();
    for j in 1..m {
        out.push(Condition::new(
            "a",
            IndexData::j(j),
            n + j,
            false,
            dc(0, c - j as i64 - 1),
        ));
    }
    out.extend(splitting_b(x, &[(0, 0), (0, m)], 0..=m));
    for j in 0..m {
        out.push(Condition::new("c", IndexData::j(j), j + 1, true, dc(0, -(j as i64))));
    }
    out.extend(splitting_d(x));
    out
}

/// Condition (e) with the subsets and twists of the truncated exterior
/// sequences it is used on: `h^k(E⟨-k, i+1-a_I⟩)` over `|I| = i+1-k`, and
/// `h^k(E^∨⟨-(k-1), a_I-i-1⟩)` over `|I| = i+k`.
fn indecomposable_e(x: &Scroll) -> Vec<Condition> {
    let n = x.n();
    let mut out = Vec::new();
    for i in 1..n {
        for k in 1..=i {
            let size = 1 + i - k;
            for a in subset_sums(x, size) {
                let index = IndexData {
                    i: Some(i),
                    k: Some(k),
                    subset_size: Some(size),
                    a_sum: Some(a),
                    j: None,
                };
                out.push(Condition::new("e", index, k, false, dc(-(k as i64), i as i64 + 1 - a)));
            }
        }
    }
    for i in 1..n {
        for k in 1..=n - i {
            let size = i + k;
            for a in subset_sums(x, size) {
                let index = IndexData {
                    i: Some(i),
                    k: Some(k),
                    subset_size: Some(size),
                    a_sum: Some(a),
                    j: None,
                };
                out.push(Condition::new(
                    "e",
                    index,
                    k,
                    true,
                    dc(-(k as i64 - 1), a - i as i64 - 1),
                ));
            }
        }
    }
    out
}

fn indecomposable_d(x: &Scroll) -> Vec<Condition> {
    let mut out = Vec::new();
    for size in 1..=x.n() {
        let s = size as i64;
        for a in subset_sums(x, size) {
            out.push(Condition::new(
                "d",
                IndexData::subset(size, a),
                size,
                false,
                dc(-s, a - 1),
            ));
            out.push(Condition::new(
                "d",
                IndexData::subset(size, a),
                size,
                true,
                dc(-s + 1, a - 1),
            ));
        }
    }
    out
}

/// Hypotheses of the indecomposable-bundle theorem (fixed twists, no `t`).
pub fn indecomposable(x: &Scroll) -> Vec<Condition> {
    let (m, n, c) = (x.m(), x.n(), x.c());
    let ni = n as i64;
    let mut out = Vec::new();
    for j in 1..m {
        out.push(Condition::new(
            "a",
            IndexData::j(j),
            n + j,
            false,
            dc(-(ni + 1), c - j as i64 - 1),
        ));
    }
    for i in 0..n {
        for j in 1..=m {
            let (ii, jj) = (i as i64, j as i64);
            // j = m in the first twist is the non-regularity the case analysis
            // looks for, so it cannot also be a hypothesis
            if j < m {
                out.push(Condition::new(
                    "b",
                    IndexData::ij(i, j),
                    i + j,
                    false,
                    dc(-(ii + 1), ii - jj),
                ));
            }
            out.push(Condition::new(
                "b",
                IndexData::ij(i, j),
                i + j,
                false,
                dc(-(ii + 1), ii - jj + 1),
            ));
        }
    }
    for j in 0..m {
        let jj = j as i64;
        out.push(Condition::new("c", IndexData::j(j), j + 1, true, dc(0, -jj)));
        out.push(Condition::new("c", IndexData::j(j), j + 1, false, dc(-1, -jj)));
    }
    out.extend(indecomposable_d(x));
    out.extend(indecomposable_e(x));
    out
}

/// `m = 1` form of pure splitting: (a) `h^n⟨t, c-1⟩`; (b) with `j ∈ {0, 1}`.
pub fn rns_splitting_o(x: &Scroll) -> Vec<Condition> {
    let mut out = vec![Condition::new("a", IndexData::j(0), x.n(), false, dc(0, x.c() - 1))];
    out.extend(splitting_b(x, &[(0, 0)], 0..=1));
    out
}

/// `m = 1` form of `O, O(F), O(H-F)` splitting: (b) without `(0,0), (0,1)`, and (d).
pub fn rns_splitting_ofh(x: &Scroll) -> Vec<Condition> {
    let mut out = splitting_b(x, &[(0, 0), (0, 1)], 0..=1);
    out.extend(splitting_d(x));
    out
}

/// `m = 1` form of the indecomposable hypotheses: (b), (d), (e), with the
/// first twist of (b) dropped as in [`indecomposable`].
pub fn rns_indecomposable(x: &Scroll) -> Vec<Condition> {
    let mut out = Vec::new();
    for i in 0..x.n() {
        let ii = i as i64;
        out.push(Condition::new(
            "b",
            IndexData::ij(i, 1),
            i + 1,
            false,
            dc(-(ii + 1), ii),
        ));
    }
    out.extend(indecomposable_d(x));
    out.extend(indecomposable_e(x));
    out
}

/// A closed integer interval with optional (infinite) ends; empty when `lo > hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Interval {
    pub const ALL: Interval = Interval { lo: None, hi: None };

    pub fn new(lo: i64, hi: i64) -> Self {
        Interval {
            lo: Some(lo),
            hi: Some(hi),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!((self.lo, self.hi), (Some(l), Some(h)) if l > h)
    }

    pub fn contains(&self, t: i64) -> bool {
        self.lo.is_none_or(|l| l <= t) && self.hi.is_none_or(|h| t <= h)
    }

    pub fn intersect(&self, o: &Interval) -> Interval {
        let lo = match (self.lo, o.lo) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let hi = match (self.hi, o.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Interval { lo, hi }
    }

    /// Smallest interval containing both (either may be empty).
    pub fn hull(&self, o: &Interval) -> Interval {
        if self.is_empty() {
            return *o;
        }
        if o.is_empty() {
            return *self;
        }
        let lo = match (self.lo, o.lo) {
            (Some(a), Some(b)) => Some(a.min(b)),
            _ => None,
        };
        let hi = match (self.hi, o.hi) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        Interval { lo, hi }
    }

    pub const EMPTY: Interval = Interval {
        lo: Some(1),
        hi: Some(0),
    };
}

/// `{P : coef·P ≥ rhs}`.
fn linear_ge(coef: i64, rhs: i64) -> Interval {
    match coef.signum() {
        1 => Interval {
            lo: Some(rhs.div_euclid(coef) + i64::from(rhs.rem_euclid(coef) != 0)),
            hi: None,
        },
        -1 => {
            // P ≤ rhs / coef, rounded down
            let (c, r) = (-coef, -rhs);
            Interval {
                lo: None,
                hi: Some(r.div_euclid(c)),
            }
        }
        _ if rhs <= 0 => Interval::ALL,
        _ => Interval::EMPTY,
    }
}

/// The `t` for which `h^k(O(base + tH))` can be nonzero according to the closed form.
pub fn line_nonvanishing(x: &Scroll, base: DivClass, k: usize) -> Interval {
    let (m, n) = (x.m() as i64, x.n() as i64);
    let (a0, an) = (x.twists()[0], *x.twists().last().expect("n+1 twists"));
    let q = base.q;
    // conditions on P = base.p + t
    let d_dual = x.c() - q - 1 - m;
    let mut rows: Vec<Interval> = Vec::new();
    let k = k as i64;
    if k == 0 {
        rows.push(Interval { lo: Some(0), hi: None }.intersect(&linear_ge(an, -q)));
    }
    if k == m {
        rows.push(Interval { lo: Some(0), hi: None }.intersect(&linear_ge(-a0, m + 1 + q)));
    }
    if k == n {
        rows.push(
            Interval {
                lo: None,
                hi: Some(-n - 1),
            }
            .intersect(&linear_ge(a0, m + 1 + d_dual - (n + 1) * a0)),
        );
    }
    if k == n + m {
        rows.push(
            Interval {
                lo: None,
                hi: Some(-n - 1),
            }
            .intersect(&linear_ge(-an, (n + 1) * an - d_dual)),
        );
    }
    let p_range = rows.iter().fold(Interval::EMPTY, |acc, r| acc.hull(r));
    shift(&p_range, -base.p)
}

fn shift(iv: &Interval, by: i64) -> Interval {
    if iv.is_empty() {
        return Interval::EMPTY;
    }
    Interval {
        lo: iv.lo.map(|v| v + by),
        hi: iv.hi.map(|v| v + by),
    }
}

/// `t` where `O(base + tH)` changes closed-form case, kept inside every window.
fn transition_band(x: &Scroll, base: DivClass) -> Interval {
    Interval::new(-base.p - x.n() as i64 - 1, -base.p + 1)
}

/// Line bundles (with cohomological degree shifts) whose cohomology controls
/// `h^k` of a catalog sheaf; each entry is `(class, degree shift)`, and the
/// sheaf's `h^k` can be nonzero only if some `h^{k+shift}(class)` is.
fn resolution_routes(x: &Scroll, e: &SheafSpec) -> Result<Vec<Vec<(DivClass, i64)>>> {
    match e {
        SheafSpec::Split(b) => Ok(vec![b.summands().iter().map(|&d| (d, 0)).collect()]),
        SheafSpec::Omega(o) => {
            e.validate(x)?;
            let (n, i) = (x.n() as i64, o.i);
            let mut routes = Vec::new();
            // left resolution: K_r sits in degree i+1-r ≤ 0
            let mut left = Vec::new();
            for r in (i + 1)..=(n + 1) {
                for s in subsets_of_size(x.n() + 1, r as usize) {
                    left.push((DivClass::new(-r, x.a_sum(s)) + o.twist, r - i - 1));
                }
            }
            routes.push(left);
            // right resolution: K_r sits in degree i-r ≥ 0
            let mut right = Vec::new();
            for r in 0..=i {
                for s in subsets_of_size(x.n() + 1, r as usize) {
                    right.push((DivClass::new(-r, x.a_sum(s)) + o.twist, -(i - r)));
                }
            }
            routes.push(right);
            Ok(routes)
        }
        SheafSpec::Complex(_) => Err(Error::NotSplit),
    }
}

/// `t` for which `h^k(E ⊗ O(offset + tH))` can be nonzero.
pub fn sheaf_nonvanishing(x: &Scroll, e: &SheafSpec, k: usize, offset: DivClass) -> Result<Interval> {
    let mut result = Interval::ALL;
    for route in resolution_routes(x, e)? {
        let mut hull = Interval::EMPTY;
        for (class, shift_by) in route {
            let deg = k as i64 + shift_by;
            if deg < 0 || deg > x.dim() as i64 {
                continue;
            }
            hull = hull.hull(&line_nonvanishing(x, class + offset, deg as usize));
        }
        result = result.intersect(&hull);
    }
    Ok(result)
}

/// Hull of the closed-form nonvanishing ranges of every condition; sound on
/// any scroll but possibly open-ended.
pub fn family_window(x: &Scroll, e: &SheafSpec, family: &[Condition]) -> Result<Interval> {
    let dual = if family.iter().any(|c| c.dual) {
        Some(e.dual(x)?)
    } else {
        None
    };
    let mut hull = Interval::EMPTY;
    for cond in family {
        let spec = if cond.dual {
            dual.as_ref().expect("dual computed")
        } else {
            e
        };
        hull = hull.hull(&sheaf_nonvanishing(x, spec, cond.degree, cond.offset)?);
    }
    Ok(hull)
}

/// A window `[lo, hi]` of `t` outside which every condition of the family
/// vanishes for `E`. Requires a positive scroll.
pub fn nonvanishing_window(x: &Scroll, e: &SheafSpec, family: &[Condition]) -> Result<(i64, i64)> {
    if !x.is_positive() {
        return Err(Error::Positivity {
            required: "positive",
            a0: x.twists()[0],
        });
    }
    let mut hull = family_window(x, e, family)?;
    let anchor = match e {
        SheafSpec::Split(b) => b.summands().to_vec(),
        SheafSpec::Omega(o) => vec![o.twist],
        SheafSpec::Complex(_) => return Err(Error::NotSplit),
    };
    for d in anchor {
        hull = hull.hull(&transition_band(x, d));
    }
    match (hull.lo, hull.hi) {
        (Some(lo), Some(hi)) => Ok((lo, hi)),
        _ => Err(Error::UnboundedWindow),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::line_cohom;
    use crate::sheaf::Evaluator;
    use num_traits::Zero;

    fn s(m: i64, n: i64, a: &[i64]) -> Scroll {
        Scroll::new(m, n, a.to_vec()).unwrap()
    }

    #[test]
    fn linear_inequalities() {
        assert_eq!(linear_ge(2, 3), Interval { lo: Some(2), hi: None });
        assert_eq!(linear_ge(2, -3), Interval { lo: Some(-1), hi: None });
        assert_eq!(linear_ge(-2, 3), Interval { lo: None, hi: Some(-2) });
        assert_eq!(linear_ge(-2, -3), Interval { lo: None, hi: Some(1) });
        assert_eq!(linear_ge(0, 0), Interval::ALL);
        assert!(linear_ge(0, 1).is_empty());
    }

    /// The closed-form ranges must contain every `t` with nonzero cohomology.
    #[test]
    fn line_ranges_are_sound() {
        for x in [
            s(1, 1, &[1, 2]),
            s(2, 1, &[1, 3]),
            s(1, 2, &[0, 1, 1]),
            s(2, 2, &[1, 1, 1]),
            s(1, 1, &[1, 1]),
        ] {
            for bq in -6..=6 {
                for bp in -3..=3 {
                    let base = DivClass::new(bp, bq);
                    for k in 0..=x.dim() {
                        let range = line_nonvanishing(&x, base, k);
                        for t in -15..=15 {
                            let h = line_cohom(&x, base + DivClass::new(t, 0)).get(k);
                            if !h.is_zero() {
                                assert!(range.contains(t), "{x} base {base} k {k} t {t}: {range:?}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn structure_sheaf_window() {
        let x = s(1, 1, &[1, 2]);
        let (lo, hi) = nonvanishing_window(&x, &SheafSpec::line(DivClass::ZERO), &splitting_o(&x)).unwrap();
        assert!(lo <= -2 && hi >= 0);
        let (lo, hi) = nonvanishing_window(&x, &SheafSpec::line(DivClass::new(0, 1)), &splitting_o(&x)).unwrap();
        assert!(lo <= -2 && -2 <= hi);
    }

    #[test]
    fn non_positive_scroll_is_rejected() {
        let f2 = s(1, 1, &[0, 2]);
        let r = nonvanishing_window(&f2, &SheafSpec::line(DivClass::ZERO), &splitting_o(&f2));
        assert!(matches!(r, Err(Error::Positivity { .. })));
    }

    #[test]
    fn window_margins_vanish() {
        let x = s(1, 2, &[1, 1, 2]);
        let ev = Evaluator::new(x.clone());
        let specs = [
            SheafSpec::split(&[(0, 0), (2, -3), (-1, 4)]).unwrap(),
            SheafSpec::omega(1, DivClass::new(2, -2)),
            SheafSpec::omega(2, DivClass::new(-1, 3)),
        ];
        for e in &specs {
            let dual = e.dual(&x).unwrap();
            for family in [
                splitting_o(&x),
                splitting_ofh(&x),
                rns_splitting_o(&x),
                rns_splitting_ofh(&x),
            ] {
                let (lo, hi) = nonvanishing_window(&x, e, &family).unwrap();
                for t in [lo - 2, lo - 1, hi + 1, hi + 2] {
                    for c in &family {
                        let spec = if c.dual { &dual } else { e };
                        let h = ev.h(spec, c.degree, c.offset + DivClass::new(t, 0)).unwrap();
                        assert!(h.is_zero(), "{e} {c:?} t={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn family_sizes() {
        let x = s(2, 3, &[1, 1, 2, 2]);
        // (b) has n(m+1) - 1 entries, (a) m
        assert_eq!(splitting_o(&x).len(), 2 + 3 * 3 - 1);
        assert_eq!(pq_regularity(&x).len(), 3 * 3 - 1 + 3);
        let p2 = s(2, 0, &[3]);
        let reg = pq_regularity(&p2);
        assert_eq!(reg.len(), 2);
        assert!(reg.iter().all(|c| c.label == "a" && c.index.j != Some(0)));
        assert_eq!(subset_sums(&x, 2), vec![2, 3, 4]);
    }

    #[test]
    fn rns_family_matches_general_for_m_one() {
        let x = s(1, 3, &[1, 2, 2, 3]);
        let mut general: Vec<(usize, DivClass, Option<usize>, Option<usize>)> = pq_regularity(&x)
            .into_iter()
            .map(|c| (c.degree, c.offset, c.index.i, c.index.j))
            .collect();
        let mut rns: Vec<_> = rns_regularity(&x)
            .into_iter()
            .map(|c| (c.degree, c.offset, c.index.i, c.index.j))
            .collect();
        general.sort();
        rns.sort();
        assert_eq!(general, rns);
    }
}
