//! `(p,q)`-regularity, the regularity invariant `Reg`, multigraded
//! regularity with respect to `{H, F}`, and the section-multiplication maps
//! whose surjectivity regular bundles enjoy.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohomology::{de_dim, ser_dim, SplitBundle};
use crate::conditions::{family_window, ms_regularity, pq_regularity, rns_regularity, Condition, Interval};
use crate::error::{Error, Result};
use crate::linalg::{rank_sparse, SparseRow};
use crate::oracle::enumerate_contributing;
use crate::scroll::DivClass;
use crate::sheaf::{Evaluator, SheafSpec};

/// One violated vanishing condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub label: String,
    pub i: usize,
    pub j: usize,
    pub degree: usize,
    /// Total twist applied to the sheaf.
    pub twist: DivClass,
    #[serde(serialize_with = "ser_dim", deserialize_with = "de_dim")]
    pub h: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub target: DivClass,
    pub verdict: bool,
    /// Sorted by `(i, j)`.
    pub failures: Vec<Failure>,
}

fn evaluate(ev: &Evaluator, e: &SheafSpec, family: &[Condition], target: DivClass) -> Result<RegularityReport> {
    e.validate(ev.scroll())?;
    let values: Vec<Result<Option<Failure>>> = family
        .par_iter()
        .map(|c| {
            let twist = c.offset + target;
            let h = ev.h(e, c.degree, twist)?;
            Ok((!h.is_zero()).then(|| Failure {
                label: c.label.clone(),
                i: c.index.i.unwrap_or(0),
                j: c.index.j.unwrap_or(0),
                degree: c.degree,
                twist,
                h,
            }))
        })
        .collect();
    let mut failures = Vec::new();
    for v in values {
        failures.extend(v?);
    }
    failures.sort_by(|a, b| (a.i, a.j, &a.label, a.twist).cmp(&(b.i, b.j, &b.label, b.twist)));
    Ok(RegularityReport {
        target,
        verdict: failures.is_empty(),
        failures,
    })
}

pub fn is_pq_regular(ev: &Evaluator, e: &SheafSpec, p: i64, q: i64) -> Result<RegularityReport> {
    evaluate(ev, e, &pq_regularity(ev.scroll()), DivClass::new(p, q))
}

/// The same notion through the specialised `m = 1` condition list.
pub fn rns_is_pq_regular(ev: &Evaluator, e: &SheafSpec, p: i64, q: i64) -> Result<RegularityReport> {
    if ev.scroll().m() != 1 {
        return Err(Error::Dimensions(format!(
            "rational normal scroll needs m = 1, got m = {}",
            ev.scroll().m()
        )));
    }
    evaluate(ev, e, &rns_regularity(ev.scroll()), DivClass::new(p, q))
}

/// Multigraded regularity with respect to `{H, F}`; both classes must be nef.
pub fn is_ms_regular(ev: &Evaluator, e: &SheafSpec, p: i64, q: i64) -> Result<RegularityReport> {
    let x = ev.scroll();
    if !x.is_semipositive() {
        return Err(Error::Positivity {
            required: "semipositive",
            a0: x.twists()[0],
        });
    }
    evaluate(ev, e, &ms_regularity(x), DivClass::new(p, q))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegResult {
    /// `None` stands for `-∞`: regular at every twist.
    pub reg: Option<i64>,
    /// The `p` range that was scanned.
    pub scanned: (i64, i64),
    /// Whether `(p,0)`-regular implies `(p+1,0)`-regular is known here (positive scrolls).
    pub monotonicity_verified: bool,
    /// Regular `p` found below `reg`; empty whenever monotonicity holds.
    pub regular_below: Vec<i64>,
}

/// How far below the first failure the scan continues looking for regular twists.
const BELOW_MARGIN: i64 = 8;
/// Bound on scan length when the window is open below.
const MAX_SCAN: i64 = 4096;

/// `Reg(E)`, the least `p` with `E` `(p,0)`-regular, by scanning down from
/// the top of a window above which every regularity condition vanishes.
pub fn reg(ev: &Evaluator, e: &SheafSpec, scan: Option<(i64, i64)>) -> Result<RegResult> {
    let x = ev.scroll();
    let family = pq_regularity(x);
    let window = match scan {
        Some((lo, hi)) => Interval::new(lo, hi),
        None => family_window(x, e, &family)?,
    };
    let Some(hi) = window.hi else {
        return Err(Error::UnboundedWindow);
    };
    let lo = window.lo.unwrap_or(hi - MAX_SCAN);
    let regular = |p: i64| -> Result<bool> { Ok(evaluate(ev, e, &family, DivClass::new(p, 0))?.verdict) };

    let mut first_failure = None;
    let mut p = hi;
    while p >= lo {
        if !regular(p)? {
            first_failure = Some(p);
            break;
        }
        p -= 1;
    }
    let Some(pf) = first_failure else {
        if window.lo.is_none() {
            return Err(Error::UnboundedWindow);
        }
        return Ok(RegResult {
            reg: None,
            scanned: (lo, hi),
            monotonicity_verified: x.is_positive(),
            regular_below: Vec::new(),
        });
    };
    let floor = lo.max(pf - BELOW_MARGIN);
    let mut regular_below = Vec::new();
    for p in (floor..pf).rev() {
        if regular(p)? {
            regular_below.push(p);
        }
    }
    Ok(RegResult {
        reg: Some(pf + 1),
        scanned: (floor, hi),
        monotonicity_verified: x.is_positive(),
        regular_below,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonPoint {
    pub p: i64,
    pub q: i64,
    pub ms: bool,
    pub pq: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub points: Vec<ComparisonPoint>,
    /// Points that are multigraded regular but not `(p,q)`-regular.
    pub violations: Vec<(i64, i64)>,
    /// Points that are `(p,q)`-regular but not multigraded regular.
    pub separations: Vec<(i64, i64)>,
}

pub fn compare_regularities(
    ev: &Evaluator,
    e: &SheafSpec,
    ps: std::ops::RangeInclusive<i64>,
    qs: std::ops::RangeInclusive<i64>,
) -> Result<Comparison> {
    let grid: Vec<(i64, i64)> = ps.flat_map(|p| qs.clone().map(move |q| (p, q))).collect();
    let results: Vec<Result<ComparisonPoint>> = grid
        .par_iter()
        .map(|&(p, q)| {
            let ms = is_ms_regular(ev, e, p, q)?.verdict;
            let pq = is_pq_regular(ev, e, p, q)?.verdict;
            Ok(ComparisonPoint { p, q, ms, pq })
        })
        .collect();
    let points = results.into_iter().collect::<Result<Vec<_>>>()?;
    let violations = points.iter().filter(|c| c.ms && !c.pq).map(|c| (c.p, c.q)).collect();
    let separations = points.iter().filter(|c| !c.ms && c.pq).map(|c| (c.p, c.q)).collect();
    Ok(Comparison {
        points,
        violations,
        separations,
    })
}

/// Monomials `x^α y^β` with nonnegative exponents spanning `H^0(O(d))`.
fn sections(ev: &Evaluator, d: DivClass) -> Vec<Vec<i64>> {
    enumerate_contributing(ev.scroll(), d, 0)
        .expect("row 0 always exists")
        .into_iter()
        .map(|c| c.exponents())
        .filter(|e| e.iter().all(|&v| v >= 0))
        .collect()
}

/// Rank and target dimension of multiplication by the sections of
/// `O(F)` (`by = (0,1)`: `H^0(E) ⊗ H^0(O(F)) → H^0(E(F))`) or by the
/// coordinates `y_k` (`by = (1,0)`: `⊕_k H^0(E(a_k F)) → H^0(E(H))`),
/// on monomial bases.
pub fn mult_map_rank(ev: &Evaluator, e: &SplitBundle, by: DivClass) -> Result<(usize, usize)> {
    let x = ev.scroll();
    let (m, n) = (x.m(), x.n());
    let multipliers: Vec<(DivClass, usize)> = match (by.p, by.q) {
        (0, 1) => (0..=m).map(|i| (DivClass::ZERO, i)).collect(),
        (1, 0) => (0..=n).map(|k| (DivClass::new(0, x.twists()[k]), m + 1 + k)).collect(),
        _ => return Err(Error::UnsupportedDirection(by.to_string())),
    };
    let mut rows: Vec<SparseRow> = Vec::new();
    let mut target_dim = 0;
    for &d in e.summands() {
        let target: HashMap<Vec<i64>, usize> = sections(ev, d + by)
            .into_iter()
            .enumerate()
            .map(|(k, v)| (v, k))
            .collect();
        let offset = target_dim;
        target_dim += target.len();
        for &(shift, var) in &multipliers {
            for mut mono in sections(ev, d + shift) {
                mono[var] += 1;
                let col = target.get(&mono).ok_or_else(|| {
                    Error::InvalidComplex(format!("product {mono:?} is not a section of O{}", d + by))
                })?;
                rows.push(vec![(offset + col, 1)]);
            }
        }
    }
    Ok((rank_sparse(&rows), target_dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{line_cohom, pm_cohom};
    use crate::scroll::Scroll;

    fn s(m: i64, n: i64, a: &[i64]) -> Scroll {
        Scroll::new(m, n, a.to_vec()).unwrap()
    }

    fn line(p: i64, q: i64) -> SheafSpec {
        SheafSpec::line(DivClass::new(p, q))
    }

    #[test]
    fn structure_sheaf_regularity() {
        let ev = Evaluator::new(s(1, 1, &[1, 2]));
        assert!(is_pq_regular(&ev, &line(0, 0), 0, 0).unwrap().verdict);
        let r = is_pq_regular(&ev, &line(0, 0), -1, 0).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.failures.len(), 1);
        let f = &r.failures[0];
        assert_eq!(
            (f.degree, f.twist, f.h.clone()),
            (2, DivClass::new(-2, 1), BigUint::from(1u32))
        );
        assert_eq!(reg(&ev, &line(0, 0), None).unwrap().reg, Some(0));
        assert_eq!(reg(&ev, &line(-2, 0), None).unwrap().reg, Some(2));
    }

    #[test]
    fn f2_regular_but_not_multigraded() {
        let ev = Evaluator::new(s(1, 1, &[0, 2]));
        assert!(is_pq_regular(&ev, &line(0, 0), 0, 0).unwrap().verdict);
        let ms = is_ms_regular(&ev, &line(0, 0), 0, 0).unwrap();
        assert!(!ms.verdict);
        assert_eq!(ms.failures.len(), 1);
        assert_eq!((ms.failures[0].degree, ms.failures[0].twist), (2, DivClass::new(-2, 0)));
        assert_eq!(ms.failures[0].h, BigUint::from(1u32));
        let r = reg(&ev, &line(0, 0), None).unwrap();
        assert_eq!(r.reg, Some(0));
        assert!(!r.monotonicity_verified);
    }

    /// On `P^1 × P^1`, `H = O(1,1)` and `h^2(O(-2H)) = h^2(O(-2,-2)) = 1`, so `O` only
    /// becomes multigraded regular one step up.
    #[test]
    fn product_multigraded_regularity() {
        let ev = Evaluator::new(s(1, 1, &[1, 1]));
        let r = is_ms_regular(&ev, &line(0, 0), 0, 0).unwrap();
        assert_eq!(r.failures.len(), 1);
        assert_eq!((r.failures[0].degree, r.failures[0].twist), (2, DivClass::new(-2, 0)));
        assert!(is_ms_regular(&ev, &line(0, 0), 1, 0).unwrap().verdict);
        assert!(is_pq_regular(&ev, &line(0, 0), 0, 0).unwrap().verdict);
        assert!(is_ms_regular(&Evaluator::new(s(1, 1, &[-1, 1])), &line(0, 0), 0, 0).is_err());
    }

    #[test]
    fn rns_conditions() {
        let ev = Evaluator::new(s(1, 2, &[1, 2, 2]));
        assert!(rns_is_pq_regular(&ev, &line(0, 0), 0, 0).unwrap().verdict);
        let r = rns_is_pq_regular(&ev, &line(0, -1), 0, 0).unwrap();
        assert!(!r.verdict);
        assert!(r.failures.iter().any(|f| (f.i, f.j, f.degree) == (0, 1, 1)));
        assert!(rns_is_pq_regular(&Evaluator::new(s(2, 1, &[1, 1])), &line(0, 0), 0, 0).is_err());
    }

    #[test]
    fn rns_agrees_with_general() {
        for x in [s(1, 1, &[1, 2]), s(1, 2, &[1, 1, 2]), s(1, 3, &[1, 1, 2, 2])] {
            let ev = Evaluator::new(x);
            for e in [
                line(0, 0),
                line(0, 1),
                line(1, -1),
                line(-1, 2),
                SheafSpec::split(&[(0, -1), (2, 1)]).unwrap(),
            ] {
                for p in -2..=2 {
                    for q in -2..=2 {
                        let a = is_pq_regular(&ev, &e, p, q).unwrap();
                        let b = rns_is_pq_regular(&ev, &e, p, q).unwrap();
                        assert_eq!(a.verdict, b.verdict, "{e} at ({p},{q})");
                    }
                }
            }
        }
    }

    /// On `P^n` the conditions are Mumford's `h^i(E(p - i)) = 0`, `i ≥ 1`.
    #[test]
    fn projective_space_is_mumford() {
        for n in 1..=3usize {
            let x = s(0, n as i64, &vec![0; n + 1]);
            let ev = Evaluator::new(x);
            for d in -4..=3 {
                for p in -4..=4 {
                    // intermediate cohomology of O(k) on P^n vanishes, so only i = n can fail
                    let mumford = pm_cohom(n, p + d - n as i64).1.is_zero();
                    assert_eq!(
                        is_pq_regular(&ev, &line(d, 0), p, 0).unwrap().verdict,
                        mumford,
                        "n={n} d={d} p={p}"
                    );
                }
                // Castelnuovo–Mumford regularity of O(d) is -d
                assert_eq!(reg(&ev, &line(d, 0), None).unwrap().reg, Some(-d));
            }
        }
    }

    /// On `P^n × P^m` the conditions are the bigraded ones, read through Künneth.
    #[test]
    fn product_conditions_follow_kunneth() {
        let kunneth = |n: usize, m: usize, a: i64, b: i64, k: usize| -> BigUint {
            let (f0, fn_) = pm_cohom(n, a);
            let (g0, gm) = pm_cohom(m, b);
            let f = |i: usize| {
                if i == 0 {
                    f0.clone()
                } else if i == n {
                    fn_.clone()
                } else {
                    BigUint::zero()
                }
            };
            let g = |i: usize| {
                if i == 0 {
                    g0.clone()
                } else if i == m {
                    gm.clone()
                } else {
                    BigUint::zero()
                }
            };
            (0..=k).filter(|&i| i <= n && k - i <= m).map(|i| f(i) * g(k - i)).sum()
        };
        for (m, n) in [(1usize, 1usize), (1, 2), (2, 1), (2, 2)] {
            let x = s(m as i64, n as i64, &vec![1; n + 1]);
            let c = x.c();
            for p in -3..=3i64 {
                for j in 0..=m {
                    let k = n + m - j;
                    // h^{n+m-j}(O(p)⟨-n, c-1-m-j⟩) = h^{n+m-j}(O(p-n, p-m-j))
                    let lhs = line_cohom(&x, DivClass::new(p - n as i64, c - 1 - m as i64 - j as i64)).get(k);
                    assert_eq!(lhs, kunneth(n, m, p - n as i64, p - m as i64 - j as i64, k));
                    for i in 0..n {
                        let k = i + j;
                        let lhs = line_cohom(&x, DivClass::new(p - i as i64, i as i64 - j as i64)).get(k);
                        assert_eq!(lhs, kunneth(n, m, p - i as i64, p - j as i64, k));
                    }
                }
            }
        }
    }

    #[test]
    fn multiplication_maps() {
        let ev = Evaluator::new(s(1, 1, &[1, 2]));
        let o = SplitBundle::line(DivClass::ZERO);
        assert_eq!(mult_map_rank(&ev, &o, DivClass::new(0, 1)).unwrap(), (2, 2));
        assert_eq!(mult_map_rank(&ev, &o, DivClass::new(1, 0)).unwrap(), (5, 5));
        let neg = SplitBundle::line(DivClass::new(0, -1));
        assert_eq!(mult_map_rank(&ev, &neg, DivClass::new(0, 1)).unwrap(), (0, 1));
        assert!(mult_map_rank(&ev, &o, DivClass::new(1, 1)).is_err());
    }

    #[test]
    fn regular_bundles_are_generated_and_spanned() {
        use crate::cohomology::is_globally_generated;
        for x in [s(1, 1, &[1, 2]), s(2, 1, &[1, 3]), s(1, 2, &[1, 1, 2])] {
            let ev = Evaluator::new(x.clone());
            for p in -2..=2 {
                for q in -2..=2 {
                    let d = DivClass::new(p, q);
                    if !is_pq_regular(&ev, &SheafSpec::line(d), 0, 0).unwrap().verdict {
                        continue;
                    }
                    assert!(is_globally_generated(&x, d), "{x} {d}");
                    for by in [DivClass::new(0, 1), DivClass::new(1, 0)] {
                        let (rank, target) = mult_map_rank(&ev, &SplitBundle::line(d), by).unwrap();
                        assert_eq!(rank, target, "{x} {d} by {by}");
                    }
                }
            }
        }
    }

    #[test]
    fn failures_are_sorted() {
        let ev = Evaluator::new(s(2, 2, &[1, 1, 2]));
        let r = is_pq_regular(&ev, &line(-3, 0), 0, 0).unwrap();
        assert!(!r.verdict);
        assert!(r.failures.windows(2).all(|w| (w[0].i, w[0].j) <= (w[1].i, w[1].j)));
        let json = serde_json::to_value(&r).unwrap();
        assert!(json["failures"][0]["h"].is_u64());
    }
}
