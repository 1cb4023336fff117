//! Horrocks-type splitting criteria on positive scrolls: evaluation of the
//! hypothesis lists, failure witnesses, and the case analysis that names the
//! bundle in the indecomposable case.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohomology::{de_dim, ser_dim};
use crate::conditions::{
    indecomposable, nonvanishing_window, rns_indecomposable, rns_splitting_o, rns_splitting_ofh, splitting_o,
    splitting_ofh, Condition, IndexData,
};
use crate::error::{Error, Result};
use crate::regularity::{reg, RegResult};
use crate::scroll::DivClass;
use crate::sheaf::{Evaluator, SheafSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// `E ≅ ⊕ O(t_i H)`.
    SplittingO,
    /// `E` is a sum of `O, O(F), O(H-F)` up to `tH`.
    SplittingOfh,
    /// Regular indecomposable bundles.
    Indecomposable,
    RnsSplittingO,
    RnsSplittingOfh,
    RnsIndecomposable,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::SplittingO,
        TheoremId::SplittingOfh,
        TheoremId::Indecomposable,
        TheoremId::RnsSplittingO,
        TheoremId::RnsSplittingOfh,
        TheoremId::RnsIndecomposable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::SplittingO => "splitting_o",
            TheoremId::SplittingOfh => "splitting_ofh",
            TheoremId::Indecomposable => "indecomposable",
            TheoremId::RnsSplittingO => "rns_splitting_o",
            TheoremId::RnsSplittingOfh => "rns_splitting_ofh",
            TheoremId::RnsIndecomposable => "rns_indecomposable",
        }
    }

    /// The general criterion a rational-normal-scroll form specialises.
    pub fn general(self) -> TheoremId {
        match self {
            TheoremId::RnsSplittingO => TheoremId::SplittingO,
            TheoremId::RnsSplittingOfh => TheoremId::SplittingOfh,
            TheoremId::RnsIndecomposable => TheoremId::Indecomposable,
            t => t,
        }
    }

    pub fn is_rns(self) -> bool {
        self.general() != self
    }

    fn family(self, ev: &Evaluator) -> Vec<Condition> {
        let x = ev.scroll();
        match self {
            TheoremId::SplittingO => splitting_o(x),
            TheoremId::SplittingOfh => splitting_ofh(x),
            TheoremId::Indecomposable => indecomposable(x),
            TheoremId::RnsSplittingO => rns_splitting_o(x),
            TheoremId::RnsSplittingOfh => rns_splitting_ofh(x),
            TheoremId::RnsIndecomposable => rns_indecomposable(x),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let id = match s {
            "splitting_o" => TheoremId::SplittingO,
            "splitting_ofh" => TheoremId::SplittingOfh,
            "indecomposable" => TheoremId::Indecomposable,
            "rns_splitting_o" => TheoremId::RnsSplittingO,
            "rns_splitting_ofh" => TheoremId::RnsSplittingOfh,
            "rns_indecomposable" => TheoremId::RnsIndecomposable,
            _ => return Err(format!("unknown criterion {s:?}")),
        };
        Ok(id)
    }
}

/// A hypothesis that fails, with the offending cohomology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<i64>,
    pub index: IndexData,
    pub dual: bool,
    pub degree: usize,
    /// Twist applied to `E` (or `E^∨` when `dual`).
    pub twist: DivClass,
    #[serde(serialize_with = "ser_dim", deserialize_with = "de_dim")]
    pub h: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiredCase {
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    pub degree: usize,
    pub twist: DivClass,
    #[serde(serialize_with = "ser_dim", deserialize_with = "de_dim")]
    pub h: BigUint,
    pub conclusion: SheafSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub fired: Vec<FiredCase>,
    /// The common conclusion of all fired cases, if they agree.
    pub conclusion: Option<SheafSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingReport {
    pub theorem: TheoremId,
    pub verdict: bool,
    /// The `t` range over which "for every t" was decided.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<(i64, i64)>,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regularity: Option<RegResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
}

fn check_shape(ev: &Evaluator, theorem: TheoremId) -> Result<()> {
    let x = ev.scroll();
    if !x.is_positive() {
        return Err(Error::Positivity {
            required: "positive",
            a0: x.twists()[0],
        });
    }
    if x.m() == 0 || x.n() == 0 {
        return Err(Error::Dimensions(format!(
            "splitting criteria need m, n > 0, got m = {}, n = {}",
            x.m(),
            x.n()
        )));
    }
    if theorem.is_rns() && x.m() != 1 {
        return Err(Error::Dimensions(format!(
            "rational normal scroll needs m = 1, got m = {}",
            x.m()
        )));
    }
    Ok(())
}

/// Evaluates every condition at every `t` of the window (or once, if `window` is `None`).
fn scan(ev: &Evaluator, e: &SheafSpec, family: &[Condition], window: Option<(i64, i64)>) -> Result<Vec<Witness>> {
    let dual = if family.iter().any(|c| c.dual) {
        Some(e.dual(ev.scroll())?)
    } else {
        None
    };
    let ts: Vec<Option<i64>> = match window {
        Some((lo, hi)) => (lo..=hi).map(Some).collect(),
        None => vec![None],
    };
    let jobs: Vec<(&Condition, Option<i64>)> = family.iter().flat_map(|c| ts.iter().map(move |&t| (c, t))).collect();
    let found: Vec<Result<Option<Witness>>> = jobs
        .par_iter()
        .map(|&(c, t)| {
            let twist = c.offset + DivClass::new(t.unwrap_or(0), 0);
            let spec = if c.dual {
                dual.as_ref().expect("dual computed")
            } else {
                e
            };
            let h = ev.h(spec, c.degree, twist)?;
            Ok((!h.is_zero()).then(|| Witness {
                label: c.label.clone(),
                t,
                index: c.index,
                dual: c.dual,
                degree: c.degree,
                twist,
                h,
            }))
        })
        .collect();
    let mut out = Vec::new();
    for w in found {
        out.extend(w?);
    }
    out.sort_by(|a, b| (&a.label, a.index, a.dual, a.t, a.twist).cmp(&(&b.label, b.index, b.dual, b.t, b.twist)));
    Ok(out)
}

fn check_for_all_t(ev: &Evaluator, e: &SheafSpec, theorem: TheoremId) -> Result<SplittingReport> {
    check_shape(ev, theorem)?;
    e.validate(ev.scroll())?;
    let family = theorem.family(ev);
    let window = nonvanishing_window(ev.scroll(), e, &family)?;
    let witnesses = scan(ev, e, &family, Some(window))?;
    Ok(SplittingReport {
        theorem,
        verdict: witnesses.is_empty(),
        window: Some(window),
        witnesses,
        regularity: None,
        classification: None,
    })
}

/// Whether `E` satisfies the cohomological characterisation of `⊕ O(t_i H)`.
pub fn check_splitting_o(ev: &Evaluator, e: &SheafSpec) -> Result<SplittingReport> {
    check_for_all_t(ev, e, TheoremId::SplittingO)
}

/// Whether `E` satisfies the vanishing that characterises twisted sums of `O, O(F), O(H-F)`.
pub fn check_splitting_ofh(ev: &Evaluator, e: &SheafSpec) -> Result<SplittingReport> {
    check_for_all_t(ev, e, TheoremId::SplittingOfh)
}

/// The non-regularity of `E(-H)` sorted into the four possible shapes.
pub fn classify_cases(ev: &Evaluator, e: &SheafSpec) -> Result<Classification> {
    let x = ev.scroll();
    let (m, n, c) = (x.m() as i64, x.n() as i64, x.c());
    let mut probes = vec![
        (
            "i",
            None,
            (n + m) as usize,
            DivClass::new(-(n + 1), c - m - 1),
            SheafSpec::line(DivClass::ZERO),
        ),
        (
            "ii",
            None,
            n as usize,
            DivClass::new(-(n + 1), c - 1),
            SheafSpec::line(DivClass::new(0, 1)),
        ),
        (
            "iii",
            None,
            m as usize,
            DivClass::new(-1, -m),
            SheafSpec::line(DivClass::new(1, -1)),
        ),
    ];
    for i in 1..n {
        probes.push((
            "iv",
            Some(i as usize),
            (i + m) as usize,
            DivClass::new(-(i + 1), i - m),
            SheafSpec::omega(i, DivClass::new(i + 1, -(i + 1))),
        ));
    }
    let mut fired = Vec::new();
    for (case, i, degree, twist, conclusion) in probes {
        let h = ev.h(e, degree, twist)?;
        if !h.is_zero() {
            fired.push(FiredCase {
                case: case.into(),
                i,
                degree,
                twist,
                h,
                conclusion,
            });
        }
    }
    let conclusion = match fired.first() {
        Some(first) if fired.iter().all(|f| f.conclusion == first.conclusion) => Some(first.conclusion.clone()),
        _ => None,
    };
    Ok(Classification { fired, conclusion })
}

/// Evaluates the indecomposable-bundle hypotheses without enforcing the
/// regularity precondition; the measured `Reg` is reported alongside.
pub fn evaluate_indecomposable(ev: &Evaluator, e: &SheafSpec, theorem: TheoremId) -> Result<SplittingReport> {
    check_shape(ev, theorem)?;
    e.validate(ev.scroll())?;
    let regularity = reg(ev, e, None)?;
    let witnesses = scan(ev, e, &theorem.family(ev), None)?;
    let verdict = witnesses.is_empty();
    let classification = if verdict { Some(classify_cases(ev, e)?) } else { None };
    Ok(SplittingReport {
        theorem,
        verdict,
        window: None,
        witnesses,
        regularity: Some(regularity),
        classification,
    })
}

/// Checks the hypotheses for a bundle with `Reg(E) = 0` and, when they hold,
/// names the bundle; `Reg(E) ≠ 0` is an error.
pub fn check_indecomposable(ev: &Evaluator, e: &SheafSpec) -> Result<SplittingReport> {
    indecomposable_with_precondition(ev, e, TheoremId::Indecomposable)
}

fn indecomposable_with_precondition(ev: &Evaluator, e: &SheafSpec, theorem: TheoremId) -> Result<SplittingReport> {
    let report = evaluate_indecomposable(ev, e, theorem)?;
    let measured = report.regularity.as_ref().and_then(|r| r.reg);
    if measured != Some(0) {
        let shown = measured.map_or_else(|| "-inf".to_string(), |r| r.to_string());
        return Err(Error::RegularityPrecondition(shown));
    }
    Ok(report)
}

/// The `m = 1` forms of the three criteria.
pub fn check_cor_rns(ev: &Evaluator, e: &SheafSpec, which: TheoremId) -> Result<SplittingReport> {
    match which {
        TheoremId::RnsSplittingO | TheoremId::RnsSplittingOfh => check_for_all_t(ev, e, which),
        TheoremId::RnsIndecomposable => indecomposable_with_precondition(ev, e, which),
        other => Err(Error::Dimensions(format!(
            "{other} is not a rational normal scroll criterion"
        ))),
    }
}

pub fn check(ev: &Evaluator, e: &SheafSpec, theorem: TheoremId) -> Result<SplittingReport> {
    match theorem {
        TheoremId::SplittingO => check_splitting_o(ev, e),
        TheoremId::SplittingOfh => check_splitting_ofh(ev, e),
        TheoremId::Indecomposable => check_indecomposable(ev, e),
        rns => check_cor_rns(ev, e, rns),
    }
}

/// Membership of a split bundle in the two families the criteria characterise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruth {
    /// `⊕ O(t_i H)`.
    pub pure_h: bool,
    /// `⊕` of `O(t_i H)`, `O(F + t_i H)`, `O(H - F + t_i H)`.
    pub ofh_sum: bool,
}

pub fn ground_truth_classify(e: &SheafSpec) -> Result<GroundTruth> {
    let b = e.as_split().ok_or(Error::NotSplit)?;
    Ok(GroundTruth {
        pure_h: b.summands().iter().all(|d| d.q == 0),
        ofh_sum: b.summands().iter().all(|d| (-1..=1).contains(&d.q)),
    })
}
