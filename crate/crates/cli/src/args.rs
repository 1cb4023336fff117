//! Value parsers for the command line: JSON descriptors, classes and ranges.

use std::ops::RangeInclusive;

use scrollcoh::{DivClass, Scroll, SheafSpec};
use serde::Deserialize;

pub fn scroll(s: &str) -> Result<Scroll, String> {
    serde_json::from_str(s).map_err(|e| format!("bad scroll JSON: {e}"))
}

/// A JSON list of scrolls, kept as one value on the command line.
#[derive(Clone, Debug)]
pub struct ScrollList(pub Vec<Scroll>);

pub fn scrolls(s: &str) -> Result<ScrollList, String> {
    let list: Vec<Scroll> = serde_json::from_str(s).map_err(|e| format!("bad scroll list JSON: {e}"))?;
    if list.is_empty() {
        return Err("empty scroll list".into());
    }
    Ok(ScrollList(list))
}

pub fn sheaf(s: &str) -> Result<SheafSpec, String> {
    serde_json::from_str(s).map_err(|e| format!("bad sheaf JSON: {e}"))
}

/// `p,q`.
pub fn class(s: &str) -> Result<DivClass, String> {
    let (p, q) = s.split_once(',').ok_or_else(|| format!("expected p,q but got {s:?}"))?;
    let int = |v: &str| v.trim().parse::<i64>().map_err(|e| format!("{v:?}: {e}"));
    Ok(DivClass::new(int(p)?, int(q)?))
}

/// `lo..hi` (inclusive) or a single integer.
pub fn range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let int = |v: &str| v.trim().parse::<i64>().map_err(|e| format!("{v:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (int(lo)?, int(hi.trim_start_matches('='))?),
        None => (int(s)?, int(s)?),
    };
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

/// Scrolls with `m ∈ ms`, `n ∈ ns` and sorted twists drawn from `a = [lo, hi]`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub m: Vec<i64>,
    pub n: Vec<i64>,
    pub a: (i64, i64),
}

impl FamilySpec {
    pub fn scrolls(&self) -> Vec<Scroll> {
        let (lo, hi) = self.a;
        let mut out = Vec::new();
        for &m in &self.m {
            for &n in &self.n {
                if n < 0 || m < 0 || m + n == 0 {
                    continue;
                }
                for a in sorted_tuples(n as usize + 1, lo, hi) {
                    out.extend(Scroll::new(m, n, a).ok());
                }
            }
        }
        out
    }
}

pub fn family(s: &str) -> Result<FamilySpec, String> {
    let f: FamilySpec = serde_json::from_str(s).map_err(|e| format!("bad family JSON: {e}"))?;
    if f.a.0 > f.a.1 {
        return Err(format!("empty twist range {:?}", f.a));
    }
    Ok(f)
}

/// Nondecreasing tuples of length `len` with entries in `[lo, hi]`.
fn sorted_tuples(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        for mut rest in sorted_tuples(len - 1, first, hi) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_and_ranges() {
        assert_eq!(class("-3,1").unwrap(), DivClass::new(-3, 1));
        assert_eq!(class(" 2 , -5").unwrap(), DivClass::new(2, -5));
        assert!(class("3").is_err());
        assert_eq!(range("-2..3").unwrap(), -2..=3);
        assert_eq!(range("1..=1").unwrap(), 1..=1);
        assert_eq!(range("4").unwrap(), 4..=4);
        assert!(range("3..1").is_err());
    }

    #[test]
    fn family_enumeration() {
        let f = family(r#"{"m":[1],"n":[1,2],"a":[1,3]}"#).unwrap();
        // C(3+1, 2) pairs and C(3+2, 3) triples
        assert_eq!(f.scrolls().len(), 6 + 10);
        let f = family(r#"{"m":[0],"n":[0,1],"a":[0,0]}"#).unwrap();
        assert_eq!(f.scrolls().len(), 1);
        assert!(family(r#"{"m":[1],"n":[1],"a":[2,1]}"#).is_err());
        assert!(family(r#"{"m":[1],"n":[1]}"#).is_err());
    }

    #[test]
    fn json_descriptors() {
        assert!(scroll(r#"{"m":1,"n":1,"a":[2,1]}"#).is_ok());
        assert!(scroll(r#"{"m":1,"n":1,"a":[2]}"#).is_err());
        assert_eq!(sheaf(r#"{"split":[[0,0]]}"#).unwrap(), SheafSpec::line(DivClass::ZERO));
        assert_eq!(
            sheaf(r#"{"omega":{"i":1,"twist":[1,-1]}}"#).unwrap(),
            SheafSpec::omega(1, DivClass::new(1, -1))
        );
        assert!(sheaf(r#"{"split":[]}"#).is_err());
    }
}
