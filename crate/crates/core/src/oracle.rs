//! Brute-force line-bundle cohomology by counting torus characters.
//!
//! A Laurent monomial `x^α y^β` in the Cox ring has degree
//! `(|β|, |α| - Σ a_j β_j)`. For this product-shaped fan the characters that
//! carry cohomology are exactly those whose negative support on each factor
//! is either empty (contributing degree 0 of that factor) or everything
//! (contributing the top degree of that factor).

use serde::{Deserialize, Serialize};

use crate::cohomology::{CohomTable, WeakCompositions};
use crate::error::{Error, Result};
use crate::scroll::{DivClass, Scroll};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
}

impl Character {
    pub fn degree(&self, x: &Scroll) -> DivClass {
        let p: i64 = self.beta.iter().sum();
        let twist: i64 = self.beta.iter().zip(x.twists()).map(|(b, a)| b * a).sum();
        DivClass::new(p, self.alpha.iter().sum::<i64>() - twist)
    }

    /// Concatenated exponent vector `[α, β]`.
    pub fn exponents(&self) -> Vec<i64> {
        let mut v = self.alpha.clone();
        v.extend_from_slice(&self.beta);
        v
    }
}

/// Sign pattern of one factor: all exponents `≥ 0` or all `≤ -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sign {
    NonNeg,
    Neg,
}

/// Vectors of length `parts` with the given sign pattern and coordinate sum `total`.
fn signed_vectors(total: i64, parts: usize, sign: Sign) -> Vec<Vec<i64>> {
    match sign {
        Sign::NonNeg if total >= 0 => WeakCompositions::new(total as u64, parts)
            .map(|v| v.into_iter().map(|e| e as i64).collect())
            .collect(),
        Sign::Neg => {
            let slack = -total - parts as i64;
            if slack < 0 {
                return Vec::new();
            }
            WeakCompositions::new(slack as u64, parts)
                .map(|v| v.into_iter().map(|e| -1 - e as i64).collect())
                .collect()
        }
        _ => Vec::new(),
    }
}

/// The (alpha, beta) sign patterns whose characters land in cohomological degree `row`.
fn patterns(x: &Scroll, row: usize) -> Vec<(Sign, Sign)> {
    let (m, n) = (x.m(), x.n());
    let mut out = Vec::new();
    for (deg, alpha, beta) in [
        (0, Sign::NonNeg, Sign::NonNeg),
        (m, Sign::Neg, Sign::NonNeg),
        (n, Sign::NonNeg, Sign::Neg),
        (n + m, Sign::Neg, Sign::Neg),
    ] {
        if deg == row {
            out.push((alpha, beta));
        }
    }
    out
}

/// All characters of degree `d` contributing to `H^row`, ordered by beta then alpha.
pub fn enumerate_contributing(x: &Scroll, d: DivClass, row: usize) -> Result<Vec<Character>> {
    let pats = patterns(x, row);
    if pats.is_empty() {
        return Err(Error::InvalidRow { row });
    }
    let (m, n) = (x.m(), x.n());
    let mut out = Vec::new();
    for (alpha_sign, beta_sign) in pats {
        for beta in signed_vectors(d.p, n + 1, beta_sign) {
            let twist: i64 = beta.iter().zip(x.twists()).map(|(b, a)| b * a).sum();
            for alpha in signed_vectors(d.q + twist, m + 1, alpha_sign) {
                out.push(Character {
                    alpha,
                    beta: beta.clone(),
                });
            }
        }
    }
    out.sort_by(|u, v| (&u.beta, &u.alpha).cmp(&(&v.beta, &v.alpha)));
    Ok(out)
}

/// Every contributing character of `O(d)` together with its cohomological degree.
pub fn all_contributing(x: &Scroll, d: DivClass) -> Vec<(usize, Character)> {
    let mut rows = vec![0, x.m(), x.n(), x.dim()];
    rows.sort_unstable();
    rows.dedup();
    rows.into_iter()
        .flat_map(|r| {
            enumerate_contributing(x, d, r)
                .expect("valid row")
                .into_iter()
                .map(move |c| (r, c))
        })
        .collect()
}

pub fn character_cohom(x: &Scroll, d: DivClass) -> CohomTable {
    let mut table = CohomTable::zero(x.dim() + 1);
    for (row, _) in all_contributing(x, d) {
        table.h[row] += 1u32;
    }
    table
}
