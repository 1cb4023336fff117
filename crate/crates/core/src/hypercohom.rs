//! Hypercohomology of monomial complexes, one torus character at a time.
//!
//! Fix a character class `w ∈ ker(deg) ⊂ Z^{m+n+2}`. A summand with
//! representative `R` then contributes the single Laurent monomial with
//! exponent `e = w + R`, which is a section over the open set where the
//! variables `x_{S_x}, y_{S_y}` are inverted iff `S_x ⊇ Neg_x(e)` and
//! `S_y ⊇ Neg_y(e)`. We use the product Čech cover
//! `{x_i ≠ 0} × {y_j ≠ 0}`, whose finite intersections are affine toric
//! charts, so cells are `(term, summand, S_x, S_y)` with total degree
//! `k + |S_x| - 1 + |S_y| - 1` and differential `D = d + (-1)^k δ`.
//!
//! Per summand the Čech complex of the cover is a product of two simplices
//! with the cells below `Neg(e)` removed, and toggling the least index outside
//! `Neg(e)` is an acyclic matching on it. The unmatched cells are exactly the
//! summands whose character contributes (negative support empty or full on
//! each factor), so after discrete Morse reduction each class is a tiny
//! complex on those summands. [`full_class_cohomology`] assembles the
//! unreduced complex instead and is used to cross-check the reduction.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohomology::CohomTable;
use crate::complex::{build_trunc1, build_trunc2, validate_complex, MonomialComplex};
use crate::error::{Error, Result};
use crate::linalg::{rank_sparse, SparseRow};
use crate::oracle::all_contributing;
use crate::scroll::{DivClass, Scroll};

/// Dimensions of `H^d` for `d = lowest, lowest+1, …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypercohomology {
    pub lowest: i64,
    pub dims: Vec<u64>,
}

impl Hypercohomology {
    pub fn get(&self, degree: i64) -> u64 {
        let k = degree - self.lowest;
        if k < 0 {
            return 0;
        }
        self.dims.get(k as usize).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn euler_characteristic(&self) -> i128 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| {
                if (self.lowest + k as i64).rem_euclid(2) == 0 {
                    d as i128
                } else {
                    -(d as i128)
                }
            })
            .sum()
    }

    /// Reads degrees `0..=dim` as a sheaf cohomology table, failing if
    /// anything lives outside that range.
    pub fn to_table(&self, dim: usize) -> Result<CohomTable> {
        for (k, &d) in self.dims.iter().enumerate() {
            let deg = self.lowest + k as i64;
            if d != 0 && (deg < 0 || deg > dim as i64) {
                return Err(Error::InvalidComplex(format!(
                    "hypercohomology in degree {deg} is not a sheaf cohomology"
                )));
            }
        }
        Ok(CohomTable {
            h: (0..=dim as i64).map(|d| BigUint::from(self.get(d))).collect(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Cell {
    term: usize,
    summand: usize,
    sx: u32,
    sy: u32,
}

enum Status {
    Critical,
    /// Matched with a cell one degree higher.
    Lower,
    /// Matched with the given cell one degree lower.
    Upper(Cell),
}

/// The matching on one factor: `None` if the cell is critical there,
/// otherwise its partner.
fn side_partner(neg: u32, s: u32, full: u32) -> Option<u32> {
    if neg == full {
        return None;
    }
    let i0 = (!neg & full).trailing_zeros();
    if neg == 0 && s == 1 << i0 {
        return None;
    }
    Some(s ^ (1 << i0))
}

fn parity(v: u32) -> i64 {
    if v.count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The complex with one character class fixed.
struct ClassComplex<'a> {
    c: &'a MonomialComplex,
    /// Outgoing sheaf-differential entries `(target, sign)` per term and summand.
    out: &'a [Vec<Vec<(usize, i64)>>],
    /// Negative supports `(Neg_x, Neg_y)` per term and summand.
    neg: Vec<Vec<(u32, u32)>>,
    full_x: u32,
    full_y: u32,
}

impl ClassComplex<'_> {
    fn degree(&self, cell: &Cell) -> i64 {
        self.c.lowest_degree + cell.term as i64 + cell.sx.count_ones() as i64 - 1 + cell.sy.count_ones() as i64 - 1
    }

    fn boundary(&self, cell: &Cell) -> Vec<(Cell, i64)> {
        let mut v = Vec::new();
        for &(t, sign) in &self.out[cell.term][cell.summand] {
            v.push((
                Cell {
                    term: cell.term + 1,
                    summand: t,
                    ..*cell
                },
                sign,
            ));
        }
        let eps = if (self.c.lowest_degree + cell.term as i64).rem_euclid(2) == 0 {
            1
        } else {
            -1
        };
        for i in 0..self.full_x.count_ones() {
            if cell.sx & (1 << i) == 0 {
                let sign = eps * parity(cell.sx & ((1 << i) - 1));
                v.push((
                    Cell {
                        sx: cell.sx | (1 << i),
                        ..*cell
                    },
                    sign,
                ));
            }
        }
        let eps_y = eps * if cell.sx.count_ones() % 2 == 1 { 1 } else { -1 };
        for j in 0..self.full_y.count_ones() {
            if cell.sy & (1 << j) == 0 {
                let sign = eps_y * parity(cell.sy & ((1 << j) - 1));
                v.push((
                    Cell {
                        sy: cell.sy | (1 << j),
                        ..*cell
                    },
                    sign,
                ));
            }
        }
        v
    }

    fn status(&self, cell: &Cell) -> Status {
        let (nx, ny) = self.neg[cell.term][cell.summand];
        let (partner, lower) = match side_partner(nx, cell.sx, self.full_x) {
            Some(px) => (Cell { sx: px, ..*cell }, px.count_ones() > cell.sx.count_ones()),
            None => match side_partner(ny, cell.sy, self.full_y) {
                Some(py) => (Cell { sy: py, ..*cell }, py.count_ones() > cell.sy.count_ones()),
                None => return Status::Critical,
            },
        };
        if lower {
            Status::Lower
        } else {
            Status::Upper(partner)
        }
    }

    fn critical_cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for (term, negs) in self.neg.iter().enumerate() {
            for (summand, &(nx, ny)) in negs.iter().enumerate() {
                let crit = |neg: u32, full: u32| {
                    if neg == 0 {
                        Some(1)
                    } else if neg == full {
                        Some(full)
                    } else {
                        None
                    }
                };
                if let (Some(sx), Some(sy)) = (crit(nx, self.full_x), crit(ny, self.full_y)) {
                    out.push(Cell { term, summand, sx, sy });
                }
            }
        }
        out
    }

    /// Morse boundary of a critical cell, as coefficients on critical cells.
    fn morse_boundary(&self, cell: &Cell) -> Result<BTreeMap<Cell, i64>> {
        let mut pending: BTreeMap<Cell, i64> = BTreeMap::new();
        for (t, v) in self.boundary(cell) {
            *pending.entry(t).or_insert(0) += v;
        }
        let mut result = BTreeMap::new();
        while let Some((tau, coeff)) = pending.pop_first() {
            if coeff == 0 {
                continue;
            }
            match self.status(&tau) {
                Status::Critical => *result.entry(tau).or_insert(0) += coeff,
                Status::Lower => {}
                Status::Upper(sigma) => {
                    let d_sigma = self.boundary(&sigma);
                    let u = d_sigma.iter().filter(|(c, _)| *c == tau).map(|(_, v)| v).sum::<i64>();
                    debug_assert!(u == 1 || u == -1);
                    let factor = coeff * u;
                    for (rho, val) in d_sigma {
                        if rho == tau {
                            continue;
                        }
                        let e = pending.entry(rho).or_insert(0);
                        *e = factor
                            .checked_mul(val)
                            .and_then(|p| e.checked_sub(p))
                            .ok_or(Error::Overflow("Morse reduction"))?;
                    }
                }
            }
        }
        result.retain(|_, v| *v != 0);
        Ok(result)
    }

    /// `(degree, dimension)` pairs of the class's total cohomology via Morse reduction.
    fn morse_cohomology(&self) -> Result<Vec<(i64, u64)>> {
        let crit = self.critical_cells();
        if crit.is_empty() {
            return Ok(Vec::new());
        }
        let mut by_degree: BTreeMap<i64, Vec<Cell>> = BTreeMap::new();
        for c in crit {
            by_degree.entry(self.degree(&c)).or_default().push(c);
        }
        self.ranks_by_degree(&by_degree, |c| self.morse_boundary(c))
    }

    /// The unreduced per-class total complex.
    fn full_cohomology(&self) -> Result<Vec<(i64, u64)>> {
        let mut by_degree: BTreeMap<i64, Vec<Cell>> = BTreeMap::new();
        for (term, negs) in self.neg.iter().enumerate() {
            for (summand, &(nx, ny)) in negs.iter().enumerate() {
                for sx in 1..=self.full_x {
                    if sx & nx != nx {
                        continue;
                    }
                    for sy in 1..=self.full_y {
                        if sy & ny == ny {
                            let cell = Cell { term, summand, sx, sy };
                            by_degree.entry(self.degree(&cell)).or_default().push(cell);
                        }
                    }
                }
            }
        }
        self.ranks_by_degree(&by_degree, |c| {
            let mut m = BTreeMap::new();
            for (t, v) in self.boundary(c) {
                *m.entry(t).or_insert(0) += v;
            }
            Ok(m)
        })
    }

    fn ranks_by_degree<F>(&self, by_degree: &BTreeMap<i64, Vec<Cell>>, boundary: F) -> Result<Vec<(i64, u64)>>
    where
        F: Fn(&Cell) -> Result<BTreeMap<Cell, i64>>,
    {
        let mut rank_out: BTreeMap<i64, usize> = BTreeMap::new();
        for (&deg, cells) in by_degree {
            let Some(targets) = by_degree.get(&(deg + 1)) else {
                continue;
            };
            let index: BTreeMap<Cell, usize> = targets.iter().enumerate().map(|(i, c)| (*c, i)).collect();
            let mut rows: Vec<SparseRow> = Vec::with_capacity(cells.len());
            for c in cells {
                let mut row: SparseRow = boundary(c)?
                    .into_iter()
                    .filter(|(_, v)| *v != 0)
                    .map(|(t, v)| (index[&t], v))
                    .collect();
                row.sort_unstable();
                rows.push(row);
            }
            rank_out.insert(deg, rank_sparse(&rows));
        }
        Ok(by_degree
            .iter()
            .map(|(&deg, cells)| {
                let r_out = rank_out.get(&deg).copied().unwrap_or(0);
                let r_in = rank_out.get(&(deg - 1)).copied().unwrap_or(0);
                (deg, (cells.len() - r_out - r_in) as u64)
            })
            .filter(|&(_, d)| d > 0)
            .collect())
    }
}

/// Shared per-complex data for evaluating character classes.
struct Engine<'a> {
    x: &'a Scroll,
    c: &'a MonomialComplex,
    out: Vec<Vec<Vec<(usize, i64)>>>,
}

impl<'a> Engine<'a> {
    fn new(x: &'a Scroll, c: &'a MonomialComplex) -> Result<Self> {
        if c.m != x.m() || c.n != x.n() || c.twists != x.twists() {
            return Err(Error::InvalidComplex("complex was built on a different scroll".into()));
        }
        let report = validate_complex(c);
        if !report.passed() {
            let first = &report.violations[0];
            return Err(Error::InvalidComplex(format!(
                "{} at term {}: {}",
                first.kind, first.term, first.message
            )));
        }
        let mut out: Vec<Vec<Vec<(usize, i64)>>> = c.terms.iter().map(|t| vec![Vec::new(); t.len()]).collect();
        for (k, entries) in c.maps.iter().enumerate() {
            for e in entries {
                out[k][e.source].push((e.target, e.sign as i64));
            }
        }
        Ok(Engine { x, c, out })
    }

    fn class(&self, w: &[i64]) -> ClassComplex<'_> {
        let m1 = self.x.m() + 1;
        let neg = self
            .c
            .terms
            .iter()
            .map(|t| {
                t.iter()
                    .map(|s| {
                        let mut nx = 0u32;
                        let mut ny = 0u32;
                        for (idx, (wi, ri)) in w.iter().zip(&s.rep).enumerate() {
                            if wi + ri < 0 {
                                if idx < m1 {
                                    nx |= 1 << idx;
                                } else {
                                    ny |= 1 << (idx - m1);
                                }
                            }
                        }
                        (nx, ny)
                    })
                    .collect()
            })
            .collect();
        ClassComplex {
            c: self.c,
            out: &self.out,
            neg,
            full_x: (1 << m1) - 1,
            full_y: (1 << (self.x.n() + 1)) - 1,
        }
    }

    /// Classes in which at least one summand has a contributing character.
    fn contributing_classes(&self) -> BTreeSet<Vec<i64>> {
        let mut classes = BTreeSet::new();
        for term in &self.c.terms {
            for s in term {
                for (_, ch) in all_contributing(self.x, s.class) {
                    let w: Vec<i64> = ch.exponents().iter().zip(&s.rep).map(|(e, r)| e - r).collect();
                    classes.insert(w);
                }
            }
        }
        classes
    }

    fn total_range(&self) -> (i64, usize) {
        let len = self.c.terms.len() + self.x.dim();
        (self.c.lowest_degree, len)
    }

    fn accumulate(&self, per_class: Vec<Vec<(i64, u64)>>) -> Hypercohomology {
        let (lowest, len) = self.total_range();
        let mut dims = vec![0u64; len];
        for (deg, d) in per_class.into_iter().flatten() {
            dims[(deg - lowest) as usize] += d;
        }
        Hypercohomology { lowest, dims }
    }
}

/// Hypercohomology of a complex by character-class decomposition and Morse reduction.
pub fn hypercohom(x: &Scroll, c: &MonomialComplex) -> Result<Hypercohomology> {
    let engine = Engine::new(x, c)?;
    if c.terms.is_empty() {
        return Ok(Hypercohomology {
            lowest: c.lowest_degree,
            dims: Vec::new(),
        });
    }
    let classes: Vec<Vec<i64>> = engine.contributing_classes().into_iter().collect();
    let per_class = classes
        .par_iter()
        .map(|w| engine.class(w).morse_cohomology())
        .collect::<Result<Vec<_>>>()?;
    Ok(engine.accumulate(per_class))
}

/// Same as [`hypercohom`] but assembling each class's full Čech total complex.
pub fn hypercohom_full(x: &Scroll, c: &MonomialComplex) -> Result<Hypercohomology> {
    let engine = Engine::new(x, c)?;
    if c.terms.is_empty() {
        return Ok(Hypercohomology {
            lowest: c.lowest_degree,
            dims: Vec::new(),
        });
    }
    let classes: Vec<Vec<i64>> = engine.contributing_classes().into_iter().collect();
    let per_class = classes
        .par_iter()
        .map(|w| engine.class(w).full_cohomology())
        .collect::<Result<Vec<_>>>()?;
    Ok(engine.accumulate(per_class))
}

/// Cohomology of the full per-class total complex for one class `w`.
pub fn full_class_cohomology(x: &Scroll, c: &MonomialComplex, w: &[i64]) -> Result<Vec<(i64, u64)>> {
    Engine::new(x, c)?.class(w).full_cohomology()
}

/// A lattice basis of `ker(deg) ⊂ Z^{m+n+2}`.
pub fn character_lattice_basis(x: &Scroll) -> Vec<Vec<i64>> {
    let (m, n) = (x.m(), x.n());
    let a = x.twists();
    let mut basis = Vec::new();
    for i in 1..=m {
        let mut v = vec![0; m + n + 2];
        v[i] = 1;
        v[0] = -1;
        basis.push(v);
    }
    for j in 1..=n {
        let mut v = vec![0; m + n + 2];
        v[m + 1 + j] = 1;
        v[m + 1] = -1;
        v[0] = a[j] - a[0];
        basis.push(v);
    }
    basis
}

/// Outcome of sampling character classes skipped by the engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotCheck {
    pub sampled: usize,
    /// Classes whose full total complex had nonzero cohomology.
    pub nonzero: Vec<Vec<i64>>,
}

/// Assembles the full total complex for `samples` random classes that the
/// engine skips and records any with nonzero cohomology.
pub fn spot_check_excluded(x: &Scroll, c: &MonomialComplex, samples: usize, seed: u64) -> Result<SpotCheck> {
    let engine = Engine::new(x, c)?;
    let included = engine.contributing_classes();
    let anchors: Vec<Vec<i64>> = if included.is_empty() {
        vec![vec![0; x.m() + x.n() + 2]]
    } else {
        included.iter().cloned().collect()
    };
    let basis = character_lattice_basis(x);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SpotCheck {
        sampled: 0,
        nonzero: Vec::new(),
    };
    let mut attempts = 0;
    while report.sampled < samples && attempts < samples * 50 {
        attempts += 1;
        let mut w = anchors[rng.gen_range(0..anchors.len())].clone();
        for b in &basis {
            let k: i64 = rng.gen_range(-3..=3);
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi += k * bi;
            }
        }
        if included.contains(&w) {
            continue;
        }
        report.sampled += 1;
        if !engine.class(&w).full_cohomology()?.is_empty() {
            report.nonzero.push(w);
        }
    }
    Ok(report)
}

/// Which resolution of `Ω^i` to push through the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaRoute {
    /// `K_{n+1} → … → K_{i+1}`.
    Left,
    /// `K_i → … → K_0`.
    Right,
}

pub fn omega_cohom_via(x: &Scroll, i: i64, t: DivClass, route: OmegaRoute) -> Result<CohomTable> {
    let c = match route {
        OmegaRoute::Left => build_trunc1(x, i)?,
        OmegaRoute::Right => build_trunc2(x, i)?,
    };
    hypercohom(x, &c.twisted(x, t))?.to_table(x.dim())
}

/// `h^•(Ω^i_{X|P^m}(T))`, computed through both resolutions, which must agree.
pub fn omega_cohom(x: &Scroll, i: i64, t: DivClass) -> Result<CohomTable> {
    let left = omega_cohom_via(x, i, t, OmegaRoute::Left)?;
    let right = omega_cohom_via(x, i, t, OmegaRoute::Right)?;
    if left != right {
        return Err(Error::InvalidComplex(format!(
            "resolutions of Ω^{i}{t} disagree: {left} vs {right}"
        )));
    }
    Ok(left)
}

/// `Σ_k (-1)^k χ(term_k)` for a complex, the Euler characteristic its
/// hypercohomology must have.
pub fn term_euler_sum(x: &Scroll, c: &MonomialComplex) -> i128 {
    c.terms
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let chi: i128 = t.iter().map(|s| crate::cohomology::euler_char(x, s.class)).sum();
            if (c.lowest_degree + k as i64).rem_euclid(2) == 0 {
                chi
            } else {
                -chi
            }
        })
        .sum()
}
