//! Bounded complexes of split bundles with monomial differentials.
//!
//! Every summand carries a torus-invariant divisor representative (a vector
//! of coefficients on `D_{x_0..x_m}, D_{y_0..y_n}`), and every nonzero matrix
//! entry is `±` the Cox monomial whose exponent is the difference of
//! representatives. Differentials therefore preserve torus characters, which
//! is what lets [`crate::hypercohom`] split the computation by character.
//!
//! The Koszul complex on `y_0..y_n` twisted by `-H` is the backbone:
//! `K_r = ⊕_{|I|=r} O(-rH + a_I F)` with `e_I ↦ Σ ± y_i e_{I∖i}`, and
//! `Ω^i_{X|P^m} = ker(K_i → K_{i-1}) = coker(K_{i+2} → K_{i+1})`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scroll::{DivClass, Scroll};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub class: DivClass,
    /// Coefficients on `[D_{x_0}, …, D_{x_m}, D_{y_0}, …, D_{y_n}]`.
    pub rep: Vec<i64>,
}

/// `sign · monomial` from summand `source` of one term to summand `target` of the next.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub source: usize,
    pub target: usize,
    pub sign: i8,
    /// Exponents `[γ_0..γ_m, δ_0..δ_n]` of `x^γ y^δ`.
    pub monomial: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialComplex {
    pub m: usize,
    pub n: usize,
    pub twists: Vec<i64>,
    /// Cohomological degree of `terms[0]`.
    pub lowest_degree: i64,
    pub terms: Vec<Vec<Summand>>,
    /// `maps[k]` goes from `terms[k]` to `terms[k+1]`.
    pub maps: Vec<Vec<Entry>>,
}

/// Class of a vector of divisor coefficients.
pub fn class_of(x: &Scroll, v: &[i64]) -> DivClass {
    let m = x.m();
    let q: i64 = v[..=m].iter().sum();
    let (p, twist) = v[m + 1..]
        .iter()
        .zip(x.twists())
        .fold((0, 0), |(p, t), (b, a)| (p + b, t + b * a));
    DivClass::new(p, q - twist)
}

/// Canonical representative of `pH + qF`: `p D_{y_0} + (q + p a_0) D_{x_0}`.
pub fn canonical_rep(x: &Scroll, d: DivClass) -> Vec<i64> {
    let mut v = vec![0; x.m() + x.n() + 2];
    v[x.m() + 1] = d.p;
    v[0] = d.q + d.p * x.twists()[0];
    v
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

/// Subsets of `0..len` of the given size, as bitmasks in increasing order.
pub fn subsets_of_size(len: usize, size: usize) -> Vec<u32> {
    (0u32..(1 << len)).filter(|s| s.count_ones() as usize == size).collect()
}

/// Koszul sign: `(-1)^{#{elements of mask below i}}`.
fn koszul_sign(mask: u32, i: usize) -> i8 {
    if (mask & ((1u32 << i) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl MonomialComplex {
    fn empty(x: &Scroll, lowest_degree: i64) -> Self {
        MonomialComplex {
            m: x.m(),
            n: x.n(),
            twists: x.twists().to_vec(),
            lowest_degree,
            terms: Vec::new(),
            maps: Vec::new(),
        }
    }

    /// A complex with a single line bundle in degree 0.
    pub fn line(x: &Scroll, d: DivClass) -> Self {
        let mut c = Self::empty(x, 0);
        c.terms.push(vec![Summand {
            class: d,
            rep: canonical_rep(x, d),
        }]);
        c
    }

    pub fn highest_degree(&self) -> i64 {
        self.lowest_degree + self.terms.len() as i64 - 1
    }

    pub fn rep_len(&self) -> usize {
        self.m + self.n + 2
    }

    /// Tensor with `O(T)`.
    pub fn twisted(&self, x: &Scroll, t: DivClass) -> Self {
        let shift = canonical_rep(x, t);
        let mut c = self.clone();
        for s in c.terms.iter_mut().flatten() {
            s.class = s.class + t;
            for (r, d) in s.rep.iter_mut().zip(&shift) {
                *r += d;
            }
        }
        c
    }

    /// Moves every term by `k` cohomological degrees.
    pub fn shifted(mut self, k: i64) -> Self {
        self.lowest_degree += k;
        self
    }

    /// Keeps `terms[from..to]`.
    pub fn slice(&self, from: usize, to: usize) -> Self {
        MonomialComplex {
            m: self.m,
            n: self.n,
            twists: self.twists.clone(),
            lowest_degree: self.lowest_degree + from as i64,
            terms: self.terms[from..to].to_vec(),
            maps: self.maps[from..to.saturating_sub(1).max(from)].to_vec(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex serializes")
    }
}

/// Terms `K_r` for `r = hi, hi-1, …, lo` of the `y`-Koszul complex.
fn koszul_y(x: &Scroll, hi: usize, lo: usize) -> MonomialComplex {
    let (m, n) = (x.m(), x.n());
    let mut c = MonomialComplex::empty(x, 0);
    let index: Vec<Vec<u32>> = (lo..=hi).rev().map(|r| subsets_of_size(n + 1, r)).collect();
    for subsets in &index {
        c.terms.push(
            subsets
                .iter()
                .map(|&set| {
                    let mut rep = vec![0; m + n + 2];
                    for i in bits(set) {
                        rep[m + 1 + i] = -1;
                    }
                    Summand {
                        class: DivClass::new(-(set.count_ones() as i64), x.a_sum(set)),
                        rep,
                    }
                })
                .collect(),
        );
    }
    for k in 0..index.len().saturating_sub(1) {
        let target_pos: BTreeMap<u32, usize> = index[k + 1].iter().enumerate().map(|(p, &s)| (s, p)).collect();
        let mut entries = Vec::new();
        for (si, &set) in index[k].iter().enumerate() {
            for i in bits(set) {
                let mut monomial = vec![0; m + n + 2];
                monomial[m + 1 + i] = 1;
                entries.push(Entry {
                    source: si,
                    target: target_pos[&(set & !(1 << i))],
                    sign: koszul_sign(set, i),
                    monomial,
                });
            }
        }
        c.maps.push(entries);
    }
    c
}

/// `x`-Koszul complex `O(-mF) → O(-(m-1)F)^{e_m} → … → O^{e_1} → O(F)`,
/// summands indexed by `J ⊆ {0..m}` with class `(0, 1-|J|)`.
fn koszul_x(x: &Scroll) -> MonomialComplex {
    let (m, n) = (x.m(), x.n());
    let mut c = MonomialComplex::empty(x, 0);
    let index: Vec<Vec<u32>> = (0..=m + 1).rev().map(|r| subsets_of_size(m + 1, r)).collect();
    for subsets in &index {
        c.terms.push(
            subsets
                .iter()
                .map(|&set| {
                    let mut rep = vec![0; m + n + 2];
                    rep[0] = 1;
                    for j in bits(set) {
                        rep[j] -= 1;
                    }
                    Summand {
                        class: DivClass::new(0, 1 - set.count_ones() as i64),
                        rep,
                    }
                })
                .collect(),
        );
    }
    for k in 0..index.len() - 1 {
        let target_pos: BTreeMap<u32, usize> = index[k + 1].iter().enumerate().map(|(p, &s)| (s, p)).collect();
        let mut entries = Vec::new();
        for (si, &set) in index[k].iter().enumerate() {
            for j in bits(set) {
                let mut monomial = vec![0; m + n + 2];
                monomial[j] = 1;
                entries.push(Entry {
                    source: si,
                    target: target_pos[&(set & !(1 << j))],
                    sign: koszul_sign(set, j),
                    monomial,
                });
            }
        }
        c.maps.push(entries);
    }
    c
}

const RELATIVE_H: DivClass = DivClass::new(1, 0);

/// `⊕ O(a_i F) → O(H)` in degrees 0, 1; its cohomology sheaf is `Ω¹_{X|P^m}(H)` in degree 0.
pub fn build_euler(x: &Scroll) -> Result<MonomialComplex> {
    if x.n() == 0 {
        return Err(Error::Dimensions("the relative Euler sequence needs n ≥ 1".into()));
    }
    Ok(koszul_y(x, 1, 0).twisted(x, RELATIVE_H))
}

/// The exact sequence `O(-nH + cF) → ∧^n B((1-n)H) → … → B → O(H)`, with
/// `B = ⊕ O(-H + a_i F)`; leftmost term in degree 0.
pub fn build_exterior(x: &Scroll) -> MonomialComplex {
    koszul_y(x, x.n() + 1, 0).twisted(x, RELATIVE_H)
}

fn check_index(x: &Scroll, i: i64) -> Result<usize> {
    if i < 0 || i > x.n() as i64 {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: x.n() as i64,
        });
    }
    Ok(i as usize)
}

/// Left resolution `K_{n+1} → … → K_{i+1}` of `Ω^i`, with `K_{i+1}` in degree 0.
pub fn build_trunc1(x: &Scroll, i: i64) -> Result<MonomialComplex> {
    let i = check_index(x, i)?;
    let n = x.n();
    Ok(koszul_y(x, n + 1, i + 1).shifted(i as i64 - n as i64))
}

/// Right resolution `K_i → … → K_0` of `Ω^i`, with `K_i` in degree 0.
pub fn build_trunc2(x: &Scroll, i: i64) -> Result<MonomialComplex> {
    let i = check_index(x, i)?;
    Ok(koszul_y(x, i, 0))
}

/// `O(-mF) → … → O(F)`, exact; leftmost term in degree 0.
pub fn build_pb_koszul1(x: &Scroll) -> MonomialComplex {
    koszul_x(x)
}

/// The `x`-Koszul resolution of `O⟨-n, c⟩` spliced onto the exterior
/// sequence in place of its first term:
/// `O⟨-n, c-m-1⟩ → … → O^{e_1}⟨-n, c-1⟩ → ⊕ O⟨1-n, c-a_i⟩ → … → O(H)`.
pub fn build_pb_koszul2(x: &Scroll) -> MonomialComplex {
    let (m, n) = (x.m(), x.n());
    let ext = build_exterior(x);
    let joint = &ext.terms[0][0];
    let mut kx = koszul_x(x);
    let shift_class = joint.class - DivClass::new(0, 1);
    // re-base the x-Koszul representatives so that its (dropped) last term is `joint`
    for s in kx.terms.iter_mut().flatten() {
        s.class = s.class + shift_class;
        s.rep[0] -= 1;
        for (r, j) in s.rep.iter_mut().zip(&joint.rep) {
            *r += j;
        }
    }
    let mut c = MonomialComplex::empty(x, 0);
    c.terms.extend(kx.terms[..=m].iter().cloned());
    c.maps.extend(kx.maps[..m].iter().cloned());
    // composite O^{e_1}⟨-n, c-1⟩ → O⟨-n, c⟩ → ⊕_i O⟨1-n, c-a_i⟩
    let mut splice = Vec::new();
    for to_joint in &kx.maps[m] {
        for from_joint in &ext.maps[0] {
            let monomial: Vec<i64> = to_joint
                .monomial
                .iter()
                .zip(&from_joint.monomial)
                .map(|(a, b)| a + b)
                .collect();
            splice.push(Entry {
                source: to_joint.source,
                target: from_joint.target,
                sign: to_joint.sign * from_joint.sign,
                monomial,
            });
        }
    }
    c.maps.push(splice);
    c.terms.extend(ext.terms[1..].iter().cloned());
    c.maps.extend(ext.maps[1..].iter().cloned());
    debug_assert_eq!(c.terms.len(), m + n + 2);
    c
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: String,
    /// Index of the source term (or of the term for representative checks).
    pub term: usize,
    pub entry: Option<usize>,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks degree and representative compatibility of every entry and `d∘d = 0`.
pub fn validate_complex(c: &MonomialComplex) -> ValidationReport {
    let mut report = ValidationReport::default();
    let x = match Scroll::new(c.m as i64, c.n as i64, c.twists.clone()) {
        Ok(x) => x,
        Err(e) => {
            report.violations.push(Violation {
                kind: "scroll".into(),
                term: 0,
                entry: None,
                message: e.to_string(),
            });
            return report;
        }
    };
    let len = c.rep_len();
    if c.maps.len() + 1 != c.terms.len() && !(c.terms.is_empty() && c.maps.is_empty()) {
        report.violations.push(Violation {
            kind: "shape".into(),
            term: 0,
            entry: None,
            message: format!("{} terms but {} maps", c.terms.len(), c.maps.len()),
        });
        return report;
    }
    for (k, term) in c.terms.iter().enumerate() {
        for (si, s) in term.iter().enumerate() {
            if s.rep.len() != len || class_of(&x, &s.rep) != s.class {
                report.violations.push(Violation {
                    kind: "representative".into(),
                    term: k,
                    entry: None,
                    message: format!("summand {si}: representative does not have class {}", s.class),
                });
            }
        }
    }
    if !report.passed() {
        return report;
    }
    for (k, entries) in c.maps.iter().enumerate() {
        for (ei, e) in entries.iter().enumerate() {
            let (Some(src), Some(tgt)) = (c.terms[k].get(e.source), c.terms[k + 1].get(e.target)) else {
                report.violations.push(Violation {
                    kind: "index".into(),
                    term: k,
                    entry: Some(ei),
                    message: "entry refers to a missing summand".into(),
                });
                continue;
            };
            if e.monomial.len() != len || e.monomial.iter().any(|&v| v < 0) || !(e.sign == 1 || e.sign == -1) {
                report.violations.push(Violation {
                    kind: "monomial".into(),
                    term: k,
                    entry: Some(ei),
                    message: "entry is not a signed monomial".into(),
                });
                continue;
            }
            if class_of(&x, &e.monomial) != tgt.class - src.class {
                report.violations.push(Violation {
                    kind: "degree".into(),
                    term: k,
                    entry: Some(ei),
                    message: format!(
                        "monomial degree {} differs from {} - {}",
                        class_of(&x, &e.monomial),
                        tgt.class,
                        src.class
                    ),
                });
                continue;
            }
            let diff: Vec<i64> = tgt.rep.iter().zip(&src.rep).map(|(a, b)| a - b).collect();
            if diff != e.monomial {
                report.violations.push(Violation {
                    kind: "representative".into(),
                    term: k,
                    entry: Some(ei),
                    message: "monomial differs from the representative difference".into(),
                });
            }
        }
    }
    for k in 0..c.maps.len().saturating_sub(1) {
        let mut acc: BTreeMap<(usize, usize, Vec<i64>), i64> = BTreeMap::new();
        for e1 in &c.maps[k] {
            for e2 in c.maps[k + 1].iter().filter(|e2| e2.source == e1.target) {
                let mono: Vec<i64> = e1.monomial.iter().zip(&e2.monomial).map(|(a, b)| a + b).collect();
                *acc.entry((e1.source, e2.target, mono)).or_insert(0) += (e1.sign * e2.sign) as i64;
            }
        }
        for ((s, t, mono), v) in acc {
            if v != 0 {
                report.violations.push(Violation {
                    kind: "d∘d".into(),
                    term: k,
                    entry: None,
                    message: format!("composite from summand {s} to summand {t} has coefficient {v} on {mono:?}"),
                });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(m: i64, n: i64, a: &[i64]) -> Scroll {
        Scroll::new(m, n, a.to_vec()).unwrap()
    }

    fn classes(t: &[Summand]) -> Vec<DivClass> {
        t.iter().map(|s| s.class).collect()
    }

    #[test]
    fn euler_sequence_shape() {
        let x = s(1, 1, &[1, 2]);
        let c = build_euler(&x).unwrap();
        assert_eq!(classes(&c.terms[0]), vec![DivClass::new(0, 1), DivClass::new(0, 2)]);
        assert_eq!(classes(&c.terms[1]), vec![DivClass::new(1, 0)]);
        let degrees: Vec<DivClass> = c.maps[0].iter().map(|e| class_of(&x, &e.monomial)).collect();
        assert_eq!(degrees, vec![DivClass::new(1, -1), DivClass::new(1, -2)]);
        assert!(validate_complex(&c).passed());
        assert!(build_euler(&s(2, 0, &[1])).is_err());
    }

    #[test]
    fn pullback_koszul_sizes() {
        let x = s(2, 1, &[1, 3]);
        let c = build_pb_koszul1(&x);
        let sizes: Vec<usize> = c.terms.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 3, 3, 1]);
        assert_eq!(c.terms[0][0].class, DivClass::new(0, -2));
        assert_eq!(c.terms[3][0].class, DivClass::new(0, 1));
    }

    #[test]
    fn exterior_leftmost_term() {
        let x = s(1, 2, &[1, 1, 2]);
        let c = build_exterior(&x);
        assert_eq!(classes(&c.terms[0]), vec![DivClass::new(-2, 4)]);
        assert_eq!(classes(c.terms.last().unwrap()), vec![DivClass::new(1, 0)]);
    }

    #[test]
    fn pullback_koszul2_shape() {
        let x = s(2, 2, &[1, 1, 3]);
        let c = build_pb_koszul2(&x);
        assert_eq!(c.terms.len(), 2 + 2 + 2);
        assert_eq!(classes(&c.terms[0]), vec![DivClass::new(-2, 5 - 3)]);
        assert_eq!(c.terms[2].len(), 3);
        assert!(c.terms[2].iter().all(|s| s.class == DivClass::new(-2, 4)));
        assert_eq!(
            classes(&c.terms[3]),
            vec![DivClass::new(-1, 2), DivClass::new(-1, 4), DivClass::new(-1, 4)]
        );
        assert!(validate_complex(&c).passed(), "{:?}", validate_complex(&c));
    }

    #[test]
    fn truncations() {
        let x = s(1, 3, &[1, 1, 1, 1]);
        let t1 = build_trunc1(&x, 1).unwrap();
        assert_eq!(t1.lowest_degree, -2);
        assert_eq!(t1.highest_degree(), 0);
        assert_eq!(t1.terms.last().unwrap().len(), 6);
        let t2 = build_trunc2(&x, 2).unwrap();
        assert_eq!(t2.lowest_degree, 0);
        assert_eq!(t2.terms.len(), 3);
        assert_eq!(t2.terms[0][0].class, DivClass::new(-2, 2));
        assert!(build_trunc1(&x, 4).is_err());
        assert!(build_trunc2(&x, -1).is_err());
    }

    #[test]
    fn all_builders_validate() {
        for x in [
            s(1, 1, &[1, 2]),
            s(1, 2, &[1, 1, 2]),
            s(2, 1, &[1, 3]),
            s(2, 3, &[1, 1, 2, 2]),
            s(0, 2, &[0, 0, 0]),
            s(2, 0, &[2]),
        ] {
            let mut built = vec![build_exterior(&x), build_pb_koszul1(&x), build_pb_koszul2(&x)];
            for i in 0..=x.n() as i64 {
                built.push(build_trunc1(&x, i).unwrap());
                built.push(build_trunc2(&x, i).unwrap());
            }
            if x.n() > 0 {
                built.push(build_euler(&x).unwrap());
            }
            for c in built {
                let r = validate_complex(&c);
                assert!(r.passed(), "{x}: {r:?}");
                assert!(validate_complex(&c.twisted(&x, DivClass::new(2, -3))).passed());
            }
        }
    }

    #[test]
    fn corrupted_sign_is_located() {
        let x = s(1, 2, &[1, 1, 2]);
        let mut c = build_exterior(&x);
        c.maps[1][0].sign = -c.maps[1][0].sign;
        let r = validate_complex(&c);
        assert!(!r.passed());
        assert!(r.violations.iter().all(|v| v.kind == "d∘d"));
        assert!(r.violations.iter().any(|v| v.term == 0 || v.term == 1));
    }

    #[test]
    fn mismatched_degree_is_located() {
        let x = s(1, 1, &[1, 2]);
        let mut c = build_euler(&x).unwrap();
        c.maps[0][1].monomial = vec![0, 0, 1, 0];
        let r = validate_complex(&c);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].kind, "degree");
        assert_eq!(r.violations[0].entry, Some(1));
    }

    #[test]
    fn json_dump_round_trips() {
        let x = s(1, 1, &[1, 2]);
        let c = build_euler(&x).unwrap();
        let back: MonomialComplex = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }
}
