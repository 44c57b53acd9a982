//! Lexsegment edge ideals and their closed-form invariants.
//!
//! `L(u, v)` is the set of squarefree degree-2 monomials `w` with
//! `u >= w >= v` in lex order. After dropping leading variables that do not
//! occur (they form a regular sequence on `S/I`) we may write `u = x_1 x_i`
//! and `v = x_j x_k` with `j < k`; all formulas below are in those terms.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{all_of_degree, MonomialIdeal, SquarefreeMonomial};

/// The ideal generated by a degree-2 lexsegment `L(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LexSegmentIdeal {
    n: usize,
    u: SquarefreeMonomial,
    v: SquarefreeMonomial,
    /// The segment, decreasing lex.
    gens: Vec<SquarefreeMonomial>,
}

fn pair(m: &SquarefreeMonomial) -> (usize, usize) {
    let mut it = m.vars();
    (it.next().expect("degree 2"), it.next().expect("degree 2"))
}

impl LexSegmentIdeal {
    /// Builds `L(u, v)` in `n` variables. Requires `n >= 2`, `u` and `v` of
    /// degree 2, and `u >= v`.
    pub fn new(n: usize, u: SquarefreeMonomial, v: SquarefreeMonomial) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSegment(format!("need at least two variables, got n = {n}")));
        }
        if u.n() != n || v.n() != n {
            return Err(Error::AmbientMismatch { left: n, right: if u.n() != n { u.n() } else { v.n() } });
        }
        if u.degree() != 2 || v.degree() != 2 {
            return Err(Error::InvalidSegment(format!("{u} and {v} must both have degree 2")));
        }
        if u.lex_compare(&v)? == Ordering::Less {
            return Err(Error::InvalidSegment(format!("u = {u} is lex-smaller than v = {v}")));
        }
        let gens = all_of_degree(n, 2)?
            .into_iter()
            .filter(|w| w.lex_compare(&u).unwrap() != Ordering::Greater && w.lex_compare(&v).unwrap() != Ordering::Less)
            .collect();
        Ok(LexSegmentIdeal { n, u, v, gens })
    }

    /// Parses `u` and `v` in any form accepted by [`SquarefreeMonomial::parse`].
    pub fn parse(n: usize, u: &str, v: &str) -> Result<Self> {
        Self::new(n, SquarefreeMonomial::parse(u, n)?, SquarefreeMonomial::parse(v, n)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn u(&self) -> SquarefreeMonomial {
        self.u
    }

    pub fn v(&self) -> SquarefreeMonomial {
        self.v
    }

    pub fn gens(&self) -> &[SquarefreeMonomial] {
        &self.gens
    }

    /// `μ(I)`; every element of the segment is a minimal generator.
    pub fn mu(&self) -> usize {
        self.gens.len()
    }

    pub fn ideal(&self) -> MonomialIdeal {
        MonomialIdeal::minimalize(self.n, self.gens.iter().copied()).expect("valid ring")
    }

    /// `x_1 | u`.
    pub fn is_normalized(&self) -> bool {
        self.u.contains(1)
    }

    /// Second index of `u` (`u = x_l x_i`).
    pub fn i(&self) -> usize {
        pair(&self.u).1
    }

    /// First index of `v`.
    pub fn j(&self) -> usize {
        pair(&self.v).0
    }

    /// Second index of `v`.
    pub fn k(&self) -> usize {
        pair(&self.v).1
    }

    /// Number of leading variables not involved in the segment.
    pub fn shift(&self) -> usize {
        pair(&self.u).0 - 1
    }

    /// Drops `x_1, ..., x_{l-1}` when `u = x_l x_q`, relabelling the rest.
    pub fn normalize(&self) -> Result<(LexSegmentIdeal, usize)> {
        let shift = self.shift();
        if shift == 0 {
            return Ok((self.clone(), 0));
        }
        let seg = LexSegmentIdeal::new(self.n - shift, self.u.shift_down(shift)?, self.v.shift_down(shift)?)?;
        Ok((seg, shift))
    }

    fn mono(&self, a: usize, b: usize) -> SquarefreeMonomial {
        SquarefreeMonomial::edge(self.n, a, b).expect("indices in range")
    }

    /// `x_a x_b >=_lex v`.
    fn at_least_v(&self, a: usize, b: usize) -> bool {
        self.mono(a, b).lex_compare(&self.v).unwrap() != Ordering::Less
    }
}

impl fmt::Display for LexSegmentIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({}, {}) in {} variables", self.u, self.v, self.n)
    }
}

/// Free-function form of [`LexSegmentIdeal::normalize`] taking raw inputs.
pub fn normalize(n: usize, u: SquarefreeMonomial, v: SquarefreeMonomial) -> Result<(LexSegmentIdeal, usize)> {
    LexSegmentIdeal::new(n, u, v)?.normalize()
}

/// Free-function form of [`LexSegmentIdeal::new`].
pub fn build_segment(n: usize, u: SquarefreeMonomial, v: SquarefreeMonomial) -> Result<LexSegmentIdeal> {
    LexSegmentIdeal::new(n, u, v)
}

/// Which arithmetical-rank construction applies to a normalized segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WitnessCase {
    #[serde(rename = "SINGLE")]
    Single,
    #[serde(rename = "J1")]
    J1,
    #[serde(rename = "PD_N1")]
    PdN1,
    #[serde(rename = "CASE1")]
    Case1,
    #[serde(rename = "CASE2")]
    Case2,
    #[serde(rename = "J2_TAYLOR")]
    J2Taylor,
    #[serde(rename = "J2_BIGROW_I3")]
    J2BigRowI3,
    #[serde(rename = "J2_BIGROW_IGT3")]
    J2BigRowIgt3,
}

impl WitnessCase {
    pub fn tag(self) -> &'static str {
        match self {
            WitnessCase::Single => "SINGLE",
            WitnessCase::J1 => "J1",
            WitnessCase::PdN1 => "PD_N1",
            WitnessCase::Case1 => "CASE1",
            WitnessCase::Case2 => "CASE2",
            WitnessCase::J2Taylor => "J2_TAYLOR",
            WitnessCase::J2BigRowI3 => "J2_BIGROW_I3",
            WitnessCase::J2BigRowIgt3 => "J2_BIGROW_IGT3",
        }
    }
}

impl fmt::Display for WitnessCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentClass {
    /// `I = I_{n,2}`.
    pub is_full: bool,
    /// `u = x_1 x_2`.
    pub is_initial: bool,
    /// `v = x_{n-1} x_n`.
    pub is_final: bool,
    /// `u = v`.
    pub is_single: bool,
    /// `j >= i - 2`.
    pub is_completely: bool,
    pub witness_case: WitnessCase,
}

fn require_normalized(seg: &LexSegmentIdeal) -> Result<()> {
    if !seg.is_normalized() {
        return Err(Error::InvalidSegment(format!("{seg} is not normalized (x1 does not divide u)")));
    }
    Ok(())
}

/// Classifies a normalized segment.
pub fn classify(seg: &LexSegmentIdeal) -> Result<SegmentClass> {
    require_normalized(seg)?;
    let n = seg.n;
    let (i, j, k) = (seg.i(), seg.j(), seg.k());
    let is_initial = i == 2;
    let is_final = j == n - 1 && k == n;
    let witness_case = if seg.u == seg.v {
        WitnessCase::Single
    } else if j == 1 {
        WitnessCase::J1
    } else if seg.at_least_v(i - 1, n) {
        WitnessCase::PdN1
    } else if j >= 3 {
        if i == 4 || seg.at_least_v(i - 1, i) {
            WitnessCase::Case1
        } else {
            WitnessCase::Case2
        }
    } else if i > k {
        WitnessCase::J2Taylor
    } else if i == 3 {
        WitnessCase::J2BigRowI3
    } else {
        WitnessCase::J2BigRowIgt3
    };
    Ok(SegmentClass {
        is_full: is_initial && is_final,
        is_initial,
        is_final,
        is_single: seg.u == seg.v,
        is_completely: j + 2 >= i,
        witness_case,
    })
}

/// Homological and dimension-theoretic invariants of `S/I`.
///
/// `ara` and `stci` are only known from closed forms or certificates; the
/// brute-force oracle leaves them unset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub dim: usize,
    pub depth: usize,
    pub projdim: usize,
    /// `reg(I)`, not `reg(S/I)`.
    pub reg: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ara: Option<usize>,
    pub height: usize,
    pub cm: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stci: Option<bool>,
    pub linear_resolution: bool,
}

/// Closed-form invariants of a normalized segment.
fn closed_form(seg: &LexSegmentIdeal) -> InvariantReport {
    let n = seg.n;
    let (i, j, k) = (seg.i(), seg.j(), seg.k());
    let is_full = i == 2 && j == n - 1 && k == n;
    let is_final = j == n - 1 && k == n;

    let dim = if is_full {
        1
    } else if j == 1 {
        n - 1
    } else if is_final && i >= 3 {
        2
    } else {
        n - j
    };

    let depth = if is_full {
        1
    } else if j == 1 {
        n + i - k - 1
    } else if seg.at_least_v(i - 1, n) {
        1
    } else if j >= 3 || k >= i {
        2
    } else {
        i + 1 - k
    };

    let reg = if seg.mu() == 1 || j == 1 {
        2
    } else if i >= j + 2 && k != n {
        3
    } else {
        2
    };

    let projdim = n - depth;
    let cm = dim == depth;
    InvariantReport {
        dim,
        depth,
        projdim,
        reg,
        ara: Some(projdim),
        height: n - dim,
        cm,
        stci: Some(cm),
        linear_resolution: reg == 2,
    }
}

/// Closed-form invariants of any segment. Unnormalized input is normalized
/// first; the dropped variables add to `dim` and `depth` only.
pub fn invariants(seg: &LexSegmentIdeal) -> Result<InvariantReport> {
    let (norm, shift) = seg.normalize()?;
    let mut r = closed_form(&norm);
    r.dim += shift;
    r.depth += shift;
    Ok(r)
}

/// The JSON record printed for one segment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentReport {
    pub n: usize,
    pub u: SquarefreeMonomial,
    pub v: SquarefreeMonomial,
    #[serde(flatten)]
    pub report: InvariantReport,
    pub class: WitnessCase,
}

pub fn segment_report(seg: &LexSegmentIdeal) -> Result<SegmentReport> {
    let (norm, _) = seg.normalize()?;
    Ok(SegmentReport { n: seg.n, u: seg.u, v: seg.v, report: invariants(seg)?, class: classify(&norm)?.witness_case })
}

/// Normalized pairs `(u, v)` with `u != v` whose ideal is Cohen–Macaulay.
pub fn cm_classification_table(n: usize) -> Result<Vec<(SquarefreeMonomial, SquarefreeMonomial)>> {
    if n < 3 {
        return Err(Error::InvalidSegment(format!("CM table needs n >= 3, got {n}")));
    }
    let e = |a, b| SquarefreeMonomial::edge(n, a, b);
    let mut out = vec![(e(1, 2)?, e(n - 1, n)?)];
    if n >= 4 {
        for v in [e(2, 3)?, e(n - 2, n - 1)?, e(n - 2, n)?] {
            out.push((e(1, n)?, v));
        }
    }
    out.push((e(1, n - 1)?, e(n - 2, n - 1)?));
    out.retain(|(u, v)| u != v);
    out.sort_by(|a, b| b.cmp(a));
    out.dedup();
    Ok(out)
}

/// Every pair `u >= v` of squarefree degree-2 monomials in `n` variables,
/// ordered by decreasing `u` then decreasing `v`.
pub fn all_pairs(n: usize) -> Result<Vec<(SquarefreeMonomial, SquarefreeMonomial)>> {
    let monos = all_of_degree(n, 2)?;
    let mut out = Vec::with_capacity(monos.len() * (monos.len() + 1) / 2);
    for (a, u) in monos.iter().enumerate() {
        for v in &monos[a..] {
            out.push((*u, *v));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(n: usize, u: &str, v: &str) -> LexSegmentIdeal {
        LexSegmentIdeal::parse(n, u, v).unwrap()
    }

    fn names(s: &LexSegmentIdeal) -> Vec<String> {
        s.gens().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn build_examples() {
        assert_eq!(names(&seg(5, "x1x3", "x2x4")), ["x1x3", "x1x4", "x1x5", "x2x3", "x2x4"]);
        assert_eq!(seg(4, "x1x2", "x3x4").mu(), 6);
        assert_eq!(names(&seg(6, "x1x5", "x2x3")), ["x1x5", "x1x6", "x2x3"]);
        assert!(LexSegmentIdeal::parse(5, "x2x4", "x1x3").is_err());
        assert!(LexSegmentIdeal::parse(5, "x1", "x1x3").is_err());
    }

    #[test]
    fn normalize_examples() {
        let (s, shift) = seg(6, "x2x4", "x3x5").normalize().unwrap();
        assert_eq!(shift, 1);
        assert_eq!((s.n(), s.u().to_string(), s.v().to_string()), (5, "x1x3".into(), "x2x4".into()));
        let (s, shift) = seg(5, "x1x3", "x2x4").normalize().unwrap();
        assert_eq!((s.n(), shift), (5, 0));
        let (s, shift) = seg(4, "x3x4", "x3x4").normalize().unwrap();
        assert_eq!((s.n(), s.mu(), shift), (2, 1, 2));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&seg(6, "x1x4", "x3x4")).unwrap().witness_case, WitnessCase::Case1);
        assert_eq!(classify(&seg(6, "x1x5", "x3x4")).unwrap().witness_case, WitnessCase::Case2);
        assert_eq!(classify(&seg(5, "x1x4", "x3x5")).unwrap().witness_case, WitnessCase::PdN1);
        assert_eq!(classify(&seg(5, "x1x3", "x2x4")).unwrap().witness_case, WitnessCase::J2BigRowI3);
        assert_eq!(classify(&seg(6, "x1x5", "x2x3")).unwrap().witness_case, WitnessCase::J2Taylor);
        assert_eq!(classify(&seg(6, "x1x4", "x2x5")).unwrap().witness_case, WitnessCase::J2BigRowIgt3);
        assert_eq!(classify(&seg(5, "x1x3", "x1x5")).unwrap().witness_case, WitnessCase::J1);
        assert_eq!(classify(&seg(5, "x1x3", "x1x3")).unwrap().witness_case, WitnessCase::Single);
        let c = classify(&seg(5, "x1x2", "x4x5")).unwrap();
        assert!(c.is_full && c.is_initial && c.is_final);
        assert!(classify(&seg(6, "x2x4", "x3x5")).is_err());
    }

    #[test]
    fn completeness_flag() {
        assert!(classify(&seg(7, "x1x5", "x3x4")).unwrap().is_completely);
        assert!(!classify(&seg(7, "x1x6", "x3x4")).unwrap().is_completely);
    }

    fn tuple(r: &InvariantReport) -> (usize, usize, usize, usize) {
        (r.dim, r.depth, r.projdim, r.reg)
    }

    #[test]
    fn invariant_examples() {
        let r = invariants(&seg(5, "x1x3", "x2x4")).unwrap();
        assert_eq!(tuple(&r), (3, 2, 3, 2));
        assert_eq!(r.ara, Some(3));
        assert!(!r.cm);

        let r = invariants(&seg(6, "x1x5", "x2x3")).unwrap();
        assert_eq!((r.depth, r.projdim), (3, 3));

        let r = invariants(&seg(4, "x1x4", "x2x3")).unwrap();
        assert_eq!((r.dim, r.depth, r.cm, r.stci), (2, 2, true, Some(true)));

        assert_eq!(invariants(&seg(6, "x1x5", "x2x4")).unwrap().reg, 3);
    }

    #[test]
    fn unnormalized_shifts_dim_and_depth() {
        let a = invariants(&seg(6, "x2x4", "x3x5")).unwrap();
        let b = invariants(&seg(5, "x1x3", "x2x4")).unwrap();
        assert_eq!(a.dim, b.dim + 1);
        assert_eq!(a.depth, b.depth + 1);
        assert_eq!((a.projdim, a.reg, a.ara, a.height), (b.projdim, b.reg, b.ara, b.height));
    }

    #[test]
    fn report_json() {
        let r = segment_report(&seg(5, "x1x3", "x2x4")).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"n":5,"u":[1,3],"v":[2,4],"dim":3,"depth":2,"projdim":3,"reg":2,"ara":3,"height":2,"cm":false,"stci":false,"linear_resolution":true,"class":"J2_BIGROW_I3"}"#
        );
    }

    #[test]
    fn cm_table_examples() {
        let e = |n, a, b| SquarefreeMonomial::edge(n, a, b).unwrap();
        assert!(cm_classification_table(4).unwrap().contains(&(e(4, 1, 4), e(4, 2, 3))));
        assert!(cm_classification_table(5).unwrap().contains(&(e(5, 1, 4), e(5, 3, 4))));
        for n in 3..=8 {
            for (u, v) in cm_classification_table(n).unwrap() {
                let r = invariants(&LexSegmentIdeal::new(n, u, v).unwrap()).unwrap();
                assert_eq!(r.dim, r.depth, "n={n} u={u} v={v}");
            }
        }
    }

    #[test]
    fn pair_counts() {
        for n in 3..=7 {
            let m = n * (n - 1) / 2;
            assert_eq!(all_pairs(n).unwrap().len(), m * (m + 1) / 2);
        }
    }
}
