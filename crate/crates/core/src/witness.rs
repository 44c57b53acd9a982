//! Arithmetical-rank certificates.
//!
//! A Schmitt–Vogel family is a list of finite sets `A_1, ..., A_r` of
//! monomials of a squarefree ideal `I` such that
//!
//! * SV1: `|A_1| = 1`;
//! * SV2: the union of the `A_t` contains `G(I)`;
//! * SV3: for `t >= 2` and distinct `m1, m2 ∈ A_t` some `m'` in an earlier
//!   set divides `m1 m2`.
//!
//! Then the sums `g_t = Σ_{m ∈ A_t} m` satisfy `sqrt(g_1, ..., g_r) = I`, so
//! `ara(I) <= r`. Combined with `projdim(S/I) <= ara(I)`, a family of size
//! `projdim(S/I)` pins the arithmetical rank.
//!
//! For the Alexander dual, the witnesses are two or three polynomials. The
//! three-element form is `x_j f1, x_j f2 + Π f1, Π f2` where
//! `sqrt(f1, f2) = J*` and `Π = x_{j+1} ... x_k`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::duality::alexander_dual;
use crate::error::{Error, Result};
#[cfg(test)]
use crate::field::Fp;
use crate::field::{Field, FieldKind};
use crate::groebner::{radical_equals_ideal, GroebnerConfig, RadicalCheck};
use crate::lexsegment::{classify, invariants, LexSegmentIdeal, WitnessCase};
use crate::monomial::{all_of_degree, IndexSet, MonomialIdeal, SquarefreeMonomial};
use crate::poly::{Polynomial, TermJson};

/// An ordered list of monomial sets `A_1, ..., A_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvFamily {
    n: usize,
    sets: Vec<Vec<SquarefreeMonomial>>,
}

impl SvFamily {
    /// Each set is deduplicated and sorted in decreasing lex order.
    pub fn new(n: usize, sets: Vec<Vec<SquarefreeMonomial>>) -> Result<Self> {
        let mut out = Vec::with_capacity(sets.len());
        for mut set in sets {
            if let Some(m) = set.iter().find(|m| m.n() != n) {
                return Err(Error::AmbientMismatch { left: n, right: m.n() });
            }
            set.sort_by(|a, b| b.cmp(a));
            set.dedup();
            out.push(set);
        }
        Ok(SvFamily { n, sets: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[Vec<SquarefreeMonomial>] {
        &self.sets
    }

    /// `r`, the number of sets.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// `g_t` as text, e.g. `x1x4+x2x3`.
    pub fn sum_strings(&self) -> Vec<String> {
        self.sets.iter().map(|s| s.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("+")).collect()
    }

    /// The sums `g_t` over a field.
    pub fn sums<F: Field>(&self) -> Result<Vec<Polynomial<F>>> {
        self.sets.iter().map(|s| Polynomial::sum_of(self.n, s)).collect()
    }

    pub fn shift_up(&self, shift: usize) -> Result<Self> {
        let sets = self
            .sets
            .iter()
            .map(|s| s.iter().map(|m| m.shift_up(shift)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        SvFamily::new(self.n + shift, sets)
    }
}

/// The first violated condition found by [`verify_sv`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum SvFailure {
    EmptyFamily,
    AmbientMismatch {
        family: usize,
        ideal: usize,
    },
    /// `|A_1| != 1`.
    Sv1 {
        size: usize,
    },
    EmptySet {
        set: usize,
    },
    NotInIdeal {
        set: usize,
        monomial: SquarefreeMonomial,
    },
    /// A minimal generator of `I` is in no set.
    Sv2 {
        missing: SquarefreeMonomial,
    },
    /// No earlier element divides `m1 * m2`. `set` is 1-based.
    Sv3 {
        set: usize,
        m1: SquarefreeMonomial,
        m2: SquarefreeMonomial,
    },
}

impl fmt::Display for SvFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SvFailure::EmptyFamily => write!(f, "empty family"),
            SvFailure::AmbientMismatch { family, ideal } => write!(f, "family in {family} variables, ideal in {ideal}"),
            SvFailure::Sv1 { size } => write!(f, "SV1: |A_1| = {size}"),
            SvFailure::EmptySet { set } => write!(f, "A_{set} is empty"),
            SvFailure::NotInIdeal { set, monomial } => write!(f, "{monomial} in A_{set} is not in the ideal"),
            SvFailure::Sv2 { missing } => write!(f, "SV2: generator {missing} is not covered"),
            SvFailure::Sv3 { set, m1, m2 } => write!(f, "SV3: nothing before A_{set} divides {m1}*{m2}"),
        }
    }
}

/// Checks SV1, membership in `I`, SV2 and SV3, in that order.
pub fn verify_sv(family: &SvFamily, ideal: &MonomialIdeal) -> std::result::Result<(), SvFailure> {
    if family.is_empty() {
        return Err(SvFailure::EmptyFamily);
    }
    if family.n != ideal.n() {
        return Err(SvFailure::AmbientMismatch { family: family.n, ideal: ideal.n() });
    }
    if family.sets[0].len() != 1 {
        return Err(SvFailure::Sv1 { size: family.sets[0].len() });
    }
    for (t, set) in family.sets.iter().enumerate() {
        if set.is_empty() {
            return Err(SvFailure::EmptySet { set: t + 1 });
        }
        if let Some(m) = set.iter().find(|m| !ideal.contains_bits(m.bits())) {
            return Err(SvFailure::NotInIdeal { set: t + 1, monomial: *m });
        }
    }
    for g in ideal.gens() {
        if !family.sets.iter().any(|s| s.contains(g)) {
            return Err(SvFailure::Sv2 { missing: *g });
        }
    }
    let mut earlier: Vec<u64> = family.sets[0].iter().map(|m| m.bits()).collect();
    for (t, set) in family.sets.iter().enumerate().skip(1) {
        for (a, m1) in set.iter().enumerate() {
            for m2 in &set[a + 1..] {
                // squarefree m' divides m1*m2 iff its support lies in the union
                let support = m1.bits() | m2.bits();
                if !earlier.iter().any(|&e| e & !support == 0) {
                    return Err(SvFailure::Sv3 { set: t + 1, m1: *m1, m2: *m2 });
                }
            }
        }
        earlier.extend(set.iter().map(|m| m.bits()));
    }
    Ok(())
}

/// Verdict attached to a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Passed SV1–SV3, so the radical equality follows combinatorially.
    SvVerified,
    /// Radical equality confirmed by Gröbner computations.
    GroebnerVerified,
    /// Three-element dual witness: the `(f1, f2)` part is verified and the
    /// quadratic-root identity holds.
    RootIdentityVerified,
    Failed(String),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        !matches!(self, Verdict::Failed(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::SvVerified => f.write_str("sv_verified"),
            Verdict::GroebnerVerified => f.write_str("groebner_verified"),
            Verdict::RootIdentityVerified => f.write_str("root_identity_verified"),
            Verdict::Failed(reason) => write!(f, "failed: {reason}"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(match s.as_str() {
            "sv_verified" => Verdict::SvVerified,
            "groebner_verified" => Verdict::GroebnerVerified,
            "root_identity_verified" => Verdict::RootIdentityVerified,
            other => Verdict::Failed(other.strip_prefix("failed: ").unwrap_or(other).to_string()),
        })
    }
}

/// Result of an independent Gröbner check, with the field it ran over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroebnerCheck {
    pub field: FieldKind,
    #[serde(flatten)]
    pub check: RadicalCheck,
}

/// An SV family for a target ideal together with its verdicts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvCertificate {
    pub family: SvFamily,
    pub target: MonomialIdeal,
    pub verdict: Verdict,
    pub groebner: Option<GroebnerCheck>,
}

impl SvCertificate {
    /// Runs [`verify_sv`] and records the verdict.
    pub fn checked(family: SvFamily, target: MonomialIdeal) -> Self {
        let verdict = match verify_sv(&family, &target) {
            Ok(()) => Verdict::SvVerified,
            Err(f) => Verdict::Failed(f.to_string()),
        };
        SvCertificate { family, target, verdict, groebner: None }
    }

    pub fn r(&self) -> usize {
        self.family.len()
    }

    /// Independent check `sqrt(g_1, ..., g_r) == target` over the given field.
    pub fn groebner_verify(&mut self, field: FieldKind, config: &GroebnerConfig) -> Result<&GroebnerCheck> {
        let check =
            with_field!(field, F => radical_equals_ideal::<F>(&self.family.sums::<F>()?, &self.target, config)?);
        self.groebner = Some(GroebnerCheck { field, check });
        Ok(self.groebner.as_ref().unwrap())
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            target: self.target.clone(),
            sets: self.family.sets.iter().map(|s| s.iter().map(|m| IndexSet(m.to_vec())).collect()).collect(),
            sums: self.family.sum_strings(),
            verdict: self.verdict.clone(),
            groebner: self.groebner.as_ref().map(|g| GroebnerJson {
                field: g.field,
                verdict: if g.check.is_equal() {
                    Verdict::GroebnerVerified
                } else {
                    Verdict::Failed(format!("{:?}", g.check))
                },
            }),
        }
    }
}

/// Serialized Gröbner verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerJson {
    pub field: FieldKind,
    pub verdict: Verdict,
}

/// On-disk form of an [`SvCertificate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub target: MonomialIdeal,
    pub sets: Vec<Vec<IndexSet>>,
    pub sums: Vec<String>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groebner: Option<GroebnerJson>,
}

impl CertificateJson {
    /// Rebuilds the family; the stored sums must match the sets.
    pub fn family(&self) -> Result<SvFamily> {
        let n = self.target.n();
        let sets = self
            .sets
            .iter()
            .map(|s| s.iter().map(|m| m.clone().into_monomial(n)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let family = SvFamily::new(n, sets)?;
        let canonical = |s: &str| {
            let mut parts: Vec<SquarefreeMonomial> =
                s.split('+').map(|p| SquarefreeMonomial::parse(p, n)).collect::<Result<Vec<_>>>()?;
            parts.sort_by(|a, b| b.cmp(a));
            Ok::<_, Error>(parts)
        };
        if self.sums.len() != family.len() {
            return Err(Error::Parse(format!("{} sums for {} sets", self.sums.len(), family.len())));
        }
        for (t, (s, set)) in self.sums.iter().zip(family.sets()).enumerate() {
            if canonical(s)? != *set {
                return Err(Error::Parse(format!("sum {} ({s}) does not match A_{}", t + 1, t + 1)));
            }
        }
        Ok(family)
    }
}

/// `A_ℓ = {squarefree monomials of degree n - ℓ + 1 in I}` for
/// `ℓ = 1, ..., n - indeg(I) + 1`. SV3 holds because `m1 * x_t` for any
/// `x_t | m2` not dividing `m1` is a monomial of `I` of the next degree up.
pub fn degree_grouping_family(ideal: &MonomialIdeal) -> Result<SvFamily> {
    let n = ideal.n();
    let d = ideal.indeg().ok_or_else(|| Error::Construction("degree-grouping family of the zero ideal".into()))?;
    let d = d.max(1);
    let sets = (d..=n)
        .rev()
        .map(|deg| Ok(all_of_degree(n, deg)?.into_iter().filter(|m| ideal.contains_bits(m.bits())).collect()))
        .collect::<Result<Vec<_>>>()?;
    SvFamily::new(n, sets)
}

/// Takes position `n - 1 - t` (1-based, counted within each row) from every
/// row long enough, for `t = 1, ..., n - 2`. With rows laid out as an upper
/// triangular tableau these are the anti-diagonals, read from the top-right.
fn diagonals(n: usize, rows: &[Vec<SquarefreeMonomial>], t: usize) -> Vec<SquarefreeMonomial> {
    let p = n - 1 - t;
    rows.iter().filter_map(|row| row.get(p - 1).copied()).collect()
}

/// The family for a normalized segment, in its own ring.
fn lex_family(seg: &LexSegmentIdeal, case: WitnessCase) -> Result<SvFamily> {
    let n = seg.n();
    let (i, j, k) = (seg.i(), seg.j(), seg.k());
    let e = |a: usize, b: usize| SquarefreeMonomial::edge(n, a, b);
    let c3 = |a: usize, b: usize, c: usize| SquarefreeMonomial::new(n, &[a, b, c]);

    let sets: Vec<Vec<SquarefreeMonomial>> = match case {
        WitnessCase::Single => vec![vec![seg.u()]],
        WitnessCase::J1 => (i..=k).map(|b| Ok(vec![e(1, b)?])).collect::<Result<_>>()?,
        WitnessCase::PdN1 => return degree_grouping_family(&seg.ideal()),
        WitnessCase::J2Taylor => seg.gens().iter().map(|g| vec![*g]).collect(),
        WitnessCase::Case1 => {
            let mut rows = Vec::new();
            for a in 2..=i - 2 {
                let mut row = Vec::new();
                for b in a + 1..i {
                    row.push(e(a, b)?);
                }
                row.push(e(a, n)?);
                for b in i..n {
                    row.push(e(a, b)?);
                }
                rows.push(row);
            }
            let mut x1_row = vec![e(1, n)?];
            for b in i..n {
                x1_row.push(e(1, b)?);
            }
            rows.push(x1_row);
            rows.push((i..=k).map(|b| e(i - 1, b)).collect::<Result<_>>()?);
            (1..=n - 2).map(|t| diagonals(n, &rows, t)).collect()
        }
        WitnessCase::Case2 => {
            let mut rows = Vec::new();
            for a in 2..j {
                rows.push((a + 1..=n).map(|b| e(a, b)).collect::<Result<Vec<_>>>()?);
            }
            let mut xj_row = (j + 1..=k).map(|b| e(j, b)).collect::<Result<Vec<_>>>()?;
            // x_1 x_b lies in I only from b = i on
            for b in k + 1..=n {
                let a = if b < i { j - 1 } else { 1 };
                xj_row.push(c3(a, j, b)?);
            }
            rows.push(xj_row);
            (1..=n - 2)
                .map(|t| {
                    let mut set = diagonals(n, &rows, t);
                    let m = n + j - t;
                    if (i..=n).contains(&m) {
                        set.push(e(1, m)?);
                    }
                    Ok(set)
                })
                .collect::<Result<_>>()?
        }
        WitnessCase::J2BigRowIgt3 => {
            // second row x2x3..x2xk, x1x2x_{k+1}..x1x2xn read from the right;
            // when k = n its last cell is x2xn itself
            let mut sets = Vec::new();
            for t in 1..=n - 2 {
                let mut set = Vec::new();
                if (2..=n - i + 2).contains(&t) {
                    set.push(e(1, n + 2 - t)?);
                }
                if t <= n - k {
                    set.push(c3(1, 2, n + 1 - t)?);
                } else {
                    set.push(e(2, n + 1 - t)?);
                }
                sets.push(set);
            }
            sets
        }
        WitnessCase::J2BigRowI3 => {
            let mut sets = vec![vec![e(1, 3)?]];
            for t in 2..=n - 2 {
                let second = if t < k { e(2, t + 1)? } else { c3(1, 2, t + 1)? };
                sets.push(vec![e(1, t + 2)?, second]);
            }
            sets
        }
    };
    SvFamily::new(n, sets)
}

/// Builds and checks the SV certificate for `L(u, v)`.
///
/// The family has exactly `projdim(S/I)` sets and is returned only if it
/// passes [`verify_sv`]; anything else is a construction error.
pub fn sv_lex_witness(seg: &LexSegmentIdeal) -> Result<SvCertificate> {
    let (norm, shift) = seg.normalize()?;
    let case = classify(&norm)?.witness_case;
    let family = lex_family(&norm, case)?.shift_up(shift)?;
    let projdim = invariants(seg)?.projdim;
    if family.len() != projdim {
        return Err(Error::Construction(format!(
            "{case} family for {seg} has {} sets, projdim is {projdim}",
            family.len()
        )));
    }
    let cert = SvCertificate::checked(family, seg.ideal());
    if let Verdict::Failed(reason) = &cert.verdict {
        return Err(Error::Construction(format!("{case} family for {seg} fails: {reason}")));
    }
    Ok(cert)
}

/// How a dual witness was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DualMethod {
    /// `I* = (x_1, x_i ... x_k)` when `j = 1`.
    #[serde(rename = "CI_J1")]
    CiJ1,
    /// Two generators up to radical found by search.
    #[serde(rename = "CM_SEARCH")]
    CmSearch,
    #[serde(rename = "THREE_ELEMENT")]
    ThreeElement,
}

/// Search limits for two-element radical generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualSearchConfig {
    /// Upper bound on Gröbner-checked partitions.
    pub max_partitions: usize,
    pub groebner: GroebnerConfig,
}

impl Default for DualSearchConfig {
    fn default() -> Self {
        DualSearchConfig { max_partitions: 4096, groebner: GroebnerConfig::default() }
    }
}

/// Polynomials generating `I*` up to radical.
#[derive(Clone, Debug)]
pub struct DualWitness<F: Field> {
    pub target: MonomialIdeal,
    pub method: DualMethod,
    pub polys: Vec<Polynomial<F>>,
    /// The two-element part: `f1, f2` themselves for two-element witnesses,
    /// the witness for `J*` in the three-element case.
    pub f1: Polynomial<F>,
    pub f2: Polynomial<F>,
    /// SV family behind `f1, f2` when one was found.
    pub family: Option<SvFamily>,
    /// `x_j` and `Π = x_{j+1} ... x_k` for the three-element form.
    pub xj: Option<SquarefreeMonomial>,
    pub pi: Option<SquarefreeMonomial>,
    pub verdict: Verdict,
    pub search_log: Vec<String>,
}

/// For a normalized segment with `j >= 3` and `i <= j + 1`, a pair built
/// from the components of `V(f1)`: the hyperplanes `x_c` for the dominating
/// vertices `c` of the graph of `I` (`2 <= c < j`, and `c = j` when `i <= j`)
/// and the binomial hypersurface `B = x_1...x_j + x_{j+1}...x_n`.
/// `f2` restricts to a monomial on each component:
/// `f2 = x_1...x_{j-1} x_{j+1}...x_k + B * sum_c Y_c`, where `Y_c` is the
/// product of `x_b`, `b <= j`, over `b != c` and, when `c < i`, `b != 1`.
/// None of these pairs are sums of generators: SV with two sets has no
/// solution here.
fn component_pair<F: Field>(seg: &LexSegmentIdeal) -> Result<Option<(Polynomial<F>, Polynomial<F>)>> {
    let n = seg.n();
    let (i, j, k) = (seg.i(), seg.j(), seg.k());
    if j < 3 || i > j + 1 {
        return Ok(None);
    }
    let sq = |vars: Vec<usize>| -> Result<Polynomial<F>> {
        Polynomial::<F>::from_squarefree(&SquarefreeMonomial::new(n, &vars)?)
    };
    let b = sq((1..=j).collect())?.add(&sq((j + 1..=n).collect())?);
    let hyper: Vec<usize> = (2..j).chain((i <= j).then_some(j)).collect();
    let f1 = sq(hyper)?.mul(&b);
    let chi = sq((1..j).chain(j + 1..=k).collect())?;
    let mut y = Polynomial::<F>::zero(n)?;
    for c in 2..j {
        y = y.add(&sq((1..=j).filter(|&t| t != c && !(t == 1 && c < i)).collect())?);
    }
    let f2 = chi.add(&b.mul(&y));
    Ok(Some((f1, f2)))
}

/// `f1`, `f2`, the SV family if that is how they were found, and the verdict.
type SearchHit<F> = (Polynomial<F>, Polynomial<F>, Option<SvFamily>, Verdict);

/// Finds `f1, f2` with `sqrt(f1, f2) = target`: first SV families
/// `A_1 = {g}`, `A_2 = G(target) \ {g}`, then the `candidate` pair if any,
/// then two-block partitions of `G(target)`. The last two are checked by
/// Gröbner.
fn two_element_search<F: Field>(
    target: &MonomialIdeal,
    candidate: Option<(Polynomial<F>, Polynomial<F>)>,
    config: &DualSearchConfig,
    log: &mut Vec<String>,
) -> Result<SearchHit<F>> {
    let n = target.n();
    let gens = target.gens();
    if gens.len() < 2 {
        return Err(Error::Construction(format!("{target} has fewer than two generators")));
    }
    for (t, g) in gens.iter().enumerate() {
        let rest: Vec<_> = gens.iter().enumerate().filter(|&(s, _)| s != t).map(|(_, m)| *m).collect();
        let family = SvFamily::new(n, vec![vec![*g], rest])?;
        match verify_sv(&family, target) {
            Ok(()) => {
                log.push(format!("SV pivot {g}: ok"));
                let sums = family.sums::<F>()?;
                return Ok((sums[0].clone(), sums[1].clone(), Some(family), Verdict::SvVerified));
            }
            Err(f) => log.push(format!("SV pivot {g}: {f}")),
        }
    }
    if let Some((f1, f2)) = candidate {
        let check = radical_equals_ideal(&[f1.clone(), f2.clone()], target, &config.groebner)?;
        log.push(format!("component pair {f1} | {f2}: {check:?}"));
        if check.is_equal() {
            return Ok((f1, f2, None, Verdict::GroebnerVerified));
        }
    }
    let blocks = gens.len() - 1;
    let total = if blocks >= 63 { usize::MAX } else { (1usize << blocks) - 1 };
    if total > config.max_partitions {
        log.push(format!("partition search skipped: {total} partitions exceed the cap {}", config.max_partitions));
    } else {
        // gens[0] always sits in the first block; `mask` picks the rest of it
        for mask in 0..total {
            let (mut p1, mut p2) = (vec![gens[0]], Vec::new());
            for (t, g) in gens[1..].iter().enumerate() {
                if mask & (1 << t) != 0 {
                    p1.push(*g);
                } else {
                    p2.push(*g);
                }
            }
            let f1 = Polynomial::<F>::sum_of(n, &p1)?;
            let f2 = Polynomial::<F>::sum_of(n, &p2)?;
            let check = radical_equals_ideal(&[f1.clone(), f2.clone()], target, &config.groebner)?;
            log.push(format!("partition {f1} | {f2}: {check:?}"));
            if check.is_equal() {
                return Ok((f1, f2, None, Verdict::GroebnerVerified));
            }
        }
    }
    Err(Error::Unresolved { log: log.join("\n") })
}

/// Witness for `ara(I*) = projdim(S/I*)`, with `|polys| = dual_projdim`.
pub fn dual_witness<F: Field>(seg: &LexSegmentIdeal, config: &DualSearchConfig) -> Result<DualWitness<F>> {
    let (norm, shift) = seg.normalize()?;
    let w = dual_witness_normalized::<F>(&norm, config)?;
    if shift == 0 {
        return Ok(w);
    }
    let lift = |p: &Polynomial<F>| p.shift_up(shift);
    Ok(DualWitness {
        target: w.target.shift_up(shift)?,
        method: w.method,
        polys: w.polys.iter().map(lift).collect::<Result<_>>()?,
        f1: lift(&w.f1)?,
        f2: lift(&w.f2)?,
        family: w.family.map(|f| f.shift_up(shift)).transpose()?,
        xj: w.xj.map(|m| m.shift_up(shift)).transpose()?,
        pi: w.pi.map(|m| m.shift_up(shift)).transpose()?,
        verdict: w.verdict,
        search_log: w.search_log,
    })
}

fn dual_witness_normalized<F: Field>(seg: &LexSegmentIdeal, config: &DualSearchConfig) -> Result<DualWitness<F>> {
    let n = seg.n();
    let (i, j, k) = (seg.i(), seg.j(), seg.k());
    let target = alexander_dual(&seg.ideal())?;
    let mut log = Vec::new();

    if j == 1 {
        let x1 = SquarefreeMonomial::var(n, 1)?;
        let prod = SquarefreeMonomial::new(n, &(i..=k).collect::<Vec<_>>())?;
        let family = SvFamily::new(n, vec![vec![x1], vec![prod]])?;
        let verdict = match verify_sv(&family, &target) {
            Ok(()) => Verdict::SvVerified,
            Err(f) => Verdict::Failed(f.to_string()),
        };
        let sums = family.sums::<F>()?;
        return Ok(DualWitness {
            target,
            method: DualMethod::CiJ1,
            polys: sums.clone(),
            f1: sums[0].clone(),
            f2: sums[1].clone(),
            family: Some(family),
            xj: None,
            pi: None,
            verdict,
            search_log: log,
        });
    }

    if i <= j + 1 || k == n {
        let (f1, f2, family, verdict) = two_element_search::<F>(&target, component_pair::<F>(seg)?, config, &mut log)?;
        return Ok(DualWitness {
            target,
            method: DualMethod::CmSearch,
            polys: vec![f1.clone(), f2.clone()],
            f1,
            f2,
            family,
            xj: None,
            pi: None,
            verdict,
            search_log: log,
        });
    }

    // I* = J* ∩ (x_j, Π) with J = L(x_1 x_i, x_{j-1} x_n)
    let sub = LexSegmentIdeal::new(n, seg.u(), SquarefreeMonomial::edge(n, j - 1, n)?)?;
    let inner = dual_witness_normalized::<F>(&sub, config)?;
    log.push(format!("J = {sub}: {:?} via {}", inner.method, inner.verdict));
    log.extend(inner.search_log.iter().map(|l| format!("  {l}")));
    let xj_m = SquarefreeMonomial::var(n, j)?;
    let pi_m = SquarefreeMonomial::new(n, &(j + 1..=k).collect::<Vec<_>>())?;
    let xj = Polynomial::<F>::from_squarefree(&xj_m)?;
    let pi = Polynomial::<F>::from_squarefree(&pi_m)?;
    let (f1, f2) = (inner.f1, inner.f2);
    let polys = vec![xj.mul(&f1), xj.mul(&f2).add(&pi.mul(&f1)), pi.mul(&f2)];
    let mut w = DualWitness {
        target,
        method: DualMethod::ThreeElement,
        polys,
        f1,
        f2,
        family: inner.family,
        xj: Some(xj_m),
        pi: Some(pi_m),
        verdict: Verdict::Failed("unchecked".into()),
        search_log: log,
    };
    w.verdict = if !inner.verdict.passed() {
        inner.verdict
    } else if quadratic_root_check(&w) {
        Verdict::RootIdentityVerified
    } else {
        Verdict::Failed("quadratic root identity does not hold".into())
    };
    Ok(w)
}

/// For a three-element witness `p0, p1, p2` built from `f1, f2`, checks
/// that `a = x_j f2` and `b = Π f1` are both roots of `T^2 - p1 T + p0 p2`.
/// This is what puts `x_j f2` and `Π f1` into `sqrt(p0, p1, p2)`.
pub fn quadratic_root_check<F: Field>(w: &DualWitness<F>) -> bool {
    let (Some(xj), Some(pi)) = (w.xj, w.pi) else {
        return false;
    };
    if w.method != DualMethod::ThreeElement || w.polys.len() != 3 {
        return false;
    }
    let (Ok(xj), Ok(pi)) = (Polynomial::<F>::from_squarefree(&xj), Polynomial::<F>::from_squarefree(&pi)) else {
        return false;
    };
    let a = xj.mul(&w.f2);
    let b = pi.mul(&w.f1);
    let constant = w.polys[0].mul(&w.polys[2]);
    let root = |r: &Polynomial<F>| r.mul(r).sub(&w.polys[1].mul(r)).add(&constant).is_zero();
    root(&a) && root(&b)
}

/// Gröbner check `sqrt(polys) == I*`.
pub fn verify_dual<F: Field>(w: &DualWitness<F>, config: &GroebnerConfig) -> Result<RadicalCheck> {
    radical_equals_ideal(&w.polys, &w.target, config)
}

/// Field-independent, serializable view of a [`DualWitness`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualReport {
    pub field: FieldKind,
    pub target: MonomialIdeal,
    pub method: DualMethod,
    /// Polynomials as text, e.g. `x1x3x4`.
    pub sums: Vec<String>,
    pub polys: Vec<Vec<TermJson>>,
    pub f1: String,
    pub f2: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<SquarefreeMonomialText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadratic_root_check: Option<bool>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groebner: Option<GroebnerJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub search_log: Vec<String>,
}

/// A monomial written as `x2x3`.
pub type SquarefreeMonomialText = String;

impl DualReport {
    /// Whether every verification that was run succeeded.
    pub fn passed(&self) -> bool {
        self.verdict.passed()
            && self.quadratic_root_check != Some(false)
            && self.groebner.as_ref().is_none_or(|g| g.verdict.passed())
    }
}

/// Builds the dual witness over `field`, optionally confirming it by Gröbner.
pub fn dual_report(
    seg: &LexSegmentIdeal,
    field: FieldKind,
    config: &DualSearchConfig,
    groebner: bool,
) -> Result<DualReport> {
    with_field!(field, F => {
        let w = dual_witness::<F>(seg, config)?;
        let g = if groebner {
            let check = verify_dual(&w, &config.groebner)?;
            Some(GroebnerJson {
                field,
                verdict: if check.is_equal() { Verdict::GroebnerVerified } else { Verdict::Failed(format!("{check:?}")) },
            })
        } else {
            None
        };
        Ok(DualReport {
            field,
            target: w.target.clone(),
            method: w.method,
            sums: w.polys.iter().map(|p| p.to_string()).collect(),
            polys: w.polys.iter().map(|p| p.to_json_terms()).collect(),
            f1: w.f1.to_string(),
            f2: w.f2.to_string(),
            pi: w.pi.map(|m| m.to_string()),
            quadratic_root_check: (w.method == DualMethod::ThreeElement).then(|| quadratic_root_check(&w)),
            verdict: w.verdict.clone(),
            groebner: g,
            search_log: w.search_log.clone(),
        })
    })
}

/// Re-checks a serialized dual witness by Gröbner over its recorded field.
pub fn verify_dual_report(report: &DualReport, config: &GroebnerConfig) -> Result<RadicalCheck> {
    let n = report.target.n();
    with_field!(report.field, F => {
        let polys = report.polys.iter().map(|p| Polynomial::<F>::from_json_terms(n, p)).collect::<Result<Vec<_>>>()?;
        radical_equals_ideal(&polys, &report.target, config)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type K = Fp<32003>;

    fn sq(n: usize, s: &str) -> SquarefreeMonomial {
        SquarefreeMonomial::parse(s, n).unwrap()
    }

    fn seg(n: usize, u: &str, v: &str) -> LexSegmentIdeal {
        LexSegmentIdeal::parse(n, u, v).unwrap()
    }

    fn family(n: usize, sets: &[&[&str]]) -> SvFamily {
        SvFamily::new(n, sets.iter().map(|s| s.iter().map(|m| sq(n, m)).collect()).collect()).unwrap()
    }

    fn as_sets(f: &SvFamily) -> Vec<Vec<String>> {
        f.sets()
            .iter()
            .map(|s| {
                let mut v: Vec<String> = s.iter().map(|m| m.to_string()).collect();
                v.sort();
                v
            })
            .collect()
    }

    fn expect(sets: &[&[&str]]) -> Vec<Vec<String>> {
        sets.iter()
            .map(|s| {
                let mut v: Vec<String> = s.iter().map(|m| m.to_string()).collect();
                v.sort();
                v
            })
            .collect()
    }

    #[test]
    fn case1_family_checks() {
        let s = seg(6, "x1x4", "x3x4");
        let f = family(6, &[&["x2x5"], &["x2x4", "x1x5"], &["x2x6", "x1x4"], &["x2x3", "x1x6", "x3x4"]]);
        assert_eq!(verify_sv(&f, &s.ideal()), Ok(()));
        let cert = sv_lex_witness(&s).unwrap();
        assert_eq!(cert.family, f);
    }

    #[test]
    fn sv_failures() {
        let s = seg(6, "x1x4", "x3x4");
        let bad1 = family(6, &[&["x2x5", "x2x4"], &["x1x5"]]);
        assert_eq!(verify_sv(&bad1, &s.ideal()), Err(SvFailure::Sv1 { size: 2 }));
        let missing = family(6, &[&["x2x5"], &["x2x4", "x1x5"], &["x2x6", "x1x4"], &["x1x6", "x3x4"]]);
        assert_eq!(verify_sv(&missing, &s.ideal()), Err(SvFailure::Sv2 { missing: sq(6, "x2x3") }));
        let sv3 = family(6, &[&["x2x3"], &["x1x4", "x1x5", "x1x6", "x2x4", "x2x5", "x2x6", "x3x4"]]);
        assert!(matches!(verify_sv(&sv3, &s.ideal()), Err(SvFailure::Sv3 { set: 2, .. })));
        let outside = family(6, &[&["x5x6"]]);
        assert!(matches!(verify_sv(&outside, &s.ideal()), Err(SvFailure::NotInIdeal { .. })));
        assert_eq!(verify_sv(&SvFamily::new(6, vec![]).unwrap(), &s.ideal()), Err(SvFailure::EmptyFamily));
    }

    #[test]
    fn j2_i3_example() {
        let cert = sv_lex_witness(&seg(5, "x1x3", "x2x4")).unwrap();
        assert_eq!(as_sets(&cert.family), expect(&[&["x1x3"], &["x1x4", "x2x3"], &["x1x5", "x2x4"]]));
        assert_eq!(cert.family.sum_strings(), ["x1x3", "x1x4+x2x3", "x1x5+x2x4"]);
    }

    #[test]
    fn case2_example() {
        let cert = sv_lex_witness(&seg(6, "x1x5", "x3x4")).unwrap();
        assert_eq!(
            as_sets(&cert.family),
            expect(&[&["x2x6"], &["x2x5", "x1x3x6"], &["x2x4", "x1x3x5", "x1x6"], &["x2x3", "x3x4", "x1x5"]])
        );
    }

    #[test]
    fn pd_n1_example() {
        let cert = sv_lex_witness(&seg(5, "x1x4", "x3x5")).unwrap();
        assert_eq!(cert.r(), 4);
        assert_eq!(cert.family.sets()[0], vec![sq(5, "x1x2x3x4x5")]);
    }

    #[test]
    fn unnormalized_witness_lives_in_original_ring() {
        let s = seg(6, "x2x4", "x3x5");
        let cert = sv_lex_witness(&s).unwrap();
        assert_eq!(cert.target, s.ideal());
        assert_eq!(cert.r(), 3);
        assert!(cert.family.sets().iter().flatten().all(|m| !m.contains(1)));
    }

    #[test]
    fn certificate_json_round_trip() {
        let mut cert = sv_lex_witness(&seg(5, "x1x3", "x2x4")).unwrap();
        cert.groebner_verify(FieldKind::Gf32003, &GroebnerConfig::default()).unwrap();
        let json = serde_json::to_string(&cert.to_json()).unwrap();
        assert!(json.starts_with(r#"{"target":{"n":5,"gens":[[1,3],[1,4],[1,5],[2,3],[2,4]]},"sets":[[[1,3]],[[1,4],[2,3]],[[1,5],[2,4]]],"sums":["x1x3","x1x4+x2x3","x1x5+x2x4"],"verdict":"sv_verified""#));
        let back: CertificateJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.family().unwrap(), cert.family);
        let mut tampered = back.clone();
        tampered.sums[1] = "x1x4".into();
        assert!(tampered.family().is_err());
    }

    #[test]
    fn dual_j1() {
        let w = dual_witness::<K>(&seg(5, "x1x3", "x1x5"), &DualSearchConfig::default()).unwrap();
        assert_eq!(w.method, DualMethod::CiJ1);
        let shown: Vec<String> = w.polys.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["x1", "x3x4x5"]);
        assert_eq!(w.verdict, Verdict::SvVerified);
    }

    #[test]
    fn dual_cm_search_example() {
        let w = dual_witness::<K>(&seg(5, "x1x3", "x2x4"), &DualSearchConfig::default()).unwrap();
        assert_eq!(w.method, DualMethod::CmSearch);
        let shown: Vec<String> = w.polys.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["x1x3x4", "x3x4x5+x1x2"]);
        assert!(verify_dual(&w, &GroebnerConfig::default()).unwrap().is_equal());
    }

    #[test]
    fn dual_component_pair_example() {
        let w = dual_witness::<K>(&seg(5, "x1x4", "x3x4"), &DualSearchConfig::default()).unwrap();
        assert_eq!(w.method, DualMethod::CmSearch);
        assert_eq!(w.verdict, Verdict::GroebnerVerified);
        let shown: Vec<String> = w.polys.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["x1x2^2x3+x2x4x5", "x1x2x3^2+x1x2x4+x3x4x5"]);
        assert!(w.search_log.iter().any(|l| l.starts_with("component pair")));
        // no SV pivot works for this ideal
        assert!(w.search_log.iter().filter(|l| l.starts_with("SV pivot")).all(|l| !l.ends_with("ok")));
    }

    #[test]
    fn dual_three_element_example() {
        let w = dual_witness::<K>(&seg(6, "x1x5", "x3x4"), &DualSearchConfig::default()).unwrap();
        assert_eq!(w.method, DualMethod::ThreeElement);
        assert_eq!(w.polys.len(), 3);
        assert_eq!(w.xj, Some(sq(6, "x3")));
        assert_eq!(w.pi, Some(sq(6, "x4")));
        assert!(quadratic_root_check(&w));
        assert_eq!(w.verdict, Verdict::RootIdentityVerified);
        assert!(verify_dual(&w, &GroebnerConfig::default()).unwrap().is_equal());

        let mut perturbed = w.clone();
        perturbed.f2 = perturbed.f2.add(&Polynomial::from_squarefree(&sq(6, "x6")).unwrap());
        assert!(!quadratic_root_check(&perturbed));
    }

    #[test]
    fn degree_grouping_on_arbitrary_ideal() {
        let n = 5;
        let i = MonomialIdeal::minimalize(n, [sq(n, "x1x2x3"), sq(n, "x4x5"), sq(n, "x2x4")]).unwrap();
        let f = degree_grouping_family(&i).unwrap();
        assert_eq!(f.len(), n - 2 + 1);
        assert_eq!(verify_sv(&f, &i), Ok(()));
    }
}
