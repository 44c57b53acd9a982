//! Brute-force oracles built on the Stanley–Reisner correspondence.
//!
//! For a squarefree monomial ideal `I` the complex `Δ` has as faces the
//! vertex sets whose monomial is not in `I`. Everything here enumerates
//! subsets of `[n]`, so the cost is exponential in `n`; [`OracleConfig`] caps it.
//!
//! Betti numbers come from Hochster's formula
//! `β_{i,σ}(S/I) = dim_K H̃_{|σ|-i-1}(Δ|σ; K)`, summed over `σ ⊆ [n]` by
//! `|σ|`. Reduced homology is computed from boundary-matrix ranks over `K`;
//! the empty face is included so that `H̃_{-1}` of the empty complex is `K`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldKind, Fp};
use crate::linalg::rank;
use crate::monomial::{MonomialIdeal, SquarefreeMonomial};

/// Caps the number of variables the exponential oracles accept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_vars: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_vars: 12 }
    }
}

impl OracleConfig {
    fn admit(&self, n: usize) -> Result<()> {
        if n > self.max_vars {
            return Err(Error::LimitExceeded { what: "subset-enumeration oracle", size: n, limit: self.max_vars });
        }
        Ok(())
    }
}

/// A simplicial complex on `[n]` given by its facets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<SquarefreeMonomial>,
}

impl SimplicialComplex {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Facets as vertex sets, decreasing lex.
    pub fn facets(&self) -> &[SquarefreeMonomial] {
        &self.facets
    }

    /// Krull dimension of the Stanley–Reisner ring: the largest facet size.
    pub fn krull_dim(&self) -> usize {
        self.facets.iter().map(|f| f.degree()).max().unwrap_or(0)
    }

    pub fn is_face(&self, face: &SquarefreeMonomial) -> bool {
        self.facets.iter().any(|f| face.divides_unchecked(f))
    }
}

/// The Stanley–Reisner complex of a squarefree monomial ideal.
pub fn complex_of(ideal: &MonomialIdeal, config: &OracleConfig) -> Result<SimplicialComplex> {
    let n = ideal.n();
    config.admit(n)?;
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut facets = Vec::new();
    for face in 0..=full {
        if ideal.contains_bits(face) {
            continue;
        }
        let maximal = (0..n).all(|t| face & (1 << t) != 0 || ideal.contains_bits(face | (1 << t)));
        if maximal {
            facets.push(SquarefreeMonomial::from_bits_unchecked(n, face));
        }
    }
    facets.sort_by(|a, b| b.cmp(a));
    Ok(SimplicialComplex { n, facets })
}

/// Minimal primes of `I`, each encoded by its set of variables. These are
/// the complements of the facets of `Δ`.
pub fn minimal_primes(ideal: &MonomialIdeal, config: &OracleConfig) -> Result<Vec<SquarefreeMonomial>> {
    let n = ideal.n();
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut primes: Vec<SquarefreeMonomial> = complex_of(ideal, config)?
        .facets
        .iter()
        .map(|f| SquarefreeMonomial::from_bits_unchecked(n, full & !f.bits()))
        .collect();
    primes.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    Ok(primes)
}

/// `height(I)`: the smallest minimal prime.
pub fn height(ideal: &MonomialIdeal, config: &OracleConfig) -> Result<usize> {
    Ok(minimal_primes(ideal, config)?.iter().map(|p| p.degree()).min().unwrap_or(0))
}

/// Connectivity of the 1-skeleton of `Δ`: vertices `1..n`, edges the 2-subsets
/// that are faces.
pub fn skeleton1_connected(ideal: &MonomialIdeal) -> bool {
    let n = ideal.n();
    let vertices: Vec<usize> = (0..n).filter(|&v| !ideal.contains_bits(1 << v)).collect();
    let Some(&start) = vertices.first() else {
        return true;
    };
    let mut seen = 1u64 << start;
    let mut stack = vec![start];
    while let Some(a) = stack.pop() {
        for &b in &vertices {
            if seen & (1 << b) == 0 && !ideal.contains_bits((1 << a) | (1 << b)) {
                seen |= 1 << b;
                stack.push(b);
            }
        }
    }
    vertices.iter().all(|&v| seen & (1 << v) != 0)
}

/// Every minimal generator owns a variable that divides no other generator.
/// This makes the Taylor resolution minimal.
pub fn taylor_minimal(ideal: &MonomialIdeal) -> bool {
    let gens = ideal.gens();
    gens.iter().enumerate().all(|(t, g)| {
        let others = gens.iter().enumerate().filter(|&(s, _)| s != t).fold(0u64, |acc, (_, h)| acc | h.bits());
        g.bits() & !others != 0
    })
}

/// Graded Betti numbers `β_{i,d}(S/I)` over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    field: FieldKind,
    entries: BTreeMap<(usize, usize), usize>,
}

#[derive(Serialize, Deserialize)]
struct BettiEntry {
    i: usize,
    d: usize,
    beta: usize,
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    field: FieldKind,
    entries: Vec<BettiEntry>,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BettiJson {
            field: self.field,
            entries: self.entries.iter().map(|(&(i, d), &beta)| BettiEntry { i, d, beta }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BettiJson::deserialize(d)?;
        Ok(BettiTable { field: raw.field, entries: raw.entries.into_iter().map(|e| ((e.i, e.d), e.beta)).collect() })
    }
}

impl BettiTable {
    pub fn field(&self) -> FieldKind {
        self.field
    }

    /// Nonzero entries keyed by `(i, d)`.
    pub fn entries(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.entries
    }

    pub fn get(&self, i: usize, d: usize) -> usize {
        self.entries.get(&(i, d)).copied().unwrap_or(0)
    }

    /// `β_i = sum over d of β_{i,d}`.
    pub fn total(&self, i: usize) -> usize {
        self.entries.range((i, 0)..=(i, usize::MAX)).map(|(_, b)| b).sum()
    }

    pub fn projdim(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// `reg(I) = max{d - i : β_{i,d}(S/I) ≠ 0, i ≥ 1} + 1`, i.e. `reg(S/I) + 1`.
    /// `None` for the zero ideal.
    pub fn reg_ideal(&self) -> Option<usize> {
        self.entries.keys().filter(|&&(i, _)| i >= 1).map(|&(i, d)| d - i + 1).max()
    }

    /// Same numbers, ignoring which field produced them.
    pub fn same_numbers(&self, other: &BettiTable) -> bool {
        self.entries == other.entries
    }
}

fn boundary_rank<F: Field>(lower: &[u64], upper: &[u64]) -> usize {
    if lower.is_empty() || upper.is_empty() {
        return 0;
    }
    let index: HashMap<u64, usize> = lower.iter().enumerate().map(|(p, &f)| (f, p)).collect();
    // rows = faces of the upper dimension (transpose has the same rank)
    let rows: Vec<Vec<F>> = upper
        .iter()
        .map(|&face| {
            let mut row = vec![F::zero(); lower.len()];
            let mut bits = face;
            let mut sign = F::one();
            while bits != 0 {
                let v = bits & bits.wrapping_neg();
                row[index[&(face & !v)]] = sign.clone();
                sign = -sign;
                bits &= bits - 1;
            }
            row
        })
        .collect();
    rank(rows)
}

/// Reduced Betti numbers `dim H̃_q` of the complex with the given faces,
/// indexed by `q + 1` (so slot 0 is `H̃_{-1}`).
fn reduced_homology<F: Field>(faces_by_size: &[Vec<u64>]) -> Vec<usize> {
    let top = faces_by_size.len();
    // ranks[s] = rank of the boundary from size-s faces to size-(s-1) faces
    let mut ranks = vec![0usize; top + 1];
    for s in 1..top {
        ranks[s] = boundary_rank::<F>(&faces_by_size[s - 1], &faces_by_size[s]);
    }
    (0..top).map(|s| faces_by_size[s].len() - ranks[s] - ranks[s + 1]).collect()
}

/// Betti table of `S/I` over `F` by Hochster's formula.
pub fn hochster_betti<F: Field>(ideal: &MonomialIdeal, field: FieldKind, config: &OracleConfig) -> Result<BettiTable> {
    let n = ideal.n();
    config.admit(n)?;
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut entries: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for sigma in 0..=full {
        let size = sigma.count_ones() as usize;
        let mut faces_by_size: Vec<Vec<u64>> = vec![Vec::new(); size + 1];
        // submasks of sigma, including the empty face
        let mut sub = sigma;
        loop {
            if !ideal.contains_bits(sub) {
                faces_by_size[sub.count_ones() as usize].push(sub);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & sigma;
        }
        while faces_by_size.last().is_some_and(Vec::is_empty) {
            faces_by_size.pop();
        }
        for faces in &mut faces_by_size {
            faces.sort_unstable();
        }
        for (slot, h) in reduced_homology::<F>(&faces_by_size).into_iter().enumerate() {
            if h == 0 {
                continue;
            }
            // slot = q + 1, i = |σ| - q - 1
            let i = size - slot;
            *entries.entry((i, size)).or_insert(0) += h;
        }
    }
    Ok(BettiTable { field, entries })
}

/// [`hochster_betti`] with the field chosen at runtime.
pub fn hochster_betti_in(ideal: &MonomialIdeal, field: FieldKind, config: &OracleConfig) -> Result<BettiTable> {
    match field {
        FieldKind::Gf2 => hochster_betti::<Fp<2>>(ideal, field, config),
        FieldKind::Gf32003 => hochster_betti::<Fp<32003>>(ideal, field, config),
        FieldKind::Rational => hochster_betti::<Ratio<BigInt>>(ideal, field, config),
    }
}

/// Invariants of `S/I` computed without any closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleInvariants {
    pub dim: usize,
    pub depth: usize,
    pub projdim: usize,
    /// `reg(I)`; 0 for the zero ideal.
    pub reg: usize,
    pub height: usize,
    pub cm: bool,
    pub linear_resolution: bool,
    pub skeleton_connected: bool,
    pub betti: BettiTable,
}

/// Dimension from the facets, projdim and regularity from the Betti table,
/// depth by Auslander–Buchsbaum.
pub fn oracle_invariants(ideal: &MonomialIdeal, field: FieldKind, config: &OracleConfig) -> Result<OracleInvariants> {
    let n = ideal.n();
    let complex = complex_of(ideal, config)?;
    let betti = hochster_betti_in(ideal, field, config)?;
    let dim = complex.krull_dim();
    let projdim = betti.projdim();
    let depth = n - projdim;
    let reg = betti.reg_ideal().unwrap_or(0);
    let linear_resolution = match ideal.indeg() {
        Some(d) => betti.entries.keys().filter(|&&(i, _)| i >= 1).all(|&(i, deg)| deg == i + d - 1),
        None => false,
    };
    Ok(OracleInvariants {
        dim,
        depth,
        projdim,
        reg,
        height: n - dim,
        cm: dim == depth,
        linear_resolution,
        skeleton_connected: skeleton1_connected(ideal),
        betti,
    })
}
