//! Squarefree monomials and squarefree monomial ideals.
//!
//! A squarefree monomial in `K[x_1, ..., x_n]` is stored as a 64-bit index
//! set, so `n <= 64`. Variable indices are 1-based throughout the public API.
//!
//! The lexicographic order used here is the one with `x_1 > x_2 > ... > x_n`:
//! at the first variable where two monomials differ, the one containing it is
//! larger. On degree-2 monomials this gives `x_a x_b > x_c x_d` iff `a < c`, or
//! `a == c` and `b < d`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_VARS: usize = 64;

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VARS {
        return Err(Error::TooManyVariables(n));
    }
    Ok(())
}

/// A squarefree monomial `x_{a_1} ... x_{a_d}` in `n` variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SquarefreeMonomial {
    bits: u64,
    n: u8,
}

impl SquarefreeMonomial {
    /// Builds a monomial from 1-based variable indices. Repeated indices are
    /// rejected since the result would not be squarefree.
    pub fn new(n: usize, vars: &[usize]) -> Result<Self> {
        check_n(n)?;
        let mut bits = 0u64;
        for &v in vars {
            if v == 0 || v > n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            let b = 1u64 << (v - 1);
            if bits & b != 0 {
                return Err(Error::Parse(format!("x{v} repeated in a squarefree monomial")));
            }
            bits |= b;
        }
        Ok(SquarefreeMonomial { bits, n: n as u8 })
    }

    /// Builds a monomial from a bitmask where bit `t` stands for `x_{t+1}`.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        check_n(n)?;
        if n < 64 && bits >> n != 0 {
            return Err(Error::IndexOutOfRange { index: 64 - bits.leading_zeros() as usize, n });
        }
        Ok(SquarefreeMonomial { bits, n: n as u8 })
    }

    pub(crate) fn from_bits_unchecked(n: usize, bits: u64) -> Self {
        debug_assert!(n <= MAX_VARS && (n == 64 || bits >> n == 0));
        SquarefreeMonomial { bits, n: n as u8 }
    }

    pub fn unit(n: usize) -> Result<Self> {
        Self::from_bits(n, 0)
    }

    pub fn var(n: usize, index: usize) -> Result<Self> {
        Self::new(n, &[index])
    }

    /// `x_a x_b` with `a != b`.
    pub fn edge(n: usize, a: usize, b: usize) -> Result<Self> {
        Self::new(n, &[a, b])
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn degree(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_unit(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, index: usize) -> bool {
        (1..=64).contains(&index) && self.bits & (1u64 << (index - 1)) != 0
    }

    /// Variable indices in increasing order.
    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(t + 1)
            }
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.vars().collect()
    }

    /// Smallest variable index, `min(w)`.
    pub fn min_var(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize + 1)
    }

    /// Largest variable index, `max(w)`.
    pub fn max_var(&self) -> Option<usize> {
        (self.bits != 0).then(|| 64 - self.bits.leading_zeros() as usize)
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch { left: self.n(), right: other.n() });
        }
        Ok(())
    }

    /// Lexicographic comparison with `x_1 > ... > x_n`.
    pub fn lex_compare(&self, other: &Self) -> Result<Ordering> {
        self.same_ring(other)?;
        Ok(self.lex_cmp_bits(other))
    }

    fn lex_cmp_bits(&self, other: &Self) -> Ordering {
        let diff = self.bits ^ other.bits;
        if diff == 0 {
            Ordering::Equal
        } else if self.bits & (diff & diff.wrapping_neg()) != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// `self | other`, i.e. the support of `self` is contained in that of `other`.
    pub fn divides(&self, other: &Self) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    /// Least common multiple; for squarefree monomials this is the support of
    /// the product.
    pub fn lcm(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(SquarefreeMonomial { bits: self.bits | other.bits, n: self.n })
    }

    /// Moves every variable index down by `shift`, into a ring with
    /// `n - shift` variables. Fails if some `x_t` with `t <= shift` occurs.
    pub fn shift_down(&self, shift: usize) -> Result<Self> {
        if shift >= self.n() {
            return Err(Error::InvalidSegment(format!("cannot drop {shift} of {} variables", self.n)));
        }
        if shift > 0 && self.bits & ((1u64 << shift) - 1) != 0 {
            return Err(Error::InvalidSegment(format!("{self} involves one of the first {shift} variables")));
        }
        Ok(SquarefreeMonomial { bits: self.bits >> shift, n: (self.n() - shift) as u8 })
    }

    /// Inverse of [`shift_down`](Self::shift_down).
    pub fn shift_up(&self, shift: usize) -> Result<Self> {
        let n = self.n() + shift;
        check_n(n)?;
        Ok(SquarefreeMonomial { bits: self.bits << shift, n: n as u8 })
    }

    /// Parses `x1x3`, `x1*x3`, `[1,3]`, or `1` (the unit monomial).
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Self::unit(n);
        }
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let idx = inner
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("bad index {t:?} in {s:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            return Self::new(n, &idx);
        }
        let mut idx = Vec::new();
        for factor in s.split(['x', 'X']).skip(1) {
            let digits = factor.trim_end_matches('*').trim();
            let v = digits.parse::<usize>().map_err(|_| Error::Parse(format!("cannot parse monomial {s:?}")))?;
            idx.push(v);
        }
        if idx.is_empty() || !(s.starts_with('x') || s.starts_with('X')) {
            return Err(Error::Parse(format!("cannot parse monomial {s:?}")));
        }
        Self::new(n, &idx)
    }
}

impl PartialOrd for SquarefreeMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ambient size first, then lex. Within one ring this is exactly the lex order.
impl Ord for SquarefreeMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.lex_cmp_bits(other))
    }
}

impl fmt::Display for SquarefreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits == 0 {
            return f.write_str("1");
        }
        for v in self.vars() {
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SquarefreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for SquarefreeMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

/// JSON index array as read from disk; the ambient `n` is supplied separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet(pub Vec<usize>);

impl IndexSet {
    pub fn into_monomial(self, n: usize) -> Result<SquarefreeMonomial> {
        SquarefreeMonomial::new(n, &self.0)
    }
}

impl<'de> Deserialize<'de> for SquarefreeMonomial {
    /// Deserializes `{"n": .., "vars": [..]}`; bare arrays need an
    /// external `n` and go through [`IndexSet`].
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            vars: Vec<usize>,
        }
        let raw = Raw::deserialize(d)?;
        SquarefreeMonomial::new(raw.n, &raw.vars).map_err(serde::de::Error::custom)
    }
}

/// Every squarefree monomial of the given degree in `n` variables, in
/// decreasing lex order.
pub fn all_of_degree(n: usize, degree: usize) -> Result<Vec<SquarefreeMonomial>> {
    check_n(n)?;
    let mut out = Vec::new();
    let mut combo: Vec<usize> = (1..=degree).collect();
    if degree > n {
        return Ok(out);
    }
    loop {
        out.push(SquarefreeMonomial::new(n, &combo)?);
        // next combination in lex order
        let mut t = degree;
        loop {
            if t == 0 {
                return Ok(out);
            }
            t -= 1;
            if combo[t] < n - (degree - 1 - t) {
                combo[t] += 1;
                for s in t + 1..degree {
                    combo[s] = combo[s - 1] + 1;
                }
                break;
            }
        }
    }
}

/// A squarefree monomial ideal, stored by its minimal generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<SquarefreeMonomial>,
}

impl MonomialIdeal {
    /// Reduces `gens` to the divisibility antichain generating the same ideal.
    /// The result is sorted in decreasing lex order and does not depend on
    /// the input order.
    pub fn minimalize(n: usize, gens: impl IntoIterator<Item = SquarefreeMonomial>) -> Result<Self> {
        check_n(n)?;
        let mut all: Vec<SquarefreeMonomial> = Vec::new();
        for g in gens {
            if g.n() != n {
                return Err(Error::AmbientMismatch { left: n, right: g.n() });
            }
            all.push(g);
        }
        // Processing by increasing degree means a generator can only be made
        // redundant by something already kept.
        all.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
        all.dedup();
        let mut kept: Vec<SquarefreeMonomial> = Vec::with_capacity(all.len());
        for g in all {
            if !kept.iter().any(|k| k.divides_unchecked(&g)) {
                kept.push(g);
            }
        }
        kept.sort_by(|a, b| b.cmp(a));
        Ok(MonomialIdeal { n, gens: kept })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::minimalize(n, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Minimal generators `G(I)`, decreasing lex.
    pub fn gens(&self) -> &[SquarefreeMonomial] {
        &self.gens
    }

    /// `mu(I)`, the number of minimal generators.
    pub fn mu(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Initial degree; `None` for the zero ideal.
    pub fn indeg(&self) -> Option<usize> {
        self.gens.iter().map(|g| g.degree()).min()
    }

    /// Ideal membership of a squarefree monomial. Squarefree monomial ideals
    /// are radical, so this is also radical membership.
    pub fn contains(&self, m: &SquarefreeMonomial) -> Result<bool> {
        if m.n() != self.n {
            return Err(Error::AmbientMismatch { left: self.n, right: m.n() });
        }
        Ok(self.contains_bits(m.bits()))
    }

    pub(crate) fn contains_bits(&self, bits: u64) -> bool {
        self.gens.iter().any(|g| g.bits() & !bits == 0)
    }

    /// Relabels into a ring with `shift` extra leading variables.
    pub fn shift_up(&self, shift: usize) -> Result<Self> {
        let gens = self.gens.iter().map(|g| g.shift_up(shift)).collect::<Result<Vec<_>>>()?;
        Self::minimalize(self.n + shift, gens)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (t, g) in self.gens.iter().enumerate() {
            if t > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw<'a> {
            n: usize,
            gens: &'a [SquarefreeMonomial],
        }
        Raw { n: self.n, gens: &self.gens }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            gens: Vec<IndexSet>,
        }
        let raw = Raw::deserialize(d)?;
        let gens = raw
            .gens
            .into_iter()
            .map(|g| g.into_monomial(raw.n))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        MonomialIdeal::minimalize(raw.n, gens).map_err(serde::de::Error::custom)
    }
}

/// Radical membership for squarefree monomial ideals, which are radical.
pub fn monomial_in_radical_trivial(m: &SquarefreeMonomial, ideal: &MonomialIdeal) -> Result<bool> {
    ideal.contains(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize, s: &str) -> SquarefreeMonomial {
        SquarefreeMonomial::parse(s, n).unwrap()
    }

    #[test]
    fn lex_compare_examples() {
        assert_eq!(m(5, "x1x3").lex_compare(&m(5, "x2x3")).unwrap(), Ordering::Greater);
        assert_eq!(m(5, "x1x3").lex_compare(&m(5, "x1x3")).unwrap(), Ordering::Equal);
        assert_eq!(m(5, "x2x4").lex_compare(&m(5, "x2x5")).unwrap(), Ordering::Greater);
        assert!(m(5, "x1x3").lex_compare(&m(4, "x1x3")).is_err());
    }

    #[test]
    fn degree_two_order_matches_enumeration() {
        // Enumerate pairs (a,b) with a<b in the textbook order and check that
        // lex_compare sorts them identically.
        let n = 5;
        let mut expected = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                expected.push(SquarefreeMonomial::edge(n, a, b).unwrap());
            }
        }
        let mut sorted = expected.clone();
        sorted.reverse();
        sorted.sort_by(|x, y| y.lex_compare(x).unwrap());
        assert_eq!(sorted, expected);
        assert_eq!(all_of_degree(n, 2).unwrap(), expected);
        let p = expected.iter().position(|w| *w == m(5, "x2x4")).unwrap();
        let q = expected.iter().position(|w| *w == m(5, "x2x5")).unwrap();
        assert!(p < q);
    }

    #[test]
    fn divisibility() {
        assert!(m(5, "x2x4").divides(&m(5, "x1x2x4")).unwrap());
        assert!(!m(5, "x2x5").divides(&m(5, "x1x2x4")).unwrap());
        assert!(SquarefreeMonomial::unit(5).unwrap().divides(&m(5, "x3")).unwrap());
    }

    #[test]
    fn minimalize_examples() {
        let i = MonomialIdeal::minimalize(3, [m(3, "x1x2"), m(3, "x1x2x3")]).unwrap();
        assert_eq!(i.gens(), &[m(3, "x1x2")]);
        let z = MonomialIdeal::zero(4).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.indeg(), None);
        let seg = ["x1x3", "x1x4", "x1x5", "x2x3", "x2x4"].map(|s| m(5, s));
        let i = MonomialIdeal::minimalize(5, seg).unwrap();
        assert_eq!(i.gens(), &seg);
    }

    #[test]
    fn radical_membership_examples() {
        let i32 = MonomialIdeal::minimalize(3, all_of_degree(3, 2).unwrap()).unwrap();
        assert!(monomial_in_radical_trivial(&m(3, "x1x2x3"), &i32).unwrap());
        let seg = MonomialIdeal::minimalize(5, ["x1x3", "x1x4", "x1x5", "x2x3", "x2x4"].map(|s| m(5, s))).unwrap();
        assert!(!monomial_in_radical_trivial(&m(5, "x5"), &seg).unwrap());
        assert!(monomial_in_radical_trivial(&m(5, "x1x4"), &seg).unwrap());
    }

    #[test]
    fn parsing_forms() {
        assert_eq!(m(5, "x1*x3"), m(5, "x1x3"));
        assert_eq!(m(5, "[1, 3]"), m(5, "x1x3"));
        assert_eq!(m(5, "1"), SquarefreeMonomial::unit(5).unwrap());
        assert_eq!(m(5, "x1x3").to_string(), "x1x3");
        assert!(SquarefreeMonomial::parse("x1x1", 5).is_err());
        assert!(SquarefreeMonomial::parse("x6", 5).is_err());
        assert!(SquarefreeMonomial::parse("y1", 5).is_err());
        assert!(SquarefreeMonomial::parse("x1x", 5).is_err());
        assert!(SquarefreeMonomial::new(65, &[1]).is_err());
    }

    #[test]
    fn json_forms() {
        assert_eq!(serde_json::to_string(&m(5, "x1x3")).unwrap(), "[1,3]");
        let i = MonomialIdeal::minimalize(4, [m(4, "x1x2"), m(4, "x3x4")]).unwrap();
        let s = serde_json::to_string(&i).unwrap();
        assert_eq!(s, r#"{"n":4,"gens":[[1,2],[3,4]]}"#);
        let back: MonomialIdeal = serde_json::from_str(&s).unwrap();
        assert_eq!(back, i);
    }

    #[test]
    fn shifting() {
        let a = m(6, "x2x4");
        let b = a.shift_down(1).unwrap();
        assert_eq!(b, m(5, "x1x3"));
        assert_eq!(b.shift_up(1).unwrap(), a);
        assert!(a.shift_down(2).is_err());
    }

    #[test]
    fn min_max() {
        let w = m(7, "x2x5x6");
        assert_eq!(w.min_var(), Some(2));
        assert_eq!(w.max_var(), Some(6));
        assert_eq!(SquarefreeMonomial::unit(7).unwrap().max_var(), None);
    }
}
