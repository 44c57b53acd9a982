//! Sparse polynomials over a [`Field`].
//!
//! A polynomial in `K[x_1, ..., x_n, t]` keeps its terms sorted by the
//! degree-reverse-lexicographic order with `x_1 > ... > x_n > t`. The extra
//! slot `t` (index `n`) is reserved for the Rabinowitsch variable used by
//! radical membership tests.
//!
//! This term order is what the Gröbner engine works with. It has nothing to do
//! with the lex order on squarefree monomials that defines lexsegments.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::SquarefreeMonomial;

/// Number of exponent slots, including the auxiliary variable.
pub const MAX_SLOTS: usize = 16;

/// An exponent vector, ordered by degree-reverse-lex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_SLOTS],
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_exps(exps: &[u16]) -> Result<Self> {
        if exps.len() > MAX_SLOTS {
            return Err(Error::LimitExceeded { what: "exponent vector", size: exps.len(), limit: MAX_SLOTS });
        }
        let mut m = Monomial::default();
        m.exps[..exps.len()].copy_from_slice(exps);
        m.degree = exps.iter().map(|&e| e as u32).sum();
        Ok(m)
    }

    /// Slot `index` (0-based) raised to `power`.
    pub fn var(index: usize, power: u16) -> Self {
        let mut m = Monomial::default();
        m.exps[index] = power;
        m.degree = power as u32;
        m
    }

    pub fn exps(&self) -> &[u16; MAX_SLOTS] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(&other.exps) {
            *a += *b;
        }
        out.degree += other.degree;
        out
    }

    /// `self / other`; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(&other.exps) {
            *a -= *b;
        }
        out.degree -= other.degree;
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        let mut degree = 0;
        for (a, b) in out.exps.iter_mut().zip(&other.exps) {
            *a = (*a).max(*b);
            degree += *a as u32;
        }
        out.degree = degree;
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    fn from_squarefree(m: &SquarefreeMonomial) -> Self {
        let mut out = Monomial::default();
        for v in m.vars() {
            out.exps[v - 1] = 1;
        }
        out.degree = m.degree() as u32;
        out
    }

    fn write(&self, n: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (slot, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if slot == n {
                f.write_str("t")?;
            } else {
                write!(f, "x{}", slot + 1)?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                if a != b {
                    // smaller power of the last differing variable wins
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// A polynomial in `n` ordinary variables plus the auxiliary slot.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<F> {
    n: usize,
    /// Strictly decreasing in the term order, no zero coefficients.
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(n: usize) -> Result<Self> {
        if n + 1 > MAX_SLOTS {
            return Err(Error::LimitExceeded { what: "polynomial ring", size: n + 1, limit: MAX_SLOTS });
        }
        Ok(Polynomial { n, terms: Vec::new() })
    }

    pub fn constant(n: usize, c: F) -> Result<Self> {
        let mut p = Self::zero(n)?;
        if !c.is_zero() {
            p.terms.push((Monomial::one(), c));
        }
        Ok(p)
    }

    pub fn term(n: usize, m: Monomial, c: F) -> Result<Self> {
        let mut p = Self::zero(n)?;
        if m.exps[n + 1..].iter().any(|&e| e != 0) {
            return Err(Error::LimitExceeded { what: "exponent slot", size: MAX_SLOTS, limit: n + 1 });
        }
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        Ok(p)
    }

    /// The variable `x_index` (1-based).
    pub fn var(n: usize, index: usize) -> Result<Self> {
        if index == 0 || index > n {
            return Err(Error::IndexOutOfRange { index, n });
        }
        Self::term(n, Monomial::var(index - 1, 1), F::one())
    }

    /// The auxiliary variable `t`.
    pub fn aux(n: usize) -> Result<Self> {
        Self::term(n, Monomial::var(n, 1), F::one())
    }

    pub fn from_squarefree(m: &SquarefreeMonomial) -> Result<Self> {
        Self::term(m.n(), Monomial::from_squarefree(m), F::one())
    }

    /// `sum of m` over the given squarefree monomials, all with coefficient 1.
    pub fn sum_of<'a>(n: usize, ms: impl IntoIterator<Item = &'a SquarefreeMonomial>) -> Result<Self> {
        let mut acc = Self::zero(n)?;
        for m in ms {
            if m.n() != n {
                return Err(Error::AmbientMismatch { left: n, right: m.n() });
            }
            acc = acc.add(&Self::from_squarefree(m)?);
        }
        Ok(acc)
    }

    /// Builds from unsorted terms, combining duplicates.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Result<Self> {
        let mut map: HashMap<Monomial, F> = HashMap::new();
        for (m, c) in terms {
            if m.exps[n + 1..].iter().any(|&e| e != 0) {
                return Err(Error::LimitExceeded { what: "exponent slot", size: MAX_SLOTS, limit: n + 1 });
            }
            let e = map.entry(m).or_insert_with(F::zero);
            *e = e.clone() + c;
        }
        let mut terms: Vec<(Monomial, F)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut p = Self::zero(n)?;
        p.terms = terms;
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading(&self) -> Option<&(Monomial, F)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.n, other.n, "polynomials from different rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap().clone()),
                    Ordering::Equal => {
                        let c = x.1.clone() + y.1.clone();
                        if !c.is_zero() {
                            out.push((x.0, c));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap().clone()),
                (None, None) => break,
            }
        }
        Polynomial { n: self.n, terms: out }
    }

    pub fn neg(&self) -> Self {
        Polynomial { n: self.n, terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Polynomial { n: self.n, terms: Vec::new() };
        }
        Polynomial { n: self.n, terms: self.terms.iter().map(|(m, d)| (*m, d.clone() * c.clone())).collect() }
    }

    /// Multiplication by `c * m`; the term order is preserved by monomial
    /// multiplication, so no re-sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Polynomial { n: self.n, terms: Vec::new() };
        }
        Polynomial { n: self.n, terms: self.terms.iter().map(|(t, d)| (t.mul(m), d.clone() * c.clone())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut map: HashMap<Monomial, F> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = map.entry(ma.mul(mb)).or_insert_with(F::zero);
                *e = e.clone() + ca.clone() * cb.clone();
            }
        }
        let mut terms: Vec<(Monomial, F)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Polynomial { n: self.n, terms }
    }

    /// Scales so the leading coefficient is 1. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            Some((_, c)) => self.scale(&c.inverse()),
            None => self.clone(),
        }
    }

    /// Moves into a ring with `shift` extra leading variables: `x_a` becomes
    /// `x_{a+shift}` and `t` stays the auxiliary slot.
    pub fn shift_up(&self, shift: usize) -> Result<Self> {
        let n = self.n + shift;
        let mut out = Self::zero(n)?;
        out.terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = [0u16; MAX_SLOTS];
                e[shift..shift + self.n].copy_from_slice(&m.exps[..self.n]);
                e[n] = m.exps[self.n];
                (Monomial { exps: e, degree: m.degree }, c.clone())
            })
            .collect();
        // relabelling every ordinary variable by the same offset can reorder
        // terms only through the auxiliary slot, so sort again
        out.terms.sort_by(|a, b| b.0.cmp(&a.0));
        Ok(out)
    }

    /// If every term is squarefree in the ordinary variables, their supports.
    pub fn squarefree_support(&self) -> Option<Vec<SquarefreeMonomial>> {
        self.terms
            .iter()
            .map(|(m, _)| {
                if m.exps[self.n] != 0 || m.exps[..self.n].iter().any(|&e| e > 1) {
                    return None;
                }
                let bits = m.exps[..self.n]
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (t, &e)| if e == 1 { acc | (1 << t) } else { acc });
                Some(SquarefreeMonomial::from_bits_unchecked(self.n, bits))
            })
            .collect()
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    /// Terms in decreasing degree-reverse-lex order, e.g. `x1x2+x3x4x5`,
    /// coefficients other than 1 written as a prefix (`3*x1^2`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (t, (m, c)) in self.terms.iter().enumerate() {
            let neg_one = !c.is_one() && c.clone() == -F::one();
            if t > 0 {
                f.write_str(if neg_one { "-" } else { "+" })?;
            } else if neg_one {
                f.write_str("-")?;
            }
            if m.is_one() {
                if neg_one {
                    f.write_str("1")?;
                } else {
                    write!(f, "{c}")?;
                }
                continue;
            }
            if !c.is_one() && !neg_one {
                write!(f, "{c}*")?;
            }
            m.write(self.n, f)?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One serialized term: coefficient as text and the full exponent vector
/// (`n + 1` entries, last one for `t`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u16>,
}

impl<F: Field> Polynomial<F> {
    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms.iter().map(|(m, c)| TermJson { coeff: c.to_string(), exps: m.exps[..=self.n].to_vec() }).collect()
    }

    pub fn from_json_terms(n: usize, terms: &[TermJson]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|t| {
                if t.exps.len() != n + 1 {
                    return Err(Error::Parse(format!(
                        "exponent vector of length {} in a ring with {} slots",
                        t.exps.len(),
                        n + 1
                    )));
                }
                Ok((Monomial::from_exps(&t.exps)?, F::parse(&t.coeff)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(n, parsed)
    }
}

impl<F: Field> Serialize for Polynomial<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use num_rational::BigRational;

    type P = Polynomial<Fp<32003>>;

    fn sq(n: usize, s: &str) -> SquarefreeMonomial {
        SquarefreeMonomial::parse(s, n).unwrap()
    }

    #[test]
    fn drevlex_examples() {
        // x1x3 vs x2^2 in drevlex: last differing slot is x3; x2^2 has no x3, wins.
        let a = Monomial::from_exps(&[1, 0, 1]).unwrap();
        let b = Monomial::from_exps(&[0, 2, 0]).unwrap();
        assert!(b > a);
        // higher degree always wins
        assert!(Monomial::from_exps(&[0, 0, 3]).unwrap() > Monomial::from_exps(&[2, 0, 0]).unwrap());
        // x1 > x2 > t in the n = 2 ring
        let x1 = Monomial::var(0, 1);
        let x2 = Monomial::var(1, 1);
        let t = Monomial::var(2, 1);
        assert!(x1 > x2 && x2 > t);
    }

    #[test]
    fn arithmetic() {
        let n = 3;
        let x1 = P::var(n, 1).unwrap();
        let x2 = P::var(n, 2).unwrap();
        let s = x1.add(&x2);
        let d = x1.sub(&x2);
        // (x1+x2)(x1-x2) = x1^2 - x2^2
        let prod = s.mul(&d);
        let expect = x1.mul(&x1).sub(&x2.mul(&x2));
        assert_eq!(prod, expect);
        assert!(s.sub(&s).is_zero());
        assert_eq!(prod.terms().len(), 2);
    }

    #[test]
    fn display_and_json() {
        let n = 5;
        let p = P::sum_of(n, &[sq(5, "x1x2"), sq(5, "x3x4x5")]).unwrap();
        assert_eq!(p.to_string(), "x3x4x5+x1x2");
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"[{"coeff":"1","exps":[0,0,1,1,1,0]},{"coeff":"1","exps":[1,1,0,0,0,0]}]"#);
        let terms: Vec<TermJson> = serde_json::from_str(&json).unwrap();
        assert_eq!(P::from_json_terms(n, &terms).unwrap(), p);
        let one = P::constant(n, Fp::new(1)).unwrap();
        let r = one.sub(&P::aux(n).unwrap().mul(&p));
        assert_eq!(r.to_string(), "-x3x4x5t-x1x2t+1");
    }

    #[test]
    fn rational_display() {
        let n = 2;
        let half = BigRational::new(1.into(), 2.into());
        let p = Polynomial::<BigRational>::var(n, 1).unwrap().scale(&half);
        assert_eq!(p.to_string(), "1/2*x1");
        assert_eq!(p.monic(), Polynomial::var(n, 1).unwrap());
    }

    #[test]
    fn squarefree_support_round_trip() {
        let ms = [sq(4, "x1x2"), sq(4, "x3")];
        let p = P::sum_of(4, &ms).unwrap();
        let mut back = p.squarefree_support().unwrap();
        back.sort();
        let mut want = ms.to_vec();
        want.sort();
        assert_eq!(back, want);
        let sq_term = P::var(4, 1).unwrap().mul(&P::var(4, 1).unwrap());
        assert!(sq_term.squarefree_support().is_none());
    }
}
