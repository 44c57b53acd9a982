//! A small Buchberger engine.
//!
//! Used only as an independent checker: radical membership via the
//! Rabinowitsch trick, and `sqrt(g_1, ..., g_r) == I` for squarefree monomial
//! targets. Term order is degree-reverse-lex (see [`crate::poly`]).

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{MonomialIdeal, SquarefreeMonomial};
use crate::poly::{Monomial, Polynomial};

/// Limits for Gröbner computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerConfig {
    /// Maximum number of ring variables, counting the auxiliary `t`.
    pub max_vars: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig { max_vars: 10 }
    }
}

impl GroebnerConfig {
    fn admit(&self, n: usize) -> Result<()> {
        if n + 1 > self.max_vars {
            return Err(Error::LimitExceeded { what: "Gröbner computation", size: n + 1, limit: self.max_vars });
        }
        Ok(())
    }
}

/// A reduced Gröbner basis: monic, inter-reduced, sorted by decreasing
/// leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<F: Field> {
    n: usize,
    polys: Vec<Polynomial<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn polys(&self) -> &[Polynomial<F>] {
        &self.polys
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The basis is `{1}`.
    pub fn is_unit_ideal(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_unit()
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        normal_form(f, &self.polys).is_zero()
    }
}

impl<F: Field> Serialize for GroebnerBasis<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.polys.serialize(s)
    }
}

/// Remainder of `f` on division by `basis`. Every term of the result is
/// irreducible by the leading terms of `basis`.
pub fn normal_form<F: Field>(f: &Polynomial<F>, basis: &[Polynomial<F>]) -> Polynomial<F> {
    let leads: Vec<(Monomial, F)> = basis.iter().filter_map(|g| g.leading().cloned()).collect();
    let mut p = f.clone();
    let mut rest: Vec<(Monomial, F)> = Vec::new();
    while let Some((m, c)) = p.leading().cloned() {
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(t) => {
                let (lm, lc) = &leads[t];
                let factor = c / lc.clone();
                p = p.sub(&basis[t].mul_term(&m.div(lm), &factor));
            }
            None => {
                rest.push((m, c.clone()));
                p = p.sub(&Polynomial::term(p.n(), m, c).expect("same ring"));
            }
        }
    }
    Polynomial::from_terms(f.n(), rest).expect("same ring")
}

fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let (mf, cf) = f.leading().expect("nonzero").clone();
    let (mg, cg) = g.leading().expect("nonzero").clone();
    let l = mf.lcm(&mg);
    f.mul_term(&l.div(&mf), &cf.inverse()).sub(&g.mul_term(&l.div(&mg), &cg.inverse()))
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Critical pairs are processed smallest lcm degree first, ties broken by
/// pair index, skipping pairs with coprime leading monomials and pairs
/// covered by Buchberger's chain criterion. Stops early once a nonzero
/// constant appears.
pub fn buchberger<F: Field>(gens: &[Polynomial<F>], config: &GroebnerConfig) -> Result<GroebnerBasis<F>> {
    let n = match gens.first() {
        Some(g) => g.n(),
        None => return Err(Error::InvalidSegment("Gröbner basis of an empty generator list".into())),
    };
    config.admit(n)?;
    if gens.iter().any(|g| g.n() != n) {
        return Err(Error::AmbientMismatch { left: n, right: gens.iter().map(|g| g.n()).find(|&m| m != n).unwrap() });
    }

    let unit = || GroebnerBasis { n, polys: vec![Polynomial::constant(n, F::one()).expect("ring")] };

    let mut basis: Vec<Polynomial<F>> = Vec::new();
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let add = |h: Polynomial<F>, basis: &mut Vec<Polynomial<F>>, pairs: &mut BTreeSet<(u32, usize, usize)>| {
        let h = h.monic();
        let lh = h.leading_monomial().expect("nonzero");
        let j = basis.len();
        for (i, g) in basis.iter().enumerate() {
            let lg = g.leading_monomial().expect("nonzero");
            pairs.insert((lg.lcm(&lh).degree(), i, j));
        }
        basis.push(h);
    };

    for g in gens {
        let r = normal_form(g, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_unit() {
            return Ok(unit());
        }
        add(r, &mut basis, &mut pairs);
    }

    while let Some(&(deg, i, j)) = pairs.iter().next() {
        pairs.remove(&(deg, i, j));
        let li = basis[i].leading_monomial().expect("nonzero");
        let lj = basis[j].leading_monomial().expect("nonzero");
        if li.is_coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        let pending = |a: usize, b: usize, pairs: &BTreeSet<(u32, usize, usize)>| {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            let lab = basis[a].leading_monomial().unwrap().lcm(&basis[b].leading_monomial().unwrap());
            pairs.contains(&(lab.degree(), a, b))
        };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().expect("nonzero").divides(&l)
                && !pending(i, k, &pairs)
                && !pending(j, k, &pairs)
        });
        if chain {
            continue;
        }
        let r = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_unit() {
            return Ok(unit());
        }
        add(r, &mut basis, &mut pairs);
    }

    Ok(GroebnerBasis { n, polys: interreduce(basis) })
}

fn interreduce<F: Field>(mut basis: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    basis.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    // drop elements whose leading monomial is divisible by an earlier (smaller
    // or equal) one
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for g in basis {
        let lg = g.leading_monomial().expect("nonzero");
        if !minimal.iter().any(|h| h.leading_monomial().expect("nonzero").divides(&lg)) {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for t in 0..minimal.len() {
        let others: Vec<Polynomial<F>> =
            minimal.iter().enumerate().filter(|&(s, _)| s != t).map(|(_, g)| g.clone()).collect();
        reduced.push(normal_form(&minimal[t], &others).monic());
    }
    reduced.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
    reduced
}

/// `f` lies in the radical of `(gens)`: `1 ∈ (gens, 1 - t f)`.
pub fn radical_member<F: Field>(f: &Polynomial<F>, gens: &[Polynomial<F>], config: &GroebnerConfig) -> Result<bool> {
    let n = f.n();
    config.admit(n)?;
    if f.terms().iter().any(|(m, _)| m.exps()[n] != 0)
        || gens.iter().any(|g| g.terms().iter().any(|(m, _)| m.exps()[n] != 0))
    {
        return Err(Error::InvalidSegment("inputs must not involve the auxiliary variable".into()));
    }
    if f.is_zero() {
        return Ok(true);
    }
    let one = Polynomial::constant(n, F::one())?;
    let rabinowitsch = one.sub(&Polynomial::aux(n)?.mul(f));
    let mut all: Vec<Polynomial<F>> = gens.to_vec();
    all.push(rabinowitsch);
    Ok(buchberger(&all, config)?.is_unit_ideal())
}

/// Outcome of comparing `sqrt(polys)` with a squarefree monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum RadicalCheck {
    Equal,
    /// A term of `polys[poly]` lies outside the target.
    TermOutside {
        poly: usize,
        term: String,
    },
    /// A minimal generator of the target is not in the radical.
    GeneratorMissing {
        generator: SquarefreeMonomial,
    },
}

impl RadicalCheck {
    pub fn is_equal(&self) -> bool {
        matches!(self, RadicalCheck::Equal)
    }
}

/// Checks `sqrt(polys) == target`.
///
/// `⊆`: every term of every polynomial is divisible by a generator (the
/// target is squarefree, hence radical). `⊇`: every minimal generator passes
/// [`radical_member`].
pub fn radical_equals_ideal<F: Field>(
    polys: &[Polynomial<F>],
    target: &MonomialIdeal,
    config: &GroebnerConfig,
) -> Result<RadicalCheck> {
    let n = target.n();
    for (p, poly) in polys.iter().enumerate() {
        if poly.n() != n {
            return Err(Error::AmbientMismatch { left: n, right: poly.n() });
        }
        for (m, _) in poly.terms() {
            let bits =
                m.exps()[..n].iter().enumerate().fold(0u64, |acc, (t, &e)| if e > 0 { acc | (1 << t) } else { acc });
            if m.exps()[n] != 0 || !target.contains_bits(bits) {
                let term = Polynomial::term(n, *m, F::one())?.to_string();
                return Ok(RadicalCheck::TermOutside { poly: p, term });
            }
        }
    }
    for g in target.gens() {
        if !radical_member(&Polynomial::from_squarefree(g)?, polys, config)? {
            return Ok(RadicalCheck::GeneratorMissing { generator: *g });
        }
    }
    Ok(RadicalCheck::Equal)
}
