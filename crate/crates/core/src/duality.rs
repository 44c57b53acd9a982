//! Alexander duality for squarefree monomial ideals.
//!
//! The Alexander dual `I*` of `I` is generated by the minimal transversals
//! (vertex covers) of the supports of `G(I)`. For an edge ideal this is the
//! intersection of the height-2 primes `(x_a, x_b)`, one per edge.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldKind;
use crate::lexsegment::LexSegmentIdeal;
use crate::monomial::{MonomialIdeal, SquarefreeMonomial};
use crate::stanley_reisner::{oracle_invariants, OracleConfig};

fn transversals(edges: &[u64], chosen: u64, out: &mut Vec<u64>) {
    match edges.iter().find(|&&e| e & chosen == 0) {
        None => out.push(chosen),
        Some(&e) => {
            let mut bits = e;
            while bits != 0 {
                let v = bits & bits.wrapping_neg();
                transversals(edges, chosen | v, out);
                bits &= bits - 1;
            }
        }
    }
}

/// `I*`, generated by the minimal transversals of `{supp(g) : g ∈ G(I)}`.
pub fn alexander_dual(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    if ideal.is_zero() {
        return Err(Error::DualOfZeroIdeal);
    }
    let n = ideal.n();
    let edges: Vec<u64> = ideal.gens().iter().map(|g| g.bits()).collect();
    if edges.contains(&0) {
        // the unit ideal has no transversal
        return MonomialIdeal::zero(n);
    }
    let mut covers = Vec::new();
    transversals(&edges, 0, &mut covers);
    MonomialIdeal::minimalize(n, covers.into_iter().map(|b| SquarefreeMonomial::from_bits_unchecked(n, b)))
}

/// `I* = ∩ (x_a, x_b)` over the generators `x_a x_b` of an edge ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualPresentation {
    /// One `{a, b}` per generator of `I`.
    pub primes: Vec<[usize; 2]>,
    pub dual_gens: Vec<SquarefreeMonomial>,
}

pub fn dual_presentation(seg: &LexSegmentIdeal) -> Result<DualPresentation> {
    let primes = seg.gens().iter().map(|g| {
        let v = g.to_vec();
        [v[0], v[1]]
    });
    let dual = alexander_dual(&seg.ideal())?;
    Ok(DualPresentation { primes: primes.collect(), dual_gens: dual.gens().to_vec() })
}

/// Closed form for `projdim(S/I*)`, which equals `reg(I)`: 3 when
/// `j >= 2`, `i >= j + 2` and `x_n` does not divide `v`; 2 otherwise.
pub fn dual_projdim(seg: &LexSegmentIdeal) -> Result<usize> {
    let (norm, _) = seg.normalize()?;
    let (n, i, j, k) = (norm.n(), norm.i(), norm.j(), norm.k());
    Ok(if j >= 2 && i >= j + 2 && k != n { 3 } else { 2 })
}

/// Oracle check of `projdim(S/I*) == reg(I)`.
pub fn terai_check(seg: &LexSegmentIdeal, field: FieldKind, config: &OracleConfig) -> Result<bool> {
    let ideal = seg.ideal();
    let reg = oracle_invariants(&ideal, field, config)?.reg;
    let dual_pd = oracle_invariants(&alexander_dual(&ideal)?, field, config)?.projdim;
    Ok(reg == dual_pd)
}
