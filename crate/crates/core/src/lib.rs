//! Lex-segment ideals generated in degree 2 by squarefree monomials.
//!
//! For `u >= v` in the lex order on squarefree quadrics of
//! `K[x_1, ..., x_n]`, `L(u, v)` is generated by every such monomial between
//! `v` and `u`. This crate provides closed forms for the invariants of
//! `S/L(u, v)`, Schmitt–Vogel certificates that `ara = projdim`, Alexander
//! duality, and independent oracles (Hochster's formula and a Buchberger
//! engine) to check all of them.
//!
//! The algebra is generic over [`Field`]; [`FieldKind`] and [`with_field!`]
//! select a concrete field at runtime.

/// Calls generic code with the concrete field type for a [`FieldKind`].
///
/// ```
/// use lexrank::{with_field, Field, FieldKind};
/// let tag = with_field!(FieldKind::Gf2, F => F::tag());
/// assert_eq!(tag, "gf2");
/// ```
#[macro_export]
macro_rules! with_field {
    ($kind:expr, $f:ident => $body:expr) => {
        match $kind {
            $crate::FieldKind::Gf2 => {
                type $f = $crate::Gf2;
                $body
            }
            $crate::FieldKind::Gf32003 => {
                type $f = $crate::Gf32003;
                $body
            }
            $crate::FieldKind::Rational => {
                type $f = $crate::Rational;
                $body
            }
        }
    };
}

pub mod duality;
pub mod error;
pub mod field;
pub mod groebner;
pub mod lexsegment;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod stanley_reisner;
pub mod sweep;
pub mod witness;

pub use duality::{alexander_dual, dual_presentation, dual_projdim, terai_check, DualPresentation};
pub use error::{Error, Result};
pub use field::{Field, FieldKind, Fp};
pub use groebner::{
    buchberger, normal_form, radical_equals_ideal, radical_member, GroebnerBasis, GroebnerConfig, RadicalCheck,
};
pub use lexsegment::{
    all_pairs, classify, cm_classification_table, invariants, normalize, segment_report, InvariantReport,
    LexSegmentIdeal, SegmentClass, SegmentReport, WitnessCase,
};
pub use monomial::{all_of_degree, IndexSet, MonomialIdeal, SquarefreeMonomial};
pub use poly::{Monomial, Polynomial};
pub use stanley_reisner::{
    complex_of, height, hochster_betti, hochster_betti_in, minimal_primes, oracle_invariants, skeleton1_connected,
    taylor_minimal, BettiTable, OracleConfig, OracleInvariants, SimplicialComplex,
};
pub use sweep::{run_sweep, write_rows, SweepConfig, SweepFormat, SweepOutcome, SweepRow};
pub use witness::{
    degree_grouping_family, dual_report, dual_witness, quadratic_root_check, sv_lex_witness, verify_dual,
    verify_dual_report, verify_sv, CertificateJson, DualMethod, DualReport, DualSearchConfig, DualWitness,
    SvCertificate, SvFailure, SvFamily, Verdict,
};

/// `GF(2)`.
pub type Gf2 = Fp<2>;
/// `GF(32003)`, the default field for Gröbner checks.
pub type Gf32003 = Fp<32003>;
/// `ℚ` with arbitrary-precision coefficients.
pub type Rational = num_rational::BigRational;

pub type PolyGf2 = Polynomial<Gf2>;
pub type PolyGf32003 = Polynomial<Gf32003>;
pub type PolyQ = Polynomial<Rational>;
