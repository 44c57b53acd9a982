use lexrank::{
    all_pairs, dual_projdim, dual_witness, invariants, sv_lex_witness, verify_dual, DualSearchConfig, Gf32003,
    LexSegmentIdeal, Verdict,
};

fn segments(n: usize) -> impl Iterator<Item = LexSegmentIdeal> {
    all_pairs(n).unwrap().into_iter().map(move |(u, v)| LexSegmentIdeal::new(n, u, v).unwrap())
}

fn check_sv_witnesses(ns: std::ops::RangeInclusive<usize>) {
    let mut failures = Vec::new();
    for n in ns {
        for seg in segments(n) {
            match sv_lex_witness(&seg) {
                Ok(cert) => {
                    assert_eq!(cert.verdict, Verdict::SvVerified);
                    assert_eq!(cert.r(), invariants(&seg).unwrap().projdim, "{seg}");
                }
                Err(e) => failures.push(format!("{seg}: {e}")),
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn sv_witnesses_up_to_nine() {
    check_sv_witnesses(3..=9);
}

#[test]
#[ignore = "slow in debug builds"]
fn sv_witnesses_ten_and_eleven() {
    check_sv_witnesses(10..=11);
}

#[test]
fn cohen_macaulay_duals_in_seven_variables() {
    let config = DualSearchConfig::default();
    for seg in segments(7).filter(|s| s.is_normalized() && dual_projdim(s).unwrap() == 2) {
        let w = dual_witness::<Gf32003>(&seg, &config).unwrap_or_else(|e| panic!("{seg}: {e}"));
        assert_eq!(w.polys.len(), 2, "{seg}");
        assert!(verify_dual(&w, &config.groebner).unwrap().is_equal(), "{seg}");
    }
}
