//! End-to-end acceptance checks. Each criterion prints one `PASS` or `FAIL`
//! line; the process exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use lexrank::{
    alexander_dual, all_pairs, cm_classification_table, dual_projdim, dual_witness, invariants, minimal_primes,
    oracle_invariants, quadratic_root_check, radical_equals_ideal, skeleton1_connected, sv_lex_witness, taylor_minimal,
    verify_dual, verify_sv, DualMethod, DualSearchConfig, Error, FieldKind, Gf32003, GroebnerConfig, LexSegmentIdeal,
    OracleConfig, Rational, SquarefreeMonomial,
};

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn segments(ns: std::ops::RangeInclusive<usize>) -> Vec<LexSegmentIdeal> {
    let mut out = Vec::new();
    for n in ns {
        for (u, v) in all_pairs(n).unwrap() {
            out.push(LexSegmentIdeal::new(n, u, v).unwrap());
        }
    }
    out
}

/// Collects failures instead of stopping at the first.
#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, summary: String) -> Outcome {
        if self.failures.is_empty() {
            Ok(summary)
        } else {
            let shown: Vec<_> = self.failures.iter().take(5).cloned().collect();
            Err(format!("{} of {} checks failed: {}", self.failures.len(), self.checked, shown.join("; ")))
        }
    }
}

fn closed_forms_match_oracle() -> Outcome {
    let start = Instant::now();
    let mut tally = Tally::default();
    let segs = segments(3..=7);
    for seg in &segs {
        let closed = invariants(seg).map_err(|e| e.to_string())?;
        let oracle =
            oracle_invariants(&seg.ideal(), FieldKind::Gf2, &OracleConfig::default()).map_err(|e| e.to_string())?;
        let got = (closed.dim, closed.depth, closed.projdim, closed.reg);
        let want = (oracle.dim, oracle.depth, oracle.projdim, oracle.reg);
        tally.check(got == want, || format!("{seg}: closed {got:?}, oracle {want:?}"));
    }
    let elapsed = start.elapsed();
    tally.check(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"));
    tally.finish(format!("{} segments, n = 3..7, {:.1}s", segs.len(), elapsed.as_secs_f64()))
}

fn sv_witness_sizes() -> Outcome {
    let mut tally = Tally::default();
    let segs = segments(3..=7);
    for seg in &segs {
        match sv_lex_witness(seg) {
            Ok(cert) => {
                let projdim = invariants(seg).map_err(|e| e.to_string())?.projdim;
                tally.check(cert.r() == projdim, || format!("{seg}: {} sets, projdim {projdim}", cert.r()));
                let sv = verify_sv(&cert.family, &seg.ideal());
                tally.check(sv.is_ok(), || format!("{seg}: {}", sv.unwrap_err()));
            }
            Err(e) => tally.check(false, || format!("{seg}: {e}")),
        }
    }
    tally.finish(format!("{} segments, n = 3..7", segs.len()))
}

fn groebner_radicals() -> Outcome {
    let mut tally = Tally::default();
    let cfg = GroebnerConfig::default();
    let segs = segments(3..=5);
    let mut rational = 0;
    for (t, seg) in segs.iter().enumerate() {
        let cert = sv_lex_witness(seg).map_err(|e| e.to_string())?;
        let ideal = seg.ideal();
        let sums = cert.family.sums::<Gf32003>().map_err(|e| e.to_string())?;
        let check = radical_equals_ideal(&sums, &ideal, &cfg).map_err(|e| e.to_string())?;
        tally.check(check.is_equal(), || format!("{seg} over GF(32003): {check:?}"));
        // every third segment again over Q
        if t % 3 == 0 {
            let sums = cert.family.sums::<Rational>().map_err(|e| e.to_string())?;
            let check = radical_equals_ideal(&sums, &ideal, &cfg).map_err(|e| e.to_string())?;
            tally.check(check.is_equal(), || format!("{seg} over Q: {check:?}"));
            rational += 1;
        }
    }
    tally.check(rational >= 10, || format!("only {rational} segments over Q"));
    tally.finish(format!("{} segments over GF(32003), {rational} also over Q", segs.len()))
}

fn terai() -> Outcome {
    let mut tally = Tally::default();
    let segs = segments(3..=7);
    let cfg = OracleConfig::default();
    for seg in &segs {
        let ideal = seg.ideal();
        let reg = oracle_invariants(&ideal, FieldKind::Gf2, &cfg).map_err(|e| e.to_string())?.reg;
        let dual = alexander_dual(&ideal).map_err(|e| e.to_string())?;
        let dual_pd = oracle_invariants(&dual, FieldKind::Gf2, &cfg).map_err(|e| e.to_string())?.projdim;
        let closed = dual_projdim(seg).map_err(|e| e.to_string())?;
        tally.check(dual_pd == reg && reg == closed, || {
            format!("{seg}: projdim(S/I*) {dual_pd}, reg {reg}, closed {closed}")
        });
    }
    tally.finish(format!("{} segments, n = 3..7", segs.len()))
}

fn dual_witnesses() -> Outcome {
    let mut tally = Tally::default();
    let search = DualSearchConfig::default();
    let segs = segments(3..=6);
    let mut methods = [0usize; 3];
    for seg in &segs {
        let w = match dual_witness::<Gf32003>(seg, &search) {
            Ok(w) => w,
            Err(Error::Unresolved { .. }) => {
                tally.check(false, || format!("{seg}: UNRESOLVED"));
                continue;
            }
            Err(e) => {
                tally.check(false, || format!("{seg}: {e}"));
                continue;
            }
        };
        methods[w.method as usize] += 1;
        let expected = dual_projdim(seg).map_err(|e| e.to_string())?;
        tally.check(w.polys.len() == expected, || format!("{seg}: {} polys, dual projdim {expected}", w.polys.len()));
        tally.check(w.verdict.passed(), || format!("{seg}: {}", w.verdict));
        let check = verify_dual(&w, &search.groebner).map_err(|e| e.to_string())?;
        tally.check(check.is_equal(), || format!("{seg}: {check:?}"));
        if w.method == DualMethod::ThreeElement {
            tally.check(quadratic_root_check(&w), || format!("{seg}: quadratic root check"));
        }
    }
    tally.finish(format!(
        "{} segments, n = 3..6 (CI_J1 {}, CM_SEARCH {}, THREE_ELEMENT {})",
        segs.len(),
        methods[DualMethod::CiJ1 as usize],
        methods[DualMethod::CmSearch as usize],
        methods[DualMethod::ThreeElement as usize]
    ))
}

fn cm_table() -> Outcome {
    let mut tally = Tally::default();
    let cfg = OracleConfig::default();
    let mut total = 0;
    for n in 4..=7 {
        let mut oracle_cm = BTreeSet::new();
        for seg in segments(n..=n) {
            if !seg.is_normalized() || seg.u() == seg.v() {
                continue;
            }
            let o = oracle_invariants(&seg.ideal(), FieldKind::Gf2, &cfg).map_err(|e| e.to_string())?;
            if o.cm {
                oracle_cm.insert((seg.u(), seg.v()));
                let cert = sv_lex_witness(&seg).map_err(|e| e.to_string())?;
                tally.check(cert.r() == o.height, || format!("{seg}: {} sets, height {}", cert.r(), o.height));
            }
        }
        let table: BTreeSet<(SquarefreeMonomial, SquarefreeMonomial)> =
            cm_classification_table(n).map_err(|e| e.to_string())?.into_iter().collect();
        total += table.len();
        tally.check(oracle_cm == table, || format!("n = {n}: oracle {oracle_cm:?}, table {table:?}"));
    }
    tally.finish(format!("n = 4..7, {total} CM segments"))
}

fn structural() -> Outcome {
    let mut tally = Tally::default();
    let cfg = OracleConfig::default();
    let segs = segments(3..=7);
    for seg in &segs {
        let ideal = seg.ideal();
        let dual = alexander_dual(&ideal).map_err(|e| e.to_string())?;
        let back = alexander_dual(&dual).map_err(|e| e.to_string())?;
        tally.check(back == ideal, || format!("{seg}: (I*)* = {back}"));
        let primes = minimal_primes(&dual, &cfg).map_err(|e| e.to_string())?;
        tally.check(primes.iter().all(|p| p.degree() == 2), || format!("{seg}: I* has primes {primes:?}"));
        let o = oracle_invariants(&ideal, FieldKind::Gf2, &cfg).map_err(|e| e.to_string())?;
        tally.check(o.betti.total(1) == seg.mu(), || format!("{seg}: beta_1 {} vs mu {}", o.betti.total(1), seg.mu()));
        if taylor_minimal(&ideal) {
            tally.check(o.projdim == seg.mu(), || format!("{seg}: Taylor minimal, projdim {}", o.projdim));
        }
        let disconnected = !skeleton1_connected(&ideal);
        tally
            .check((o.depth == 1) == disconnected, || format!("{seg}: depth {}, disconnected {disconnected}", o.depth));
    }
    tally.finish(format!(
        "{} segments, n = 3..7: involution, height-2 unmixed dual, beta_1 = mu, Taylor, depth 1 iff disconnected",
        segs.len()
    ))
}

fn sweep_reproducible() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_lexrank")).args(["sweep", "--n-max", "6"]).output().map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if !a.status.success() {
        return Err(format!("sweep exited with {}: {}", a.status, String::from_utf8_lossy(&a.stderr)));
    }
    if a.stdout.is_empty() || a.stdout != b.stdout {
        return Err(format!("outputs differ ({} and {} bytes)", a.stdout.len(), b.stdout.len()));
    }
    Ok(format!("two runs, {} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("closed forms equal the oracle", closed_forms_match_oracle),
        ("SV witness size equals projdim", sv_witness_sizes),
        ("Gröbner radical checks", groebner_radicals),
        ("Terai: projdim(S/I*) = reg(I)", terai),
        ("dual witnesses", dual_witnesses),
        ("CM classification table", cm_table),
        ("structural checks", structural),
        ("sweep output is reproducible", sweep_reproducible),
    ];
    let outcomes: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria.iter().map(|&(_, f)| s.spawn(f)).collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err("panicked".into()))).collect()
    });
    let mut failed = 0;
    for (k, ((name, _), outcome)) in criteria.iter().zip(&outcomes).enumerate() {
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({detail})", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
