//! Exhaustive comparison of closed forms, oracles and certificates over all
//! degree-2 squarefree lex segments for a range of `n`.
//!
//! Row order is fixed (`n` ascending, then `u` and `v` in decreasing lex
//! order) and no timing data is recorded, so output is reproducible
//! byte for byte.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::duality::{alexander_dual, dual_projdim};
use crate::error::{Error, Result};
use crate::field::FieldKind;
use crate::groebner::GroebnerConfig;
use crate::lexsegment::{all_pairs, classify, invariants, LexSegmentIdeal};
use crate::stanley_reisner::{oracle_invariants, OracleConfig};
use crate::witness::{dual_report, sv_lex_witness, DualSearchConfig};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub n_min: usize,
    pub n_max: usize,
    /// Gröbner re-verification runs only for `n <= groebner_n_max`.
    pub groebner_n_max: usize,
    /// Oracle fields; the first is compared with the closed forms, the rest
    /// must give the same Betti numbers.
    pub fields: Vec<FieldKind>,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
    pub oracle: OracleConfig,
    pub dual_search: DualSearchConfig,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_min: 3,
            n_max: 6,
            groebner_n_max: 5,
            fields: vec![FieldKind::Gf2, FieldKind::Rational],
            jobs: 0,
            oracle: OracleConfig::default(),
            dual_search: DualSearchConfig::default(),
        }
    }
}

/// One segment. `status` is `ok`, `disagree: <columns>`, `unresolved` or
/// `error: <message>`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub u: String,
    pub v: String,
    pub normalized: bool,
    pub mu: usize,
    pub case: String,
    pub dim: usize,
    pub depth: usize,
    pub projdim: usize,
    pub reg: usize,
    pub height: usize,
    pub cm: bool,
    pub linear_resolution: bool,
    pub oracle_dim: usize,
    pub oracle_depth: usize,
    pub oracle_projdim: usize,
    pub oracle_reg: usize,
    pub betti_fields_agree: bool,
    pub dual_projdim: usize,
    pub oracle_dual_projdim: usize,
    pub witness_size: usize,
    pub witness_verdict: String,
    pub groebner_verdict: String,
    pub dual_method: String,
    pub dual_size: usize,
    pub dual_verdict: String,
    /// `status == "ok"`.
    pub agree: bool,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub disagreements: usize,
    pub unresolved: usize,
    pub errors: usize,
}

/// Output format for [`write_rows`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepFormat {
    Csv,
    Jsonl,
}

impl std::str::FromStr for SweepFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(SweepFormat::Csv),
            "jsonl" => Ok(SweepFormat::Jsonl),
            other => Err(Error::Parse(format!("unknown output format {other:?} (csv or jsonl)"))),
        }
    }
}

/// Every segment in the sweep, in output order.
pub fn sweep_segments(config: &SweepConfig) -> Result<Vec<LexSegmentIdeal>> {
    let mut out = Vec::new();
    for n in config.n_min..=config.n_max {
        for (u, v) in all_pairs(n)? {
            out.push(LexSegmentIdeal::new(n, u, v)?);
        }
    }
    Ok(out)
}

fn verdict_text(r: std::result::Result<bool, String>) -> String {
    match r {
        Ok(true) => "verified".into(),
        Ok(false) => "failed".into(),
        Err(e) => format!("error: {e}"),
    }
}

fn row_for(seg: &LexSegmentIdeal, config: &SweepConfig) -> Result<SweepRow> {
    let n = seg.n();
    let (norm, _) = seg.normalize()?;
    let closed = invariants(seg)?;
    let primary = config.fields.first().copied().unwrap_or(FieldKind::Gf2);
    let ideal = seg.ideal();
    let oracle = oracle_invariants(&ideal, primary, &config.oracle)?;
    let mut betti_fields_agree = true;
    for &f in config.fields.iter().skip(1) {
        let other = oracle_invariants(&ideal, f, &config.oracle)?;
        betti_fields_agree &= other.betti.same_numbers(&oracle.betti);
    }
    let dual = alexander_dual(&ideal)?;
    let oracle_dual = oracle_invariants(&dual, primary, &config.oracle)?;

    let mut row = SweepRow {
        n,
        u: seg.u().to_string(),
        v: seg.v().to_string(),
        normalized: seg.is_normalized(),
        mu: seg.mu(),
        case: classify(&norm)?.witness_case.to_string(),
        dim: closed.dim,
        depth: closed.depth,
        projdim: closed.projdim,
        reg: closed.reg,
        height: closed.height,
        cm: closed.cm,
        linear_resolution: closed.linear_resolution,
        oracle_dim: oracle.dim,
        oracle_depth: oracle.depth,
        oracle_projdim: oracle.projdim,
        oracle_reg: oracle.reg,
        betti_fields_agree,
        dual_projdim: dual_projdim(seg)?,
        oracle_dual_projdim: oracle_dual.projdim,
        ..SweepRow::default()
    };

    let groebner = n <= config.groebner_n_max;
    let gcfg = GroebnerConfig { max_vars: config.dual_search.groebner.max_vars.max(n + 1) };
    match sv_lex_witness(seg) {
        Ok(mut cert) => {
            row.witness_size = cert.r();
            row.witness_verdict = cert.verdict.to_string();
            row.groebner_verdict = if groebner {
                verdict_text(
                    cert.groebner_verify(FieldKind::Gf32003, &gcfg)
                        .map(|g| g.check.is_equal())
                        .map_err(|e| e.to_string()),
                )
            } else {
                "skipped".into()
            };
        }
        Err(e) => {
            row.witness_verdict = format!("error: {e}");
            row.groebner_verdict = "skipped".into();
        }
    }

    let search = DualSearchConfig { groebner: gcfg, ..config.dual_search };
    let mut unresolved = false;
    match dual_report(seg, FieldKind::Gf32003, &search, groebner) {
        Ok(report) => {
            row.dual_method = serde_json::to_value(report.method)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default();
            row.dual_size = report.sums.len();
            row.dual_verdict = match &report.groebner {
                Some(g) if report.passed() => format!("{}+{}", report.verdict, g.verdict),
                Some(g) => format!("failed: {} / {}", report.verdict, g.verdict),
                None => report.verdict.to_string(),
            };
        }
        Err(Error::Unresolved { .. }) => {
            unresolved = true;
            row.dual_verdict = "unresolved".into();
        }
        Err(e) => row.dual_verdict = format!("error: {e}"),
    }

    let mut bad = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            bad.push(name.to_string());
        }
    };
    check("dim", row.dim == row.oracle_dim);
    check("depth", row.depth == row.oracle_depth);
    check("projdim", row.projdim == row.oracle_projdim);
    check("reg", row.reg == row.oracle_reg);
    check("height", closed.height == oracle.height);
    check("cm", closed.cm == oracle.cm);
    check("linear_resolution", closed.linear_resolution == oracle.linear_resolution);
    check("betti_fields_agree", row.betti_fields_agree);
    check("dual_projdim", row.dual_projdim == row.oracle_dual_projdim && row.oracle_dual_projdim == row.oracle_reg);
    check("witness_size", row.witness_size == row.projdim);
    check("witness_verdict", row.witness_verdict == "sv_verified");
    check("groebner_verdict", row.groebner_verdict == "verified" || row.groebner_verdict == "skipped");
    if !unresolved {
        check("dual_size", row.dual_size == row.dual_projdim);
        check("dual_verdict", !row.dual_verdict.starts_with("failed") && !row.dual_verdict.starts_with("error"));
    }
    row.agree = bad.is_empty() && !unresolved;
    row.status = if !bad.is_empty() {
        format!("disagree: {}", bad.join(" "))
    } else if unresolved {
        "unresolved".into()
    } else {
        "ok".into()
    };
    Ok(row)
}

fn error_row(seg: &LexSegmentIdeal, e: &Error) -> SweepRow {
    SweepRow {
        n: seg.n(),
        u: seg.u().to_string(),
        v: seg.v().to_string(),
        normalized: seg.is_normalized(),
        mu: seg.mu(),
        status: format!("error: {e}"),
        ..SweepRow::default()
    }
}

/// Runs every row; failures are recorded per row and counted, never
/// short-circuited.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepOutcome> {
    let segments = sweep_segments(config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::Construction(format!("thread pool: {e}")))?;
    let rows: Vec<SweepRow> = pool.install(|| {
        segments.par_iter().map(|seg| row_for(seg, config).unwrap_or_else(|e| error_row(seg, &e))).collect()
    });
    let count = |prefix: &str| rows.iter().filter(|r| r.status.starts_with(prefix)).count();
    Ok(SweepOutcome { disagreements: count("disagree"), unresolved: count("unresolved"), errors: count("error"), rows })
}

pub fn write_rows<W: Write>(rows: &[SweepRow], format: SweepFormat, out: W) -> Result<()> {
    let io = |e: std::io::Error| Error::Construction(format!("write failed: {e}"));
    match format {
        SweepFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.serialize(row).map_err(|e| Error::Construction(format!("csv: {e}")))?;
            }
            w.flush().map_err(io)?;
        }
        SweepFormat::Jsonl => {
            let mut out = out;
            for row in rows {
                serde_json::to_writer(&mut out, row).map_err(|e| Error::Construction(format!("json: {e}")))?;
                out.write_all(b"\n").map_err(io)?;
            }
            out.flush().map_err(io)?;
        }
    }
    Ok(())
}
