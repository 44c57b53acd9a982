use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lexrank::{
    alexander_dual, dual_presentation, dual_projdim, dual_report, hochster_betti_in, oracle_invariants, run_sweep,
    segment_report, sv_lex_witness, verify_dual_report, verify_sv, CertificateJson, DualReport, DualSearchConfig,
    Error, FieldKind, GroebnerConfig, LexSegmentIdeal, OracleConfig, SquarefreeMonomial, SvCertificate, SweepConfig,
    SweepFormat,
};

const EXIT_USAGE: u8 = 2;
const EXIT_DISAGREE: u8 = 3;
const EXIT_UNRESOLVED: u8 = 4;

#[derive(Parser)]
#[command(
    name = "lexrank",
    version,
    about = "Invariants and arithmetical-rank certificates for squarefree lex-segment edge ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SegmentArgs {
    /// Number of variables.
    #[arg(short = 'n', long)]
    n: usize,
    /// Upper end of the segment, e.g. x1x3, x1*x3 or [1,3].
    #[arg(short = 'u', long)]
    u: String,
    /// Lower end of the segment.
    #[arg(short = 'v', long)]
    v: String,
}

impl SegmentArgs {
    fn segment(&self) -> Result<LexSegmentIdeal, Error> {
        let u = SquarefreeMonomial::parse(&self.u, self.n)?;
        let v = SquarefreeMonomial::parse(&self.v, self.n)?;
        LexSegmentIdeal::new(self.n, u, v)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Sv,
    Groebner,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form invariants, optionally checked against the Betti-number oracle.
    Invariants {
        #[command(flatten)]
        seg: SegmentArgs,
        /// Also compute the invariants from Hochster's formula and compare.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value = "gf2")]
        field: FieldKind,
    },
    /// Arithmetical-rank certificate for the ideal or its Alexander dual.
    Witness {
        #[command(flatten)]
        seg: SegmentArgs,
        #[arg(long)]
        dual: bool,
        #[arg(long, value_enum, default_value = "sv")]
        verify: Method,
        /// Field for Gröbner verification and dual witnesses.
        #[arg(long, default_value = "gf32003")]
        field: FieldKind,
    },
    /// Alexander dual and its height-2 primary presentation.
    Dual {
        #[command(flatten)]
        seg: SegmentArgs,
    },
    /// Graded Betti numbers of S/I (or S/I*) by Hochster's formula.
    Betti {
        #[command(flatten)]
        seg: SegmentArgs,
        #[arg(long, default_value = "gf2")]
        field: FieldKind,
        #[arg(long)]
        dual: bool,
    },
    /// Cross-check every segment for n = n-min..=n-max.
    Sweep {
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Gröbner re-verification of certificates up to this n.
        #[arg(long, default_value_t = 4)]
        groebner_n_max: usize,
        /// Comma-separated oracle fields; the first is compared with the closed forms.
        #[arg(long, default_value = "gf2,q", value_delimiter = ',')]
        fields: Vec<FieldKind>,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value = "csv")]
        out: SweepFormat,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Re-check a certificate produced by `witness` (file or stdin).
    Verify {
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
        /// Field for Gröbner checks of primal certificates.
        #[arg(long, default_value = "gf32003")]
        field: FieldKind,
    },
}

/// Failure that maps to an exit code.
enum Failure {
    Usage(String),
    Disagree(String),
    Unresolved(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unresolved { log } => Failure::Unresolved(log),
            Error::Construction(m) => Failure::Disagree(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn print_json(v: &impl serde::Serialize) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Failure::Usage(e.to_string()))?;
    println!("{s}");
    Ok(())
}

fn groebner_config(n: usize) -> GroebnerConfig {
    GroebnerConfig { max_vars: GroebnerConfig::default().max_vars.max(n + 1) }
}

fn cmd_invariants(seg: &LexSegmentIdeal, oracle: bool, field: FieldKind) -> Outcome {
    let report = segment_report(seg)?;
    if !oracle {
        print_json(&report)?;
        return Ok(true);
    }
    let o = oracle_invariants(&seg.ideal(), field, &OracleConfig::default())?;
    let r = &report.report;
    let agree = r.dim == o.dim
        && r.depth == o.depth
        && r.projdim == o.projdim
        && r.reg == o.reg
        && r.height == o.height
        && r.cm == o.cm
        && r.linear_resolution == o.linear_resolution;
    print_json(&json!({
        "closed_form": report,
        "oracle": {
            "field": field,
            "dim": o.dim,
            "depth": o.depth,
            "projdim": o.projdim,
            "reg": o.reg,
            "height": o.height,
            "cm": o.cm,
            "linear_resolution": o.linear_resolution,
        },
        "agree": agree,
    }))?;
    Ok(agree)
}

fn cmd_witness(seg: &LexSegmentIdeal, dual: bool, method: Method, field: FieldKind) -> Outcome {
    let gcfg = groebner_config(seg.n());
    let groebner = method != Method::Sv;
    if dual {
        let search = DualSearchConfig { groebner: gcfg, ..DualSearchConfig::default() };
        let report = dual_report(seg, field, &search, groebner)?;
        print_json(&report)?;
        return Ok(report.passed());
    }
    let mut cert = sv_lex_witness(seg)?;
    if groebner {
        cert.groebner_verify(field, &gcfg)?;
    }
    let ok = cert.verdict.passed() && cert.groebner.as_ref().is_none_or(|g| g.check.is_equal());
    print_json(&cert.to_json())?;
    Ok(ok)
}

fn cmd_dual(seg: &LexSegmentIdeal) -> Outcome {
    let p = dual_presentation(seg)?;
    print_json(&json!({
        "ideal": seg.ideal(),
        "dual": alexander_dual(&seg.ideal())?,
        "primes": p.primes,
        "dual_projdim": dual_projdim(seg)?,
    }))?;
    Ok(true)
}

fn cmd_betti(seg: &LexSegmentIdeal, field: FieldKind, dual: bool) -> Outcome {
    let ideal = if dual { alexander_dual(&seg.ideal())? } else { seg.ideal() };
    print_json(&hochster_betti_in(&ideal, field, &OracleConfig::default())?)?;
    Ok(true)
}

fn cmd_sweep(config: SweepConfig, format: SweepFormat, output: Option<PathBuf>) -> Outcome {
    if config.fields.is_empty() {
        return Err(Failure::Usage("--fields must name at least one field".into()));
    }
    if config.n_min < 3 || config.n_min > config.n_max {
        return Err(Failure::Usage(format!("need 3 <= n-min <= n-max, got {}..={}", config.n_min, config.n_max)));
    }
    let outcome = run_sweep(&config)?;
    let write = |w: &mut dyn Write| lexrank::write_rows(&outcome.rows, format, w);
    match output {
        Some(path) => {
            let mut file =
                std::fs::File::create(&path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            write(&mut file)?;
        }
        None => write(&mut io::stdout().lock())?,
    }
    eprintln!(
        "rows: {}  disagreements: {}  unresolved: {}  errors: {}",
        outcome.rows.len(),
        outcome.disagreements,
        outcome.unresolved,
        outcome.errors
    );
    if outcome.disagreements + outcome.errors > 0 {
        for row in outcome.rows.iter().filter(|r| r.status != "ok" && r.status != "unresolved") {
            eprintln!("n={} u={} v={}: {}", row.n, row.u, row.v, row.status);
        }
        return Ok(false);
    }
    if outcome.unresolved > 0 {
        return Err(Failure::Unresolved(format!("{} dual searches unresolved", outcome.unresolved)));
    }
    Ok(true)
}

fn cmd_verify(file: Option<PathBuf>, method: Method, field: FieldKind) -> Outcome {
    let mut text = String::new();
    match &file {
        Some(path) => {
            text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
        None => {
            io::stdin().read_to_string(&mut text).map_err(|e| Failure::Usage(e.to_string()))?;
        }
    }
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("invalid JSON: {e}")))?;
    let gcfg = groebner_config(value["target"]["n"].as_u64().unwrap_or(0) as usize);

    if value.get("polys").is_some() {
        let report: DualReport =
            serde_json::from_value(value).map_err(|e| Failure::Usage(format!("invalid dual witness: {e}")))?;
        let check = verify_dual_report(&report, &gcfg)?;
        print_json(&json!({ "kind": "dual", "field": report.field, "groebner": check }))?;
        return Ok(check.is_equal());
    }

    let cert: CertificateJson =
        serde_json::from_value(value).map_err(|e| Failure::Usage(format!("invalid certificate: {e}")))?;
    let family = cert.family()?;
    let mut result = json!({ "kind": "sv", "r": family.len() });
    let mut ok = true;
    if method != Method::Groebner {
        let sv = verify_sv(&family, &cert.target);
        ok &= sv.is_ok();
        result["sv"] = match sv {
            Ok(()) => json!("sv_verified"),
            Err(f) => json!({ "failed": f, "reason": f.to_string() }),
        };
    }
    if method != Method::Sv {
        let mut c = SvCertificate::checked(family, cert.target.clone());
        let check = c.groebner_verify(field, &gcfg)?.clone();
        ok &= check.check.is_equal();
        result["groebner"] = serde_json::to_value(&check).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    result["ok"] = json!(ok);
    print_json(&result)?;
    Ok(ok)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Invariants { seg, oracle, field } => cmd_invariants(&seg.segment()?, oracle, field),
        Command::Witness { seg, dual, verify, field } => cmd_witness(&seg.segment()?, dual, verify, field),
        Command::Dual { seg } => cmd_dual(&seg.segment()?),
        Command::Betti { seg, field, dual } => cmd_betti(&seg.segment()?, field, dual),
        Command::Sweep { n_min, n_max, groebner_n_max, fields, jobs, out, output } => {
            let config = SweepConfig { n_min, n_max, groebner_n_max, fields, jobs, ..SweepConfig::default() };
            cmd_sweep(config, out, output)
        }
        Command::Verify { file, method, field } => cmd_verify(file, method, field),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_DISAGREE),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Disagree(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_DISAGREE)
        }
        Err(Failure::Unresolved(log)) => {
            eprintln!("unresolved:\n{log}");
            ExitCode::from(EXIT_UNRESOLVED)
        }
    }
}
