//! Command-line front end: file I/O, region analysis, certification,
//! verification, refutation, evaluation, and plot-data emission.
//!
//! Exit codes are a stable contract: 0 success, 2 infeasible, 3 unknown or
//! no path found, 4 failed precondition or failed verification, 64 parse
//! error.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spectra_farkas::cert::CertificateDoc;
use spectra_farkas::engine::{
    certify_auto, certify_diagonal_bounded, certify_one_variable, certify_simplex,
    certify_singleton, monic_reduce, EngineConfig, EngineError, EnginePath, ReductionBackend,
};
use spectra_farkas::instances;
use spectra_farkas::pencil::{LinearPencil, MatrixTuple};
use spectra_farkas::region::{classify, simplex_check, vertices};
use spectra_farkas::scalar::{fmt_rat, parse_rat, Rat};
use spectra_farkas::sdp::{degree_bounded_search, refute_example1, SdpConfig, SearchOutcome};

const EXIT_OK: i32 = 0;
const EXIT_INFEASIBLE: i32 = 2;
const EXIT_UNKNOWN: i32 = 3;
const EXIT_PRECONDITION: i32 = 4;
const EXIT_PARSE: i32 = 64;

#[derive(Parser)]
#[command(name = "spectra-farkas", version, about = "Linear matrix pencils: spectrahedron analysis, certificate construction, exact verification, and refutation")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Singleton,
    Diagonal,
    #[value(name = "one-var")]
    OneVar,
    Simplex,
    Sdp,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify the region of a pencil (full classification for diagonal
    /// pencils; shape report otherwise)
    Analyze { pencil: PathBuf },
    /// Construct a certificate L2 = sum w A^T A + sum w B^T L1 B
    Certify {
        #[arg(long)]
        l1: PathBuf,
        #[arg(long)]
        l2: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Degree cap for the search fallback (at most 4)
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Denominator bound for rationalizing numeric certificates
        #[arg(long, default_value_t = 1 << 20)]
        den_bound: u64,
        /// Write the certificate JSON here as well
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a certificate file against a pencil pair
    Verify {
        #[arg(long)]
        l1: PathBuf,
        #[arg(long)]
        l2: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Show that no certificate with factor degree <= degree exists
    Refute {
        #[arg(long)]
        l1: PathBuf,
        #[arg(long)]
        l2: PathBuf,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Evaluate a pencil at a scalar point or a matrix tuple
    Eval {
        #[arg(long)]
        pencil: PathBuf,
        /// Comma-separated rationals, e.g. "1/2,-3"
        #[arg(long, conflicts_with = "tuple")]
        point: Option<String>,
        /// JSON file with a symmetric matrix tuple
        #[arg(long)]
        tuple: Option<PathBuf>,
    },
    /// Emit a CSV membership grid for a two-variable pencil
    Plot {
        #[arg(long)]
        pencil: PathBuf,
        /// Window "x1min,x1max,x2min,x2max" as rationals
        #[arg(long)]
        window: String,
        /// Grid step, a positive rational
        #[arg(long)]
        step: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    status: &'static str,
    code: i32,
    payload: Value,
}

impl Failure {
    fn parse(msg: impl Into<String>) -> Self {
        Failure { status: "parse_error", code: EXIT_PARSE, payload: json!({"error": msg.into()}) }
    }
}

type CmdResult = Result<(Value, Vec<String>), Failure>;

fn main() {
    let cli = Cli::parse();
    let name = match &cli.cmd {
        Cmd::Analyze { .. } => "analyze",
        Cmd::Certify { .. } => "certify",
        Cmd::Verify { .. } => "verify",
        Cmd::Refute { .. } => "refute",
        Cmd::Eval { .. } => "eval",
        Cmd::Plot { .. } => "plot",
    };
    let start = Instant::now();
    let outcome = run(cli.cmd);
    let timing = start.elapsed().as_millis() as u64;
    let (status, code, result, warnings) = match outcome {
        Ok((payload, warnings)) => ("ok", EXIT_OK, payload, warnings),
        Err(f) => (f.status, f.code, f.payload, Vec::new()),
    };
    let report = json!({
        "command": name,
        "status": status,
        "timing_ms": timing,
        "result": result,
        "warnings": warnings,
    });
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    std::process::exit(code);
}

fn run(cmd: Cmd) -> CmdResult {
    match cmd {
        Cmd::Analyze { pencil } => cmd_analyze(&pencil),
        Cmd::Certify { l1, l2, method, degree, tol, den_bound, output } => {
            cmd_certify(&l1, &l2, method, degree, tol, den_bound, output.as_deref())
        }
        Cmd::Verify { l1, l2, cert, tol } => cmd_verify(&l1, &l2, &cert, tol),
        Cmd::Refute { l1, l2, degree, tol } => cmd_refute(&l1, &l2, degree, tol),
        Cmd::Eval { pencil, point, tuple } => cmd_eval(&pencil, point.as_deref(), tuple.as_deref()),
        Cmd::Plot { pencil, window, step, output } => {
            cmd_plot(&pencil, &window, &step, output.as_deref())
        }
    }
}

fn load_pencil(path: &Path) -> Result<LinearPencil, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
    LinearPencil::from_json_str(&text)
        .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn cmd_analyze(path: &Path) -> CmdResult {
    let pencil = load_pencil(path)?;
    let mut payload = json!({
        "d": pencil.d(),
        "n": pencil.n(),
        "diagonal": pencil.is_diagonal(),
        "monic": pencil.is_monic(),
    });
    let mut warnings = Vec::new();

    if pencil.is_diagonal() {
        let region = pencil.region().expect("diagonal");
        let cls = classify(&region);
        payload["classification"] = cls.to_json();
        let (is_simplex, facets) = simplex_check(&region);
        payload["simplex"] = json!({"is_simplex": is_simplex, "facets": facets});
        if let Ok(vs) = vertices(&region) {
            payload["vertices"] = json!(vs
                .vertices
                .iter()
                .map(|v| v.iter().map(fmt_rat).collect::<Vec<_>>())
                .collect::<Vec<_>>());
            payload["rays"] = json!(vs
                .rays
                .iter()
                .map(|r| r.iter().map(fmt_rat).collect::<Vec<_>>())
                .collect::<Vec<_>>());
        }
    } else {
        warnings.push("pencil is not diagonal; classification is limited to shape checks".into());
        let sig = pencil.constant().signature();
        payload["p0_signature"] =
            json!({"n_plus": sig.n_plus, "n_minus": sig.n_minus, "n_zero": sig.n_zero});
        let reducible = monic_reduce(&pencil, ReductionBackend::Auto).is_ok();
        payload["monic_reducible"] = json!(reducible);
    }
    Ok((payload, warnings))
}

fn engine_failure(e: EngineError, l1: &LinearPencil, l2: &LinearPencil) -> Failure {
    match e {
        EngineError::Infeasible(report) => {
            let mut payload = json!({"refutation": report.to_json()});
            if instances::matches_boundedness_pair(l1, l2) {
                payload["exact_refutation"] = refute_example1().to_json();
            }
            Failure { status: "infeasible", code: EXIT_INFEASIBLE, payload }
        }
        EngineError::Unknown(msg) => Failure {
            status: "unknown",
            code: EXIT_UNKNOWN,
            payload: json!({"error": msg}),
        },
        EngineError::NoPathFound(msg) => Failure {
            status: "unknown",
            code: EXIT_UNKNOWN,
            payload: json!({"error": format!("no path found: {msg}")}),
        },
        EngineError::PositivityFailed { witness } => Failure {
            status: "precondition_failed",
            code: EXIT_PRECONDITION,
            payload: json!({"error": "positivity failed", "witness": witness}),
        },
        other => Failure {
            status: "precondition_failed",
            code: EXIT_PRECONDITION,
            payload: json!({"error": other.to_string()}),
        },
    }
}

fn cmd_certify(
    l1_path: &Path,
    l2_path: &Path,
    method: Method,
    degree: u32,
    tol: f64,
    den_bound: u64,
    output: Option<&Path>,
) -> CmdResult {
    if degree > 4 {
        return Err(Failure::parse("degree cap must be at most 4"));
    }
    if tol <= 0.0 {
        return Err(Failure::parse("tolerance must be positive"));
    }
    let l1 = load_pencil(l1_path)?;
    let l2 = load_pencil(l2_path)?;
    if l1.n() != l2.n() {
        return Err(Failure::parse(format!(
            "variable counts differ: L1 has {}, L2 has {}",
            l1.n(),
            l2.n()
        )));
    }
    let cfg = EngineConfig { degree_cap: degree, tol, den_bound, ..EngineConfig::default() };

    let outcome: Result<(CertificateDoc, &'static str), EngineError> = match method {
        Method::Auto => certify_auto(&l1, &l2, &cfg).map(|o| (o.doc, o.path.name())),
        Method::Singleton => {
            certify_singleton(&l1, &l2, &cfg).map(|d| (d, EnginePath::Singleton.name()))
        }
        Method::Diagonal => {
            certify_diagonal_bounded(&l1, &l2, &cfg).map(|d| (d, EnginePath::DiagonalBounded.name()))
        }
        Method::OneVar => {
            certify_one_variable(&l1, &l2, &cfg).map(|d| (d, EnginePath::OneVariableBounded.name()))
        }
        Method::Simplex => certify_simplex(&l1, &l2, &cfg).map(|d| (d, EnginePath::Simplex.name())),
        Method::Sdp => sdp_ladder(&l1, &l2, &cfg).map(|d| (d, EnginePath::SdpFallback.name())),
    };

    match outcome {
        Ok((doc, path)) => {
            let report = doc
                .verify(&l1, &l2, tol)
                .map_err(|e| Failure::parse(e.to_string()))?;
            let cert_json = doc.to_json();
            if let Some(out) = output {
                std::fs::write(out, serde_json::to_string_pretty(&cert_json).unwrap())
                    .map_err(|e| Failure::parse(format!("cannot write {}: {e}", out.display())))?;
            }
            Ok((
                json!({
                    "path": path,
                    "certificate": cert_json,
                    "verification": report.to_json(),
                }),
                Vec::new(),
            ))
        }
        Err(e) => Err(engine_failure(e, &l1, &l2)),
    }
}

fn sdp_ladder(
    l1: &LinearPencil,
    l2: &LinearPencil,
    cfg: &EngineConfig,
) -> Result<CertificateDoc, EngineError> {
    let sdp_cfg = SdpConfig { tol: cfg.tol, den_bound: cfg.den_bound, ..SdpConfig::default() };
    let mut last: Option<EngineError> = None;
    for degree in 0..=cfg.degree_cap {
        match degree_bounded_search(l1, l2, degree, &sdp_cfg) {
            SearchOutcome::Certificate(doc) => return Ok(doc),
            SearchOutcome::Infeasible(report) => last = Some(EngineError::Infeasible(report)),
            SearchOutcome::Unknown(msg) => {
                if !matches!(last, Some(EngineError::Infeasible(_))) {
                    last = Some(EngineError::Unknown(msg));
                }
            }
        }
    }
    Err(last.unwrap_or_else(|| EngineError::Unknown("empty degree ladder".into())))
}

fn cmd_verify(l1_path: &Path, l2_path: &Path, cert_path: &Path, tol: f64) -> CmdResult {
    let l1 = load_pencil(l1_path)?;
    let l2 = load_pencil(l2_path)?;
    let text = std::fs::read_to_string(cert_path)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", cert_path.display())))?;
    let doc = CertificateDoc::from_json_str(&text)
        .map_err(|e| Failure::parse(format!("{}: {e}", cert_path.display())))?;
    let report = doc
        .verify(&l1, &l2, tol)
        .map_err(|e| Failure::parse(e.to_string()))?;
    let payload = json!({"verification": report.to_json(), "provenance": doc.provenance()});
    if report.pass {
        Ok((payload, Vec::new()))
    } else {
        Err(Failure { status: "fail", code: EXIT_PRECONDITION, payload })
    }
}

fn cmd_refute(l1_path: &Path, l2_path: &Path, degree: u32, tol: f64) -> CmdResult {
    if degree > 4 {
        return Err(Failure::parse("degree cap must be at most 4"));
    }
    let l1 = load_pencil(l1_path)?;
    let l2 = load_pencil(l2_path)?;
    if l1.n() != l2.n() {
        return Err(Failure::parse("variable counts differ"));
    }

    // fixed-instance detection: the unbounded-region counterexample has a
    // dedicated exact refuter whose verdict covers every degree
    if instances::matches_boundedness_pair(&l1, &l2) {
        let exact = refute_example1();
        let generic = degree_bounded_search(
            &l1,
            &l2,
            degree.min(1),
            &SdpConfig { tol, ..SdpConfig::default() },
        );
        let mut payload = json!({
            "degree": degree,
            "exact_refutation": exact.to_json(),
        });
        if let SearchOutcome::Infeasible(r) = generic {
            payload["refutation"] = r.to_json();
        }
        return Err(Failure { status: "infeasible", code: EXIT_INFEASIBLE, payload });
    }

    let cfg = SdpConfig { tol, ..SdpConfig::default() };
    match degree_bounded_search(&l1, &l2, degree, &cfg) {
        SearchOutcome::Infeasible(report) => Err(Failure {
            status: "infeasible",
            code: EXIT_INFEASIBLE,
            payload: json!({"degree": degree, "refutation": report.to_json()}),
        }),
        SearchOutcome::Certificate(doc) => Ok((
            json!({
                "degree": degree,
                "feasible": true,
                "certificate": doc.to_json(),
            }),
            vec!["the pair is certifiable at this degree; nothing to refute".into()],
        )),
        SearchOutcome::Unknown(msg) => Err(Failure {
            status: "unknown",
            code: EXIT_UNKNOWN,
            payload: json!({"degree": degree, "error": msg}),
        }),
    }
}

fn cmd_eval(pencil_path: &Path, point: Option<&str>, tuple: Option<&Path>) -> CmdResult {
    let pencil = load_pencil(pencil_path)?;
    let value = match (point, tuple) {
        (Some(spec), None) => {
            let coords: Result<Vec<Rat>, String> = spec.split(',').map(parse_rat).collect();
            let coords = coords.map_err(Failure::parse)?;
            pencil
                .eval_point(&coords)
                .map_err(|e| Failure::parse(e.to_string()))?
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
            let v: Value = serde_json::from_str(&text)
                .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
            let tuple = MatrixTuple::from_json(&v)
                .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
            pencil
                .eval_tuple(&tuple)
                .map_err(|e| Failure::parse(e.to_string()))?
        }
        _ => return Err(Failure::parse("exactly one of --point or --tuple is required")),
    };
    let sig = value.signature();
    let rows: Vec<Vec<String>> = (0..value.dim())
        .map(|i| (0..value.dim()).map(|j| fmt_rat(value.at(i, j))).collect())
        .collect();
    Ok((
        json!({
            "matrix": rows,
            "signature": {"n_plus": sig.n_plus, "n_minus": sig.n_minus, "n_zero": sig.n_zero},
            "psd": sig.n_minus == 0,
        }),
        Vec::new(),
    ))
}

fn cmd_plot(pencil_path: &Path, window: &str, step: &str, output: Option<&Path>) -> CmdResult {
    let pencil = load_pencil(pencil_path)?;
    if pencil.n() != 2 {
        return Err(Failure {
            status: "precondition_failed",
            code: EXIT_PRECONDITION,
            payload: json!({"error": "plot requires a two-variable pencil"}),
        });
    }
    let parts: Result<Vec<Rat>, String> = window.split(',').map(parse_rat).collect();
    let parts = parts.map_err(Failure::parse)?;
    let [x1_min, x1_max, x2_min, x2_max] = parts.as_slice() else {
        return Err(Failure::parse("window must be four comma-separated rationals"));
    };
    let step = parse_rat(step).map_err(Failure::parse)?;
    if step <= Rat::from_integer(0.into()) {
        return Err(Failure::parse("step must be positive"));
    }

    let mut csv = String::from("x1,x2,member\n");
    let mut count = 0usize;
    let mut members = 0usize;
    let mut x1 = x1_min.clone();
    while x1 <= *x1_max {
        let mut x2 = x2_min.clone();
        while x2 <= *x2_max {
            let inside = pencil
                .membership(&[x1.clone(), x2.clone()])
                .map_err(|e| Failure::parse(e.to_string()))?;
            csv.push_str(&format!("{},{},{}\n", fmt_rat(&x1), fmt_rat(&x2), inside as u8));
            count += 1;
            members += inside as usize;
            x2 += step.clone();
        }
        x1 += step.clone();
    }

    match output {
        Some(path) => {
            std::fs::write(path, &csv)
                .map_err(|e| Failure::parse(format!("cannot write {}: {e}", path.display())))?;
            Ok((
                json!({"rows": count, "members": members, "written": path.display().to_string()}),
                Vec::new(),
            ))
        }
        None => {
            print!("{csv}");
            Ok((json!({"rows": count, "members": members}), Vec::new()))
        }
    }
}
