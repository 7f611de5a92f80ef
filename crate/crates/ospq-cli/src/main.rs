//! Command line for the ospq toolkit: emit basis data, generator matrices,
//! sigma tables and R-matrices as stable JSON, run the verification suites,
//! and evaluate Casimir eigenvalues.
//!
//! Exit codes: 0 on success / suite pass, 1 on suite failure or a
//! NotScalar / DegenerateSpectrum outcome, 2 on usage or validation errors.

use clap::{Args, Parser, Subcommand};
use num_traits::Zero;
use ospq::casimir::{self, Route};
use ospq::gtensor::{assemble_r, assemble_rt, SigmaTildeSource};
use ospq::lax::vector_sigma_table;
use ospq::qring::Rat;
use ospq::rootdata::{build_basis, BasisSpec, Weight};
use ospq::vecrep::{simple_generators, GradedMatrix};
use ospq::verify::{self, Mode, VerifyReport};
use serde::Serialize;
use std::io::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ospq",
    version,
    about = "Exact R-matrices and Casimir invariants for U_q[osp(m|n)]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RankArgs {
    /// Orthogonal rank parameter (m > 2)
    #[arg(long)]
    m: usize,
    /// Symplectic rank parameter (even n >= 2)
    #[arg(long)]
    n: usize,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Output format
    #[arg(long, default_value = "json", value_parser = ["json", "text"])]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the ordered graded index set with weights
    Basis(RankArgs),
    /// Emit the simple generator matrices e, f and Cartan eigenvalues
    Gens(RankArgs),
    /// Emit the completed sigma table (or one entry)
    Sigma {
        #[command(flatten)]
        rank: RankArgs,
        /// Single entry as "b,a" index labels, e.g. "d1,e1"
        #[arg(long)]
        pair: Option<String>,
    },
    /// Emit the R-matrix (or its opposite) on V x V
    Rmat {
        #[command(flatten)]
        rank: RankArgs,
        /// Emit the opposite R-matrix instead
        #[arg(long)]
        opposite: bool,
    },
    /// Run one verification suite
    Verify {
        /// Suite name
        #[arg(value_parser = [
            "ybe", "intertwine", "coproduct", "serre", "defrel", "appendix",
            "sigma-consistency",
        ])]
        suite: String,
        #[command(flatten)]
        rank: RankArgs,
        /// Substitute s by an exact rational, e.g. "s=3/2" (fast smoke mode)
        #[arg(long)]
        numeric: Option<String>,
    },
    /// Casimir eigenvalue C_l by one of three routes
    Casimir {
        #[command(flatten)]
        rank: RankArgs,
        /// Power l >= 0
        #[arg(long)]
        power: usize,
        /// Eigenvalue route
        #[arg(long, default_value = "pp", value_parser = ["operator", "pp", "closed"])]
        route: String,
        /// Highest weight as comma-separated coefficients, e.g. "d1=1,e1=1/2"
        #[arg(long)]
        lambda: Option<String>,
    },
}

/// Failures carrying the intended process exit code.
enum CmdError {
    /// Bad arguments or invalid input: exit 2.
    Usage(String),
    /// A verification or scalar/spectrum failure: exit 1.
    Failed(String),
}

type CmdResult = Result<(), CmdError>;

fn usage<E: std::fmt::Display>(e: E) -> CmdError {
    CmdError::Usage(e.to_string())
}

// ---- JSON shapes ----------------------------------------------------------

#[derive(Serialize)]
struct MatrixJson {
    dim: usize,
    grading: Vec<u8>,
    entries: Vec<EntryJson>,
}

#[derive(Serialize)]
struct EntryJson {
    r: usize,
    c: usize,
    v: String,
}

fn matrix_json(m: &GradedMatrix) -> MatrixJson {
    MatrixJson {
        dim: m.dim(),
        grading: m.grading().to_vec(),
        entries: m
            .entries()
            .map(|(r, c, v)| EntryJson {
                r,
                c,
                v: v.to_string(),
            })
            .collect(),
    }
}

#[derive(Serialize)]
struct BasisJson {
    m: usize,
    n: usize,
    l: usize,
    k: usize,
    rho: Vec<String>,
    order: Vec<IndexJson>,
}

#[derive(Serialize)]
struct IndexJson {
    label: String,
    parity: u8,
    weight: Vec<i64>,
    xi: i8,
    bar: usize,
}

#[derive(Serialize)]
struct GensJson {
    m: usize,
    n: usize,
    generators: Vec<GenJson>,
}

#[derive(Serialize)]
struct GenJson {
    root: String,
    e: MatrixJson,
    f: MatrixJson,
    h: Vec<i64>,
}

#[derive(Serialize)]
struct SigmaJson {
    m: usize,
    n: usize,
    entries: Vec<SigmaEntryJson>,
}

#[derive(Serialize)]
struct SigmaEntryJson {
    b: String,
    a: String,
    matrix: MatrixJson,
}

#[derive(Serialize)]
struct VerifyJson {
    suite: String,
    m: usize,
    n: usize,
    passed: bool,
    identities: Vec<IdentityJson>,
}

#[derive(Serialize)]
struct IdentityJson {
    name: String,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<CounterexampleJson>,
}

#[derive(Serialize)]
struct CounterexampleJson {
    row: usize,
    col: usize,
    lhs: String,
    rhs: String,
}

#[derive(Serialize)]
struct EigenJson {
    m: usize,
    n: usize,
    l: usize,
    route: String,
    lambda: std::collections::BTreeMap<String, String>,
    value: String,
    degenerate: bool,
}

// ---- helpers ----------------------------------------------------------------

fn emit(rank: &RankArgs, json: String, text: String) -> CmdResult {
    let body = if rank.format == "json" { json } else { text };
    match &rank.out {
        None => {
            println!("{body}");
            Ok(())
        }
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            writeln!(f, "{body}").map_err(|e| usage(e.to_string()))
        }
    }
}

fn spec_of(rank: &RankArgs) -> Result<BasisSpec, CmdError> {
    build_basis(rank.m, rank.n).map_err(usage)
}

fn parse_rat(s: &str) -> Result<Rat, CmdError> {
    s.parse::<Rat>()
        .map_err(|e| usage(format!("bad rational '{s}': {e}")))
}

fn parse_lambda(spec: &BasisSpec, text: &str) -> Result<Weight, CmdError> {
    let mut w = Weight::zero(spec.l, spec.k);
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (name, val) = part
            .split_once('=')
            .ok_or_else(|| usage(format!("bad lambda component '{part}' (want name=value)")))?;
        let v = parse_rat(val.trim())?;
        let name = name.trim();
        if let Some(i) = name.strip_prefix('e') {
            let i: usize = i
                .parse()
                .map_err(|_| usage(format!("bad label '{name}'")))?;
            if i == 0 || i > spec.l {
                return Err(usage(format!(
                    "label '{name}' out of range (l = {})",
                    spec.l
                )));
            }
            w.eps[i - 1] = v;
        } else if let Some(mu) = name.strip_prefix('d') {
            let mu: usize = mu
                .parse()
                .map_err(|_| usage(format!("bad label '{name}'")))?;
            if mu == 0 || mu > spec.k {
                return Err(usage(format!(
                    "label '{name}' out of range (k = {})",
                    spec.k
                )));
            }
            w.delta[mu - 1] = v;
        } else {
            return Err(usage(format!("unknown weight label '{name}'")));
        }
    }
    Ok(w)
}

fn parse_numeric(text: &str) -> Result<Mode, CmdError> {
    let rest = text
        .strip_prefix("s=")
        .ok_or_else(|| usage("numeric substitution must look like s=P/Q"))?;
    let s = parse_rat(rest)?;
    if s.is_zero() {
        return Err(usage("s must be nonzero"));
    }
    Ok(Mode::Numeric(s))
}

fn weight_map(w: &Weight) -> std::collections::BTreeMap<String, String> {
    let mut out = std::collections::BTreeMap::new();
    for (i, c) in w.eps.iter().enumerate() {
        if !c.is_zero() {
            out.insert(format!("e{}", i + 1), c.to_string());
        }
    }
    for (mu, c) in w.delta.iter().enumerate() {
        if !c.is_zero() {
            out.insert(format!("d{}", mu + 1), c.to_string());
        }
    }
    out
}

fn int_weight(spec: &BasisSpec, pos: usize) -> Vec<i64> {
    let w = spec.weight(pos);
    w.eps
        .iter()
        .chain(w.delta.iter())
        .map(|c| {
            let r = c * Rat::from_integer(1.into());
            ospq::rootdata::rat_to_i64(&r)
        })
        .collect()
}

// ---- subcommands -------------------------------------------------------------

fn cmd_basis(rank: &RankArgs) -> CmdResult {
    let spec = spec_of(rank)?;
    let order: Vec<IndexJson> = (0..spec.dim())
        .map(|p| IndexJson {
            label: spec.label(p),
            parity: spec.parity(p),
            weight: int_weight(&spec, p),
            xi: spec.xi(p),
            bar: spec.bar(p),
        })
        .collect();
    let rho: Vec<String> = spec
        .rho()
        .eps
        .iter()
        .chain(spec.rho().delta.iter())
        .map(|c| c.to_string())
        .collect();
    let j = BasisJson {
        m: spec.m,
        n: spec.n,
        l: spec.l,
        k: spec.k,
        rho,
        order,
    };
    let text = (0..spec.dim())
        .map(|p| {
            format!(
                "{} parity={} bar={}",
                spec.label(p),
                spec.parity(p),
                spec.bar(p)
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    emit(rank, serde_json::to_string(&j).unwrap(), text)
}

fn cmd_gens(rank: &RankArgs) -> CmdResult {
    let spec = spec_of(rank)?;
    let gens = simple_generators(&spec);
    let j = GensJson {
        m: spec.m,
        n: spec.n,
        generators: gens
            .iter()
            .map(|g| GenJson {
                root: g.root.name(),
                e: matrix_json(&g.e),
                f: matrix_json(&g.f),
                h: g.h.clone(),
            })
            .collect(),
    };
    let text = gens
        .iter()
        .map(|g| {
            format!(
                "{}: e nnz={}, f nnz={}",
                g.root.name(),
                g.e.nnz(),
                g.f.nnz()
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    emit(rank, serde_json::to_string(&j).unwrap(), text)
}

fn cmd_sigma(rank: &RankArgs, pair: &Option<String>) -> CmdResult {
    let spec = spec_of(rank)?;
    let table = vector_sigma_table(&spec).map_err(usage)?;
    let wanted: Option<(usize, usize)> = match pair {
        None => None,
        Some(p) => {
            let (b, a) = p
                .split_once(',')
                .ok_or_else(|| usage("pair must look like b,a (e.g. d1,e1)"))?;
            let b = spec
                .pos_of_label(b.trim())
                .ok_or_else(|| usage(format!("unknown index label '{b}'")))?;
            let a = spec
                .pos_of_label(a.trim())
                .ok_or_else(|| usage(format!("unknown index label '{a}'")))?;
            if !spec.theta(b, a) {
                return Err(usage(
                    "pair must be weight-decreasing: weight(b) > weight(a)",
                ));
            }
            Some((b, a))
        }
    };
    let entries: Vec<SigmaEntryJson> = table
        .pairs()
        .filter(|&(b, a)| wanted.map_or(true, |w| w == (b, a)))
        .map(|(b, a)| SigmaEntryJson {
            b: spec.label(b),
            a: spec.label(a),
            matrix: matrix_json(table.get(b, a).unwrap()),
        })
        .collect();
    let text = entries
        .iter()
        .map(|e| format!("sigma[{},{}] nnz={}", e.b, e.a, e.matrix.entries.len()))
        .collect::<Vec<_>>()
        .join("\n");
    let j = SigmaJson {
        m: spec.m,
        n: spec.n,
        entries,
    };
    emit(rank, serde_json::to_string(&j).unwrap(), text)
}

fn cmd_rmat(rank: &RankArgs, opposite: bool) -> CmdResult {
    let spec = spec_of(rank)?;
    let r = if opposite {
        assemble_rt(&spec)
    } else {
        assemble_r(&spec, SigmaTildeSource::Closed)
    };
    let j = matrix_json(&r);
    let text = format!("dim={} nnz={}", r.dim(), r.nnz());
    emit(rank, serde_json::to_string(&j).unwrap(), text)
}

fn verify_json(rep: &VerifyReport) -> VerifyJson {
    VerifyJson {
        suite: rep.suite.clone(),
        m: rep.m,
        n: rep.n,
        passed: rep.passed(),
        identities: rep
            .identities
            .iter()
            .map(|c| IdentityJson {
                name: c.name.clone(),
                passed: c.passed,
                counterexample: c.counterexample.as_ref().map(|x| CounterexampleJson {
                    row: x.row,
                    col: x.col,
                    lhs: x.lhs.clone(),
                    rhs: x.rhs.clone(),
                }),
            })
            .collect(),
    }
}

fn cmd_verify(suite: &str, rank: &RankArgs, numeric: &Option<String>) -> CmdResult {
    let spec = spec_of(rank)?;
    let mode = match numeric {
        None => Mode::Symbolic,
        Some(t) => parse_numeric(t)?,
    };
    let rep = run_suite(&spec, suite, &mode).map_err(usage)?;
    let passed = rep.passed();
    let j = verify_json(&rep);
    let text = format!(
        "{} ({},{}): {} [{} identities]",
        rep.suite,
        rep.m,
        rep.n,
        if passed { "PASS" } else { "FAIL" },
        rep.identities.len()
    );
    if rank.format == "text" {
        eprintln!("wall: {:?}", rep.wall);
    }
    emit(rank, serde_json::to_string(&j).unwrap(), text)?;
    if passed {
        Ok(())
    } else {
        Err(CmdError::Failed(format!("suite {suite} failed")))
    }
}

fn run_suite(spec: &BasisSpec, suite: &str, mode: &Mode) -> Result<VerifyReport, String> {
    let table = || vector_sigma_table(spec).map_err(|e| e.to_string());
    let r = || assemble_r(spec, SigmaTildeSource::Closed);
    let rep = match suite {
        "defrel" => verify::check_defining_relations(spec, mode),
        "appendix" => verify::check_appendix_relations(&table()?, mode),
        "ybe" => verify::check_ybe(spec, &r(), mode),
        "intertwine" => verify::check_intertwining(spec, &r(), mode),
        "coproduct" => verify::check_coproduct_property(&table()?, mode),
        "serre" => verify::check_serre(&table()?, mode),
        "sigma-consistency" => verify::check_sigma_consistency(&table()?, mode),
        other => return Err(format!("unknown suite '{other}'")),
    };
    rep.map_err(|e| e.to_string())
}

fn cmd_casimir(rank: &RankArgs, power: usize, route: &str, lambda: &Option<String>) -> CmdResult {
    let spec = spec_of(rank)?;
    let report = match route {
        "operator" => {
            if lambda.is_some() {
                return Err(usage("--lambda only applies to the pp and closed routes"));
            }
            casimir::chi_operator(&spec, power)
        }
        _ => {
            let lam = match lambda {
                None => Weight::basis_delta(spec.l, spec.k, 1),
                Some(t) => parse_lambda(&spec, t)?,
            };
            if route == "pp" {
                casimir::chi_pp(&spec, &lam, power)
            } else {
                casimir::chi_closed(&spec, &lam, power)
            }
        }
    };
    let report = match report {
        Ok(r) => r,
        Err(e @ casimir::CasimirError::UnsupportedWeight(_)) => return Err(usage(e)),
        Err(e) => return Err(CmdError::Failed(e.to_string())),
    };
    let j = EigenJson {
        m: spec.m,
        n: spec.n,
        l: report.l,
        route: Route::as_str(&report.route).to_string(),
        lambda: weight_map(&report.lambda),
        value: report.value.to_string(),
        degenerate: report.degenerate,
    };
    let text = report.value.to_string();
    emit(rank, serde_json::to_string(&j).unwrap(), text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Basis(rank) => cmd_basis(rank),
        Command::Gens(rank) => cmd_gens(rank),
        Command::Sigma { rank, pair } => cmd_sigma(rank, pair),
        Command::Rmat { rank, opposite } => cmd_rmat(rank, *opposite),
        Command::Verify {
            suite,
            rank,
            numeric,
        } => cmd_verify(suite, rank, numeric),
        Command::Casimir {
            rank,
            power,
            route,
            lambda,
        } => cmd_casimir(rank, *power, route, lambda),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
