//! Command-line front end. [`run`] does the work and returns the document to
//! write plus a one-line summary; the binary only handles I/O and exit codes.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::constructions::{self, corona, join, kronecker, pendant, power_hypergraph};
use crate::hypergraph::{complete_hypergraph, hyperstar, loose_path, Graph, HypergraphError, TensorKind, UniformHypergraph};
use crate::hypertree::{
    canonical_form, compare_factorizations, expected_degree, hypertree_charpoly, matching_counts, matching_polynomial,
    reciprocal_report, reference_p3_r3, reference_p3_r4, DiscrepancyReport, HypertreeError,
};
use crate::numeric::{multistart_eigen_search, sshopm, NumericError, SolverConfig};
use crate::poly::{FactoredPolynomial, PolyError};
use crate::tensor::{ComplexTensor, TensorError};
use crate::theorems::{self as th, Eigenpair, Side, TheoremError};

/// Version tag written into every manifest.
pub const FORMAT_VERSION: &str = "hyperspectra/1";

#[derive(Debug, Parser)]
#[command(name = "hyperspectra", version, about = "Spectra of uniform hypergraph products and hypertrees")]
pub struct Cli {
    /// Seed for randomized starts.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Residual tolerance for verification.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Iteration cap for the numeric solvers.
    #[arg(long = "max-iters", global = true, default_value_t = 500)]
    pub max_iters: usize,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a hypergraph and write it in the JSON hypergraph format.
    Construct {
        #[command(subcommand)]
        op: ConstructOp,
    },
    /// Eigenpairs from the product theorems or the numeric solvers.
    Spectra(SpectraArgs),
    /// Factored characteristic polynomial of a hypertree.
    Charpoly {
        input: PathBuf,
        /// Factored polynomial file to compare against.
        #[arg(long)]
        reference: Option<PathBuf>,
    },
    /// Reciprocal eigenvalue properties of a hypertree.
    Reciprocal { input: PathBuf },
    /// Matching counts and matching polynomial.
    Matching { input: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum ConstructOp {
    Join { a: PathBuf, b: PathBuf },
    Kron { a: PathBuf, b: PathBuf },
    Corona { g: PathBuf, h: PathBuf },
    Pendant { input: PathBuf, k: usize },
    /// Power hypergraph of a graph file.
    Power { graph: PathBuf, r: usize },
    Complete { n: usize, r: usize },
    Star { m: usize, r: usize },
    Path { m: usize, r: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Theorem,
    Newton,
    Sshopm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremOp {
    Join,
    Kron,
    CoronaK1,
    Pendant,
    Corona,
}

#[derive(Debug, clap::Args)]
pub struct SpectraArgs {
    #[arg(value_enum)]
    pub method: Method,
    /// Tensor: A, L or Q.
    pub kind: TensorKind,
    /// Input hypergraph files (two for join, kron and corona).
    pub inputs: Vec<PathBuf>,
    /// Product theorem to apply (method `theorem`).
    #[arg(long, value_enum)]
    pub op: Option<TheoremOp>,
    /// Only use factor eigenpairs with this (real) eigenvalue.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Pendant edges per vertex.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Random starts for the multistart search.
    #[arg(long, default_value_t = 24)]
    pub starts: usize,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("resource guard: {0}")]
    Guard(String),
    #[error("verification failure: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) => 2,
            CliError::Guard(_) => 3,
        }
    }
}

fn from_tensor(e: TensorError) -> CliError {
    match e {
        TensorError::TooLarge { .. } => CliError::Guard(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

impl From<TensorError> for CliError {
    fn from(e: TensorError) -> Self {
        from_tensor(e)
    }
}

impl From<HypergraphError> for CliError {
    fn from(e: HypergraphError) -> Self {
        match e {
            HypergraphError::Tensor(t) => from_tensor(t),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::ExpansionTooLarge(_) => CliError::Guard(e.to_string()),
            PolyError::NonConvergence { .. } => CliError::Verification(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<NumericError> for CliError {
    fn from(e: NumericError) -> Self {
        match e {
            NumericError::Tensor(t) => from_tensor(t),
            NumericError::Theorem(t) => t.into(),
            NumericError::NonConvergence { .. } | NumericError::SingularJacobian(_) => {
                CliError::Verification(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<TheoremError> for CliError {
    fn from(e: TheoremError) -> Self {
        match e {
            TheoremError::Tensor(t) => from_tensor(t),
            TheoremError::Hypergraph(h) => h.into(),
            TheoremError::Poly(p) => p.into(),
            TheoremError::FactorResidual { .. } | TheoremError::Inconsistent { .. } => {
                CliError::Verification(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<HypertreeError> for CliError {
    fn from(e: HypertreeError) -> Self {
        match e {
            HypertreeError::Guard { .. } => CliError::Guard(e.to_string()),
            HypertreeError::Hypergraph(h) => h.into(),
            HypertreeError::Poly(p) => p.into(),
            HypertreeError::Numeric(n) => n.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// Recorded at the top of every output document.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub format_version: &'static str,
    pub command: String,
    pub inputs: Vec<String>,
    pub output: Option<String>,
    pub seed: u64,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl RunManifest {
    fn comment_lines(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("# format_version: {}\n", self.format_version));
        s.push_str(&format!("# command: {}\n", self.command));
        s.push_str(&format!("# inputs: {}\n", self.inputs.join(" ")));
        s.push_str(&format!("# output: {}\n", self.output.as_deref().unwrap_or("-")));
        s.push_str(&format!("# seed: {}\n", self.seed));
        s.push_str(&format!("# tolerance: {:.16e}\n", self.tolerance));
        s.push_str(&format!("# max_iterations: {}\n", self.max_iterations));
        s
    }
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub document: String,
    pub summary: String,
    /// 0 on success, 1 when some verification failed.
    pub exit_code: u8,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_hypergraph(path: &Path) -> Result<UniformHypergraph, CliError> {
    UniformHypergraph::from_json(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    Graph::from_json(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_c(z: Complex64) -> String {
    format!("{},{}", fmt_f(z.re), fmt_f(z.im))
}

fn json_document(manifest: &RunManifest, body: Value) -> String {
    let mut doc = json!({ "manifest": manifest });
    if let (Some(d), Value::Object(b)) = (doc.as_object_mut(), body) {
        d.extend(b);
    }
    serde_json::to_string_pretty(&doc).expect("document serializes") + "\n"
}

/// Executes one command.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    if !(cli.tol > 0.0) {
        return Err(CliError::Input(format!("tolerance {} must be positive", cli.tol)));
    }
    let (name, inputs) = command_identity(&cli.command);
    let manifest = RunManifest {
        format_version: FORMAT_VERSION,
        command: name,
        inputs,
        output: cli.out.as_ref().map(|p| p.display().to_string()),
        seed: cli.seed,
        tolerance: cli.tol,
        max_iterations: cli.max_iters,
    };
    match &cli.command {
        Command::Construct { op } => construct(op, &manifest),
        Command::Spectra(args) => spectra(cli, args, &manifest),
        Command::Charpoly { input, reference } => charpoly(cli, input, reference.as_deref(), &manifest),
        Command::Reciprocal { input } => reciprocal(cli, input, &manifest),
        Command::Matching { input } => matching(cli, input, &manifest),
    }
}

fn command_identity(c: &Command) -> (String, Vec<String>) {
    let p = |p: &PathBuf| p.display().to_string();
    match c {
        Command::Construct { op } => match op {
            ConstructOp::Join { a, b } => ("construct join".into(), vec![p(a), p(b)]),
            ConstructOp::Kron { a, b } => ("construct kron".into(), vec![p(a), p(b)]),
            ConstructOp::Corona { g, h } => ("construct corona".into(), vec![p(g), p(h)]),
            ConstructOp::Pendant { input, k } => (format!("construct pendant {k}"), vec![p(input)]),
            ConstructOp::Power { graph, r } => (format!("construct power {r}"), vec![p(graph)]),
            ConstructOp::Complete { n, r } => (format!("construct complete {n} {r}"), vec![]),
            ConstructOp::Star { m, r } => (format!("construct star {m} {r}"), vec![]),
            ConstructOp::Path { m, r } => (format!("construct path {m} {r}"), vec![]),
        },
        Command::Spectra(a) => {
            let method = match a.method {
                Method::Theorem => "theorem",
                Method::Newton => "newton",
                Method::Sshopm => "sshopm",
            };
            let mut name = format!("spectra {method} {}", a.kind.symbol());
            if let Some(op) = a.op {
                name.push_str(&format!(" --op {}", serde_json::to_value(op).expect("op").as_str().unwrap_or("")));
            }
            if let Some(l) = a.lambda {
                name.push_str(&format!(" --lambda {l}"));
            }
            if a.k != 1 {
                name.push_str(&format!(" --k {}", a.k));
            }
            (name, a.inputs.iter().map(p).collect())
        }
        Command::Charpoly { input, reference } => {
            let mut inputs = vec![p(input)];
            inputs.extend(reference.iter().map(p));
            ("charpoly".into(), inputs)
        }
        Command::Reciprocal { input } => ("reciprocal".into(), vec![p(input)]),
        Command::Matching { input } => ("matching".into(), vec![p(input)]),
    }
}

fn construct(op: &ConstructOp, manifest: &RunManifest) -> Result<Outcome, CliError> {
    let mut warning = None;
    let mut ledger = None;
    let h = match op {
        ConstructOp::Join { a, b } => join(&read_hypergraph(a)?, &read_hypergraph(b)?)?,
        ConstructOp::Kron { a, b } => {
            let (a, b) = (read_hypergraph(a)?, read_hypergraph(b)?);
            ledger = Some(constructions::kronecker_ledger(&a, &b)?);
            kronecker(&a, &b)?
        }
        ConstructOp::Corona { g, h } => {
            let c = corona(&read_hypergraph(g)?, &read_hypergraph(h)?)?;
            warning = c.warning.map(|w| format!("{w:?}"));
            c.hypergraph
        }
        ConstructOp::Pendant { input, k } => pendant(&read_hypergraph(input)?, *k)?,
        ConstructOp::Power { graph, r } => power_hypergraph(&read_graph(graph)?, *r)?,
        ConstructOp::Complete { n, r } => complete_hypergraph(*n, *r)?,
        ConstructOp::Star { m, r } => hyperstar(*m, *r)?,
        ConstructOp::Path { m, r } => loose_path(*m, *r)?,
    };
    let mut body = h.to_json_value();
    if let (Some(w), Value::Object(b)) = (&warning, &mut body) {
        b.insert("warning".into(), Value::String(w.clone()));
    }
    if let (Some(l), Value::Object(b)) = (&ledger, &mut body) {
        b.insert("edge_ledger".into(), serde_json::to_value(l).expect("ledger serializes"));
    }
    Ok(Outcome {
        document: json_document(manifest, body),
        summary: format!(
            "vertices: {} edges: {}{}",
            h.n(),
            h.edge_count(),
            warning.map(|w| format!(" warning: {w}")).unwrap_or_default()
        ),
        exit_code: 0,
    })
}

/// One emitted eigen-solution.
#[derive(Debug, Clone, Serialize)]
pub struct SolutionRecord {
    pub theorem: String,
    pub kind: TensorKind,
    pub root: Option<Complex64>,
    pub eigenvalue: Complex64,
    pub residual: Option<f64>,
    pub excluded: bool,
    pub vector: Option<Vec<Complex64>>,
}

fn solver_config(cli: &Cli, starts: usize) -> SolverConfig {
    SolverConfig {
        max_iterations: cli.max_iters,
        tolerance: (cli.tol * 0.01).max(1e-14),
        shift: None,
        starts: starts.max(1),
        seed: cli.seed,
    }
}

fn factor_pairs(h: &UniformHypergraph, kind: TensorKind, cfg: &SolverConfig, lambda: Option<f64>) -> Result<Vec<Eigenpair>, CliError> {
    let t: ComplexTensor = h.tensor(kind)?;
    let mut pairs = multistart_eigen_search(&t, cfg)?;
    if let Some(l) = lambda {
        pairs.retain(|p| (p.value - l).norm() <= 1e-6);
        if pairs.is_empty() {
            return Err(CliError::Input(format!("no factor eigenpair with eigenvalue {l} was found")));
        }
    }
    Ok(pairs)
}

fn regular(h: &UniformHypergraph, which: &str) -> Result<usize, CliError> {
    h.regularity()
        .ok_or_else(|| CliError::Input(format!("{which} factor must be regular for this theorem")))
}

fn record(theorem: &str, kind: TensorKind, root: Option<Complex64>, pair: Eigenpair) -> SolutionRecord {
    SolutionRecord {
        theorem: theorem.into(),
        kind,
        root,
        eigenvalue: pair.value,
        residual: Some(pair.residual),
        excluded: false,
        vector: Some(pair.vector),
    }
}

fn corona_records(
    theorem: &str,
    kind: TensorKind,
    sols: Vec<th::CoronaSolution>,
    t: &ComplexTensor,
    out: &mut Vec<SolutionRecord>,
) -> Result<(), CliError> {
    for s in sols {
        match s.candidate() {
            Some(c) => out.push(record(theorem, kind, Some(s.root), c.verify(t)?)),
            None => out.push(SolutionRecord {
                theorem: theorem.into(),
                kind,
                root: Some(s.root),
                eigenvalue: s.eigenvalue,
                residual: None,
                excluded: true,
                vector: None,
            }),
        }
    }
    Ok(())
}

fn lifted_join(
    kind: TensorKind,
    pairs: &[Eigenpair],
    side: Side,
    n_other: usize,
    r: usize,
    t: &ComplexTensor,
    out: &mut Vec<SolutionRecord>,
) -> Result<(), CliError> {
    for p in pairs {
        if th::is_nonmain_vector(&p.vector, r, th::RESIDUAL_TOL).unwrap_or(false) {
            let c = th::join_lifted_nonmain(kind, p, side, n_other, r)?;
            out.push(record("join-lifted", kind, None, c.verify(t)?));
        }
    }
    Ok(())
}

fn inputs_exact(args: &SpectraArgs, count: usize) -> Result<Vec<UniformHypergraph>, CliError> {
    if args.inputs.len() != count {
        return Err(CliError::Input(format!("expected {count} input file(s), got {}", args.inputs.len())));
    }
    args.inputs.iter().map(|p| read_hypergraph(p)).collect()
}

fn theorem_records(cli: &Cli, args: &SpectraArgs) -> Result<Vec<SolutionRecord>, CliError> {
    let op = args
        .op
        .ok_or_else(|| CliError::Input("method theorem needs --op".into()))?;
    let kind = args.kind;
    let cfg = solver_config(cli, args.starts);
    let mut out = Vec::new();
    match op {
        TheoremOp::Join => {
            let hs = inputs_exact(args, 2)?;
            let (h1, h2) = (&hs[0], &hs[1]);
            let r = h1.r();
            let product = join(h1, h2)?;
            let t: ComplexTensor = product.tensor(kind)?;
            let sols = match kind {
                TensorKind::Laplacian => th::join_laplacian_solutions(h1.n(), h2.n(), r)?,
                TensorKind::Adjacency => {
                    th::join_adjacency_regular(h1.n(), regular(h1, "first")?, h2.n(), regular(h2, "second")?, r)?
                }
                TensorKind::Signless => {
                    th::join_signless_regular(h1.n(), regular(h1, "first")?, h2.n(), regular(h2, "second")?, r)?
                }
            };
            for s in sols {
                let name = if s.perron { "join-perron" } else { "join" };
                out.push(record(name, kind, Some(s.epsilon), s.candidate().verify(&t)?));
            }
            lifted_join(kind, &factor_pairs(h1, kind, &cfg, None)?, Side::Left, h2.n(), r, &t, &mut out)?;
            lifted_join(kind, &factor_pairs(h2, kind, &cfg, None)?, Side::Right, h1.n(), r, &t, &mut out)?;
        }
        TheoremOp::Kron => {
            let hs = inputs_exact(args, 2)?;
            let (h1, h2) = (&hs[0], &hs[1]);
            let r = h1.r();
            let t: ComplexTensor = kronecker(h1, h2)?.tensor(kind)?;
            let degrees = match kind {
                TensorKind::Adjacency => None,
                _ => Some((regular(h1, "first")?, regular(h2, "second")?)),
            };
            let p1 = factor_pairs(h1, kind, &cfg, args.lambda)?;
            let p2 = factor_pairs(h2, kind, &cfg, None)?;
            for a in &p1 {
                for b in &p2 {
                    let c = match (kind, degrees) {
                        (TensorKind::Laplacian, Some((d1, d2))) => th::kronecker_laplacian_regular(a, b, d1, d2, r)?,
                        (TensorKind::Signless, Some((d1, d2))) => th::kronecker_signless_regular(a, b, d1, d2, r)?,
                        _ => th::kronecker_adjacency_pair(a, b, r)?,
                    };
                    out.push(record("kron", kind, None, c.verify(&t)?));
                }
            }
        }
        TheoremOp::CoronaK1 | TheoremOp::Pendant => {
            let hs = inputs_exact(args, 1)?;
            let h = &hs[0];
            let k = if op == TheoremOp::CoronaK1 { 1 } else { args.k };
            let t: ComplexTensor = pendant(h, k)?.tensor(kind)?;
            let name = if op == TheoremOp::CoronaK1 { "corona-k1" } else { "pendant" };
            for p in factor_pairs(h, kind, &cfg, args.lambda)? {
                corona_records(name, kind, th::pendant_k_solutions(kind, &p, k, h.r())?, &t, &mut out)?;
            }
        }
        TheoremOp::Corona => {
            let hs = inputs_exact(args, 2)?;
            let (g, h) = (&hs[0], &hs[1]);
            let r = g.r();
            let t: ComplexTensor = corona(g, h)?.hypergraph.tensor(kind)?;
            let d = match kind {
                TensorKind::Laplacian => 0,
                _ => regular(h, "second")?,
            };
            for p in factor_pairs(g, kind, &cfg, args.lambda)? {
                let sols = match kind {
                    TensorKind::Laplacian => th::corona_laplacian_general(&p, h.n(), r)?,
                    TensorKind::Adjacency => th::corona_adjacency_regular(&p, d, h.n(), r)?,
                    TensorKind::Signless => th::corona_signless_regular(&p, d, h.n(), r)?,
                };
                corona_records("corona", kind, sols, &t, &mut out)?;
            }
            for p in factor_pairs(h, kind, &cfg, None)? {
                if th::is_nonmain_vector(&p.vector, r, th::RESIDUAL_TOL).unwrap_or(false) {
                    for c in th::corona_lifted_nonmain(kind, &p, g.n(), r)? {
                        out.push(record("corona-lifted", kind, None, c.verify(&t)?));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn spectra(cli: &Cli, args: &SpectraArgs, manifest: &RunManifest) -> Result<Outcome, CliError> {
    let records = match args.method {
        Method::Theorem => theorem_records(cli, args)?,
        Method::Newton => {
            let h = &inputs_exact(args, 1)?[0];
            let t: ComplexTensor = h.tensor(args.kind)?;
            multistart_eigen_search(&t, &solver_config(cli, args.starts))?
                .into_iter()
                .map(|p| record("newton", args.kind, None, p))
                .collect()
        }
        Method::Sshopm => {
            let h = &inputs_exact(args, 1)?[0];
            let t: ComplexTensor = h.tensor(args.kind)?;
            let cfg = SolverConfig {
                tolerance: cli.tol,
                ..solver_config(cli, 1)
            };
            vec![record("sshopm", args.kind, None, sshopm(&t, &cfg)?)]
        }
    };
    let failures = records
        .iter()
        .filter(|r| r.residual.is_some_and(|x| !(x <= cli.tol)))
        .count();
    let document = match cli.format {
        Format::Json => json_document(
            manifest,
            json!({ "records": records, "failures": failures }),
        ),
        Format::Text => {
            let mut s = manifest.comment_lines();
            for (i, r) in records.iter().enumerate() {
                s.push_str(&format!(
                    "record {i} theorem={} kind={} root={} eigenvalue={} residual={} excluded={}\n",
                    r.theorem,
                    r.kind.symbol(),
                    r.root.map(fmt_c).unwrap_or_else(|| "-".into()),
                    fmt_c(r.eigenvalue),
                    r.residual.map(fmt_f).unwrap_or_else(|| "-".into()),
                    r.excluded
                ));
                if let Some(v) = &r.vector {
                    let parts: Vec<String> = v.iter().map(|z| fmt_c(*z)).collect();
                    s.push_str(&format!("vector {i} {}\n", parts.join(" ")));
                }
            }
            s
        }
    };
    Ok(Outcome {
        document,
        summary: format!("records: {} failures: {failures}", records.len()),
        exit_code: u8::from(failures > 0),
    })
}

#[derive(Debug, Serialize)]
struct FactorEntry {
    coefficients: crate::poly::IntPolynomial,
    #[serde(serialize_with = "crate::poly::serialize_decimal")]
    exponent: num_bigint::BigUint,
}

fn factored_json(fp: &FactoredPolynomial) -> Value {
    let factors: Vec<FactorEntry> = fp
        .factors()
        .iter()
        .map(|(p, e)| FactorEntry {
            coefficients: p.clone(),
            exponent: e.clone(),
        })
        .collect();
    json!({
        "lambda_exponent": fp.lambda_exponent().to_string(),
        "factors": factors,
        "display": fp.to_string(),
    })
}

fn builtin_reference(t: &UniformHypergraph) -> Option<(&'static str, FactoredPolynomial)> {
    let key = canonical_form(t);
    match t.r() {
        3 if loose_path(3, 3).is_ok_and(|p| canonical_form(&p) == key) => Some(("builtin P3 r=3", reference_p3_r3())),
        4 if loose_path(3, 4).is_ok_and(|p| canonical_form(&p) == key) => Some(("builtin P3 r=4", reference_p3_r4())),
        _ => None,
    }
}

fn charpoly(cli: &Cli, input: &Path, reference: Option<&Path>, manifest: &RunManifest) -> Result<Outcome, CliError> {
    let t = read_hypergraph(input)?;
    let fp = hypertree_charpoly(&t)?;
    let expected = expected_degree(t.n(), t.r());
    let degree = fp.total_degree();
    let degree_ok = degree == expected;
    let reference = match reference {
        Some(path) => Some((path.display().to_string(), FactoredPolynomial::from_text(&read(path)?)?)),
        None => builtin_reference(&t).map(|(n, f)| (n.to_string(), f)),
    };
    let discrepancy: Option<(String, DiscrepancyReport)> = reference
        .map(|(name, r)| compare_factorizations(&fp, &r, expected.clone()).map(|rep| (name, rep)))
        .transpose()?;
    let document = match cli.format {
        Format::Json => json_document(
            manifest,
            json!({
                "polynomial": factored_json(&fp),
                "report": {
                    "vertices": t.n(),
                    "edges": t.edge_count(),
                    "r": t.r(),
                    "nullity": fp.lambda_exponent().to_string(),
                    "total_degree": degree.to_string(),
                    "expected_degree": expected.to_string(),
                    "degree_ok": degree_ok,
                    "discrepancy": discrepancy.as_ref().map(|(name, rep)| json!({ "reference": name, "comparison": rep })),
                }
            }),
        ),
        Format::Text => {
            let mut s = manifest.comment_lines();
            s.push_str(&fp.to_text());
            s.push_str(&format!("# display: {fp}\n"));
            s.push_str(&format!("# nullity: {}\n", fp.lambda_exponent()));
            s.push_str(&format!("# total_degree: {degree}\n# expected_degree: {expected}\n# degree_ok: {degree_ok}\n"));
            if let Some((name, rep)) = &discrepancy {
                s.push_str(&format!("# discrepancy_reference: {name}\n"));
                s.push_str(&format!(
                    "# reference_degree: {} reference_degree_ok: {} same_root_set: {}\n",
                    rep.reference_degree, rep.reference_degree_ok, rep.same_root_set
                ));
                for row in &rep.rows {
                    s.push_str(&format!(
                        "# factor {} computed {} reference {} agrees {}\n",
                        row.factor, row.computed, row.reference, row.agrees
                    ));
                }
            }
            s
        }
    };
    let disagreements = discrepancy
        .as_ref()
        .map_or(0, |(_, rep)| rep.rows.iter().filter(|r| !r.agrees).count());
    Ok(Outcome {
        document,
        summary: format!(
            "nullity: {} degree: {degree} expected: {expected} reference disagreements: {disagreements}",
            fp.lambda_exponent()
        ),
        exit_code: u8::from(!degree_ok),
    })
}

fn reciprocal(cli: &Cli, input: &Path, manifest: &RunManifest) -> Result<Outcome, CliError> {
    let t = read_hypergraph(input)?;
    let rep = reciprocal_report(&t)?;
    let document = match cli.format {
        Format::Json => json_document(manifest, json!({ "report": rep })),
        Format::Text => {
            let mut s = manifest.comment_lines();
            s.push_str(&format!("R: {}\nSR: {}\nweak_R: {}\n", rep.r, rep.sr, rep.weak_r));
            s.push_str(&format!("decided_structurally: {}\n", rep.decided_structurally));
            s.push_str(&format!("palindromic: {}\n", rep.palindromic));
            s.push_str(&format!("lambda_r_minus_2_exponent: {}\n", rep.lambda_r_minus_2_exponent));
            s.push_str(&format!("closed_without_lambda_r_minus_2: {}\n", rep.closed_without_lambda_r_minus_2));
            for f in &rep.self_reciprocal_factors {
                s.push_str(&format!("self_reciprocal_factor: {}\n", f.to_bracket()));
            }
            for e in &rep.maximal_subset {
                s.push_str(&format!("maximal_subset: {} {} {}\n", fmt_f(e.re), fmt_f(e.im), e.multiplicity));
            }
            s
        }
    };
    Ok(Outcome {
        document,
        summary: format!("R: {} SR: {} weak-R: {}", rep.r, rep.sr, rep.weak_r),
        exit_code: 0,
    })
}

fn matching(cli: &Cli, input: &Path, manifest: &RunManifest) -> Result<Outcome, CliError> {
    let h = read_hypergraph(input)?;
    let counts: Vec<String> = matching_counts(&h).iter().map(|c| c.to_string()).collect();
    let phi = matching_polynomial(&h);
    let document = match cli.format {
        Format::Json => json_document(manifest, json!({ "counts": counts, "polynomial": phi, "display": phi.to_string() })),
        Format::Text => {
            let mut s = manifest.comment_lines();
            s.push_str(&format!("counts: {}\npolynomial: {}\n", counts.join(" "), phi.to_bracket()));
            s
        }
    };
    Ok(Outcome {
        document,
        summary: format!("matching polynomial: {phi}"),
        exit_code: 0,
    })
}

/// Writes the document to `--out` or stdout.
pub fn emit(cli: &Cli, outcome: &Outcome) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, &outcome.document)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(outcome.document.as_bytes())
                .map_err(|e| CliError::Input(e.to_string()))
        }
    }
}

