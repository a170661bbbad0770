//! `majorana`: command-line access to Majorana roots, SLOCC/LOCC decisions,
//! canonical forms and sphere plots over the JSON document formats.
//!
//! Exit status is 0 on success, 2 when `equiv` finds the states
//! inequivalent, and 1 on any error.

mod plot;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use majorana::canonical::canonicalize;
use majorana::classify::{circle_signature, decide, Verdict};
use majorana::doc::{
    from_json, to_json, CanonicalDocument, MatrixDocument, RootDocument, StateDocument,
};
use majorana::moebius::decompose_affine;
use majorana::symstate::{apply_symmetric, majorana_roots, state_from_roots, to_sphere};
use majorana::{
    degeneracy_configuration, Complex64, Error, MoebiusMap, RootMultiset, SymmetricState,
    WitnessKind, DEFAULT_TOL,
};

#[derive(Parser, Debug)]
#[command(name = "majorana", version, about = "Majorana representation toolkit for symmetric qubit states")]
struct Cli {
    /// Chordal tolerance for clustering roots and matching configurations.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL, allow_negative_numbers = true)]
    tol: f64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Run the subcommand once per line of this file; each line holds the
    /// positional arguments for one run.
    #[arg(long, global = true, value_name = "LISTFILE")]
    batch: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Slocc,
    Locc,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// State document → root document.
    Roots { inputs: Vec<PathBuf> },
    /// Root document → state document.
    FromRoots { inputs: Vec<PathBuf> },
    /// Degeneracy configuration of a state.
    Classify { inputs: Vec<PathBuf> },
    /// Canonical representative of a state with at most five qubits.
    Canonical { inputs: Vec<PathBuf> },
    /// Decide SLOCC or LOCC equivalence of two states.
    Equiv {
        #[arg(long, value_enum, default_value_t = Kind::Slocc)]
        kind: Kind,
        inputs: Vec<PathBuf>,
    },
    /// Apply the operation B⊗…⊗B given by a matrix document to a state.
    Transform {
        #[arg(long, value_name = "MATRIX")]
        matrix: PathBuf,
        inputs: Vec<PathBuf>,
    },
    /// Split a matrix into a rotation after an affine map z ↦ Az + B.
    Decompose {
        #[arg(long, value_name = "MATRIX")]
        matrix: Option<PathBuf>,
        inputs: Vec<PathBuf>,
    },
    /// Draw the Majorana points of a state or root document as SVG.
    Plot {
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        /// Omit the equator overlay.
        #[arg(long)]
        no_equator: bool,
        inputs: Vec<PathBuf>,
    },
}

/// Result of one run: status 0 or 2 with the rendered output.
struct Report {
    json: String,
    text: String,
    inequivalent: bool,
}

impl Report {
    fn ok(json: String, text: String) -> Self {
        Report { json, text, inequivalent: false }
    }
}

#[derive(Debug)]
struct CliError(String);

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// Largest qubit count accepted from input documents; beyond it the dense
/// root finder is too slow to be useful from the command line.
const MAX_QUBITS: usize = 2048;

fn guard(n: usize, path: &Path) -> CliResult<()> {
    if n > MAX_QUBITS {
        return Err(CliError(format!("{}: n = {n} exceeds the limit of {MAX_QUBITS} qubits", path.display())));
    }
    Ok(())
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    from_json(&read(path)?).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn read_state(path: &Path) -> CliResult<SymmetricState> {
    let doc = parse::<StateDocument>(path)?;
    guard(doc.n, path)?;
    doc.to_state().map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn read_roots(path: &Path) -> CliResult<RootMultiset> {
    let doc = parse::<RootDocument>(path)?;
    guard(doc.n, path)?;
    doc.to_roots().map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> CliResult<MoebiusMap> {
    parse::<MatrixDocument>(path)?.to_map().map_err(|e| CliError(format!("{}: {e}", path.display())))
}

/// Root multiset from either a state or a root document.
fn read_points(path: &Path) -> CliResult<RootMultiset> {
    let value: serde_json::Value =
        serde_json::from_str(&read(path)?).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    if value.get("roots").is_some() {
        read_roots(path)
    } else {
        Ok(majorana_roots(&read_state(path)?)?)
    }
}

fn c(z: Complex64) -> String {
    if z.im < 0.0 {
        format!("{:.12} - {:.12}i", z.re, -z.im)
    } else {
        format!("{:.12} + {:.12}i", z.re, z.im)
    }
}

fn expect_inputs(inputs: &[PathBuf], count: usize, what: &str) -> CliResult<()> {
    if inputs.len() == count {
        Ok(())
    } else {
        Err(CliError(format!("expected {count} input file(s) ({what}), got {}", inputs.len())))
    }
}

fn state_text(s: &SymmetricState) -> String {
    let mut out = format!("n = {}\n", s.n());
    for (k, a) in s.amplitudes().iter().enumerate() {
        let _ = writeln!(out, "  a_{k} = {}", c(*a));
    }
    out
}

fn roots_report(r: &RootMultiset) -> CliResult<Report> {
    let json = to_json(&RootDocument::from_roots(r))?;
    let mut text = format!("n = {}\n", r.n());
    for p in r.points() {
        let sp = to_sphere(p);
        let z = match p.finite() {
            Some(z) => c(z),
            None => "∞".to_string(),
        };
        let _ = writeln!(text, "  {z}    θ = {:.12}, φ = {:.12}", sp.theta(), sp.phi());
    }
    Ok(Report::ok(json, text))
}

#[derive(Serialize)]
struct ClassifyDocument {
    n: usize,
    partition: Vec<usize>,
    diversity: usize,
}

#[derive(Serialize)]
struct EquivalentDocument {
    equivalent: bool,
    kind: &'static str,
    matrix: [[f64; 2]; 4],
}

#[derive(Serialize)]
struct CertificateDocument {
    census: [Vec<(usize, usize)>; 2],
    max_on_circle: [usize; 2],
}

#[derive(Serialize)]
struct InequivalentDocument {
    equivalent: bool,
    kind: &'static str,
    stage: &'static str,
    partitions: [Vec<usize>; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateDocument>,
}

#[derive(Serialize)]
struct DecompositionDocument {
    alpha: [f64; 2],
    beta: [f64; 2],
    #[serde(rename = "A")]
    a: f64,
    #[serde(rename = "B")]
    b: [f64; 2],
    lambda: f64,
}

fn run(command: &Command, inputs: &[PathBuf], tol: f64) -> CliResult<Report> {
    match command {
        Command::Roots { .. } => {
            expect_inputs(inputs, 1, "state")?;
            roots_report(&majorana_roots(&read_state(&inputs[0])?)?)
        }
        Command::FromRoots { .. } => {
            expect_inputs(inputs, 1, "roots")?;
            let s = state_from_roots(&read_roots(&inputs[0])?)?;
            Ok(Report::ok(to_json(&StateDocument::from_state(&s))?, state_text(&s)))
        }
        Command::Classify { .. } => {
            expect_inputs(inputs, 1, "state")?;
            let s = read_state(&inputs[0])?;
            let (dc, _) = degeneracy_configuration(&majorana_roots(&s)?, tol);
            let doc = ClassifyDocument { n: dc.n(), partition: dc.partition().to_vec(), diversity: dc.diversity() };
            let text = format!("n = {}\npartition = {:?} ({dc})\ndiversity = {}\n", doc.n, doc.partition, doc.diversity);
            Ok(Report::ok(to_json(&doc)?, text))
        }
        Command::Canonical { .. } => {
            expect_inputs(inputs, 1, "state")?;
            let form = canonicalize(&read_state(&inputs[0])?, tol)?;
            let mut text = format!("class {} ({:?})\n", form.label, form.label.partition());
            if !form.params.is_empty() {
                let _ = writeln!(text, "parameters {:?}{}", form.params, if form.unique { "" } else { " (one of several)" });
            }
            text.push_str(&state_text(&form.state));
            Ok(Report::ok(to_json(&CanonicalDocument::from_form(&form))?, text))
        }
        Command::Equiv { kind, .. } => {
            expect_inputs(inputs, 2, "two states")?;
            let s1 = read_state(&inputs[0])?;
            let s2 = read_state(&inputs[1])?;
            let (wkind, name) = match kind {
                Kind::Slocc => (WitnessKind::Slocc, "slocc"),
                Kind::Locc => (WitnessKind::Locc, "locc"),
            };
            equiv_report(&s1, &s2, wkind, name, tol)
        }
        Command::Transform { matrix, .. } => {
            expect_inputs(inputs, 1, "state")?;
            let m = read_matrix(matrix)?;
            let s = apply_symmetric(&m, &read_state(&inputs[0])?)?;
            Ok(Report::ok(to_json(&StateDocument::from_state(&s))?, state_text(&s)))
        }
        Command::Decompose { matrix, .. } => {
            // In batch mode the matrix comes from each line instead.
            let path = match (matrix, inputs) {
                (Some(m), []) => m,
                (None, [m]) => m,
                _ => return Err(CliError("decompose needs exactly one matrix document".into())),
            };
            let dec = decompose_affine(&read_matrix(path)?);
            let doc = DecompositionDocument {
                alpha: [dec.alpha.re, dec.alpha.im],
                beta: [dec.beta.re, dec.beta.im],
                a: dec.affine.scale(),
                b: [dec.affine.offset().re, dec.affine.offset().im],
                lambda: dec.lambda,
            };
            let text = format!(
                "alpha = {}\nbeta = {}\nA = {:.12}\nB = {}\nlambda = {:.12}\n",
                c(dec.alpha),
                c(dec.beta),
                doc.a,
                c(dec.affine.offset()),
                doc.lambda
            );
            Ok(Report::ok(to_json(&doc)?, text))
        }
        Command::Plot { svg, no_equator, .. } => {
            let (input, out) = match (svg, inputs) {
                (Some(out), [input]) => (input, out.clone()),
                (None, [input, out]) => (input, out.clone()),
                _ => return Err(CliError("plot needs one input and an --svg path".into())),
            };
            let r = read_points(input)?;
            let (_, clusters) = degeneracy_configuration(&r, tol);
            let svg = plot::render(clusters.sites(), !no_equator);
            fs::write(&out, svg).map_err(|e| CliError(format!("{}: {e}", out.display())))?;
            let json = serde_json::json!({ "svg": out.display().to_string(), "sites": clusters.sites().len() });
            Ok(Report::ok(json.to_string(), format!("wrote {}\n", out.display())))
        }
    }
}

fn equiv_report(s1: &SymmetricState, s2: &SymmetricState, kind: WitnessKind, name: &'static str, tol: f64) -> CliResult<Report> {
    match decide(s1, s2, kind, tol)? {
        Verdict::Equivalent(w) => {
            let doc = EquivalentDocument { equivalent: true, kind: name, matrix: MatrixDocument::from_map(&w.map).matrix };
            let [a, b, cc, d] = w.map.entries();
            let text = format!("equivalent ({name})\nmatrix\n  [{}, {}]\n  [{}, {}]\n", c(a), c(b), c(cc), c(d));
            Ok(Report::ok(to_json(&doc)?, text))
        }
        Verdict::ConfigurationMismatch(d1, d2) => {
            let doc = InequivalentDocument {
                equivalent: false,
                kind: name,
                stage: "configuration-mismatch",
                partitions: [d1.partition().to_vec(), d2.partition().to_vec()],
                certificate: None,
            };
            let text = format!("inequivalent ({name}): degeneracy configurations differ, {d1} vs {d2}\n");
            Ok(Report { json: to_json(&doc)?, text, inequivalent: true })
        }
        Verdict::Exhausted => {
            let r1 = majorana_roots(s1)?;
            let r2 = majorana_roots(s2)?;
            let (d1, _) = degeneracy_configuration(&r1, tol);
            let sig1 = circle_signature(&r1, tol);
            let sig2 = circle_signature(&r2, tol);
            let certificate = (sig1.census() != sig2.census()).then(|| CertificateDocument {
                census: [sig1.census(), sig2.census()],
                max_on_circle: [sig1.max_on_circle(), sig2.max_on_circle()],
            });
            let mut text = format!("inequivalent ({name}): no candidate map matches, configuration {d1}\n");
            if let Some(cert) = &certificate {
                let _ = writeln!(
                    text,
                    "cocircularity certificate: at most {} vs {} points on a common circle",
                    cert.max_on_circle[0], cert.max_on_circle[1]
                );
            }
            let doc = InequivalentDocument {
                equivalent: false,
                kind: name,
                stage: "exhausted",
                partitions: [d1.partition().to_vec(), d1.partition().to_vec()],
                certificate,
            };
            Ok(Report { json: to_json(&doc)?, text, inequivalent: true })
        }
    }
}

fn inputs_of(command: &Command) -> &[PathBuf] {
    match command {
        Command::Roots { inputs }
        | Command::FromRoots { inputs }
        | Command::Classify { inputs }
        | Command::Canonical { inputs }
        | Command::Equiv { inputs, .. }
        | Command::Transform { inputs, .. }
        | Command::Decompose { inputs, .. }
        | Command::Plot { inputs, .. } => inputs,
    }
}

/// Runs every line of the list file, in parallel, reporting in input order.
fn run_batch(cli: &Cli, list: &Path) -> CliResult<Vec<CliResult<Report>>> {
    if !inputs_of(&cli.command).is_empty() {
        return Err(CliError("positional inputs cannot be combined with --batch".into()));
    }
    let base = list.parent().unwrap_or(Path::new(""));
    let jobs: Vec<Vec<PathBuf>> = read(list)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split_whitespace().map(|p| base.join(p)).collect())
        .collect();
    let results: Vec<Mutex<Option<CliResult<Report>>>> = jobs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(jobs.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(i) else { break };
                let r = run(&cli.command, job, cli.tol);
                *results[i].lock().expect("no poisoned result slots") = Some(r);
            });
        }
    });
    Ok(results.into_iter().map(|m| m.into_inner().expect("no poisoned result slots").expect("every job ran")).collect())
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Json => println!("{}", report.json),
        Format::Text => print!("{}", report.text),
    }
}

fn main() -> ExitCode {
    // Usage errors exit with 1; status 2 is reserved for inequivalence.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        eprintln!("error: --tol must be a positive number");
        return ExitCode::from(1);
    }
    let outcomes = match &cli.batch {
        Some(list) => match run_batch(&cli, list) {
            Ok(r) => r,
            Err(CliError(msg)) => {
                eprintln!("error: {msg}");
                return ExitCode::from(1);
            }
        },
        None => vec![run(&cli.command, inputs_of(&cli.command), cli.tol)],
    };
    let mut status = 0u8;
    for (line, outcome) in outcomes.iter().enumerate() {
        match outcome {
            Ok(report) => {
                emit(report, cli.format);
                if report.inequivalent {
                    status = status.max(2);
                }
            }
            Err(CliError(msg)) => {
                if cli.batch.is_some() {
                    eprintln!("error (batch line {}): {msg}", line + 1);
                    if cli.format == Format::Json {
                        println!("{}", serde_json::json!({ "error": msg }));
                    }
                } else {
                    eprintln!("error: {msg}");
                }
                status = 1;
            }
        }
    }
    // Errors outrank inequivalence.
    ExitCode::from(if outcomes.iter().any(|o| o.is_err()) { 1 } else { status })
}
