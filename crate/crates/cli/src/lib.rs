//! Command line front end. [`run`] parses arguments, dispatches one
//! subcommand and returns the exit code with the rendered report.
//!
//! Exit codes: 0 success, 1 a property or theorem check did not hold
//! (the payload says whether it was violated or inapplicable), 2 input
//! error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use morseposet::homology::{self, AdmissibilityMode, Coefficients};
use morseposet::io::{self as mio, IoError};
use morseposet::matching::{self, Matching, MatchingError, RegularityMode};
use morseposet::morse::{self, MorseError, MorseFunction};
use morseposet::poset::Poset;
use morseposet::rational::{self, Value};
use morseposet::reduction;
use morseposet::verify::{self, TheoremReport, Verdict, VerifyError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};
use sha2::{Digest, Sha256};
use thiserror::Error;

mod selftest;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 20_190_611;

/// The single document written to standard output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub schema_version: u32,
    pub command: String,
    /// SHA-256 over the input files, in the order they were given.
    pub input_digest: String,
    pub payload: Json,
    pub warnings: Vec<String>,
}

#[derive(Error, Debug)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: IoError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Morse(#[from] MorseError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Homology(#[from] homology::HomologyError),
}

#[derive(Parser, Debug)]
#[command(name = "morseposet", version, about = "Discrete Morse theory on finite posets")]
struct Cli {
    /// Render the report as indented text instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Also write the Hasse diagram in dot format to this file.
    #[arg(long, global = true, value_name = "FILE")]
    emit_dot: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct PosetInput {
    /// Poset file, or a simplicial complex with `--complex`.
    input: PathBuf,
    /// Read the input as a simplicial complex and use its face poset.
    #[arg(long)]
    complex: bool,
}

#[derive(Args, Debug, Clone)]
struct FunctionInput {
    #[command(flatten)]
    poset: PosetInput,
    /// Function file with one `id value` per line.
    #[arg(long, short = 'f')]
    function: PathBuf,
}

#[derive(Args, Debug, Clone)]
struct MatchingInput {
    #[command(flatten)]
    poset: PosetInput,
    /// Matching file with one `source < target` per line; empty if omitted.
    #[arg(long, short = 'm')]
    matching: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum AdmissibilityArg {
    Homological,
    One,
    Full,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural properties: width conditions, grading, beat points, admissibility.
    Props {
        #[command(flatten)]
        poset: PosetInput,
        #[arg(long, value_enum, default_value = "homological")]
        admissibility: AdmissibilityArg,
    },
    /// Homology of the order complex.
    Homology {
        #[command(flatten)]
        poset: PosetInput,
        /// `z` or `p:<prime>`.
        #[arg(long, default_value = "z", value_parser = parse_coeffs)]
        coeffs: Coefficients,
        #[arg(long)]
        reduced: bool,
    },
    /// Face poset of a simplicial complex.
    Faceposet { input: PathBuf },
    /// Facets of the order complex.
    Ordercomplex {
        #[command(flatten)]
        poset: PosetInput,
    },
    /// Morse condition, critical points and exclusion for a function.
    MorseCheck(FunctionInput),
    /// Function associated with a Morse matching.
    Integrate(MatchingInput),
    /// Matching associated with a Morse function.
    Differentiate(FunctionInput),
    /// Sublevel filtration events and component births.
    Filtration(FunctionInput),
    /// Collapsing theorem on the interval (from, to].
    Collapse {
        #[command(flatten)]
        input: FunctionInput,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_value)]
        from: Value,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_value)]
        to: Value,
    },
    /// Adjunction theorem for one critical element.
    Adjunction {
        #[command(flatten)]
        input: FunctionInput,
        #[arg(long)]
        element: String,
        /// Defaults to the largest value below the element's value.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_value)]
        from: Option<Value>,
        /// Defaults to the element's value.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_value)]
        to: Option<Value>,
    },
    /// Morse inequalities for a matching.
    Inequalities {
        #[command(flatten)]
        input: MatchingInput,
        /// Check the torsion-corrected inequalities instead.
        #[arg(long)]
        pitcher: bool,
    },
    /// Cancels a critical pair joined by a unique gradient path.
    Cancel {
        #[command(flatten)]
        input: MatchingInput,
        #[arg(long)]
        upper: String,
        #[arg(long)]
        lower: String,
    },
    /// Greedy cancellation until no pair is cancellable.
    Optimize(MatchingInput),
    /// Closed homology manifold check on the order complex.
    ManifoldCheck {
        #[command(flatten)]
        poset: PosetInput,
    },
    /// Checks the library's invariants on random instances.
    Selftest {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Overrides `MORSEPOSET_SEED`.
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn parse_coeffs(s: &str) -> Result<Coefficients, String> {
    match s {
        "z" | "Z" => Ok(Coefficients::Integers),
        _ => {
            let p = s
                .strip_prefix("p:")
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| format!("expected `z` or `p:<prime>`, got `{s}`"))?;
            if p >= 1 << 32 || !homology::is_prime(p) {
                return Err(format!("{p} is not a prime below 2^32"));
            }
            Ok(Coefficients::PrimeField(p))
        }
    }
}

fn parse_value(s: &str) -> Result<Value, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

/// What a command produced: exit code, standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Files read so far, kept for the input digest.
#[derive(Default)]
struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
        self.hasher.update((text.len() as u64).to_le_bytes());
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    fn poset(&mut self, input: &PosetInput) -> Result<Arc<Poset>, CliError> {
        let text = self.read(&input.input)?;
        let wrap = |source| CliError::Input { path: input.input.clone(), source };
        let p = if input.complex {
            let k = mio::parse_complex(&text).map_err(wrap)?;
            k.face_poset()?
        } else {
            mio::parse_poset(&text).map_err(wrap)?
        };
        Ok(Arc::new(p))
    }

    fn function(&mut self, input: &FunctionInput) -> Result<MorseFunction, CliError> {
        let p = self.poset(&input.poset)?;
        let text = self.read(&input.function)?;
        mio::parse_function(p, &text).map_err(|source| CliError::Input { path: input.function.clone(), source })
    }

    fn matching(&mut self, input: &MatchingInput) -> Result<Matching, CliError> {
        let p = self.poset(&input.poset)?;
        match &input.matching {
            None => Ok(Matching::empty(p)),
            Some(path) => {
                let text = self.read(path)?;
                mio::parse_matching(p, &text).map_err(|source| CliError::Input { path: path.clone(), source })
            }
        }
    }

    fn digest(self) -> String {
        hex::encode(self.hasher.finalize())
    }
}

/// Result of one subcommand before it is wrapped in a [`Report`].
struct Done {
    ok: bool,
    payload: Json,
    warnings: Vec<String>,
    dot: Option<String>,
}

impl Done {
    fn new(ok: bool, payload: Json) -> Self {
        Done { ok, payload, warnings: Vec::new(), dot: None }
    }

    fn dot(mut self, p: &Poset, m: Option<&Matching>) -> Self {
        self.dot = Some(mio::to_dot(p, m));
        self
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "violated"
    }
}

fn report_done(r: TheoremReport) -> Done {
    let ok = r.verdict == Verdict::Holds;
    Done::new(ok, json!({ "status": r.verdict.to_string(), "report": r }))
}

fn values_json(values: &[Value]) -> Vec<String> {
    values.iter().map(rational::format).collect()
}

fn props(p: &Poset, mode: AdmissibilityArg) -> Done {
    let mode = match mode {
        AdmissibilityArg::Homological => AdmissibilityMode::Homological,
        AdmissibilityArg::One => AdmissibilityMode::One,
        AdmissibilityArg::Full => AdmissibilityMode::Full,
    };
    let (two_wide, tw_witness) = p.is_two_wide();
    let (down_wide, dw_witness) = p.is_down_wide();
    let core = reduction::core(p);
    let payload = json!({
        "elements": p.len(),
        "height": p.height(),
        "graded": p.is_graded(),
        "two_wide": two_wide,
        "two_wide_witness": tw_witness,
        "down_wide": down_wide,
        "down_wide_witness": dw_witness,
        "components": p.components(),
        "beat_points": reduction::beat_points(p),
        "core": core.ids(),
        "admissibility": homology::admissibility(p, mode),
    });
    Done::new(true, payload)
}

fn morse_check(f: &MorseFunction) -> Result<Done, CliError> {
    let (ok, violations) = morse::is_morse(f);
    if !ok {
        let payload = json!({ "status": "violated", "morse": false, "violations": violations });
        return Ok(Done::new(false, payload));
    }
    let (exclusion, witness) = morse::satisfies_exclusion(f)?;
    let payload = json!({
        "status": "holds",
        "morse": true,
        "critical_points": morse::critical_points(f)?,
        "critical_values": values_json(&morse::critical_values(f)?),
        "exclusion": exclusion,
        "exclusion_witness": witness,
        "injective": f.is_injective(),
        "order_preserving": f.is_order_preserving(),
    });
    Ok(Done::new(true, payload))
}

fn adjunction_interval(f: &MorseFunction, x: &str, from: Option<Value>, to: Option<Value>) -> Result<(Value, Value), CliError> {
    let v = f.value_of(x)?.clone();
    let b = to.unwrap_or_else(|| v.clone());
    let a = match from {
        Some(a) => a,
        None => f
            .distinct_values()
            .into_iter()
            .rev()
            .find(|w| *w < v)
            .unwrap_or_else(|| &v - rational::int(1)),
    };
    Ok((a, b))
}

fn execute(cli: &Cli, inputs: &mut Inputs) -> Result<Done, CliError> {
    Ok(match &cli.command {
        Command::Props { poset, admissibility } => {
            let p = inputs.poset(poset)?;
            props(&p, *admissibility).dot(&p, None)
        }
        Command::Homology { poset, coeffs, reduced } => {
            let p = inputs.poset(poset)?;
            let k = homology::order_complex(&p);
            let h = homology::homology(&k, *coeffs, *reduced)?;
            let payload = json!({
                "bettis": h.bettis(),
                "euler_characteristic": homology::euler_characteristic(&p),
                "homology": h,
            });
            Done::new(true, payload).dot(&p, None)
        }
        Command::Faceposet { input } => {
            let text = inputs.read(input)?;
            let k = mio::parse_complex(&text).map_err(|source| CliError::Input { path: input.clone(), source })?;
            let p = k.face_poset()?;
            let payload = json!({ "poset": mio::PosetDoc::from(&p) });
            Done::new(true, payload).dot(&p, None)
        }
        Command::Ordercomplex { poset } => {
            let p = inputs.poset(poset)?;
            let k = homology::order_complex(&p);
            let facets: Vec<Vec<String>> = k.facets().iter().map(|s| k.names(s)).collect();
            Done::new(true, json!({ "dimension": k.dimension(), "simplices": k.len(), "facets": facets }))
        }
        Command::MorseCheck(input) => {
            let f = inputs.function(input)?;
            morse_check(&f)?.dot(f.base(), None)
        }
        Command::Integrate(input) => {
            let m = inputs.matching(input)?;
            let (acyclic, cycle) = matching::is_morse_matching(&m);
            if !acyclic {
                let payload = json!({ "status": "violated", "morse_matching": false, "cycle": cycle });
                return Ok(Done::new(false, payload));
            }
            let f = morse::function_from_matching(&m)?;
            let payload = json!({
                "status": "holds",
                "function": mio::function_to_json(&f),
                "critical_points": matching::critical_set(&m),
                "order_preserving": f.is_order_preserving(),
            });
            Done::new(true, payload).dot(m.base(), Some(&m))
        }
        Command::Differentiate(input) => {
            let f = inputs.function(input)?;
            let m = morse::matching_from_function(&f)?;
            let payload = json!({
                "matching": mio::matching_to_json(&m),
                "critical_points": matching::critical_set(&m),
                "morse_matching": matching::is_morse_matching(&m).0,
            });
            Done::new(true, payload).dot(m.base(), Some(&m))
        }
        Command::Filtration(input) => {
            let f = inputs.function(input)?;
            let mut done = Done::new(
                true,
                json!({
                    "critical_values": values_json(&morse::critical_values(&f)?),
                    "events": morse::filtration_events(&f)?,
                }),
            );
            match morse::component_births(&f) {
                Ok(births) => done.payload["component_births"] = json!(births),
                Err(e @ MorseError::HypothesisViolation { .. }) => done.warnings.push(e.to_string()),
                Err(e) => return Err(e.into()),
            }
            done
        }
        Command::Collapse { input, from, to } => {
            let f = inputs.function(input)?;
            report_done(verify::check_collapse_interval(&f, from, to)?)
        }
        Command::Adjunction { input, element, from, to } => {
            let f = inputs.function(input)?;
            let (a, b) = adjunction_interval(&f, element, from.clone(), to.clone())?;
            report_done(verify::check_adjunction(&f, &a, &b, element)?)
        }
        Command::Inequalities { input, pitcher } => {
            let m = inputs.matching(input)?;
            let r = if *pitcher { verify::pitcher_inequalities(&m) } else { verify::morse_inequalities(&m) };
            report_done(r).dot(m.base(), Some(&m))
        }
        Command::Cancel { input, upper, lower } => {
            let m = inputs.matching(input)?;
            let paths = matching::enumerate_m_paths(&m, [upper.as_str()], lower)?;
            let out = matching::cancel_pair(&m, upper, lower)?;
            let payload = json!({
                "path": paths.first(),
                "matching": mio::matching_to_json(&out),
                "critical_before": matching::critical_set(&m),
                "critical_after": matching::critical_set(&out),
            });
            Done::new(true, payload).dot(out.base(), Some(&out))
        }
        Command::Optimize(input) => {
            let m = inputs.matching(input)?;
            let (out, log) = matching::optimize(&m)?;
            let h = homology::poset_homology(out.base(), false);
            let critical = matching::critical_set(&out);
            let betti_sum: usize = h.bettis().iter().sum();
            let mut done = Done::new(
                true,
                json!({
                    "matching": mio::matching_to_json(&out),
                    "critical": critical,
                    "critical_count": critical.len(),
                    "betti_sum": betti_sum,
                    "steps": log,
                    "homology_regular": matching::regularity(&out, RegularityMode::Homology)?,
                }),
            );
            if critical.len() > betti_sum {
                done.warnings.push(format!("{} critical elements remain above the Betti sum {betti_sum}", critical.len()));
            }
            done.dot(out.base(), Some(&out))
        }
        Command::ManifoldCheck { poset } => {
            let p = inputs.poset(poset)?;
            match homology::is_closed_homology_manifold(&p) {
                Ok(ok) => Done::new(ok, json!({ "status": status(ok), "manifold": ok })),
                Err(homology::HomologyError::NotHomogeneous(dims)) => Done::new(
                    false,
                    json!({ "status": "inapplicable", "manifold": false, "facet_dimensions": dims }),
                ),
                Err(e) => return Err(e.into()),
            }
        }
        Command::Selftest { count, jobs, seed } => {
            let seed = match seed {
                Some(s) => *s,
                None => match std::env::var("MORSEPOSET_SEED") {
                    Ok(s) => s.parse().map_err(|_| CliError::Usage(format!("MORSEPOSET_SEED must be an integer, got `{s}`")))?,
                    Err(_) => DEFAULT_SEED,
                },
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let summary = selftest::run(&mut rng, *count, (*jobs).max(1));
            let ok = summary.failures.is_empty();
            let mut payload = json!(summary);
            payload["seed"] = json!(seed);
            payload["status"] = json!(status(ok));
            Done::new(ok, payload)
        }
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Props { .. } => "props",
        Command::Homology { .. } => "homology",
        Command::Faceposet { .. } => "faceposet",
        Command::Ordercomplex { .. } => "ordercomplex",
        Command::MorseCheck(_) => "morse-check",
        Command::Integrate(_) => "integrate",
        Command::Differentiate(_) => "differentiate",
        Command::Filtration(_) => "filtration",
        Command::Collapse { .. } => "collapse",
        Command::Adjunction { .. } => "adjunction",
        Command::Inequalities { .. } => "inequalities",
        Command::Cancel { .. } => "cancel",
        Command::Optimize(_) => "optimize",
        Command::ManifoldCheck { .. } => "manifold-check",
        Command::Selftest { .. } => "selftest",
    }
}

/// Indented `key: value` rendering of a JSON document.
pub fn render_pretty(v: &Json) -> String {
    fn scalar(v: &Json) -> Option<String> {
        match v {
            Json::Null => Some("-".into()),
            Json::Bool(b) => Some(b.to_string()),
            Json::Number(n) => Some(n.to_string()),
            Json::String(s) => Some(s.clone()),
            Json::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
                Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
            }
            _ => None,
        }
    }
    fn walk(v: &Json, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        match v {
            Json::Object(map) => {
                for (k, x) in map {
                    match scalar(x) {
                        Some(s) => {
                            let _ = writeln!(out, "{pad}{k}: {s}");
                        }
                        None => {
                            let _ = writeln!(out, "{pad}{k}:");
                            walk(x, depth + 1, out);
                        }
                    }
                }
            }
            Json::Array(items) => {
                for x in items {
                    match scalar(x) {
                        Some(s) => {
                            let _ = writeln!(out, "{pad}- {s}");
                        }
                        None => {
                            let _ = writeln!(out, "{pad}-");
                            walk(x, depth + 1, out);
                        }
                    }
                }
            }
            other => {
                let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
            }
        }
    }
    let mut out = String::new();
    walk(v, 0, &mut out);
    out
}

/// Parses `args` (program name first), runs the subcommand and renders the
/// report.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut inputs = Inputs::default();
    let done = match execute(&cli, &mut inputs) {
        Ok(done) => done,
        Err(e) => return Output { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let mut stderr = String::new();
    if let (Some(path), Some(dot)) = (&cli.emit_dot, &done.dot) {
        if let Err(e) = std::fs::write(path, dot) {
            return Output { code: 2, stdout: String::new(), stderr: format!("error: {}: {e}\n", path.display()) };
        }
    } else if cli.emit_dot.is_some() {
        stderr.push_str("warning: this command has no diagram to emit\n");
    }
    let report = Report {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        schema_version: SCHEMA_VERSION,
        command: command_name(&cli.command).to_string(),
        input_digest: inputs.digest(),
        payload: done.payload,
        warnings: done.warnings,
    };
    let stdout = if cli.pretty {
        render_pretty(&serde_json::to_value(&report).expect("plain data"))
    } else {
        serde_json::to_string(&report).expect("plain data") + "\n"
    };
    Output { code: if done.ok { 0 } else { 1 }, stdout, stderr }
}
