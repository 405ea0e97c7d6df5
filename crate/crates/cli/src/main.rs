//! `fiberlrc` command-line tool.
//!
//! Exit codes: 0 success, 1 mismatch or failed verification, 2 malformed
//! input, 3 capacity or general-position failure, 4 search budget exhausted.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fiberlrc::counterexample::{search_nonoptimal, SearchConfig};
use fiberlrc::distance::{self, Engine, Limits};
use fiberlrc::experiments::{asymptotic_rates, optimality_probability, vz_table, Tabular};
use fiberlrc::fixtures::nonoptimal;
use fiberlrc::matroid::verify_matroid_iso;
use fiberlrc::recovery::{repair, ErasurePattern};
use fiberlrc::reproduce::{reproduce, Target};
use fiberlrc::specfile::CodeSpecFile;
use fiberlrc::{Code, CodeKind, Error, Fe, PrimeField};

#[derive(Parser)]
#[command(name = "fiberlrc", version, about = "Locally recoverable codes on fibered point sets")]
struct Cli {
    /// Worker threads for the distance engines (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Auto,
    Exhaustive,
    Infoset,
    Structured,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Auto => Engine::Auto,
            EngineArg::Exhaustive => Engine::Exhaustive,
            EngineArg::Infoset => Engine::Infoset,
            EngineArg::Structured => Engine::Structured,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(clap::Args)]
struct DistanceArgs {
    #[arg(long, value_enum, default_value = "auto")]
    engine: EngineArg,
    /// Cross-check the result with the structured engine.
    #[arg(long)]
    verify: bool,
    /// Largest number of projective messages the exhaustive engine may visit.
    #[arg(long, default_value_t = distance::DEFAULT_EXHAUSTIVE_BUDGET)]
    budget: u128,
    /// Node budget of the structured engine.
    #[arg(long, default_value_t = distance::structured::DEFAULT_NODE_BUDGET)]
    node_budget: u64,
}

impl DistanceArgs {
    fn limits(&self) -> Limits {
        Limits { exhaustive_budget: self.budget, node_budget: self.node_budget }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Print n, k, r, t, rate and the Singleton-type bound.
    Build {
        spec: PathBuf,
        /// Write the generator matrix as CSV to this file.
        #[arg(long)]
        generator: Option<PathBuf>,
        /// Print the spec with sampled points written out instead.
        #[arg(long)]
        resolve: bool,
    },
    /// Encode a message given as a JSON array of k field elements.
    Encode {
        spec: PathBuf,
        #[arg(long)]
        message: String,
    },
    /// Repair erasures. `null` entries in the word count as erased.
    Recover {
        spec: PathBuf,
        /// Received word as a JSON array.
        #[arg(long)]
        word: String,
        /// One-based erased positions as a JSON array.
        #[arg(long, default_value = "[]")]
        erased: String,
    },
    /// Exact minimum distance with a witness codeword.
    Mindist {
        spec: PathBuf,
        #[command(flatten)]
        dist: DistanceArgs,
    },
    /// Whether the code meets the Singleton-type bound.
    Optimality {
        spec: PathBuf,
        #[command(flatten)]
        dist: DistanceArgs,
    },
    /// Check T·G·R = G' for two plane codes differing in their base points.
    MatroidVerify { spec: PathBuf, other: PathBuf },
    /// Search for a plane code with b = r = 4 below the Singleton-type bound.
    NonoptimalSearch {
        #[arg(long, default_value_t = 37)]
        q: u64,
        /// The four base values.
        #[arg(long, value_delimiter = ',', default_values_t = [4u64, 9, 16, 25])]
        xs: Vec<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Try the known non-optimal point set first.
        #[arg(long)]
        known: bool,
    },
    /// Distance for each degree drop z on one plane point set.
    Table {
        spec: PathBuf,
        /// Values of z (default 0 through b-2).
        #[arg(long, value_delimiter = ',')]
        z: Vec<usize>,
        #[arg(long, value_enum, default_value = "infoset")]
        engine: EngineArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Fraction of random plane codes with d = r + 3.
    Montecarlo {
        #[arg(long, value_delimiter = ',', default_values_t = [37u64, 101, 257])]
        q: Vec<u64>,
        #[arg(long, default_value_t = 4)]
        b: usize,
        #[arg(long, default_value_t = 4)]
        r: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Rate and relative distance of bundle codes as m grows.
    Asymptotics {
        #[arg(long, default_value_t = 4)]
        b: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long, default_value_t = 1)]
        alpha: usize,
        #[arg(long, default_value_t = 1)]
        beta: usize,
        #[arg(long, default_value_t = 10)]
        m_max: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Recompute a reference example and diff against the stored values.
    Reproduce {
        /// example, table-f31, table-f37, counterexample, matroid or all.
        target: String,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Schema(_)
            | Error::NotPrime(_)
            | Error::OutOfField { .. }
            | Error::InvalidParams(_)
            | Error::ArityMismatch { .. }
            | Error::DuplicateX(_)
            | Error::DuplicateY(_)
            | Error::BatchSizeMismatch { .. }
            | Error::InconsistentBatchX(_)
            | Error::LengthMismatch { .. }
            | Error::IndexOutOfRange(_)
            | Error::DegenerateInput(_)
            | Error::Dimension(_) => 2,
            Error::CapacityExceeded(_)
            | Error::GeneralPositionViolated { .. }
            | Error::GeneralPositionExhausted { .. }
            | Error::InjectivityFailure { .. } => 3,
            Error::BudgetExceeded { .. } | Error::SearchExploded(_) | Error::Exhausted(_) => 4,
            _ => 1,
        };
        Self::new(code, e.to_string())
    }
}

type Outcome = std::result::Result<String, Failure>;

fn read_input(path: &Path) -> std::result::Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::new(2, format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))
    }
}

fn load_code(path: &Path) -> std::result::Result<Code, Failure> {
    let file = CodeSpecFile::from_json(&read_input(path)?)?;
    Ok(Code::build(file.to_spec()?)?)
}

fn parse_json<T: serde::de::DeserializeOwned>(what: &str, text: &str) -> std::result::Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::new(2, format!("{what}: {e}")))
}

fn field_elems(field: &PrimeField, raw: &[u64]) -> std::result::Result<Vec<Fe>, Failure> {
    Ok(raw.iter().map(|&v| field.checked(v)).collect::<fiberlrc::Result<Vec<_>>>()?)
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes")
}

fn render(table: &impl Tabular, json: Value, format: Format) -> String {
    match format {
        Format::Json => pretty(&json),
        Format::Csv => table.to_csv().trim_end().to_string(),
        Format::Text => table.to_text().trim_end().to_string(),
    }
}

fn cmd_distance(spec: &Path, dist: &DistanceArgs) -> Outcome {
    let code = load_code(spec)?;
    let rep = distance::min_distance(&code, dist.engine.into(), &dist.limits())?;
    let mut out = serde_json::to_value(&rep).expect("plain data serializes");
    if dist.verify {
        let check = distance::min_distance_structured(&code, dist.node_budget)?;
        if check.d != rep.d {
            return Err(Failure::new(
                1,
                format!("engines disagree: {:?} gives {}, structured gives {}", rep.method, rep.d, check.d),
            ));
        }
        out["verified_by"] = json!(check.method);
    }
    Ok(pretty(&out))
}

fn run(cli: Cli) -> Outcome {
    match cli.cmd {
        Cmd::Build { spec, generator, resolve } => {
            let code = load_code(&spec)?;
            if let Some(path) = generator {
                fs::write(&path, code.generator_csv())
                    .map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))?;
            }
            if resolve {
                return Ok(pretty(&CodeSpecFile::from_spec(code.spec())));
            }
            Ok(pretty(&code.params()))
        }
        Cmd::Encode { spec, message } => {
            let code = load_code(&spec)?;
            let raw: Vec<u64> = parse_json("message", &message)?;
            let msg = field_elems(&code.field(), &raw)?;
            Ok(serde_json::to_string(&code.encode(&msg)?.values()).expect("plain data serializes"))
        }
        Cmd::Recover { spec, word, erased } => {
            let code = load_code(&spec)?;
            let raw: Vec<Option<u64>> = parse_json("word", &word)?;
            let mut positions: Vec<usize> = parse_json("erased", &erased)?;
            positions.extend(raw.iter().enumerate().filter(|(_, v)| v.is_none()).map(|(i, _)| i + 1));
            let values: Vec<u64> = raw.iter().map(|v| v.unwrap_or(0)).collect();
            let word = field_elems(&code.field(), &values)?;
            let pattern = ErasurePattern::new(code.n(), positions)?;
            let repaired = repair(&code, &word, &pattern)?;
            Ok(serde_json::to_string(&repaired.values()).expect("plain data serializes"))
        }
        Cmd::Mindist { spec, dist } => cmd_distance(&spec, &dist),
        Cmd::Optimality { spec, dist } => {
            let code = load_code(&spec)?;
            let rep = distance::optimality(&code, dist.engine.into(), &dist.limits())?;
            let p = code.params();
            Ok(pretty(&json!({
                "n": p.n, "k": p.k, "r": p.r, "d": rep.d,
                "singleton": rep.singleton_bound, "optimal": rep.optimal, "method": rep.method,
            })))
        }
        Cmd::MatroidVerify { spec, other } => {
            let (a, b) = (load_code(&spec)?, load_code(&other)?);
            let iso = verify_matroid_iso(&a, &b)?;
            let out = pretty(&iso);
            if iso.holds {
                Ok(out)
            } else {
                emit(&out);
                Err(Failure::new(1, "T·G·R differs from G'"))
            }
        }
        Cmd::NonoptimalSearch { q, xs, seed, trials, known } => {
            let field = PrimeField::new(q)?;
            let xs: [u64; 4] =
                xs.try_into().map_err(|v: Vec<u64>| Failure::new(2, format!("need 4 base values, got {}", v.len())))?;
            let xs = field_elems(&field, &xs)?;
            let prepend = if known { vec![nonoptimal::points()] } else { Vec::new() };
            let config =
                SearchConfig { field, xs: [xs[0], xs[1], xs[2], xs[3]], seed, trial_budget: trials, prepend };
            let found = search_nonoptimal(&config)?;
            let spec = fiberlrc::CodeSpec::plane(field, 4, 0, found.points.clone());
            Ok(pretty(&json!({
                "candidate": found.candidate,
                "spec": CodeSpecFile::from_spec(&spec),
                "zero_fiber": found.zero_fiber,
                "positions": found.positions,
                "g": found.word.g,
                "coefficients": found.word.poly.coeffs,
                "codeword": found.word.codeword,
                "weight": found.word.codeword.weight(),
            })))
        }
        Cmd::Table { spec, z, engine, format } => {
            let code = load_code(&spec)?;
            let CodeKind::Plane { r, points, .. } = &code.spec().kind else {
                return Err(Failure::new(2, "table needs a plane code"));
            };
            let zs = if z.is_empty() { (0..=points.b().saturating_sub(2)).collect() } else { z };
            let table = vz_table(code.field(), *r, points, zs, engine.into(), &Limits::default())?;
            Ok(render(&table, serde_json::to_value(&table).expect("plain data serializes"), format))
        }
        Cmd::Montecarlo { q, b, r, trials, seed, format } => {
            let rep = optimality_probability(&q, b, r, trials, seed)?;
            Ok(render(&rep, serde_json::to_value(&rep).expect("plain data serializes"), format))
        }
        Cmd::Asymptotics { b, t, alpha, beta, m_max, format } => {
            let rep = asymptotic_rates(b, t, alpha, beta, 1..=m_max)?;
            Ok(render(&rep, serde_json::to_value(&rep).expect("plain data serializes"), format))
        }
        Cmd::Reproduce { target } => {
            let targets = if target == "all" {
                Target::ALL.to_vec()
            } else {
                vec![Target::parse(&target).ok_or_else(|| Failure::new(2, format!("unknown target `{target}`")))?]
            };
            let mut reports = Vec::new();
            let mut diffs = Vec::new();
            for t in targets {
                let rep = reproduce(t)?;
                diffs.extend(rep.diff().into_iter().map(|d| format!("{}: {d}", rep.target)));
                reports.push(rep);
            }
            let out = if reports.len() == 1 { pretty(&reports[0]) } else { pretty(&reports) };
            if diffs.is_empty() {
                Ok(out)
            } else {
                emit(&out);
                Err(Failure::new(1, diffs.join("\n")))
            }
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(out: &str) {
    let _ = writeln!(io::stdout().lock(), "{out}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
