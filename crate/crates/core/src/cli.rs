//! Command-line front end. Every subcommand prints a single JSON object
//! (`enumerate` prints one object per line) or a plain-text rendering.
//!
//! Exit codes: 0 when the evaluation ran, whatever the mathematical answer;
//! 2 for usage, parse and precondition errors; 3 when a search exceeds its
//! ceiling.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::enumerate::{enumerate_with, Execution, SearchBounds, DEFAULT_CEILING};
use crate::error::Error;
use crate::ops::{canonical_form, decompose, equivalent, is_irreducible, sum};
use crate::quiddity::{continuant, cos_quiddity, parse_entries, Tuple, DEFAULT_TOLERANCE};
use crate::rings::RingId;
use crate::verify::{self, VerdictReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CEILING: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "quiddity",
    version,
    about = "Exact lambda-quiddities over Z, Z/nZ, Z[X] and Z[2i]"
)]
struct Cli {
    /// Ring selector: z, zmod:<n>, zx, z2i, real
    #[arg(long, global = true)]
    ring: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Absolute tolerance for checks over the real ring
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Test whether a tuple is a lambda-quiddity
    Check {
        #[arg(allow_hyphen_values = true)]
        tuple: String,
    },
    /// The sum of two tuples
    Sum {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Smallest member of the dihedral orbit
    Canon {
        #[arg(allow_hyphen_values = true)]
        tuple: String,
    },
    /// Whether two tuples are dihedrally equivalent
    Equiv {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// The continuant of a (possibly empty) tuple
    Continuant {
        #[arg(allow_hyphen_values = true)]
        tuple: String,
    },
    /// The matrix word of a tuple
    Matrix {
        #[arg(allow_hyphen_values = true)]
        tuple: String,
    },
    /// Find a reduction witness for a lambda-quiddity
    Decompose {
        #[arg(allow_hyphen_values = true)]
        tuple: String,
    },
    /// Whether a lambda-quiddity is irreducible
    Irreducible {
        #[arg(allow_hyphen_values = true)]
        tuple: String,
    },
    /// List every lambda-quiddity in a box
    Enumerate {
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Run a verification suite
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        bounds: BoundsArgs,
        /// Seed for the sampled checks of `properties`
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample count for `properties`
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// The constant tuple 2cos(pi/n) over the real ring
    Cos { n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    #[value(name = "prop31")]
    SmallSizes,
    #[value(name = "theorem25")]
    ZxIrreducibles,
    Z2i,
    #[value(name = "cuntz-holm")]
    SmallEntries,
    Cos,
    Properties,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long)]
    min_size: Option<usize>,
    #[arg(long)]
    max_size: Option<usize>,
    /// Coefficient bound
    #[arg(long)]
    coeff: Option<u64>,
    /// Polynomial degree bound (zx)
    #[arg(long)]
    degree: Option<usize>,
    /// Maximum number of search leaves
    #[arg(long)]
    ceiling: Option<u128>,
    /// Disable the parallel search
    #[arg(long)]
    sequential: bool,
}

impl BoundsArgs {
    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }

    fn to_bounds(
        &self,
        ring: RingId,
        min: usize,
        max: usize,
        coeff: u64,
        degree: usize,
    ) -> SearchBounds {
        SearchBounds::new(
            ring,
            self.min_size.unwrap_or(min),
            self.max_size.unwrap_or(max),
            self.coeff.unwrap_or(coeff),
        )
        .with_degree(self.degree.unwrap_or(degree))
        .with_ceiling(self.ceiling.unwrap_or(DEFAULT_CEILING))
    }
}

enum Output {
    Object(Value),
    Lines {
        json: Vec<String>,
        text: Vec<String>,
    },
    Verdict(VerdictReport),
}

/// Parses `args` (including the program name) and runs the subcommand,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let output = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return match e {
                Error::CeilingExceeded { .. } => EXIT_CEILING,
                _ => EXIT_USAGE,
            };
        }
    };
    let rendered = render(&output, cli.format);
    let written = match &cli.out {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(rendered.as_bytes())),
        None => out.write_all(rendered.as_bytes()),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn render(output: &Output, format: Format) -> String {
    let mut s = String::new();
    match (output, format) {
        (Output::Object(v), Format::Json) => {
            s.push_str(&v.to_string());
            s.push('\n');
        }
        (Output::Object(v), Format::Text) => {
            if let Value::Object(map) = v {
                render_text(map, "", &mut s);
            }
        }
        (Output::Lines { json, .. }, Format::Json) => {
            for l in json {
                s.push_str(l);
                s.push('\n');
            }
        }
        (Output::Lines { text, .. }, Format::Text) => {
            for l in text {
                s.push_str(l);
                s.push('\n');
            }
        }
        (Output::Verdict(r), Format::Json) => {
            s.push_str(&r.to_json().to_string());
            s.push('\n');
        }
        (Output::Verdict(r), Format::Text) => s.push_str(&r.to_string()),
    }
    s
}

fn render_text(map: &Map<String, Value>, prefix: &str, s: &mut String) {
    for (k, v) in map {
        let key = if prefix.is_empty() {
            k.clone()
        } else {
            format!("{prefix}.{k}")
        };
        match v {
            Value::Object(inner) => render_text(inner, &key, s),
            Value::String(x) => s.push_str(&format!("{key}: {x}\n")),
            other => s.push_str(&format!("{key}: {other}\n")),
        }
    }
}

fn ring_of(cli: &Cli) -> Result<RingId, Error> {
    cli.ring
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("--ring is required".into()))?
        .parse()
}

fn dispatch(cli: &Cli) -> Result<Output, Error> {
    let ring = || ring_of(cli);
    let parse = |text: &str| -> Result<Tuple, Error> { Tuple::parse(ring_of(cli)?, text) };
    let obj = |v: Value| Ok(Output::Object(v));
    match &cli.command {
        Command::Check { tuple } => {
            let t = parse(tuple)?;
            let sign = if t.ring().is_exact() {
                t.is_quiddity()
            } else {
                t.is_quiddity_approx(cli.tol)?
            };
            let mut v = json!({ "quiddity": sign.is_some(), "sign": sign });
            if t.ring().sign_ambiguous() {
                v["sign_ambiguous"] = json!(true);
            }
            obj(v)
        }
        Command::Sum { left, right } => {
            let s = sum(&parse(left)?, &parse(right)?)?;
            obj(json!({ "result": s.to_string() }))
        }
        Command::Canon { tuple } => {
            obj(json!({ "canonical": canonical_form(&parse(tuple)?)?.to_string() }))
        }
        Command::Equiv { left, right } => {
            obj(json!({ "equivalent": equivalent(&parse(left)?, &parse(right)?)? }))
        }
        Command::Continuant { tuple } => {
            let r = ring()?;
            let entries = parse_entries(r, tuple)?;
            obj(json!({ "value": continuant(r, &entries).to_string() }))
        }
        Command::Matrix { tuple } => {
            let t = parse(tuple)?;
            let m = t.word_matrix();
            let e: Vec<String> = m.entries().iter().map(|x| x.to_string()).collect();
            obj(json!({
                "matrix": [[e[0], e[1]], [e[2], e[3]]],
                "det": m.det().to_string(),
                "continuant_identity": t.continuant_identity_holds(),
            }))
        }
        Command::Decompose { tuple } => {
            let t = parse(tuple)?;
            let witness = decompose(&t)?.map(|w| {
                json!({
                    "rotation": w.transform.rotation,
                    "reversed": w.transform.reversed,
                    "transformed": w.transform.apply(&t).expect("rotation in range").to_string(),
                    "left": w.left.to_string(),
                    "right": w.right.to_string(),
                })
            });
            obj(json!({ "reducible": witness.is_some(), "witness": witness }))
        }
        Command::Irreducible { tuple } => {
            obj(json!({ "irreducible": is_irreducible(&parse(tuple)?)? }))
        }
        Command::Enumerate { bounds } => {
            let b = bounds.to_bounds(ring()?, 2, 6, 2, 1);
            let report = enumerate_with(&b, bounds.execution())?;
            let mut json = report.record_lines();
            json.push(report.summary_json().to_string());
            Ok(Output::Lines {
                json,
                text: report.text_lines(),
            })
        }
        Command::Verify {
            suite,
            bounds,
            seed,
            samples,
        } => {
            let exec = bounds.execution();
            let report = match suite {
                Suite::SmallSizes => verify::verify_small_sizes(bounds.coeff.unwrap_or(3), exec)?,
                Suite::ZxIrreducibles => verify::verify_zx_irreducibles_in(
                    &bounds.to_bounds(RingId::Poly, 3, 6, 1, 1),
                    exec,
                )?,
                Suite::Z2i => verify::verify_z2i(
                    bounds.coeff.unwrap_or(2),
                    bounds.max_size.unwrap_or(5),
                    exec,
                )?,
                Suite::SmallEntries => {
                    let r = match &cli.ring {
                        Some(_) => ring()?,
                        None => RingId::Int,
                    };
                    let b = bounds.to_bounds(r, 2, 6, 3, 1);
                    verify::verify_small_entries(&enumerate_with(&b, exec)?)?
                }
                Suite::Cos => verify::verify_cos(bounds.max_size.unwrap_or(12), cli.tol)?,
                Suite::Properties => verify::verify_properties(*seed, *samples, exec)?,
            };
            Ok(Output::Verdict(report))
        }
        Command::Cos { n } => {
            let t = cos_quiddity(*n)?;
            let sign = t.is_quiddity_approx(cli.tol)?;
            obj(json!({
                "n": n,
                "tuple": t.to_string(),
                "quiddity": sign.is_some(),
                "sign": sign,
            }))
        }
    }
}

/// Convenience wrapper used by the binary.
pub fn main_with_stdio() -> i32 {
    run(std::env::args_os(), &mut io::stdout(), &mut io::stderr())
}
