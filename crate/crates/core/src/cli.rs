//! Command-line front end. Every subcommand reads JSON or flags, calls one
//! library entry point and prints JSON (or CSV) on stdout.
//!
//! Exit codes: 0 on success, 1 with `{"error", "detail"}` when the
//! computation rejects its input, 2 when the input cannot be parsed.

use std::fmt::{Debug, Display};
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::crimps::{sample_crimp, stratum, LocalRamType};
use crate::exact_core::{parse_rational, Jet, Rational};
use crate::families::{balance_limit, epsilon_stable, ExtensionFamily};
use crate::io::{CrimpJson, CoverJson, FamilyJson, IoError, WPointJson};
use crate::models::{cross_ratio, cross_ratio_lattice, even_normal_form, principal_part};
use crate::picard::{chamber_fan, stratum_dimensions};
use crate::splitting::maroni;
use crate::triple_cover::{FiberType, MirandaCover, Point};

pub const TRUNCATION_VAR: &str = "TRIGONAL_TRUNCATION";

#[derive(Debug, Parser)]
#[command(name = "trigonal", version, about = "Exact invariants of triple covers of the projective line")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Genus, Maroni invariant, branch degree and fiber types of a cover.
    Invariants {
        cover: PathBuf,
        /// Degree of the cyclic pullback for the refined Maroni invariant.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
        r: u8,
        /// Comma-separated points (`inf` or rationals); defaults to infinity,
        /// zero and every rational branch point.
        #[arg(long)]
        points: Option<String>,
    },
    /// Classify crimps of branch degree `b` and mu invariant `l`.
    CrimpClassify {
        #[arg(long)]
        b: usize,
        #[arg(long)]
        l: String,
        #[arg(long = "type")]
        ram: String,
        /// Also emit a crimp with random parameters.
        #[arg(long)]
        sample: bool,
        #[arg(long, default_value_t = 1)]
        component: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// mu and delta of a crimp.
    CrimpMu { crimp: PathBuf },
    /// Rewrite a family until its central fiber is l-balanced.
    Balance {
        #[arg(long)]
        l: usize,
        family: PathBuf,
        #[arg(long)]
        trace: bool,
    },
    /// Rays and chambers of the divisor fan in genus `g`.
    Chambers {
        #[arg(long)]
        g: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Weighted normal form of a balanced even-genus cover.
    NormalForm { cover: PathBuf },
    /// Cross-ratio of a cover, or of the global model of an etale crimp.
    CrossRatio { input: PathBuf },
    /// Dimensions of the Maroni and mu strata.
    Dims {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        l: usize,
    },
    /// Weighted stability of a marked line with branch multiplicities.
    Stable {
        #[arg(long)]
        eps: String,
        #[arg(long, value_delimiter = ',')]
        mults: Vec<usize>,
        /// The marked section meets the branch divisor.
        #[arg(long)]
        sigma_meets_branch: bool,
    },
}

enum Failure {
    Malformed(String),
    Rejected { name: String, detail: String },
}

fn variant_name(e: &impl Debug) -> String {
    format!("{e:?}").chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect()
}

fn rejected<E: Debug + Display>(e: E) -> Failure {
    Failure::Rejected { name: variant_name(&e), detail: e.to_string() }
}

fn from_io(e: IoError) -> Failure {
    match e {
        IoError::Json(_) | IoError::Rational(_) | IoError::Field(_) => Failure::Malformed(e.to_string()),
        IoError::Cover(e) => rejected(e),
        IoError::Crimp(e) => rejected(e),
        IoError::Family(e) => rejected(e),
        IoError::Model(e) => rejected(e),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn rational_arg(s: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(|e| Failure::Malformed(e.to_string()))
}

fn fiber_name(t: FiberType) -> &'static str {
    match t {
        FiberType::Etale => "etale",
        FiberType::Simple => "simple",
        FiberType::Total => "total",
    }
}

/// Jet truncation override from the environment.
pub fn truncation_override() -> Result<Option<usize>, String> {
    match std::env::var(TRUNCATION_VAR) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("{TRUNCATION_VAR} must be a positive integer, got {v:?}")),
        },
        Err(_) => Ok(None),
    }
}

fn parse_point(s: &str) -> Result<Point, Failure> {
    match s.trim() {
        "inf" | "infinity" => Ok(Point::infinity()),
        other => Ok(Point::affine(rational_arg(other)?)),
    }
}

fn point_name(p: &Point) -> String {
    if p.y == Rational::from_integer(0.into()) {
        "inf".into()
    } else {
        (&p.x / &p.y).to_string()
    }
}

fn invariants(cover: &MirandaCover, r: usize, points: Option<&str>) -> Result<Value, Failure> {
    let disc = cover.discriminant().map_err(rejected)?;
    let mut branch: Vec<Rational> = disc.affine.rational_roots();
    branch.dedup();
    let pts: Vec<Point> = match points {
        Some(list) => list.split(',').map(parse_point).collect::<Result<_, _>>()?,
        None => {
            let mut v = vec![Point::infinity(), Point::affine(Rational::from_integer(0.into()))];
            v.extend(branch.iter().filter(|x| **x != Rational::from_integer(0.into())).cloned().map(Point::affine));
            v
        }
    };
    let mut fibers = Vec::new();
    for p in &pts {
        let t = cover.fiber_type(p).map_err(rejected)?;
        fibers.push(json!({ "point": point_name(p), "type": fiber_name(t) }));
    }
    let m = maroni(cover, r).map_err(rejected)?;
    Ok(json!({
        "genus": cover.genus(),
        "splitting": [cover.m, cover.n],
        "maroni": m.to_string(),
        "r": r,
        "branch_degree": disc.degree,
        "rational_branch_points": branch.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "fibers": fibers,
    }))
}

fn crimp_classify(b: usize, l: &str, ram: &str, sample: bool, component: usize, seed: u64) -> Result<Value, Failure> {
    let l = rational_arg(l)?;
    let ram = LocalRamType::parse(ram).ok_or_else(|| Failure::Malformed(format!("unknown type {ram:?}")))?;
    let Some(s) = stratum(b, &l, ram) else {
        return Err(Failure::Rejected {
            name: "EmptyStratum".into(),
            detail: format!("no {} crimp with b = {b} and mu = {l}", ram.name()),
        });
    };
    let mut out = serde_json::to_value(&s).expect("stratum serializes");
    if sample {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params: Vec<Rational> = (0..s.dimension)
            .map(|_| Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into()))
            .collect();
        let c = sample_crimp(&s, &params, component).map_err(rejected)?;
        out["sample"] = serde_json::to_value(CrimpJson::from_crimp(&c)).expect("crimp serializes");
    }
    Ok(out)
}

fn retruncate(f: ExtensionFamily, n: usize) -> Result<ExtensionFamily, Failure> {
    let e: Vec<Jet> = f.e.iter().map(|j| j.with_truncation(n)).collect();
    ExtensionFamily::new(f.m, f.n, n, e).map_err(rejected)
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<(), Failure> {
    let value = match cmd {
        Command::Invariants { cover, r, points } => {
            let cover = read_json::<CoverJson>(&cover)?.to_cover().map_err(from_io)?;
            invariants(&cover, r as usize, points.as_deref())?
        }
        Command::CrimpClassify { b, l, ram, sample, component, seed } => {
            crimp_classify(b, &l, &ram, sample, component, seed)?
        }
        Command::CrimpMu { crimp } => {
            let c = read_json::<CrimpJson>(&crimp)?.to_crimp().map_err(from_io)?;
            let md = c.mu_delta().map_err(rejected)?;
            json!({
                "mu": md.mu.to_string(),
                "delta": md.delta,
                "branch_degree": md.branch_degree,
                "exponents": [md.exponents.0, md.exponents.1],
            })
        }
        Command::Balance { l, family, trace } => {
            let mut f = read_json::<FamilyJson>(&family)?.to_family().map_err(from_io)?;
            if let Some(n) = truncation_override().map_err(Failure::Malformed)? {
                f = retruncate(f, n)?;
            }
            let (g, tr) = balance_limit(&f, l).map_err(rejected)?;
            let mut v = json!({
                "family": FamilyJson::from_family(&g),
                "central_splitting": [g.central_splitting().0, g.central_splitting().1],
            });
            if trace {
                v["trace"] = serde_json::to_value(&tr).expect("trace serializes");
            }
            v
        }
        Command::Chambers { g, format } => {
            let fan = chamber_fan(g).map_err(rejected)?;
            match format {
                Format::Csv => {
                    write!(out, "{}", fan.to_csv()).map_err(|e| Failure::Malformed(e.to_string()))?;
                    return Ok(());
                }
                Format::Json => serde_json::to_value(&fan).expect("fan serializes"),
            }
        }
        Command::NormalForm { cover } => {
            let cover = read_json::<CoverJson>(&cover)?.to_cover().map_err(from_io)?;
            let w = even_normal_form(&cover).map_err(rejected)?;
            serde_json::to_value(WPointJson::from_point(&w)).expect("point serializes")
        }
        Command::CrossRatio { input } => {
            let raw: Value = read_json(&input)?;
            if raw.get("ram").is_some() {
                let c = serde_json::from_value::<CrimpJson>(raw)
                    .map_err(|e| Failure::Malformed(e.to_string()))?
                    .to_crimp()
                    .map_err(from_io)?;
                let f = c.globalize().map_err(rejected)?;
                let chi = cross_ratio_lattice(&f).map_err(rejected)?;
                let rho = principal_part(&c).map_err(rejected)?;
                let mut v = serde_json::to_value(&chi).expect("line serializes");
                v["principal_part"] = serde_json::to_value(&rho).expect("line serializes");
                v
            } else {
                let cover = serde_json::from_value::<CoverJson>(raw)
                    .map_err(|e| Failure::Malformed(e.to_string()))?
                    .to_cover()
                    .map_err(from_io)?;
                serde_json::to_value(cross_ratio(&cover).map_err(rejected)?).expect("line serializes")
            }
        }
        Command::Dims { g, l } => {
            let (maroni_dim, mu_dim) = stratum_dimensions(g, l).map_err(rejected)?;
            json!({ "maroni_dim": maroni_dim, "mu_dim": mu_dim })
        }
        Command::Stable { eps, mults, sigma_meets_branch } => {
            let eps = rational_arg(&eps)?;
            json!({ "stable": epsilon_stable(&mults, !sigma_meets_branch, &eps) })
        }
    };
    let text = serde_json::to_string(&value).expect("json value serializes");
    writeln!(out, "{text}").map_err(|e| Failure::Malformed(e.to_string()))
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Malformed(detail)) => {
            let _ = writeln!(out, "{}", json!({ "error": "MalformedInput", "detail": detail }));
            2
        }
        Err(Failure::Rejected { name, detail }) => {
            let _ = writeln!(out, "{}", json!({ "error": name, "detail": detail }));
            1
        }
    }
}
