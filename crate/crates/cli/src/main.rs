//! `zaran`: generate instances, certify edge bounds, run the oracles and
//! convert between representations.
//!
//! Exit codes: 0 within bound, 2 biclique found, 1 error. Batch commands
//! report the worst outcome over all inputs, errors first.

mod bench;
mod convert;
mod gen;
mod io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use zaran_core::bounds::{class_bound, BoundClass};
use zaran_core::certify::{certify, Certificate, CertifyConfig};
use zaran_core::geom::build_graph;
use zaran_core::oracle::find_biclique;
use zaran_core::Representation;

#[derive(Parser)]
#[command(name = "zaran", version, about = "Zarankiewicz bounds for low Ferrers dimension bipartite graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a constructed or random instance.
    Gen(gen::GenArgs),
    /// Certify the class edge bound or extract a K_{k,k}, per instance file.
    Certify(CertifyArgs),
    /// Exhaustive biclique search (exit 2 when one exists), or check a
    /// certificate against an instance (exit 0 when valid).
    Oracle(OracleArgs),
    /// Convert between representations.
    Convert(convert::ConvertArgs),
    /// Print a class edge bound.
    Bounds(BoundsArgs),
    /// Time the certifiers on seeded random instances.
    Bench(bench::BenchArgs),
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(required = true)]
    files: Vec<PathBuf>,
    #[arg(long)]
    k: usize,
    /// Certificate file for a single input, or directory for several.
    /// Without it a single certificate goes to stdout and several land next
    /// to their inputs as `<stem>.cert.json`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct OracleArgs {
    file: PathBuf,
    #[arg(long, required_unless_present = "verify")]
    k: Option<usize>,
    /// Certificate to check instead of searching.
    #[arg(long)]
    verify: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    /// chordal, sr, chain3, gig or chaind.
    #[arg(long)]
    class: String,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Number of chain factors; only for chaind.
    #[arg(long)]
    d: Option<u32>,
}

/// Exit status of one certify run; ordered so that `max` picks the code.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Within,
    Biclique,
    Error,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Within => 0,
            Status::Biclique => 2,
            Status::Error => 1,
        }
    }
}

fn certify_file(path: &Path, k: usize, cfg: &CertifyConfig, out: Option<&Path>) -> Result<Certificate> {
    let rep: Representation = io::read_json(path)?;
    let cert = certify(&rep, k, cfg).with_context(|| format!("certifying {}", path.display()))?;
    io::emit(&cert, out)?;
    Ok(cert)
}

fn summary(cert: &Certificate) -> String {
    match cert {
        Certificate::WithinBound { bound, cert, .. } => {
            format!("within_bound bound={bound} max_degree={}", cert.max_degree())
        }
        Certificate::Biclique {
            bound,
            witness,
            extraction_stage,
        } => {
            let stage = extraction_stage.map_or("none".to_string(), |s| s.to_string());
            format!("biclique bound={bound} k={} stage={stage}", witness.k())
        }
    }
}

fn cmd_certify(a: CertifyArgs) -> Result<Status> {
    let cfg = CertifyConfig {
        oracle: io::oracle_config()?,
    };
    let targets: Vec<Option<PathBuf>> = match (&a.out, a.files.len()) {
        (out, 1) => vec![out.clone()],
        (Some(dir), _) => {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            a.files.iter().map(|f| Some(io::sibling(f, Some(dir), "cert"))).collect()
        }
        (None, _) => a.files.iter().map(|f| Some(io::sibling(f, None, "cert"))).collect(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs.unwrap_or(0))
        .build()?;
    let results: Vec<(Status, String)> = pool.install(|| {
        a.files
            .par_iter()
            .zip(&targets)
            .map(|(f, out)| match certify_file(f, a.k, &cfg, out.as_deref()) {
                Ok(c) => {
                    let s = if c.is_biclique() { Status::Biclique } else { Status::Within };
                    (s, format!("{}: {}", f.display(), summary(&c)))
                }
                Err(e) => (Status::Error, format!("{}: error: {e:#}", f.display())),
            })
            .collect()
    });
    for (_, line) in &results {
        eprintln!("{line}");
    }
    Ok(results.iter().map(|r| r.0).max().unwrap_or(Status::Within))
}

fn cmd_oracle(a: OracleArgs) -> Result<Status> {
    let rep: Representation = io::read_json(&a.file)?;
    let g = build_graph(&rep)?;
    if let Some(path) = a.verify {
        let cert: Certificate = io::read_json(&path)?;
        if let (Some(k), Some(w)) = (a.k, cert.witness()) {
            if w.k() != k {
                bail!("witness has size {} but --k is {k}", w.k());
            }
        }
        return match cert.check(&g) {
            Ok(()) => {
                println!("valid");
                Ok(Status::Within)
            }
            Err(e) => bail!("invalid certificate: {e}"),
        };
    }
    let k = a.k.expect("clap requires --k without --verify");
    match find_biclique(&g, k, &io::oracle_config()?)? {
        None => {
            println!("none");
            Ok(Status::Within)
        }
        Some(w) => {
            println!("{}", serde_json::to_string(&w)?);
            Ok(Status::Biclique)
        }
    }
}

fn cmd_bounds(a: BoundsArgs) -> Result<Status> {
    let mut class: BoundClass = a.class.parse()?;
    match (class, a.d) {
        (BoundClass::ChainD(_), Some(d)) => class = BoundClass::ChainD(d),
        (BoundClass::ChainD(_), None) => bail!("chaind needs --d"),
        (_, Some(_)) => bail!("--d only applies to chaind"),
        _ => {}
    }
    let bound = class_bound(class, a.m, a.n, a.k)?;
    let d = a.d.map(|d| format!(" d={d}")).unwrap_or_default();
    println!("{} m={} n={} k={}{d} bound={bound}", a.class, a.m, a.n, a.k);
    Ok(Status::Within)
}

fn run(cli: Cli) -> Result<Status> {
    match cli.cmd {
        Command::Gen(a) => gen::run(a).map(|()| Status::Within),
        Command::Certify(a) => cmd_certify(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Convert(a) => convert::run(a).map(|()| Status::Within),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Bench(a) => bench::run(a).map(|()| Status::Within),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(s) => ExitCode::from(s.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(Status::Error.code())
        }
    }
}
