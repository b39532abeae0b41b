use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};

use zaran_core::convert::{
    assemble_chain3, chain3_projections, conv2_decompose, dyadic_decompose, flip_chain_rep,
    gig_to_conv2, prig_to_conv2, LabeledRep,
};
use zaran_core::geom::build_graph;
use zaran_core::{BipartiteGraph, ClassTag, Representation};

use crate::io;

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    /// PRIG or GIG instance to two labeled convex factors.
    Conv2,
    /// Two labeled convex factors (input and `--with`) to PRIG and GIG parts.
    Decompose,
    /// Chain³ instance to its interval-containment and chain factors.
    Projections,
    /// Interval-containment (input) and chain (`--with`) factors to chain³.
    Assemble,
    /// Chain representation with rays and points swapped.
    Flip,
    /// The bipartite graph of any instance.
    Graph,
    /// Dyadic pieces of a chain instance over its own graph, or over the
    /// residual graph given by `--with`.
    Dyadic,
}

#[derive(Args)]
pub struct ConvertArgs {
    input: PathBuf,
    #[arg(long)]
    to: Target,
    /// Second input for decompose, assemble and dyadic.
    #[arg(long)]
    with: Option<PathBuf>,
    /// Output file for single-output targets (stdout when absent). For
    /// conv2, decompose and projections, a path prefix; it defaults to the
    /// input path without its extension.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn with(a: &ConvertArgs) -> Result<&Path> {
    a.with.as_deref().context("this target needs --with")
}

/// Writes two outputs as `<prefix>.<a>.json` and `<prefix>.<b>.json`.
fn emit_pair<A: serde::Serialize, B: serde::Serialize>(
    a: &ConvertArgs,
    (first, x): (&str, &A),
    (second, y): (&str, &B),
) -> Result<()> {
    let prefix = a.out.clone().unwrap_or_else(|| a.input.with_extension(""));
    let path = |s: &str| {
        let mut p = prefix.clone().into_os_string();
        p.push(format!(".{s}.json"));
        PathBuf::from(p)
    };
    io::write_atomic(&path(first), &io::to_json(x)?)?;
    io::write_atomic(&path(second), &io::to_json(y)?)?;
    eprintln!("wrote {} and {}", path(first).display(), path(second).display());
    Ok(())
}

pub fn run(a: ConvertArgs) -> Result<()> {
    let out = a.out.as_deref();
    match a.to {
        Target::Conv2 => {
            let rep: Representation = io::read_json(&a.input)?;
            let (f1, f2) = match rep.class {
                ClassTag::Gig => gig_to_conv2(&rep)?,
                _ => prig_to_conv2(&rep)?,
            };
            emit_pair(&a, ("f1", &f1), ("f2", &f2))
        }
        Target::Decompose => {
            let f1: LabeledRep = io::read_json(&a.input)?;
            let f2: LabeledRep = io::read_json(with(&a)?)?;
            let (prig, gig) = conv2_decompose(&f1, &f2)?;
            emit_pair(&a, ("prig", &prig), ("gig", &gig))
        }
        Target::Projections => {
            let rep: Representation = io::read_json(&a.input)?;
            let (ic, chain) = chain3_projections(&rep)?;
            emit_pair(&a, ("ic", &ic), ("chain", &chain))
        }
        Target::Assemble => {
            let ic: Representation = io::read_json(&a.input)?;
            let chain: Representation = io::read_json(with(&a)?)?;
            io::emit(&assemble_chain3(&ic, &chain)?, out)
        }
        Target::Flip => {
            let rep: Representation = io::read_json(&a.input)?;
            io::emit(&flip_chain_rep(&rep)?, out)
        }
        Target::Graph => {
            let rep: Representation = io::read_json(&a.input)?;
            io::emit(&build_graph(&rep)?, out)
        }
        Target::Dyadic => {
            let rep: Representation = io::read_json(&a.input)?;
            let residual: BipartiteGraph = match &a.with {
                Some(p) => io::read_json(p)?,
                None => build_graph(&rep)?,
            };
            io::emit(&dyadic_decompose(&rep, &residual)?, out)
        }
    }
}
