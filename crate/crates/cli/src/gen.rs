use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Subcommand};

use zaran_core::construct::{chain_lower_bound, duplicate, grid, ugig_construction};
use zaran_core::sample::{gig_comb, gig_dense, sample};
use zaran_core::{ClassTag, Representation};

use crate::io;

#[derive(Args)]
pub struct GenArgs {
    #[command(subcommand)]
    what: Generator,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Generator {
    /// K_{2,2}-free grid intersection graph with 4t² segments per side.
    Ugig {
        #[arg(long)]
        t: usize,
    },
    /// K_{k,k}-free chain graph with (n+m)(k-1) - (k-1)² edges.
    ChainLb {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Uniform coordinates in [0, 4(m+n)].
    Random {
        #[arg(long)]
        class: ClassTag,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cap on interval lengths; endpoints are independent without it.
        #[arg(long)]
        span: Option<i64>,
    },
    /// K_{s,s} drawn as crossing segments.
    Grid {
        #[arg(long)]
        size: usize,
    },
    /// GIG with short teeth around a few verticals.
    Comb {
        #[arg(long)]
        verticals: usize,
        #[arg(long)]
        horizontals: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// GIG where a fraction of segments span the middle of the box.
    Dense {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.6)]
        long: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// k-1 copies of every object of an existing instance.
    Dup {
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

pub fn run(a: GenArgs) -> Result<()> {
    let rep = match a.what {
        Generator::Ugig { t } => ugig_construction(t)?,
        Generator::ChainLb { m, n, k } => chain_lower_bound(m, n, k)?,
        Generator::Random {
            class,
            m,
            n,
            seed,
            span,
        } => sample(class, m, n, seed, span),
        Generator::Grid { size } => grid(size),
        Generator::Comb {
            verticals,
            horizontals,
            seed,
        } => gig_comb(verticals, horizontals, seed),
        Generator::Dense { m, n, long, seed } => {
            anyhow::ensure!((0.0..=1.0).contains(&long), "--long must lie in [0, 1]");
            gig_dense(m, n, long, seed)
        }
        Generator::Dup { input, k } => {
            let rep: Representation = io::read_json(&input)?;
            duplicate(&rep, k)?
        }
    };
    io::emit(&rep, a.out.as_deref())
}
