use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use anyhow::Result;
use clap::{Args, ValueEnum};

use zaran_core::certify::{certify, Certificate, CertifyConfig};
use zaran_core::sample::{gig_comb, gig_dense, sample};
use zaran_core::{ClassTag, Representation};

use crate::io;

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    /// 200 instances per row, sides up to 60.
    Default,
    /// 20 instances per row, sides up to 20.
    Quick,
}

#[derive(Args)]
pub struct BenchArgs {
    #[arg(value_enum, default_value = "default")]
    suite: Suite,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

struct Row {
    label: &'static str,
    make: fn(usize, u64) -> Representation,
}

fn rows() -> Vec<Row> {
    vec![
        Row { label: "chain", make: |s, seed| sample(ClassTag::Chain, s, s, seed, None) },
        Row { label: "conv", make: |s, seed| sample(ClassTag::Conv, s, s, seed, Some(8)) },
        Row { label: "ic", make: |s, seed| sample(ClassTag::IntervalContainment, s, s, seed, None) },
        Row { label: "sr", make: |s, seed| sample(ClassTag::Sr, s, s, seed, None) },
        Row { label: "chain3", make: |s, seed| sample(ClassTag::Chain3Brc, s, s, seed, None) },
        Row { label: "gig", make: |s, seed| sample(ClassTag::Gig, s, s, seed, None) },
        Row { label: "gig-comb", make: |s, seed| gig_comb(3, 3 * s, seed) },
        Row { label: "gig-dense", make: |s, seed| gig_dense(s, s, 0.7, seed) },
    ]
}

pub fn run(a: BenchArgs) -> Result<()> {
    let (count, side) = match a.suite {
        Suite::Default => (200u64, 60usize),
        Suite::Quick => (20, 20),
    };
    let cfg = CertifyConfig {
        oracle: io::oracle_config()?,
    };
    println!(
        "{:<10} {:>9} {:>7} {:>9} {:>7} {:>11} {:>10}",
        "class", "instances", "within", "biclique", "errors", "stages", "mean_us"
    );
    for row in rows() {
        let (mut within, mut biclique, mut errors) = (0, 0, 0);
        let mut stages: BTreeMap<u8, usize> = BTreeMap::new();
        let mut spent = Duration::ZERO;
        for i in 0..count {
            let seed = a.seed.wrapping_mul(1_000_003).wrapping_add(i);
            let rep = (row.make)(side, seed);
            let k = 2 + (i % 2) as usize;
            let start = Instant::now();
            let res = certify(&rep, k, &cfg);
            spent += start.elapsed();
            match res {
                Ok(Certificate::WithinBound { .. }) => within += 1,
                Ok(Certificate::Biclique { extraction_stage, .. }) => {
                    biclique += 1;
                    if let Some(s) = extraction_stage {
                        *stages.entry(s as u8).or_default() += 1;
                    }
                }
                Err(_) => errors += 1,
            }
        }
        let stage_col = (1..=3u8)
            .map(|s| stages.get(&s).copied().unwrap_or(0).to_string())
            .collect::<Vec<_>>()
            .join("/");
        println!(
            "{:<10} {:>9} {:>7} {:>9} {:>7} {:>11} {:>10.1}",
            row.label,
            count,
            within,
            biclique,
            errors,
            stage_col,
            spent.as_secs_f64() * 1e6 / count as f64
        );
    }
    Ok(())
}
