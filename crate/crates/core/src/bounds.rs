//! Closed-form edge bounds for `K_{k,k}`-free graphs, per class.
//!
//! `m` is the U-side size and `n` the V-side size throughout.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundClass {
    Chordal,
    Sr,
    Chain3,
    Gig,
    /// Intersection of `d >= 3` chain graphs.
    ChainD(u32),
}

impl std::str::FromStr for BoundClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "chordal" => BoundClass::Chordal,
            "sr" => BoundClass::Sr,
            "chain3" => BoundClass::Chain3,
            "gig" => BoundClass::Gig,
            "chaind" => BoundClass::ChainD(3),
            other => return Err(Error::InvalidParameter(format!("unknown bound class {other:?}"))),
        })
    }
}

fn check_k(k: usize) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    Ok(k as u64 - 1)
}

/// Peeling threshold for the classes proved by degeneracy, `None` for chain³
/// (bulky/thin accounting) and chain^d.
pub fn degeneracy_threshold(class: BoundClass, k: usize) -> Result<Option<u64>> {
    let k1 = check_k(k)?;
    Ok(match class {
        BoundClass::Chordal => Some(k1),
        BoundClass::Sr => Some(2 * k1),
        BoundClass::Gig => Some(27 * k1),
        BoundClass::Chain3 | BoundClass::ChainD(_) => None,
    })
}

pub fn class_bound(class: BoundClass, m: usize, n: usize, k: usize) -> Result<u64> {
    let k1 = check_k(k)?;
    let (m, n) = (m as u64, n as u64);
    Ok(match class {
        BoundClass::Chordal => (m + n) * k1,
        BoundClass::Sr => 2 * (m + n) * k1,
        BoundClass::Chain3 => (3 * m + 6 * n) * k1,
        BoundClass::Gig => 27 * (m + n) * k1,
        BoundClass::ChainD(d) => crate::convert::dyadic::chaind_bound(d, m as usize, n as usize, k)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_forms() {
        for n in [1usize, 7, 30] {
            for k in 1..5usize {
                let k1 = (k - 1) as u64;
                let n64 = n as u64;
                assert_eq!(class_bound(BoundClass::Chordal, n, n, k).unwrap(), 2 * n64 * k1);
                assert_eq!(class_bound(BoundClass::Sr, n, n, k).unwrap(), 4 * n64 * k1);
                assert_eq!(class_bound(BoundClass::Chain3, n, n, k).unwrap(), 9 * n64 * k1);
                assert_eq!(class_bound(BoundClass::Gig, n, n, k).unwrap(), 54 * n64 * k1);
            }
        }
        assert_eq!(class_bound(BoundClass::Chain3, 10, 10, 3).unwrap(), 180);
        assert!(class_bound(BoundClass::Gig, 1, 1, 0).is_err());
    }
}
