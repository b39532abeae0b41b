//! Dyadic ranges over rank-compressed points, used to peel one chain factor
//! off a chain^d graph at a logarithmic cost.
//!
//! Ranges are 0-indexed and of the form `[s·2^i, (s+1)·2^i - 1]`. Points are
//! replaced by their ranks (ties by index) and the rank space is padded to a
//! power of two; padding ranks hold no vertex.

use serde::{Deserialize, Serialize};

use crate::geom::{ClassTag, GeomObject, Representation, Side};
use crate::graph::BipartiteGraph;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DyadicRange {
    pub lo: u64,
    pub hi: u64,
}

impl DyadicRange {
    pub fn new(lo: u64, hi: u64) -> Result<Self> {
        let r = DyadicRange { lo, hi };
        if hi < lo || !r.size().is_power_of_two() || !lo.is_multiple_of(r.size()) {
            return Err(Error::InvalidParameter(format!("[{lo},{hi}] is not a dyadic range")));
        }
        Ok(r)
    }

    pub fn size(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn contains(&self, p: u64) -> bool {
        self.lo <= p && p <= self.hi
    }
}

/// `⌈log₂ n⌉`, with `0` for `n <= 1`.
pub fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// The minimal disjoint dyadic cover of `[ray_lo, n-1]`: repeatedly take the
/// largest aligned block starting at the cursor that still fits.
pub fn dyadic_cover(ray_lo: u64, n: u64) -> Result<Vec<DyadicRange>> {
    if !n.is_power_of_two() {
        return Err(Error::InvalidParameter(format!("n={n} is not a power of two")));
    }
    if ray_lo >= n {
        return Err(Error::InvalidParameter(format!("ray start {ray_lo} outside [0,{n})")));
    }
    let mut out = Vec::new();
    let mut c = ray_lo;
    while c < n {
        let align = if c == 0 { n } else { 1 << c.trailing_zeros() };
        let mut size = align.min(n);
        while c + size > n {
            size /= 2;
        }
        out.push(DyadicRange {
            lo: c,
            hi: c + size - 1,
        });
        c += size;
    }
    Ok(out)
}

/// Edge bound for intersections of `d >= 3` chain graphs:
/// `(3m+6n)(k-1)·max(1, ⌈log₂ n⌉)^(d-3)`.
pub fn chaind_bound(d: u32, m: usize, n: usize, k: usize) -> Result<u64> {
    if d < 3 {
        return Err(Error::InvalidParameter(format!(
            "chain^d bound needs d >= 3, got {d}; use the class bound instead"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let base = (3 * m as u64 + 6 * n as u64) * (k as u64 - 1);
    let factor = (ceil_log2(n as u64).max(1) as u64)
        .checked_pow(d - 3)
        .ok_or_else(|| Error::InvalidParameter("bound overflows u64".into()))?;
    base.checked_mul(factor)
        .ok_or_else(|| Error::InvalidParameter("bound overflows u64".into()))
}

/// One auxiliary graph: the rays whose cover uses `range`, the points whose
/// rank falls in it, and the residual edges among them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyadicPiece {
    pub range: DyadicRange,
    /// Side of the chain representation holding the rays.
    pub ray_side: Side,
    pub rays: Vec<usize>,
    pub points: Vec<usize>,
    /// Induced on `(u list, v list)` in local indices; the U list is
    /// `rays` or `points` depending on `ray_side`.
    pub graph: BipartiteGraph,
}

impl DyadicPiece {
    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }
}

struct Ranked {
    ray_side: Side,
    ray_x: Vec<i64>,
    /// Rank of each point; ranks are a permutation of `0..points`.
    point_rank: Vec<u64>,
    sorted_x: Vec<i64>,
    n: u64,
}

fn rank(rep: &Representation) -> Result<Ranked> {
    if rep.class != ClassTag::Chain {
        return Err(Error::InvalidParameter(format!(
            "expected a chain representation, got {}",
            rep.class
        )));
    }
    let v = crate::geom::validate_representation(rep);
    if !v.is_empty() {
        return Err(Error::InvalidRepresentation(v));
    }
    let ray_side = match (rep.u_objects.first(), rep.v_objects.first()) {
        (Some(GeomObject::RightRay { .. }), _) | (None, Some(GeomObject::Point1 { .. })) => Side::U,
        _ => Side::V,
    };
    let (rays, pts) = match ray_side {
        Side::U => (&rep.u_objects, &rep.v_objects),
        Side::V => (&rep.v_objects, &rep.u_objects),
    };
    let x = |o: &GeomObject| match *o {
        GeomObject::Point1 { x } | GeomObject::RightRay { x } => x,
        _ => unreachable!("validated"),
    };
    let ray_x: Vec<i64> = rays.iter().map(x).collect();
    let pt_x: Vec<i64> = pts.iter().map(x).collect();
    let mut order: Vec<usize> = (0..pt_x.len()).collect();
    order.sort_by_key(|&b| (pt_x[b], b));
    let mut point_rank = vec![0u64; pt_x.len()];
    for (r, &b) in order.iter().enumerate() {
        point_rank[b] = r as u64;
    }
    let sorted_x = order.iter().map(|&b| pt_x[b]).collect();
    let n = (pt_x.len() as u64).max(1).next_power_of_two();
    Ok(Ranked {
        ray_side,
        ray_x,
        point_rank,
        sorted_x,
        n,
    })
}

impl Ranked {
    /// First rank inside the ray, or `None` when the ray holds no point.
    fn ray_lo(&self, a: usize) -> Option<u64> {
        let lo = self.sorted_x.partition_point(|&x| x < self.ray_x[a]) as u64;
        (lo < self.sorted_x.len() as u64).then_some(lo)
    }
}

/// Splits the chain-realized edges of `residual` over dyadic ranges: ray `a`
/// joins the piece of every range in its cover, point `b` joins every piece
/// whose range holds its rank. Each chain-realized edge lands in exactly one
/// piece. Pieces come in `(lo, hi)` order.
pub fn dyadic_decompose(chain_rep: &Representation, residual: &BipartiteGraph) -> Result<Vec<DyadicPiece>> {
    let rk = rank(chain_rep)?;
    if residual.u_count() != chain_rep.u_count() || residual.v_count() != chain_rep.v_count() {
        return Err(Error::InvalidParameter("residual and chain representation differ in size".into()));
    }
    let mut pieces: std::collections::BTreeMap<DyadicRange, Vec<usize>> = Default::default();
    for a in 0..rk.ray_x.len() {
        if let Some(lo) = rk.ray_lo(a) {
            for r in dyadic_cover(lo, rk.n)? {
                pieces.entry(r).or_default().push(a);
            }
        }
    }
    Ok(pieces
        .into_iter()
        .map(|(range, rays)| {
            let points: Vec<usize> = (0..rk.point_rank.len())
                .filter(|&b| range.contains(rk.point_rank[b]))
                .collect();
            let graph = match rk.ray_side {
                Side::U => residual.induced(&rays, &points),
                Side::V => residual.induced(&points, &rays),
            };
            DyadicPiece {
                range,
                ray_side: rk.ray_side,
                rays,
                points,
                graph,
            }
        })
        .collect())
}

/// Residual edges whose point lies in its ray.
pub fn chain_realized_edges(chain_rep: &Representation, residual: &BipartiteGraph) -> Result<usize> {
    let rk = rank(chain_rep)?;
    Ok(residual
        .edges()
        .filter(|&(u, v)| {
            let (a, b) = match rk.ray_side {
                Side::U => (u, v),
                Side::V => (v, u),
            };
            rk.ray_lo(a).is_some_and(|lo| rk.point_rank[b] >= lo)
        })
        .count())
}
