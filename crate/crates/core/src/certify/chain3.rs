//! Ferrers dimension three: horizontal segments (U) contained in bottomless
//! rectangles (V).
//!
//! An edge `(u, v)` is O-bulky when `φ(v)` holds at least `k-1` O-successors
//! of `φ(u)`, for O among DL, DR and C; otherwise it is thin. `k` O-bulky
//! edges at one `u` give a `K_{k,k}` directly. Thin edges per `v` are bounded
//! by `6k-11` unconditionally, because any two segments with distinct `y` are
//! comparable in some order.

use serde::{Deserialize, Serialize};

use crate::certify::{
    check_k, checked_witness, certify_k1, full_peel_certificate, Certificate,
};
use crate::geom::{build_graph, contains, succeeds, ClassTag, Representation, SegmentOrder, Span};
use crate::oracle::BicliqueWitness;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedEdge {
    pub u: usize,
    pub v: usize,
    /// Orders in which the edge is bulky; empty means thin.
    pub bulky: Vec<SegmentOrder>,
}

impl ClassifiedEdge {
    pub fn is_thin(&self) -> bool {
        self.bulky.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeClassification {
    pub k: usize,
    /// In `(u, v)` lexicographic order.
    pub edges: Vec<ClassifiedEdge>,
    /// `bulky_counts[u][O.index()]`: O-bulky edges at `u`.
    pub bulky_counts: Vec<[usize; 3]>,
    pub thin_counts: Vec<usize>,
}

impl EdgeClassification {
    pub fn thin_edges(&self) -> usize {
        self.thin_counts.iter().sum()
    }

    pub fn bulky_edges(&self) -> usize {
        self.edges.len() - self.thin_edges()
    }
}

/// Summary attached to a chain³ `WithinBound` certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain3Tally {
    pub bulky_edges: usize,
    pub thin_edges: usize,
    pub max_bulky_per_u_order: usize,
    pub max_thin_per_v: usize,
}

fn check_rep(rep: &Representation) -> Result<()> {
    if rep.class != ClassTag::Chain3Brc {
        return Err(Error::InvalidParameter(format!(
            "expected a chain3_brc representation, got {}",
            rep.class
        )));
    }
    Ok(())
}

fn segments(rep: &Representation) -> Vec<(Span, i64)> {
    rep.u_objects
        .iter()
        .map(|o| o.as_hseg().expect("validated chain3 representation"))
        .collect()
}

/// `succ[O.index()][u]`: indices of O-successors of `φ(u)`, ascending.
fn successors(segs: &[(Span, i64)]) -> [Vec<Vec<usize>>; 3] {
    SegmentOrder::ALL.map(|o| {
        segs.iter()
            .map(|&s| {
                (0..segs.len())
                    .filter(|&t| succeeds(o, s, segs[t]))
                    .collect()
            })
            .collect()
    })
}

pub fn classify_edges_chain3(rep: &Representation, k: usize) -> Result<EdgeClassification> {
    check_k(k)?;
    check_rep(rep)?;
    let g = build_graph(rep)?;
    let segs = segments(rep);
    let succ = successors(&segs);
    let mut bulky_counts = vec![[0usize; 3]; rep.u_count()];
    let mut thin_counts = vec![0usize; rep.v_count()];
    let mut edges = Vec::with_capacity(g.edge_count());
    for (u, v) in g.edges() {
        let rect = &rep.v_objects[v];
        let mut bulky = Vec::new();
        for o in SegmentOrder::ALL {
            let inside = succ[o.index()][u]
                .iter()
                .filter(|&&t| contains(rect, &rep.u_objects[t]).expect("legal pair"))
                .count();
            if inside >= k - 1 {
                bulky.push(o);
                bulky_counts[u][o.index()] += 1;
            }
        }
        if bulky.is_empty() {
            thin_counts[v] += 1;
        }
        edges.push(ClassifiedEdge { u, v, bulky });
    }
    Ok(EdgeClassification {
        k,
        edges,
        bulky_counts,
        thin_counts,
    })
}

/// Certifies `|E| <= (3m+6n)(k-1)` or extracts a `K_{k,k}` from a vertex
/// with `k` bulky edges of one type.
pub fn certify_chain3(rep: &Representation, k: usize) -> Result<Certificate> {
    check_k(k)?;
    check_rep(rep)?;
    let g = build_graph(rep)?;
    if k == 1 {
        return Ok(certify_k1(&g));
    }
    let k1 = k - 1;
    let (m, n) = (rep.u_count() as u64, rep.v_count() as u64);
    let bound = (3 * m + 6 * n) * k1 as u64;
    let cls = classify_edges_chain3(rep, k)?;
    let segs = segments(rep);
    let succ = successors(&segs);

    for u in 0..rep.u_count() {
        for o in SegmentOrder::ALL {
            if cls.bulky_counts[u][o.index()] < k {
                continue;
            }
            let b: Vec<usize> = cls
                .edges
                .iter()
                .filter(|e| e.u == u && e.bulky.contains(&o))
                .map(|e| e.v)
                .take(k)
                .collect();
            let mut cand = succ[o.index()][u].clone();
            // The k-1 successors every bulky rectangle must contain.
            match o {
                SegmentOrder::DownLeft => {
                    cand.sort_by_key(|&t| (std::cmp::Reverse(segs[t].0.lo), t))
                }
                SegmentOrder::DownRight => cand.sort_by_key(|&t| (segs[t].0.hi, t)),
                SegmentOrder::Nested => cand.sort_by_key(|&t| (segs[t].1, t)),
            }
            let us: Vec<usize> = std::iter::once(u).chain(cand.into_iter().take(k1)).collect();
            let w = checked_witness(&g, BicliqueWitness::new(us, b), k, "chain3 bulky")?;
            return Ok(Certificate::Biclique {
                bound,
                witness: w,
                extraction_stage: None,
            });
        }
    }

    let max_thin = cls.thin_counts.iter().copied().max().unwrap_or(0);
    if max_thin > 6 * k - 11 {
        return Err(Error::Internal(format!(
            "vertex with {max_thin} thin edges exceeds 6k-11 = {}",
            6 * k - 11
        )));
    }
    let tally = Chain3Tally {
        bulky_edges: cls.bulky_edges(),
        thin_edges: cls.thin_edges(),
        max_bulky_per_u_order: cls
            .bulky_counts
            .iter()
            .flat_map(|c| c.iter().copied())
            .max()
            .unwrap_or(0),
        max_thin_per_v: max_thin,
    };
    if (g.edge_count() as u64) > bound {
        return Err(Error::Internal(format!(
            "{} edges exceed (3m+6n)(k-1) = {bound} with no bulky extraction",
            g.edge_count()
        )));
    }
    Ok(Certificate::WithinBound {
        bound,
        cert: full_peel_certificate(&g, 0),
        tally: Some(tally),
    })
}
