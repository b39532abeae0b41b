//! Per-class certifiers. Each returns either an elimination order proving the
//! class's edge bound or an explicit `K_{k,k}` witness.
//!
//! Certificates are one-sided: `WithinBound` asserts the edge bound holds, not
//! that the graph is `K_{k,k}`-free.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geom::{build_graph, ClassTag, Representation};
use crate::graph::{BipartiteGraph, Vertex};
use crate::oracle::{verify_witness, BicliqueWitness, OracleConfig};
use crate::{Error, Result};

pub mod chain3;
pub mod chordal;
pub mod gig;
pub mod sr;

pub use chain3::{certify_chain3, classify_edges_chain3, Chain3Tally, EdgeClassification};
pub use chordal::{certify_chordal, gamma_free_order};
pub use gig::{certify_gig, credit_ledger, is_down_heavy, is_up_heavy, verify_ledger, CreditLedger};
pub use sr::certify_sr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelStep {
    pub vertex: Vertex,
    pub degree: usize,
}

/// A removal order with the degree each vertex had when removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationCertificate {
    pub steps: Vec<PeelStep>,
    pub claimed_degeneracy: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ReplayError {
    #[error("step {step}: {vertex} is not a vertex of the graph")]
    UnknownVertex { step: usize, vertex: Vertex },
    #[error("step {step}: {vertex} was already removed")]
    Repeated { step: usize, vertex: Vertex },
    #[error("step {step}: {vertex} recorded degree {recorded}, actual {actual}")]
    DegreeMismatch {
        step: usize,
        vertex: Vertex,
        recorded: usize,
        actual: usize,
    },
    #[error("step {step}: degree {degree} exceeds claimed degeneracy {claimed}")]
    AboveClaim {
        step: usize,
        degree: usize,
        claimed: usize,
    },
    #[error("{missing} vertices never removed")]
    Incomplete { missing: usize },
}

impl EliminationCertificate {
    pub fn max_degree(&self) -> usize {
        self.steps.iter().map(|s| s.degree).max().unwrap_or(0)
    }

    /// Sum of recorded degrees; equals the edge count for a complete replay.
    pub fn degree_sum(&self) -> usize {
        self.steps.iter().map(|s| s.degree).sum()
    }

    /// Replays the removals on `g`, checking every recorded degree and that
    /// every vertex is removed exactly once.
    pub fn replay(&self, g: &BipartiteGraph) -> std::result::Result<(), ReplayError> {
        let m = g.u_count();
        let mut removed = vec![false; g.vertex_count()];
        let mut deg: Vec<usize> = (0..g.vertex_count())
            .map(|id| g.degree(Vertex::from_global_id(id, m)))
            .collect();
        for (step, s) in self.steps.iter().enumerate() {
            let vertex = s.vertex;
            let in_range = match vertex {
                Vertex::U(i) => i < m,
                Vertex::V(j) => j < g.v_count(),
            };
            if !in_range {
                return Err(ReplayError::UnknownVertex { step, vertex });
            }
            let id = vertex.global_id(m);
            if removed[id] {
                return Err(ReplayError::Repeated { step, vertex });
            }
            if deg[id] != s.degree {
                return Err(ReplayError::DegreeMismatch {
                    step,
                    vertex,
                    recorded: s.degree,
                    actual: deg[id],
                });
            }
            if s.degree > self.claimed_degeneracy {
                return Err(ReplayError::AboveClaim {
                    step,
                    degree: s.degree,
                    claimed: self.claimed_degeneracy,
                });
            }
            removed[id] = true;
            for x in g.neighbors(vertex) {
                let xid = x.global_id(m);
                if !removed[xid] {
                    deg[xid] -= 1;
                }
            }
        }
        let missing = removed.iter().filter(|r| !**r).count();
        if missing > 0 {
            return Err(ReplayError::Incomplete { missing });
        }
        Ok(())
    }
}

/// Result of peeling at a threshold: the removals made, and what is left once
/// every remaining vertex has degree above the threshold.
#[derive(Clone, Debug)]
pub struct Peel {
    pub steps: Vec<PeelStep>,
    pub residual_u: Vec<usize>,
    pub residual_v: Vec<usize>,
}

impl Peel {
    pub fn is_complete(&self) -> bool {
        self.residual_u.is_empty() && self.residual_v.is_empty()
    }
}

/// Removes a minimum-degree vertex (lowest global id on ties) while that
/// degree is at most `threshold`.
pub fn peel(g: &BipartiteGraph, threshold: usize) -> Peel {
    let m = g.u_count();
    let total = g.vertex_count();
    let mut deg: Vec<usize> = (0..total)
        .map(|id| g.degree(Vertex::from_global_id(id, m)))
        .collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..total).map(|id| (deg[id], id)).collect();
    let mut alive = vec![true; total];
    let mut steps = Vec::with_capacity(total);
    while let Some(&(d, id)) = queue.iter().next() {
        if d > threshold {
            break;
        }
        queue.remove(&(d, id));
        alive[id] = false;
        let w = Vertex::from_global_id(id, m);
        steps.push(PeelStep { vertex: w, degree: d });
        for x in g.neighbors(w) {
            let xid = x.global_id(m);
            if alive[xid] {
                queue.remove(&(deg[xid], xid));
                deg[xid] -= 1;
                queue.insert((deg[xid], xid));
            }
        }
    }
    Peel {
        steps,
        residual_u: (0..m).filter(|&i| alive[i]).collect(),
        residual_v: (0..g.v_count()).filter(|&j| alive[m + j]).collect(),
    }
}

/// Which GIG extraction stage produced a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum ExtractionStage {
    ProofTemplate = 1,
    Localized = 2,
    WholeResidual = 3,
}

impl From<ExtractionStage> for u8 {
    fn from(s: ExtractionStage) -> u8 {
        s as u8
    }
}

impl TryFrom<u8> for ExtractionStage {
    type Error = String;

    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(ExtractionStage::ProofTemplate),
            2 => Ok(ExtractionStage::Localized),
            3 => Ok(ExtractionStage::WholeResidual),
            _ => Err(format!("extraction stage must be 1, 2 or 3, got {v}")),
        }
    }
}

impl fmt::Display for ExtractionStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExtractionStage::ProofTemplate => "proof-template",
            ExtractionStage::Localized => "localized",
            ExtractionStage::WholeResidual => "whole-residual",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    WithinBound {
        bound: u64,
        #[serde(flatten)]
        cert: EliminationCertificate,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tally: Option<Chain3Tally>,
    },
    Biclique {
        bound: u64,
        witness: BicliqueWitness,
        extraction_stage: Option<ExtractionStage>,
    },
}

impl Certificate {
    pub fn bound(&self) -> u64 {
        match self {
            Certificate::WithinBound { bound, .. } | Certificate::Biclique { bound, .. } => *bound,
        }
    }

    pub fn is_biclique(&self) -> bool {
        matches!(self, Certificate::Biclique { .. })
    }

    pub fn witness(&self) -> Option<&BicliqueWitness> {
        match self {
            Certificate::Biclique { witness, .. } => Some(witness),
            _ => None,
        }
    }

    /// Checks the certificate against `g`: a witness must verify; an
    /// elimination order must replay and bound the edge count.
    pub fn check(&self, g: &BipartiteGraph) -> std::result::Result<(), String> {
        match self {
            Certificate::Biclique { witness, .. } => {
                if verify_witness(g, witness) {
                    Ok(())
                } else {
                    Err("witness is not a biclique of the graph".into())
                }
            }
            Certificate::WithinBound { bound, cert, .. } => {
                cert.replay(g).map_err(|e| e.to_string())?;
                if g.edge_count() as u64 > *bound {
                    return Err(format!("{} edges exceed bound {bound}", g.edge_count()));
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyConfig {
    pub oracle: OracleConfig,
}

/// Routes a representation to its class certifier. Chain, convex,
/// interval-containment and PRIG graphs go through a Γ-free ordering, which
/// fails with [`Error::OrderingNotFound`] when none is found.
pub fn certify(rep: &Representation, k: usize, cfg: &CertifyConfig) -> Result<Certificate> {
    match rep.class {
        ClassTag::Sr => certify_sr(rep, k),
        ClassTag::Gig => certify_gig(rep, k, cfg),
        ClassTag::Chain3Brc => certify_chain3(rep, k),
        ClassTag::Chain | ClassTag::Conv | ClassTag::IntervalContainment | ClassTag::Prig => {
            check_k(k)?;
            let g = build_graph(rep)?;
            let (rows, cols) = gamma_free_order(&g)?.ok_or(Error::OrderingNotFound)?;
            certify_chordal(&g, &rows, &cols, k)
        }
    }
}

pub(crate) fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    Ok(())
}

/// `k = 1`: the bound is zero and any edge is a `K_{1,1}`.
pub(crate) fn certify_k1(g: &BipartiteGraph) -> Certificate {
    match g.edges().next() {
        Some((u, v)) => Certificate::Biclique {
            bound: 0,
            witness: BicliqueWitness::new(vec![u], vec![v]),
            extraction_stage: None,
        },
        None => Certificate::WithinBound {
            bound: 0,
            cert: full_peel_certificate(g, 0),
            tally: None,
        },
    }
}

/// Complete min-degree peel; the claimed degeneracy is the largest recorded
/// degree, never below `floor`.
pub(crate) fn full_peel_certificate(g: &BipartiteGraph, floor: usize) -> EliminationCertificate {
    let p = peel(g, usize::MAX);
    let d = p.steps.iter().map(|s| s.degree).max().unwrap_or(0);
    EliminationCertificate {
        steps: p.steps,
        claimed_degeneracy: d.max(floor),
    }
}

/// Lifts a witness on an induced subgraph back to the parent's indices.
pub(crate) fn lift(w: &BicliqueWitness, us: &[usize], vs: &[usize]) -> BicliqueWitness {
    BicliqueWitness::new(
        w.u_vertices.iter().map(|&i| us[i]).collect(),
        w.v_vertices.iter().map(|&j| vs[j]).collect(),
    )
}

pub(crate) fn checked_witness(
    g: &BipartiteGraph,
    w: BicliqueWitness,
    k: usize,
    what: &str,
) -> Result<BicliqueWitness> {
    if w.k() == k && verify_witness(g, &w) {
        Ok(w)
    } else {
        Err(Error::Internal(format!("{what} extraction produced an invalid witness {w:?}")))
    }
}

/// Shared shape of the degeneracy-based certifiers: peel at `threshold`; if
/// everything goes, certify; otherwise hand the stuck residual to `extract`.
pub(crate) fn peel_or_extract(
    g: &BipartiteGraph,
    threshold: usize,
    bound: u64,
    extract: impl FnOnce(&Peel) -> Result<(BicliqueWitness, Option<ExtractionStage>)>,
) -> Result<Certificate> {
    let p = peel(g, threshold);
    if p.is_complete() {
        return Ok(Certificate::WithinBound {
            bound,
            cert: EliminationCertificate {
                steps: p.steps,
                claimed_degeneracy: threshold,
            },
            tally: None,
        });
    }
    let (witness, extraction_stage) = extract(&p)?;
    Ok(Certificate::Biclique {
        bound,
        witness,
        extraction_stage,
    })
}
