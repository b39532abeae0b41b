//! Brute-force and definitional checks.
//!
//! Nothing here shares code paths with the certifiers: degeneracy is a plain
//! quadratic min-degree scan, biclique search is exhaustive subset
//! enumeration, chordality is chordless-cycle enumeration. The caps in
//! [`OracleConfig`] turn would-be-too-large searches into explicit
//! [`Error::OracleLimit`] errors instead of silent misses.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::certify::{EliminationCertificate, PeelStep};
use crate::geom::{succeeds, GeomObject, SegmentOrder};
use crate::graph::{BipartiteGraph, Vertex};
use crate::{Error, Result};

/// `k` vertices per side, every cross pair adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicliqueWitness {
    #[serde(rename = "u")]
    pub u_vertices: Vec<usize>,
    #[serde(rename = "v")]
    pub v_vertices: Vec<usize>,
}

impl BicliqueWitness {
    pub fn new(mut u_vertices: Vec<usize>, mut v_vertices: Vec<usize>) -> Self {
        u_vertices.sort_unstable();
        v_vertices.sort_unstable();
        BicliqueWitness {
            u_vertices,
            v_vertices,
        }
    }

    pub fn k(&self) -> usize {
        self.u_vertices.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Largest side (after degree pruning) the biclique search accepts.
    pub max_side: usize,
    /// Largest `k` the biclique search accepts.
    pub max_k: usize,
    /// Largest total vertex count for chordless-cycle enumeration.
    pub max_chordal_vertices: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_side: 60,
            max_k: 3,
            max_chordal_vertices: 16,
        }
    }
}

impl OracleConfig {
    pub fn with_caps(max_side: usize, max_k: usize) -> Self {
        OracleConfig {
            max_side,
            max_k,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn zeros(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn ones(n: usize) -> Self {
        let mut b = Self::zeros(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

/// Exhaustive search for a `K_{k,k}`. Returns a witness iff one exists.
///
/// Vertices of degree `< k` are pruned repeatedly first; then `k`-subsets of
/// the smaller surviving side are enumerated with running neighborhood
/// intersections, abandoning a branch once fewer than `k` common neighbors
/// remain.
pub fn find_biclique(
    g: &BipartiteGraph,
    k: usize,
    cfg: &OracleConfig,
) -> Result<Option<BicliqueWitness>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let (m, n) = (g.u_count(), g.v_count());
    let mut alive_u = vec![true; m];
    let mut alive_v = vec![true; n];
    let mut deg_u: Vec<usize> = (0..m).map(|i| g.u_neighbors(i).len()).collect();
    let mut deg_v: Vec<usize> = (0..n).map(|j| g.v_neighbors(j).len()).collect();
    let mut stack: Vec<Vertex> = (0..m)
        .filter(|&i| deg_u[i] < k)
        .map(Vertex::U)
        .chain((0..n).filter(|&j| deg_v[j] < k).map(Vertex::V))
        .collect();
    while let Some(w) = stack.pop() {
        match w {
            Vertex::U(i) => {
                if !alive_u[i] {
                    continue;
                }
                alive_u[i] = false;
                for &j in g.u_neighbors(i) {
                    if alive_v[j] {
                        deg_v[j] -= 1;
                        if deg_v[j] < k {
                            stack.push(Vertex::V(j));
                        }
                    }
                }
            }
            Vertex::V(j) => {
                if !alive_v[j] {
                    continue;
                }
                alive_v[j] = false;
                for &i in g.v_neighbors(j) {
                    if alive_u[i] {
                        deg_u[i] -= 1;
                        if deg_u[i] < k {
                            stack.push(Vertex::U(i));
                        }
                    }
                }
            }
        }
    }
    let us: Vec<usize> = (0..m).filter(|&i| alive_u[i]).collect();
    let vs: Vec<usize> = (0..n).filter(|&j| alive_v[j]).collect();
    if us.len() < k || vs.len() < k {
        return Ok(None);
    }
    let side = us.len().max(vs.len());
    if side > cfg.max_side || k > cfg.max_k {
        return Err(Error::OracleLimit {
            side,
            k,
            max_side: cfg.max_side,
            max_k: cfg.max_k,
        });
    }

    let rows_are_u = us.len() <= vs.len();
    let (rows, cols) = if rows_are_u { (&us, &vs) } else { (&vs, &us) };
    let mut col_pos = vec![usize::MAX; if rows_are_u { n } else { m }];
    for (p, &c) in cols.iter().enumerate() {
        col_pos[c] = p;
    }
    let row_bits: Vec<Bits> = rows
        .iter()
        .map(|&r| {
            let mut b = Bits::zeros(cols.len());
            let nbrs = if rows_are_u {
                g.u_neighbors(r)
            } else {
                g.v_neighbors(r)
            };
            for &c in nbrs {
                if col_pos[c] != usize::MAX {
                    b.set(col_pos[c]);
                }
            }
            b
        })
        .collect();

    let mut chosen = Vec::with_capacity(k);
    let found = subset_search(&row_bits, 0, k, &Bits::ones(cols.len()), &mut chosen);
    let Some(common) = found else {
        return Ok(None);
    };
    let row_ids: Vec<usize> = chosen.iter().map(|&p| rows[p]).collect();
    let col_ids: Vec<usize> = common.iter().take(k).map(|p| cols[p]).collect();
    Ok(Some(if rows_are_u {
        BicliqueWitness::new(row_ids, col_ids)
    } else {
        BicliqueWitness::new(col_ids, row_ids)
    }))
}

fn subset_search(
    rows: &[Bits],
    start: usize,
    k: usize,
    common: &Bits,
    chosen: &mut Vec<usize>,
) -> Option<Bits> {
    let need = k - chosen.len();
    for r in start..rows.len() {
        if rows.len() - r < need {
            break;
        }
        let next = common.and(&rows[r]);
        if next.count() < k {
            continue;
        }
        chosen.push(r);
        if chosen.len() == k {
            return Some(next);
        }
        if let Some(found) = subset_search(rows, r + 1, k, &next, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

/// Checks the witness invariants against `g`: equal non-zero side sizes,
/// distinct in-range entries, every cross pair an edge.
pub fn verify_witness(g: &BipartiteGraph, w: &BicliqueWitness) -> bool {
    let k = w.u_vertices.len();
    if k == 0 || w.v_vertices.len() != k {
        return false;
    }
    let distinct = |l: &[usize], bound: usize| {
        let s: BTreeSet<_> = l.iter().collect();
        s.len() == l.len() && l.iter().all(|&x| x < bound)
    };
    if !distinct(&w.u_vertices, g.u_count()) || !distinct(&w.v_vertices, g.v_count()) {
        return false;
    }
    w.u_vertices
        .iter()
        .all(|&u| w.v_vertices.iter().all(|&v| g.has_edge(u, v)))
}

/// Min-degree peeling with lowest-global-index tie-breaking; returns the
/// degeneracy and the full elimination order.
pub fn degeneracy(g: &BipartiteGraph) -> (usize, EliminationCertificate) {
    let m = g.u_count();
    let total = g.vertex_count();
    let mut deg: Vec<usize> = (0..total)
        .map(|id| g.degree(Vertex::from_global_id(id, m)))
        .collect();
    let mut removed = vec![false; total];
    let mut steps = Vec::with_capacity(total);
    let mut d = 0;
    for _ in 0..total {
        let mut best: Option<usize> = None;
        for id in 0..total {
            if !removed[id] && best.is_none_or(|b| deg[id] < deg[b]) {
                best = Some(id);
            }
        }
        let id = best.expect("a vertex remains");
        let w = Vertex::from_global_id(id, m);
        removed[id] = true;
        d = d.max(deg[id]);
        steps.push(PeelStep {
            vertex: w,
            degree: deg[id],
        });
        for x in g.neighbors(w) {
            let xid = x.global_id(m);
            if !removed[xid] {
                deg[xid] -= 1;
            }
        }
    }
    (
        d,
        EliminationCertificate {
            steps,
            claimed_degeneracy: d,
        },
    )
}

/// Positions (within the given orders, 0-based) of an ordered 2x2 submatrix
/// equal to `(0 1 / 1 1)`: rows `row < row2`, columns `col < col2`, with
/// entry `(row, col)` zero and the other three one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GammaViolation {
    pub row: usize,
    pub col: usize,
    pub row2: usize,
    pub col2: usize,
}

fn check_permutation(order: &[usize], n: usize, what: &str) -> Result<()> {
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(Error::InvalidParameter(format!(
            "{what} order has {} entries, expected {n}",
            order.len()
        )));
    }
    for &x in order {
        if x >= n || seen[x] {
            return Err(Error::InvalidParameter(format!("{what} order is not a permutation")));
        }
        seen[x] = true;
    }
    Ok(())
}

/// Looks for the pattern `(0 1 / 1 1)` in the biadjacency matrix with rows
/// (U vertices) and columns (V vertices) permuted as given. Returns the
/// lexicographically first `(row, col, row2, col2)` occurrence.
pub fn is_gamma_free(
    g: &BipartiteGraph,
    row_order: &[usize],
    col_order: &[usize],
) -> Result<Option<GammaViolation>> {
    check_permutation(row_order, g.u_count(), "row")?;
    check_permutation(col_order, g.v_count(), "column")?;
    let at = |r: usize, c: usize| g.has_edge(row_order[r], col_order[c]);
    let (rn, cn) = (row_order.len(), col_order.len());
    for row in 0..rn {
        for col in 0..cn {
            if at(row, col) {
                continue;
            }
            for row2 in row + 1..rn {
                if !at(row2, col) {
                    continue;
                }
                for col2 in col + 1..cn {
                    if at(row, col2) && at(row2, col2) {
                        return Ok(Some(GammaViolation {
                            row,
                            col,
                            row2,
                            col2,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Every partial order among DL, DR and C in which the two horizontal
/// segments are comparable (in either direction).
pub fn comparability(s: &GeomObject, s2: &GeomObject) -> Result<BTreeSet<SegmentOrder>> {
    let (Some(a), Some(b)) = (s.as_hseg(), s2.as_hseg()) else {
        return Err(Error::InvalidParameter(
            "comparability is defined on horizontal segments".into(),
        ));
    };
    let out: BTreeSet<SegmentOrder> = SegmentOrder::ALL
        .into_iter()
        .filter(|&o| succeeds(o, a, b) || succeeds(o, b, a))
        .collect();
    if a.1 == b.1 && out.is_empty() {
        return Err(Error::Tie(a.1));
    }
    Ok(out)
}

/// True iff no induced cycle of length at least six exists.
pub fn is_chordal_bipartite(g: &BipartiteGraph, cfg: &OracleConfig) -> Result<bool> {
    let total = g.vertex_count();
    if total > cfg.max_chordal_vertices {
        return Err(Error::OracleLimit {
            side: total,
            k: 0,
            max_side: cfg.max_chordal_vertices,
            max_k: 0,
        });
    }
    let m = g.u_count();
    let adj: Vec<Vec<usize>> = (0..total)
        .map(|id| {
            g.neighbors(Vertex::from_global_id(id, m))
                .map(|x| x.global_id(m))
                .collect()
        })
        .collect();
    let adjacent = |a: usize, b: usize| adj[a].contains(&b);

    // Paths start at their smallest vertex; every interior vertex is
    // adjacent only to its path neighbors, so a closing edge yields an
    // induced cycle.
    fn extend(
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        adj: &[Vec<usize>],
        adjacent: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        let start = path[0];
        let last = *path.last().unwrap();
        for &w in &adj[last] {
            if w <= start || on_path[w] {
                continue;
            }
            // w may touch only `last` and possibly `start` on the path.
            let interior = if path.len() > 2 { &path[1..path.len() - 1] } else { &[][..] };
            let touches_interior = interior.iter().any(|&p| adjacent(p, w));
            if touches_interior {
                continue;
            }
            if path.len() >= 2 && adjacent(start, w) {
                if path.len() + 1 >= 6 {
                    return true;
                }
                continue;
            }
            path.push(w);
            on_path[w] = true;
            if extend(path, on_path, adj, adjacent) {
                return true;
            }
            on_path[w] = false;
            path.pop();
        }
        false
    }

    let mut on_path = vec![false; total];
    for s in 0..total {
        let mut path = vec![s];
        on_path[s] = true;
        let found = extend(&mut path, &mut on_path, &adj, &adjacent);
        on_path[s] = false;
        if found {
            return Ok(false);
        }
    }
    Ok(true)
}
