//! Chordal bipartite graphs via Γ-free orderings.
//!
//! A `K_{k,k}`-free chordal bipartite graph is `(k-1)`-degenerate. When
//! peeling at `k-1` gets stuck, the Γ-free order hands us the biclique: the
//! last surviving column and the last row meeting it span an all-ones block.

use crate::certify::{check_k, checked_witness, certify_k1, peel_or_extract, Certificate};
use crate::graph::BipartiteGraph;
use crate::oracle::{is_gamma_free, BicliqueWitness};
use crate::{Error, Result};

/// Row and column permutations of the biadjacency matrix.
pub type Ordering = (Vec<usize>, Vec<usize>);

/// Rows and columns up to this size fall back to exhaustive search when
/// refinement does not produce a Γ-free order.
pub const EXHAUSTIVE_CAP: usize = 7;

/// Finds row/column orders under which the biadjacency matrix avoids
/// `(0 1 / 1 1)`.
///
/// `Ok(None)` means no such order exists (only ever returned when the
/// exhaustive fallback ran). `Err(OrderingNotFound)` means refinement failed
/// on a matrix too large for the fallback; it is not a proof of absence.
pub fn gamma_free_order(g: &BipartiteGraph) -> Result<Option<Ordering>> {
    let order = doubly_lexical(g);
    if is_gamma_free(g, &order.0, &order.1)?.is_none() {
        return Ok(Some(order));
    }
    if g.u_count() <= EXHAUSTIVE_CAP && g.v_count() <= EXHAUSTIVE_CAP {
        return Ok(exhaustive(g));
    }
    Err(Error::OrderingNotFound)
}

/// Alternately stable-sorts rows and columns into descending lexicographic
/// order of their 0/1 vectors (read in the current opposite order) until
/// neither sort moves anything.
fn doubly_lexical(g: &BipartiteGraph) -> Ordering {
    let mut rows: Vec<usize> = (0..g.u_count()).collect();
    let mut cols: Vec<usize> = (0..g.v_count()).collect();
    // Each pass strictly increases the matrix in a well-founded order, so
    // this bound is never reached in practice; it only guards against a bug.
    let max_rounds = 4 * (rows.len() + cols.len()) + 8;
    for _ in 0..max_rounds {
        let row_key = |r: usize| -> Vec<bool> { cols.iter().map(|&c| g.has_edge(r, c)).collect() };
        let mut new_rows = rows.clone();
        new_rows.sort_by_cached_key(|&r| std::cmp::Reverse(row_key(r)));
        let col_key =
            |c: usize| -> Vec<bool> { new_rows.iter().map(|&r| g.has_edge(r, c)).collect() };
        let mut new_cols = cols.clone();
        new_cols.sort_by_cached_key(|&c| std::cmp::Reverse(col_key(c)));
        let stable = new_rows == rows && new_cols == cols;
        rows = new_rows;
        cols = new_cols;
        if stable {
            break;
        }
    }
    (rows, cols)
}

/// Tries every row permutation; for each, a Γ forces column `c2` before `c1`
/// in any valid column order, so the column order is a topological sort of
/// those constraints.
fn exhaustive(g: &BipartiteGraph) -> Option<Ordering> {
    let n_cols = g.v_count();
    let mut rows: Vec<usize> = (0..g.u_count()).collect();
    loop {
        if let Some(cols) = columns_for(g, &rows, n_cols) {
            return Some((rows, cols));
        }
        if !next_permutation(&mut rows) {
            return None;
        }
    }
}

fn columns_for(g: &BipartiteGraph, rows: &[usize], n_cols: usize) -> Option<Vec<usize>> {
    // before[a][b]: column a must come before column b.
    let mut before = vec![vec![false; n_cols]; n_cols];
    for (p, &r) in rows.iter().enumerate() {
        for &r2 in &rows[p + 1..] {
            for c in 0..n_cols {
                // Γ with top-left zero at (r, c) is avoided only if c comes after
                // every c2 where r, r2 both have ones, given r2 has a one in c.
                if g.has_edge(r, c) || !g.has_edge(r2, c) {
                    continue;
                }
                for c2 in 0..n_cols {
                    if c2 != c && g.has_edge(r, c2) && g.has_edge(r2, c2) {
                        before[c2][c] = true;
                    }
                }
            }
        }
    }
    let mut indeg: Vec<usize> = (0..n_cols)
        .map(|b| (0..n_cols).filter(|&a| before[a][b]).count())
        .collect();
    let mut out = Vec::with_capacity(n_cols);
    let mut done = vec![false; n_cols];
    while out.len() < n_cols {
        let next = (0..n_cols).find(|&c| !done[c] && indeg[c] == 0)?;
        done[next] = true;
        out.push(next);
        for b in 0..n_cols {
            if before[next][b] {
                indeg[b] -= 1;
            }
        }
    }
    Some(out)
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Certifies `|E| <= (m+n)(k-1)` or extracts a `K_{k,k}`. The given orders
/// must be Γ-free for `g`.
pub fn certify_chordal(
    g: &BipartiteGraph,
    row_order: &[usize],
    col_order: &[usize],
    k: usize,
) -> Result<Certificate> {
    check_k(k)?;
    if let Some(v) = is_gamma_free(g, row_order, col_order)? {
        return Err(Error::NotGammaFree(v));
    }
    if k == 1 {
        return Ok(certify_k1(g));
    }
    let bound = (g.vertex_count() as u64) * (k as u64 - 1);
    peel_or_extract(g, k - 1, bound, |p| {
        let mut alive_u = vec![false; g.u_count()];
        let mut alive_v = vec![false; g.v_count()];
        p.residual_u.iter().for_each(|&i| alive_u[i] = true);
        p.residual_v.iter().for_each(|&j| alive_v[j] = true);
        let rows: Vec<usize> = row_order.iter().copied().filter(|&r| alive_u[r]).collect();
        let cols: Vec<usize> = col_order.iter().copied().filter(|&c| alive_v[c]).collect();
        let internal = || Error::Internal("stuck chordal peel has an empty residual side".into());
        let &last_col = cols.last().ok_or_else(internal)?;
        let r_set: Vec<usize> = rows.iter().copied().filter(|&r| g.has_edge(r, last_col)).collect();
        let &last_row = r_set.last().ok_or_else(internal)?;
        let c_set: Vec<usize> = cols.iter().copied().filter(|&c| g.has_edge(last_row, c)).collect();
        let w = BicliqueWitness::new(
            r_set.into_iter().take(k).collect(),
            c_set.into_iter().take(k).collect(),
        );
        Ok((checked_witness(g, w, k, "chordal")?, None))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{find_biclique, is_chordal_bipartite, OracleConfig};

    fn cert(g: &BipartiteGraph, k: usize) -> Certificate {
        let (r, c) = gamma_free_order(g).unwrap().unwrap();
        certify_chordal(g, &r, &c, k).unwrap()
    }

    #[test]
    fn all_ones_keeps_natural_order() {
        let g = BipartiteGraph::complete(3, 4);
        assert_eq!(
            gamma_free_order(&g).unwrap(),
            Some((vec![0, 1, 2], vec![0, 1, 2, 3]))
        );
    }

    #[test]
    fn six_cycle_has_no_order() {
        let g = BipartiteGraph::from_edges(3, 3, [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)])
            .unwrap();
        assert_eq!(gamma_free_order(&g).unwrap(), None);
    }

    #[test]
    fn path_has_order() {
        // P_5: u0 v0 u1 v1 u2
        let g = BipartiteGraph::from_edges(3, 2, [(0, 0), (1, 0), (1, 1), (2, 1)]).unwrap();
        let (r, c) = gamma_free_order(&g).unwrap().unwrap();
        assert_eq!(is_gamma_free(&g, &r, &c).unwrap(), None);
    }

    #[test]
    fn examples() {
        let p4 = BipartiteGraph::from_edges(2, 2, [(0, 0), (1, 0), (1, 1)]).unwrap();
        match cert(&p4, 2) {
            Certificate::WithinBound { cert, bound, .. } => {
                assert!(cert.steps.iter().all(|s| s.degree <= 1));
                assert_eq!(bound, 4);
            }
            other => panic!("{other:?}"),
        }
        let c4 = BipartiteGraph::complete(2, 2);
        assert_eq!(
            cert(&c4, 2).witness(),
            Some(&BicliqueWitness::new(vec![0, 1], vec![0, 1]))
        );
        let k33 = BipartiteGraph::complete(3, 3);
        let w = cert(&k33, 2).witness().unwrap().clone();
        assert_eq!(w.k(), 2);
    }

    #[test]
    fn rejects_bad_order() {
        let g = BipartiteGraph::from_edges(2, 2, [(0, 1), (1, 0), (1, 1)]).unwrap();
        assert!(matches!(
            certify_chordal(&g, &[0, 1], &[0, 1], 2),
            Err(Error::NotGammaFree(_))
        ));
    }

    #[test]
    fn next_permutation_counts() {
        let mut a = vec![0, 1, 2, 3];
        let mut n = 1;
        while next_permutation(&mut a) {
            n += 1;
        }
        assert_eq!(n, 24);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_graph() -> impl Strategy<Value = BipartiteGraph> {
            (1usize..=5, 1usize..=5).prop_flat_map(|(m, n)| {
                proptest::collection::vec(any::<bool>(), m * n).prop_map(move |cells| {
                    let e = cells.iter().enumerate().filter(|(_, &b)| b).map(|(p, _)| (p / n, p % n));
                    BipartiteGraph::from_edges(m, n, e).unwrap()
                })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(300))]

            /// An order exists exactly for chordal bipartite graphs, and the
            /// refinement alone finds it whenever one exists.
            #[test]
            fn order_exists_iff_chordal(g in small_graph()) {
                let chordal = is_chordal_bipartite(&g, &OracleConfig::default()).unwrap();
                let found = gamma_free_order(&g).unwrap();
                prop_assert_eq!(found.is_some(), chordal);
                let (r, c) = doubly_lexical(&g);
                prop_assert_eq!(is_gamma_free(&g, &r, &c).unwrap().is_none(), chordal);
            }

            #[test]
            fn certificate_agrees_with_oracle(g in small_graph(), k in 1usize..4) {
                if let Some((r, c)) = gamma_free_order(&g).unwrap() {
                    let cert = certify_chordal(&g, &r, &c, k).unwrap();
                    prop_assert!(cert.check(&g).is_ok());
                    let has = find_biclique(&g, k, &OracleConfig::default()).unwrap().is_some();
                    if !has {
                        prop_assert!(!cert.is_biclique());
                    }
                }
            }
        }
    }
}
