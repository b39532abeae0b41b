//! Segment–ray graphs: horizontal segments (U) against upward rays (V).
//!
//! A `K_{k,k}`-free SR graph is `2(k-1)`-degenerate. A stuck peel is turned
//! into a biclique around the ray with the highest start.

use crate::certify::{check_k, checked_witness, certify_k1, peel_or_extract, Certificate};
use crate::geom::{build_graph, ClassTag, GeomObject, Representation};
use crate::oracle::BicliqueWitness;
use crate::{Error, Result};

fn ray(o: &GeomObject) -> (i64, i64) {
    match *o {
        GeomObject::UpRay { x, y } => (x, y),
        _ => unreachable!("validated SR representation"),
    }
}

/// Certifies `|E| <= 2(m+n)(k-1)` or extracts a `K_{k,k}`.
pub fn certify_sr(rep: &Representation, k: usize) -> Result<Certificate> {
    check_k(k)?;
    if rep.class != ClassTag::Sr {
        return Err(Error::InvalidParameter(format!(
            "certify_sr needs an sr representation, got {}",
            rep.class
        )));
    }
    let g = build_graph(rep)?;
    if k == 1 {
        return Ok(certify_k1(&g));
    }
    let k1 = k - 1;
    let bound = 2 * (g.vertex_count() as u64) * (k1 as u64);
    peel_or_extract(&g, 2 * k1, bound, |p| {
        let internal = |what: &str| Error::Internal(format!("sr extraction: {what}"));
        let mut alive_u = vec![false; g.u_count()];
        p.residual_u.iter().for_each(|&i| alive_u[i] = true);

        let &r = p
            .residual_v
            .iter()
            .max_by_key(|&&j| (ray(&rep.v_objects[j]).1, std::cmp::Reverse(j)))
            .ok_or_else(|| internal("no residual ray"))?;
        let r_x = ray(&rep.v_objects[r]).0;
        let seg = |i: usize| rep.u_objects[i].as_hseg().expect("validated SR representation");

        let s_all: Vec<usize> = g.v_neighbors(r).iter().copied().filter(|&i| alive_u[i]).collect();
        let mut by_lo = s_all.clone();
        by_lo.sort_by_key(|&i| (seg(i).0.lo, i));
        let s_left: Vec<usize> = by_lo.into_iter().take(k1).collect();
        let mut by_hi = s_all.clone();
        by_hi.sort_by_key(|&i| (std::cmp::Reverse(seg(i).0.hi), i));
        let s_right: Vec<usize> = by_hi.into_iter().take(k1).collect();
        let &s = s_all
            .iter()
            .find(|i| !s_left.contains(i) && !s_right.contains(i))
            .ok_or_else(|| internal("fewer than 2k-1 segments on the top ray"))?;

        let alive_v: std::collections::BTreeSet<usize> = p.residual_v.iter().copied().collect();
        let rays: Vec<usize> = g
            .u_neighbors(s)
            .iter()
            .copied()
            .filter(|&j| j != r && alive_v.contains(&j))
            .collect();
        let (r_left, r_right): (Vec<usize>, Vec<usize>) =
            rays.into_iter().partition(|&j| ray(&rep.v_objects[j]).0 <= r_x);
        let (segs, side) = if r_left.len() >= k1 {
            (s_left, r_left)
        } else if r_right.len() >= k1 {
            (s_right, r_right)
        } else {
            return Err(internal("neither side of the top ray has k-1 rays"));
        };
        let us: Vec<usize> = segs.into_iter().chain([s]).collect();
        let vs: Vec<usize> = side.into_iter().take(k1).chain([r]).collect();
        Ok((checked_witness(&g, BicliqueWitness::new(us, vs), k, "sr")?, None))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{find_biclique, OracleConfig};

    fn stacked(n: usize) -> Representation {
        let u = (0..n as i64).map(|y| GeomObject::hseg(0, 10, y)).collect();
        let v = (0..n as i64).map(|x| GeomObject::UpRay { x: x + 1, y: -5 }).collect();
        Representation::new(ClassTag::Sr, u, v)
    }

    #[test]
    fn examples() {
        let one = Representation::new(
            ClassTag::Sr,
            vec![GeomObject::hseg(0, 2, 3)],
            vec![GeomObject::UpRay { x: 1, y: 0 }],
        );
        assert!(!certify_sr(&one, 2).unwrap().is_biclique());
        let c = certify_sr(&stacked(2), 2).unwrap();
        match &c {
            Certificate::WithinBound { cert, .. } => assert_eq!(cert.max_degree(), 2),
            other => panic!("{other:?}"),
        }
        let c = certify_sr(&stacked(3), 2).unwrap();
        assert_eq!(c.witness().unwrap().k(), 2);
        assert!(c.check(&build_graph(&stacked(3)).unwrap()).is_ok());
    }

    #[test]
    fn rejects_other_classes() {
        assert!(certify_sr(&Representation::empty(ClassTag::Gig), 2).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rep() -> impl Strategy<Value = Representation> {
            let seg = (0i64..20, 0i64..12, 0i64..20).prop_map(|(a, l, y)| GeomObject::hseg(a, a + l, y));
            let ray = (0i64..32, 0i64..20).prop_map(|(x, y)| GeomObject::UpRay { x, y });
            (
                proptest::collection::vec(seg, 0..14),
                proptest::collection::vec(ray, 0..14),
            )
                .prop_map(|(u, v)| Representation::new(ClassTag::Sr, u, v))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(300))]

            #[test]
            fn sound_and_degenerate_when_free(r in rep(), k in 1usize..4) {
                let g = build_graph(&r).unwrap();
                let c = certify_sr(&r, k).unwrap();
                prop_assert!(c.check(&g).is_ok());
                let free = find_biclique(&g, k, &OracleConfig::default()).unwrap().is_none();
                if free {
                    prop_assert!(!c.is_biclique());
                }
            }
        }
    }
}
