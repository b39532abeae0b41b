//! Segment-in-bottomless-rectangle representations as the product of an
//! interval containment factor (x) and a chain factor (y).
//!
//! In the chain factor a segment at height `y` becomes the point `-y` and a
//! rectangle with top `t` becomes the rightward ray from `-t`, so that
//! `y <= t` reads as `-y >= -t`.

use std::collections::BTreeMap;

use crate::geom::{validate_representation, ClassTag, GeomObject, ObjectKind, Representation};
use crate::{Error, Result};

fn require(rep: &Representation, class: ClassTag) -> Result<()> {
    if rep.class != class {
        return Err(Error::InvalidParameter(format!(
            "expected a {class} representation, got {}",
            rep.class
        )));
    }
    let v = validate_representation(rep);
    if !v.is_empty() {
        return Err(Error::InvalidRepresentation(v));
    }
    Ok(())
}

/// Splits into the x-projection (interval containment) and y-projection
/// (chain, U as points) factors. The input graph is their edge intersection.
pub fn chain3_projections(rep: &Representation) -> Result<(Representation, Representation)> {
    require(rep, ClassTag::Chain3Brc)?;
    let mut xu = Vec::new();
    let mut yu = Vec::new();
    for o in &rep.u_objects {
        let (x, y) = o.as_hseg().expect("validated");
        xu.push(GeomObject::Interval { x });
        yu.push(GeomObject::Point1 { x: -y });
    }
    let mut xv = Vec::new();
    let mut yv = Vec::new();
    for o in &rep.v_objects {
        let GeomObject::BottomlessRect { x, y } = *o else {
            unreachable!("validated")
        };
        xv.push(GeomObject::Interval { x });
        yv.push(GeomObject::RightRay { x: -y });
    }
    Ok((
        Representation::new(ClassTag::IntervalContainment, xu, xv),
        Representation::new(ClassTag::Chain, yu, yv),
    ))
}

/// Swaps the point and ray roles while keeping the labeled graph: point `p`
/// becomes the ray from `-p`, and the ray from `s` becomes the point `-s`.
pub fn flip_chain_rep(rep: &Representation) -> Result<Representation> {
    require(rep, ClassTag::Chain)?;
    let flip = |o: &GeomObject| match *o {
        GeomObject::Point1 { x } => GeomObject::RightRay { x: -x },
        GeomObject::RightRay { x } => GeomObject::Point1 { x: -x },
        _ => unreachable!("validated"),
    };
    Ok(Representation::new(
        ClassTag::Chain,
        rep.u_objects.iter().map(flip).collect(),
        rep.v_objects.iter().map(flip).collect(),
    ))
}

fn u_is_rays(rep: &Representation) -> bool {
    match (rep.u_objects.first(), rep.v_objects.first()) {
        (Some(o), _) => o.kind() == ObjectKind::RightRay,
        (None, Some(o)) => o.kind() == ObjectKind::Point1,
        (None, None) => false,
    }
}

/// Combines an interval containment factor and a chain factor on the same
/// vertex sets. The chain factor is flipped first if its U side holds rays.
/// Equal segment heights are spread to distinct integers without changing
/// any segment/top comparison.
pub fn assemble_chain3(x_rep: &Representation, y_rep: &Representation) -> Result<Representation> {
    require(x_rep, ClassTag::IntervalContainment)?;
    require(y_rep, ClassTag::Chain)?;
    if x_rep.u_count() != y_rep.u_count() || x_rep.v_count() != y_rep.v_count() {
        return Err(Error::Orientation(format!(
            "factor sizes differ: {}+{} vs {}+{}",
            x_rep.u_count(),
            x_rep.v_count(),
            y_rep.u_count(),
            y_rep.v_count()
        )));
    }
    let y_rep = if u_is_rays(y_rep) {
        flip_chain_rep(y_rep)?
    } else {
        y_rep.clone()
    };
    if u_is_rays(&y_rep) {
        return Err(Error::Orientation("chain factor still has rays on U after flipping".into()));
    }
    let seg_y: Vec<i64> = y_rep
        .u_objects
        .iter()
        .map(|o| match *o {
            GeomObject::Point1 { x } => -x,
            _ => unreachable!("validated"),
        })
        .collect();
    let tops: Vec<i64> = y_rep
        .v_objects
        .iter()
        .map(|o| match *o {
            GeomObject::RightRay { x } => -x,
            _ => unreachable!("validated"),
        })
        .collect();
    let (seg_y, tops) = spread_heights(seg_y, tops);

    let interval = |o: &GeomObject| match *o {
        GeomObject::Interval { x } => x,
        _ => unreachable!("validated"),
    };
    let u = x_rep
        .u_objects
        .iter()
        .zip(seg_y)
        .map(|(o, y)| GeomObject::HSegment { x: interval(o), y })
        .collect();
    let v = x_rep
        .v_objects
        .iter()
        .zip(tops)
        .map(|(o, y)| GeomObject::BottomlessRect { x: interval(o), y })
        .collect();
    Ok(Representation::new(ClassTag::Chain3Brc, u, v))
}

/// Re-ranks so that segment heights become distinct (ties broken by index)
/// while `seg <= top` is preserved for every pair. Leaves the values alone
/// when they are already distinct.
fn spread_heights(seg: Vec<i64>, tops: Vec<i64>) -> (Vec<i64>, Vec<i64>) {
    let mut by_value: BTreeMap<i64, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, &y) in seg.iter().enumerate() {
        by_value.entry(y).or_default().0.push(i);
    }
    if by_value.values().all(|(s, _)| s.len() <= 1) {
        return (seg, tops);
    }
    for (j, &t) in tops.iter().enumerate() {
        by_value.entry(t).or_default().1.push(j);
    }
    let mut new_seg = vec![0; seg.len()];
    let mut new_tops = vec![0; tops.len()];
    let mut cursor = 0i64;
    for (segs, rects) in by_value.values() {
        for &i in segs {
            new_seg[i] = cursor;
            cursor += 1;
        }
        // Tops sit at the highest segment of their value, or on a fresh rank.
        let top = if segs.is_empty() { cursor } else { cursor - 1 };
        for &j in rects {
            new_tops[j] = top;
        }
        if segs.is_empty() {
            cursor += 1;
        }
    }
    (new_seg, new_tops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::build_graph;

    fn c3(u: Vec<GeomObject>, v: Vec<GeomObject>) -> Representation {
        Representation::new(ClassTag::Chain3Brc, u, v)
    }

    fn product_edges(rep: &Representation) -> Vec<(usize, usize)> {
        let (x, y) = chain3_projections(rep).unwrap();
        build_graph(&x)
            .unwrap()
            .intersection(&build_graph(&y).unwrap())
            .unwrap()
            .edges()
            .collect()
    }

    #[test]
    fn single_edge() {
        let r = c3(vec![GeomObject::hseg(0, 1, 0)], vec![GeomObject::brect(0, 1, 3)]);
        let (x, y) = chain3_projections(&r).unwrap();
        assert_eq!(build_graph(&x).unwrap().edge_count(), 1);
        assert_eq!(build_graph(&y).unwrap().edge_count(), 1);
        assert_eq!(product_edges(&r), vec![(0, 0)]);
    }

    #[test]
    fn fails_only_in_y() {
        let r = c3(vec![GeomObject::hseg(0, 1, 5)], vec![GeomObject::brect(0, 1, 3)]);
        let (x, _) = chain3_projections(&r).unwrap();
        assert_eq!(build_graph(&x).unwrap().edge_count(), 1);
        assert!(product_edges(&r).is_empty());
    }

    #[test]
    fn empty() {
        let (x, y) = chain3_projections(&Representation::empty(ClassTag::Chain3Brc)).unwrap();
        assert_eq!((x.u_count(), y.v_count()), (0, 0));
        let back = assemble_chain3(&x, &y).unwrap();
        assert_eq!(back.u_count(), 0);
    }

    #[test]
    fn assemble_intersects_factors() {
        let x = Representation::new(
            ClassTag::IntervalContainment,
            vec![GeomObject::interval(0, 1), GeomObject::interval(0, 1)],
            vec![GeomObject::interval(0, 5), GeomObject::interval(0, 5)],
        );
        // Rays on U: assembly has to flip this factor first.
        let y = Representation::new(
            ClassTag::Chain,
            vec![GeomObject::RightRay { x: 0 }, GeomObject::RightRay { x: 2 }],
            vec![GeomObject::Point1 { x: 1 }, GeomObject::Point1 { x: 3 }],
        );
        let r = assemble_chain3(&x, &y).unwrap();
        let want = build_graph(&x)
            .unwrap()
            .intersection(&build_graph(&y).unwrap())
            .unwrap();
        assert_eq!(build_graph(&r).unwrap(), want);
    }

    #[test]
    fn equal_heights_are_spread() {
        let x = Representation::new(
            ClassTag::IntervalContainment,
            vec![GeomObject::interval(0, 1); 3],
            vec![GeomObject::interval(0, 5); 2],
        );
        let y = Representation::new(
            ClassTag::Chain,
            vec![
                GeomObject::Point1 { x: -2 },
                GeomObject::Point1 { x: -2 },
                GeomObject::Point1 { x: -4 },
            ],
            vec![GeomObject::RightRay { x: -2 }, GeomObject::RightRay { x: -3 }],
        );
        let r = assemble_chain3(&x, &y).unwrap();
        assert!(validate_representation(&r).is_empty());
        let want = build_graph(&x)
            .unwrap()
            .intersection(&build_graph(&y).unwrap())
            .unwrap();
        assert_eq!(build_graph(&r).unwrap(), want);
    }

    #[test]
    fn flip_keeps_graph() {
        let r = Representation::new(
            ClassTag::Chain,
            vec![GeomObject::Point1 { x: 3 }],
            vec![GeomObject::RightRay { x: 2 }],
        );
        let f = flip_chain_rep(&r).unwrap();
        assert_eq!(build_graph(&f).unwrap().edge_count(), 1);
        assert_eq!(flip_chain_rep(&f).unwrap(), r);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rep() -> impl Strategy<Value = Representation> {
            (0usize..10, 0usize..10).prop_flat_map(|(m, n)| {
                let segs = proptest::collection::vec((0i64..15, 0i64..8), m);
                let ys = Just((0..m as i64).collect::<Vec<_>>()).prop_shuffle();
                let rects = proptest::collection::vec((0i64..15, 0i64..12, -1i64..11), n);
                (segs, ys, rects).prop_map(|(s, ys, r)| {
                    c3(
                        s.into_iter().zip(ys).map(|((a, l), y)| GeomObject::hseg(a, a + l, y)).collect(),
                        r.into_iter().map(|(a, l, t)| GeomObject::brect(a, a + l, t)).collect(),
                    )
                })
            })
        }

        fn chain() -> impl Strategy<Value = Representation> {
            (
                proptest::collection::vec(-5i64..5, 0..8),
                proptest::collection::vec(-5i64..5, 0..8),
                any::<bool>(),
            )
                .prop_map(|(p, s, flip)| {
                    let pts = p.into_iter().map(|x| GeomObject::Point1 { x }).collect();
                    let rays = s.into_iter().map(|x| GeomObject::RightRay { x }).collect();
                    if flip {
                        Representation::new(ClassTag::Chain, rays, pts)
                    } else {
                        Representation::new(ClassTag::Chain, pts, rays)
                    }
                })
        }

        proptest! {
            #[test]
            fn round_trip(r in rep()) {
                let g = build_graph(&r).unwrap();
                prop_assert_eq!(product_edges(&r), g.edges().collect::<Vec<_>>());
                let (x, y) = chain3_projections(&r).unwrap();
                let back = assemble_chain3(&x, &y).unwrap();
                prop_assert_eq!(build_graph(&back).unwrap(), g);
            }

            #[test]
            fn flip_is_graph_involution(r in chain()) {
                if validate_representation(&r).is_empty() {
                    let g = build_graph(&r).unwrap();
                    let f = flip_chain_rep(&r).unwrap();
                    prop_assert_eq!(build_graph(&f).unwrap(), g.clone());
                    prop_assert_eq!(build_graph(&flip_chain_rep(&f).unwrap()).unwrap(), g);
                }
            }
        }
    }
}
