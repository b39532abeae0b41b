//! Lower-bound instances and the duplication amplifier.

use crate::geom::{ClassTag, GeomObject, Representation, Span};
use crate::{Error, Result};

/// `K_{k,k}`-free chain graph with exactly `(n+m)(k-1) - (k-1)^2` edges.
///
/// Points sit at `2i` for `i` in `1..=m`. The first `k-1` rays start at 0 and
/// hold every point; the remaining `n-k+1` start just past point `m-k+1` and
/// hold the last `k-1` points. Coordinates are doubled so that the half-way
/// start is an integer.
pub fn chain_lower_bound(m: usize, n: usize, k: usize) -> Result<Representation> {
    if k == 0 || m < k || n + 1 < k {
        return Err(Error::InvalidParameter(format!(
            "chain lower bound needs m >= k >= 1 and n >= k-1, got m={m} n={n} k={k}"
        )));
    }
    let u = (1..=m as i64).map(|i| GeomObject::Point1 { x: 2 * i }).collect();
    let late = 2 * (m - k + 1) as i64 + 1;
    let v = (0..n)
        .map(|j| GeomObject::RightRay {
            x: if j < k - 1 { 0 } else { late },
        })
        .collect();
    Ok(Representation::new(ClassTag::Chain, u, v))
}

/// The `K_{2,2}`-free grid intersection graph with `4t^2` segments per side
/// and `12t^2 - 4t` edges, with coordinates exactly as generated (no
/// translation or rescaling).
pub fn ugig_construction(t: usize) -> Result<Representation> {
    if t == 0 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    let t = t as i64;
    let mut u = Vec::with_capacity((4 * t * t) as usize);
    let mut v = Vec::with_capacity((4 * t * t) as usize);
    for i in 0..t {
        for j in 0..2 * t {
            u.push(GeomObject::hseg(8 * i, 8 * i + 7, 4 * j + 1));
            u.push(GeomObject::hseg(8 * i - 4, 8 * i + 3, 4 * j + 3));
        }
    }
    for i in 0..t {
        for j in 0..t {
            v.push(GeomObject::vseg(8 * j + 1, 8 * i + 2, 8 * i + 8));
            v.push(GeomObject::vseg(8 * j + 2, 8 * i - 2, 8 * i + 4));
            v.push(GeomObject::vseg(8 * j + 5, 8 * i, 8 * i + 6));
            v.push(GeomObject::vseg(8 * j + 6, 8 * i + 4, 8 * i + 10));
        }
    }
    Ok(Representation::new(ClassTag::Gig, u, v))
}

/// Replaces every object by `k-1` identical copies in a contiguous block, so
/// vertex `i` becomes `i(k-1) .. (i+1)(k-1)`. Edge counts scale by
/// `(k-1)^2`, and a `K_{2,2}`-free input becomes `K_{k,k}`-free.
///
/// Chain³ representations are rejected: copies would share a segment height.
pub fn duplicate(rep: &Representation, k: usize) -> Result<Representation> {
    if k < 2 {
        return Err(Error::InvalidParameter("duplication needs k >= 2".into()));
    }
    if rep.class == ClassTag::Chain3Brc {
        return Err(Error::InvalidParameter(
            "chain3_brc forbids repeated segment heights, so it cannot be duplicated".into(),
        ));
    }
    let copy = |objs: &[GeomObject]| -> Vec<GeomObject> {
        objs.iter()
            .flat_map(|o| std::iter::repeat_n(*o, k - 1))
            .collect()
    };
    Ok(Representation::new(rep.class, copy(&rep.u_objects), copy(&rep.v_objects)))
}

/// `K_{s,s}` drawn as `s` long horizontals crossing `s` long verticals.
pub fn grid(size: usize) -> Representation {
    let s = size as i64;
    let u = (0..s)
        .map(|y| GeomObject::HSegment {
            x: Span::new(-1, s),
            y,
        })
        .collect();
    let v = (0..s)
        .map(|x| GeomObject::VSegment {
            x,
            y: Span::new(-1, s),
        })
        .collect();
    Representation::new(ClassTag::Gig, u, v)
}
