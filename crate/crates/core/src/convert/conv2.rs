//! Intersections of two convex graphs split into a PRIG part and a GIG part.
//!
//! Each factor is a point-in-interval representation over a shared vertex
//! universe, identified by labels. A vertex is an interval or a point in each
//! factor, giving four groups:
//!
//! | factor 1 | factor 2 | group | object                   |
//! |----------|----------|-------|--------------------------|
//! | interval | interval | A1    | rectangle                |
//! | point    | point    | B1    | point                    |
//! | interval | point    | A2    | vertical segment         |
//! | point    | interval | B2    | horizontal segment       |
//!
//! The PRIG part takes x from factor 1 and y from factor 2; the GIG part
//! takes y from factor 1 and x from factor 2. Edges only run A1–B1 and
//! A2–B2.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::geom::{build_graph, validate_representation, ClassTag, GeomObject, Representation, Span};
use crate::{Error, Result};

/// A representation whose vertices carry labels from a shared universe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledRep {
    #[serde(flatten)]
    pub rep: Representation,
    pub u_labels: Vec<usize>,
    pub v_labels: Vec<usize>,
}

impl LabeledRep {
    /// Labels `u_i -> i`, `v_j -> m + j`.
    pub fn natural(rep: Representation) -> Self {
        let m = rep.u_count();
        let n = rep.v_count();
        LabeledRep {
            rep,
            u_labels: (0..m).collect(),
            v_labels: (m..m + n).collect(),
        }
    }

    fn labels(&self) -> impl Iterator<Item = usize> + '_ {
        self.u_labels.iter().chain(&self.v_labels).copied()
    }
}

/// Edges as unordered label pairs `(min, max)`.
pub fn labeled_edges(lr: &LabeledRep) -> Result<BTreeSet<(usize, usize)>> {
    if lr.u_labels.len() != lr.rep.u_count() || lr.v_labels.len() != lr.rep.v_count() {
        return Err(Error::InvalidParameter("label count differs from object count".into()));
    }
    let g = build_graph(&lr.rep)?;
    Ok(g.edges()
        .map(|(u, v)| {
            let (a, b) = (lr.u_labels[u], lr.v_labels[v]);
            (a.min(b), a.max(b))
        })
        .collect())
}

fn project(rep: &Representation, f: impl Fn(&GeomObject) -> GeomObject) -> LabeledRep {
    LabeledRep::natural(Representation::new(
        ClassTag::Conv,
        rep.u_objects.iter().map(&f).collect(),
        rep.v_objects.iter().map(&f).collect(),
    ))
}

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

/// Axis projections `(x factor, y factor)`.
pub fn prig_to_conv2(rep: &Representation) -> Result<(LabeledRep, LabeledRep)> {
    require(rep, ClassTag::Prig)?;
    let x = project(rep, |o| match *o {
        GeomObject::Rect { x, .. } => GeomObject::Interval { x },
        GeomObject::Point2 { x, .. } => GeomObject::Point1 { x },
        _ => unreachable!("validated"),
    });
    let y = project(rep, |o| match *o {
        GeomObject::Rect { y, .. } => GeomObject::Interval { x: y },
        GeomObject::Point2 { y, .. } => GeomObject::Point1 { x: y },
        _ => unreachable!("validated"),
    });
    Ok((x, y))
}

/// Axis projections `(y factor, x factor)`, matching the axes
/// [`conv2_decompose`] assigns to the GIG part.
pub fn gig_to_conv2(rep: &Representation) -> Result<(LabeledRep, LabeledRep)> {
    require(rep, ClassTag::Gig)?;
    let y = project(rep, |o| match *o {
        GeomObject::HSegment { y, .. } => GeomObject::Point1 { x: y },
        GeomObject::VSegment { y, .. } => GeomObject::Interval { x: y },
        _ => unreachable!("validated"),
    });
    let x = project(rep, |o| match *o {
        GeomObject::HSegment { x, .. } => GeomObject::Interval { x },
        GeomObject::VSegment { x, .. } => GeomObject::Point1 { x },
        _ => unreachable!("validated"),
    });
    Ok((y, x))
}

enum Role {
    Interval(Span),
    Point(i64),
}

fn roles(f: &LabeledRep) -> Result<BTreeMap<usize, Role>> {
    require(&f.rep, ClassTag::Conv)?;
    if f.u_labels.len() != f.rep.u_count() || f.v_labels.len() != f.rep.v_count() {
        return Err(Error::InvalidParameter("label count differs from object count".into()));
    }
    let mut out = BTreeMap::new();
    let objs = f.rep.u_objects.iter().chain(&f.rep.v_objects);
    for (label, o) in f.labels().zip(objs) {
        let role = match *o {
            GeomObject::Interval { x } => Role::Interval(x),
            GeomObject::Point1 { x } => Role::Point(x),
            _ => unreachable!("validated"),
        };
        if out.insert(label, role).is_some() {
            return Err(Error::InvalidParameter(format!("label {label} used twice")));
        }
    }
    Ok(out)
}

/// Splits `G1 ∩ G2` into `(prig, gig)` components; see the module docs for
/// the group and axis assignment. Both factors must label the same universe.
pub fn conv2_decompose(g1: &LabeledRep, g2: &LabeledRep) -> Result<(LabeledRep, LabeledRep)> {
    let r1 = roles(g1)?;
    let r2 = roles(g2)?;
    if !r1.keys().eq(r2.keys()) {
        return Err(Error::InvalidParameter("factors have different vertex universes".into()));
    }
    let mut prig = LabeledRep {
        rep: Representation::empty(ClassTag::Prig),
        u_labels: Vec::new(),
        v_labels: Vec::new(),
    };
    let mut gig = LabeledRep {
        rep: Representation::empty(ClassTag::Gig),
        u_labels: Vec::new(),
        v_labels: Vec::new(),
    };
    for (&label, a) in &r1 {
        match (a, &r2[&label]) {
            (Role::Interval(x), Role::Interval(y)) => {
                prig.rep.u_objects.push(GeomObject::Rect { x: *x, y: *y });
                prig.u_labels.push(label);
            }
            (Role::Point(x), Role::Point(y)) => {
                prig.rep.v_objects.push(GeomObject::Point2 { x: *x, y: *y });
                prig.v_labels.push(label);
            }
            (Role::Point(y), Role::Interval(x)) => {
                gig.rep.u_objects.push(GeomObject::HSegment { x: *x, y: *y });
                gig.u_labels.push(label);
            }
            (Role::Interval(y), Role::Point(x)) => {
                gig.rep.v_objects.push(GeomObject::VSegment { x: *x, y: *y });
                gig.v_labels.push(label);
            }
        }
    }
    Ok((prig, gig))
}
