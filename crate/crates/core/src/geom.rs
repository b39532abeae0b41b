//! Exact-integer geometric primitives and the representations built from them.
//!
//! Every object is a closed, axis-aligned, possibly unbounded box. Rays and
//! bottomless rectangles extend to infinity along one axis; everything else is
//! bounded. Degenerate objects (zero-length segments, single-point intervals)
//! are legal and behave as points.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::BipartiteGraph;
use crate::{Error, Result};

/// Closed integer interval `[lo, hi]`. Serialized as `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Span {
    pub lo: i64,
    pub hi: i64,
}

impl Span {
    pub const fn new(lo: i64, hi: i64) -> Self {
        Span { lo, hi }
    }

    pub fn is_valid(&self) -> bool {
        self.lo <= self.hi
    }

    pub fn contains_point(&self, p: i64) -> bool {
        self.lo <= p && p <= self.hi
    }

    /// Non-strict containment of `other` in `self`.
    pub fn contains_span(&self, other: &Span) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// `other ⊂ self` with `other != self`.
    pub fn strictly_contains_span(&self, other: &Span) -> bool {
        self.contains_span(other) && self != other
    }

    /// `p` lies strictly between the endpoints.
    pub fn interior(&self, p: i64) -> bool {
        self.lo < p && p < self.hi
    }
}

impl From<[i64; 2]> for Span {
    fn from(a: [i64; 2]) -> Self {
        Span { lo: a[0], hi: a[1] }
    }
}

impl From<Span> for [i64; 2] {
    fn from(s: Span) -> Self {
        [s.lo, s.hi]
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ObjectKind {
    Point1,
    RightRay,
    Interval,
    Point2,
    UpRay,
    HSegment,
    VSegment,
    BottomlessRect,
    Rect,
}

impl ObjectKind {
    pub fn name(self) -> &'static str {
        match self {
            ObjectKind::Point1 => "point1",
            ObjectKind::RightRay => "rray",
            ObjectKind::Interval => "interval",
            ObjectKind::Point2 => "point2",
            ObjectKind::UpRay => "uray",
            ObjectKind::HSegment => "hseg",
            ObjectKind::VSegment => "vseg",
            ObjectKind::BottomlessRect => "brect",
            ObjectKind::Rect => "rect",
        }
    }

    pub fn dim(self) -> u8 {
        match self {
            ObjectKind::Point1 | ObjectKind::RightRay | ObjectKind::Interval => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for ObjectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A geometric primitive with integer coordinates.
///
/// Field names follow the projection convention: `x` is the projection to the
/// horizontal axis and `y` to the vertical axis, either a single coordinate or
/// a [`Span`]. Rays store their start coordinate; a bottomless rectangle
/// stores its top.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum GeomObject {
    #[serde(rename = "point1")]
    Point1 { x: i64 },
    /// `[x, +inf)` on the line.
    #[serde(rename = "rray")]
    RightRay { x: i64 },
    #[serde(rename = "interval")]
    Interval { x: Span },
    #[serde(rename = "point2")]
    Point2 { x: i64, y: i64 },
    /// Vertical ray `{x} × [y, +inf)`.
    #[serde(rename = "uray")]
    UpRay { x: i64, y: i64 },
    #[serde(rename = "hseg")]
    HSegment { x: Span, y: i64 },
    #[serde(rename = "vseg")]
    VSegment { x: i64, y: Span },
    /// `x × (-inf, y]`.
    #[serde(rename = "brect")]
    BottomlessRect { x: Span, y: i64 },
    #[serde(rename = "rect")]
    Rect { x: Span, y: Span },
}

const NEG_INF: i128 = i128::MIN;
const POS_INF: i128 = i128::MAX;

/// Closed extent along one axis with infinite endpoints allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Extent {
    lo: i128,
    hi: i128,
}

impl Extent {
    fn point(p: i64) -> Self {
        Extent {
            lo: p as i128,
            hi: p as i128,
        }
    }

    fn span(s: Span) -> Self {
        Extent {
            lo: s.lo as i128,
            hi: s.hi as i128,
        }
    }

    fn overlaps(&self, o: &Extent) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    fn contains(&self, o: &Extent) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }
}

impl GeomObject {
    pub fn kind(&self) -> ObjectKind {
        match self {
            GeomObject::Point1 { .. } => ObjectKind::Point1,
            GeomObject::RightRay { .. } => ObjectKind::RightRay,
            GeomObject::Interval { .. } => ObjectKind::Interval,
            GeomObject::Point2 { .. } => ObjectKind::Point2,
            GeomObject::UpRay { .. } => ObjectKind::UpRay,
            GeomObject::HSegment { .. } => ObjectKind::HSegment,
            GeomObject::VSegment { .. } => ObjectKind::VSegment,
            GeomObject::BottomlessRect { .. } => ObjectKind::BottomlessRect,
            GeomObject::Rect { .. } => ObjectKind::Rect,
        }
    }

    pub fn dim(&self) -> u8 {
        self.kind().dim()
    }

    pub fn hseg(lo: i64, hi: i64, y: i64) -> Self {
        GeomObject::HSegment {
            x: Span::new(lo, hi),
            y,
        }
    }

    pub fn vseg(x: i64, lo: i64, hi: i64) -> Self {
        GeomObject::VSegment {
            x,
            y: Span::new(lo, hi),
        }
    }

    pub fn brect(lo: i64, hi: i64, top: i64) -> Self {
        GeomObject::BottomlessRect {
            x: Span::new(lo, hi),
            y: top,
        }
    }

    pub fn interval(lo: i64, hi: i64) -> Self {
        GeomObject::Interval {
            x: Span::new(lo, hi),
        }
    }

    /// Spans stored by the object, for the `lo <= hi` check.
    pub fn spans(&self) -> Vec<Span> {
        match *self {
            GeomObject::Interval { x }
            | GeomObject::HSegment { x, .. }
            | GeomObject::BottomlessRect { x, .. } => vec![x],
            GeomObject::VSegment { y, .. } => vec![y],
            GeomObject::Rect { x, y } => vec![x, y],
            _ => Vec::new(),
        }
    }

    /// Horizontal segment accessor (`x`-span, `y`).
    pub fn as_hseg(&self) -> Option<(Span, i64)> {
        match *self {
            GeomObject::HSegment { x, y } => Some((x, y)),
            _ => None,
        }
    }

    pub fn as_vseg(&self) -> Option<(i64, Span)> {
        match *self {
            GeomObject::VSegment { x, y } => Some((x, y)),
            _ => None,
        }
    }

    fn extents(&self) -> (Extent, Extent) {
        let none = Extent { lo: 0, hi: 0 };
        match *self {
            GeomObject::Point1 { x } => (Extent::point(x), none),
            GeomObject::RightRay { x } => (
                Extent {
                    lo: x as i128,
                    hi: POS_INF,
                },
                none,
            ),
            GeomObject::Interval { x } => (Extent::span(x), none),
            GeomObject::Point2 { x, y } => (Extent::point(x), Extent::point(y)),
            GeomObject::UpRay { x, y } => (
                Extent::point(x),
                Extent {
                    lo: y as i128,
                    hi: POS_INF,
                },
            ),
            GeomObject::HSegment { x, y } => (Extent::span(x), Extent::point(y)),
            GeomObject::VSegment { x, y } => (Extent::point(x), Extent::span(y)),
            GeomObject::BottomlessRect { x, y } => (
                Extent::span(x),
                Extent {
                    lo: NEG_INF,
                    hi: y as i128,
                },
            ),
            GeomObject::Rect { x, y } => (Extent::span(x), Extent::span(y)),
        }
    }
}

/// True iff the closed point sets of `a` and `b` share a point.
pub fn intersects(a: &GeomObject, b: &GeomObject) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(
            a.kind().name(),
            a.dim(),
            b.kind().name(),
            b.dim(),
        ));
    }
    let (ax, ay) = a.extents();
    let (bx, by) = b.extents();
    Ok(ax.overlaps(&bx) && ay.overlaps(&by))
}

fn legal_containment(outer: ObjectKind, inner: ObjectKind) -> bool {
    use ObjectKind::*;
    matches!(
        (outer, inner),
        (Interval, Point1)
            | (Interval, Interval)
            | (RightRay, Point1)
            | (BottomlessRect, HSegment)
            | (Rect, Point2)
            | (UpRay, Point2)
    )
}

/// True iff every point of `inner` lies in `outer` (closed sets).
pub fn contains(outer: &GeomObject, inner: &GeomObject) -> Result<bool> {
    if !legal_containment(outer.kind(), inner.kind()) {
        return Err(Error::IllegalContainment {
            outer: outer.kind().name(),
            inner: inner.kind().name(),
        });
    }
    let (ox, oy) = outer.extents();
    let (ix, iy) = inner.extents();
    Ok(ox.contains(&ix) && oy.contains(&iy))
}

/// The three strict partial orders on horizontal segments used by the
/// Ferrers-dimension-three argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SegmentOrder {
    /// Successor lies lower and weakly to the left on both endpoints.
    #[serde(rename = "DL")]
    DownLeft,
    /// Successor lies lower and weakly to the right on both endpoints.
    #[serde(rename = "DR")]
    DownRight,
    /// Successor's x-interval is strictly nested inside.
    #[serde(rename = "C")]
    Nested,
}

impl SegmentOrder {
    pub const ALL: [SegmentOrder; 3] = [
        SegmentOrder::DownLeft,
        SegmentOrder::DownRight,
        SegmentOrder::Nested,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn tag(self) -> &'static str {
        match self {
            SegmentOrder::DownLeft => "DL",
            SegmentOrder::DownRight => "DR",
            SegmentOrder::Nested => "C",
        }
    }
}

/// Whether segment `t` succeeds segment `s` in `order`. Segments are given as
/// `(x-span, y)`.
pub fn succeeds(order: SegmentOrder, s: (Span, i64), t: (Span, i64)) -> bool {
    let ((sx, sy), (tx, ty)) = (s, t);
    match order {
        SegmentOrder::DownLeft => tx.lo <= sx.lo && tx.hi <= sx.hi && ty < sy,
        SegmentOrder::DownRight => sx.lo <= tx.lo && sx.hi <= tx.hi && ty < sy,
        SegmentOrder::Nested => sx.strictly_contains_span(&tx),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassTag {
    /// Points and rightward rays on a line.
    Chain,
    /// Points and intervals on a line (point-in-interval).
    Conv,
    /// U-intervals contained in V-intervals.
    IntervalContainment,
    /// Horizontal segments and upward rays.
    Sr,
    /// Horizontal and vertical segments.
    Gig,
    /// Points and axis-aligned rectangles.
    Prig,
    /// Horizontal segments contained in bottomless rectangles.
    #[serde(rename = "chain3_brc")]
    Chain3Brc,
}

impl ClassTag {
    pub fn name(self) -> &'static str {
        match self {
            ClassTag::Chain => "chain",
            ClassTag::Conv => "conv",
            ClassTag::IntervalContainment => "interval_containment",
            ClassTag::Sr => "sr",
            ClassTag::Gig => "gig",
            ClassTag::Prig => "prig",
            ClassTag::Chain3Brc => "chain3_brc",
        }
    }

    /// Permitted `(u kind, v kind)` pairs.
    pub fn orientations(self) -> &'static [(ObjectKind, ObjectKind)] {
        use ObjectKind::*;
        match self {
            ClassTag::Chain => &[(Point1, RightRay), (RightRay, Point1)],
            ClassTag::Conv => &[(Interval, Point1), (Point1, Interval)],
            ClassTag::IntervalContainment => &[(Interval, Interval)],
            ClassTag::Sr => &[(HSegment, UpRay)],
            ClassTag::Gig => &[(HSegment, VSegment)],
            ClassTag::Prig => &[(Rect, Point2), (Point2, Rect)],
            ClassTag::Chain3Brc => &[(HSegment, BottomlessRect)],
        }
    }

    /// Whether edges come from containment rather than intersection.
    pub fn is_containment(self) -> bool {
        matches!(
            self,
            ClassTag::Conv | ClassTag::IntervalContainment | ClassTag::Chain3Brc
        )
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ClassTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "chain" => ClassTag::Chain,
            "conv" => ClassTag::Conv,
            "interval_containment" | "ic" => ClassTag::IntervalContainment,
            "sr" => ClassTag::Sr,
            "gig" => ClassTag::Gig,
            "prig" => ClassTag::Prig,
            "chain3_brc" | "chain3" => ClassTag::Chain3Brc,
            other => return Err(Error::InvalidParameter(format!("unknown class {other:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    U,
    V,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::U => "u",
            Side::V => "v",
        })
    }
}

/// A class tag plus the U-side and V-side objects; vertex `i` of a side is
/// the object at position `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representation {
    pub class: ClassTag,
    #[serde(rename = "u")]
    pub u_objects: Vec<GeomObject>,
    #[serde(rename = "v")]
    pub v_objects: Vec<GeomObject>,
}

impl Representation {
    pub fn new(class: ClassTag, u_objects: Vec<GeomObject>, v_objects: Vec<GeomObject>) -> Self {
        Representation {
            class,
            u_objects,
            v_objects,
        }
    }

    pub fn empty(class: ClassTag) -> Self {
        Self::new(class, Vec::new(), Vec::new())
    }

    pub fn u_count(&self) -> usize {
        self.u_objects.len()
    }

    pub fn v_count(&self) -> usize {
        self.v_objects.len()
    }

    /// Sub-representation on the given vertex lists, in the given order.
    pub fn induced(&self, us: &[usize], vs: &[usize]) -> Representation {
        Representation {
            class: self.class,
            u_objects: us.iter().map(|&i| self.u_objects[i]).collect(),
            v_objects: vs.iter().map(|&j| self.v_objects[j]).collect(),
        }
    }

    /// Whether `u_objects[i]` and `v_objects[j]` are related under the class.
    pub fn related(&self, i: usize, j: usize) -> Result<bool> {
        related(self.class, &self.u_objects[i], &self.v_objects[j])
    }
}

fn related(class: ClassTag, u: &GeomObject, v: &GeomObject) -> Result<bool> {
    match class {
        ClassTag::Conv => {
            if u.kind() == ObjectKind::Interval {
                contains(u, v)
            } else {
                contains(v, u)
            }
        }
        ClassTag::IntervalContainment | ClassTag::Chain3Brc => contains(v, u),
        _ => intersects(u, v),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum ViolationRule {
    KindMismatch {
        expected: String,
        found: String,
    },
    InvertedSpan {
        lo: i64,
        hi: i64,
    },
    DuplicateY {
        y: i64,
        first: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub side: Side,
    pub index: usize,
    #[serde(flatten)]
    pub rule: ViolationRule,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]: ", self.side, self.index)?;
        match &self.rule {
            ViolationRule::KindMismatch { expected, found } => {
                write!(f, "expected {expected}, found {found}")
            }
            ViolationRule::InvertedSpan { lo, hi } => write!(f, "inverted span [{lo},{hi}]"),
            ViolationRule::DuplicateY { y, first } => {
                write!(f, "y={y} already used by u[{first}]")
            }
        }
    }
}

/// Every broken representation invariant, each naming the offending index.
/// Empty iff the representation is valid.
pub fn validate_representation(rep: &Representation) -> Vec<Violation> {
    let mut out = Vec::new();
    let orientations = rep.class.orientations();

    // Orientation is fixed by the first object present.
    let chosen = rep
        .u_objects
        .first()
        .and_then(|o| orientations.iter().find(|(uk, _)| *uk == o.kind()))
        .or_else(|| {
            if rep.u_objects.is_empty() {
                rep.v_objects
                    .first()
                    .and_then(|o| orientations.iter().find(|(_, vk)| *vk == o.kind()))
            } else {
                None
            }
        })
        .copied();

    let expected_names = |side: Side| -> String {
        let mut names: Vec<&str> = orientations
            .iter()
            .map(|(u, v)| if side == Side::U { u.name() } else { v.name() })
            .collect();
        names.dedup();
        names.join("|")
    };

    for (side, objs) in [(Side::U, &rep.u_objects), (Side::V, &rep.v_objects)] {
        for (index, obj) in objs.iter().enumerate() {
            let ok = match chosen {
                Some((uk, vk)) => obj.kind() == if side == Side::U { uk } else { vk },
                None => false,
            };
            if !ok {
                let expected = match chosen {
                    Some((uk, vk)) => (if side == Side::U { uk } else { vk }).name().to_string(),
                    None => expected_names(side),
                };
                out.push(Violation {
                    side,
                    index,
                    rule: ViolationRule::KindMismatch {
                        expected,
                        found: obj.kind().name().to_string(),
                    },
                });
            }
            for s in obj.spans() {
                if !s.is_valid() {
                    out.push(Violation {
                        side,
                        index,
                        rule: ViolationRule::InvertedSpan { lo: s.lo, hi: s.hi },
                    });
                }
            }
        }
    }

    if rep.class == ClassTag::Chain3Brc {
        let mut seen: BTreeMap<i64, usize> = BTreeMap::new();
        for (index, obj) in rep.u_objects.iter().enumerate() {
            if let Some((_, y)) = obj.as_hseg() {
                if let Some(&first) = seen.get(&y) {
                    out.push(Violation {
                        side: Side::U,
                        index,
                        rule: ViolationRule::DuplicateY { y, first },
                    });
                } else {
                    seen.insert(y, index);
                }
            }
        }
    }
    out
}

/// The bipartite graph a representation defines: `(i, j)` is an edge iff the
/// class relation holds between `u_objects[i]` and `v_objects[j]`.
pub fn build_graph(rep: &Representation) -> Result<BipartiteGraph> {
    let violations = validate_representation(rep);
    if !violations.is_empty() {
        return Err(Error::InvalidRepresentation(violations));
    }
    let mut edges = Vec::new();
    for (i, u) in rep.u_objects.iter().enumerate() {
        for (j, v) in rep.v_objects.iter().enumerate() {
            if related(rep.class, u, v)? {
                edges.push((i, j));
            }
        }
    }
    BipartiteGraph::from_edges(rep.u_count(), rep.v_count(), edges)
}
