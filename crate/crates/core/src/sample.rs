//! Seeded random representations.
//!
//! Every coordinate is drawn uniformly from `[0, 4(m+n)]` with a ChaCha8
//! stream seeded by `seed`, so a `(class, m, n, seed, span)` tuple always
//! yields the same instance. Intervals take two uniform endpoints, or with
//! `span` set a uniform start and a length uniform in `[0, span]`, which
//! keeps large instances sparse. Chain³ segment heights are distinct, drawn
//! without replacement.
//!
//! [`gig_comb`] builds GIG instances with high-degree verticals, which
//! uniform sampling almost never produces, and [`thin_to_free`] turns any
//! sample into a `K_{k,k}`-free induced sub-representation.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{build_graph, ClassTag, GeomObject, Representation, Span};
use crate::oracle::{find_biclique, OracleConfig};
use crate::Result;

pub fn coordinate_box(m: usize, n: usize) -> i64 {
    4 * (m + n) as i64
}

struct Draw {
    rng: ChaCha8Rng,
    top: i64,
    span: Option<i64>,
}

impl Draw {
    fn coord(&mut self) -> i64 {
        self.rng.gen_range(0..=self.top)
    }

    fn span(&mut self) -> Span {
        match self.span {
            Some(len) => {
                let lo = self.coord();
                Span::new(lo, lo + self.rng.gen_range(0..=len.max(0)))
            }
            None => {
                let (a, b) = (self.coord(), self.coord());
                Span::new(a.min(b), a.max(b))
            }
        }
    }
}

/// A random representation of `class` with `m` U-objects and `n` V-objects.
/// Classes with two orientations use points (or points-in-2D) on V.
pub fn sample(class: ClassTag, m: usize, n: usize, seed: u64, span: Option<i64>) -> Representation {
    let mut d = Draw {
        rng: ChaCha8Rng::seed_from_u64(seed),
        top: coordinate_box(m, n),
        span,
    };
    let mut u = Vec::with_capacity(m);
    let mut v = Vec::with_capacity(n);
    match class {
        ClassTag::Chain => {
            u.extend((0..m).map(|_| GeomObject::Point1 { x: d.coord() }));
            v.extend((0..n).map(|_| GeomObject::RightRay { x: d.coord() }));
        }
        ClassTag::Conv => {
            u.extend((0..m).map(|_| GeomObject::Interval { x: d.span() }));
            v.extend((0..n).map(|_| GeomObject::Point1 { x: d.coord() }));
        }
        ClassTag::IntervalContainment => {
            u.extend((0..m).map(|_| GeomObject::Interval { x: d.span() }));
            v.extend((0..n).map(|_| GeomObject::Interval { x: d.span() }));
        }
        ClassTag::Sr => {
            for _ in 0..m {
                let x = d.span();
                u.push(GeomObject::HSegment { x, y: d.coord() });
            }
            for _ in 0..n {
                let x = d.coord();
                v.push(GeomObject::UpRay { x, y: d.coord() });
            }
        }
        ClassTag::Gig => {
            for _ in 0..m {
                let x = d.span();
                u.push(GeomObject::HSegment { x, y: d.coord() });
            }
            for _ in 0..n {
                let x = d.coord();
                v.push(GeomObject::VSegment { x, y: d.span() });
            }
        }
        ClassTag::Prig => {
            for _ in 0..m {
                let x = d.span();
                u.push(GeomObject::Rect { x, y: d.span() });
            }
            for _ in 0..n {
                let x = d.coord();
                v.push(GeomObject::Point2 { x, y: d.coord() });
            }
        }
        ClassTag::Chain3Brc => {
            let ys = index::sample(&mut d.rng, d.top as usize + 1, m);
            for y in ys.iter() {
                let x = d.span();
                u.push(GeomObject::HSegment { x, y: y as i64 });
            }
            for _ in 0..n {
                let x = d.span();
                v.push(GeomObject::BottomlessRect { x, y: d.coord() });
            }
        }
    }
    Representation::new(class, u, v)
}

/// Verticals at `x = 10i`, each spanning a random y-range that covers at
/// least the middle half of `[0, 4(horizontals + verticals)]`, and
/// horizontals that are short teeth around one vertical or, with probability
/// `1/8`, a bridge across two neighbors. Teeth reach at most 4 away from
/// their vertical, so they cross nothing else.
pub fn gig_comb(verticals: usize, horizontals: usize, seed: u64) -> Representation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = coordinate_box(horizontals, verticals);
    let cols = verticals.max(1) as i64;
    let mut u = Vec::with_capacity(horizontals);
    for _ in 0..horizontals {
        let i = rng.gen_range(0..cols);
        let reach = if cols > 1 && rng.gen_ratio(1, 8) { 10 } else { 0 };
        let lo = 10 * i - rng.gen_range(0..=4);
        let hi = 10 * i + reach + rng.gen_range(0..=4);
        u.push(GeomObject::hseg(lo, hi, rng.gen_range(0..=top)));
    }
    let v = (0..verticals as i64)
        .map(|i| {
            let (a, b) = (rng.gen_range(0..=top / 4), rng.gen_range(3 * top / 4..=top));
            GeomObject::vseg(10 * i, a, b)
        })
        .collect();
    Representation::new(ClassTag::Gig, u, v)
}

/// GIG instance where each segment is, with probability `long`, stretched
/// to cover at least the middle half of the box in its direction; two long
/// segments always cross. Dense enough to defeat the `27(k-1)` peel.
pub fn gig_dense(m: usize, n: usize, long: f64, seed: u64) -> Representation {
    let mut d = Draw {
        rng: ChaCha8Rng::seed_from_u64(seed),
        top: coordinate_box(m, n),
        span: None,
    };
    let stretch = |d: &mut Draw| -> Span {
        if d.rng.gen_bool(long) {
            Span::new(d.rng.gen_range(0..=d.top / 4), d.rng.gen_range(3 * d.top / 4..=d.top))
        } else {
            d.span()
        }
    };
    let mut u = Vec::with_capacity(m);
    for _ in 0..m {
        let x = stretch(&mut d);
        let y = d.rng.gen_range(d.top / 4..=3 * d.top / 4);
        u.push(GeomObject::HSegment { x, y });
    }
    let mut v = Vec::with_capacity(n);
    for _ in 0..n {
        let y = stretch(&mut d);
        let x = d.rng.gen_range(d.top / 4..=3 * d.top / 4);
        v.push(GeomObject::VSegment { x, y });
    }
    Representation::new(ClassTag::Gig, u, v)
}

/// Deletes a random vertex of each witness the oracle finds until none is
/// left. The result is an induced sub-representation, so it stays in class.
pub fn thin_to_free(rep: &Representation, k: usize, cfg: &OracleConfig, seed: u64) -> Result<Representation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = rep.clone();
    loop {
        let g = build_graph(&rep)?;
        let Some(w) = find_biclique(&g, k, cfg)? else {
            return Ok(rep);
        };
        let mut us: Vec<usize> = (0..rep.u_count()).collect();
        let mut vs: Vec<usize> = (0..rep.v_count()).collect();
        if rng.gen_bool(0.5) {
            let drop = w.u_vertices[rng.gen_range(0..w.u_vertices.len())];
            us.retain(|&i| i != drop);
        } else {
            let drop = w.v_vertices[rng.gen_range(0..w.v_vertices.len())];
            vs.retain(|&j| j != drop);
        }
        rep = rep.induced(&us, &vs);
    }
}
