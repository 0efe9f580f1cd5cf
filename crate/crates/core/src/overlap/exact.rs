//! Exact depth computation for placements on the line and in the plane.
//!
//! Finite `f64` values are dyadic rationals, so scaling every coordinate by
//! a common power of two turns the placement into integer points. Crossings
//! of two segments are kept in homogeneous form `(X, Y, W)` with `W > 0`;
//! every predicate below is a sign of an integer polynomial.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::float::FloatCore;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{DepthResult, Placement, Witness};
use crate::complex::SimplicialComplex;

/// `(signed mantissa, exponent)` with `v = m·2^e`; `None` for zero.
fn decode(v: f64) -> Option<(i64, i16)> {
    if v == 0.0 {
        return None;
    }
    let (m, e, s) = FloatCore::integer_decode(v);
    let tz = m.trailing_zeros();
    Some((s as i64 * (m >> tz) as i64, e + tz as i16))
}

/// Every coordinate multiplied by `2^shift`, as integers.
pub(crate) struct Scaled {
    shift: i32,
}

impl Scaled {
    pub(crate) fn for_values<'a>(values: impl Iterator<Item = &'a f64>) -> Self {
        let min_exp = values.filter_map(|&v| decode(v)).map(|(_, e)| e as i32).min().unwrap_or(0);
        Scaled {
            shift: (-min_exp).max(0),
        }
    }

    pub(crate) fn int(&self, v: f64) -> BigInt {
        match decode(v) {
            None => BigInt::zero(),
            Some((m, e)) => BigInt::from(m) << ((e as i32 + self.shift) as usize),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Pt {
    x: BigInt,
    y: BigInt,
}

/// `(x/w, y/w)` with `w > 0`.
#[derive(Clone, Debug)]
pub(crate) struct HPt {
    x: BigInt,
    y: BigInt,
    w: BigInt,
}

impl From<&Pt> for HPt {
    fn from(p: &Pt) -> Self {
        HPt {
            x: p.x.clone(),
            y: p.y.clone(),
            w: BigInt::from(1),
        }
    }
}

impl HPt {
    fn to_f64(&self, scale: &Scaled) -> Vec<f64> {
        let w = bigint_to_f64(&self.w);
        let s = 2f64.powi(-scale.shift);
        vec![bigint_to_f64(&self.x) / w * s, bigint_to_f64(&self.y) / w * s]
    }
}

fn bigint_to_f64(v: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
}

/// Sign of `(b - a) × (p - a)`.
fn orient(a: &Pt, b: &Pt, p: &HPt) -> Ordering {
    let lhs = (&b.x - &a.x) * (&p.y - &a.y * &p.w);
    let rhs = (&b.y - &a.y) * (&p.x - &a.x * &p.w);
    lhs.cmp(&rhs)
}

fn orient_pts(a: &Pt, b: &Pt, c: &Pt) -> Ordering {
    orient(a, b, &HPt::from(c))
}

/// `(p - u)·(v - u) ≥ 0`
fn ahead(u: &Pt, v: &Pt, p: &HPt) -> bool {
    let dot = (&p.x - &u.x * &p.w) * (&v.x - &u.x) + (&p.y - &u.y * &p.w) * (&v.y - &u.y);
    !dot.is_negative()
}

fn dist2(a: &Pt, b: &Pt) -> BigInt {
    let dx = &a.x - &b.x;
    let dy = &a.y - &b.y;
    &dx * &dx + &dy * &dy
}

/// Closed convex hull of three points, by degeneracy.
#[derive(Clone, Debug)]
pub(crate) enum Hull {
    Triangle { a: Pt, b: Pt, c: Pt, orientation: Ordering },
    Segment { u: Pt, v: Pt },
    Point(Pt),
}

impl Hull {
    pub(crate) fn new(a: Pt, b: Pt, c: Pt) -> Self {
        let orientation = orient_pts(&a, &b, &c);
        if orientation != Ordering::Equal {
            return Hull::Triangle { a, b, c, orientation };
        }
        if a == b && b == c {
            return Hull::Point(a);
        }
        // collinear: the hull is the longest of the three segments
        let pairs = [(&a, &b), (&a, &c), (&b, &c)];
        let (u, v) = pairs
            .iter()
            .max_by(|p, q| dist2(p.0, p.1).cmp(&dist2(q.0, q.1)))
            .expect("three pairs");
        Hull::Segment {
            u: (*u).clone(),
            v: (*v).clone(),
        }
    }

    pub(crate) fn contains(&self, p: &HPt) -> bool {
        match self {
            Hull::Triangle { a, b, c, orientation } => {
                let wrong = orientation.reverse();
                orient(a, b, p) != wrong && orient(b, c, p) != wrong && orient(c, a, p) != wrong
            }
            Hull::Segment { u, v } => orient(u, v, p) == Ordering::Equal && ahead(u, v, p) && ahead(v, u, p),
            Hull::Point(a) => p.x == &a.x * &p.w && p.y == &a.y * &p.w,
        }
    }
}

/// Proper crossing of open segments `p1p2` and `p3p4`, if any.
fn crossing(p1: &Pt, p2: &Pt, p3: &Pt, p4: &Pt) -> Option<HPt> {
    let rx = &p2.x - &p1.x;
    let ry = &p2.y - &p1.y;
    let sx = &p4.x - &p3.x;
    let sy = &p4.y - &p3.y;
    let mut den = &rx * &sy - &ry * &sx;
    if den.is_zero() {
        return None;
    }
    let qx = &p3.x - &p1.x;
    let qy = &p3.y - &p1.y;
    let mut t = &qx * &sy - &qy * &sx;
    let mut u = &qx * &ry - &qy * &rx;
    if den.is_negative() {
        den = -den;
        t = -t;
        u = -u;
    }
    let strictly_inside = |v: &BigInt| v.is_positive() && v < &den;
    if !strictly_inside(&t) || !strictly_inside(&u) {
        return None;
    }
    Some(HPt {
        x: &p1.x * &den + &t * &rx,
        y: &p1.y * &den + &t * &ry,
        w: den,
    })
}

pub(crate) struct Planar {
    scale: Scaled,
    points: Vec<Pt>,
    hulls: Vec<Hull>,
    /// distinct edges of top cells, as vertex pairs
    segments: Vec<(usize, usize)>,
}

impl Planar {
    pub(crate) fn new(x: &SimplicialComplex, phi: &Placement) -> Self {
        Self::with_extra(x, phi, &[])
    }

    /// Includes `extra` coordinates in the common scale so that query
    /// points convert exactly.
    pub(crate) fn with_extra(x: &SimplicialComplex, phi: &Placement, extra: &[f64]) -> Self {
        let scale = Scaled::for_values(phi.coords().iter().flatten().chain(extra.iter()));
        let points: Vec<Pt> = phi
            .coords()
            .iter()
            .map(|c| Pt {
                x: scale.int(c[0]),
                y: scale.int(c[1]),
            })
            .collect();
        let mut segments = Vec::new();
        let mut hulls = Vec::new();
        for cell in x.top_cells() {
            let v = cell.vertices();
            hulls.push(Hull::new(points[v[0]].clone(), points[v[1]].clone(), points[v[2]].clone()));
            segments.extend([(v[0], v[1]), (v[0], v[2]), (v[1], v[2])]);
        }
        segments.sort_unstable();
        segments.dedup();
        Planar {
            scale,
            points,
            hulls,
            segments,
        }
    }

    pub(crate) fn point(&self, coords: &[f64]) -> HPt {
        HPt::from(&Pt {
            x: self.scale.int(coords[0]),
            y: self.scale.int(coords[1]),
        })
    }

    pub(crate) fn containing(&self, p: &HPt) -> Vec<bool> {
        self.hulls.iter().map(|h| h.contains(p)).collect()
    }

    pub(crate) fn depth(&self, p: &HPt) -> usize {
        self.hulls.iter().filter(|h| h.contains(p)).count()
    }

    pub(crate) fn witness_point(&self, w: &Witness) -> Option<HPt> {
        match *w {
            Witness::Vertex(v) => Some(HPt::from(&self.points[v])),
            Witness::Crossing(a, b) => {
                let p = &self.points;
                crossing(&p[a.0], &p[a.1], &p[b.0], &p[b.1])
            }
            Witness::Sample => None,
        }
    }

    /// Maximum depth over vertex images and proper edge crossings.
    pub(crate) fn max_depth(&self, used_vertices: &[usize]) -> DepthResult {
        let mut candidates: Vec<Witness> = used_vertices.iter().map(|&v| Witness::Vertex(v)).collect();
        for (i, a) in self.segments.iter().enumerate() {
            for b in &self.segments[i + 1..] {
                let shared = a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
                if !shared {
                    candidates.push(Witness::Crossing(*a, *b));
                }
            }
        }
        let best = candidates
            .par_iter()
            .enumerate()
            .filter_map(|(i, w)| self.witness_point(w).map(|p| (self.depth(&p), i)))
            .reduce_with(|a, b| match a.0.cmp(&b.0) {
                Ordering::Greater => a,
                Ordering::Less => b,
                Ordering::Equal => {
                    if a.1 <= b.1 {
                        a
                    } else {
                        b
                    }
                }
            });
        let (depth, idx) = best.expect("vertex candidates exist");
        let witness = candidates[idx];
        let p = self.witness_point(&witness).expect("candidate has a point");
        DepthResult::new(p.to_f64(&self.scale), witness, depth, self.containing(&p), false)
    }
}

/// Exact maximum stabbing depth of closed intervals on the line.
pub(crate) fn max_depth_line(x: &SimplicialComplex, phi: &Placement) -> DepthResult {
    let intervals: Vec<(f64, f64)> = x
        .top_cells()
        .iter()
        .map(|e| {
            let a = phi.coords()[e.vertices()[0]][0];
            let b = phi.coords()[e.vertices()[1]][0];
            (a.min(b), a.max(b))
        })
        .collect();
    // starts sort before ends at equal coordinates
    let mut events: Vec<(f64, u8)> = Vec::with_capacity(2 * intervals.len());
    for &(lo, hi) in &intervals {
        events.push((lo, 0));
        events.push((hi, 1));
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut open = 0usize;
    let mut best = (0usize, f64::NAN);
    for (pos, kind) in events {
        if kind == 0 {
            open += 1;
            if open > best.0 {
                best = (open, pos);
            }
        } else {
            open -= 1;
        }
    }
    let at = best.1;
    let vertex = phi
        .coords()
        .iter()
        .position(|c| c[0] == at)
        .expect("interval endpoints are vertex images");
    let containing: Vec<bool> = intervals.iter().map(|&(lo, hi)| lo <= at && at <= hi).collect();
    DepthResult::new(vec![at], Witness::Vertex(vertex), best.0, containing, false)
}

pub(crate) fn depth_line(x: &SimplicialComplex, phi: &Placement, at: f64) -> usize {
    x.top_cells()
        .iter()
        .filter(|e| {
            let a = phi.coords()[e.vertices()[0]][0];
            let b = phi.coords()[e.vertices()[1]][0];
            a.min(b) <= at && at <= a.max(b)
        })
        .count()
}
