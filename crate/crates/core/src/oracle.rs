//! Brute-force ground truth for tests: lattice point enumeration, a naive
//! convex hull and naive integer hulls.
//!
//! Nothing here calls the hull, LP or projection code of the main modules;
//! only the exact arithmetic of `ratmath` and the plain data types are
//! shared, so agreement between the two sides is meaningful.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::IntVec;
use crate::poly::{HPoly, Halfspace, VPoly};
use crate::ratmath::{ceil_int, floor_int, rank_exact, solve_exact, QMat, QVec, Rational};

/// An axis-parallel box `lower <= x <= upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Box {
    pub lower: QVec,
    pub upper: QVec,
}

impl Box {
    pub fn new(lower: QVec, upper: QVec) -> Result<Self> {
        if lower.dim() != upper.dim() {
            return Err(Error::DimensionMismatch {
                expected: lower.dim(),
                found: upper.dim(),
            });
        }
        if lower.iter().zip(upper.iter()).any(|(l, u)| l > u) {
            return Err(Error::InvalidInput(
                "box lower bound exceeds upper bound".into(),
            ));
        }
        Ok(Box { lower, upper })
    }

    /// The cube `[-r, r]^n`.
    pub fn cube(n: usize, r: i64) -> Self {
        Box {
            lower: QVec::from_ints(&vec![-r; n]),
            upper: QVec::from_ints(&vec![r; n]),
        }
    }
}

fn to_i64(v: &BigInt) -> i64 {
    v.to_i64().expect("oracle works at desk scale")
}

/// Integer points of `p` inside `bx`, in lexicographic order.
pub fn enum_integer_points(p: &HPoly, bx: &Box) -> Vec<IntVec> {
    if p.is_marked_empty() {
        return Vec::new();
    }
    let n = p.dim();
    assert_eq!(bx.lower.dim(), n, "box dimension");
    let lo: Vec<i64> = bx.lower.iter().map(|v| to_i64(&ceil_int(v))).collect();
    let hi: Vec<i64> = bx.upper.iter().map(|v| to_i64(&floor_int(v))).collect();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Vec::new();
    }
    // For integer x, <a, x> <= b is the same as <a, x> <= floor(b).
    let rows: Vec<(Vec<i128>, i128)> = p
        .halfspaces()
        .iter()
        .map(|h| {
            (
                h.normal().0.iter().map(|e| i128::from(to_i64(e))).collect(),
                i128::from(to_i64(&floor_int(h.rhs()))),
            )
        })
        .collect();
    let mut out = Vec::new();
    let mut x = lo.clone();
    loop {
        let inside = rows.iter().all(|(a, b)| {
            a.iter()
                .zip(&x)
                .map(|(ai, xi)| ai * i128::from(*xi))
                .sum::<i128>()
                <= *b
        });
        if inside {
            out.push(IntVec::from_i64(&x));
        }
        // Odometer step, last coordinate fastest.
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if x[i] < hi[i] {
                x[i] += 1;
                x[i + 1..n].copy_from_slice(&lo[i + 1..n]);
                break;
            }
        }
    }
}

fn orient(o: &QVec, a: &QVec, b: &QVec) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Exact planar convex hull; vertices counterclockwise, collinear and
/// duplicate points dropped.
pub fn naive_hull_2d(points: &[QVec]) -> VPoly {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return VPoly::polytope(2, pts);
    }
    let mut hull: Vec<QVec> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let seq: Vec<&QVec> = if pass == 0 {
            pts.iter().collect()
        } else {
            pts.iter().rev().collect()
        };
        for p in seq {
            while hull.len() >= start + 2
                && !orient(&hull[hull.len() - 2], &hull[hull.len() - 1], p).is_positive()
            {
                hull.pop();
            }
            hull.push(p.clone());
        }
        hull.pop();
    }
    VPoly::polytope(2, hull)
}

/// `conv(integer points of p in bx) + cone(rec)`. Dimensions above two keep
/// every enumerated point as a generator.
pub fn naive_integer_hull(p: &HPoly, bx: &Box, rec: &[IntVec]) -> VPoly {
    let pts = enum_integer_points(p, bx);
    if pts.is_empty() {
        return VPoly::empty(p.dim());
    }
    let mut v = if p.dim() == 2 {
        // Lexicographic order groups each column; its two ends suffice.
        let mut ends: Vec<QVec> = Vec::new();
        for (i, z) in pts.iter().enumerate() {
            let first = i == 0 || pts[i - 1].0[0] != z.0[0];
            let last = i + 1 == pts.len() || pts[i + 1].0[0] != z.0[0];
            if first || last {
                ends.push(z.to_qvec());
            }
        }
        naive_hull_2d(&ends)
    } else {
        VPoly::polytope(p.dim(), pts.iter().map(IntVec::to_qvec).collect())
    };
    v.rays = rec.to_vec();
    v
}

/// Independent planar V-representation: points whose convex hull plus the
/// cone of `rec` is `p`. Lineality directions appear as opposite rays.
/// `None` when `p` is empty.
pub fn vrep_2d(p: &HPoly) -> Option<(Vec<QVec>, Vec<IntVec>)> {
    assert_eq!(p.dim(), 2);
    if p.is_marked_empty() {
        return None;
    }
    let hs = p.halfspaces();
    let perp = |a: &IntVec| IntVec(vec![-a.0[1].clone(), a.0[0].clone()]);
    let Some(first) = hs.first() else {
        let e = [[1, 0], [-1, 0], [0, 1], [0, -1]]
            .iter()
            .map(|d| IntVec::from_i64(d))
            .collect();
        return Some((vec![QVec::zeros(2)], e));
    };
    let a = first.normal().clone();
    let d = perp(&a);
    let parallel = hs.iter().all(|h| h.normal().dot(&d).is_zero());
    if parallel {
        let aq = a.to_qvec();
        let norm2 = aq.dot(&aq);
        let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
        for h in hs {
            if h.normal() == &a {
                hi = Some(hi.map_or(h.rhs().clone(), |v| v.min(h.rhs().clone())));
            } else {
                let v = -h.rhs().clone();
                lo = Some(lo.map_or(v.clone(), |l| l.max(v)));
            }
        }
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l > h {
                return None;
            }
        }
        let mut pts = Vec::new();
        let mut rec = vec![d.clone(), d.neg()];
        match &lo {
            Some(l) => pts.push(aq.scale(&(l / &norm2))),
            None => rec.push(a.neg()),
        }
        match &hi {
            Some(h) => pts.push(aq.scale(&(h / &norm2))),
            None => rec.push(a.clone()),
        }
        return Some((pts, rec));
    }
    let mut pts: Vec<QVec> = Vec::new();
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            let (a, b) = (hs[i].normal_q(), hs[j].normal_q());
            let det = &a[0] * &b[1] - &a[1] * &b[0];
            if det.is_zero() {
                continue;
            }
            let (ri, rj) = (hs[i].rhs(), hs[j].rhs());
            let x = QVec(vec![
                (ri * &b[1] - rj * &a[1]) / &det,
                (&a[0] * rj - &b[0] * ri) / &det,
            ]);
            if hs.iter().all(|h| h.contains(&x)) && !pts.contains(&x) {
                pts.push(x);
            }
        }
    }
    if pts.is_empty() {
        return None;
    }
    let mut rec: Vec<IntVec> = Vec::new();
    for h in hs {
        for r in [perp(h.normal()), perp(h.normal()).neg()] {
            if hs.iter().all(|g| !g.normal().dot(&r).is_positive()) && !rec.contains(&r) {
                rec.push(r);
            }
        }
    }
    Some((pts, rec))
}

/// A box containing every vertex candidate of the integer hull of planar
/// `p`, with the recession generators; `None` when `p` is empty.
pub fn certified_box_2d(p: &HPoly) -> Option<(Box, Vec<IntVec>)> {
    let (pts, rec) = vrep_2d(p)?;
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for c in 0..2 {
        let mut lo = pts.iter().map(|v| v[c].clone()).min().unwrap();
        let mut hi = pts.iter().map(|v| v[c].clone()).max().unwrap();
        for r in &rec {
            let e = Rational::from_integer(r.0[c].clone());
            if e.is_negative() {
                lo += e;
            } else {
                hi += e;
            }
        }
        lower.push(lo - Rational::from_integer(1.into()));
        upper.push(hi + Rational::from_integer(1.into()));
    }
    Some((
        Box {
            lower: QVec(lower),
            upper: QVec(upper),
        },
        rec,
    ))
}

/// Oracle integer hull of a planar polyhedron.
pub fn oracle_integer_hull_2d(p: &HPoly) -> VPoly {
    match certified_box_2d(p) {
        None => VPoly::empty(2),
        Some((bx, rec)) => naive_integer_hull(p, &bx, &rec),
    }
}

/// `target` lies in the cone spanned by `gens` (exact, by Carathéodory:
/// some linearly independent subfamily represents it with nonnegative
/// coefficients).
fn in_cone(gens: &[QVec], target: &QVec) -> bool {
    if target.is_zero() {
        return true;
    }
    let m = target.dim();
    let mut idx: Vec<usize> = Vec::new();
    fn rec(gens: &[QVec], target: &QVec, m: usize, start: usize, idx: &mut Vec<usize>) -> bool {
        if !idx.is_empty() {
            let cols = QMat::new(
                (0..m)
                    .map(|r| QVec(idx.iter().map(|&j| gens[j][r].clone()).collect()))
                    .collect(),
                idx.len(),
            )
            .unwrap();
            if rank_exact(&cols) == idx.len() {
                if let Ok(Some(lam)) = solve_exact(&cols, target) {
                    if lam.iter().all(|l| !l.is_negative()) {
                        return true;
                    }
                }
            } else {
                return false;
            }
        }
        if idx.len() == m {
            return false;
        }
        for j in start..gens.len() {
            idx.push(j);
            if rec(gens, target, m, j + 1, idx) {
                return true;
            }
            idx.pop();
        }
        false
    }
    rec(gens, target, m, 0, &mut idx)
}

fn homogenized(v: &VPoly) -> Vec<QVec> {
    let one = Rational::from_integer(1.into());
    let mut g: Vec<QVec> = v
        .vertices
        .iter()
        .map(|x| {
            let mut e = x.0.clone();
            e.push(one.clone());
            QVec(e)
        })
        .collect();
    for r in v.rays.iter().chain(&v.lineality).chain(
        v.lineality
            .iter()
            .map(IntVec::neg)
            .collect::<Vec<_>>()
            .iter(),
    ) {
        let mut e = r.to_qvec().0;
        e.push(Rational::zero());
        g.push(QVec(e));
    }
    g
}

/// Point membership in `conv(vertices) + cone(rays) + span(lineality)`.
pub fn vpoly_contains(v: &VPoly, x: &QVec) -> bool {
    if v.is_empty() {
        return false;
    }
    let mut t = x.0.clone();
    t.push(Rational::from_integer(1.into()));
    in_cone(&homogenized(v), &QVec(t))
}

/// Direction membership in the recession cone of `v`.
pub fn vpoly_recedes(v: &VPoly, d: &IntVec) -> bool {
    let mut t = d.to_qvec().0;
    t.push(Rational::zero());
    in_cone(&homogenized(v), &QVec(t))
}

fn halfspaces_hold(hs: &[Halfspace], v: &VPoly) -> bool {
    hs.iter().all(|h| {
        v.vertices.iter().all(|x| h.contains(x))
            && v.rays.iter().all(|r| !h.normal().dot(r).is_positive())
            && v.lineality.iter().all(|d| h.normal().dot(d).is_zero())
    })
}

/// Set equality of a planar H-polyhedron `m` and an oracle V-polyhedron `o`
/// by mutual inclusion: generators of `o` satisfy `m`, and the points and
/// recession generators of `m` lie in `o`.
pub fn hull_equals_2d(m: &HPoly, o: &VPoly) -> bool {
    let mv = vrep_2d(m);
    match (mv, o.is_empty()) {
        (None, true) => true,
        (None, false) | (Some(_), true) => false,
        (Some((pts, rec)), false) => {
            halfspaces_hold(m.halfspaces(), o)
                && pts.iter().all(|x| vpoly_contains(o, x))
                && rec.iter().all(|d| vpoly_recedes(o, d))
        }
    }
}
