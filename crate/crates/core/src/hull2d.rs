//! Integer hulls and integer feasibility in the plane.
//!
//! Pointed polyhedra are handled by scanning integer columns of a candidate
//! region: the vertex hull plus the half-open parallelepiped spanned by the
//! integer extreme rays. Any integer point outside that region differs from
//! one inside it by a nonnegative integer combination of rays.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{integer_point_on_line, perp2, IntVec};
use crate::poly::planar::convex_hull_points;
use crate::poly::{h_to_v_2d, is_feasible, v_to_h_2d, HPoly, Halfspace, VPoly};
use crate::ratmath::{ceil_int, cross2, floor_int, QVec, Rational};

/// A simplicial cone `apex + cone(r1, r2)` in the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone2 {
    apex: QVec,
    rays: [IntVec; 2],
}

impl Cone2 {
    pub fn new(apex: QVec, r1: IntVec, r2: IntVec) -> Result<Self> {
        if apex.dim() != 2 || r1.dim() != 2 || r2.dim() != 2 {
            return Err(Error::InvalidInput("cone data must be planar".into()));
        }
        if !r1.is_primitive() || !r2.is_primitive() {
            return Err(Error::InvalidInput("cone rays must be primitive".into()));
        }
        if cross2(&r1.to_qvec(), &r2.to_qvec()).is_zero() {
            return Err(Error::InvalidInput("cone rays must be independent".into()));
        }
        Ok(Cone2 {
            apex,
            rays: [r1, r2],
        })
    }

    pub fn apex(&self) -> &QVec {
        &self.apex
    }

    pub fn rays(&self) -> &[IntVec; 2] {
        &self.rays
    }

    /// The two facet inequalities; facet `i` is parallel to ray `i`.
    pub fn to_hpoly(&self) -> HPoly {
        let hs = (0..2)
            .map(|i| {
                let mut a = perp2(&self.rays[i]);
                if a.dot(&self.rays[1 - i]).is_positive() {
                    a = a.neg();
                }
                let b = a.dot_q(&self.apex);
                Halfspace::new(a, b).expect("rays are nonzero")
            })
            .collect();
        HPoly::new(2, hs).expect("planar")
    }

    pub fn to_vpoly(&self) -> VPoly {
        VPoly {
            dim: 2,
            vertices: vec![self.apex.clone()],
            rays: self.rays.to_vec(),
            lineality: Vec::new(),
        }
    }
}

/// `<a, x> <= floor(b)`.
pub fn integer_hull_halfspace(h: &Halfspace) -> Halfspace {
    h.with_rhs(Rational::from_integer(floor_int(h.rhs())))
}

/// Integer hull of the slab `lo <= <a, x> <= hi` for primitive `a`, as the
/// rounded bounds, or `None` when no integer level fits.
pub fn integer_hull_strip(lo: &Rational, hi: &Rational) -> Option<(BigInt, BigInt)> {
    let (l, h) = (ceil_int(lo), floor_int(hi));
    (l <= h).then_some((l, h))
}

/// Integer points with extreme second coordinate in each integer column of
/// `p` within `[x_lo, x_hi]`. Stops at the first point when `first_only`.
fn column_extremes(p: &HPoly, x_lo: &BigInt, x_hi: &BigInt, first_only: bool) -> Vec<QVec> {
    let mut out = Vec::new();
    let mut x = x_lo.clone();
    while &x <= x_hi {
        let xq = Rational::from_integer(x.clone());
        let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
        let mut ok = true;
        for h in p.halfspaces() {
            let a = &h.normal().0;
            let rest = h.rhs() - &xq * Rational::from_integer(a[0].clone());
            if a[1].is_zero() {
                if rest.is_negative() {
                    ok = false;
                    break;
                }
                continue;
            }
            let bound = rest / Rational::from_integer(a[1].clone());
            if a[1].is_positive() {
                if hi.as_ref().is_none_or(|v| &bound < v) {
                    hi = Some(bound);
                }
            } else if lo.as_ref().is_none_or(|v| &bound > v) {
                lo = Some(bound);
            }
        }
        if ok {
            let (lo, hi) = match (lo, hi) {
                (Some(l), Some(h)) => (ceil_int(&l), floor_int(&h)),
                // Columns are only scanned over bounded candidate regions.
                _ => panic!("column scan over an unbounded column"),
            };
            if lo <= hi {
                out.push(QVec::from_bigints(&[x.clone(), lo.clone()]));
                if first_only {
                    return out;
                }
                if lo != hi {
                    out.push(QVec::from_bigints(&[x.clone(), hi]));
                }
            }
        }
        x += 1;
    }
    out
}

/// Bounding box of `conv(vertices) + {sum l_i r_i : 0 <= l_i <= 1}`.
fn candidate_box(vertices: &[QVec], rays: &[IntVec]) -> [(BigInt, BigInt); 2] {
    let mut out: [(BigInt, BigInt); 2] = Default::default();
    for (c, slot) in out.iter_mut().enumerate() {
        let mut lo = vertices
            .iter()
            .map(|v| v[c].clone())
            .min()
            .expect("nonempty");
        let mut hi = vertices
            .iter()
            .map(|v| v[c].clone())
            .max()
            .expect("nonempty");
        for r in rays {
            let e = Rational::from_integer(r.0[c].clone());
            if e.is_negative() {
                lo += e;
            } else {
                hi += e;
            }
        }
        *slot = (ceil_int(&lo), floor_int(&hi));
    }
    out
}

/// The candidate region of a pointed polyhedron, cut down to an H-polyhedron
/// whose columns are bounded: `V` intersected with its candidate box.
fn boxed(p: &HPoly, bx: &[(BigInt, BigInt); 2]) -> HPoly {
    let mut hs: Vec<Halfspace> = p.halfspaces().to_vec();
    let b = |v: &BigInt| Rational::from_integer(v.clone());
    hs.push(Halfspace::from_i64(&[0, 1], b(&bx[1].1)));
    hs.push(Halfspace::from_i64(&[0, -1], -b(&bx[1].0)));
    HPoly::new(2, hs).expect("planar")
}

/// Exact integer hull of a pointed planar polyhedron with integer rays.
pub fn integer_hull_pointed_2d(v: &VPoly) -> Result<VPoly> {
    if v.dim != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: v.dim,
        });
    }
    if !v.lineality.is_empty() {
        return Err(Error::InvalidInput("polyhedron must be pointed".into()));
    }
    if v.is_empty() {
        return Ok(VPoly::empty(2));
    }
    let h = v_to_h_2d(v);
    let bx = candidate_box(&v.vertices, &v.rays);
    let points = column_extremes(&boxed(&h, &bx), &bx[0].0, &bx[0].1, false);
    if points.is_empty() {
        return Ok(VPoly::empty(2));
    }
    let hull = VPoly {
        dim: 2,
        vertices: convex_hull_points(&points),
        rays: v.rays.clone(),
        lineality: Vec::new(),
    };
    // Points on the hull of the candidates may be swallowed once rays are
    // attached; a round trip keeps only true vertices.
    let mut out = h_to_v_2d(&v_to_h_2d(&hull));
    out.rays = v.rays.clone();
    Ok(out)
}

/// Some integer point of a planar polyhedron, or `None` if there is none.
pub fn integer_feasible_2d(p: &HPoly) -> Option<IntVec> {
    assert_eq!(p.dim(), 2, "integer_feasible_2d needs a planar polyhedron");
    if p.is_marked_empty() || !is_feasible(p) {
        return None;
    }
    let v = h_to_v_2d(p);
    match v.lineality.len() {
        0 => {
            let bx = candidate_box(&v.vertices, &v.rays);
            let pts = column_extremes(&boxed(p, &bx), &bx[0].0, &bx[0].1, true);
            pts.first()
                .map(|q| IntVec(q.to_integers().expect("integral")))
        }
        1 => {
            // A slab or half-plane: pick an admissible integer level of the
            // normal and solve on that line.
            let a = perp2(&v.lineality[0]);
            let levels: Vec<Rational> = v.vertices.iter().map(|x| a.dot_q(x)).collect();
            let up = v.rays.iter().any(|r| a.dot(r).is_positive());
            let down = v.rays.iter().any(|r| a.dot(r).is_negative());
            let lo = levels.iter().min().expect("nonempty");
            let hi = levels.iter().max().expect("nonempty");
            let c = match (down, up) {
                (true, true) => BigInt::zero(),
                (false, true) => ceil_int(lo),
                (true, false) => floor_int(hi),
                (false, false) => {
                    let (l, h) = integer_hull_strip(lo, hi)?;
                    debug_assert!(l <= h);
                    l
                }
            };
            let z = integer_point_on_line(&a, &c);
            debug_assert!(p.contains(&z.to_qvec()));
            Some(z)
        }
        _ => Some(IntVec(vec![BigInt::zero(), BigInt::zero()])),
    }
}

/// Number of integer points on the open segment or ray of the line
/// `<a, x> = c` cut out by the strict inequalities `others`; `None` when
/// there are infinitely many. `a` must be primitive and `c` integral.
pub(crate) fn integer_points_in_open_edge(
    a: &IntVec,
    c: &BigInt,
    others: &[Halfspace],
) -> (Option<BigInt>, Option<IntVec>) {
    let x0 = integer_point_on_line(a, c);
    let d = perp2(a);
    // Points x0 + t d; each strict inequality bounds t from one side.
    let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
    for h in others {
        let slope = h.normal().dot(&d);
        let rest = h.rhs() - h.value(&x0.to_qvec());
        if slope.is_zero() {
            if !rest.is_positive() {
                return (Some(BigInt::zero()), None);
            }
            continue;
        }
        let bound = rest / Rational::from_integer(slope.clone());
        if slope.is_positive() {
            if hi.as_ref().is_none_or(|v| &bound < v) {
                hi = Some(bound);
            }
        } else if lo.as_ref().is_none_or(|v| &bound > v) {
            lo = Some(bound);
        }
    }
    // Smallest integer strictly above `lo` and largest strictly below `hi`.
    let first = lo.as_ref().map(|l| floor_int(l) + 1);
    let last = hi.as_ref().map(|h| ceil_int(h) - 1);
    let point = |t: &BigInt| IntVec(vec![&x0.0[0] + t * &d.0[0], &x0.0[1] + t * &d.0[1]]);
    match (first, last) {
        (Some(f), Some(l)) => {
            if f > l {
                (Some(BigInt::zero()), None)
            } else {
                (Some(&l - &f + BigInt::one()), Some(point(&f)))
            }
        }
        (Some(f), None) => (None, Some(point(&f))),
        (None, Some(l)) => (None, Some(point(&l))),
        (None, None) => (None, Some(x0)),
    }
}
