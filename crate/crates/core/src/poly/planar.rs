//! Conversions between H- and V-representations in the plane.

use num_traits::{Signed, Zero};

use super::{remove_redundant, HPoly, Halfspace, VPoly};
use crate::lattice::{perp2, primitive_direction, IntVec};
use crate::ratmath::{cross2, QVec, Rational};

/// Convex hull vertices of a planar point set in counterclockwise order
/// (Andrew's monotone chain). Collinear points are dropped.
pub fn convex_hull_points(points: &[QVec]) -> Vec<QVec> {
    let mut pts: Vec<QVec> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let turn = |o: &QVec, a: &QVec, b: &QVec| cross2(&a.sub(o), &b.sub(o));
    let mut lower: Vec<QVec> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && !turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<QVec> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn rank_of(normals: &[&IntVec]) -> usize {
    let Some(first) = normals.iter().find(|a| !a.is_zero()) else {
        return 0;
    };
    if normals.iter().any(|a| !first.dot(&perp2(a)).is_zero()) {
        2
    } else {
        1
    }
}

fn push_unique<T: PartialEq>(v: &mut Vec<T>, x: T) {
    if !v.contains(&x) {
        v.push(x);
    }
}

/// Vertices, extreme rays and lineality of a planar H-polyhedron.
///
/// With a one-dimensional lineality space spanned by `d`, the "vertices"
/// are the points of the boundary lines closest to the origin.
pub fn h_to_v_2d(p: &HPoly) -> VPoly {
    assert_eq!(p.dim(), 2, "h_to_v_2d needs a planar polyhedron");
    if !super::is_feasible(p) {
        return VPoly::empty(2);
    }
    let hs = p.halfspaces();
    let normals: Vec<&IntVec> = hs.iter().map(Halfspace::normal).collect();
    match rank_of(&normals) {
        0 => VPoly {
            dim: 2,
            vertices: vec![QVec::zeros(2)],
            rays: Vec::new(),
            lineality: vec![IntVec::from_i64(&[1, 0]), IntVec::from_i64(&[0, 1])],
        },
        1 => {
            let a = normals[0].clone();
            let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
            for h in hs {
                if h.normal() == &a {
                    if hi.as_ref().is_none_or(|v| h.rhs() < v) {
                        hi = Some(h.rhs().clone());
                    }
                } else {
                    let v = -h.rhs().clone();
                    if lo.as_ref().is_none_or(|l| &v > l) {
                        lo = Some(v);
                    }
                }
            }
            let aq = a.to_qvec();
            let norm2 = aq.dot(&aq);
            let foot = |t: &Rational| aq.scale(&(t / &norm2));
            let mut vertices = Vec::new();
            let mut rays = Vec::new();
            match &lo {
                Some(l) => vertices.push(foot(l)),
                None => rays.push(a.neg()),
            }
            match &hi {
                Some(h) => push_unique(&mut vertices, foot(h)),
                None => rays.push(a.clone()),
            }
            vertices.sort();
            VPoly {
                dim: 2,
                vertices,
                rays,
                lineality: vec![perp2(&a)],
            }
        }
        _ => {
            let mut vertices: Vec<QVec> = Vec::new();
            for i in 0..hs.len() {
                for j in i + 1..hs.len() {
                    let (a, b) = (hs[i].normal_q(), hs[j].normal_q());
                    let det = cross2(&a, &b);
                    if det.is_zero() {
                        continue;
                    }
                    let (ri, rj) = (hs[i].rhs(), hs[j].rhs());
                    let x = (ri * &b[1] - rj * &a[1]) / &det;
                    let y = (&a[0] * rj - &b[0] * ri) / &det;
                    let v = QVec(vec![x, y]);
                    if p.contains(&v) {
                        push_unique(&mut vertices, v);
                    }
                }
            }
            vertices.sort();
            let mut rays: Vec<IntVec> = Vec::new();
            for a in &normals {
                for d in [perp2(a), perp2(a).neg()] {
                    if normals.iter().all(|b| !b.dot(&d).is_positive()) {
                        push_unique(&mut rays, d);
                    }
                }
            }
            rays.sort();
            VPoly {
                dim: 2,
                vertices,
                rays,
                lineality: Vec::new(),
            }
        }
    }
}

/// Irredundant H-representation of `conv(vertices) + cone(rays) +
/// span(lineality)` in the plane.
pub fn v_to_h_2d(v: &VPoly) -> HPoly {
    assert_eq!(v.dim, 2, "v_to_h_2d needs a planar polyhedron");
    if v.is_empty() {
        return HPoly::empty(2);
    }
    let mut dirs: Vec<IntVec> = v.rays.clone();
    for d in &v.lineality {
        dirs.push(d.clone());
        dirs.push(d.neg());
    }
    let hull = convex_hull_points(&v.vertices);
    // Candidate normals: every facet normal of the set is among these.
    let mut candidates: Vec<IntVec> = vec![
        IntVec::from_i64(&[1, 0]),
        IntVec::from_i64(&[-1, 0]),
        IntVec::from_i64(&[0, 1]),
        IntVec::from_i64(&[0, -1]),
    ];
    let mut edge_dirs: Vec<IntVec> = dirs.clone();
    for i in 0..hull.len() {
        let j = (i + 1) % hull.len();
        if i == j {
            continue;
        }
        let e = hull[j].sub(&hull[i]);
        if let Ok((p, _)) = primitive_direction(&e) {
            edge_dirs.push(p);
        }
    }
    for e in &edge_dirs {
        for c in [perp2(e), perp2(e).neg(), e.clone(), e.neg()] {
            push_unique(&mut candidates, c);
        }
    }
    let mut hs = Vec::new();
    for a in candidates {
        if dirs.iter().any(|d| a.dot(d).is_positive()) {
            continue;
        }
        let b = hull
            .iter()
            .map(|x| a.dot_q(x))
            .max()
            .expect("nonempty vertex list");
        hs.push(Halfspace::new(a, b).expect("nonzero candidate"));
    }
    let p = HPoly::new(2, hs).expect("planar halfspaces");
    remove_redundant(&p).expect("generated set is nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::set_equal;
    use crate::ratmath::rat;

    fn unit_square() -> HPoly {
        HPoly::new(
            2,
            vec![
                Halfspace::from_i64(&[1, 0], rat(1, 1)),
                Halfspace::from_i64(&[-1, 0], rat(0, 1)),
                Halfspace::from_i64(&[0, 1], rat(1, 1)),
                Halfspace::from_i64(&[0, -1], rat(0, 1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn square_round_trip() {
        let v = h_to_v_2d(&unit_square());
        assert_eq!(
            v.vertices,
            vec![
                QVec::from_ints(&[0, 0]),
                QVec::from_ints(&[0, 1]),
                QVec::from_ints(&[1, 0]),
                QVec::from_ints(&[1, 1])
            ]
        );
        assert!(v.rays.is_empty());
        let h = v_to_h_2d(&v);
        assert_eq!(h.halfspaces().len(), 4);
        assert!(set_equal(&h, &unit_square()));
    }

    #[test]
    fn example_cone_vertices() {
        let p = crate::poly::tests::example_cone();
        let v = h_to_v_2d(&p);
        assert_eq!(v.vertices, vec![QVec(vec![rat(1, 2), rat(3, 2)])]);
        let mut rays = v.rays.clone();
        rays.sort();
        assert_eq!(
            rays,
            vec![IntVec::from_i64(&[-1, -2]), IntVec::from_i64(&[1, -2])]
        );
        // Recession inequalities hold for both rays.
        for r in &rays {
            for h in p.halfspaces() {
                assert!(!h.normal().dot(r).is_positive());
            }
        }
        assert!(set_equal(&v_to_h_2d(&v), &p));
    }

    #[test]
    fn halfplane_convention() {
        let p = HPoly::new(2, vec![Halfspace::from_i64(&[0, 1], rat(0, 1))]).unwrap();
        let v = h_to_v_2d(&p);
        assert_eq!(v.vertices, vec![QVec::zeros(2)]);
        assert_eq!(v.lineality, vec![IntVec::from_i64(&[1, 0])]);
        assert_eq!(v.rays, vec![IntVec::from_i64(&[0, -1])]);
        assert!(set_equal(&v_to_h_2d(&v), &p));
    }

    #[test]
    fn degenerate_sets() {
        // A single point.
        let pt = VPoly::polytope(2, vec![QVec(vec![rat(1, 3), rat(2, 5)])]);
        let h = v_to_h_2d(&pt);
        assert!(h.contains(&pt.vertices[0]));
        assert!(!h.contains(&QVec(vec![rat(1, 3), rat(1, 2)])));
        // A segment.
        let seg = VPoly::polytope(2, vec![QVec::from_ints(&[0, 0]), QVec::from_ints(&[2, 1])]);
        let h = v_to_h_2d(&seg);
        assert!(h.contains(&QVec::from_ints(&[2, 1])));
        assert!(h.contains(&QVec(vec![rat(1, 1), rat(1, 2)])));
        assert!(!h.contains(&QVec::from_ints(&[1, 1])));
        assert!(!h.contains(&QVec::from_ints(&[4, 2])));
        let back = h_to_v_2d(&h);
        assert_eq!(back.vertices, seg.vertices);
        // Empty.
        assert!(v_to_h_2d(&VPoly::empty(2)).is_marked_empty());
        assert!(h_to_v_2d(&HPoly::empty(2)).is_empty());
    }

    #[test]
    fn hull_points_drops_interior_and_collinear() {
        let pts: Vec<QVec> = [[0, 0], [2, 0], [1, 0], [1, 1], [0, 2], [2, 2], [2, 2]]
            .iter()
            .map(|p| QVec::from_ints(p))
            .collect();
        assert_eq!(convex_hull_points(&pts).len(), 4);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rand_poly() -> impl Strategy<Value = HPoly> {
            proptest::collection::vec((-6i64..=6, -6i64..=6, -12i64..=12, 1i64..=4), 1..6).prop_map(
                |rows| {
                    let hs = rows
                        .into_iter()
                        .filter(|r| r.0 != 0 || r.1 != 0)
                        .map(|r| Halfspace::from_i64(&[r.0, r.1], rat(r.2, r.3)))
                        .collect();
                    HPoly::new(2, hs).unwrap()
                },
            )
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]
            #[test]
            fn round_trip_preserves_set(p in rand_poly()) {
                let v = h_to_v_2d(&p);
                let h = v_to_h_2d(&v);
                if v.is_empty() {
                    prop_assert!(!crate::poly::is_feasible(&p));
                    prop_assert!(h.is_marked_empty());
                } else {
                    prop_assert!(set_equal(&h, &p));
                    let v2 = h_to_v_2d(&h);
                    prop_assert_eq!(&v2.vertices, &v.vertices);
                    let r = remove_redundant(&p).unwrap();
                    prop_assert!(set_equal(&r, &h));
                }
            }
        }
    }
}
