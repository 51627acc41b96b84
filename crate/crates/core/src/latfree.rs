//! Planar lattice-free sets: classification of maximal ones, the facet
//! push-out procedure for lattice-free quadrilaterals, integer Helly
//! certificates, and a checker for the facet-pair description of planar
//! integer hulls.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::closures::{facet_pair_closure, two_halfspace_hull};
use crate::error::{Error, Result};
use crate::hull2d::{integer_feasible_2d, integer_points_in_open_edge};
use crate::lattice::{integer_point_on_line, IntVec};
use crate::oracle::{hull_equals_2d, oracle_integer_hull_2d};
use crate::poly::{
    combinations, h_to_v_2d, intersect, is_feasible, remove_redundant, v_to_h_2d, HPoly, Halfspace,
    LpOutcome, VPoly,
};
use crate::ratmath::{ceil_int, floor_int, rank_exact, QMat, QVec, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatFreeTag {
    NotLatticeFree,
    LatticeFreeNotMaximal,
    Split,
    Triangle,
    Quadrilateral,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatFreeClass {
    pub tag: LatFreeTag,
    /// Facets in counterclockwise order of their outer normals.
    pub facets: Vec<Halfspace>,
    /// For maximal classes, one integer point per facet (same order), in the
    /// relative interior except for the two boundary lines of a split.
    pub witnesses: Vec<IntVec>,
    /// For sets that are not lattice-free, an integer point of the interior.
    pub interior_point: Option<IntVec>,
}

impl LatFreeClass {
    /// Re-checks the witnesses against the tag.
    pub fn verify(&self) -> bool {
        match self.tag {
            LatFreeTag::NotLatticeFree => self.interior_point.as_ref().is_some_and(|z| {
                self.facets
                    .iter()
                    .all(|h| h.contains_strictly(&z.to_qvec()))
            }),
            LatFreeTag::LatticeFreeNotMaximal => true,
            LatFreeTag::Split => {
                self.facets.len() == 2
                    && self.witnesses.len() == 2
                    && self
                        .facets
                        .iter()
                        .zip(&self.witnesses)
                        .all(|(h, w)| h.value(&w.to_qvec()) == *h.rhs())
            }
            LatFreeTag::Triangle | LatFreeTag::Quadrilateral => {
                let n = self.facets.len();
                let expected = if self.tag == LatFreeTag::Triangle {
                    3
                } else {
                    4
                };
                if n != expected || self.witnesses.len() != n {
                    return false;
                }
                let on_edges =
                    (0..n).all(|i| in_relative_interior(&self.facets, i, &self.witnesses[i]));
                on_edges
                    && (self.tag == LatFreeTag::Triangle || is_unit_parallelogram(&self.witnesses))
            }
        }
    }
}

fn in_relative_interior(facets: &[Halfspace], i: usize, z: &IntVec) -> bool {
    let zq = z.to_qvec();
    facets[i].value(&zq) == *facets[i].rhs()
        && facets
            .iter()
            .enumerate()
            .all(|(j, h)| j == i || h.contains_strictly(&zq))
}

/// Consecutive points `v1..v4` form a parallelogram of area one.
fn is_unit_parallelogram(v: &[IntVec]) -> bool {
    if v.len() != 4 {
        return false;
    }
    let q: Vec<QVec> = v.iter().map(IntVec::to_qvec).collect();
    let diagonals_bisect = q[0].add(&q[2]) == q[1].add(&q[3]);
    let area = crate::ratmath::cross2(&q[1].sub(&q[0]), &q[3].sub(&q[0]));
    diagonals_bisect && area.abs().is_one()
}

/// Counterclockwise angular order of planar directions starting at the
/// positive first axis.
fn angle_cmp(u: &IntVec, v: &IntVec) -> Ordering {
    let half = |w: &IntVec| {
        if w.0[1].is_positive() || (w.0[1].is_zero() && w.0[0].is_positive()) {
            0
        } else {
            1
        }
    };
    half(u).cmp(&half(v)).then_with(|| {
        let cross = &u.0[0] * &v.0[1] - &u.0[1] * &v.0[0];
        if cross.is_positive() {
            Ordering::Less
        } else if cross.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// `{x : <a_i, x> <= ceil(b_i) - 1}`: its integer points are exactly the
/// integer points of the open set `{<a_i, x> < b_i}`.
fn open_integer_region(facets: &[Halfspace]) -> HPoly {
    let hs = facets
        .iter()
        .map(|h| h.with_rhs(Rational::from_integer(ceil_int(h.rhs()) - BigInt::one())))
        .collect();
    HPoly::new(2, hs).expect("planar")
}

fn interior_integer_point(facets: &[Halfspace]) -> Option<IntVec> {
    integer_feasible_2d(&open_integer_region(facets))
}

fn affine_dimension(v: &VPoly) -> usize {
    let mut dirs: Vec<QVec> = v
        .vertices
        .iter()
        .skip(1)
        .map(|x| x.sub(&v.vertices[0]))
        .collect();
    dirs.extend(v.rays.iter().chain(&v.lineality).map(IntVec::to_qvec));
    if dirs.is_empty() {
        return 0;
    }
    rank_exact(&QMat::new(dirs, v.dim).expect("uniform dims"))
}

pub fn classify_max_latfree_2d(v: &VPoly) -> Result<LatFreeClass> {
    if v.dim != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: v.dim,
        });
    }
    if v.is_empty() || affine_dimension(v) < 2 {
        return Err(Error::LowerDimensional);
    }
    let mut facets: Vec<Halfspace> = v_to_h_2d(v).halfspaces().to_vec();
    facets.sort_by(|a, b| angle_cmp(a.normal(), b.normal()));
    let class = |tag, witnesses, interior_point| LatFreeClass {
        tag,
        facets: facets.clone(),
        witnesses,
        interior_point,
    };
    if let Some(z) = interior_integer_point(&facets) {
        return Ok(class(LatFreeTag::NotLatticeFree, Vec::new(), Some(z)));
    }
    let not_maximal = || class(LatFreeTag::LatticeFreeNotMaximal, Vec::new(), None);
    if !v.lineality.is_empty() {
        // A slab between two parallel lines.
        if facets.len() != 2 || facets.iter().any(|h| !h.rhs().is_integer()) {
            return Ok(not_maximal());
        }
        let width = facets[0].rhs() + facets[1].rhs();
        if !width.is_one() {
            return Ok(not_maximal());
        }
        let w = facets
            .iter()
            .map(|h| integer_point_on_line(h.normal(), &h.rhs().to_integer()))
            .collect();
        return Ok(class(LatFreeTag::Split, w, None));
    }
    if !v.is_bounded() || !(3..=4).contains(&facets.len()) {
        return Ok(not_maximal());
    }
    let mut counts = Vec::new();
    let mut witnesses = Vec::new();
    for i in 0..facets.len() {
        let h = &facets[i];
        if !h.rhs().is_integer() {
            return Ok(not_maximal());
        }
        let others: Vec<Halfspace> = facets
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let (count, point) =
            integer_points_in_open_edge(h.normal(), &h.rhs().to_integer(), &others);
        let (Some(count), Some(point)) = (count, point) else {
            return Ok(not_maximal());
        };
        counts.push(count);
        witnesses.push(point);
    }
    if facets.len() == 3 {
        return Ok(class(LatFreeTag::Triangle, witnesses, None));
    }
    if counts.iter().all(One::is_one) && is_unit_parallelogram(&witnesses) {
        return Ok(class(LatFreeTag::Quadrilateral, witnesses, None));
    }
    Ok(not_maximal())
}

/// One relaxation `delta -> delta'` of a facet during the push-out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushStep {
    /// Position in the clockwise order (0 is the facet with integer points).
    pub position: usize,
    pub from: Rational,
    pub to: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PushOutOutcome {
    /// Dropping the facet at `dropped` adds no integer points, so the
    /// integer hull of the two original facets at `pair` already lies
    /// beyond the first facet.
    Early {
        dropped: usize,
        pair: (usize, usize),
    },
    /// All three facets were pushed, giving a maximal lattice-free
    /// quadrilateral with one integer point per facet.
    Maximal {
        quadrilateral: HPoly,
        witnesses: Vec<IntVec>,
        area: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushOutTrace {
    /// Input indices of the facets in clockwise order, starting with the
    /// facet that has an integer point in its relative interior.
    pub order: [usize; 4],
    pub steps: Vec<PushStep>,
    pub outcome: PushOutOutcome,
    /// The reverse of the first facet contains the intersection of the
    /// integer hulls of the three pairs among the other facets.
    pub conclusion_holds: bool,
}

fn line_region(base: &[Halfspace], h: &Halfspace, level: &BigInt) -> HPoly {
    let l = Rational::from_integer(level.clone());
    let mut hs = base.to_vec();
    hs.push(h.with_rhs(l.clone()));
    hs.push(h.with_rhs(l).complement_closure());
    HPoly::new(2, hs).expect("planar")
}

/// Replays the push-out on a lattice-free quadrilateral whose first facet
/// (in clockwise order) carries an integer point and whose other three
/// facet lines carry none.
pub fn push_out(p: &HPoly) -> Result<PushOutTrace> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    let r = remove_redundant(p).map_err(|_| Error::Hypothesis("polygon is empty".into()))?;
    if r.halfspaces().len() != 4 {
        return Err(Error::Hypothesis(format!(
            "expected four facets, found {}",
            r.halfspaces().len()
        )));
    }
    let index_of = |h: &Halfspace| {
        p.halfspaces()
            .iter()
            .position(|g| g == h)
            .expect("irredundant facets come from the input")
    };
    let mut ccw: Vec<Halfspace> = r.halfspaces().to_vec();
    ccw.sort_by(|a, b| angle_cmp(a.normal(), b.normal()));
    if let Some(z) = interior_integer_point(&ccw) {
        return Err(Error::Hypothesis(format!(
            "interior contains the integer point {z}"
        )));
    }
    let integral: Vec<usize> = (0..4).filter(|&i| ccw[i].rhs().is_integer()).collect();
    let first = match integral.as_slice() {
        [] => {
            return Err(Error::Hypothesis(
                "no facet has an integer point in its relative interior".into(),
            ))
        }
        [i] => *i,
        _ => {
            return Err(Error::Hypothesis(
                "more than one facet line contains integer points".into(),
            ))
        }
    };
    let others: Vec<Halfspace> = (0..4)
        .filter(|&j| j != first)
        .map(|j| ccw[j].clone())
        .collect();
    let (count, _) =
        integer_points_in_open_edge(ccw[first].normal(), &ccw[first].rhs().to_integer(), &others);
    if count.is_some_and(|c| c.is_zero()) {
        return Err(Error::Hypothesis(
            "the facet whose line has integer points has none in its relative interior".into(),
        ));
    }
    // Clockwise from the first facet.
    let cw: Vec<Halfspace> = (0..4).map(|k| ccw[(first + 4 - k) % 4].clone()).collect();
    let order = [
        index_of(&cw[0]),
        index_of(&cw[1]),
        index_of(&cw[2]),
        index_of(&cw[3]),
    ];
    let mut cur: Vec<Halfspace> = cw.clone();
    let mut steps = Vec::new();
    let mut outcome = None;
    for (target, pair) in [(2usize, (1usize, 3usize)), (1, (2, 3)), (3, (1, 2))] {
        let base: Vec<Halfspace> = (0..4)
            .filter(|&j| j != target)
            .map(|j| cur[j].clone())
            .collect();
        let h = &cur[target];
        let start = floor_int(h.rhs()) + BigInt::one();
        let mut beyond = base.clone();
        beyond.push(
            h.with_rhs(Rational::from_integer(start.clone()))
                .complement_closure(),
        );
        let Some(z) = integer_feasible_2d(&HPoly::new(2, beyond)?) else {
            outcome = Some(PushOutOutcome::Early {
                dropped: target,
                pair,
            });
            break;
        };
        // The smallest level of the pushed normal holding a new integer
        // point; levels are integers, so a scan up to z's level finds it.
        let top = h.normal().dot_q(&z.to_qvec()).to_integer();
        let mut level = start;
        while level < top && integer_feasible_2d(&line_region(&base, h, &level)).is_none() {
            level += 1;
        }
        let to = Rational::from_integer(level);
        steps.push(PushStep {
            position: target,
            from: h.rhs().clone(),
            to: to.clone(),
        });
        cur[target] = h.with_rhs(to);
        if let Some(z) = interior_integer_point(&cur) {
            return Err(Error::Hypothesis(format!(
                "pushing facet {target} put {z} in the interior"
            )));
        }
    }
    let outcome = match outcome {
        Some(o) => o,
        None => {
            let quad = HPoly::new(2, cur.clone())?;
            let class = classify_max_latfree_2d(&h_to_v_2d(&quad))?;
            if class.tag != LatFreeTag::Quadrilateral {
                return Err(Error::Hypothesis(format!(
                    "pushed polygon is {:?}, not a maximal quadrilateral",
                    class.tag
                )));
            }
            let q: Vec<QVec> = class.witnesses.iter().map(IntVec::to_qvec).collect();
            let area = crate::ratmath::cross2(&q[1].sub(&q[0]), &q[3].sub(&q[0])).abs();
            PushOutOutcome::Maximal {
                quadrilateral: quad,
                witnesses: class.witnesses,
                area,
            }
        }
    };
    let reaches = |region: &HPoly| {
        region.is_marked_empty()
            || match region.minimize(&cw[0].normal_q()) {
                LpOutcome::Optimal { value, .. } => value >= *cw[0].rhs(),
                LpOutcome::Infeasible => true,
                LpOutcome::Unbounded => false,
            }
    };
    let h23 = two_halfspace_hull(&cw[1], &cw[2])?;
    let h24 = two_halfspace_hull(&cw[1], &cw[3])?;
    let h34 = two_halfspace_hull(&cw[2], &cw[3])?;
    let mut conclusion_holds = reaches(&intersect(&[h23.clone(), h24.clone(), h34.clone()])?);
    if let PushOutOutcome::Early { pair, .. } = &outcome {
        let named = match pair {
            (1, 3) => &h24,
            (2, 3) => &h34,
            _ => &h23,
        };
        conclusion_holds &= reaches(named);
    }
    Ok(PushOutTrace {
        order,
        steps,
        outcome,
        conclusion_holds,
    })
}

/// A smallest set of at most four facet indices whose intersection has no
/// integer point; the lexicographically first among subsets of least size.
pub fn helly_certificate(p: &HPoly) -> Result<Vec<usize>> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    if integer_feasible_2d(p).is_some() {
        return Err(Error::IntegerFeasible);
    }
    let hs = p.halfspaces();
    for size in 1..=4.min(hs.len()) {
        for subset in combinations(hs.len(), size) {
            let sub = HPoly::new(2, subset.iter().map(|&i| hs[i].clone()).collect())?;
            if integer_feasible_2d(&sub).is_none() {
                return Ok(subset);
            }
        }
    }
    Err(Error::Hypothesis(
        "no integer-free subfamily of at most four facets".into(),
    ))
}

/// Whether the facet-pair closure of `p` equals the brute-force integer
/// hull (both empty counts as equal).
pub fn verify_2dih(p: &HPoly) -> Result<bool> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    let closure = if p.is_marked_empty() || !is_feasible(p) {
        HPoly::empty(2)
    } else {
        facet_pair_closure(p)?
    };
    Ok(hull_equals_2d(&closure, &oracle_integer_hull_2d(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::rat;

    fn poly(rows: &[([i64; 2], Rational)]) -> HPoly {
        HPoly::new(
            2,
            rows.iter()
                .map(|(a, b)| Halfspace::from_i64(a, b.clone()))
                .collect(),
        )
        .unwrap()
    }

    fn diamond() -> VPoly {
        VPoly::polytope(
            2,
            vec![
                QVec(vec![rat(1, 2), rat(-1, 2)]),
                QVec(vec![rat(3, 2), rat(1, 2)]),
                QVec(vec![rat(1, 2), rat(3, 2)]),
                QVec(vec![rat(-1, 2), rat(1, 2)]),
            ],
        )
    }

    #[test]
    fn canonical_classes() {
        let strip = h_to_v_2d(&poly(&[([1, 0], rat(1, 1)), ([-1, 0], rat(0, 1))]));
        let c = classify_max_latfree_2d(&strip).unwrap();
        assert_eq!(c.tag, LatFreeTag::Split);
        assert!(c.verify());

        let tri = VPoly::polytope(
            2,
            [[0, 0], [2, 0], [0, 2]]
                .iter()
                .map(|p| QVec::from_ints(p))
                .collect(),
        );
        let c = classify_max_latfree_2d(&tri).unwrap();
        assert_eq!(c.tag, LatFreeTag::Triangle);
        assert!(c.verify());
        let mut w = c.witnesses.clone();
        w.sort();
        assert_eq!(
            w,
            vec![
                IntVec::from_i64(&[0, 1]),
                IntVec::from_i64(&[1, 0]),
                IntVec::from_i64(&[1, 1])
            ]
        );

        let c = classify_max_latfree_2d(&diamond()).unwrap();
        assert_eq!(c.tag, LatFreeTag::Quadrilateral);
        assert!(c.verify());
        let mut w = c.witnesses.clone();
        w.sort();
        assert_eq!(
            w,
            [[0, 0], [0, 1], [1, 0], [1, 1]]
                .iter()
                .map(|p| IntVec::from_i64(p))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn other_classes() {
        let big = VPoly::polytope(
            2,
            [[0, 0], [3, 0], [0, 3]]
                .iter()
                .map(|p| QVec::from_ints(p))
                .collect(),
        );
        let c = classify_max_latfree_2d(&big).unwrap();
        assert_eq!(c.tag, LatFreeTag::NotLatticeFree);
        assert!(c.verify());
        let small = VPoly::polytope(
            2,
            [[0, 0], [1, 0], [0, 1]]
                .iter()
                .map(|p| QVec::from_ints(p))
                .collect(),
        );
        assert_eq!(
            classify_max_latfree_2d(&small).unwrap().tag,
            LatFreeTag::LatticeFreeNotMaximal
        );
        let seg = VPoly::polytope(2, vec![QVec::from_ints(&[0, 0]), QVec::from_ints(&[1, 1])]);
        assert!(matches!(
            classify_max_latfree_2d(&seg),
            Err(Error::LowerDimensional)
        ));
    }

    #[test]
    fn push_out_reaches_maximal_quadrilateral() {
        let p = poly(&[
            ([1, -1], rat(9, 10)),
            ([1, 1], rat(19, 10)),
            ([-1, 1], rat(9, 10)),
            ([-1, -1], rat(0, 1)),
        ]);
        let t = push_out(&p).unwrap();
        assert_eq!(t.order[0], 3);
        assert_eq!(t.steps.len(), 3);
        match &t.outcome {
            PushOutOutcome::Maximal {
                witnesses, area, ..
            } => {
                assert_eq!(witnesses.len(), 4);
                assert!(area.is_one());
            }
            o => panic!("unexpected {o:?}"),
        }
        assert!(t.conclusion_holds);
        for s in &t.steps {
            assert!(s.to > s.from);
        }
    }

    #[test]
    fn push_out_early_exit() {
        let p = poly(&[
            ([0, -1], rat(0, 1)),
            ([2, 1], rat(3, 2)),
            ([0, 1], rat(1, 2)),
            ([-2, 1], rat(1, 2)),
        ]);
        let t = push_out(&p).unwrap();
        assert_eq!(
            t.outcome,
            PushOutOutcome::Early {
                dropped: 2,
                pair: (1, 3)
            }
        );
        assert!(t.steps.is_empty());
        assert!(t.conclusion_holds);
    }

    #[test]
    fn push_out_rejects_integer_lines() {
        let p = poly(&[
            ([0, -1], rat(0, 1)),
            ([2, 1], rat(2, 1)),
            ([0, 1], rat(1, 2)),
            ([-2, 1], rat(1, 2)),
        ]);
        assert!(matches!(push_out(&p), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn helly_on_strip() {
        let p = poly(&[
            ([1, 0], rat(1, 3)),
            ([-1, 0], rat(-1, 4)),
            ([0, 1], rat(5, 1)),
        ]);
        assert_eq!(helly_certificate(&p).unwrap(), vec![0, 1]);
        let feasible = poly(&[([1, 0], rat(1, 1))]);
        assert_eq!(helly_certificate(&feasible), Err(Error::IntegerFeasible));
    }

    #[test]
    fn helly_on_hexagon() {
        // A hexagon around (1/2, 1/2) touching no integer point.
        let c = QVec(vec![rat(1, 2), rat(1, 2)]);
        let normals = [[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]];
        let hs = normals
            .iter()
            .map(|a| {
                let a = IntVec::from_i64(a);
                let b = a.dot_q(&c) + rat(1, 4);
                Halfspace::new(a, b).unwrap()
            })
            .collect();
        let p = HPoly::new(2, hs).unwrap();
        let cert = helly_certificate(&p).unwrap();
        assert!(cert.len() <= 4);
        let sub = HPoly::new(2, cert.iter().map(|&i| p.halfspaces()[i].clone()).collect()).unwrap();
        assert!(integer_feasible_2d(&sub).is_none());
    }

    #[test]
    fn verify_example_cone() {
        let p = poly(&[([-2, 1], rat(1, 2)), ([2, 1], rat(5, 2))]);
        assert!(verify_2dih(&p).unwrap());
    }
}
