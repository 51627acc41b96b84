//! Rational polyhedra in H- and V-representation.

pub mod fm;
pub mod lp;
pub mod planar;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{primitive_direction, IntVec, LatticeBasis};
use crate::ratmath::{format_rational, null_space, rank_exact, solve_exact, QMat, QVec, Rational};

pub use lp::LpOutcome;
pub use planar::{convex_hull_points, h_to_v_2d, v_to_h_2d};

/// `{x : <normal, x> <= rhs}` with a primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    normal: IntVec,
    rhs: Rational,
}

impl Halfspace {
    /// Rescales `normal` to be primitive, dividing `rhs` by the same factor.
    pub fn new(normal: IntVec, rhs: Rational) -> Result<Self> {
        let g = normal.content();
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        let gq = Rational::from_integer(g.clone());
        Ok(Halfspace {
            normal: IntVec(normal.0.iter().map(|e| e / &g).collect()),
            rhs: rhs / gq,
        })
    }

    pub fn from_i64(normal: &[i64], rhs: Rational) -> Self {
        Self::new(IntVec::from_i64(normal), rhs).expect("nonzero normal")
    }

    /// `<a, x> <= b` for a nonzero rational `a`.
    pub fn from_rational(a: &QVec, b: &Rational) -> Result<Self> {
        let (normal, s) = primitive_direction(a)?;
        Ok(Halfspace { normal, rhs: b * s })
    }

    pub fn normal(&self) -> &IntVec {
        &self.normal
    }

    pub fn rhs(&self) -> &Rational {
        &self.rhs
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    pub fn normal_q(&self) -> QVec {
        self.normal.to_qvec()
    }

    pub fn value(&self, x: &QVec) -> Rational {
        self.normal.dot_q(x)
    }

    pub fn contains(&self, x: &QVec) -> bool {
        self.value(x) <= self.rhs
    }

    pub fn contains_strictly(&self, x: &QVec) -> bool {
        self.value(x) < self.rhs
    }

    pub fn with_rhs(&self, rhs: Rational) -> Self {
        Halfspace {
            normal: self.normal.clone(),
            rhs,
        }
    }

    /// `{x : <normal, x> >= rhs}` expressed as `<-normal, x> <= -rhs`.
    pub fn complement_closure(&self) -> Self {
        Halfspace {
            normal: self.normal.neg(),
            rhs: -self.rhs.clone(),
        }
    }

    /// True when the boundary hyperplane contains integer points.
    pub fn boundary_has_integer_points(&self) -> bool {
        self.rhs.is_integer()
    }
}

impl fmt::Display for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, x> <= {}", self.normal, format_rational(&self.rhs))
    }
}

/// `{x : A x <= b}`; the empty set is carried as an explicit marker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPoly {
    dim: usize,
    halfspaces: Vec<Halfspace>,
    empty: bool,
}

impl HPoly {
    pub fn new(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self> {
        if let Some(h) = halfspaces.iter().find(|h| h.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: h.dim(),
            });
        }
        Ok(HPoly {
            dim,
            halfspaces,
            empty: false,
        })
    }

    pub fn universe(dim: usize) -> Self {
        HPoly {
            dim,
            halfspaces: Vec::new(),
            empty: false,
        }
    }

    pub fn empty(dim: usize) -> Self {
        HPoly {
            dim,
            halfspaces: Vec::new(),
            empty: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn is_marked_empty(&self) -> bool {
        self.empty
    }

    pub fn contains(&self, x: &QVec) -> bool {
        !self.empty && self.halfspaces.iter().all(|h| h.contains(x))
    }

    pub fn contains_strictly(&self, x: &QVec) -> bool {
        !self.empty && self.halfspaces.iter().all(|h| h.contains_strictly(x))
    }

    pub fn with_halfspace(&self, h: Halfspace) -> HPoly {
        let mut out = self.clone();
        out.halfspaces.push(h);
        out
    }

    /// Rows and right-hand sides for the LP layer.
    pub fn system(&self) -> (Vec<QVec>, Vec<Rational>) {
        self.halfspaces
            .iter()
            .map(|h| (h.normal_q(), h.rhs.clone()))
            .unzip()
    }

    pub fn maximize(&self, c: &QVec) -> LpOutcome {
        if self.empty {
            return LpOutcome::Infeasible;
        }
        let (rows, rhs) = self.system();
        lp::maximize(&rows, &rhs, c)
    }

    /// Minimum of `<c, x>`, as an LP outcome on `-c` negated back.
    pub fn minimize(&self, c: &QVec) -> LpOutcome {
        match self.maximize(&c.neg()) {
            LpOutcome::Optimal { value, point } => LpOutcome::Optimal {
                value: -value,
                point,
            },
            o => o,
        }
    }

    pub fn feasible_point(&self) -> Option<QVec> {
        if self.empty {
            return None;
        }
        let (rows, rhs) = self.system();
        lp::feasible_point(&rows, &rhs, self.dim)
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.empty {
            return write!(f, "empty set in R^{}", self.dim);
        }
        if self.halfspaces.is_empty() {
            return write!(f, "R^{}", self.dim);
        }
        for (i, h) in self.halfspaces.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{h}")?;
        }
        Ok(())
    }
}

/// `conv(vertices) + cone(rays) + span(lineality)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPoly {
    pub dim: usize,
    pub vertices: Vec<QVec>,
    pub rays: Vec<IntVec>,
    pub lineality: Vec<IntVec>,
}

impl VPoly {
    pub fn empty(dim: usize) -> Self {
        VPoly {
            dim,
            vertices: Vec::new(),
            rays: Vec::new(),
            lineality: Vec::new(),
        }
    }

    pub fn polytope(dim: usize, vertices: Vec<QVec>) -> Self {
        VPoly {
            dim,
            vertices,
            rays: Vec::new(),
            lineality: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }
}

pub fn is_feasible(p: &HPoly) -> bool {
    p.feasible_point().is_some()
}

/// Minimal H-representation of the same set. Among duplicate or mutually
/// implied inequalities the earliest is kept.
pub fn remove_redundant(p: &HPoly) -> Result<HPoly> {
    if !is_feasible(p) {
        return Err(Error::Infeasible);
    }
    // Exact duplicates of a normal keep only the tightest right-hand side.
    let mut dedup: Vec<Halfspace> = Vec::new();
    for h in &p.halfspaces {
        match dedup.iter_mut().find(|d| d.normal == h.normal) {
            Some(d) => {
                if h.rhs < d.rhs {
                    d.rhs = h.rhs.clone();
                }
            }
            None => dedup.push(h.clone()),
        }
    }
    let mut keep = vec![true; dedup.len()];
    for i in (0..dedup.len()).rev() {
        let (rows, rhs): (Vec<QVec>, Vec<Rational>) = (0..dedup.len())
            .filter(|&j| j != i && keep[j])
            .map(|j| (dedup[j].normal_q(), dedup[j].rhs.clone()))
            .unzip();
        if let LpOutcome::Optimal { value, .. } = lp::maximize(&rows, &rhs, &dedup[i].normal_q()) {
            if value <= dedup[i].rhs {
                keep[i] = false;
            }
        }
    }
    let halfspaces = dedup
        .into_iter()
        .zip(keep)
        .filter_map(|(h, k)| k.then_some(h))
        .collect();
    HPoly::new(p.dim, halfspaces)
}

/// Intersection; explicit empty when the result has no points.
pub fn intersect(ps: &[HPoly]) -> Result<HPoly> {
    let Some(first) = ps.first() else {
        return Err(Error::InvalidInput("intersection of no polyhedra".into()));
    };
    let dim = first.dim;
    let mut all = Vec::new();
    for p in ps {
        if p.dim != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim,
            });
        }
        if p.empty {
            return Ok(HPoly::empty(dim));
        }
        all.extend(p.halfspaces.iter().cloned());
    }
    let joined = HPoly::new(dim, all)?;
    match remove_redundant(&joined) {
        Ok(p) => Ok(p),
        Err(Error::Infeasible) => Ok(HPoly::empty(dim)),
        Err(e) => Err(e),
    }
}

/// Primitive integer basis of `{d : <a_i, d> = 0 for all i}`.
pub fn lineality_space(p: &HPoly) -> Vec<IntVec> {
    if p.halfspaces.is_empty() {
        return (0..p.dim)
            .map(|i| {
                let mut v = vec![BigInt::zero(); p.dim];
                v[i] = BigInt::from(1);
                IntVec(v)
            })
            .collect();
    }
    let a = QMat::new(
        p.halfspaces.iter().map(Halfspace::normal_q).collect(),
        p.dim,
    )
    .expect("uniform dims");
    null_space(&a)
        .iter()
        .map(|v| primitive_direction(v).expect("null vector is nonzero").0)
        .collect()
}

/// `A` is contained in `B` (exact LP per inequality of `B`).
pub fn is_subset(a: &HPoly, b: &HPoly) -> bool {
    if a.empty || !is_feasible(a) {
        return true;
    }
    if b.empty {
        return false;
    }
    b.halfspaces
        .iter()
        .all(|h| match a.maximize(&h.normal_q()) {
            LpOutcome::Optimal { value, .. } => value <= h.rhs,
            LpOutcome::Infeasible => true,
            LpOutcome::Unbounded => false,
        })
}

pub fn set_equal(a: &HPoly, b: &HPoly) -> bool {
    is_subset(a, b) && is_subset(b, a)
}

/// `Halfspace` contains the polyhedron.
pub fn halfspace_contains(h: &Halfspace, p: &HPoly) -> bool {
    match p.maximize(&h.normal_q()) {
        LpOutcome::Optimal { value, .. } => value <= h.rhs,
        LpOutcome::Infeasible => true,
        LpOutcome::Unbounded => false,
    }
}

/// Every generator of `v` lies in `h` (vertices as points, rays and
/// lineality as recession directions).
pub fn hpoly_contains_vpoly(h: &HPoly, v: &VPoly) -> bool {
    if v.is_empty() {
        return true;
    }
    if h.empty {
        return false;
    }
    v.vertices.iter().all(|x| h.contains(x))
        && h.halfspaces.iter().all(|hs| {
            v.rays.iter().all(|r| !hs.normal.dot(r).is_positive())
                && v.lineality.iter().all(|d| hs.normal.dot(d).is_zero())
        })
}

/// Orthogonal projection of `p` onto `L`, written in the lattice
/// coordinates of `Lambda_L`, so that the projected lattice is `Z^k`.
pub fn project_onto(p: &HPoly, basis: &LatticeBasis) -> Result<HPoly> {
    let n = basis.ambient_dim();
    let k = basis.dim();
    if p.dim != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.dim,
        });
    }
    if p.empty {
        return Ok(HPoly::empty(k));
    }
    let complement = if k == n {
        Vec::new()
    } else {
        basis.subspace().orthogonal_complement()
    };
    // x = sum_i y_i g_i + sum_j z_j c_j; eliminate the z variables.
    let mut sys = fm::System::default();
    for h in &p.halfspaces {
        let a = h.normal_q();
        let mut row: Vec<Rational> = basis.generators().iter().map(|g| a.dot(g)).collect();
        row.extend(complement.iter().map(|c| a.dot(c)));
        sys.push(QVec(row), h.rhs.clone());
    }
    let direct = sys.rows.iter().all(|r| r.iter().skip(k).all(Zero::is_zero));
    let reduced = if direct {
        let rows = sys.rows.iter().map(|r| QVec(r.0[..k].to_vec())).collect();
        let s = fm::System::new(rows, sys.rhs.clone());
        match s.normalized() {
            Some(s) if lp::feasible_point(&s.rows, &s.rhs, k).is_some() => s,
            _ => return Ok(HPoly::empty(k)),
        }
    } else {
        let vars: Vec<usize> = (k..n).collect();
        match fm::eliminate(&sys, &vars) {
            Some(s) => s,
            None => return Ok(HPoly::empty(k)),
        }
    };
    let halfspaces = reduced
        .rows
        .iter()
        .zip(&reduced.rhs)
        .map(|(r, b)| Halfspace::from_rational(r, b))
        .collect::<Result<Vec<_>>>()?;
    HPoly::new(k, halfspaces)
}

/// Lifts one inequality in lattice coordinates of `L` to `R^n`.
pub fn lift_halfspace(h: &Halfspace, basis: &LatticeBasis) -> Result<Halfspace> {
    if h.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: h.dim(),
        });
    }
    let n = basis.ambient_dim();
    let mut normal = vec![BigInt::zero(); n];
    for (c, w) in h.normal.0.iter().zip(basis.coord_map()) {
        for (acc, wj) in normal.iter_mut().zip(&w.0) {
            *acc += c * wj;
        }
    }
    Halfspace::new(IntVec(normal), h.rhs.clone())
}

/// `Q + L^perp` in ambient coordinates, for `Q` in lattice coordinates.
pub fn lift_by_orthogonal_complement(q: &HPoly, basis: &LatticeBasis) -> Result<HPoly> {
    if q.dim != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: q.dim,
        });
    }
    let n = basis.ambient_dim();
    if q.empty {
        return Ok(HPoly::empty(n));
    }
    let hs = q
        .halfspaces
        .iter()
        .map(|h| lift_halfspace(h, basis))
        .collect::<Result<Vec<_>>>()?;
    HPoly::new(n, hs)
}

/// All `k`-element subsets of `0..m` in lexicographic order.
pub fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Minimal-face representatives of `p`: the vertices of `p` intersected
/// with the orthogonal complement of its lineality space. Found by solving
/// every square active set; intended for desk-scale inputs.
pub fn vertices_bruteforce(p: &HPoly) -> Vec<QVec> {
    if p.empty || !is_feasible(p) {
        return Vec::new();
    }
    let n = p.dim;
    let lin = lineality_space(p);
    let rows: Vec<QVec> = p.halfspaces.iter().map(Halfspace::normal_q).collect();
    let rhs: Vec<Rational> = p.halfspaces.iter().map(|h| h.rhs.clone()).collect();
    let mut eq_rows = Vec::new();
    for d in &lin {
        eq_rows.push(d.to_qvec());
    }
    let needed = n - eq_rows.len();
    let mut out: Vec<QVec> = Vec::new();
    for subset in combinations(rows.len(), needed) {
        let mut a_rows: Vec<QVec> = subset.iter().map(|&i| rows[i].clone()).collect();
        a_rows.extend(eq_rows.iter().cloned());
        let mut b: Vec<Rational> = subset.iter().map(|&i| rhs[i].clone()).collect();
        b.extend(std::iter::repeat_n(Rational::zero(), eq_rows.len()));
        let a = QMat::new(a_rows, n).expect("uniform dims");
        if rank_exact(&a) != n {
            continue;
        }
        let Ok(Some(x)) = solve_exact(&a, &QVec(b)) else {
            continue;
        };
        if p.contains(&x) && !out.contains(&x) {
            out.push(x);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{projected_lattice_basis, SubspaceBasis};
    use crate::ratmath::rat;

    pub(crate) fn example_cone() -> HPoly {
        HPoly::new(
            2,
            vec![
                Halfspace::from_i64(&[-2, 1], rat(1, 2)),
                Halfspace::from_i64(&[2, 1], rat(5, 2)),
            ],
        )
        .unwrap()
    }

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
    fn halfspace_normalizes() {
        let h = Halfspace::new(IntVec::from_i64(&[4, 2]), rat(1, 1)).unwrap();
        assert_eq!(h.normal(), &IntVec::from_i64(&[2, 1]));
        assert_eq!(h.rhs(), &rat(1, 2));
        assert!(Halfspace::new(IntVec::from_i64(&[0, 0]), rat(1, 1)).is_err());
        let r = Halfspace::from_rational(&QVec(vec![rat(1, 2), rat(-1, 3)]), &rat(1, 1)).unwrap();
        assert_eq!(r.normal(), &IntVec::from_i64(&[3, -2]));
        assert_eq!(r.rhs(), &rat(6, 1));
    }

    #[test]
    fn feasibility() {
        let p = HPoly::new(
            1,
            vec![
                Halfspace::from_i64(&[1], rat(0, 1)),
                Halfspace::from_i64(&[-1], rat(-1, 1)),
            ],
        )
        .unwrap();
        assert!(!is_feasible(&p));
        assert!(is_feasible(&example_cone()));
        assert!(is_feasible(&HPoly::universe(3)));
        assert!(!is_feasible(&HPoly::empty(3)));
    }

    #[test]
    fn redundancy() {
        let p = HPoly::new(
            1,
            vec![
                Halfspace::from_i64(&[1], rat(1, 1)),
                Halfspace::from_i64(&[1], rat(2, 1)),
            ],
        )
        .unwrap();
        let r = remove_redundant(&p).unwrap();
        assert_eq!(r.halfspaces(), &[Halfspace::from_i64(&[1], rat(1, 1))]);

        let sq = unit_square().with_halfspace(Halfspace::from_i64(&[2, 0], rat(2, 1)));
        assert_eq!(remove_redundant(&sq).unwrap().halfspaces().len(), 4);

        let bad = HPoly::new(
            1,
            vec![
                Halfspace::from_i64(&[1], rat(0, 1)),
                Halfspace::from_i64(&[-1], rat(-1, 1)),
            ],
        )
        .unwrap();
        assert_eq!(remove_redundant(&bad), Err(Error::Infeasible));
    }

    #[test]
    fn intersections() {
        let a = HPoly::new(1, vec![Halfspace::from_i64(&[1], rat(1, 1))]).unwrap();
        let b = HPoly::new(1, vec![Halfspace::from_i64(&[-1], rat(0, 1))]).unwrap();
        assert_eq!(intersect(&[a.clone(), b]).unwrap().halfspaces().len(), 2);
        let c = HPoly::new(1, vec![Halfspace::from_i64(&[-1], rat(-2, 1))]).unwrap();
        assert!(intersect(&[a, c]).unwrap().is_marked_empty());
        let h1 = HPoly::new(2, vec![Halfspace::from_i64(&[-2, 1], rat(1, 2))]).unwrap();
        let h2 = HPoly::new(2, vec![Halfspace::from_i64(&[2, 1], rat(5, 2))]).unwrap();
        assert_eq!(intersect(&[h1, h2]).unwrap().halfspaces().len(), 2);
    }

    #[test]
    fn lineality() {
        let p = HPoly::new(
            3,
            vec![
                Halfspace::from_i64(&[1, 2, 0], rat(1, 1)),
                Halfspace::from_i64(&[0, 1, 1], rat(1, 1)),
            ],
        )
        .unwrap();
        let lin = lineality_space(&p);
        assert_eq!(lin.len(), 1);
        for h in p.halfspaces() {
            assert!(h.normal().dot(&lin[0]).is_zero());
        }
        let simplex = HPoly::new(
            2,
            vec![
                Halfspace::from_i64(&[-1, 0], rat(0, 1)),
                Halfspace::from_i64(&[0, -1], rat(0, 1)),
                Halfspace::from_i64(&[1, 1], rat(1, 1)),
            ],
        )
        .unwrap();
        assert!(lineality_space(&simplex).is_empty());
        let half = HPoly::new(2, vec![Halfspace::from_i64(&[1, 1], rat(0, 1))]).unwrap();
        assert_eq!(lineality_space(&half).len(), 1);
    }

    #[test]
    fn projection_identity_and_box() {
        let lb = projected_lattice_basis(&SubspaceBasis::full(2)).unwrap();
        let sq = unit_square();
        let pr = project_onto(&sq, &lb).unwrap();
        assert!(set_equal(&pr, &sq));

        let mut cube = Vec::new();
        for i in 0..3 {
            let mut e = [0i64; 3];
            e[i] = 1;
            cube.push(Halfspace::from_i64(&e, rat(1, 1)));
            e[i] = -1;
            cube.push(Halfspace::from_i64(&e, rat(0, 1)));
        }
        let cube = HPoly::new(3, cube).unwrap();
        let l = SubspaceBasis::from_int_vectors(&[
            IntVec::from_i64(&[1, 0, 0]),
            IntVec::from_i64(&[0, 1, 0]),
        ])
        .unwrap();
        let lb = projected_lattice_basis(&l).unwrap();
        assert!(set_equal(&project_onto(&cube, &lb).unwrap(), &sq));
    }

    #[test]
    fn projection_of_two_halfspaces_keeps_both() {
        let p = HPoly::new(
            3,
            vec![
                Halfspace::from_i64(&[1, 1, 0], rat(1, 2)),
                Halfspace::from_i64(&[0, 1, -1], rat(1, 3)),
            ],
        )
        .unwrap();
        let lin = lineality_space(&p);
        let l = SubspaceBasis::new(3, p.halfspaces().iter().map(Halfspace::normal_q).collect())
            .unwrap();
        assert_eq!(lin.len(), 1);
        let lb = projected_lattice_basis(&l).unwrap();
        let pr = project_onto(&p, &lb).unwrap();
        assert_eq!(pr.dim(), 2);
        assert_eq!(pr.halfspaces().len(), 2);
        let back = lift_by_orthogonal_complement(&pr, &lb).unwrap();
        assert!(set_equal(&back, &p));
    }

    #[test]
    fn lift_diagonal_line() {
        let l = SubspaceBasis::from_int_vectors(&[IntVec::from_i64(&[1, 1])]).unwrap();
        let lb = projected_lattice_basis(&l).unwrap();
        let q = HPoly::new(1, vec![Halfspace::from_i64(&[1], rat(0, 1))]).unwrap();
        let lifted = lift_by_orthogonal_complement(&q, &lb).unwrap();
        let h = &lifted.halfspaces()[0];
        // Either orientation of the generator gives x1 + x2 <= 0 or >= 0.
        assert_eq!(h.rhs(), &rat(0, 1));
        assert!(
            h.normal() == &IntVec::from_i64(&[1, 1]) || h.normal() == &IntVec::from_i64(&[-1, -1])
        );
        // Sampled membership agrees on both sides.
        for x in -3..=3 {
            for y in -3..=3 {
                let pt = QVec::from_ints(&[x, y]);
                let y1 = lb.coords_of_projection(&pt);
                assert_eq!(q.contains(&y1), lifted.contains(&pt));
            }
        }
        assert!(lift_by_orthogonal_complement(&HPoly::empty(1), &lb)
            .unwrap()
            .is_marked_empty());
    }

    #[test]
    fn lift_identity_full_space() {
        let lb = projected_lattice_basis(&SubspaceBasis::full(2)).unwrap();
        let sq = unit_square();
        assert_eq!(lift_by_orthogonal_complement(&sq, &lb).unwrap(), sq);
    }

    #[test]
    fn brute_vertices_of_cone() {
        let v = vertices_bruteforce(&example_cone());
        assert_eq!(v, vec![QVec(vec![rat(1, 2), rat(3, 2)])]);
    }
}
