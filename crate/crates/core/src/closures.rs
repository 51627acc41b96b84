//! Closure operations: integer hulls of two-halfspace relaxations, their
//! facet-pair intersection, disjunctive hulls of split disjunctions, finite
//! split closures, rounding cuts, and the split constructions for planar
//! simplicial cones.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hull2d::{integer_hull_halfspace, integer_hull_pointed_2d, integer_hull_strip, Cone2};
use crate::lattice::{
    integer_point_on_line, perp2, primitive, projected_lattice_basis, IntVec, LatticeBasis,
    SubspaceBasis,
};
use crate::poly::fm::{self, System};
use crate::poly::{
    h_to_v_2d, halfspace_contains, intersect, is_feasible, lift_by_orthogonal_complement,
    lift_halfspace, lineality_space, project_onto, remove_redundant, set_equal, v_to_h_2d,
    vertices_bruteforce, HPoly, Halfspace, LpOutcome, VPoly,
};
use crate::ratmath::{floor_int, QVec, Rational};

/// The disjunction `<a, x> <= K  or  <a, x> >= K + 1`; its split set is the
/// slab between the two hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitDisjunction {
    a: IntVec,
    k: BigInt,
}

impl SplitDisjunction {
    pub fn new(a: IntVec, k: BigInt) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroVector);
        }
        if !a.is_primitive() {
            return Err(Error::InvalidInput(format!(
                "split normal {a} is not primitive"
            )));
        }
        Ok(SplitDisjunction { a, k })
    }

    pub fn normal(&self) -> &IntVec {
        &self.a
    }

    pub fn k(&self) -> &BigInt {
        &self.k
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// `<a, x> <= K`.
    pub fn left(&self) -> Halfspace {
        Halfspace::new(self.a.clone(), Rational::from_integer(self.k.clone())).expect("nonzero")
    }

    /// `<a, x> >= K + 1`, written as `<-a, x> <= -(K + 1)`.
    pub fn right(&self) -> Halfspace {
        Halfspace::new(self.a.neg(), -Rational::from_integer(&self.k + 1)).expect("nonzero")
    }

    /// `K <= <a, x> <= K + 1`.
    pub fn contains_in_split_set(&self, x: &QVec) -> bool {
        let v = self.a.dot_q(x);
        v >= Rational::from_integer(self.k.clone()) && v <= Rational::from_integer(&self.k + 1)
    }
}

impl fmt::Display for SplitDisjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, x> <= {} or >= {}", self.a, self.k, &self.k + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyOrigin {
    Explicit,
    /// All primitive normals with sup-norm at most `bound`.
    BoxGenerated {
        bound: u32,
    },
}

/// A finite list of split disjunctions standing in for all of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitFamily {
    disjunctions: Vec<SplitDisjunction>,
    origin: FamilyOrigin,
}

impl SplitFamily {
    pub fn explicit(disjunctions: Vec<SplitDisjunction>) -> Result<Self> {
        if disjunctions.is_empty() {
            return Err(Error::InvalidInput("split family is empty".into()));
        }
        let mut out: Vec<SplitDisjunction> = Vec::with_capacity(disjunctions.len());
        for d in disjunctions {
            if d.dim() != out.first().map_or(d.dim(), SplitDisjunction::dim) {
                return Err(Error::InvalidInput("split family mixes dimensions".into()));
            }
            if !out.contains(&d) {
                out.push(d);
            }
        }
        Ok(SplitFamily {
            disjunctions: out,
            origin: FamilyOrigin::Explicit,
        })
    }

    /// Splits `(a, K)` with `a` primitive, `|a|_inf <= bound`, first nonzero
    /// entry positive, and `K = floor(<a, v>)` for a minimal-face point `v`
    /// of `p` with `<a, v>` fractional. Any other split leaves `p` unchanged:
    /// either its open interior misses every vertex, or `a` is not orthogonal
    /// to the lineality space.
    pub fn box_generated(p: &HPoly, bound: u32) -> Result<Self> {
        if !is_feasible(p) {
            return Err(Error::Infeasible);
        }
        let n = p.dim();
        let lin = lineality_space(p);
        let verts = vertices_bruteforce(p);
        let b = i64::from(bound);
        let mut out = Vec::new();
        let mut a = vec![-b; n];
        loop {
            let v = IntVec::from_i64(&a);
            let lead_positive = a.iter().find(|&&e| e != 0).is_some_and(|&e| e > 0);
            if lead_positive && v.is_primitive() && lin.iter().all(|d| v.dot(d).is_zero()) {
                for x in &verts {
                    let t = v.dot_q(x);
                    if !t.is_integer() {
                        let d = SplitDisjunction::new(v.clone(), floor_int(&t))?;
                        if !out.contains(&d) {
                            out.push(d);
                        }
                    }
                }
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return Ok(SplitFamily {
                        disjunctions: out,
                        origin: FamilyOrigin::BoxGenerated { bound },
                    });
                }
                i -= 1;
                if a[i] < b {
                    a[i] += 1;
                    for e in a.iter_mut().skip(i + 1) {
                        *e = -b;
                    }
                    break;
                }
            }
        }
    }

    pub fn disjunctions(&self) -> &[SplitDisjunction] {
        &self.disjunctions
    }

    pub fn origin(&self) -> &FamilyOrigin {
        &self.origin
    }

    pub fn len(&self) -> usize {
        self.disjunctions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.disjunctions.is_empty()
    }
}

/// Integer hull of two halfspaces together with the planar data it was
/// built from, when the normals are independent.
#[derive(Clone, Debug)]
pub struct TwoHalfspaceHull {
    pub hull: HPoly,
    /// Lattice basis of the span of the two normals.
    pub lattice: Option<LatticeBasis>,
    /// Integer hull in the lattice coordinates of that span.
    pub planar_hull: Option<VPoly>,
    /// Vertices of `planar_hull` mapped back into the ambient space.
    pub lifted_vertices: Vec<QVec>,
}

pub fn two_halfspace_hull(h1: &Halfspace, h2: &Halfspace) -> Result<HPoly> {
    Ok(two_halfspace_hull_traced(h1, h2)?.hull)
}

pub fn two_halfspace_hull_traced(h1: &Halfspace, h2: &Halfspace) -> Result<TwoHalfspaceHull> {
    let n = h1.dim();
    if h2.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: h2.dim(),
        });
    }
    let plain = |hull: HPoly| TwoHalfspaceHull {
        hull,
        lattice: None,
        planar_hull: None,
        lifted_vertices: Vec::new(),
    };
    if h1.normal() == h2.normal() {
        let h = if h1.rhs() <= h2.rhs() { h1 } else { h2 };
        return Ok(plain(HPoly::new(n, vec![integer_hull_halfspace(h)])?));
    }
    if h1.normal() == &h2.normal().neg() {
        let (lo, hi) = (-h2.rhs().clone(), h1.rhs().clone());
        return Ok(plain(match integer_hull_strip(&lo, &hi) {
            None => HPoly::empty(n),
            Some((l, h)) => HPoly::new(
                n,
                vec![
                    h1.with_rhs(Rational::from_integer(h)),
                    h2.with_rhs(-Rational::from_integer(l)),
                ],
            )?,
        }));
    }
    let span = SubspaceBasis::from_int_vectors(&[h1.normal().clone(), h2.normal().clone()])?;
    let lattice = projected_lattice_basis(&span)?;
    let pair = HPoly::new(n, vec![h1.clone(), h2.clone()])?;
    let planar = project_onto(&pair, &lattice)?;
    let hull2 = integer_hull_pointed_2d(&h_to_v_2d(&planar))?;
    if hull2.is_empty() {
        return Ok(plain(HPoly::empty(n)));
    }
    let hull = lift_by_orthogonal_complement(&v_to_h_2d(&hull2), &lattice)?;
    let lifted_vertices = hull2.vertices.iter().map(|y| lattice.point(y)).collect();
    Ok(TwoHalfspaceHull {
        hull,
        lattice: Some(lattice),
        planar_hull: Some(hull2),
        lifted_vertices,
    })
}

/// Intersection of the integer hulls of all pairs of facets, diagonal pairs
/// included. Equals the integer hull in the plane; a relaxation of it in
/// higher dimensions.
pub fn facet_pair_closure(p: &HPoly) -> Result<HPoly> {
    if p.is_marked_empty() {
        return Err(Error::Infeasible);
    }
    let r = remove_redundant(p)?;
    let hs = r.halfspaces();
    let mut acc = HPoly::universe(p.dim());
    for i in 0..hs.len() {
        for j in i..hs.len() {
            let h = two_halfspace_hull(&hs[i], &hs[j])?;
            acc = intersect(&[acc, h])?;
            if acc.is_marked_empty() {
                return Ok(acc);
            }
        }
    }
    Ok(acc)
}

fn pieces(p: &HPoly, d: &SplitDisjunction) -> Result<(Option<HPoly>, Option<HPoly>)> {
    if d.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: d.dim(),
        });
    }
    if p.is_marked_empty() || !is_feasible(p) {
        return Err(Error::Infeasible);
    }
    let p1 = p.with_halfspace(d.left());
    let p2 = p.with_halfspace(d.right());
    Ok((
        is_feasible(&p1).then_some(p1),
        is_feasible(&p2).then_some(p2),
    ))
}

/// Closed convex hull of `p` minus the open split set of `d`.
pub fn disjunctive_hull(p: &HPoly, d: &SplitDisjunction) -> Result<HPoly> {
    match pieces(p, d)? {
        (None, None) => Ok(HPoly::empty(p.dim())),
        (Some(q), None) | (None, Some(q)) => remove_redundant(&q),
        (Some(p1), Some(p2)) => {
            if p.dim() == 2 {
                Ok(union_hull_2d(&p1, &p2))
            } else {
                lifted_union_hull(&p1, &p2)
            }
        }
    }
}

/// Same set as [`disjunctive_hull`], always through the lifted formulation.
pub fn disjunctive_hull_lifted(p: &HPoly, d: &SplitDisjunction) -> Result<HPoly> {
    match pieces(p, d)? {
        (None, None) => Ok(HPoly::empty(p.dim())),
        (Some(q), None) | (None, Some(q)) => remove_redundant(&q),
        (Some(p1), Some(p2)) => lifted_union_hull(&p1, &p2),
    }
}

fn union_hull_2d(p1: &HPoly, p2: &HPoly) -> HPoly {
    let (v1, v2) = (h_to_v_2d(p1), h_to_v_2d(p2));
    let mut u = v1.clone();
    for x in v2.vertices {
        if !u.vertices.contains(&x) {
            u.vertices.push(x);
        }
    }
    for r in v2.rays {
        if !u.rays.contains(&r) {
            u.rays.push(r);
        }
    }
    for l in v2.lineality {
        if !u.lineality.contains(&l) && !u.lineality.contains(&l.neg()) {
            u.lineality.push(l);
        }
    }
    v_to_h_2d(&u)
}

/// Projection of the extended formulation `x = u + w`, `u` in `lam * P1`,
/// `w` in `(1 - lam) * P2`, `0 <= lam <= 1`, onto `x`.
fn lifted_union_hull(p1: &HPoly, p2: &HPoly) -> Result<HPoly> {
    let n = p1.dim();
    let width = 2 * n + 1;
    let mut sys = System::default();
    let row = |x: &[Rational], u: &[Rational], lam: Rational| {
        let mut r = Vec::with_capacity(width);
        r.extend_from_slice(x);
        r.extend_from_slice(u);
        r.push(lam);
        QVec(r)
    };
    let zeros = vec![Rational::zero(); n];
    for h in p1.halfspaces() {
        // <a, u> - lam b <= 0
        sys.push(
            row(&zeros, &h.normal_q().0, -h.rhs().clone()),
            Rational::zero(),
        );
    }
    for h in p2.halfspaces() {
        // <a, x - u> <= (1 - lam) b
        let a = h.normal_q();
        sys.push(row(&a.0, &a.neg().0, h.rhs().clone()), h.rhs().clone());
    }
    sys.push(row(&zeros, &zeros, -Rational::one()), Rational::zero());
    sys.push(row(&zeros, &zeros, Rational::one()), Rational::one());
    let vars: Vec<usize> = (n..width).collect();
    let out = fm::eliminate(&sys, &vars).ok_or(Error::Infeasible)?;
    let hs = out
        .rows
        .iter()
        .zip(&out.rhs)
        .filter(|(r, _)| !r.is_zero())
        .map(|(r, b)| Halfspace::from_rational(r, b))
        .collect::<Result<Vec<_>>>()?;
    remove_redundant(&HPoly::new(n, hs)?)
}

/// Intersection of the disjunctive hulls over a finite family, together with
/// `p` itself.
pub fn split_closure_family(p: &HPoly, family: &SplitFamily) -> Result<HPoly> {
    let mut acc = remove_redundant(p)?;
    for d in family.disjunctions() {
        let h = disjunctive_hull(p, d)?;
        acc = intersect(&[acc, h])?;
        if acc.is_marked_empty() {
            break;
        }
    }
    Ok(acc)
}

/// `<a, x> <= floor(max_P <a, x>)`, or `None` when `a` is unbounded on `p`.
pub fn cg_cut_from_direction(p: &HPoly, a: &IntVec) -> Result<Option<Halfspace>> {
    if a.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: a.dim(),
        });
    }
    if !a.is_primitive() {
        return Err(Error::InvalidInput(format!(
            "direction {a} is not primitive"
        )));
    }
    match p.maximize(&a.to_qvec()) {
        LpOutcome::Infeasible => Err(Error::Infeasible),
        LpOutcome::Unbounded => Ok(None),
        LpOutcome::Optimal { value, .. } => Ok(Some(Halfspace::new(
            a.clone(),
            Rational::from_integer(floor_int(&value)),
        )?)),
    }
}

/// Lifts a halfspace written in the lattice coordinates of `l` to the
/// ambient space; the normal lies in `l` and the set is invariant under
/// the orthogonal complement.
pub fn lift_cut(h: &Halfspace, l: &SubspaceBasis) -> Result<Halfspace> {
    lift_halfspace(h, &projected_lattice_basis(l)?)
}

/// A facet of the integer hull of a cone and the split that pushes the cone
/// below the next lattice line, if one is needed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankIhFacet {
    pub facet: Halfspace,
    pub split: Option<SplitDisjunction>,
}

/// For each facet `<a, x> <= delta` of the integer hull of `c`: no split when
/// the line `<a, x> = delta + 1` misses `c`; otherwise the split set through
/// the unit interval of that line meeting `c`, the lexicographically first
/// unit interval of the facet, and the apex.
pub fn rank_ih_splits(c: &Cone2) -> Result<Vec<RankIhFacet>> {
    let ci = integer_hull_pointed_2d(&c.to_vpoly())?;
    if ci.is_empty() {
        return Err(Error::EmptyIntegerHull);
    }
    let cone = c.to_hpoly();
    let facets = v_to_h_2d(&ci);
    let mut out = Vec::new();
    for f in facets.halfspaces() {
        let a = f.normal();
        let delta: BigInt = f.rhs().to_integer();
        let level: BigInt = &delta + 1;
        let levelq = Rational::from_integer(level.clone());
        let on_line = cone
            .with_halfspace(f.with_rhs(levelq.clone()))
            .with_halfspace(f.with_rhs(levelq.clone()).complement_closure());
        if !is_feasible(&on_line) {
            out.push(RankIhFacet {
                facet: f.clone(),
                split: None,
            });
            continue;
        }
        let d = perp2(a);
        let dq = d.to_qvec();
        let x0 = integer_point_on_line(a, &level);
        let x0q = x0.to_qvec();
        // Parameter range of the line inside the cone: x0 + t d.
        let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
        for h in cone.halfspaces() {
            let slope = h.normal().dot(&d);
            let rest = h.rhs() - h.value(&x0q);
            if slope.is_zero() {
                continue;
            }
            let bound = rest / Rational::from_integer(slope.clone());
            if slope.is_positive() {
                hi = Some(hi.map_or(bound.clone(), |v: Rational| v.min(bound)));
            } else {
                lo = Some(lo.map_or(bound.clone(), |v: Rational| v.max(bound)));
            }
        }
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Err(Error::Unbounded(format!(
                "line above facet {f} meets the cone in an unbounded set"
            )));
        };
        let m = floor_int(&lo);
        if hi >= Rational::from_integer(&m + 1) || lo.is_integer() {
            return Err(Error::Hypothesis(format!(
                "line above facet {f} meets the cone in an integer point"
            )));
        }
        let u0 = x0q.add(&dq.scale(&Rational::from_integer(m)));
        // Lexicographically first integer point of the facet and its unit
        // interval.
        let on_facet: Vec<&QVec> = ci
            .vertices
            .iter()
            .filter(|v| f.value(v) == *f.rhs())
            .collect();
        if on_facet.len() != 2 {
            return Err(Error::Unbounded(format!("facet {f} is not a bounded edge")));
        }
        let (w, other) = if on_facet[0] <= on_facet[1] {
            (on_facet[0], on_facet[1])
        } else {
            (on_facet[1], on_facet[0])
        };
        let toward = other.sub(w);
        let w0 = if dq.dot(&toward).is_positive() {
            w.clone()
        } else {
            w.sub(&dq)
        };
        let e = IntVec(u0.sub(&w0).to_integers().expect("lattice points"));
        let mut pi = primitive(&perp2(&e))?;
        if pi.dot(&d).is_negative() {
            pi = pi.neg();
        }
        let k = pi.dot_q(&u0).to_integer();
        let split = SplitDisjunction::new(pi, k)?;
        if !split.contains_in_split_set(c.apex()) {
            return Err(Error::Hypothesis(format!(
                "split {split} built for facet {f} does not contain the apex"
            )));
        }
        out.push(RankIhFacet {
            facet: f.clone(),
            split: Some(split),
        });
    }
    Ok(out)
}

/// Evidence that one round of splits followed by rounding recovers the
/// integer hull of a planar cone.
#[derive(Clone, Debug)]
pub struct RankIhCertificate {
    pub facets: Vec<RankIhFacet>,
    /// The cone intersected with the disjunctive hulls of all splits.
    pub relaxation: HPoly,
    /// Rounding cut of the relaxation in each facet direction.
    pub cuts: Vec<Halfspace>,
    /// Each cut is at least as strong as its facet.
    pub cuts_dominate: bool,
    /// The cuts describe exactly the integer hull.
    pub hull_recovered: bool,
}

impl RankIhCertificate {
    pub fn passed(&self) -> bool {
        self.cuts_dominate && self.hull_recovered
    }
}

pub fn verify_rank_ih(c: &Cone2) -> Result<RankIhCertificate> {
    let facets = rank_ih_splits(c)?;
    let cone = c.to_hpoly();
    let mut relaxation = remove_redundant(&cone)?;
    for f in &facets {
        if let Some(d) = &f.split {
            relaxation = intersect(&[relaxation, disjunctive_hull(&cone, d)?])?;
        }
    }
    let mut cuts = Vec::new();
    let mut cuts_dominate = true;
    for f in &facets {
        let cut = cg_cut_from_direction(&relaxation, f.facet.normal())?.ok_or_else(|| {
            Error::Unbounded(format!("relaxation unbounded along facet {}", f.facet))
        })?;
        cuts_dominate &= cut.rhs() <= f.facet.rhs();
        cuts.push(cut);
    }
    let ci = HPoly::new(2, facets.iter().map(|f| f.facet.clone()).collect())?;
    let hull_recovered = set_equal(&HPoly::new(2, cuts.clone())?, &ci);
    Ok(RankIhCertificate {
        facets,
        relaxation,
        cuts,
        cuts_dominate,
        hull_recovered,
    })
}

/// Checks, on one instance, that a split cut whose normal and split normal
/// lie in the lattice subspace `l` survives projection onto `l`: lifting the
/// projected cut gives the cut back, and the projected cut is valid for the
/// projected polyhedron outside the projected split set.
pub fn split_projection_check(
    p: &HPoly,
    d: &SplitDisjunction,
    cut: &Halfspace,
    l: &SubspaceBasis,
) -> Result<bool> {
    let n = p.dim();
    for (what, v) in [("split normal", d.normal()), ("cut normal", cut.normal())] {
        if v.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.dim(),
            });
        }
        if !l.contains(&v.to_qvec()) {
            return Err(Error::InvalidInput(format!(
                "subspace does not contain the {what} {v}"
            )));
        }
    }
    let (p1, p2) = pieces(p, d)?;
    let valid_on = |q: &Option<HPoly>| q.as_ref().is_none_or(|q| halfspace_contains(cut, q));
    if !valid_on(&p1) || !valid_on(&p2) {
        return Err(Error::Hypothesis(format!(
            "cut {cut} is not valid outside the split set of {d}"
        )));
    }
    let lattice = projected_lattice_basis(l)?;
    let to_coords = |v: &IntVec| QVec(lattice.generators().iter().map(|g| v.dot_q(g)).collect());
    let projected_cut = Halfspace::from_rational(&to_coords(cut.normal()), cut.rhs())?;
    let lifts_back = lift_halfspace(&projected_cut, &lattice)? == *cut;
    let split_coords = to_coords(d.normal());
    let Some(ints) = split_coords.to_integers() else {
        return Ok(false);
    };
    let projected_normal = IntVec(ints);
    if !projected_normal.is_primitive() {
        return Ok(false);
    }
    let projected_split = SplitDisjunction::new(projected_normal, d.k().clone())?;
    let q = project_onto(p, &lattice)?;
    let (q1, q2) = pieces(&q, &projected_split)?;
    let valid = [q1, q2].iter().all(|piece| {
        piece
            .as_ref()
            .is_none_or(|piece| halfspace_contains(&projected_cut, piece))
    });
    Ok(lifts_back && valid)
}
