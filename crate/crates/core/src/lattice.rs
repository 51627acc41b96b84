//! Integer vectors, column Hermite normal form, and the lattice obtained by
//! orthogonally projecting `Z^n` onto a rational subspace.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratmath::{null_space, rank_exact, solve_exact, QMat, QVec, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVec(pub Vec<BigInt>);

impl IntVec {
    pub fn from_i64(entries: &[i64]) -> Self {
        IntVec(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, e| g.gcd(e))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn to_qvec(&self) -> QVec {
        QVec::from_bigints(&self.0)
    }

    pub fn neg(&self) -> IntVec {
        IntVec(self.0.iter().map(|e| -e).collect())
    }

    pub fn dot(&self, other: &IntVec) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn dot_q(&self, x: &QVec) -> Rational {
        self.0
            .iter()
            .zip(x.iter())
            .fold(Rational::zero(), |acc, (a, b)| {
                acc + Rational::from_integer(a.clone()) * b
            })
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Divides `v` by the gcd of its entries.
pub fn primitive(v: &IntVec) -> Result<IntVec> {
    let g = v.content();
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(IntVec(v.0.iter().map(|e| e / &g).collect()))
}

/// Primitive integer vector pointing in the direction of a nonzero rational
/// vector, together with the positive factor `s` such that `primitive = s * v`.
pub fn primitive_direction(v: &QVec) -> Result<(IntVec, Rational)> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let cleared = IntVec(v.clear_denominators());
    let p = primitive(&cleared)?;
    let i = (0..v.dim()).find(|&i| !v[i].is_zero()).unwrap();
    let s = Rational::from_integer(p.0[i].clone()) / &v[i];
    Ok((p, s))
}

/// The primitive vector orthogonal to a planar vector, rotated clockwise:
/// `(x, y) -> (y, -x)`.
pub fn perp2(v: &IntVec) -> IntVec {
    IntVec(vec![v.0[1].clone(), -v.0[0].clone()])
}

/// `(g, x, y)` with `a x + b y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// An integer point on `<a, x> = c` for primitive planar `a` and integer `c`.
pub fn integer_point_on_line(a: &IntVec, c: &BigInt) -> IntVec {
    let (g, x, y) = ext_gcd(&a.0[0], &a.0[1]);
    debug_assert!(g.is_one());
    IntVec(vec![x * c, y * c])
}

pub type IntMat = Vec<Vec<BigInt>>;

pub fn int_mat(rows: &[&[i64]]) -> IntMat {
    rows.iter()
        .map(|r| r.iter().map(|&e| BigInt::from(e)).collect())
        .collect()
}

pub fn int_mat_mul(a: &IntMat, b: &IntMat) -> IntMat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn int_det(a: &IntMat) -> BigInt {
    let q = QMat::from_rows(a.iter().map(|r| QVec::from_bigints(r)).collect())
        .expect("rectangular matrix");
    crate::ratmath::determinant(&q).to_integer()
}

fn column_op(m: &mut IntMat, dst: usize, src: usize, f: &BigInt) {
    // col_dst += f * col_src
    for row in m.iter_mut() {
        let t = f * &row[src];
        row[dst] += t;
    }
}

fn column_negate(m: &mut IntMat, i: usize) {
    for row in m.iter_mut() {
        row[i] = -row[i].clone();
    }
}

/// Column Hermite normal form: returns `(H, U)` with `H = A U`, `U`
/// unimodular, and `H` lower triangular (column echelon). Each pivot is
/// positive and the entries to its left in the pivot row lie in
/// `[0, pivot)`.
pub fn hnf(a: &IntMat) -> (IntMat, IntMat) {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut h = a.clone();
    let mut u: IntMat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut r = 0;
    for i in 0..m {
        if r == n {
            break;
        }
        // Fold every column c > r into column r with 2x2 unimodular steps.
        for c in r + 1..n {
            if h[i][c].is_zero() {
                continue;
            }
            let (p, q) = (h[i][r].clone(), h[i][c].clone());
            let (g, x, y) = ext_gcd(&p, &q);
            let (pg, qg) = (&p / &g, &q / &g);
            // [col_r, col_c] <- [col_r, col_c] * [[x, -qg], [y, pg]]
            for mat in [&mut h, &mut u] {
                for row in mat.iter_mut() {
                    let (vr, vc) = (row[r].clone(), row[c].clone());
                    row[r] = &vr * &x + &vc * &y;
                    row[c] = &vc * &pg - &vr * &qg;
                }
            }
        }
        if h[i][r].is_zero() {
            continue;
        }
        if h[i][r].is_negative() {
            column_negate(&mut h, r);
            column_negate(&mut u, r);
        }
        for j in 0..r {
            let f = -h[i][j].div_floor(&h[i][r]);
            if !f.is_zero() {
                column_op(&mut h, j, r, &f);
                column_op(&mut u, j, r, &f);
            }
        }
        r += 1;
    }
    (h, u)
}

/// A linear subspace of `R^n` given by linearly independent rational
/// spanning vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<QVec>,
}

impl SubspaceBasis {
    pub fn new(ambient_dim: usize, vectors: Vec<QVec>) -> Result<Self> {
        if vectors.is_empty() || vectors.len() > ambient_dim {
            return Err(Error::NotLatticeSubspace(format!(
                "expected between 1 and {ambient_dim} basis vectors, got {}",
                vectors.len()
            )));
        }
        if let Some(v) = vectors.iter().find(|v| v.dim() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: v.dim(),
            });
        }
        let m = QMat::from_rows(vectors.clone())?;
        if rank_exact(&m) != vectors.len() {
            return Err(Error::NotLatticeSubspace(
                "basis vectors are linearly dependent".into(),
            ));
        }
        Ok(SubspaceBasis {
            ambient_dim,
            vectors,
        })
    }

    pub fn from_int_vectors(vectors: &[IntVec]) -> Result<Self> {
        let n = vectors.first().map_or(0, IntVec::dim);
        Self::new(n, vectors.iter().map(IntVec::to_qvec).collect())
    }

    /// The whole space `R^n`.
    pub fn full(n: usize) -> Self {
        SubspaceBasis {
            ambient_dim: n,
            vectors: (0..n).map(|i| QVec::unit(n, i)).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[QVec] {
        &self.vectors
    }

    pub fn contains(&self, v: &QVec) -> bool {
        let mut rows = self.vectors.clone();
        rows.push(v.clone());
        rank_exact(&QMat::from_rows(rows).expect("uniform dims")) == self.dim()
    }

    /// Basis of the orthogonal complement.
    pub fn orthogonal_complement(&self) -> Vec<QVec> {
        null_space(&QMat::from_rows(self.vectors.clone()).expect("uniform dims"))
    }

    /// Integer basis of the subspace: each spanning vector scaled to a
    /// primitive integer vector.
    pub fn integer_basis(&self) -> Vec<IntVec> {
        self.vectors
            .iter()
            .map(|v| primitive_direction(v).expect("basis vector is nonzero").0)
            .collect()
    }
}

/// A basis of `Lambda_L`, the orthogonal projection of `Z^n` onto `L`.
///
/// `coord_map` is the integer `k x n` matrix `W` sending `x` to the
/// coordinates of `proj_L(x)` in the generator basis. Because the generators
/// span `Lambda_L`, `W` maps `Z^n` onto `Z^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    subspace: SubspaceBasis,
    generators: Vec<QVec>,
    coord_map: Vec<IntVec>,
}

impl LatticeBasis {
    pub fn subspace(&self) -> &SubspaceBasis {
        &self.subspace
    }

    pub fn generators(&self) -> &[QVec] {
        &self.generators
    }

    pub fn coord_map(&self) -> &[IntVec] {
        &self.coord_map
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.subspace.ambient_dim()
    }

    /// Lattice coordinates of `proj_L(x)`.
    pub fn coords_of_projection(&self, x: &QVec) -> QVec {
        QVec(self.coord_map.iter().map(|w| w.dot_q(x)).collect())
    }

    /// The point of `L` with the given lattice coordinates.
    pub fn point(&self, coords: &QVec) -> QVec {
        let n = self.ambient_dim();
        self.generators
            .iter()
            .zip(coords.iter())
            .fold(QVec::zeros(n), |acc, (g, c)| acc.add(&g.scale(c)))
    }

    /// Orthogonal projection onto `L`.
    pub fn project(&self, x: &QVec) -> QVec {
        self.point(&self.coords_of_projection(x))
    }
}

pub fn projected_lattice_basis(subspace: &SubspaceBasis) -> Result<LatticeBasis> {
    let n = subspace.ambient_dim();
    let k = subspace.dim();
    // Work with an integer basis; for rational input this always exists.
    let int_basis: Vec<QVec> = subspace
        .integer_basis()
        .iter()
        .map(IntVec::to_qvec)
        .collect();
    let b = QMat::from_rows(int_basis.clone())?;
    let gram = b.mul(&b.transpose());
    // Columns of M: coordinates of proj(e_j) in the integer basis.
    let mut m_cols: Vec<QVec> = Vec::with_capacity(n);
    for j in 0..n {
        let rhs = b.mul_vec(&QVec::unit(n, j));
        let c = solve_exact(&gram, &rhs)?
            .ok_or_else(|| Error::NotLatticeSubspace("singular Gram matrix".into()))?;
        m_cols.push(c);
    }
    let all: Vec<&Rational> = m_cols.iter().flat_map(|c| c.iter()).collect();
    let d = crate::ratmath::denominator_lcm(all.iter().copied());
    let dq = Rational::from_integer(d.clone());
    let scaled: IntMat = (0..k)
        .map(|i| m_cols.iter().map(|c| (&c[i] * &dq).to_integer()).collect())
        .collect();
    let (h, _) = hnf(&scaled);
    // The first k columns of H span the same lattice as the columns of D*M.
    let gen_coords: Vec<QVec> = (0..k)
        .map(|c| {
            QVec(
                (0..k)
                    .map(|i| Rational::new(h[i][c].clone(), d.clone()))
                    .collect(),
            )
        })
        .collect();
    if gen_coords.iter().any(QVec::is_zero) {
        return Err(Error::NotLatticeSubspace(
            "projected lattice has lower rank".into(),
        ));
    }
    let generators: Vec<QVec> = gen_coords
        .iter()
        .map(|c| {
            int_basis
                .iter()
                .zip(c.iter())
                .fold(QVec::zeros(n), |acc, (v, ci)| acc.add(&v.scale(ci)))
        })
        .collect();
    // W = C^{-1} M, where C has the generator coordinates as columns.
    let c_mat = QMat::from_rows(
        (0..k)
            .map(|i| QVec(gen_coords.iter().map(|g| g[i].clone()).collect()))
            .collect(),
    )?;
    let mut w_rows: Vec<Vec<BigInt>> = vec![Vec::with_capacity(n); k];
    for col in &m_cols {
        let w = solve_exact(&c_mat, col)?
            .ok_or_else(|| Error::NotLatticeSubspace("singular generator matrix".into()))?;
        let ints = w.to_integers().ok_or_else(|| {
            Error::NotLatticeSubspace("projection of a unit vector left the lattice".into())
        })?;
        for (row, v) in w_rows.iter_mut().zip(ints) {
            row.push(v);
        }
    }
    Ok(LatticeBasis {
        subspace: subspace.clone(),
        generators,
        coord_map: w_rows.into_iter().map(IntVec).collect(),
    })
}

/// Coordinates of `p` in the generator basis; `p` is in `Lambda_L` exactly
/// when the result is integral.
pub fn lattice_coords(basis: &LatticeBasis, p: &QVec) -> Result<QVec> {
    let n = basis.ambient_dim();
    if p.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.dim(),
        });
    }
    let rows = (0..n)
        .map(|j| QVec(basis.generators.iter().map(|g| g[j].clone()).collect()))
        .collect();
    let a = QMat::from_rows(rows)?;
    solve_exact(&a, p)?.ok_or(Error::NotInSubspace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::rat;

    fn is_lower_hnf(h: &IntMat) -> bool {
        // Column echelon: pivot row index strictly increases with column.
        let n = h.first().map_or(0, Vec::len);
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero_col = false;
        for c in 0..n {
            let pivot = (0..h.len()).find(|&i| !h[i][c].is_zero());
            match pivot {
                None => seen_zero_col = true,
                Some(p) => {
                    if seen_zero_col || last_pivot.is_some_and(|lp| p <= lp) {
                        return false;
                    }
                    if !h[p][c].is_positive() {
                        return false;
                    }
                    for j in 0..c {
                        if h[p][j].is_negative() || h[p][j] >= h[p][c] {
                            return false;
                        }
                    }
                    last_pivot = Some(p);
                }
            }
        }
        true
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(
            primitive(&IntVec::from_i64(&[4, -6])).unwrap(),
            IntVec::from_i64(&[2, -3])
        );
        assert_eq!(
            primitive(&IntVec::from_i64(&[0, 5])).unwrap(),
            IntVec::from_i64(&[0, 1])
        );
        assert_eq!(
            primitive(&IntVec::from_i64(&[6, 10, 15])).unwrap(),
            IntVec::from_i64(&[6, 10, 15])
        );
        assert!(matches!(
            primitive(&IntVec::from_i64(&[0, 0])),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn hnf_identity() {
        let id = int_mat(&[&[1, 0], &[0, 1]]);
        let (h, u) = hnf(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);
    }

    #[test]
    fn hnf_two_by_two() {
        let a = int_mat(&[&[2, 1], &[0, 1]]);
        let (h, u) = hnf(&a);
        assert_eq!(int_mat_mul(&a, &u), h);
        assert!(int_det(&u).abs().is_one());
        assert!(is_lower_hnf(&h));
        assert!(h[0][1].is_zero());
    }

    #[test]
    fn hnf_single_row_is_gcd() {
        let a = int_mat(&[&[4, 6]]);
        let (h, u) = hnf(&a);
        assert_eq!(h, int_mat(&[&[2, 0]]));
        assert_eq!(int_mat_mul(&a, &u), h);
        assert!(int_det(&u).abs().is_one());
        // Brute force: the smallest positive value of 4x + 6y over small x, y.
        let best = (-5i64..=5)
            .flat_map(|x| (-5i64..=5).map(move |y| 4 * x + 6 * y))
            .filter(|&v| v > 0)
            .min()
            .unwrap();
        assert_eq!(BigInt::from(best), h[0][0]);
    }

    #[test]
    fn full_plane_lattice_is_standard() {
        let lb = projected_lattice_basis(&SubspaceBasis::full(2)).unwrap();
        assert_eq!(lb.generators(), &[QVec::unit(2, 0), QVec::unit(2, 1)]);
    }

    #[test]
    fn diagonal_line_lattice() {
        let l = SubspaceBasis::from_int_vectors(&[IntVec::from_i64(&[1, 1])]).unwrap();
        let lb = projected_lattice_basis(&l).unwrap();
        assert_eq!(lb.generators().len(), 1);
        let g = &lb.generators()[0];
        assert!(g == &QVec(vec![rat(1, 2), rat(1, 2)]) || g == &QVec(vec![rat(-1, 2), rat(-1, 2)]));
        // Oracle: every projected point of [-3,3]^2 has integral coordinates.
        for x in -3..=3 {
            for y in -3..=3 {
                let p = lb.project(&QVec::from_ints(&[x, y]));
                let c = lattice_coords(&lb, &p).unwrap();
                assert!(c.is_integral());
            }
        }
        let c = lattice_coords(&lb, &QVec(vec![rat(3, 2), rat(3, 2)])).unwrap();
        assert_eq!(c[0].abs(), rat(3, 1));
    }

    #[test]
    fn coordinate_plane_in_r3() {
        let l = SubspaceBasis::from_int_vectors(&[
            IntVec::from_i64(&[1, 0, 0]),
            IntVec::from_i64(&[0, 1, 0]),
        ])
        .unwrap();
        let lb = projected_lattice_basis(&l).unwrap();
        assert_eq!(lb.generators(), &[QVec::unit(3, 0), QVec::unit(3, 1)]);
    }

    #[test]
    fn coords_standard_and_outside() {
        let lb = projected_lattice_basis(&SubspaceBasis::full(2)).unwrap();
        let p = QVec(vec![rat(1, 2), rat(1, 99)]);
        assert_eq!(lattice_coords(&lb, &p).unwrap(), p);
        let l = SubspaceBasis::from_int_vectors(&[IntVec::from_i64(&[1, 1])]).unwrap();
        let lb = projected_lattice_basis(&l).unwrap();
        assert!(matches!(
            lattice_coords(&lb, &QVec::from_ints(&[1, 0])),
            Err(Error::NotInSubspace)
        ));
    }

    #[test]
    fn dependent_basis_rejected() {
        let r = SubspaceBasis::from_int_vectors(&[
            IntVec::from_i64(&[1, 2]),
            IntVec::from_i64(&[2, 4]),
        ]);
        assert!(matches!(r, Err(Error::NotLatticeSubspace(_))));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn mat(n: usize) -> impl Strategy<Value = IntMat> {
            proptest::collection::vec(proptest::collection::vec(-10i64..=10, n), n).prop_map(
                |rows| {
                    rows.into_iter()
                        .map(|r| r.into_iter().map(BigInt::from).collect())
                        .collect()
                },
            )
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]
            #[test]
            fn hnf_postconditions_2(a in mat(2)) {
                let (h, u) = hnf(&a);
                prop_assert_eq!(int_mat_mul(&a, &u), h.clone());
                prop_assert!(int_det(&u).abs().is_one());
                prop_assert!(is_lower_hnf(&h));
            }

            #[test]
            fn hnf_postconditions_3(a in mat(3)) {
                let (h, u) = hnf(&a);
                prop_assert_eq!(int_mat_mul(&a, &u), h.clone());
                prop_assert!(int_det(&u).abs().is_one());
                prop_assert!(is_lower_hnf(&h));
            }

            #[test]
            fn projected_lattice_matches_box_search(
                v1 in proptest::collection::vec(-3i64..=3, 3),
                v2 in proptest::collection::vec(-3i64..=3, 3),
                two in proptest::bool::ANY,
            ) {
                let mut vs = vec![IntVec::from_i64(&v1)];
                if two { vs.push(IntVec::from_i64(&v2)); }
                let Ok(l) = SubspaceBasis::from_int_vectors(&vs) else { return Ok(()); };
                let lb = projected_lattice_basis(&l).unwrap();
                // Projections of integer points are lattice points.
                let mut projected = Vec::new();
                for x in -3..=3 { for y in -3..=3 { for z in -3..=3 {
                    let p = lb.project(&QVec::from_ints(&[x, y, z]));
                    let c = lattice_coords(&lb, &p).unwrap();
                    prop_assert!(c.is_integral());
                    projected.push(p);
                }}}
                // Each generator is the projection of some integer point, found
                // by search; integer combinations then follow by linearity.
                let k = lb.dim();
                let mut preimages: Vec<IntVec> = Vec::new();
                for g in lb.generators() {
                    let mut hit = None;
                    'search: for x in -17i64..=17 { for y in -17i64..=17 { for z in -17i64..=17 {
                        let zv = IntVec::from_i64(&[x, y, z]);
                        if &lb.project(&zv.to_qvec()) == g { hit = Some(zv); break 'search; }
                    }}}
                    prop_assert!(hit.is_some(), "no integer preimage for generator {}", g);
                    preimages.push(hit.unwrap());
                }
                let coeffs: Vec<Vec<i64>> = if k == 1 {
                    (-3..=3).map(|a| vec![a]).collect()
                } else {
                    (-3..=3).flat_map(|a| (-3..=3).map(move |b| vec![a, b])).collect()
                };
                for c in coeffs {
                    let p = lb.point(&QVec::from_ints(&c));
                    let z = preimages.iter().zip(&c).fold(QVec::zeros(3), |acc, (zi, &ci)| {
                        acc.add(&zi.to_qvec().scale(&Rational::from_integer(ci.into())))
                    });
                    prop_assert!(z.is_integral());
                    prop_assert_eq!(lb.project(&z), p);
                }
            }
        }
    }
}
