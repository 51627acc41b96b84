//! Seeded random instance generators used by the test suites and the
//! `gen-corpus` command.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::closures::SplitDisjunction;
use crate::hull2d::Cone2;
use crate::lattice::{primitive, IntVec, SubspaceBasis};
use crate::poly::{is_feasible, HPoly, Halfspace, LpOutcome};
use crate::ratmath::{cross2, floor_int, rat, QVec, Rational};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn small_rational<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> Rational {
    let q = rng.gen_range(1..=max_den);
    rat(rng.gen_range(-bound * q..=bound * q), q)
}

fn nonzero_int_vec<R: Rng>(rng: &mut R, n: usize, bound: i64) -> IntVec {
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
        if v.iter().any(|&e| e != 0) {
            return IntVec::from_i64(&v);
        }
    }
}

/// A planar H-polyhedron with `2..=6` inequalities whose coefficients are
/// rationals in `[-bound, bound]` with denominators at most `max_den`.
pub fn random_poly_2d<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> HPoly {
    let m = rng.gen_range(2..=6);
    let mut hs = Vec::with_capacity(m);
    while hs.len() < m {
        let a = QVec(vec![
            small_rational(rng, bound, max_den),
            small_rational(rng, bound, max_den),
        ]);
        if a.is_zero() {
            continue;
        }
        let b = small_rational(rng, bound, max_den);
        hs.push(Halfspace::from_rational(&a, &b).expect("nonzero normal"));
    }
    HPoly::new(2, hs).expect("planar")
}

/// A feasible planar H-polyhedron with integer normals in `[-bound, bound]`
/// and right-hand sides with denominators at most `max_den`.
pub fn random_feasible_poly_2d<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> HPoly {
    loop {
        let m = rng.gen_range(2..=6);
        let hs = (0..m)
            .map(|_| {
                let a = nonzero_int_vec(rng, 2, bound);
                let b = small_rational(rng, 2 * bound, max_den);
                Halfspace::new(a, b).expect("nonzero normal")
            })
            .collect();
        let p = HPoly::new(2, hs).expect("planar");
        if is_feasible(&p) {
            return p;
        }
    }
}

/// A planar simplicial cone with apex denominators at most `max_den` and
/// primitive ray entries in `[-ray_bound, ray_bound]`.
pub fn random_cone_2d<R: Rng>(rng: &mut R, max_den: i64, ray_bound: i64) -> Cone2 {
    loop {
        let apex = QVec(vec![
            small_rational(rng, 3, max_den),
            small_rational(rng, 3, max_den),
        ]);
        let r1 = primitive(&nonzero_int_vec(rng, 2, ray_bound)).expect("nonzero");
        let r2 = primitive(&nonzero_int_vec(rng, 2, ray_bound)).expect("nonzero");
        if cross2(&r1.to_qvec(), &r2.to_qvec()).is_zero() {
            continue;
        }
        return Cone2::new(apex, r1, r2).expect("valid cone");
    }
}

/// Two halfspaces in `R^n` with non-parallel normals; entries of normals
/// and right-hand sides lie in `[-bound, bound]`.
pub fn random_halfspace_pair<R: Rng>(rng: &mut R, n: usize, bound: i64) -> (Halfspace, Halfspace) {
    loop {
        let a1 = nonzero_int_vec(rng, n, bound);
        let a2 = nonzero_int_vec(rng, n, bound);
        let h1 = Halfspace::new(a1, small_rational(rng, bound, 4)).expect("nonzero");
        let h2 = Halfspace::new(a2, small_rational(rng, bound, 4)).expect("nonzero");
        if h1.normal() == h2.normal() || h1.normal() == &h2.normal().neg() {
            continue;
        }
        return (h1, h2);
    }
}

/// A planar polygon with `6..=8` facets hugging a fractional point, often
/// free of integer points. Callers filter by integer feasibility.
pub fn random_lattice_free_candidate<R: Rng>(rng: &mut R) -> HPoly {
    let centre = QVec(vec![
        rat(rng.gen_range(1..=9), 10),
        rat(rng.gen_range(1..=9), 10),
    ]);
    let m = rng.gen_range(6..=8);
    let mut normals: Vec<IntVec> = Vec::new();
    while normals.len() < m {
        let a = primitive(&nonzero_int_vec(rng, 2, 4)).expect("nonzero");
        if !normals.contains(&a) {
            normals.push(a);
        }
    }
    let hs = normals
        .into_iter()
        .map(|a| {
            let slack = rat(rng.gen_range(1..=6), 10);
            let b = a.dot_q(&centre) + slack;
            Halfspace::new(a, b).expect("nonzero")
        })
        .collect();
    HPoly::new(2, hs).expect("planar")
}

/// An instance for the split projection check in `R^3` with a
/// two-dimensional lattice subspace: `(P, split, cut, L)`, where the split
/// normal and the cut normal lie in `L` and the cut is valid for `P` outside
/// the split set.
pub struct ProjectionInstance {
    pub poly: HPoly,
    pub split: SplitDisjunction,
    pub cut: Halfspace,
    pub subspace: SubspaceBasis,
}

pub fn random_projection_instance<R: Rng>(rng: &mut R) -> ProjectionInstance {
    loop {
        // A box with a few random cuts keeps every LP bounded.
        let mut hs = Vec::new();
        for i in 0..3 {
            let mut e = vec![0i64; 3];
            e[i] = 1;
            hs.push(Halfspace::from_i64(
                &e,
                small_rational(rng, 2, 3).abs() + rat(1, 1),
            ));
            e[i] = -1;
            hs.push(Halfspace::from_i64(
                &e,
                small_rational(rng, 2, 3).abs() + rat(1, 1),
            ));
        }
        for _ in 0..rng.gen_range(1..=3) {
            let a = nonzero_int_vec(rng, 3, 3);
            hs.push(Halfspace::new(a, small_rational(rng, 3, 4)).expect("nonzero"));
        }
        let p = HPoly::new(3, hs).expect("dims");
        if !is_feasible(&p) {
            continue;
        }
        let b1 = nonzero_int_vec(rng, 3, 3);
        let b2 = nonzero_int_vec(rng, 3, 3);
        let Ok(l) = SubspaceBasis::from_int_vectors(&[b1.clone(), b2.clone()]) else {
            continue;
        };
        if l.dim() != 2 {
            continue;
        }
        let comb = |s: i64, t: i64| {
            IntVec(
                b1.0.iter()
                    .zip(&b2.0)
                    .map(|(x, y)| x * BigInt::from(s) + y * BigInt::from(t))
                    .collect(),
            )
        };
        let (s, t) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        let Ok(a) = primitive(&comb(s, t)) else {
            continue;
        };
        let (s2, t2) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        let Ok(c) = primitive(&comb(s2, t2)) else {
            continue;
        };
        let range = match (p.minimize(&a.to_qvec()), p.maximize(&a.to_qvec())) {
            (LpOutcome::Optimal { value: lo, .. }, LpOutcome::Optimal { value: hi, .. }) => {
                (lo, hi)
            }
            _ => continue,
        };
        let k = floor_int(&((&range.0 + &range.1) / rat(2, 1)));
        let split = SplitDisjunction::new(a, k).expect("primitive");
        // Tightest valid rhs of c over the two pieces.
        let mut rhs: Option<Rational> = None;
        for side in [split.left(), split.right()] {
            if let LpOutcome::Optimal { value, .. } = p.with_halfspace(side).maximize(&c.to_qvec())
            {
                rhs = Some(rhs.map_or(value.clone(), |r: Rational| r.max(value)));
            }
        }
        let Some(rhs) = rhs else { continue };
        let cut = Halfspace::new(c, rhs).expect("nonzero");
        return ProjectionInstance {
            poly: p,
            split,
            cut,
            subspace: l,
        };
    }
}

/// The cone `-2 x1 + x2 <= 1/2`, `2 x1 + x2 <= 5/2` with apex `(1/2, 3/2)`.
pub fn fractional_apex_cone() -> HPoly {
    HPoly::new(
        2,
        vec![
            Halfspace::from_i64(&[-2, 1], rat(1, 2)),
            Halfspace::from_i64(&[2, 1], rat(5, 2)),
        ],
    )
    .expect("planar")
}

/// The point `(1/2, 1/99)`: inside the split closure of
/// [`fractional_apex_cone`] but outside its two-halfspace closure.
pub fn separating_point() -> QVec {
    QVec(vec![rat(1, 2), rat(1, 99)])
}
