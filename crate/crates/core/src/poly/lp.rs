//! Dense-tableau primal simplex over the rationals with Bland's rule.
//!
//! Solves `max <c, x>` subject to `A x <= b` with `x` free, by the usual
//! split `x = x+ - x-` plus one slack per row and a two-phase start.

use num_traits::{One, Signed, Zero};

use crate::ratmath::{QVec, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, point: QVec },
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (v, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let mut rc = cost[j].clone();
        for (i, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                rc -= &cost[b] * &self.rows[i][j];
            }
        }
        rc
    }

    /// Maximizes `cost` over columns `0..ncols`. Returns false if unbounded.
    fn optimize(&mut self, cost: &[Rational], ncols: usize) -> bool {
        loop {
            let Some(enter) = (0..ncols)
                .filter(|j| !self.basis.contains(j))
                .find(|&j| self.reduced_cost(cost, j).is_positive())
            else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .zip(&self.rhs)
            .fold(Rational::zero(), |acc, (&b, r)| acc + &cost[b] * r)
    }
}

/// Builds the phase-one tableau; returns it with the number of structural
/// plus slack columns (artificial columns follow).
fn phase_one(normals: &[QVec], rhs: &[Rational], n: usize) -> Option<(Tableau, usize)> {
    let m = normals.len();
    let structural = 2 * n + m;
    let negative: Vec<usize> = (0..m).filter(|&i| rhs[i].is_negative()).collect();
    let ncols = structural + negative.len();
    let mut rows = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let sign = if rhs[i].is_negative() {
            -Rational::one()
        } else {
            Rational::one()
        };
        let mut row = vec![Rational::zero(); ncols];
        for j in 0..n {
            row[j] = &normals[i][j] * &sign;
            row[n + j] = -&row[j];
        }
        row[2 * n + i] = sign.clone();
        if let Some(k) = negative.iter().position(|&r| r == i) {
            row[structural + k] = Rational::one();
            basis.push(structural + k);
        } else {
            basis.push(2 * n + i);
        }
        rows.push(row);
        b.push(&rhs[i] * &sign);
    }
    let mut t = Tableau {
        rows,
        rhs: b,
        basis,
    };
    if negative.is_empty() {
        return Some((t, structural));
    }
    let mut cost = vec![Rational::zero(); ncols];
    for c in cost.iter_mut().skip(structural) {
        *c = -Rational::one();
    }
    t.optimize(&cost, ncols);
    if !t.objective(&cost).is_zero() {
        return None;
    }
    // Drive artificial variables out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= structural {
            match (0..structural).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    for row in t.rows.iter_mut() {
        row.truncate(structural);
    }
    Some((t, structural))
}

/// `max <c, x>` subject to `<normals[i], x> <= rhs[i]`.
pub fn maximize(normals: &[QVec], rhs: &[Rational], c: &QVec) -> LpOutcome {
    let n = c.dim();
    let Some((mut t, structural)) = phase_one(normals, rhs, n) else {
        return LpOutcome::Infeasible;
    };
    let mut cost = vec![Rational::zero(); structural];
    for j in 0..n {
        cost[j] = c[j].clone();
        cost[n + j] = -c[j].clone();
    }
    if !t.optimize(&cost, structural) {
        return LpOutcome::Unbounded;
    }
    let mut x = QVec::zeros(n);
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] += &t.rhs[i];
        } else if b < 2 * n {
            x[b - n] -= &t.rhs[i];
        }
    }
    LpOutcome::Optimal {
        value: t.objective(&cost),
        point: x,
    }
}

/// Some point satisfying all constraints, or `None` if there is none.
pub fn feasible_point(normals: &[QVec], rhs: &[Rational], n: usize) -> Option<QVec> {
    match maximize(normals, rhs, &QVec::zeros(n)) {
        LpOutcome::Optimal { point, .. } => Some(point),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::rat;

    fn q(v: &[i64]) -> QVec {
        QVec::from_ints(v)
    }

    #[test]
    fn example_cone_max_x2() {
        let normals = [q(&[-2, 1]), q(&[2, 1])];
        let rhs = [rat(1, 2), rat(5, 2)];
        match maximize(&normals, &rhs, &q(&[0, 1])) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, rat(3, 2));
                assert_eq!(point, QVec(vec![rat(1, 2), rat(3, 2)]));
            }
            o => panic!("unexpected {o:?}"),
        }
        assert_eq!(maximize(&normals, &rhs, &q(&[0, -1])), LpOutcome::Unbounded);
    }

    #[test]
    fn infeasible_interval() {
        let normals = [q(&[1]), q(&[-1])];
        let rhs = [rat(0, 1), rat(-1, 1)];
        assert_eq!(maximize(&normals, &rhs, &q(&[1])), LpOutcome::Infeasible);
    }

    #[test]
    fn no_constraints() {
        assert_eq!(feasible_point(&[], &[], 2), Some(QVec::zeros(2)));
        assert_eq!(maximize(&[], &[], &q(&[1, 0])), LpOutcome::Unbounded);
    }

    #[test]
    fn degenerate_box() {
        // Unit square with duplicated and degenerate constraints.
        let normals = [
            q(&[1, 0]),
            q(&[-1, 0]),
            q(&[0, 1]),
            q(&[0, -1]),
            q(&[1, 1]),
            q(&[1, 0]),
        ];
        let rhs = [
            rat(1, 1),
            rat(0, 1),
            rat(1, 1),
            rat(0, 1),
            rat(2, 1),
            rat(1, 1),
        ];
        let v = maximize(&normals, &rhs, &q(&[1, 1]));
        assert_eq!(v.value(), Some(&rat(2, 1)));
        let v = maximize(&normals, &rhs, &q(&[-3, 1]));
        assert_eq!(v.value(), Some(&rat(1, 1)));
    }

    #[test]
    fn negative_rhs_feasible() {
        // x >= 2, y >= 3, x + y <= 10
        let normals = [q(&[-1, 0]), q(&[0, -1]), q(&[1, 1])];
        let rhs = [rat(-2, 1), rat(-3, 1), rat(10, 1)];
        let v = maximize(&normals, &rhs, &q(&[1, 0]));
        assert_eq!(v.value(), Some(&rat(7, 1)));
        let v = maximize(&normals, &rhs, &q(&[-1, -1]));
        assert_eq!(v.value(), Some(&rat(-5, 1)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            /// The optimum matches brute-force vertex enumeration on bounded
            /// planar instances (a box is always appended).
            #[test]
            fn matches_vertex_enumeration(
                rows in proptest::collection::vec((-6i64..=6, -6i64..=6, -12i64..=12, 1i64..=4), 1..6),
                c in (-5i64..=5, -5i64..=5),
            ) {
                let mut normals: Vec<QVec> = rows.iter().map(|r| q(&[r.0, r.1])).collect();
                let mut rhs: Vec<Rational> = rows.iter().map(|r| rat(r.2, r.3)).collect();
                for (a, b) in [([1, 0], 10), ([-1, 0], 10), ([0, 1], 10), ([0, -1], 10)] {
                    normals.push(q(&a));
                    rhs.push(rat(b, 1));
                }
                let cv = q(&[c.0, c.1]);
                let mut best: Option<Rational> = None;
                for i in 0..normals.len() {
                    for j in i + 1..normals.len() {
                        let det = crate::ratmath::cross2(&normals[i], &normals[j]);
                        if det.is_zero() { continue; }
                        let x = (&rhs[i] * &normals[j][1] - &rhs[j] * &normals[i][1]) / &det;
                        let y = (&normals[i][0] * &rhs[j] - &normals[j][0] * &rhs[i]) / &det;
                        let p = QVec(vec![x, y]);
                        if normals.iter().zip(&rhs).all(|(a, b)| &a.dot(&p) <= b) {
                            let v = cv.dot(&p);
                            if best.as_ref().is_none_or(|bv| &v > bv) { best = Some(v); }
                        }
                    }
                }
                let out = maximize(&normals, &rhs, &cv);
                match best {
                    None => prop_assert_eq!(out, LpOutcome::Infeasible),
                    Some(b) => {
                        let LpOutcome::Optimal { value, point } = out else {
                            return Err(TestCaseError::fail("expected optimum"));
                        };
                        prop_assert_eq!(&value, &b);
                        prop_assert_eq!(cv.dot(&point), b);
                        prop_assert!(normals.iter().zip(&rhs).all(|(a, r)| &a.dot(&point) <= r));
                    }
                }
            }
        }
    }
}
