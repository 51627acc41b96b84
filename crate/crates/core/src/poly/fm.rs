//! Fourier–Motzkin elimination on rational inequality systems.

use num_traits::{Signed, Zero};

use super::lp;
use crate::ratmath::{QVec, Rational};

/// A system `<rows[i], x> <= rhs[i]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct System {
    pub rows: Vec<QVec>,
    pub rhs: Vec<Rational>,
}

impl System {
    pub fn new(rows: Vec<QVec>, rhs: Vec<Rational>) -> Self {
        debug_assert_eq!(rows.len(), rhs.len());
        System { rows, rhs }
    }

    pub fn push(&mut self, row: QVec, rhs: Rational) {
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Scales every row so that its first nonzero entry has absolute value
    /// one, drops trivial rows, and keeps the tightest copy of parallel
    /// duplicates. Returns `None` if a trivial row is violated.
    pub fn normalized(&self) -> Option<System> {
        let mut out = System::default();
        for (row, b) in self.rows.iter().zip(&self.rhs) {
            let Some(lead) = row.iter().find(|v| !v.is_zero()) else {
                if b.is_negative() {
                    return None;
                }
                continue;
            };
            let s = lead.abs().recip();
            let row = row.scale(&s);
            let b = b * &s;
            match out.rows.iter().position(|r| r == &row) {
                Some(i) => {
                    if b < out.rhs[i] {
                        out.rhs[i] = b;
                    }
                }
                None => out.push(row, b),
            }
        }
        Some(out)
    }

    /// Drops rows implied by the others (exact LP). The system must be
    /// feasible.
    pub fn prune_redundant(&self) -> System {
        let mut keep: Vec<bool> = vec![true; self.len()];
        for i in (0..self.len()).rev() {
            let (rows, rhs): (Vec<QVec>, Vec<Rational>) = (0..self.len())
                .filter(|&j| j != i && keep[j])
                .map(|j| (self.rows[j].clone(), self.rhs[j].clone()))
                .unzip();
            if let lp::LpOutcome::Optimal { value, .. } = lp::maximize(&rows, &rhs, &self.rows[i]) {
                if value <= self.rhs[i] {
                    keep[i] = false;
                }
            }
        }
        let (rows, rhs) = (0..self.len())
            .filter(|&i| keep[i])
            .map(|i| (self.rows[i].clone(), self.rhs[i].clone()))
            .unzip();
        System { rows, rhs }
    }
}

/// Eliminates variable `var`, removing that column from every row.
fn eliminate_one(sys: &System, var: usize) -> System {
    let mut out = System::default();
    let drop_col = |row: &QVec| {
        QVec(
            row.iter()
                .enumerate()
                .filter(|&(j, _)| j != var)
                .map(|(_, v)| v.clone())
                .collect(),
        )
    };
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for (i, row) in sys.rows.iter().enumerate() {
        let c = &row[var];
        if c.is_zero() {
            out.push(drop_col(row), sys.rhs[i].clone());
        } else if c.is_positive() {
            pos.push(i);
        } else {
            neg.push(i);
        }
    }
    for &p in &pos {
        for &q in &neg {
            let cp = sys.rows[p][var].clone();
            let cq = -sys.rows[q][var].clone();
            let row = sys.rows[p].scale(&cq).add(&sys.rows[q].scale(&cp));
            let rhs = &sys.rhs[p] * &cq + &sys.rhs[q] * &cp;
            out.push(drop_col(&row), rhs);
        }
    }
    out
}

/// Projects the system onto the variables not listed in `vars`, eliminating
/// in ascending index order and pruning redundancy after each step.
/// Returns `None` when the system is infeasible.
pub fn eliminate(sys: &System, vars: &[usize]) -> Option<System> {
    let mut vars: Vec<usize> = vars.to_vec();
    vars.sort_unstable();
    vars.dedup();
    let dim = sys.rows.first().map(QVec::dim);
    let mut cur = sys.normalized()?;
    if let Some(d) = dim {
        lp::feasible_point(&cur.rows, &cur.rhs, d)?;
    }
    cur = cur.prune_redundant();
    // Removing a column shifts later indices down by one.
    for (removed, &v) in vars.iter().enumerate() {
        cur = eliminate_one(&cur, v - removed);
        cur = cur.normalized()?.prune_redundant();
    }
    Some(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::rat;

    fn q(v: &[i64]) -> QVec {
        QVec::from_ints(v)
    }

    #[test]
    fn project_cube_to_square() {
        let mut sys = System::default();
        for i in 0..3 {
            let mut e = vec![0; 3];
            e[i] = 1;
            sys.push(q(&e), rat(1, 1));
            e[i] = -1;
            sys.push(q(&e), rat(0, 1));
        }
        let out = eliminate(&sys, &[2]).unwrap();
        assert_eq!(out.len(), 4);
        for (r, b) in out.rows.iter().zip(&out.rhs) {
            assert_eq!(r.dim(), 2);
            assert!(b == &rat(1, 1) || b == &rat(0, 1));
        }
    }

    #[test]
    fn project_triangle_shadow() {
        // x + y <= 1, x >= 0, y >= 0; projecting out y leaves 0 <= x <= 1.
        let sys = System::new(
            vec![q(&[1, 1]), q(&[-1, 0]), q(&[0, -1])],
            vec![rat(1, 1), rat(0, 1), rat(0, 1)],
        );
        let out = eliminate(&sys, &[1]).unwrap();
        let mut pairs: Vec<(Rational, Rational)> = out
            .rows
            .iter()
            .zip(&out.rhs)
            .map(|(r, b)| (r[0].clone(), b.clone()))
            .collect();
        pairs.sort();
        assert_eq!(pairs, vec![(rat(-1, 1), rat(0, 1)), (rat(1, 1), rat(1, 1))]);
    }

    #[test]
    fn infeasible_detected() {
        let sys = System::new(vec![q(&[1, 0]), q(&[-1, 0])], vec![rat(0, 1), rat(-1, 1)]);
        assert!(eliminate(&sys, &[1]).is_none());
    }
}
