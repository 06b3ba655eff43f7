//! Exact two-phase simplex over the rationals with Bland's rule.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::budget::Budget;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<BigRational>, value: BigRational },
    Infeasible,
    Unbounded,
    BudgetExhausted,
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    obj: Vec<BigRational>,
    basis: Vec<usize>,
    /// Column index of the right-hand side.
    rhs: usize,
}

enum Step {
    Optimal,
    Unbounded,
    Pivoted,
}

impl Tableau {
    fn pivot(&mut self, r: usize, s: usize) {
        let p = self.rows[r][s].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[s].is_zero() {
                continue;
            }
            let f = row[s].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        if !self.obj[s].is_zero() {
            let f = self.obj[s].clone();
            for (v, pv) in self.obj.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = s;
    }

    fn step(&mut self, allowed: usize) -> Step {
        let Some(s) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
            return Step::Optimal;
        };
        let mut best: Option<(usize, BigRational)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if row[s].is_positive() {
                let ratio = &row[self.rhs] / &row[s];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
        }
        match best {
            None => Step::Unbounded,
            Some((r, _)) => {
                self.pivot(r, s);
                Step::Pivoted
            }
        }
    }

    fn run(&mut self, allowed: usize, budget: &Budget) -> Option<Step> {
        loop {
            if !budget.tick() {
                return None;
            }
            match self.step(allowed) {
                Step::Pivoted => continue,
                other => return Some(other),
            }
        }
    }
}

/// Minimises `c·x` subject to `A x = b`, `x ≥ 0`. Each simplex pivot costs one
/// budget node.
pub fn minimize(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational], budget: &Budget) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let width = n + m + 1;
    let rhs = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (ai, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut row = vec![BigRational::zero(); width];
        for (j, v) in ai.iter().enumerate() {
            row[j] = if flip { -v.clone() } else { v.clone() };
        }
        row[n + i] = BigRational::one();
        row[rhs] = if flip { -bi.clone() } else { bi.clone() };
        rows.push(row);
    }
    let mut obj = vec![BigRational::zero(); width];
    for row in &rows {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[rhs] -= &row[rhs];
    }
    let mut t = Tableau { rows, obj, basis: (n..n + m).collect(), rhs };

    match t.run(n + m, budget) {
        None => return LpOutcome::BudgetExhausted,
        Some(Step::Unbounded) => unreachable!("phase one is bounded"),
        _ => {}
    }
    if !t.obj[rhs].is_zero() {
        return LpOutcome::Infeasible;
    }
    // Drive artificial variables out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let mut obj = vec![BigRational::zero(); width];
    obj[..n].clone_from_slice(c);
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        let cb = &c[bv];
        if cb.is_zero() {
            continue;
        }
        for j in 0..n {
            obj[j] -= cb * &row[j];
        }
        obj[rhs] -= cb * &row[rhs];
    }
    t.obj = obj;
    match t.run(n, budget) {
        None => LpOutcome::BudgetExhausted,
        Some(Step::Unbounded) => LpOutcome::Unbounded,
        Some(_) => {
            let mut x = vec![BigRational::zero(); n];
            for (row, &bv) in t.rows.iter().zip(&t.basis) {
                x[bv] = row[rhs].clone();
            }
            LpOutcome::Optimal { x, value: -t.obj[rhs].clone() }
        }
    }
}
