//! Minimal integer fillings by exact elimination plus LP-based branch and bound.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::lp::{minimize, LpOutcome};
use super::{FillingError, FillingResult, Objective, Solver, Status};
use crate::budget::Budget;
use crate::complex::{boundary, weighted_count, CellComplex, Chain};

type Row = BTreeMap<usize, BigRational>;

/// One independent equation of the reduced system: `x[pivot] + Σ coeffs·x_free = E·b`.
#[derive(Clone, Debug)]
struct PivotRow {
    pivot: usize,
    /// Coefficients over the (n+1)-cells, including the pivot itself.
    coeffs: Row,
    /// Row of the transformation applied to the right-hand side.
    transform: Row,
}

/// Reduced row echelon form of ∂_{n+1}, reusable across right-hand sides.
#[derive(Clone, Debug)]
pub struct FillingProblem<'a> {
    complex: &'a CellComplex,
    dim: usize,
    objective: Objective,
    weights: Vec<u64>,
    pivots: Vec<PivotRow>,
    /// Left-kernel rows: `b` is a rational boundary iff every row annihilates it.
    consistency: Vec<Row>,
}

fn dot(row: &Row, b: &Chain) -> BigRational {
    let mut acc = BigRational::zero();
    for (f, v) in b.terms() {
        if let Some(r) = row.get(&f) {
            acc += r * BigRational::from_integer(BigInt::from(v));
        }
    }
    acc
}

fn axpy(target: &mut Row, factor: &BigRational, source: &Row) {
    for (&k, v) in source {
        let e = target.entry(k).or_insert_with(BigRational::zero);
        *e -= factor * v;
        if e.is_zero() {
            target.remove(&k);
        }
    }
}

impl<'a> FillingProblem<'a> {
    /// Prepares to fill `dim`-boundaries with `(dim+1)`-cells.
    pub fn new(complex: &'a CellComplex, dim: usize, objective: Objective) -> Self {
        let cols = complex.num_cells(dim + 1);
        let faces = complex.num_cells(dim);
        let weights: Vec<u64> = match objective {
            Objective::Count => vec![1; cols],
            Objective::Weighted => complex.weights(dim + 1).to_vec(),
        };
        // Rows indexed by face, columns by cell; transform starts as identity.
        let mut rows: Vec<(Row, Row)> = (0..faces)
            .map(|f| (Row::new(), Row::from([(f, BigRational::one())])))
            .collect();
        for (j, c) in complex.cells(dim + 1).iter().enumerate() {
            for &(f, s) in &c.boundary {
                rows[f].0.insert(j, BigRational::from_integer(BigInt::from(s)));
            }
        }
        let mut pivots: Vec<PivotRow> = Vec::new();
        let mut remaining: Vec<(Row, Row)> = rows;
        let mut done: Vec<(usize, Row, Row)> = Vec::new();
        // Row reduction choosing the smallest available column as pivot.
        loop {
            let Some((ri, col)) = remaining
                .iter()
                .enumerate()
                .filter_map(|(i, (a, _))| a.keys().next().map(|&c| (i, c)))
                .min_by_key(|&(i, c)| (c, i))
            else {
                break;
            };
            let (mut a, mut t) = remaining.swap_remove(ri);
            let p = a[&col].clone();
            for v in a.values_mut() {
                *v /= &p;
            }
            for v in t.values_mut() {
                *v /= &p;
            }
            for (oa, ot) in remaining.iter_mut() {
                if let Some(f) = oa.get(&col).cloned() {
                    axpy(oa, &f, &a);
                    axpy(ot, &f, &t);
                }
            }
            for (_, da, dt) in done.iter_mut() {
                if let Some(f) = da.get(&col).cloned() {
                    axpy(da, &f, &a);
                    axpy(dt, &f, &t);
                }
            }
            // Entries of earlier pivots were eliminated from this row already.
            a.retain(|_, v| !v.is_zero());
            done.push((col, a, t));
        }
        done.sort_by_key(|d| d.0);
        for (pivot, coeffs, transform) in done {
            pivots.push(PivotRow { pivot, coeffs, transform });
        }
        let consistency = remaining.into_iter().map(|(_, t)| t).filter(|t| !t.is_empty()).collect();
        FillingProblem { complex, dim, objective, weights, pivots, consistency }
    }

    pub fn nullity(&self) -> usize {
        self.complex.num_cells(self.dim + 1) - self.pivots.len()
    }

    fn value_of(&self, x: &[i64]) -> u64 {
        x.iter().zip(&self.weights).map(|(&v, &w)| v.unsigned_abs() * w).sum()
    }

    fn check_input(&self, b: &Chain) -> Result<Vec<BigRational>, FillingError> {
        if b.dim() != self.dim {
            return Err(FillingError::DimensionMismatch);
        }
        if self.dim >= 1 && !boundary(self.complex, b).is_zero() {
            return Err(FillingError::NotACycle);
        }
        if self.consistency.iter().any(|z| !dot(z, b).is_zero()) {
            return Err(FillingError::NotABoundary);
        }
        Ok(self.pivots.iter().map(|p| dot(&p.transform, b)).collect())
    }

    fn result(&self, x: &[i64], status: Status, lower_bound: BigRational, solver: Solver) -> FillingResult {
        let filling = Chain::from_terms(self.dim + 1, x.iter().enumerate().map(|(i, &v)| (i, v)));
        FillingResult {
            count: filling.l1(),
            weighted_count: weighted_count(self.complex, &filling),
            filling,
            status,
            lower_bound,
            solver,
            objective: self.objective,
        }
    }

    /// LP relaxation building blocks: equalities in `x⁺, x⁻, slack` form with
    /// the branching bounds appended.
    fn relaxation(&self, rhs: &[BigRational], bounds: &[(usize, bool, BigInt)]) -> LpOutcome {
        let m = self.complex.num_cells(self.dim + 1);
        let nvars = 2 * m + bounds.len();
        let mut a = Vec::with_capacity(self.pivots.len() + bounds.len());
        let mut b = Vec::with_capacity(a.capacity());
        for (p, r) in self.pivots.iter().zip(rhs) {
            let mut row = vec![BigRational::zero(); nvars];
            for (&j, v) in &p.coeffs {
                row[j] = v.clone();
                row[m + j] = -v.clone();
            }
            a.push(row);
            b.push(r.clone());
        }
        for (k, (j, upper, v)) in bounds.iter().enumerate() {
            let mut row = vec![BigRational::zero(); nvars];
            row[*j] = BigRational::one();
            row[m + j] = -BigRational::one();
            row[2 * m + k] = if *upper { BigRational::one() } else { -BigRational::one() };
            a.push(row);
            b.push(BigRational::from_integer(v.clone()));
        }
        let mut c = vec![BigRational::zero(); nvars];
        for j in 0..m {
            let w = BigRational::from_integer(BigInt::from(self.weights[j]));
            c[j] = w.clone();
            c[m + j] = w;
        }
        minimize(&a, &b, &c, &Budget::unlimited())
    }

    /// Optimal value of the LP relaxation (a lower bound on the filling size).
    pub fn lp_bound(&self, b: &Chain) -> Result<BigRational, FillingError> {
        let rhs = self.check_input(b)?;
        if self.nullity() == 0 {
            let x = self.unique_solution(&rhs);
            return Ok(x.iter().zip(&self.weights).fold(BigRational::zero(), |acc, (v, &w)| {
                acc + v.abs() * BigRational::from_integer(BigInt::from(w))
            }));
        }
        match self.relaxation(&rhs, &[]) {
            LpOutcome::Optimal { value, .. } => Ok(value),
            _ => Err(FillingError::NotABoundary),
        }
    }

    fn unique_solution(&self, rhs: &[BigRational]) -> Vec<BigRational> {
        let mut x = vec![BigRational::zero(); self.complex.num_cells(self.dim + 1)];
        for (p, r) in self.pivots.iter().zip(rhs) {
            x[p.pivot] = r.clone();
        }
        x
    }

    /// Minimal filling of `b`; ties broken towards the lexicographically least
    /// coefficient vector. Each LP solve costs one budget node.
    pub fn solve(&self, b: &Chain, budget: &Budget) -> Result<FillingResult, FillingError> {
        let rhs = self.check_input(b)?;
        if self.nullity() == 0 {
            let x = self.unique_solution(&rhs);
            if x.iter().any(|v| !v.is_integer()) {
                return Err(FillingError::NotABoundary);
            }
            let xi: Vec<i64> = x.iter().map(|v| v.to_integer().to_i64().expect("coefficient fits i64")).collect();
            let value = self.value_of(&xi);
            return Ok(self.result(&xi, Status::Exact, BigRational::from_integer(BigInt::from(value)), Solver::Ilp));
        }
        self.branch_and_bound(&rhs, budget)
    }

    fn branch_and_bound(&self, rhs: &[BigRational], budget: &Budget) -> Result<FillingResult, FillingError> {
        let m = self.complex.num_cells(self.dim + 1);
        let root = match self.relaxation(rhs, &[]) {
            LpOutcome::Optimal { value, .. } => value,
            LpOutcome::Infeasible => return Err(FillingError::NotABoundary),
            other => unreachable!("relaxation is bounded below: {other:?}"),
        };
        let mut best: Option<(u64, Vec<i64>)> = None;
        // Depth-first stack of (bounds, parent relaxation value).
        let mut stack: Vec<(Vec<(usize, bool, BigInt)>, BigRational)> = vec![(Vec::new(), root.clone())];
        let mut exhausted = false;
        while let Some((bounds, parent)) = stack.pop() {
            if let Some((v, _)) = &best {
                if parent > BigRational::from_integer(BigInt::from(*v)) {
                    continue;
                }
            }
            if !budget.tick() {
                stack.push((bounds, parent));
                exhausted = true;
                break;
            }
            let (x, value) = match self.relaxation(rhs, &bounds) {
                LpOutcome::Optimal { x, value } => (x, value),
                _ => continue,
            };
            if let Some((v, _)) = &best {
                if value > BigRational::from_integer(BigInt::from(*v)) {
                    continue;
                }
            }
            let signed: Vec<BigRational> = (0..m).map(|j| &x[j] - &x[m + j]).collect();
            match signed.iter().position(|v| !v.is_integer()) {
                Some(j) => {
                    let fl = signed[j].floor().to_integer();
                    let mut up = bounds.clone();
                    up.push((j, false, fl.clone() + BigInt::one()));
                    let mut down = bounds;
                    down.push((j, true, fl));
                    stack.push((up, value.clone()));
                    stack.push((down, value));
                }
                None => {
                    let xi: Vec<i64> = signed.iter().map(|v| v.to_integer().to_i64().expect("coefficient fits i64")).collect();
                    let val = self.value_of(&xi);
                    let better = match &best {
                        None => true,
                        Some((bv, bx)) => val < *bv || (val == *bv && xi < *bx),
                    };
                    if better {
                        best = Some((val, xi));
                    }
                }
            }
        }
        let lower_bound = ceil_bound(root);
        match best {
            None if exhausted => Err(FillingError::BudgetExhausted { lower_bound }),
            None => Err(FillingError::NotABoundary),
            Some((val, x)) => {
                let vq = BigRational::from_integer(BigInt::from(val));
                // Open nodes whose parent bound is below the incumbent could still improve it.
                let open_better = stack.iter().any(|(_, p)| *p < vq);
                if exhausted && open_better {
                    Ok(self.result(&x, Status::UpperBound, lower_bound, Solver::Ilp))
                } else {
                    Ok(self.result(&x, Status::Exact, vq, Solver::Ilp))
                }
            }
        }
    }
}

/// Integer weights make every feasible value an integer, so the ceiling of
/// the relaxation is still a valid bound.
fn ceil_bound(v: BigRational) -> BigRational {
    BigRational::from_integer(v.ceil().to_integer())
}

/// Minimal filling of `b` in `x` by `(n+1)`-cells.
pub fn min_filling(x: &CellComplex, b: &Chain, objective: Objective, budget: &Budget) -> Result<FillingResult, FillingError> {
    FillingProblem::new(x, b.dim(), objective).solve(b, budget)
}

/// LP relaxation only: a rational lower bound, reported with an empty filling.
pub fn lp_filling_bound(x: &CellComplex, b: &Chain, objective: Objective) -> Result<FillingResult, FillingError> {
    let p = FillingProblem::new(x, b.dim(), objective);
    let bound = p.lp_bound(b)?;
    Ok(FillingResult {
        filling: Chain::zero(b.dim() + 1),
        count: 0,
        weighted_count: 0,
        status: Status::LpLowerBound,
        lower_bound: bound,
        solver: Solver::Lp,
        objective,
    })
}
