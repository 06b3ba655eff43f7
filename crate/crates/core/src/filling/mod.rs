//! Minimal fillings and Dehn-function tables.

mod dehn;
mod diagram;
mod domination;
mod fit;
mod ilp;
pub mod lp;

pub use dehn::{
    converse_bound_check, dehn_table, dehn_table_from, enumerate_boundaries, solve_boundaries, solve_one,
    weighted_bound_check, BoundaryRecord, BridgeReport, BridgeViolation, DehnEntry, DehnError, DehnTable, EntryStatus,
    Enumeration, SizeMeasure,
};
pub use diagram::{loop_chain, min_area_diagram, EdgeLoop};
pub use domination::{dominates, equivalent, DominationBox, Tabulated};
pub use fit::{poly_bound_fit, FitError, PolyFit};
pub use ilp::{lp_filling_bound, min_filling, FillingProblem};

use num_rational::BigRational;

use crate::complex::Chain;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Objective {
    /// Σ|coeff|.
    Count,
    /// Σ|coeff|·ℓ_X(σ).
    Weighted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Exact,
    UpperBound,
    LpLowerBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solver {
    DiagramBfs,
    Ilp,
    Lp,
}

impl Status {
    pub fn tag(self) -> &'static str {
        match self {
            Status::Exact => "exact",
            Status::UpperBound => "upper-bound",
            Status::LpLowerBound => "lp-lower-bound",
        }
    }
}

impl Solver {
    pub fn tag(self) -> &'static str {
        match self {
            Solver::DiagramBfs => "diagram-bfs",
            Solver::Ilp => "ilp",
            Solver::Lp => "lp",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillingResult {
    pub filling: Chain,
    pub count: u64,
    pub weighted_count: u64,
    pub status: Status,
    /// Never exceeds the optimum of the stated objective.
    pub lower_bound: BigRational,
    pub solver: Solver,
    pub objective: Objective,
}

impl FillingResult {
    /// The optimised quantity: `count` or `weighted_count`.
    pub fn value(&self) -> u64 {
        match self.objective {
            Objective::Count => self.count,
            Objective::Weighted => self.weighted_count,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FillingError {
    #[error("input chain is not a cycle")]
    NotACycle,
    #[error("cycle is not the boundary of an integer chain")]
    NotABoundary,
    #[error("chain dimension does not match the problem")]
    DimensionMismatch,
    #[error("edge path is not closed inside the ball")]
    NotALoop,
    #[error("loop is not null-homotopic inside the ball")]
    NotNullHomotopic,
    #[error("budget exhausted before a filling was found (lower bound {lower_bound})")]
    BudgetExhausted { lower_bound: BigRational },
}
