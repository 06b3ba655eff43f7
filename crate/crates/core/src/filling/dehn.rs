//! Enumeration of connected n-boundaries and ball-restricted Dehn tables.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::{FillingError, FillingProblem, FillingResult, Objective, Status};
use crate::budget::Budget;
use crate::complex::{boundary, weighted_count, CellComplex, Chain};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SizeMeasure {
    /// |b| = Σ|coeff|.
    Count,
    /// |b|_w = Σ|coeff|·ℓ_X(σ).
    Weighted,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DehnError {
    #[error("dimension {0} is not supported by this complex")]
    Unsupported(usize),
    #[error("boundary enumeration exceeded {cap} nodes")]
    EnumerationCap { cap: u64 },
    #[error(transparent)]
    Filling(#[from] FillingError),
}

/// All connected nonzero `n`-cycles of size at most `k_max`, one of each
/// `±` pair (the least cell of the support carries a positive coefficient).
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub cycles: Vec<Chain>,
    pub nodes: u64,
}

struct Grower<'a> {
    x: &'a CellComplex,
    n: usize,
    k_max: u64,
    cost: Vec<u64>,
    min_cost: u64,
    max_faces: u64,
    cofaces: Vec<Vec<(usize, i64)>>,
    start: usize,
    visited: BTreeSet<Chain>,
    found: Vec<Chain>,
    nodes: u64,
    cap: u64,
}

impl Grower<'_> {
    fn feasible(&self, size: u64, bd: &Chain) -> bool {
        if size > self.k_max {
            return false;
        }
        if bd.is_zero() {
            return true;
        }
        let needed = bd.l1().div_ceil(self.max_faces);
        size + needed * self.min_cost <= self.k_max
    }

    fn grow(&mut self, c: Chain, bd: Chain, size: u64) -> Result<(), DehnError> {
        if !self.visited.insert(c.clone()) {
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(DehnError::EnumerationCap { cap: self.cap });
        }
        let mut moves: Vec<(usize, i64)> = Vec::new();
        if bd.is_zero() {
            self.found.push(c.clone());
            let mut near = BTreeSet::new();
            for (cell, _) in c.terms() {
                for &(f, _) in &self.x.cell(self.n, cell).boundary {
                    for &(s, _) in &self.cofaces[f] {
                        near.insert(s);
                    }
                }
            }
            for s in near.into_iter().filter(|&s| s >= self.start) {
                match c.coeff(s).signum() {
                    0 => moves.extend([(s, 1), (s, -1)]),
                    sg => moves.push((s, sg)),
                }
            }
        } else {
            let (f, m) = bd.terms().next().expect("nonzero boundary");
            for &(s, inc) in &self.cofaces[f] {
                if s < self.start {
                    continue;
                }
                let sg = -m.signum() * inc.signum();
                let cur = c.coeff(s).signum();
                if cur == 0 || cur == sg {
                    moves.push((s, sg));
                }
            }
        }
        for (s, sg) in moves {
            let size2 = size + self.cost[s];
            let mut bd2 = bd.clone();
            for &(f, inc) in &self.x.cell(self.n, s).boundary {
                bd2.add_term(f, sg * inc);
            }
            if !self.feasible(size2, &bd2) {
                continue;
            }
            let mut c2 = c.clone();
            c2.add_term(s, sg);
            if c2.is_zero() {
                continue;
            }
            self.grow(c2, bd2, size2)?;
        }
        Ok(())
    }
}

/// Enumerates connected `n`-cycles (`n ≥ 1`) by growing chains from their
/// least cell, closing the least open face first.
pub fn enumerate_boundaries(
    x: &CellComplex,
    n: usize,
    k_max: u64,
    measure: SizeMeasure,
    node_cap: u64,
) -> Result<Enumeration, DehnError> {
    if n == 0 || n > x.top_dim() {
        return Err(DehnError::Unsupported(n));
    }
    let cost: Vec<u64> = match measure {
        SizeMeasure::Count => alloc::vec![1; x.num_cells(n)],
        SizeMeasure::Weighted => x.weights(n).to_vec(),
    };
    let max_faces = x
        .cells(n)
        .iter()
        .map(|c| c.boundary.iter().map(|&(_, s)| s.unsigned_abs()).sum::<u64>())
        .max()
        .unwrap_or(1)
        .max(1);
    let mut g = Grower {
        x,
        n,
        k_max,
        min_cost: cost.iter().copied().min().unwrap_or(1),
        cost,
        max_faces,
        cofaces: x.cofaces(n),
        start: 0,
        visited: BTreeSet::new(),
        found: Vec::new(),
        nodes: 0,
        cap: node_cap,
    };
    for s in 0..x.num_cells(n) {
        g.start = s;
        g.visited.clear();
        let c = Chain::cell(n, s);
        let bd = boundary(x, &c);
        let size = g.cost[s];
        if g.feasible(size, &bd) {
            g.grow(c, bd, size)?;
        }
    }
    let mut cycles = g.found;
    let key = |c: &Chain| match measure {
        SizeMeasure::Count => c.l1(),
        SizeMeasure::Weighted => weighted_count(x, c),
    };
    cycles.sort_by(|a, b| (key(a), a).cmp(&(key(b), b)));
    Ok(Enumeration { cycles, nodes: g.nodes })
}

/// A boundary with its exact plain and weighted minimal fillings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryRecord {
    pub id: usize,
    pub chain: Chain,
    pub count: u64,
    pub weighted: u64,
    pub filling: FillingResult,
    pub weighted_filling: FillingResult,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryStatus {
    Exact,
    LowerBound,
}

impl EntryStatus {
    pub fn tag(self) -> &'static str {
        match self {
            EntryStatus::Exact => "exact",
            EntryStatus::LowerBound => "lower-bound",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DehnEntry {
    pub k: u64,
    pub value: u64,
    pub status: EntryStatus,
    /// Record id of a boundary attaining the value.
    pub witness: Option<usize>,
}

/// Ball-restricted values of d^n (or d_w^n) for k = 0..=k_max.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DehnTable {
    pub dim: usize,
    pub weighted: bool,
    pub radius: Option<usize>,
    pub entries: Vec<DehnEntry>,
    pub boundaries: Vec<BoundaryRecord>,
    /// Cycles that are not integral boundaries (none in a simply connected fragment).
    pub non_boundaries: usize,
}

impl DehnTable {
    pub fn k_max(&self) -> u64 {
        self.entries.last().map_or(0, |e| e.k)
    }

    /// Value at `k`, clamped to the tabulated range; the flag reports clamping.
    pub fn value_at(&self, k: u64) -> (u64, bool) {
        let km = self.k_max();
        (self.entries[k.min(km) as usize].value, k > km)
    }

    pub fn values(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.value).collect()
    }
}

fn bound_value(r: &FillingResult) -> (u64, bool) {
    match r.status {
        Status::Exact => (r.value(), true),
        _ => (r.lower_bound.ceil().to_integer().to_u64().unwrap_or(0), false),
    }
}

/// Solves both fillings of every cycle; non-boundaries are counted and dropped.
pub fn solve_boundaries(
    x: &CellComplex,
    n: usize,
    cycles: &[Chain],
    max_nodes: u64,
) -> Result<(Vec<BoundaryRecord>, usize), DehnError> {
    let plain = FillingProblem::new(x, n, Objective::Count);
    let weighted = FillingProblem::new(x, n, Objective::Weighted);
    let mut out = Vec::new();
    let mut rejected = 0;
    for c in cycles {
        match solve_one(x, &plain, &weighted, c, max_nodes, out.len())? {
            Some(r) => out.push(r),
            None => rejected += 1,
        }
    }
    Ok((out, rejected))
}

/// Both minimal fillings of one cycle, or `None` if it is not a boundary.
pub fn solve_one(
    x: &CellComplex,
    plain: &FillingProblem<'_>,
    weighted: &FillingProblem<'_>,
    c: &Chain,
    max_nodes: u64,
    id: usize,
) -> Result<Option<BoundaryRecord>, DehnError> {
    let f = match plain.solve(c, &Budget::new(max_nodes)) {
        Ok(f) => f,
        Err(FillingError::NotABoundary) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let w = weighted.solve(c, &Budget::new(max_nodes))?;
    Ok(Some(BoundaryRecord {
        id,
        chain: c.clone(),
        count: c.l1(),
        weighted: weighted_count(x, c),
        filling: f,
        weighted_filling: w,
    }))
}

/// Tabulates d (or d_w) from solved boundary records.
pub fn dehn_table_from(
    n: usize,
    k_max: u64,
    weighted: bool,
    radius: Option<usize>,
    boundaries: Vec<BoundaryRecord>,
    non_boundaries: usize,
) -> DehnTable {
    let mut entries = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max {
        let mut best: (u64, Option<usize>, u64) = (0, None, 0);
        let mut exact = true;
        for r in &boundaries {
            let size = if weighted { r.weighted } else { r.count };
            if size > k {
                continue;
            }
            let (v, ok) = bound_value(if weighted { &r.weighted_filling } else { &r.filling });
            exact &= ok;
            if v > best.0 || (v == best.0 && best.1.is_some() && size < best.2) {
                best = (v, Some(r.id), size);
            }
        }
        let witness = if best.0 > 0 { best.1 } else { None };
        let status = if exact { EntryStatus::Exact } else { EntryStatus::LowerBound };
        entries.push(DehnEntry { k, value: best.0, status, witness });
    }
    DehnTable { dim: n, weighted, radius, entries, boundaries, non_boundaries }
}

/// Enumerates, solves and tabulates in one pass.
pub fn dehn_table(
    x: &CellComplex,
    n: usize,
    k_max: u64,
    weighted: bool,
    node_cap: u64,
    max_nodes_per_instance: u64,
) -> Result<DehnTable, DehnError> {
    let measure = if weighted { SizeMeasure::Weighted } else { SizeMeasure::Count };
    let e = enumerate_boundaries(x, n, k_max, measure, node_cap)?;
    let (records, rejected) = solve_boundaries(x, n, &e.cycles, max_nodes_per_instance)?;
    Ok(dehn_table_from(n, k_max, weighted, None, records, rejected))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeViolation {
    /// Boundary record id, or the table argument for pointwise checks.
    pub at: u64,
    pub lhs: u64,
    pub rhs: u128,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BridgeReport {
    pub checked: usize,
    /// Checks whose table argument exceeded the tabulated range.
    pub clamped: usize,
    pub violations: Vec<BridgeViolation>,
}

/// ℓ_f^w(u) ≤ d(|u|_w)·(J'·|u|_w + J·J'·d(|u|_w)) for every exactly solved
/// boundary, with J, J' the edge and vertex counts of (n+1)-cells.
pub fn weighted_bound_check(x: &CellComplex, plain: &DehnTable, records: &[BoundaryRecord]) -> BridgeReport {
    let n = plain.dim;
    let j = x.max_edges(n + 1) as u128;
    let jp = x.max_vertices(n + 1) as u128;
    let mut rep = BridgeReport::default();
    for r in records.iter().filter(|r| r.weighted_filling.status == Status::Exact) {
        let (d, clamped) = plain.value_at(r.weighted);
        let d = d as u128;
        let uw = r.weighted as u128;
        let rhs = d * (jp * uw + j * jp * d);
        rep.checked += 1;
        rep.clamped += usize::from(clamped);
        if u128::from(r.weighted_filling.weighted_count) > rhs {
            rep.violations.push(BridgeViolation { at: r.id as u64, lhs: r.weighted_filling.weighted_count, rhs });
        }
    }
    rep
}

/// ℓ_f(u) ≤ |u|·d_w(J'·|u|·(L + J·|u|)) per exactly solved boundary, and the
/// same inequality pointwise on the plain table, with J, J' the edge and
/// vertex counts of n-cells and L the orbit radius.
pub fn converse_bound_check(
    x: &CellComplex,
    plain: &DehnTable,
    weighted: &DehnTable,
    records: &[BoundaryRecord],
) -> BridgeReport {
    let n = plain.dim;
    let j = x.max_edges(n) as u64;
    let jp = x.max_vertices(n) as u64;
    let l = x.orbit_radius();
    let mut rep = BridgeReport::default();
    let check = |at: u64, size: u64, lhs: u64, rep: &mut BridgeReport| {
        let arg = jp * size * (l + j * size);
        let (dw, clamped) = weighted.value_at(arg);
        let rhs = u128::from(size) * u128::from(dw);
        rep.checked += 1;
        rep.clamped += usize::from(clamped);
        if u128::from(lhs) > rhs {
            rep.violations.push(BridgeViolation { at, lhs, rhs });
        }
    };
    for r in records.iter().filter(|r| r.filling.status == Status::Exact) {
        check(r.id as u64, r.count, r.filling.count, &mut rep);
    }
    for e in plain.entries.iter().filter(|e| e.status == EntryStatus::Exact) {
        check(e.k, e.k, e.value, &mut rep);
    }
    rep
}
