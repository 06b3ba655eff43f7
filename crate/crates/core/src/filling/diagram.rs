//! Exact van Kampen area of loops in a Cayley 2-complex by IDA* over relator
//! insertions.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{FillingError, FillingResult, Objective, Solver, Status};
use crate::budget::Budget;
use crate::cayley::GroupBall;
use crate::complex::{boundary, weighted_count, CellComplex, Chain};
use crate::words::{Letter, Word};

/// Closed edge path reading `word` from vertex `start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLoop {
    pub start: usize,
    pub word: Word,
}

fn edge_index(ball: &GroupBall) -> BTreeMap<(usize, usize), usize> {
    ball.edges().iter().enumerate().map(|(i, e)| ((e.from, e.gen), i)).collect()
}

fn trace(ball: &GroupBall, edges: &BTreeMap<(usize, usize), usize>, start: usize, letters: &[Letter]) -> Option<(usize, Chain)> {
    let mut v = start;
    let mut chain = Chain::zero(1);
    for &l in letters {
        let u = ball.step(v, l)?;
        if l.is_inverse() {
            chain.add_term(edges[&(u, l.gen())], -1);
        } else {
            chain.add_term(edges[&(v, l.gen())], 1);
        }
        v = u;
    }
    Some((v, chain))
}

/// The 1-chain of a closed loop in the ball.
pub fn loop_chain(ball: &GroupBall, lp: &EdgeLoop) -> Result<Chain, FillingError> {
    match trace(ball, &edge_index(ball), lp.start, lp.word.letters()) {
        Some((end, chain)) if end == lp.start => Ok(chain),
        _ => Err(FillingError::NotALoop),
    }
}

/// Signed-area vector of a closed path in the abelianisation, one entry per
/// generator pair.
fn area_vector(letters: &[Letter], n: usize) -> Vec<i64> {
    let mut pos = alloc::vec![0i64; n];
    let mut area = alloc::vec![0i64; n * (n.saturating_sub(1)) / 2];
    for &l in letters {
        let j = l.gen();
        let e = l.exponent();
        let mut k = 0;
        for a in 0..n {
            for b in a + 1..n {
                if b == j {
                    area[k] += pos[a] * e;
                }
                k += 1;
            }
        }
        pos[j] += e;
    }
    area
}

struct Search<'a> {
    ball: &'a GroupBall,
    n: usize,
    /// Distinct rotations of every relator and its inverse.
    variants: Vec<Vec<Letter>>,
    /// (vertex, variant) → (2-cell, sign) when the traced loop is a cell.
    cell_at: BTreeMap<(usize, usize), Option<(usize, i64)>>,
    by_boundary: BTreeMap<Chain, (usize, i64)>,
    edges: BTreeMap<(usize, usize), usize>,
    max_len: usize,
    max_area: i64,
    use_area: bool,
    table: BTreeMap<Vec<(usize, i32)>, usize>,
    next_bound: usize,
    path: Vec<(usize, i64)>,
}

#[derive(Clone)]
struct State {
    base: usize,
    letters: Vec<Letter>,
}

impl<'a> Search<'a> {
    fn normalize(&self, base: usize, letters: Vec<Letter>) -> State {
        let mut w = Word::reduce(letters).into_letters();
        let mut base = base;
        let mut start = 0;
        let mut end = w.len();
        while end - start >= 2 && w[start] == w[end - 1].inverse() {
            base = self.ball.step(base, w[start]).expect("loop stays in the ball");
            start += 1;
            end -= 1;
        }
        w.truncate(end);
        w.drain(..start);
        State { base, letters: w }
    }

    fn vertices(&self, s: &State) -> Vec<usize> {
        let mut v = Vec::with_capacity(s.letters.len() + 1);
        let mut cur = s.base;
        v.push(cur);
        for &l in &s.letters {
            cur = self.ball.step(cur, l).expect("loop stays in the ball");
            v.push(cur);
        }
        v
    }

    fn key(&self, s: &State, verts: &[usize]) -> Vec<(usize, i32)> {
        let n = s.letters.len();
        let seq: Vec<(usize, i32)> = (0..n).map(|i| (verts[i], s.letters[i].raw())).collect();
        (0..n.max(1))
            .map(|k| {
                let mut r = seq[k.min(n)..].to_vec();
                r.extend_from_slice(&seq[..k.min(n)]);
                r
            })
            .min()
            .unwrap_or_default()
    }

    fn heuristic(&self, s: &State) -> usize {
        let len = s.letters.len();
        let mut h = len.div_ceil(self.max_len);
        if self.use_area && self.max_area > 0 {
            let a: i64 = area_vector(&s.letters, self.n).iter().map(|x| x.abs()).sum();
            h = h.max(((a + self.max_area - 1) / self.max_area) as usize);
        }
        h
    }

    fn cell_for(&mut self, v: usize, variant: usize) -> Option<(usize, i64)> {
        if let Some(&c) = self.cell_at.get(&(v, variant)) {
            return c;
        }
        let found = trace(self.ball, &self.edges, v, &self.variants[variant])
            .and_then(|(end, chain)| if end == v { self.by_boundary.get(&chain).copied() } else { None });
        self.cell_at.insert((v, variant), found);
        found
    }

    fn dfs(&mut self, s: State, g: usize, bound: usize, budget: &Budget) -> Result<bool, ()> {
        let h = self.heuristic(&s);
        if g + h > bound {
            self.next_bound = self.next_bound.min(g + h);
            return Ok(false);
        }
        if s.letters.is_empty() {
            return Ok(true);
        }
        let verts = self.vertices(&s);
        let key = self.key(&s, &verts);
        if let Some(&seen) = self.table.get(&key) {
            if seen <= g {
                return Ok(false);
            }
        }
        self.table.insert(key, g);
        if !budget.tick() {
            return Err(());
        }
        let mut children: Vec<(usize, usize, Vec<(usize, i32)>, State, (usize, i64))> = Vec::new();
        let mut seen_children = BTreeSet::new();
        for p in 0..s.letters.len() {
            for variant in 0..self.variants.len() {
                let Some(cell) = self.cell_for(verts[p], variant) else { continue };
                let mut letters = Vec::with_capacity(s.letters.len() + self.variants[variant].len());
                letters.extend_from_slice(&s.letters[..p]);
                letters.extend_from_slice(&self.variants[variant]);
                letters.extend_from_slice(&s.letters[p..]);
                let child = self.normalize(s.base, letters);
                let cv = self.vertices(&child);
                let ck = self.key(&child, &cv);
                if !seen_children.insert(ck.clone()) {
                    continue;
                }
                children.push((self.heuristic(&child), child.letters.len(), ck, child, cell));
            }
        }
        children.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
        for (_, _, _, child, cell) in children {
            self.path.push(cell);
            if self.dfs(child, g + 1, bound, budget)? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }
}

/// Minimal number of relator applications reducing the loop to the trivial
/// loop, with the corresponding 2-chain filling.
pub fn min_area_diagram(x: &CellComplex, ball: &GroupBall, lp: &EdgeLoop, budget: &Budget) -> Result<FillingResult, FillingError> {
    let chain = loop_chain(ball, lp)?;
    let p = ball.presentation();
    let n = p.num_generators();
    let mut variants: Vec<Vec<Letter>> = Vec::new();
    for r in p.relators() {
        for w in [r.clone(), r.inverse()] {
            for rot in w.rotations() {
                let v = rot.into_letters();
                if !variants.contains(&v) {
                    variants.push(v);
                }
            }
        }
    }
    let mut by_boundary = BTreeMap::new();
    for (i, c) in x.cells(2).iter().enumerate() {
        let b = Chain::from_terms(1, c.boundary.iter().copied());
        by_boundary.insert(b.neg(), (i, -1));
        by_boundary.insert(b, (i, 1));
    }
    let use_area = p.relators().iter().all(|r| r.exponent_sums(n).iter().all(|&e| e == 0));
    let max_area = p
        .relators()
        .iter()
        .map(|r| area_vector(r.letters(), n).iter().map(|a| a.abs()).sum::<i64>())
        .max()
        .unwrap_or(0);
    let mut search = Search {
        ball,
        n,
        max_len: p.relators().iter().map(Word::len).max().unwrap_or(1).max(1),
        variants,
        cell_at: BTreeMap::new(),
        by_boundary,
        edges: edge_index(ball),
        max_area,
        use_area,
        table: BTreeMap::new(),
        next_bound: usize::MAX,
        path: Vec::new(),
    };
    let root = search.normalize(lp.start, lp.word.letters().to_vec());
    let mut bound = search.heuristic(&root);
    loop {
        search.table.clear();
        search.next_bound = usize::MAX;
        search.path.clear();
        match search.dfs(root.clone(), 0, bound, budget) {
            Err(()) => {
                return Err(FillingError::BudgetExhausted { lower_bound: BigRational::from_integer(BigInt::from(bound)) })
            }
            Ok(true) => break,
            Ok(false) if search.next_bound == usize::MAX => return Err(FillingError::NotNullHomotopic),
            Ok(false) => bound = search.next_bound,
        }
    }
    let mut filling = Chain::zero(2);
    for &(cell, sign) in &search.path {
        filling.add_term(cell, -sign);
    }
    debug_assert_eq!(boundary(x, &filling), chain);
    Ok(FillingResult {
        count: filling.l1(),
        weighted_count: weighted_count(x, &filling),
        filling,
        status: Status::Exact,
        lower_bound: BigRational::from_integer(BigInt::from(search.path.len())),
        solver: Solver::DiagramBfs,
        objective: Objective::Count,
    })
}
