//! Combings of balls: the coherent geodesic combing α of a coned-off graph,
//! its lift β to the group, and measured combing constants.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::cayley::GroupBall;
use crate::coned::ConedGraph;
use crate::filling::{poly_bound_fit, PolyFit};
use crate::words::{Letter, Presentation, Word};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CombingError {
    #[error("subgroup combing has no path for {h} in subgroup {subgroup}")]
    MissingSubgroupPath { subgroup: usize, h: String },
    #[error("stay length P(c1) must be at least 1")]
    ZeroPadding,
    #[error("polynomial: {0}")]
    Polynomial(String),
}

/// An eventually constant unit-step path, stored up to its settle time.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CombingPath {
    positions: Vec<Word>,
}

impl CombingPath {
    /// Drops the trailing constant run, keeping its first entry.
    pub fn new(mut positions: Vec<Word>) -> Self {
        assert!(!positions.is_empty(), "a path has at least one position");
        while positions.len() >= 2 && positions[positions.len() - 1] == positions[positions.len() - 2] {
            positions.pop();
        }
        CombingPath { positions }
    }

    pub fn positions(&self) -> &[Word] {
        &self.positions
    }

    /// Least T with p constant from T on.
    pub fn settle_time(&self) -> usize {
        self.positions.len() - 1
    }

    pub fn at(&self, t: usize) -> &Word {
        &self.positions[t.min(self.positions.len() - 1)]
    }

    pub fn end(&self) -> &Word {
        self.positions.last().expect("non-empty")
    }

    /// Number of non-stationary unit steps.
    pub fn length(&self) -> usize {
        self.positions.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Every consecutive pair is within distance 1.
    pub fn is_unit_step(&self, metric: &dyn Fn(&Word, &Word) -> u64) -> bool {
        self.positions.windows(2).all(|w| metric(&w[0], &w[1]) <= 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombingTarget {
    Group,
    Coned,
}

impl CombingTarget {
    pub fn tag(self) -> &'static str {
        match self {
            CombingTarget::Group => "G",
            CombingTarget::Coned => "coned",
        }
    }
}

/// One path per target element, `paths[i]` ending at `targets[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combing {
    pub target: CombingTarget,
    pub targets: Vec<Word>,
    pub paths: Vec<CombingPath>,
}

impl Combing {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Indices whose path does not start at the identity or end at its target.
    pub fn endpoint_violations(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| !self.paths[i].positions[0].is_identity() || self.paths[i].end() != &self.targets[i])
            .collect()
    }
}

/// Combing by prefixes of normal forms.
pub fn normal_form_combing(ball: &GroupBall) -> Combing {
    let p = ball.presentation();
    let mut paths = Vec::with_capacity(ball.len());
    for w in ball.vertices() {
        let mut prefix = Vec::new();
        let mut positions = vec![Word::identity()];
        for &l in w.letters() {
            prefix.push(l);
            positions.push(p.normal_form(&Word::reduce(prefix.iter().copied())));
        }
        paths.push(CombingPath::new(positions));
    }
    Combing { target: CombingTarget::Group, targets: ball.vertices().to_vec(), paths }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KWitness {
    pub g: usize,
    pub h: usize,
    pub t: usize,
    pub apart: u64,
    pub endpoint_distance: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FellowTraveler {
    /// `Ratio(0, 1)` when there are no pairs.
    pub k: Ratio<u64>,
    pub witness: Option<KWitness>,
}

/// max d(σ_g(t), σ_h(t)) / d(g, h) over all pairs `g < h` and times `t`.
/// Ties keep the first witness in (g, h, t) order.
pub fn fellow_traveler_k(c: &Combing, metric: &dyn Fn(&Word, &Word) -> u64) -> FellowTraveler {
    let mut best = FellowTraveler { k: Ratio::new_raw(0, 1), witness: None };
    for g in 0..c.len() {
        for h in g + 1..c.len() {
            let den = metric(&c.targets[g], &c.targets[h]);
            if den == 0 {
                continue;
            }
            let horizon = c.paths[g].settle_time().max(c.paths[h].settle_time());
            for t in 0..=horizon {
                let num = metric(c.paths[g].at(t), c.paths[h].at(t));
                let k = Ratio::new(num, den);
                if best.witness.is_none() || k > best.k {
                    best = FellowTraveler { k, witness: Some(KWitness { g, h, t, apart: num, endpoint_distance: den }) };
                }
            }
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReturnBound {
    pub n: u64,
    /// (path index, revisited vertex, visit count).
    pub witness: Option<(usize, Word, u64)>,
}

/// max over paths σ_x and vertices y ≠ x of |{t : σ_x(t) = y}|.
pub fn return_bound_n(c: &Combing) -> ReturnBound {
    let mut best = ReturnBound { n: 0, witness: None };
    for (i, path) in c.paths.iter().enumerate() {
        let mut visits: BTreeMap<&Word, u64> = BTreeMap::new();
        for w in &path.positions {
            if w != &c.targets[i] {
                *visits.entry(w).or_default() += 1;
            }
        }
        for (w, n) in visits {
            if n > best.n {
                best = ReturnBound { n, witness: Some((i, w.clone(), n)) };
            }
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SettleReport {
    pub checked: u64,
    /// Pairs `(x, y, |t_y − t_x|, N·V(⌊K·d⌋))` exceeding the bound.
    pub violations: Vec<(usize, usize, u64, u128)>,
    pub min_slack: Option<i128>,
    pub max_slack: Option<i128>,
    /// Volume arguments beyond the ball, clamped to its radius.
    pub clamped: u64,
}

/// Checks |t_y − t_x| ≤ N·V(⌊K·d(x,y)⌋) for all pairs, with `volumes[r]` the
/// number of vertices within distance r (clamped to the last entry).
pub fn settle_time_bound_check(
    c: &Combing,
    metric: &dyn Fn(&Word, &Word) -> u64,
    k: Ratio<u64>,
    n: u64,
    volumes: &[usize],
) -> SettleReport {
    let mut report = SettleReport { checked: 0, violations: Vec::new(), min_slack: None, max_slack: None, clamped: 0 };
    for x in 0..c.len() {
        for y in x + 1..c.len() {
            let lhs = c.paths[x].settle_time().abs_diff(c.paths[y].settle_time()) as u64;
            let r = (k * metric(&c.targets[x], &c.targets[y])).to_integer() as usize;
            if r >= volumes.len() {
                report.clamped += 1;
            }
            let v = volumes[r.min(volumes.len() - 1)] as u128;
            let rhs = u128::from(n) * v;
            report.checked += 1;
            let slack = rhs as i128 - i128::from(lhs);
            report.min_slack = Some(report.min_slack.map_or(slack, |s| s.min(slack)));
            report.max_slack = Some(report.max_slack.map_or(slack, |s| s.max(slack)));
            if u128::from(lhs) > rhs {
                report.violations.push((x, y, lhs, rhs));
            }
        }
    }
    report
}

/// α_g as element vertices at integer times; `cosets[t]` is the coset vertex
/// crossed between times t and t+1, if the step is a cone pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaPath {
    pub vertices: Vec<usize>,
    pub cosets: Vec<Option<usize>>,
}

impl AlphaPath {
    fn from_geodesic(g: &ConedGraph, path: &[usize]) -> Self {
        let mut vertices = vec![path[0]];
        let mut cosets = Vec::new();
        let mut i = 1;
        while i < path.len() {
            if g.is_coset_vertex(path[i]) {
                cosets.push(Some(path[i]));
                vertices.push(path[i + 1]);
                i += 2;
            } else {
                cosets.push(None);
                vertices.push(path[i]);
                i += 1;
            }
        }
        AlphaPath { vertices, cosets }
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn at(&self, t: usize) -> usize {
        self.vertices[t.min(self.vertices.len() - 1)]
    }

    /// The full Ĝ vertex itinerary, coset vertices included.
    pub fn itinerary(&self) -> Vec<usize> {
        let mut out = vec![self.vertices[0]];
        for (t, c) in self.cosets.iter().enumerate() {
            out.extend(c.iter().copied());
            out.push(self.vertices[t + 1]);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alpha {
    pub paths: Vec<AlphaPath>,
    /// For each element, the earlier element it was spliced onto and the
    /// splice time; `None` for the base cases.
    pub splices: Vec<Option<(usize, usize)>>,
}

impl Alpha {
    pub fn to_combing(&self, g: &ConedGraph) -> Combing {
        let ball = g.ball();
        Combing {
            target: CombingTarget::Coned,
            targets: ball.vertices().to_vec(),
            paths: self
                .paths
                .iter()
                .map(|p| CombingPath::new(p.vertices.iter().map(|&v| ball.word(v).clone()).collect()))
                .collect(),
        }
    }
}

/// The coherent geodesic combing of Ĝ over the ball, by induction along the
/// ball order (length, then shortlex). `[e, g]` is the lexicographically
/// least Ĝ-geodesic.
pub fn build_alpha(g: &ConedGraph) -> Alpha {
    let n = g.num_elements();
    let mut paths: Vec<AlphaPath> = Vec::with_capacity(n);
    let mut splices = Vec::with_capacity(n);
    for i in 0..n {
        let geo = AlphaPath::from_geodesic(g, &g.geodesic(0, i));
        if geo.len() <= 1 {
            paths.push(geo);
            splices.push(None);
            continue;
        }
        let mut best = (0usize, 0usize);
        for (j, pj) in paths.iter().enumerate() {
            let horizon = geo.len().min(pj.len());
            let l = (0..=horizon).rev().find(|&t| geo.vertices[t] == pj.vertices[t]).unwrap_or(0);
            if l >= best.1 {
                best = (j, l);
            }
        }
        let (j, tbar) = best;
        let pj = &paths[j];
        let mut vertices = pj.vertices[..=tbar].to_vec();
        vertices.extend_from_slice(&geo.vertices[tbar + 1..]);
        let mut cosets = pj.cosets[..tbar].to_vec();
        cosets.extend_from_slice(&geo.cosets[tbar..]);
        paths.push(AlphaPath { vertices, cosets });
        splices.push(Some((j, tbar)));
    }
    Alpha { paths, splices }
}

/// Pairs `(i, j)` whose agreement times do not form an initial segment.
pub fn coherence_violations(alpha: &Alpha) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..alpha.paths.len() {
        for j in i + 1..alpha.paths.len() {
            let (a, b) = (&alpha.paths[i], &alpha.paths[j]);
            let horizon = a.len().max(b.len());
            let mut left = false;
            for t in 0..=horizon {
                let agree = a.at(t) == b.at(t);
                if agree && left {
                    out.push((i, j));
                    break;
                }
                left |= !agree;
            }
        }
    }
    out
}

/// Elements whose α path is not a Ĝ-geodesic from e to themselves.
pub fn alpha_geodesic_violations(alpha: &Alpha, g: &ConedGraph) -> Vec<usize> {
    (0..alpha.paths.len())
        .filter(|&i| {
            let p = &alpha.paths[i];
            let mut walked = 0;
            let joined = p.cosets.iter().enumerate().all(|(t, c)| {
                let (u, v) = (p.vertices[t], p.vertices[t + 1]);
                match *c {
                    None => {
                        walked += 2;
                        g.neighbours(u).iter().any(|&(x, w)| x == v && w == 2)
                    }
                    Some(c) => {
                        walked += 2;
                        g.memberships(u).contains(&c) && g.memberships(v).contains(&c)
                    }
                }
            });
            !(joined && p.vertices[0] == 0 && *p.vertices.last().unwrap() == i && walked == g.doubled_distance(0, i))
        })
        .collect()
}

/// Paths inside subgroups: `path(s, h)` runs from e to `h ∈ H_s` through
/// elements of `H_s`.
pub trait SubgroupCombing {
    fn path(&self, subgroup: usize, h: &Word) -> Option<Vec<Word>>;
}

/// Prefixes of normal forms, geodesic for the built-in engines.
#[derive(Clone, Debug)]
pub struct GeodesicSubgroupCombing {
    presentation: Presentation,
}

impl GeodesicSubgroupCombing {
    pub fn new(presentation: &Presentation) -> Self {
        GeodesicSubgroupCombing { presentation: presentation.clone() }
    }
}

impl SubgroupCombing for GeodesicSubgroupCombing {
    fn path(&self, subgroup: usize, h: &Word) -> Option<Vec<Word>> {
        let gens = &self.presentation.subgroups().get(subgroup)?.generators;
        let nf = self.presentation.normal_form(h);
        if !nf.letters().iter().all(|l| gens.contains(&l.gen())) {
            return None;
        }
        let mut positions = vec![Word::identity()];
        let mut prefix: Vec<Letter> = Vec::new();
        for &l in nf.letters() {
            prefix.push(l);
            positions.push(self.presentation.normal_form(&Word::reduce(prefix.iter().copied())));
        }
        Some(positions)
    }
}

/// The subgroup combing restricted to the subgroup elements in the ball.
pub fn subgroup_combing_on_ball(
    sc: &dyn SubgroupCombing,
    ball: &GroupBall,
    subgroup: usize,
) -> Result<Combing, CombingError> {
    let p = ball.presentation();
    let mut targets = Vec::new();
    let mut paths = Vec::new();
    for w in ball.vertices() {
        if p.is_member(w, subgroup).unwrap_or(false) {
            let path = sc
                .path(subgroup, w)
                .ok_or_else(|| CombingError::MissingSubgroupPath { subgroup, h: p.format_word(w) })?;
            targets.push(w.clone());
            paths.push(CombingPath::new(path));
        }
    }
    Ok(Combing { target: CombingTarget::Group, targets, paths })
}

/// P(x) = Σ cᵢ xⁱ with non-negative integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub coefficients: Vec<u64>,
}

impl Polynomial {
    pub fn identity() -> Self {
        Polynomial { coefficients: vec![0, 1] }
    }

    pub fn eval(&self, x: u64) -> u128 {
        self.coefficients
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc.saturating_mul(u128::from(x)).saturating_add(u128::from(c)))
    }

    /// Parses sums of terms `c`, `c*x`, `cx`, `x^e`, `c*x^e`, e.g. `x^2 + 3x + 1`.
    pub fn parse(s: &str) -> Result<Self, CombingError> {
        let bad = || CombingError::Polynomial(s.into());
        let mut coefficients: Vec<u64> = Vec::new();
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        for term in compact.split('+') {
            let (coef, exp) = match term.find('x') {
                None => (term.parse::<u64>().map_err(|_| bad())?, 0usize),
                Some(pos) => {
                    let head = term[..pos].trim_end_matches('*');
                    let coef = if head.is_empty() { 1 } else { head.parse::<u64>().map_err(|_| bad())? };
                    let tail = &term[pos + 1..];
                    let exp = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
                    };
                    (coef, exp)
                }
            };
            if coefficients.len() <= exp {
                coefficients.resize(exp + 1, 0);
            }
            coefficients[exp] = coefficients[exp].checked_add(coef).ok_or_else(bad)?;
        }
        Ok(Polynomial { coefficients })
    }
}

/// One unit α-interval of β: from `start` to `end` (inclusive times).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
    pub from: usize,
    pub to: usize,
    pub coset: Option<usize>,
    /// Moving time before any stay.
    pub travel: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaPath {
    /// Positions over the whole schedule, stays at the end included.
    pub positions: Vec<Word>,
    pub segments: Vec<Segment>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Beta {
    pub paths: Vec<BetaPath>,
    /// P(c1), the length of every unit interval unless a coset path is longer.
    pub stay: u64,
}

impl Beta {
    pub fn to_combing(&self, ball: &GroupBall) -> Combing {
        Combing {
            target: CombingTarget::Group,
            targets: ball.vertices().to_vec(),
            paths: self.paths.iter().map(|p| CombingPath::new(p.positions.clone())).collect(),
        }
    }
}

/// Lifts α to the group. Each edge step moves and then stays `stay − 1`
/// units; each cone step through `aH` follows `a·σ_h` and stays until
/// `stay` units have passed, unless the subgroup path is longer.
pub fn build_beta(alpha: &Alpha, g: &ConedGraph, sc: &dyn SubgroupCombing, stay: u64) -> Result<Beta, CombingError> {
    if stay < 1 {
        return Err(CombingError::ZeroPadding);
    }
    let ball = g.ball();
    let p = ball.presentation();
    let stay = stay as usize;
    let mut paths = Vec::with_capacity(alpha.paths.len());
    for a in &alpha.paths {
        let mut positions = vec![ball.word(a.vertices[0]).clone()];
        let mut segments = Vec::with_capacity(a.len());
        for (t, c) in a.cosets.iter().enumerate() {
            let (u, v) = (a.vertices[t], a.vertices[t + 1]);
            let start = positions.len() - 1;
            let (from, to) = (ball.word(u), ball.word(v));
            let travel = match *c {
                None => {
                    positions.push(to.clone());
                    1
                }
                Some(cv) => {
                    let subgroup = g.coset(cv).subgroup;
                    let h = p.multiply(&from.inverse(), to);
                    let sigma = sc
                        .path(subgroup, &h)
                        .ok_or_else(|| CombingError::MissingSubgroupPath { subgroup, h: p.format_word(&h) })?;
                    for w in &sigma[1..] {
                        positions.push(p.multiply(from, w));
                    }
                    sigma.len() - 1
                }
            };
            for _ in travel..stay {
                positions.push(to.clone());
            }
            segments.push(Segment { start, end: positions.len() - 1, from: u, to: v, coset: *c, travel });
        }
        paths.push(BetaPath { positions, segments });
    }
    Ok(Beta { paths, stay: stay as u64 })
}

/// Elements whose β path fails to collapse onto the α itinerary: segments
/// must tile the schedule, an edge segment moves once onto its endpoint, and
/// a coset segment stays inside its coset.
pub fn projection_violations(beta: &Beta, alpha: &Alpha, g: &ConedGraph) -> Vec<usize> {
    let ball = g.ball();
    let p = ball.presentation();
    let in_coset = |w: &Word, cv: usize| {
        let c = g.coset(cv);
        p.coset_representative(w, c.subgroup).map(|r| r == c.representative).unwrap_or(false)
    };
    (0..beta.paths.len())
        .filter(|&i| {
            let b = &beta.paths[i];
            let mut collapsed = vec![ball.locate(&b.positions[0])];
            let mut time = 0;
            let mut ok = b.positions.last() == Some(ball.word(i));
            for s in &b.segments {
                ok &= s.start == time && s.end >= s.start + 1;
                let window = &b.positions[s.start..=s.end];
                ok &= window[0] == *ball.word(s.from) && window[window.len() - 1] == *ball.word(s.to);
                match s.coset {
                    None => ok &= window[1..].iter().all(|w| w == ball.word(s.to)),
                    Some(cv) => {
                        ok &= window.iter().all(|w| in_coset(w, cv));
                        collapsed.push(Some(cv));
                    }
                }
                collapsed.push(ball.locate(&window[window.len() - 1]));
                time = s.end;
            }
            ok &= time + 1 == b.positions.len();
            let expected: Vec<Option<usize>> = alpha.paths[i].itinerary().into_iter().map(Some).collect();
            !(ok && collapsed == expected)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynchronyWitness {
    pub g: usize,
    pub h: usize,
    /// α step index of the penetration in α_g and α_h.
    pub step_g: usize,
    pub step_h: usize,
    pub coset_g: usize,
    pub coset_h: usize,
    pub entry_distance: u64,
    pub exit_distance: u64,
    pub entry_time_difference: u64,
    pub exit_time_difference: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynchronyReport {
    pub m: u64,
    pub t: u64,
    pub m_witness: Option<SynchronyWitness>,
    pub t_witness: Option<SynchronyWitness>,
    pub adjacent_pairs: u64,
    pub synchronous_pairs: u64,
}

/// M and T over all adjacent pairs in the ball and their synchronous
/// penetrated cosets. Entry and exit times are segment boundaries of β.
pub fn synchrony_report(beta: &Beta, alpha: &Alpha, g: &ConedGraph) -> SynchronyReport {
    let ball = g.ball();
    let d = |a: usize, b: usize| ball.distance(a, b) as u64;
    let mut report =
        SynchronyReport { m: 0, t: 0, m_witness: None, t_witness: None, adjacent_pairs: 0, synchronous_pairs: 0 };
    for e in ball.edges() {
        let (x, y) = if e.from < e.to { (e.from, e.to) } else { (e.to, e.from) };
        report.adjacent_pairs += 1;
        let (ax, ay) = (&alpha.paths[x], &alpha.paths[y]);
        let horizon = ax.len().max(ay.len());
        for (sx, cx) in ax.cosets.iter().enumerate() {
            let Some(cx) = *cx else { continue };
            for (sy, cy) in ay.cosets.iter().enumerate() {
                let Some(cy) = *cy else { continue };
                let synchronous = (1..=horizon)
                    .any(|t| g.memberships(ax.at(t)).contains(&cx) && g.memberships(ay.at(t)).contains(&cy));
                if !synchronous {
                    continue;
                }
                report.synchronous_pairs += 1;
                let (bx, by) = (&beta.paths[x].segments[sx], &beta.paths[y].segments[sy]);
                let w = SynchronyWitness {
                    g: x,
                    h: y,
                    step_g: sx,
                    step_h: sy,
                    coset_g: cx,
                    coset_h: cy,
                    entry_distance: d(ax.vertices[sx], ay.vertices[sy]),
                    exit_distance: d(ax.vertices[sx + 1], ay.vertices[sy + 1]),
                    entry_time_difference: bx.start.abs_diff(by.start) as u64,
                    exit_time_difference: bx.end.abs_diff(by.end) as u64,
                };
                let m = w.entry_distance.max(w.exit_distance);
                let t = w.entry_time_difference.max(w.exit_time_difference);
                if report.m_witness.is_none() || m > report.m {
                    report.m = m;
                    report.m_witness = Some(w.clone());
                }
                if report.t_witness.is_none() || t > report.t {
                    report.t = t;
                    report.t_witness = Some(w);
                }
            }
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq)]
pub struct LengthReport {
    pub checked: u64,
    /// `(element, length(β_g), ℓ·P(ℓ + 2c(ℓ+1)))` for each failure.
    pub violations: Vec<(usize, u64, u128)>,
    /// Longest β path per word length ℓ = 0..=R.
    pub profile: Vec<u64>,
    pub fit: Option<PolyFit>,
}

/// Checks length(β_g) ≤ ℓ_G(g)·P(ℓ_G(g) + 2c(ℓ_G(g) + 1)) for every element.
pub fn length_bound_check(beta: &Beta, ball: &GroupBall, poly: &Polynomial, c: &dyn Fn(u64) -> u64) -> LengthReport {
    let mut profile = vec![0u64; ball.radius() + 1];
    let mut violations = Vec::new();
    for (i, b) in beta.paths.iter().enumerate() {
        let l = ball.length(i) as u64;
        let len = CombingPath::new(b.positions.clone()).length() as u64;
        let arg = l.saturating_add(c(l + 1).saturating_mul(2));
        let bound = u128::from(l).saturating_mul(poly.eval(arg));
        if u128::from(len) > bound {
            violations.push((i, len, bound));
        }
        profile[l as usize] = profile[l as usize].max(len);
    }
    let fit = poly_bound_fit(&profile).ok();
    LengthReport { checked: beta.paths.len() as u64, violations, profile, fit }
}

/// First time at which two β paths differ, or `None` if identical.
pub fn first_disagreement(a: &[Word], b: &[Word]) -> Option<usize> {
    let n = a.len().max(b.len());
    let at = |p: &'_ [Word], t: usize| p[t.min(p.len() - 1)].clone();
    (0..n).find(|&t| at(a, t) != at(b, t))
}
