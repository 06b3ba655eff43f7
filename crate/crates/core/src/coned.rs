//! Coned-off Cayley graphs: four-point hyperbolicity and coset penetration.
//!
//! Element vertices keep their ball indices; coset vertices follow them.
//! Edges of length 1 and ½ are stored doubled (weights 2 and 1), so every
//! distance is an exact integer. Cones are restricted to the ball: a coset
//! vertex joins only the members of its coset that lie in the ball, and all
//! distances are measured inside that finite graph.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::cayley::GroupBall;
use crate::words::{EngineError, Word};

/// Vertex cap for the all-pairs distance table.
pub const DEFAULT_DISTANCE_CAP: usize = 8192;
/// Default number of quadruples scanned exhaustively before sampling.
pub const DEFAULT_QUADRUPLE_CAP: u64 = 200_000_000;
/// Default number of geodesics enumerated per endpoint pair.
pub const DEFAULT_GEODESIC_CAP: usize = 4096;

const UNREACHED: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConedError {
    #[error(transparent)]
    Membership(#[from] EngineError),
    #[error("unknown subgroup index {0}")]
    UnknownSubgroup(usize),
    #[error("coned graph has {vertices} vertices, above the distance-table cap {cap}")]
    TooLarge { vertices: usize, cap: usize },
}

/// The vertex of one coset `rH` meeting the ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetVertex {
    /// Index into the presentation's subgroup list.
    pub subgroup: usize,
    /// Engine coset representative.
    pub representative: Word,
    /// Element vertices of the coset inside the ball, ascending.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ConedGraph {
    ball: GroupBall,
    subgroups: Vec<usize>,
    cosets: Vec<CosetVertex>,
    /// Coset-vertex ids containing each element, in subgroup order.
    memberships: Vec<Vec<usize>>,
    adjacency: Vec<Vec<(usize, u32)>>,
    dist: Vec<u32>,
}

/// Cones off the ball at the listed subgroups (indices into the
/// presentation). Coset vertices are ordered by (representative, subgroup).
pub fn cone_off(ball: &GroupBall, subgroups: &[usize]) -> Result<ConedGraph, ConedError> {
    cone_off_capped(ball, subgroups, DEFAULT_DISTANCE_CAP)
}

pub fn cone_off_capped(ball: &GroupBall, subgroups: &[usize], cap: usize) -> Result<ConedGraph, ConedError> {
    let p = ball.presentation();
    let mut by_key: BTreeMap<(Word, usize), Vec<usize>> = BTreeMap::new();
    for &s in subgroups {
        if s >= p.subgroups().len() {
            return Err(ConedError::UnknownSubgroup(s));
        }
        for v in 0..ball.len() {
            let rep = p.coset_representative(ball.word(v), s)?;
            by_key.entry((rep, s)).or_default().push(v);
        }
    }
    let n = ball.len();
    let total = n + by_key.len();
    if total > cap {
        return Err(ConedError::TooLarge { vertices: total, cap });
    }
    let cosets: Vec<CosetVertex> = by_key
        .into_iter()
        .map(|((representative, subgroup), members)| CosetVertex { subgroup, representative, members })
        .collect();
    let mut memberships = vec![Vec::new(); n];
    let mut adjacency: Vec<Vec<(usize, u32)>> = vec![Vec::new(); total];
    for v in 0..n {
        for (u, _) in ball.neighbours(v) {
            adjacency[v].push((u, 2));
        }
    }
    for (i, c) in cosets.iter().enumerate() {
        let id = n + i;
        for &m in &c.members {
            memberships[m].push(id);
            adjacency[m].push((id, 1));
            adjacency[id].push((m, 1));
        }
    }
    for adj in adjacency.iter_mut() {
        adj.sort_unstable();
        adj.dedup();
    }
    for m in memberships.iter_mut() {
        m.sort_by_key(|&id| cosets[id - n].subgroup);
    }
    let mut g = ConedGraph { ball: ball.clone(), subgroups: subgroups.to_vec(), cosets, memberships, adjacency, dist: Vec::new() };
    let mut dist = Vec::with_capacity(total * total);
    for s in 0..total {
        dist.extend(g.shortest_from(s));
    }
    g.dist = dist;
    Ok(g)
}

impl ConedGraph {
    /// Dial's algorithm for weights 1 and 2.
    fn shortest_from(&self, s: usize) -> Vec<u32> {
        let mut d = vec![UNREACHED; self.adjacency.len()];
        let mut buckets: VecDeque<Vec<usize>> = VecDeque::from([vec![s]]);
        let mut base = 0u32;
        d[s] = 0;
        while let Some(bucket) = buckets.pop_front() {
            for v in bucket {
                if d[v] != base {
                    continue;
                }
                for &(u, w) in &self.adjacency[v] {
                    let nd = base + w;
                    if nd < d[u] {
                        d[u] = nd;
                        let slot = w as usize - 1;
                        while buckets.len() <= slot {
                            buckets.push_back(Vec::new());
                        }
                        buckets[slot].push(u);
                    }
                }
            }
            base += 1;
        }
        d
    }

    pub fn ball(&self) -> &GroupBall {
        &self.ball
    }

    /// Subgroups coned off, as presentation indices.
    pub fn subgroups(&self) -> &[usize] {
        &self.subgroups
    }

    pub fn num_elements(&self) -> usize {
        self.ball.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_coset_vertex(&self, v: usize) -> bool {
        v >= self.ball.len()
    }

    pub fn cosets(&self) -> &[CosetVertex] {
        &self.cosets
    }

    /// The coset behind vertex id `v`.
    pub fn coset(&self, v: usize) -> &CosetVertex {
        &self.cosets[v - self.ball.len()]
    }

    /// Coset-vertex ids containing element `v`.
    pub fn memberships(&self, v: usize) -> &[usize] {
        &self.memberships[v]
    }

    /// Neighbours `(vertex, doubled weight)`, ascending by vertex.
    pub fn neighbours(&self, v: usize) -> &[(usize, u32)] {
        &self.adjacency[v]
    }

    /// Twice the Ĝ-distance.
    pub fn doubled_distance(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.num_vertices() + v]
    }

    /// Ĝ-length of an element vertex; an integer since element-to-element
    /// doubled distances are even.
    pub fn element_length(&self, v: usize) -> usize {
        (self.doubled_distance(0, v) / 2) as usize
    }

    /// Lexicographically least geodesic by vertex id.
    pub fn geodesic(&self, u: usize, v: usize) -> Vec<usize> {
        let target = self.doubled_distance(u, v);
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            let here = self.doubled_distance(u, cur);
            cur = self.adjacency[cur]
                .iter()
                .find(|&&(x, w)| here + w + self.doubled_distance(x, v) == target && self.doubled_distance(u, x) == here + w)
                .map(|&(x, _)| x)
                .expect("geodesic successor exists");
            path.push(cur);
        }
        path
    }

    /// All geodesics from `u` to `v` in lexicographic order, at most `cap`
    /// of them; the flag reports truncation.
    pub fn all_geodesics(&self, u: usize, v: usize, cap: usize) -> (Vec<Vec<usize>>, bool) {
        let target = self.doubled_distance(u, v);
        let mut out = Vec::new();
        let mut path = vec![u];
        let mut truncated = false;
        self.geodesics_from(u, v, target, &mut path, &mut out, cap, &mut truncated);
        (out, truncated)
    }

    #[allow(clippy::too_many_arguments)]
    fn geodesics_from(
        &self,
        u: usize,
        v: usize,
        target: u32,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
        truncated: &mut bool,
    ) {
        let cur = *path.last().expect("path starts at u");
        if cur == v {
            if out.len() >= cap {
                *truncated = true;
            } else {
                out.push(path.clone());
            }
            return;
        }
        let here = self.doubled_distance(u, cur);
        for &(x, w) in &self.adjacency[cur] {
            if *truncated {
                return;
            }
            if self.doubled_distance(u, x) == here + w && here + w + self.doubled_distance(x, v) == target {
                path.push(x);
                self.geodesics_from(u, v, target, path, out, cap, truncated);
                path.pop();
            }
        }
    }

    /// Annotates a vertex path with its coset penetrations.
    pub fn annotate(&self, vertices: Vec<usize>) -> AnnotatedPath {
        let mut penetrations = Vec::new();
        for i in 1..vertices.len().saturating_sub(1) {
            if self.is_coset_vertex(vertices[i]) {
                penetrations.push(Penetration {
                    coset: vertices[i],
                    entry: vertices[i - 1],
                    exit: vertices[i + 1],
                    entry_index: i - 1,
                    exit_index: i + 1,
                });
            }
        }
        AnnotatedPath { vertices, penetrations }
    }
}

/// Passage `entry → coset → exit` of a path through a coset vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Penetration {
    pub coset: usize,
    pub entry: usize,
    pub exit: usize,
    pub entry_index: usize,
    pub exit_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AnnotatedPath {
    pub vertices: Vec<usize>,
    pub penetrations: Vec<Penetration>,
}

impl AnnotatedPath {
    /// Re-enters a coset vertex it has already left.
    pub fn backtracks(&self) -> bool {
        let mut seen: Vec<usize> = self.penetrations.iter().map(|p| p.coset).collect();
        seen.sort_unstable();
        seen.windows(2).any(|w| w[0] == w[1])
    }

    pub fn penetration_of(&self, coset: usize) -> Option<&Penetration> {
        self.penetrations.iter().find(|p| p.coset == coset)
    }
}

/// δ of the four-point condition over element vertices, doubled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaEstimate {
    pub value_doubled: u64,
    pub radius: usize,
    pub exhaustive: bool,
    pub quadruples: u64,
    /// Element quadruple attaining the value.
    pub witness: Option<[usize; 4]>,
}

/// Doubled δ contributed by one quadruple: half the gap between the two
/// largest pair sums of doubled distances.
pub fn quadruple_delta_doubled(g: &ConedGraph, q: [usize; 4]) -> u64 {
    let d = |a: usize, b: usize| u64::from(g.doubled_distance(q[a], q[b]));
    let mut s = [d(0, 1) + d(2, 3), d(0, 2) + d(1, 3), d(0, 3) + d(1, 2)];
    s.sort_unstable();
    (s[2] - s[1]) / 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaPartial {
    pub value_doubled: u64,
    pub quadruples: u64,
    pub witness: Option<[usize; 4]>,
}

impl DeltaPartial {
    /// Max-merge; ties keep the lexicographically least witness.
    pub fn merge(self, other: DeltaPartial) -> DeltaPartial {
        let quadruples = self.quadruples + other.quadruples;
        let (value_doubled, witness) = match (self.witness, other.witness) {
            (None, _) => (other.value_doubled, other.witness),
            (_, None) => (self.value_doubled, self.witness),
            (Some(a), Some(b)) => {
                if other.value_doubled > self.value_doubled || (other.value_doubled == self.value_doubled && b < a) {
                    (other.value_doubled, Some(b))
                } else {
                    (self.value_doubled, Some(a))
                }
            }
        };
        DeltaPartial { value_doubled, quadruples, witness }
    }
}

/// Exhaustive scan of the quadruples `x < y < z < w` with least entry `x`.
pub fn delta_partial(g: &ConedGraph, x: usize) -> DeltaPartial {
    let n = g.num_elements();
    let mut best = DeltaPartial { value_doubled: 0, quadruples: 0, witness: None };
    for y in x + 1..n {
        for z in y + 1..n {
            for w in z + 1..n {
                let q = [x, y, z, w];
                let v = quadruple_delta_doubled(g, q);
                best.quadruples += 1;
                if best.witness.is_none() || v > best.value_doubled {
                    best.value_doubled = v;
                    best.witness = Some(q);
                }
            }
        }
    }
    best
}

/// Number of 4-element subsets of the element vertices.
pub fn quadruple_count(g: &ConedGraph) -> u128 {
    let n = g.num_elements() as u128;
    if n < 4 {
        return 0;
    }
    n * (n - 1) * (n - 2) * (n - 3) / 24
}

/// Least δ for the four-point condition on the ball. Scans every quadruple
/// when their number is within `cap`, otherwise draws `cap` uniform samples.
pub fn delta_hyperbolicity<R: Rng + ?Sized>(g: &ConedGraph, cap: u64, rng: &mut R) -> DeltaEstimate {
    let radius = g.ball().radius();
    if quadruple_count(g) <= u128::from(cap) {
        let merged = (0..g.num_elements())
            .map(|x| delta_partial(g, x))
            .fold(DeltaPartial { value_doubled: 0, quadruples: 0, witness: None }, DeltaPartial::merge);
        return delta_from_partial(merged, radius, true);
    }
    delta_sampled(g, cap, rng)
}

pub fn delta_from_partial(p: DeltaPartial, radius: usize, exhaustive: bool) -> DeltaEstimate {
    DeltaEstimate { value_doubled: p.value_doubled, radius, exhaustive, quadruples: p.quadruples, witness: p.witness }
}

/// Uniform random quadruples; a lower estimate.
pub fn delta_sampled<R: Rng + ?Sized>(g: &ConedGraph, samples: u64, rng: &mut R) -> DeltaEstimate {
    let n = g.num_elements();
    let mut best = DeltaPartial { value_doubled: 0, quadruples: 0, witness: None };
    if n > 0 {
        for _ in 0..samples {
            let mut q = [0; 4];
            for v in q.iter_mut() {
                *v = rng.gen_range(0..n);
            }
            q.sort_unstable();
            let v = quadruple_delta_doubled(g, q);
            best = best.merge(DeltaPartial { value_doubled: v, quadruples: 1, witness: Some(q) });
        }
    }
    delta_from_partial(best, g.ball().radius(), false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BcpKind {
    /// One path penetrates a coset the other misses; entry-to-exit distance.
    EntryExit,
    /// Both penetrate; distance between entries.
    Entries,
    /// Both penetrate; distance between exits.
    Exits,
}

impl BcpKind {
    pub fn tag(self) -> &'static str {
        match self {
            BcpKind::EntryExit => "entry-exit",
            BcpKind::Entries => "entries",
            BcpKind::Exits => "exits",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BcpWitness {
    pub kind: BcpKind,
    pub coset: usize,
    pub p: AnnotatedPath,
    pub q: AnnotatedPath,
    /// Γ-distance realised by the witness.
    pub value: u64,
}

impl BcpWitness {
    /// Recomputes the witnessed distance from the paths alone.
    pub fn recheck(&self, g: &ConedGraph) -> Option<u64> {
        let pp = self.p.penetration_of(self.coset)?;
        let d = |a: usize, b: usize| g.ball().distance(a, b) as u64;
        match self.kind {
            BcpKind::EntryExit => {
                if self.q.penetration_of(self.coset).is_some() {
                    return None;
                }
                Some(d(pp.entry, pp.exit))
            }
            BcpKind::Entries => Some(d(pp.entry, self.q.penetration_of(self.coset)?.entry)),
            BcpKind::Exits => Some(d(pp.exit, self.q.penetration_of(self.coset)?.exit)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BcpEstimate {
    pub c1_entry_exit: u64,
    pub c1_pairwise: u64,
    pub entry_exit_witness: Option<BcpWitness>,
    pub pairwise_witness: Option<BcpWitness>,
    pub exhaustive: bool,
    pub endpoint_pairs: u64,
    pub geodesic_pairs: u64,
}

impl BcpEstimate {
    /// The constant consumed by the lifted combing.
    pub fn c1(&self) -> u64 {
        self.c1_entry_exit.max(self.c1_pairwise)
    }

    fn empty() -> Self {
        BcpEstimate {
            c1_entry_exit: 0,
            c1_pairwise: 0,
            entry_exit_witness: None,
            pairwise_witness: None,
            exhaustive: true,
            endpoint_pairs: 0,
            geodesic_pairs: 0,
        }
    }

    fn offer(slot: &mut (u64, Option<BcpWitness>), w: BcpWitness) {
        if slot.1.is_none() || w.value > slot.0 {
            slot.0 = w.value;
            slot.1 = Some(w);
        }
    }

    /// Max-merge in scan order: on ties the earlier estimate keeps its witness.
    pub fn merge(self, other: BcpEstimate) -> BcpEstimate {
        let mut ee = (self.c1_entry_exit, self.entry_exit_witness);
        let mut pw = (self.c1_pairwise, self.pairwise_witness);
        if let Some(w) = other.entry_exit_witness {
            Self::offer(&mut ee, w);
        }
        if let Some(w) = other.pairwise_witness {
            Self::offer(&mut pw, w);
        }
        BcpEstimate {
            c1_entry_exit: ee.0,
            c1_pairwise: pw.0,
            entry_exit_witness: ee.1,
            pairwise_witness: pw.1,
            exhaustive: self.exhaustive && other.exhaustive,
            endpoint_pairs: self.endpoint_pairs + other.endpoint_pairs,
            geodesic_pairs: self.geodesic_pairs + other.geodesic_pairs,
        }
    }
}

/// BCP constants at k = 1 for geodesics from element `x` to every element
/// `y > x`.
pub fn bcp_partial(g: &ConedGraph, x: usize, geodesic_cap: usize) -> BcpEstimate {
    let mut est = BcpEstimate::empty();
    let mut ee: (u64, Option<BcpWitness>) = (0, None);
    let mut pw: (u64, Option<BcpWitness>) = (0, None);
    let d = |a: usize, b: usize| g.ball().distance(a, b) as u64;
    for y in x + 1..g.num_elements() {
        let (paths, truncated) = g.all_geodesics(x, y, geodesic_cap);
        est.exhaustive &= !truncated;
        est.endpoint_pairs += 1;
        let paths: Vec<AnnotatedPath> = paths.into_iter().map(|p| g.annotate(p)).filter(|p| !p.backtracks()).collect();
        let n = paths.len() as u64;
        est.geodesic_pairs += n * n.saturating_sub(1);
        let mut by_coset: BTreeMap<usize, Vec<(usize, Penetration)>> = BTreeMap::new();
        for (i, p) in paths.iter().enumerate() {
            for pen in &p.penetrations {
                by_coset.entry(pen.coset).or_default().push((i, *pen));
            }
        }
        let witness =
            |kind: BcpKind, coset: usize, i: usize, j: usize, value: u64| BcpWitness { kind, coset, p: paths[i].clone(), q: paths[j].clone(), value };
        for (&coset, list) in &by_coset {
            if list.len() < paths.len() {
                let missing = (0..paths.len()).find(|&j| list.iter().all(|&(i, _)| i != j)).expect("a path misses the coset");
                for &(i, pen) in list {
                    let v = d(pen.entry, pen.exit);
                    if ee.1.is_none() || v > ee.0 {
                        ee = (v, Some(witness(BcpKind::EntryExit, coset, i, missing, v)));
                    }
                }
            }
            for kind in [BcpKind::Entries, BcpKind::Exits] {
                let point = |pen: &Penetration| if kind == BcpKind::Entries { pen.entry } else { pen.exit };
                let mut firsts: Vec<(usize, usize)> = Vec::new();
                for (i, pen) in list {
                    if !firsts.iter().any(|&(q, _)| q == point(pen)) {
                        firsts.push((point(pen), *i));
                    }
                }
                if list.len() >= 2 && pw.1.is_none() {
                    pw = (0, Some(witness(kind, coset, list[0].0, list[1].0, 0)));
                }
                for (a, &(pa, ia)) in firsts.iter().enumerate() {
                    for &(pb, ib) in &firsts[a + 1..] {
                        let v = d(pa, pb);
                        if v > pw.0 {
                            pw = (v, Some(witness(kind, coset, ia, ib, v)));
                        }
                    }
                }
            }
        }
    }
    est.c1_entry_exit = ee.0;
    est.entry_exit_witness = ee.1;
    est.c1_pairwise = pw.0;
    est.pairwise_witness = pw.1;
    est
}

/// BCP constants at k = 1 over all geodesic pairs between element vertices.
pub fn bcp_estimate(g: &ConedGraph, geodesic_cap: usize) -> BcpEstimate {
    (0..g.num_elements()).map(|x| bcp_partial(g, x, geodesic_cap)).fold(BcpEstimate::empty(), BcpEstimate::merge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::build_ball;
    use crate::words::{Presentation, Subgroup};

    fn z2_coned(radius: usize, subgroups: &[usize]) -> ConedGraph {
        let p = Presentation::free_abelian(2)
            .with_subgroups(vec![
                Subgroup { name: "H".into(), generators: vec![0] },
                Subgroup { name: "K".into(), generators: vec![1] },
            ])
            .unwrap();
        cone_off(&build_ball(&p, radius).unwrap(), subgroups).unwrap()
    }

    #[test]
    fn rows_of_the_ball() {
        let g = z2_coned(2, &[0]);
        assert_eq!(g.cosets().len(), 5);
        let a2 = g.ball().index_of(&g.ball().presentation().parse_word("aa").unwrap()).unwrap();
        assert_eq!(g.doubled_distance(0, a2), 2);
        assert_eq!(g.geodesic(0, a2).len(), 3);
    }

    #[test]
    fn no_subgroups_is_the_cayley_graph() {
        let g = z2_coned(2, &[]);
        assert_eq!(g.num_vertices(), 13);
        for v in 0..13 {
            assert_eq!(g.doubled_distance(0, v) as usize, 2 * g.ball().length(v));
        }
    }

    #[test]
    fn rewriting_membership_is_rejected() {
        use crate::words::parse_presentation;
        let p = parse_presentation("generators: a\nrelators: aa\nrule: aa -> 1\nrule: A -> a\nsubgroup H: a\n").unwrap();
        let ball = build_ball(&p, 1).unwrap();
        assert!(matches!(cone_off(&ball, &[0]), Err(ConedError::Membership(_))));
    }

    #[test]
    fn geodesic_enumeration_counts_lattice_paths() {
        let g = z2_coned(2, &[]);
        let ab = g.ball().index_of(&g.ball().presentation().parse_word("ab").unwrap()).unwrap();
        let (paths, truncated) = g.all_geodesics(0, ab, 10);
        assert_eq!(paths.len(), 2);
        assert!(!truncated);
        assert!(paths[0] < paths[1]);
        assert_eq!(paths[0], g.geodesic(0, ab));
    }
}
