//! Balls in Cayley graphs.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::words::{Letter, Presentation, Word};

/// Default vertex cap for [`build_ball`].
pub const DEFAULT_VERTEX_CAP: usize = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BallError {
    #[error("ball exceeds the vertex cap of {cap}")]
    VertexCap { cap: usize },
    #[error("vertices {0} and {1} are not connected inside the ball")]
    Disconnected(usize, usize),
}

/// Undirected edge `from -> from·gen` for a positive generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BallEdge {
    pub from: usize,
    pub to: usize,
    pub gen: usize,
}

/// The closed ball of radius `R` about the identity, vertices in shortlex
/// order of their normal forms (so index 0 is the identity).
#[derive(Clone, Debug)]
pub struct GroupBall {
    radius: usize,
    presentation: Presentation,
    vertices: Vec<Word>,
    lengths: Vec<usize>,
    index: BTreeMap<Word, usize>,
    edges: Vec<BallEdge>,
    /// `step[v * 2n + slot]`: the vertex `v·x` for letter slot `x`, if inside.
    step: Vec<Option<usize>>,
}

/// Letter slot `2g` for generator `g` and `2g + 1` for its inverse.
pub fn letter_slot(l: Letter) -> usize {
    2 * l.gen() + usize::from(l.is_inverse())
}

pub fn slot_letter(slot: usize) -> Letter {
    if slot % 2 == 0 {
        Letter::generator(slot / 2)
    } else {
        Letter::generator_inverse(slot / 2)
    }
}

pub fn build_ball(p: &Presentation, radius: usize) -> Result<GroupBall, BallError> {
    build_ball_capped(p, radius, DEFAULT_VERTEX_CAP)
}

pub fn build_ball_capped(p: &Presentation, radius: usize, cap: usize) -> Result<GroupBall, BallError> {
    let slots = 2 * p.num_generators();
    let mut depth: BTreeMap<Word, usize> = BTreeMap::new();
    depth.insert(Word::identity(), 0);
    let mut frontier = vec![Word::identity()];
    for r in 1..=radius {
        let mut next = Vec::new();
        for v in &frontier {
            for s in 0..slots {
                let w = p.step(v, slot_letter(s));
                if !depth.contains_key(&w) {
                    if depth.len() >= cap {
                        return Err(BallError::VertexCap { cap });
                    }
                    depth.insert(w.clone(), r);
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    let vertices: Vec<Word> = depth.keys().cloned().collect();
    let lengths: Vec<usize> = vertices.iter().map(|w| depth[w]).collect();
    let index: BTreeMap<Word, usize> = vertices.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut step = vec![None; vertices.len() * slots];
    let mut edges = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        for s in 0..slots {
            let target = index.get(&p.step(v, slot_letter(s))).copied();
            step[i * slots + s] = target;
            if let (Some(j), 0) = (target, s % 2) {
                edges.push(BallEdge { from: i, to: j, gen: s / 2 });
            }
        }
    }
    Ok(GroupBall { radius, presentation: p.clone(), vertices, lengths, index, edges, step })
}

/// A ball geodesic; `ball_restricted` is set when the in-ball distance is
/// longer than the true word-metric distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallPath {
    pub vertices: Vec<usize>,
    pub ball_restricted: bool,
}

impl GroupBall {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn word(&self, v: usize) -> &Word {
        &self.vertices[v]
    }

    pub fn length(&self, v: usize) -> usize {
        self.lengths[v]
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn edges(&self) -> &[BallEdge] {
        &self.edges
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Index of the normal form of `w`, if it lies in the ball.
    pub fn locate(&self, w: &Word) -> Option<usize> {
        self.index_of(&self.presentation.normal_form(w))
    }

    pub fn step(&self, v: usize, l: Letter) -> Option<usize> {
        self.step[v * 2 * self.presentation.num_generators() + letter_slot(l)]
    }

    /// Neighbours `(vertex, letter)` in letter-slot order.
    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = (usize, Letter)> + '_ {
        let slots = 2 * self.presentation.num_generators();
        (0..slots).filter_map(move |s| self.step[v * slots + s].map(|u| (u, slot_letter(s))))
    }

    /// Number of vertices of length at most `r` for `r = 0..=R`.
    pub fn volumes(&self) -> Vec<usize> {
        let mut v = vec![0; self.radius + 1];
        for &l in &self.lengths {
            v[l] += 1;
        }
        for r in 1..v.len() {
            v[r] += v[r - 1];
        }
        v
    }

    /// Word-metric distance computed by the engine (not restricted to the ball).
    pub fn distance(&self, u: usize, v: usize) -> usize {
        self.presentation.distance(&self.vertices[u], &self.vertices[v]) as usize
    }

    /// BFS distances from `source` inside the ball subgraph (`usize::MAX` if unreachable).
    pub fn bfs(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for (u, _) in self.neighbours(v) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Lexicographically least shortest path from `v` to `w` in the ball subgraph.
    pub fn geodesic(&self, v: usize, w: usize) -> Result<BallPath, BallError> {
        let dist = self.bfs(w);
        if dist[v] == usize::MAX {
            return Err(BallError::Disconnected(v, w));
        }
        let mut path = vec![v];
        let mut cur = v;
        while cur != w {
            cur = self
                .neighbours(cur)
                .filter(|&(u, _)| dist[u] + 1 == dist[cur])
                .map(|(u, _)| u)
                .min()
                .expect("bfs predecessor exists");
            path.push(cur);
        }
        let ball_restricted = path.len() - 1 > self.distance(v, w);
        Ok(BallPath { vertices: path, ball_restricted })
    }
}
