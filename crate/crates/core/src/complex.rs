//! Finite polyhedral complexes with integer boundary maps, and sparse chains.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::cayley::GroupBall;
use crate::words::Presentation;

/// One cell: signed boundary over the cells one dimension down and the
/// sorted list of its distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub boundary: Vec<(usize, i64)>,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CellComplex {
    cells: Vec<Vec<Cell>>,
    vertex_lengths: Vec<u64>,
    basepoint: usize,
    orbit_radius: u64,
    weights: Vec<Vec<u64>>,
    edge_counts: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("complex exceeds the cell cap of {cap}")]
    CellCap { cap: usize },
    #[error("unsupported lattice parameters")]
    Unsupported,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("integer overflow in chain norm")]
pub struct Overflow;

impl CellComplex {
    /// Assembles a complex from per-dimension cells and vertex lengths.
    /// `cells[0]` must list the vertices.
    pub fn from_cells(cells: Vec<Vec<Cell>>, vertex_lengths: Vec<u64>, basepoint: usize, orbit_radius: u64) -> Self {
        let weights: Vec<Vec<u64>> = cells
            .iter()
            .map(|dim| dim.iter().map(|c| c.vertices.iter().map(|&v| vertex_lengths[v]).sum()).collect())
            .collect();
        let mut edge_sets: Vec<Vec<BTreeSet<usize>>> = Vec::with_capacity(cells.len());
        for (n, dim) in cells.iter().enumerate() {
            let sets = dim
                .iter()
                .enumerate()
                .map(|(i, c)| match n {
                    0 => BTreeSet::new(),
                    1 => BTreeSet::from([i]),
                    _ => c.boundary.iter().flat_map(|&(f, _)| edge_sets[n - 1][f].iter().copied()).collect(),
                })
                .collect();
            edge_sets.push(sets);
        }
        let edge_counts = edge_sets.iter().map(|d| d.iter().map(BTreeSet::len).collect()).collect();
        CellComplex { cells, vertex_lengths, basepoint, orbit_radius, weights, edge_counts }
    }

    /// Highest dimension with at least one cell slot (cells may be empty).
    pub fn top_dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn num_cells(&self, n: usize) -> usize {
        self.cells.get(n).map_or(0, Vec::len)
    }

    pub fn cells(&self, n: usize) -> &[Cell] {
        self.cells.get(n).map_or(&[], |v| v.as_slice())
    }

    pub fn cell(&self, n: usize, i: usize) -> &Cell {
        &self.cells[n][i]
    }

    pub fn vertex_lengths(&self) -> &[u64] {
        &self.vertex_lengths
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    /// Largest distance from a vertex to the nearest translate of the
    /// basepoint under the acting group (0 for vertex-transitive complexes).
    pub fn orbit_radius(&self) -> u64 {
        self.orbit_radius
    }

    /// ℓ_X(σ): the sum of the lengths of the cell's vertices.
    pub fn weight(&self, n: usize, i: usize) -> u64 {
        self.weights[n][i]
    }

    pub fn weights(&self, n: usize) -> &[u64] {
        self.weights.get(n).map_or(&[], |v| v.as_slice())
    }

    /// Max number of edges of an `n`-cell.
    pub fn max_edges(&self, n: usize) -> usize {
        self.edge_counts.get(n).and_then(|d| d.iter().copied().max()).unwrap_or(0)
    }

    /// Max number of vertices of an `n`-cell.
    pub fn max_vertices(&self, n: usize) -> usize {
        self.cells(n).iter().map(|c| c.vertices.len()).max().unwrap_or(0)
    }

    /// Max number of codimension-one faces of an `n`-cell.
    pub fn max_faces(&self, n: usize) -> usize {
        self.cells(n).iter().map(|c| c.boundary.len()).max().unwrap_or(0)
    }

    /// Looks up a cell by its sorted vertex list.
    pub fn find_by_vertices(&self, n: usize, vertices: &[usize]) -> Option<usize> {
        self.cells(n).iter().position(|c| c.vertices == vertices)
    }

    /// `(n-1)`-cell → list of `(n-cell, incidence)` for every `n-cell` containing it.
    pub fn cofaces(&self, n: usize) -> Vec<Vec<(usize, i64)>> {
        let mut co = vec![Vec::new(); self.num_cells(n.saturating_sub(1))];
        for (i, c) in self.cells(n).iter().enumerate() {
            for &(f, s) in &c.boundary {
                co[f].push((i, s));
            }
        }
        co
    }

    /// Checks `∂∘∂ = 0` in every dimension.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.cells.len()).all(|n| {
            self.cells[n].iter().all(|c| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(f, s) in &c.boundary {
                    for &(g, t) in &self.cells[n - 1][f].boundary {
                        *acc.entry(g).or_insert(0) += s * t;
                    }
                }
                acc.values().all(|&v| v == 0)
            })
        })
    }
}

/// Sparse integer chain over the `dim`-cells of a complex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain {
    dim: usize,
    terms: BTreeMap<usize, i64>,
}

impl Chain {
    pub fn zero(dim: usize) -> Self {
        Chain { dim, terms: BTreeMap::new() }
    }

    pub fn cell(dim: usize, i: usize) -> Self {
        Self::from_terms(dim, [(i, 1)])
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, i64)>>(dim: usize, terms: I) -> Self {
        let mut c = Self::zero(dim);
        for (i, v) in terms {
            c.add_term(i, v);
        }
        c
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_term(&mut self, cell: usize, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(cell).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&cell);
        }
    }

    pub fn coeff(&self, cell: usize) -> i64 {
        self.terms.get(&cell).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.terms.iter().map(|(&i, &v)| (i, v))
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Chain) -> Chain {
        let mut c = self.clone();
        for (i, v) in other.terms() {
            c.add_term(i, v);
        }
        c
    }

    pub fn scale(&self, k: i64) -> Chain {
        Chain::from_terms(self.dim, self.terms().map(|(i, v)| (i, v * k)))
    }

    pub fn neg(&self) -> Chain {
        self.scale(-1)
    }

    /// Σ|coeff|.
    pub fn l1(&self) -> u64 {
        self.terms.values().map(|v| v.unsigned_abs()).sum()
    }
}

/// Integer linear extension of the cell boundaries.
pub fn boundary(x: &CellComplex, c: &Chain) -> Chain {
    assert!(c.dim >= 1, "boundary of a 0-chain");
    let mut out = Chain::zero(c.dim - 1);
    for (i, v) in c.terms() {
        for &(f, s) in &x.cell(c.dim, i).boundary {
            out.add_term(f, s * v);
        }
    }
    out
}

/// Cell count, weighted count and norms ‖·‖_0..=‖·‖_kmax of a chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counts {
    pub count: u128,
    pub weighted: u128,
    pub norms: Vec<u128>,
}

pub fn counts(x: &CellComplex, c: &Chain, k_max: u32) -> Result<Counts, Overflow> {
    let mut count: u128 = 0;
    let mut weighted: u128 = 0;
    let mut norms = vec![0u128; k_max as usize + 1];
    for (i, v) in c.terms() {
        let a = u128::from(v.unsigned_abs());
        let w = u128::from(x.weight(c.dim, i));
        count = count.checked_add(a).ok_or(Overflow)?;
        weighted = weighted.checked_add(a.checked_mul(w).ok_or(Overflow)?).ok_or(Overflow)?;
        let mut p: u128 = 1;
        for norm in norms.iter_mut() {
            *norm = norm.checked_add(a.checked_mul(p).ok_or(Overflow)?).ok_or(Overflow)?;
            p = p.checked_mul(w + 1).ok_or(Overflow)?;
        }
    }
    Ok(Counts { count, weighted, norms })
}

/// Σ|coeff|·ℓ_X(σ).
pub fn weighted_count(x: &CellComplex, c: &Chain) -> u64 {
    c.terms().map(|(i, v)| v.unsigned_abs() * x.weight(c.dim, i)).sum()
}

/// Signed edge traversal `(edge, ±1)` of a letter read at vertex `v`.
fn traverse(ball: &GroupBall, edge_of: &BTreeMap<(usize, usize), usize>, v: usize, l: crate::words::Letter) -> Option<(usize, usize, i64)> {
    let u = ball.step(v, l)?;
    if l.is_inverse() {
        Some((u, edge_of[&(u, l.gen())], -1))
    } else {
        Some((u, edge_of[&(v, l.gen())], 1))
    }
}

fn min_rotation(seq: &[(usize, i64)]) -> Vec<(usize, i64)> {
    (0..seq.len())
        .map(|k| {
            let mut r = seq[k..].to_vec();
            r.extend_from_slice(&seq[..k]);
            r
        })
        .min()
        .unwrap_or_default()
}

/// The Cayley 2-complex of `p` restricted to `ball`: one 2-cell per relator
/// loop lying in the ball, loops with the same edge cycle identified.
pub fn presentation_complex(ball: &GroupBall, p: &Presentation) -> CellComplex {
    let vertex_cells: Vec<Cell> = (0..ball.len()).map(|v| Cell { boundary: Vec::new(), vertices: vec![v] }).collect();
    let mut edge_of = BTreeMap::new();
    let edge_cells: Vec<Cell> = ball
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            edge_of.insert((e.from, e.gen), i);
            let boundary = if e.from == e.to {
                Vec::new()
            } else {
                let mut b = vec![(e.from, -1), (e.to, 1)];
                b.sort_unstable();
                b
            };
            let mut vertices = vec![e.from, e.to];
            vertices.sort_unstable();
            vertices.dedup();
            Cell { boundary, vertices }
        })
        .collect();

    let mut seen: BTreeSet<Vec<(usize, i64)>> = BTreeSet::new();
    let mut faces = Vec::new();
    for g in 0..ball.len() {
        'relators: for r in p.relators() {
            let mut v = g;
            let mut seq = Vec::with_capacity(r.len());
            let mut verts = vec![g];
            for &l in r.letters() {
                match traverse(ball, &edge_of, v, l) {
                    Some((u, e, s)) => {
                        seq.push((e, s));
                        verts.push(u);
                        v = u;
                    }
                    None => continue 'relators,
                }
            }
            let key = min_rotation(&seq);
            let reversed: Vec<(usize, i64)> = seq.iter().rev().map(|&(e, s)| (e, -s)).collect();
            if seen.contains(&key) || seen.contains(&min_rotation(&reversed)) {
                continue;
            }
            seen.insert(key);
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(e, s) in &seq {
                *acc.entry(e).or_insert(0) += s;
            }
            let boundary: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, s)| s != 0).collect();
            if boundary.is_empty() {
                continue;
            }
            verts.sort_unstable();
            verts.dedup();
            faces.push(Cell { boundary, vertices: verts });
        }
    }
    let lengths = ball.lengths().iter().map(|&l| l as u64).collect();
    CellComplex::from_cells(vec![vertex_cells, edge_cells, faces], lengths, 0, 0)
}

/// Default cell cap for [`cubical_lattice`].
pub const DEFAULT_CELL_CAP: usize = 5_000_000;

/// The standard cubical structure on ℤᵏ restricted to the box `[-R, R]^k`,
/// with cells up to dimension `maxdim` and ℓ_X the ℓ¹ norm.
pub fn cubical_lattice(k: usize, radius: usize, maxdim: usize) -> Result<CellComplex, ComplexError> {
    cubical_lattice_capped(k, radius, maxdim, DEFAULT_CELL_CAP)
}

pub fn cubical_lattice_capped(k: usize, radius: usize, maxdim: usize, cap: usize) -> Result<CellComplex, ComplexError> {
    if !(1..=3).contains(&k) || radius == 0 || maxdim > k {
        return Err(ComplexError::Unsupported);
    }
    let r = radius as i64;
    let side = 2 * radius + 1;
    let nverts = side.pow(k as u32);
    if nverts > cap {
        return Err(ComplexError::CellCap { cap });
    }
    // Vertices in lexicographic order of coordinates.
    let coords: Vec<Vec<i64>> = (0..nverts)
        .map(|mut idx| {
            let mut c = vec![0i64; k];
            for d in (0..k).rev() {
                c[d] = (idx % side) as i64 - r;
                idx /= side;
            }
            c
        })
        .collect();
    let vindex = |c: &[i64]| -> usize { c.iter().fold(0usize, |acc, &x| acc * side + (x + r) as usize) };

    let mut dir_sets: Vec<Vec<Vec<usize>>> = vec![Vec::new(); maxdim + 1];
    for mask in 0usize..(1 << k) {
        let dirs: Vec<usize> = (0..k).filter(|d| mask & (1 << d) != 0).collect();
        if dirs.len() <= maxdim {
            dir_sets[dirs.len()].push(dirs);
        }
    }
    for s in &mut dir_sets {
        s.sort();
    }

    let mut index: Vec<BTreeMap<(usize, Vec<usize>), usize>> = vec![BTreeMap::new(); maxdim + 1];
    let mut cells: Vec<Vec<Cell>> = vec![Vec::new(); maxdim + 1];
    let mut total = 0usize;
    for m in 0..=maxdim {
        for (base_idx, base) in coords.iter().enumerate() {
            for dirs in &dir_sets[m] {
                if dirs.iter().any(|&d| base[d] >= r) {
                    continue;
                }
                total += 1;
                if total > cap {
                    return Err(ComplexError::CellCap { cap });
                }
                let mut vertices: Vec<usize> = (0usize..(1 << m))
                    .map(|sub| {
                        let mut c = base.clone();
                        for (j, &d) in dirs.iter().enumerate() {
                            if sub & (1 << j) != 0 {
                                c[d] += 1;
                            }
                        }
                        vindex(&c)
                    })
                    .collect();
                vertices.sort_unstable();
                let mut boundary = Vec::with_capacity(2 * m);
                for (i, &d) in dirs.iter().enumerate() {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    let rest: Vec<usize> = dirs.iter().copied().filter(|&x| x != d).collect();
                    let mut up = base.clone();
                    up[d] += 1;
                    boundary.push((index[m - 1][&(vindex(&up), rest.clone())], sign));
                    boundary.push((index[m - 1][&(base_idx, rest)], -sign));
                }
                boundary.sort_unstable();
                index[m].insert((base_idx, dirs.clone()), cells[m].len());
                cells[m].push(Cell { boundary, vertices });
            }
        }
    }
    let lengths = coords.iter().map(|c| c.iter().map(|x| x.unsigned_abs()).sum()).collect();
    Ok(CellComplex::from_cells(cells, lengths, vindex(&vec![0; k]), 0))
}

/// Vertex index of integer coordinates in [`cubical_lattice`]`(k, radius, _)`.
pub fn lattice_vertex(radius: usize, coords: &[i64]) -> usize {
    let side = 2 * radius + 1;
    coords.iter().fold(0usize, |acc, &x| acc * side + (x + radius as i64) as usize)
}

/// Coordinates of a vertex of [`cubical_lattice`]`(k, radius, _)`.
pub fn lattice_coords(radius: usize, k: usize, mut v: usize) -> Vec<i64> {
    let side = 2 * radius + 1;
    let mut out = vec![0i64; k];
    for x in out.iter_mut().rev() {
        *x = (v % side) as i64 - radius as i64;
        v /= side;
    }
    out
}

/// Sum of the positively oriented `n`-cells of a cubical lattice whose
/// vertices all lie in the box `lo ≤ x ≤ hi`.
pub fn lattice_box(x: &CellComplex, radius: usize, n: usize, lo: &[i64], hi: &[i64]) -> Chain {
    let k = lo.len();
    let inside = |v: usize| {
        let c = lattice_coords(radius, k, v);
        c.iter().zip(lo.iter().zip(hi)).all(|(x, (l, h))| l <= x && x <= h)
    };
    Chain::from_terms(
        n,
        x.cells(n).iter().enumerate().filter(|(_, c)| c.vertices.iter().all(|&v| inside(v))).map(|(i, _)| (i, 1)),
    )
}
