use dehnkit_core::cayley::build_ball;
use dehnkit_core::complex::{
    boundary, counts, cubical_lattice, lattice_coords, lattice_vertex, presentation_complex, weighted_count, Chain,
    CellComplex,
};
use dehnkit_core::words::Presentation;
use proptest::prelude::*;

fn coords(p: &Presentation, w: &dehnkit_core::words::Word) -> Vec<i64> {
    let mut c = vec![0; p.num_generators()];
    for l in w.letters() {
        c[l.gen()] += l.exponent();
    }
    c
}

/// Unit squares of ℤᵏ (in every coordinate plane) whose four corners have
/// ℓ¹ norm at most r.
fn squares_in_ball(k: usize, r: i64) -> usize {
    let mut n = 0;
    let norm = |c: &[i64]| c.iter().map(|x| x.abs()).sum::<i64>();
    let span = 2 * r + 1;
    for idx in 0..span.pow(k as u32) {
        let mut base = vec![0; k];
        let mut t = idx;
        for x in base.iter_mut() {
            *x = t % span - r;
            t /= span;
        }
        for i in 0..k {
            for j in i + 1..k {
                let corners = [(0, 0), (1, 0), (0, 1), (1, 1)].map(|(di, dj)| {
                    let mut c = base.clone();
                    c[i] += di;
                    c[j] += dj;
                    c
                });
                n += usize::from(corners.iter().all(|c| norm(c) <= r));
            }
        }
    }
    n
}

fn check_dd(x: &CellComplex) {
    assert!(x.boundary_squares_to_zero());
    for n in 2..=x.top_dim() {
        for i in 0..x.num_cells(n) {
            assert!(boundary(x, &boundary(x, &Chain::cell(n, i))).is_zero());
        }
    }
}

#[test]
fn presentation_complex_square_counts() {
    for k in 2..=3 {
        let p = Presentation::free_abelian(k);
        for r in 1..=4 {
            let ball = build_ball(&p, r).unwrap();
            let x = presentation_complex(&ball, &p);
            assert_eq!(x.num_cells(2), squares_in_ball(k, r as i64), "k={k} r={r}");
            check_dd(&x);
        }
    }
    // One square per quadrant at radius 2.
    assert_eq!(squares_in_ball(2, 2), 4);
}

#[test]
fn free_group_has_no_two_cells() {
    let p = Presentation::free_group(2);
    let x = presentation_complex(&build_ball(&p, 3).unwrap(), &p);
    assert_eq!(x.num_cells(2), 0);
    check_dd(&x);
}

#[test]
fn two_cells_trace_relator_loops() {
    let p = Presentation::free_abelian(2);
    let ball = build_ball(&p, 3).unwrap();
    let x = presentation_complex(&ball, &p);
    for i in 0..x.num_cells(2) {
        let c = x.cell(2, i);
        let len: i64 = c.boundary.iter().map(|&(_, s)| s.abs()).sum();
        assert_eq!(len, 4);
        assert_eq!(c.vertices.len(), 4);
        // The four corners span one unit square.
        let pts: Vec<Vec<i64>> = c.vertices.iter().map(|&v| coords(&p, ball.word(v))).collect();
        for d in 0..2 {
            let lo = pts.iter().map(|q| q[d]).min().unwrap();
            let hi = pts.iter().map(|q| q[d]).max().unwrap();
            assert_eq!(hi - lo, 1);
        }
    }
}

#[test]
fn basepoint_square_counts() {
    let p = Presentation::free_abelian(2);
    let ball = build_ball(&p, 2).unwrap();
    let x = presentation_complex(&ball, &p);
    let idx = |s: &str| ball.index_of(&p.parse_word(s).unwrap()).unwrap();
    let mut verts = vec![0, idx("a"), idx("b"), idx("ab")];
    verts.sort_unstable();
    let sq = x.find_by_vertices(2, &verts).unwrap();
    assert_eq!(x.weight(2, sq), 4);
    let c = Chain::cell(2, sq);
    let ct = counts(&x, &c, 1).unwrap();
    assert_eq!((ct.count, ct.weighted, ct.norms.clone()), (1, 4, vec![1, 5]));
    let b = boundary(&x, &c);
    assert_eq!(b.l1(), 4);
    assert_eq!(weighted_count(&x, &b), 8);
    let zero = counts(&x, &Chain::zero(2), 3).unwrap();
    assert_eq!((zero.count, zero.weighted, zero.norms), (0, 0, vec![0; 4]));
}

#[test]
fn cubical_counts() {
    let x = cubical_lattice(3, 1, 3).unwrap();
    assert_eq!(x.num_cells(0), 27);
    assert_eq!(x.num_cells(3), 8);
    let y = cubical_lattice(2, 1, 2).unwrap();
    assert_eq!(y.num_cells(2), 4);
    check_dd(&x);
    check_dd(&cubical_lattice(3, 2, 3).unwrap());
    // Vertex lengths are ℓ¹ norms.
    for v in 0..x.num_cells(0) {
        let c = lattice_coords(1, 3, v);
        assert_eq!(lattice_vertex(1, &c), v);
        assert_eq!(x.vertex_lengths()[v], c.iter().map(|t| t.unsigned_abs()).sum::<u64>());
    }
}

#[test]
fn unit_cube_boundary() {
    let x = cubical_lattice(3, 1, 3).unwrap();
    let origin = lattice_vertex(1, &[0, 0, 0]);
    let cube = (0..x.num_cells(3)).find(|&i| x.cell(3, i).vertices[0] == origin).unwrap();
    let b = boundary(&x, &Chain::cell(3, cube));
    assert_eq!(b.l1(), 6);
    assert_eq!(b.support_len(), 6);
    assert!(boundary(&x, &b).is_zero());
    // Two adjacent cubes share one face, which cancels.
    let next = lattice_vertex(1, &[0, 0, -1]);
    let other = (0..x.num_cells(3)).find(|&i| x.cell(3, i).vertices[0] == next).unwrap();
    let both = boundary(&x, &Chain::cell(3, cube).add(&Chain::cell(3, other)));
    assert_eq!(both.l1(), 10);
}

#[test]
fn edge_lengths_change_by_one() {
    let p = Presentation::free_abelian(3);
    let ball = build_ball(&p, 2).unwrap();
    let x = presentation_complex(&ball, &p);
    let l = x.vertex_lengths();
    assert_eq!(l[x.basepoint()], 0);
    for e in x.cells(1) {
        assert_eq!(l[e.vertices[0]].abs_diff(l[e.vertices[1]]), 1);
    }
}

fn chain_strategy(cells: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..cells, -3i64..=3), 0..12)
}

proptest! {
    #[test]
    fn boundary_is_linear_and_squares_to_zero(a in chain_strategy(36), b in chain_strategy(36)) {
        let x = cubical_lattice(3, 1, 3).unwrap();
        let (ca, cb) = (Chain::from_terms(2, a), Chain::from_terms(2, b));
        prop_assert!(boundary(&x, &boundary(&x, &ca)).is_zero());
        prop_assert_eq!(boundary(&x, &ca.add(&cb)), boundary(&x, &ca).add(&boundary(&x, &cb)));
        prop_assert!(ca.terms().all(|(_, c)| c != 0));
    }

    #[test]
    fn counts_are_norms(a in chain_strategy(36), b in chain_strategy(36)) {
        let x = cubical_lattice(3, 1, 3).unwrap();
        let (ca, cb) = (Chain::from_terms(2, a), Chain::from_terms(2, b));
        let (na, nb, ns) = (counts(&x, &ca, 3).unwrap(), counts(&x, &cb, 3).unwrap(), counts(&x, &ca.add(&cb), 3).unwrap());
        prop_assert_eq!(na.norms[0], na.count);
        prop_assert_eq!(na.count, u128::from(ca.l1()));
        prop_assert_eq!(na.weighted, u128::from(weighted_count(&x, &ca)));
        prop_assert!(ns.count <= na.count + nb.count);
        prop_assert!(ns.weighted <= na.weighted + nb.weighted);
        for k in 0..4 {
            prop_assert!(ns.norms[k] <= na.norms[k] + nb.norms[k]);
        }
        prop_assert_eq!(counts(&x, &ca.scale(2), 3).unwrap().norms[3], 2 * na.norms[3]);
    }
}
