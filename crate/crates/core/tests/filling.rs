use std::collections::BTreeMap;

use dehnkit_core::budget::Budget;
use dehnkit_core::cayley::{build_ball, GroupBall};
use dehnkit_core::complex::{boundary, presentation_complex, CellComplex, Chain};
use dehnkit_core::filling::{
    converse_bound_check, dehn_table, dominates, equivalent, loop_chain, lp_filling_bound, min_area_diagram,
    min_filling, poly_bound_fit, weighted_bound_check, DominationBox, EdgeLoop, EntryStatus, FillingError, Objective,
    Status, Tabulated,
};
use dehnkit_core::words::{Letter, Presentation, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn z2_complex(r: usize) -> (Presentation, GroupBall, CellComplex) {
    let p = Presentation::free_abelian(2);
    let ball = build_ball(&p, r).unwrap();
    let x = presentation_complex(&ball, &p);
    (p, ball, x)
}

/// Least ℓ¹ norm of an integer chain with the given boundary, over every
/// coefficient vector of norm at most `limit`.
fn exhaustive_filling(x: &CellComplex, n: usize, target: &Chain, limit: u64) -> Option<u64> {
    let bd: Vec<Vec<(usize, i64)>> = (0..x.num_cells(n)).map(|i| x.cell(n, i).boundary.clone()).collect();
    let mut want = vec![0i64; x.num_cells(n - 1)];
    for (e, c) in target.terms() {
        want[e] = c;
    }
    let mut best = None;
    let mut acc = vec![0i64; want.len()];
    fn go(i: usize, left: u64, used: u64, acc: &mut [i64], want: &[i64], bd: &[Vec<(usize, i64)>], best: &mut Option<u64>) {
        if best.is_some_and(|b| used >= b) {
            return;
        }
        if acc == want {
            *best = Some(used);
            return;
        }
        if i == bd.len() || left == 0 {
            return;
        }
        go(i + 1, left, used, acc, want, bd, best);
        for m in 1..=left as i64 {
            for s in [m, -m] {
                bd[i].iter().for_each(|&(e, c)| acc[e] += s * c);
                go(i + 1, left - m as u64, used + m as u64, acc, want, bd, best);
                bd[i].iter().for_each(|&(e, c)| acc[e] -= s * c);
            }
        }
    }
    go(0, limit, 0, &mut acc, &want, &bd, &mut best);
    best
}

/// Σ over unit squares of |winding number| of a closed lattice path; the
/// unique filling of a loop in the plane has these coefficients.
fn winding_area(letters: &[Letter]) -> u64 {
    let mut pos = (0i64, 0i64);
    let mut crossings: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    for l in letters {
        let (dx, dy) = if l.gen() == 0 { (l.exponent(), 0) } else { (0, l.exponent()) };
        if dy != 0 {
            // Vertical edge at x = pos.0 spanning row min(y, y+dy).
            let row = pos.1.min(pos.1 + dy);
            for sx in -20..pos.0 {
                *crossings.entry((sx, row)).or_default() += dy;
            }
        }
        pos = (pos.0 + dx, pos.1 + dy);
    }
    assert_eq!(pos, (0, 0));
    crossings.values().map(|w| w.unsigned_abs()).sum()
}

fn commutator_power(p: &Presentation, n: usize) -> Word {
    p.parse_word(&["a", "b", "A", "B"].map(|s| s.repeat(n)).concat()).unwrap()
}

#[test]
fn single_square_and_commutator_loops() {
    let (p, ball, x) = z2_complex(6);
    let one = min_filling(&x, &boundary(&x, &Chain::cell(2, 0)), Objective::Count, &Budget::unlimited()).unwrap();
    assert_eq!((one.count, one.status), (1, Status::Exact));
    for (n, area) in [(1, 1), (2, 4), (3, 9)] {
        let lp = EdgeLoop { start: 0, word: commutator_power(&p, n) };
        let chain = loop_chain(&ball, &lp).unwrap();
        let d = min_area_diagram(&x, &ball, &lp, &Budget::unlimited()).unwrap();
        let f = min_filling(&x, &chain, Objective::Count, &Budget::unlimited()).unwrap();
        assert_eq!(d.count, area);
        assert_eq!(f.count, area);
        assert_eq!(winding_area(lp.word.letters()), area);
        assert_eq!(boundary(&x, &d.filling), chain);
    }
    // The a²b²A²B² minimum, confirmed over every chain of norm at most 4.
    let (p, ball, x) = z2_complex(4);
    let chain = loop_chain(&ball, &EdgeLoop { start: 0, word: commutator_power(&p, 2) }).unwrap();
    assert_eq!(exhaustive_filling(&x, 2, &chain, 4), Some(4));
    assert_eq!(exhaustive_filling(&x, 2, &chain, 3), None);
}

#[test]
fn free_group_loops_are_degenerate() {
    let p = Presentation::free_group(2);
    let ball = build_ball(&p, 2).unwrap();
    let x = presentation_complex(&ball, &p);
    // a·a⁻¹ reduces to the empty word: the zero chain, filled by nothing.
    let lp = EdgeLoop { start: 0, word: p.parse_word("aA").unwrap() };
    assert!(lp.word.is_identity());
    let d = min_area_diagram(&x, &ball, &lp, &Budget::unlimited()).unwrap();
    assert_eq!(d.count, 0);
    let t = dehn_table(&x, 1, 6, false, 1_000_000, 1_000_000).unwrap();
    assert!(t.values().iter().all(|&v| v == 0));
}

#[test]
fn filling_errors() {
    let (p, ball, x) = z2_complex(2);
    let open = EdgeLoop { start: 0, word: p.parse_word("ab").unwrap() };
    assert_eq!(loop_chain(&ball, &open), Err(FillingError::NotALoop));
    let edge = Chain::cell(1, 0);
    assert_eq!(min_filling(&x, &edge, Objective::Count, &Budget::unlimited()).unwrap_err(), FillingError::NotACycle);
}

#[test]
fn weighted_objective_counts_vertex_lengths() {
    let (p, ball, x) = z2_complex(4);
    let chain = loop_chain(&ball, &EdgeLoop { start: 0, word: commutator_power(&p, 1) }).unwrap();
    let w = min_filling(&x, &chain, Objective::Weighted, &Budget::unlimited()).unwrap();
    assert_eq!((w.count, w.weighted_count), (1, 4));
    let lp = lp_filling_bound(&x, &chain, Objective::Weighted).unwrap();
    assert!(lp.lower_bound <= BigRational::from_integer(BigInt::from(4)));
}

#[test]
fn z2_dehn_tables() {
    let (_, _, x) = z2_complex(3);
    let plain = dehn_table(&x, 1, 8, false, 10_000_000, 10_000_000).unwrap();
    assert_eq!(plain.values()[4], 1);
    assert!(plain.values().windows(2).all(|w| w[0] <= w[1]));
    assert!(plain.entries.iter().all(|e| e.status == EntryStatus::Exact));
    let weighted = dehn_table(&x, 1, 8, true, 10_000_000, 10_000_000).unwrap();
    let e8 = &weighted.entries[8];
    assert_eq!(e8.value, 4);
    // The witness is the loop around the basepoint square.
    let w = weighted.boundaries.iter().find(|r| Some(r.id) == e8.witness).unwrap();
    assert_eq!((w.count, w.weighted), (4, 8));
    for (e, _) in w.chain.terms() {
        assert!(x.cell(1, e).vertices.iter().all(|&v| x.vertex_lengths()[v] <= 2));
    }
    assert!(x.cell(1, w.chain.terms().next().unwrap().0).vertices.contains(&0));
}

#[test]
fn tables_grow_with_the_ball() {
    let small = dehn_table(&z2_complex(2).2, 1, 8, false, 10_000_000, 10_000_000).unwrap();
    let large = dehn_table(&z2_complex(3).2, 1, 8, false, 10_000_000, 10_000_000).unwrap();
    for (a, b) in small.values().iter().zip(large.values()) {
        assert!(a <= &b);
    }
}

#[test]
fn bridge_checks_hold_on_z2() {
    let (_, _, x) = z2_complex(3);
    let plain = dehn_table(&x, 1, 10, false, 50_000_000, 10_000_000).unwrap();
    let weighted = dehn_table(&x, 1, 10, true, 50_000_000, 10_000_000).unwrap();
    let wb = weighted_bound_check(&x, &plain, &weighted.boundaries);
    let cb = converse_bound_check(&x, &plain, &weighted, &plain.boundaries);
    assert!(wb.violations.is_empty() && wb.checked > 0);
    assert!(cb.violations.is_empty() && cb.checked > 0);
}

#[test]
fn fit_examples() {
    let squares: Vec<u64> = (0..=12).map(|k| k * k).collect();
    let f = poly_bound_fit(&squares).unwrap();
    assert_eq!(f.degree, 2);
    assert_eq!(f.coefficient, BigRational::from_integer(BigInt::from(1)));
    let z = poly_bound_fit(&[0; 10]).unwrap();
    assert_eq!((z.degree, z.coefficient.clone()), (0, BigRational::from_integer(BigInt::from(0))));
    assert!(poly_bound_fit(&[0, 1, 2]).is_err());
    let (_, _, x) = z2_complex(4);
    let t = dehn_table(&x, 1, 12, false, 200_000_000, 10_000_000).unwrap();
    assert_eq!(poly_bound_fit(&t.values()).unwrap().degree, 2);
}

/// Lexicographically least constants, by direct search.
fn domination_oracle(f: &[u64], g: &[u64], m: u64) -> Option<[u64; 5]> {
    let n = f.len().min(g.len()) as u64;
    let tuples = (0..=m).flat_map(|a| {
        (0..=m).flat_map(move |b| (0..=m).flat_map(move |c| (0..=m).flat_map(move |d| (0..=m).map(move |e| [a, b, c, d, e]))))
    });
    for t in tuples {
        let ok = (0..n).all(|x| {
            let arg = (t[1] * x + t[2]) as usize;
            arg < g.len() && u128::from(f[x as usize]) <= u128::from(t[0] * g[arg] + t[3] * x + t[4])
        });
        if ok {
            return Some(t);
        }
    }
    None
}

#[test]
fn domination_examples() {
    let sq = Tabulated::from_fn(0..=20, |n| n * n);
    assert_eq!(dominates(&sq, &sq, DominationBox::default()), Some((1, 1, 0, 0, 0)));
    let exp = Tabulated::from_fn(0..=12, |n| 1 << n);
    let cube = Tabulated::from_fn(0..=12, |n| n * n * n);
    let got = dominates(&exp, &cube, DominationBox::uniform(4));
    let fv: Vec<u64> = (0..=12).map(|n| 1 << n).collect();
    let gv: Vec<u64> = (0..=12).map(|n| n * n * n).collect();
    assert_eq!(got.map(|(a, b, c, d, e)| [a, b, c, d, e]), domination_oracle(&fv, &gv, 4));
    assert!(dominates(&cube, &exp, DominationBox::uniform(4)).is_some());
}

fn monotone_table() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..4, 6..10).prop_map(|steps| {
        steps.iter().scan(0, |acc, s| {
            *acc += s;
            Some(*acc)
        }).collect()
    })
}

fn closed_loop() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..2, prop::bool::ANY), 1..6).prop_map(|steps| {
        let mut out: Vec<(usize, i64)> = steps.into_iter().map(|(g, s)| (g, if s { 1 } else { -1 })).collect();
        let (mut x, mut y) = (0i64, 0i64);
        for &(g, e) in &out {
            if g == 0 { x += e } else { y += e }
        }
        out.extend(std::iter::repeat_n((0, -x.signum()), x.unsigned_abs() as usize));
        out.extend(std::iter::repeat_n((1, -y.signum()), y.unsigned_abs() as usize));
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn domination_matches_oracle(f in monotone_table(), g in monotone_table()) {
        let (tf, tg) = (Tabulated::new(0, f.clone()), Tabulated::new(0, g.clone()));
        let got = dominates(&tf, &tg, DominationBox::uniform(3)).map(|(a, b, c, d, e)| [a, b, c, d, e]);
        prop_assert_eq!(got, domination_oracle(&f, &g, 3));
        prop_assert!(dominates(&tf, &tf, DominationBox::default()).is_some());
    }

    #[test]
    fn domination_witnesses_recheck(f in monotone_table(), g in monotone_table()) {
        let (tf, tg) = (Tabulated::new(0, f.clone()), Tabulated::new(0, g.clone()));
        if let Some((a, b, c, d, e)) = dominates(&tf, &tg, DominationBox::default()) {
            for n in 0..f.len().min(g.len()) as u64 {
                let gv = tg.get(b * n + c).unwrap();
                prop_assert!(f[n as usize] <= a * gv + d * n + e);
            }
        }
    }

    #[test]
    fn pointwise_order_gives_transitive_domination(rows in prop::collection::vec(prop::collection::vec(0u64..20, 3), 8)) {
        let mut cols = [Vec::new(), Vec::new(), Vec::new()];
        for mut r in rows {
            r.sort_unstable();
            for (c, v) in cols.iter_mut().zip(r) {
                c.push(v);
            }
        }
        let [f, g, h] = cols.map(|c| Tabulated::new(0, c));
        let bx = DominationBox::default();
        prop_assert!(dominates(&f, &g, bx).is_some());
        prop_assert!(dominates(&g, &h, bx).is_some());
        prop_assert!(dominates(&f, &h, bx).is_some());
        prop_assert!(equivalent(&g, &g, bx).is_some());
    }

    #[test]
    fn loop_fillings_match_winding_numbers(steps in closed_loop()) {
        let (_, ball, x) = z2_complex(6);
        let letters: Vec<Letter> = steps.iter().map(|&(g, e)| if e > 0 { Letter::generator(g) } else { Letter::generator_inverse(g) }).collect();
        let lp = EdgeLoop { start: 0, word: Word::reduce(letters.iter().copied()) };
        let chain = loop_chain(&ball, &lp).unwrap();
        let area = winding_area(lp.word.letters());
        let f = min_filling(&x, &chain, Objective::Count, &Budget::unlimited()).unwrap();
        prop_assert_eq!(f.status, Status::Exact);
        prop_assert_eq!(f.count, area);
        prop_assert_eq!(&boundary(&x, &f.filling), &chain);
        let d = min_area_diagram(&x, &ball, &lp, &Budget::unlimited()).unwrap();
        prop_assert_eq!(d.count, area);
        let lb = lp_filling_bound(&x, &chain, Objective::Count).unwrap().lower_bound;
        prop_assert!(lb <= BigRational::from_integer(BigInt::from(area)));
    }

    #[test]
    fn ilp_matches_exhaustive_search(terms in prop::collection::vec((0usize..12, -1i64..=1), 0..6)) {
        // Radius 3 has exactly twelve squares.
        let (_, _, x) = z2_complex(3);
        prop_assert_eq!(x.num_cells(2), 12);
        let a = Chain::from_terms(2, terms);
        let b = boundary(&x, &a);
        let f = min_filling(&x, &b, Objective::Count, &Budget::unlimited()).unwrap();
        prop_assert_eq!(&boundary(&x, &f.filling), &b);
        prop_assert_eq!(exhaustive_filling(&x, 2, &b, f.count), Some(f.count));
        if f.count > 0 {
            prop_assert_eq!(exhaustive_filling(&x, 2, &b, f.count - 1), None);
        }
    }
}
