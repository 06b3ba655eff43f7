use dehnkit_core::cayley::{build_ball, GroupBall};
use dehnkit_core::combing::{
    alpha_geodesic_violations, build_alpha, build_beta, coherence_violations, fellow_traveler_k, first_disagreement,
    length_bound_check, normal_form_combing, projection_violations, return_bound_n, settle_time_bound_check,
    subgroup_combing_on_ball, synchrony_report, Combing, CombingPath, CombingTarget, GeodesicSubgroupCombing,
    Polynomial,
};
use dehnkit_core::coned::{bcp_estimate, cone_off, ConedGraph, DEFAULT_GEODESIC_CAP};
use dehnkit_core::words::{Presentation, Subgroup, Word};
use num_rational::Ratio;

fn z2_axes() -> Presentation {
    Presentation::free_abelian(2)
        .with_subgroups(vec![
            Subgroup { name: "H".into(), generators: vec![0] },
            Subgroup { name: "K".into(), generators: vec![1] },
        ])
        .unwrap()
}

fn coned(p: &Presentation, r: usize, subs: &[usize]) -> ConedGraph {
    cone_off(&build_ball(p, r).unwrap(), subs).unwrap()
}

fn xy(w: &Word) -> (i64, i64) {
    w.letters().iter().fold((0, 0), |(x, y), l| if l.gen() == 0 { (x + l.exponent(), y) } else { (x, y + l.exponent()) })
}

/// K of the a-then-b combing of ℤ², computed from coordinates alone.
fn straight_line_k(r: i64) -> Ratio<u64> {
    let pts: Vec<(i64, i64)> =
        (-r..=r).flat_map(|x| (-r..=r).map(move |y| (x, y))).filter(|(x, y)| x.abs() + y.abs() <= r).collect();
    let at = |(x, y): (i64, i64), t: i64| -> (i64, i64) {
        let tx = t.min(x.abs());
        let ty = (t - tx).min(y.abs());
        (x.signum() * tx, y.signum() * ty)
    };
    let d = |a: (i64, i64), b: (i64, i64)| (a.0 - b.0).unsigned_abs() + (a.1 - b.1).unsigned_abs();
    let mut best = Ratio::new(0, 1);
    for &g in &pts {
        for &h in &pts {
            if g == h {
                continue;
            }
            for t in 0..=2 * r {
                best = best.max(Ratio::new(d(at(g, t), at(h, t)), d(g, h)));
            }
        }
    }
    best
}

fn metric(p: &Presentation) -> impl Fn(&Word, &Word) -> u64 + '_ {
    move |x, y| p.distance(x, y)
}

#[test]
fn straight_line_combing_constant() {
    let p = Presentation::free_abelian(2);
    let ball = build_ball(&p, 4).unwrap();
    let c = normal_form_combing(&ball);
    let k = fellow_traveler_k(&c, &metric(&p));
    assert_eq!(k.k, straight_line_k(4));
    let w = k.witness.unwrap();
    assert_eq!(Ratio::new(w.apart, w.endpoint_distance), k.k);
    let (g, h) = (&c.paths[w.g], &c.paths[w.h]);
    assert_eq!(p.distance(g.at(w.t), h.at(w.t)), w.apart);
    assert_eq!(return_bound_n(&c).n, 1);
    let s = settle_time_bound_check(&c, &metric(&p), k.k, 1, &ball.volumes());
    assert!(s.violations.is_empty());
}

#[test]
fn tree_combing_is_one_fellow_traveler() {
    let p = Presentation::free_group(2);
    let ball = build_ball(&p, 4).unwrap();
    let c = normal_form_combing(&ball);
    assert_eq!(fellow_traveler_k(&c, &metric(&p)).k, Ratio::new(1, 1));
    // Geodesic settle times are lengths, so |t_y − t_x| ≤ d(x, y).
    for x in 0..c.len() {
        for y in 0..c.len() {
            let dt = c.paths[x].settle_time().abs_diff(c.paths[y].settle_time()) as u64;
            assert!(dt <= p.distance(&c.targets[x], &c.targets[y]));
        }
    }
    let s = settle_time_bound_check(&c, &metric(&p), Ratio::new(1, 1), 1, &ball.volumes());
    assert!(s.violations.is_empty());
}

#[test]
fn degenerate_combings() {
    let p = Presentation::free_abelian(2);
    let single = normal_form_combing(&build_ball(&p, 0).unwrap());
    let k = fellow_traveler_k(&single, &metric(&p));
    assert_eq!(k.k, Ratio::new(0, 1));
    assert!(k.witness.is_none());
    assert!(settle_time_bound_check(&single, &metric(&p), k.k, 0, &[1]).violations.is_empty());

    let w = |s: &str| p.parse_word(s).unwrap();
    let revisit = Combing {
        target: CombingTarget::Group,
        targets: vec![w("ab")],
        paths: vec![CombingPath::new(vec![w(""), w("a"), w(""), w("a"), w("ab"), w("ab")])],
    };
    assert_eq!(return_bound_n(&revisit).n, 2);
    assert_eq!(revisit.paths[0].settle_time(), 4);
    assert!(revisit.paths[0].is_unit_step(&metric(&p)));
    assert!(revisit.endpoint_violations().is_empty());
}

#[test]
fn alpha_is_coherent_and_geodesic() {
    let p = z2_axes();
    for r in 2..=4 {
        let g = coned(&p, r, &[0, 1]);
        let alpha = build_alpha(&g);
        assert!(coherence_violations(&alpha).is_empty());
        assert!(alpha_geodesic_violations(&alpha, &g).is_empty());
        for (i, a) in alpha.paths.iter().enumerate() {
            assert_eq!(2 * a.len() as u32, g.doubled_distance(0, i));
            assert_eq!(a.vertices[0], 0);
            assert_eq!(*a.vertices.last().unwrap(), i);
        }
        // Brute-force prefix coherence over all pairs.
        for x in &alpha.paths {
            for y in &alpha.paths {
                let h = x.len().max(y.len());
                let last = (0..=h).rev().find(|&t| x.at(t) == y.at(t));
                if let Some(l) = last {
                    assert!((0..=l).all(|t| x.at(t) == y.at(t)));
                }
            }
        }
        assert_eq!(build_alpha(&g), alpha);
    }
}

#[test]
fn alpha_examples() {
    let p = z2_axes();
    let g = coned(&p, 3, &[0, 1]);
    let alpha = build_alpha(&g);
    let idx = |s: &str| g.ball().index_of(&p.parse_word(s).unwrap()).unwrap();
    let a = &alpha.paths[idx("a")];
    assert_eq!(a.vertices, vec![0, idx("a")]);
    assert_eq!(a.cosets, vec![None]);
    let aaa = &alpha.paths[idx("aaa")];
    assert_eq!(aaa.len(), 1);
    let h = aaa.cosets[0].unwrap();
    assert_eq!(g.coset(h).subgroup, 0);
    assert!(g.coset(h).representative.is_identity());
}

#[test]
fn beta_examples() {
    let p = z2_axes();
    let g = coned(&p, 5, &[0]);
    let alpha = build_alpha(&g);
    let sc = GeodesicSubgroupCombing::new(&p);
    let beta = build_beta(&alpha, &g, &sc, Polynomial::identity().eval(3) as u64).unwrap();
    let idx = |s: &str| g.ball().index_of(&p.parse_word(s).unwrap()).unwrap();
    let w = |s: &str| p.parse_word(s).unwrap();
    // One edge step: move, then stay for two more units.
    assert_eq!(beta.paths[idx("b")].positions, vec![w(""), w("b"), w("b"), w("b")]);
    // A coset excursion longer than the stay is left alone.
    let ones = ["", "a", "aa", "aaa", "aaaa", "aaaaa"].map(w).to_vec();
    assert_eq!(beta.paths[idx("aaaaa")].positions, ones);
    assert!(build_beta(&alpha, &g, &sc, 0).is_err());
}

#[test]
fn beta_is_well_formed() {
    let p = z2_axes();
    for r in 2..=4 {
        let g = coned(&p, r, &[0, 1]);
        let alpha = build_alpha(&g);
        let c1 = bcp_estimate(&g, DEFAULT_GEODESIC_CAP).c1();
        let poly = Polynomial::identity();
        let beta = build_beta(&alpha, &g, &GeodesicSubgroupCombing::new(&p), poly.eval(c1) as u64).unwrap();
        let comb = beta.to_combing(g.ball());
        assert!(comb.endpoint_violations().is_empty());
        assert!(comb.paths.iter().all(|q| q.is_unit_step(&metric(&p))));
        assert!(projection_violations(&beta, &alpha, &g).is_empty());
        let len = length_bound_check(&beta, g.ball(), &poly, &|_| c1);
        assert!(len.violations.is_empty(), "r={r}");
        assert_eq!(len.profile[0], 0);
        beta_prefix_agreement(&beta, &alpha, g.ball());
        synchrony_witnesses_recheck(&beta, &alpha, &g);
    }
}

/// β paths agree while their α paths do, segment for segment.
fn beta_prefix_agreement(beta: &dehnkit_core::combing::Beta, alpha: &dehnkit_core::combing::Alpha, ball: &GroupBall) {
    for (x, ax) in alpha.paths.iter().enumerate() {
        for (y, ay) in alpha.paths.iter().enumerate() {
            let shared = (0..ax.len().min(ay.len()))
                .take_while(|&t| ax.vertices[t + 1] == ay.vertices[t + 1] && ax.cosets[t] == ay.cosets[t])
                .count();
            if shared == 0 {
                continue;
            }
            let end = beta.paths[x].segments[shared - 1].end;
            let differ = first_disagreement(&beta.paths[x].positions, &beta.paths[y].positions);
            assert!(differ.is_none_or(|t| t > end), "{} vs {}", ball.word(x).len(), ball.word(y).len());
        }
    }
}

fn synchrony_witnesses_recheck(beta: &dehnkit_core::combing::Beta, alpha: &dehnkit_core::combing::Alpha, g: &ConedGraph) {
    let s = synchrony_report(beta, alpha, g);
    let ball = g.ball();
    if let Some(w) = &s.m_witness {
        let (ax, ay) = (&alpha.paths[w.g], &alpha.paths[w.h]);
        let e = ball.distance(ax.vertices[w.step_g], ay.vertices[w.step_h]) as u64;
        let x = ball.distance(ax.vertices[w.step_g + 1], ay.vertices[w.step_h + 1]) as u64;
        assert_eq!(e.max(x), s.m);
        assert_eq!(ball.distance(w.g, w.h), 1);
    }
    if let Some(w) = &s.t_witness {
        let (bx, by) = (&beta.paths[w.g].segments[w.step_g], &beta.paths[w.h].segments[w.step_h]);
        assert_eq!((bx.start.abs_diff(by.start) as u64).max(bx.end.abs_diff(by.end) as u64), s.t);
    }
}

#[test]
fn subgroup_combings_are_geodesic() {
    let p = z2_axes();
    let ball = build_ball(&p, 4).unwrap();
    let sc = GeodesicSubgroupCombing::new(&p);
    for s in 0..2 {
        let c = subgroup_combing_on_ball(&sc, &ball, s).unwrap();
        assert_eq!(c.len(), 9);
        assert_eq!(return_bound_n(&c).n, 1);
        for (t, path) in c.targets.iter().zip(&c.paths) {
            assert_eq!(path.length() as u64, p.word_length(t).value);
            let (x, y) = xy(t);
            assert!(if s == 0 { y == 0 } else { x == 0 });
        }
    }
}

proptest::proptest! {
    #[test]
    fn beta_paths_are_unit_step(target in 0usize..41, stay in 1u64..5) {
        let p = z2_axes();
        let g = coned(&p, 4, &[0, 1]);
        let alpha = build_alpha(&g);
        let beta = build_beta(&alpha, &g, &GeodesicSubgroupCombing::new(&p), stay).unwrap();
        let path = &beta.to_combing(g.ball()).paths[target];
        proptest::prop_assert!(path.is_unit_step(&metric(&p)));
        proptest::prop_assert_eq!(path.end(), g.ball().word(target));
        let segs = &beta.paths[target].segments;
        for s in segs {
            proptest::prop_assert!(s.end - s.start >= stay as usize);
        }
        proptest::prop_assert!(segs.windows(2).all(|w| w[0].end == w[1].start));
    }
}

#[test]
fn polynomials() {
    let p = Polynomial::parse("1+2x+x^2").unwrap();
    assert_eq!(p.coefficients, vec![1, 2, 1]);
    assert_eq!(p.eval(3), 16);
    assert_eq!(Polynomial::identity().eval(7), 7);
    assert!(Polynomial::parse("x-1").is_err());
}
