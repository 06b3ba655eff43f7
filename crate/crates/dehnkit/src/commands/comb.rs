use dehnkit_core::cayley::{build_ball, GroupBall};
use dehnkit_core::combing::{
    alpha_geodesic_violations, build_alpha, build_beta, coherence_violations, fellow_traveler_k, length_bound_check,
    projection_violations, return_bound_n, settle_time_bound_check, subgroup_combing_on_ball, synchrony_report,
    GeodesicSubgroupCombing, Polynomial, SynchronyWitness,
};
use dehnkit_core::coned::{
    bcp_partial, cone_off, delta_from_partial, delta_partial, delta_sampled, quadruple_count, AnnotatedPath,
    BcpEstimate, BcpWitness, ConedGraph, DeltaEstimate,
};
use dehnkit_core::words::{Presentation, Word};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{Context, Output};
use crate::cli::{CombArgs, ConedArgs};
use crate::error::CliError;
use crate::report::{load_presentation, presentation_json, ratio};

fn subgroup_indices(p: &Presentation, names: &[String]) -> Result<Vec<usize>, CliError> {
    names
        .iter()
        .map(|n| p.subgroup_index(n).ok_or_else(|| CliError::Parse(format!("unknown subgroup '{n}'"))))
        .collect()
}

fn label(g: &ConedGraph, v: usize) -> String {
    let p = g.ball().presentation();
    if g.is_coset_vertex(v) {
        let c = g.coset(v);
        let rep = if c.representative.is_identity() { String::new() } else { p.format_word(&c.representative) };
        format!("{rep}{}", p.subgroups()[c.subgroup].name)
    } else {
        p.format_word(g.ball().word(v))
    }
}

fn path_json(g: &ConedGraph, path: &AnnotatedPath) -> Value {
    json!({
        "vertices": path.vertices.iter().map(|&v| label(g, v)).collect::<Vec<_>>(),
        "penetrations": path.penetrations.iter().map(|pe| json!({
            "coset": label(g, pe.coset),
            "entry": label(g, pe.entry),
            "exit": label(g, pe.exit),
        })).collect::<Vec<_>>(),
    })
}

fn delta(ctx: &Context, g: &ConedGraph, cap: u64) -> DeltaEstimate {
    let radius = g.ball().radius();
    if quadruple_count(g) <= u128::from(cap) {
        let p = (0..g.num_elements())
            .into_par_iter()
            .map(|x| delta_partial(g, x))
            .reduce_with(|a, b| a.merge(b))
            .expect("ball is nonempty");
        delta_from_partial(p, radius, true)
    } else {
        delta_sampled(g, cap, &mut ChaCha8Rng::seed_from_u64(ctx.global.seed))
    }
}

fn delta_json(g: &ConedGraph, d: &DeltaEstimate) -> Value {
    json!({
        "R": d.radius,
        "delta": if d.value_doubled % 2 == 0 { ratio(d.value_doubled / 2, 1) } else { ratio(d.value_doubled, 2) },
        "value_doubled": d.value_doubled,
        "mode": if d.exhaustive { "exhaustive" } else { "sampled" },
        "quadruples": d.quadruples,
        "witness": d.witness.map(|q| q.iter().map(|&v| label(g, v)).collect::<Vec<_>>()),
    })
}

fn bcp(g: &ConedGraph, cap: usize) -> BcpEstimate {
    (0..g.num_elements())
        .into_par_iter()
        .map(|x| bcp_partial(g, x, cap))
        .reduce_with(BcpEstimate::merge)
        .expect("ball is nonempty")
}

fn witness_json(g: &ConedGraph, w: &Option<BcpWitness>) -> Value {
    match w {
        None => Value::Null,
        Some(w) => json!({
            "kind": w.kind.tag(),
            "coset": label(g, w.coset),
            "value": w.value,
            "recheck": w.recheck(g),
            "p": path_json(g, &w.p),
            "q": path_json(g, &w.q),
        }),
    }
}

fn bcp_json(g: &ConedGraph, b: &BcpEstimate) -> Value {
    let witnesses: Vec<Value> =
        [&b.entry_exit_witness, &b.pairwise_witness].into_iter().filter(|w| w.is_some()).map(|w| witness_json(g, w)).collect();
    json!({
        "c1": b.c1(),
        "c1_entry_exit": b.c1_entry_exit,
        "c1_pairwise": b.c1_pairwise,
        "entry_exit_witness": witness_json(g, &b.entry_exit_witness),
        "pairwise_witness": witness_json(g, &b.pairwise_witness),
        "witnesses": witnesses,
        "exhaustive": b.exhaustive,
        "endpoint_pairs": b.endpoint_pairs,
        "geodesic_pairs": b.geodesic_pairs,
    })
}

/// Pairs whose coned distance exceeds the word-metric distance.
fn coned_shortening_violations(g: &ConedGraph) -> u64 {
    let ball = g.ball();
    let n = g.num_elements();
    (0..n)
        .into_par_iter()
        .map(|u| (u + 1..n).filter(|&v| u64::from(g.doubled_distance(u, v)) > 2 * ball.distance(u, v) as u64).count() as u64)
        .sum()
}

pub fn coned(ctx: &Context, a: &ConedArgs) -> Result<Output, CliError> {
    let lp = load_presentation(&a.pres)?;
    let p = &lp.presentation;
    let subs = subgroup_indices(p, &a.subgroups)?;
    let ball = build_ball(p, a.radius)?;
    let g = cone_off(&ball, &subs)?;
    ctx.check_deadline()?;
    let d = delta(ctx, &g, a.quadruple_cap);
    let mut profile = Vec::new();
    for r in 1..=a.radius {
        ctx.check_deadline()?;
        let gr = cone_off(&build_ball(p, r)?, &subs)?;
        profile.push(delta_json(&gr, &delta(ctx, &gr, a.quadruple_cap)));
    }
    ctx.check_deadline()?;
    let b = bcp(&g, a.geodesic_cap);
    let result = json!({
        "presentation": presentation_json(p),
        "radius": a.radius,
        "subgroups": a.subgroups,
        "elements": g.num_elements(),
        "cosets": g.cosets().len(),
        "vertices": g.num_vertices(),
        "delta": delta_json(&g, &d),
        "delta_profile": profile,
        "bcp": bcp_json(&g, &b),
        "coned_shortening_violations": coned_shortening_violations(&g),
    });
    Ok(Output::new(vec![lp.input], result))
}

fn synchrony_json(g: &ConedGraph, w: &Option<SynchronyWitness>) -> Value {
    w.as_ref().map_or(Value::Null, |w| {
        json!({
            "g": label(g, w.g),
            "h": label(g, w.h),
            "step_g": w.step_g,
            "step_h": w.step_h,
            "coset_g": label(g, w.coset_g),
            "coset_h": label(g, w.coset_h),
            "entry_distance": w.entry_distance,
            "exit_distance": w.exit_distance,
            "entry_time_difference": w.entry_time_difference,
            "exit_time_difference": w.exit_time_difference,
        })
    })
}

fn words(p: &Presentation, ws: &[Word]) -> Vec<String> {
    ws.iter().map(|w| p.format_word(w)).collect()
}

fn index_words(ball: &GroupBall, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| ball.presentation().format_word(ball.word(i))).collect()
}

pub fn comb(ctx: &Context, a: &CombArgs) -> Result<Output, CliError> {
    let lp = load_presentation(&a.pres)?;
    let p = &lp.presentation;
    let subs = subgroup_indices(p, &a.subgroups)?;
    let poly = Polynomial::parse(&a.poly)?;
    let ball = build_ball(p, a.radius)?;
    let g = cone_off(&ball, &subs)?;
    let alpha = build_alpha(&g);
    let coherence = coherence_violations(&alpha);
    let alpha_geo = alpha_geodesic_violations(&alpha, &g);
    ctx.check_deadline()?;

    let (c1, c1_source, bcp_report) = match a.c1 {
        Some(c) => (c, "user", Value::Null),
        None => {
            let b = bcp(&g, a.geodesic_cap);
            (b.c1(), "measured", bcp_json(&g, &b))
        }
    };
    let stay = u64::try_from(poly.eval(c1)).unwrap_or(u64::MAX).max(1);
    let sc = GeodesicSubgroupCombing::new(p);
    let beta = build_beta(&alpha, &g, &sc, stay)?;
    let combing = beta.to_combing(&ball);
    ctx.check_deadline()?;

    let metric = |x: &Word, y: &Word| p.distance(x, y);
    let k = fellow_traveler_k(&combing, &metric);
    let n = return_bound_n(&combing);
    let sync = synchrony_report(&beta, &alpha, &g);
    let settle = settle_time_bound_check(&combing, &metric, k.k, n.n, &ball.volumes());
    let projection = projection_violations(&beta, &alpha, &g);
    let c = a.c.unwrap_or(c1);
    let length = length_bound_check(&beta, &ball, &poly, &|_| c);

    let mut subgroup_n = Vec::new();
    for &s in &subs {
        let sc_ball = subgroup_combing_on_ball(&sc, &ball, s)?;
        let rb = return_bound_n(&sc_ball);
        subgroup_n.push(json!({ "subgroup": p.subgroups()[s].name, "elements": sc_ball.len(), "n": rb.n }));
    }

    let paths: Vec<Value> = (0..ball.len())
        .map(|i| {
            json!({
                "g": p.format_word(ball.word(i)),
                "positions": words(p, &beta.paths[i].positions),
                "alpha": alpha.paths[i].itinerary().iter().map(|&v| label(&g, v)).collect::<Vec<_>>(),
            })
        })
        .collect();

    let result = json!({
        "presentation": presentation_json(p),
        "radius": a.radius,
        "subgroups": a.subgroups,
        "target": combing.target.tag(),
        "poly": poly.coefficients,
        "c1": c1,
        "c1_source": c1_source,
        "c": c,
        "stay": stay,
        "bcp": bcp_report,
        "alpha": {
            "coherence_violations": coherence.len(),
            "geodesic_violations": alpha_geo.len(),
            "spliced": alpha.splices.iter().filter(|s| s.is_some()).count(),
        },
        "constants": {
            "K": ratio(k.k.numer(), k.k.denom()),
            "K_witness": k.witness.map(|w| json!({
                "g": p.format_word(&combing.targets[w.g]),
                "h": p.format_word(&combing.targets[w.h]),
                "t": w.t,
                "apart": w.apart,
                "endpoint_distance": w.endpoint_distance,
            })),
            "N": n.n,
            "N_witness": n.witness.map(|(i, w, cnt)| json!({
                "g": p.format_word(&combing.targets[i]),
                "vertex": p.format_word(&w),
                "visits": cnt,
            })),
            "M": sync.m,
            "T": sync.t,
            "M_witness": synchrony_json(&g, &sync.m_witness),
            "T_witness": synchrony_json(&g, &sync.t_witness),
            "adjacent_pairs": sync.adjacent_pairs,
            "synchronous_pairs": sync.synchronous_pairs,
        },
        "subgroup_n": subgroup_n,
        "endpoint_violations": index_words(&ball, &combing.endpoint_violations()),
        "projection_violations": index_words(&ball, &projection),
        "settle": {
            "checked": settle.checked,
            "violations": settle.violations.len(),
            "min_slack": settle.min_slack.map(|s| s.to_string()),
            "max_slack": settle.max_slack.map(|s| s.to_string()),
            "clamped": settle.clamped,
        },
        "length": {
            "checked": length.checked,
            "violations": length.violations.iter().map(|&(i, len, bound)| json!({
                "g": p.format_word(ball.word(i)),
                "length": len,
                "bound": bound.to_string(),
            })).collect::<Vec<_>>(),
            "profile": length.profile,
            "fit": length.fit.map(|f| json!({
                "degree": f.degree,
                "coefficient": ratio(f.coefficient.numer(), f.coefficient.denom()),
            })),
        },
        "length_profile": (0..ball.len()).map(|i| json!({
            "g": p.format_word(ball.word(i)),
            "len_g": ball.length(i),
            "len_beta": combing.paths[i].length(),
        })).collect::<Vec<_>>(),
        "paths": paths,
    });
    Ok(Output::new(vec![lp.input], result))
}
