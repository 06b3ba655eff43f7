use dehnkit_core::budget::Budget;
use dehnkit_core::complex::{boundary, lattice_box, CellComplex};
use dehnkit_core::filling::{
    dehn_table_from, enumerate_boundaries, lp_filling_bound, min_area_diagram, min_filling, poly_bound_fit, solve_one,
    BridgeReport, DehnTable, DominationBox, EdgeLoop, FillingProblem, FillingResult, Objective, SizeMeasure, Status,
    Tabulated,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use super::{build_space, chain_json, filling_json, Context, Output};
use crate::cli::{CompareArgs, DehnArgs, FillingArgs};
use crate::error::CliError;
use crate::report::{input_record, ratio, Artifact};

fn table(ctx: &Context, x: &CellComplex, a: &DehnArgs, weighted: bool) -> Result<(DehnTable, u64), CliError> {
    let measure = if weighted { SizeMeasure::Weighted } else { SizeMeasure::Count };
    let e = enumerate_boundaries(x, a.dim, a.kmax, measure, a.enumeration_cap)?;
    ctx.check_deadline()?;
    let plain = FillingProblem::new(x, a.dim, Objective::Count);
    let wp = FillingProblem::new(x, a.dim, Objective::Weighted);
    let max_nodes = ctx.global.max_nodes;
    let solved: Vec<_> = e
        .cycles
        .par_iter()
        .map(|c| {
            ctx.check_deadline()?;
            solve_one(x, &plain, &wp, c, max_nodes, 0).map_err(CliError::from)
        })
        .collect::<Result<_, _>>()?;
    let non_boundaries = solved.iter().filter(|r| r.is_none()).count();
    let records = solved
        .into_iter()
        .flatten()
        .enumerate()
        .map(|(id, mut r)| {
            r.id = id;
            r
        })
        .collect();
    let t = dehn_table_from(a.dim, a.kmax, weighted, Some(a.space.radius), records, non_boundaries);
    Ok((t, e.nodes))
}

fn fit_json(values: &[u64]) -> Value {
    match poly_bound_fit(values) {
        Ok(f) => json!({
            "degree": f.degree,
            "coefficient": ratio(f.coefficient.numer(), f.coefficient.denom()),
            "slope": f.slope,
            "max_residual": f.max_residual,
        }),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn table_json(t: &DehnTable, nodes: u64) -> Value {
    let entries: Vec<Value> = t
        .entries
        .iter()
        .map(|e| json!({ "k": e.k, "value": e.value, "status": e.status.tag(), "witness": e.witness }))
        .collect();
    let boundaries: Vec<Value> = t
        .boundaries
        .iter()
        .map(|r| {
            json!({
                "id": r.id,
                "count": r.count,
                "weighted": r.weighted,
                "filling": { "count": r.filling.count, "status": r.filling.status.tag() },
                "weighted_filling": { "weighted_count": r.weighted_filling.weighted_count, "status": r.weighted_filling.status.tag() },
                "chain": chain_json(&r.chain)["cells"],
            })
        })
        .collect();
    json!({
        "weighted": t.weighted,
        "entries": entries,
        "fit": fit_json(&t.values()),
        "enumeration_nodes": nodes,
        "non_boundaries": t.non_boundaries,
        "boundaries": boundaries,
    })
}

fn table_csv(t: &DehnTable) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["k", "value", "status", "witness_id"])?;
    for e in &t.entries {
        let witness = e.witness.map_or(String::new(), |id| id.to_string());
        w.write_record([e.k.to_string(), e.value.to_string(), e.status.tag().to_string(), witness])?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

fn bridge_json(r: &BridgeReport) -> Value {
    json!({
        "checked": r.checked,
        "clamped": r.clamped,
        "violations": r.violations.iter().map(|v| json!({ "at": v.at, "lhs": v.lhs, "rhs": v.rhs.to_string() })).collect::<Vec<_>>(),
    })
}

fn csv_name(weighted: bool) -> &'static str {
    if weighted { "dehn-weighted.csv" } else { "dehn-plain.csv" }
}

pub fn dehn(ctx: &Context, a: &DehnArgs) -> Result<Output, CliError> {
    let space = build_space(&a.space)?;
    let x = &space.complex;
    if a.dim == 0 || a.dim >= x.top_dim() + 1 {
        return Err(CliError::Other(format!("dimension {} needs cells of dimension {}", a.dim, a.dim + 1)));
    }
    let (main, nodes) = table(ctx, x, a, a.weighted)?;
    let mut extra = vec![Artifact { name: csv_name(a.weighted).into(), contents: table_csv(&main)? }];
    let mut result = json!({
        "space": space.descriptor,
        "dim": a.dim,
        "kmax": a.kmax,
        "table": table_json(&main, nodes),
    });
    if a.bridge {
        let (other, other_nodes) = table(ctx, x, a, !a.weighted)?;
        extra.push(Artifact { name: csv_name(!a.weighted).into(), contents: table_csv(&other)? });
        let (plain, weighted) = if a.weighted { (&other, &main) } else { (&main, &other) };
        let wb = dehnkit_core::filling::weighted_bound_check(x, plain, &weighted.boundaries);
        let cb = dehnkit_core::filling::converse_bound_check(x, plain, weighted, &plain.boundaries);
        result["other_table"] = table_json(&other, other_nodes);
        result["bridge"] = json!({
            "weighted_bound": bridge_json(&wb),
            "converse_bound": bridge_json(&cb),
            "edge_count_j": x.max_edges(a.dim + 1),
            "vertex_count_j_prime": x.max_vertices(a.dim + 1),
            "orbit_radius": x.orbit_radius(),
        });
    }
    let mut out = Output::new(space.inputs, result);
    out.extra = extra;
    Ok(out)
}

fn objective(weighted: bool) -> Objective {
    if weighted { Objective::Weighted } else { Objective::Count }
}

pub fn filling(ctx: &Context, a: &FillingArgs) -> Result<Output, CliError> {
    let space = build_space(&a.space)?;
    let x = &space.complex;
    let expired = || ctx.expired();
    let budget = || Budget::new(ctx.global.max_nodes).with_interrupt(&expired);
    let obj = objective(a.weighted);
    let result = match (&a.word, a.box_side) {
        (Some(text), None) => {
            let ball = space.ball.as_ref().ok_or_else(|| CliError::Parse("--word needs --pres".into()))?;
            let p = ball.presentation();
            let parse = |s: &str| p.parse_word(s).map_err(|c| CliError::Parse(format!("unknown letter '{c}' in '{s}'")));
            let word = parse(text)?;
            let start_word = p.normal_form(&parse(a.start.as_deref().unwrap_or(""))?);
            let start = ball
                .index_of(&start_word)
                .ok_or_else(|| CliError::Infeasible(format!("start vertex {} lies outside the ball", p.format_word(&start_word))))?;
            let lp = EdgeLoop { start, word };
            let chain = dehnkit_core::filling::loop_chain(ball, &lp)?;
            let diagram = min_area_diagram(x, ball, &lp, &budget())?;
            let ilp = min_filling(x, &chain, obj, &budget())?;
            let lpb = lp_filling_bound(x, &chain, obj)?;
            json!({
                "space": space.descriptor,
                "kind": "loop",
                "word": p.format_word(&lp.word),
                "start": p.format_word(&start_word),
                "boundary": chain_json(&chain),
                "diagram": filling_json(&diagram),
                "ilp": filling_json(&ilp),
                "lp": filling_json(&lpb),
                "agree": agree(&diagram, &ilp, obj),
            })
        }
        (None, Some(side)) => {
            let k = space.rank.ok_or_else(|| CliError::Parse("--box needs --cubical".into()))?;
            if side < 1 || side as usize > a.space.radius || k < 1 {
                return Err(CliError::Infeasible(format!("box side {side} does not fit in radius {}", a.space.radius)));
            }
            if x.top_dim() < k {
                return Err(CliError::Other(format!("lattice has no {k}-cells")));
            }
            let solid = lattice_box(x, a.space.radius, k, &vec![0; k], &vec![side; k]);
            let surface = boundary(x, &solid);
            let ilp = min_filling(x, &surface, obj, &budget())?;
            let lpb = lp_filling_bound(x, &surface, obj)?;
            json!({
                "space": space.descriptor,
                "kind": "box",
                "side": side,
                "surface_cells": surface.l1(),
                "ilp": filling_json(&ilp),
                "lp": filling_json(&lpb),
                "lp_below_exact": lpb.lower_bound <= BigRational::from_integer(BigInt::from(ilp.value())),
            })
        }
        _ => return Err(CliError::Parse("exactly one of --word or --box is required".into())),
    };
    Ok(Output::new(space.inputs, result))
}

fn agree(diagram: &FillingResult, ilp: &FillingResult, obj: Objective) -> Option<bool> {
    (obj == Objective::Count && diagram.status == Status::Exact && ilp.status == Status::Exact)
        .then(|| diagram.count == ilp.count)
}

#[derive(Deserialize)]
struct Row {
    k: u64,
    value: u64,
}

fn read_table(path: &std::path::Path) -> Result<(Tabulated, Value), CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut rd = csv::Reader::from_reader(bytes.as_slice());
    let rows: Vec<Row> = rd.deserialize().collect::<Result<_, _>>()?;
    let start = rows.first().map_or(0, |r| r.k);
    for (i, r) in rows.iter().enumerate() {
        if r.k != start + i as u64 {
            return Err(CliError::Parse(format!("{}: arguments must be consecutive", path.display())));
        }
    }
    Ok((Tabulated::new(start, rows.iter().map(|r| r.value).collect()), input_record(path, &bytes)))
}

fn witness_json(w: Option<(u64, u64, u64, u64, u64)>) -> Value {
    w.map_or(Value::Null, |(a, b, c, d, e)| json!({ "A": a, "B": b, "C": c, "D": d, "E": e }))
}

pub fn compare(_ctx: &Context, a: &CompareArgs) -> Result<Output, CliError> {
    let (f, fin) = read_table(&a.left)?;
    let (g, gin) = read_table(&a.right)?;
    let bx = DominationBox::uniform(a.box_max);
    let fg = dehnkit_core::filling::dominates(&f, &g, bx);
    let gf = dehnkit_core::filling::dominates(&g, &f, bx);
    let result = json!({
        "box": a.box_max,
        "left_range": [f.start, f.end()],
        "right_range": [g.start, g.end()],
        "left_dominated_by_right": witness_json(fg),
        "right_dominated_by_left": witness_json(gf),
        "equivalent": fg.is_some() && gf.is_some(),
    });
    Ok(Output::new(vec![fin, gin], result))
}
