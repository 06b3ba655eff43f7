use dehnkit_core::cayley::build_ball_capped;
use dehnkit_core::complex::{boundary, Chain};
use serde_json::{json, Value};

use super::{build_space, chain_json, Context, Output};
use crate::cli::{BallArgs, ComplexArgs};
use crate::error::CliError;
use crate::report::{load_presentation, presentation_json};

pub fn ball(_ctx: &Context, a: &BallArgs) -> Result<Output, CliError> {
    let lp = load_presentation(&a.pres)?;
    let p = &lp.presentation;
    let ball = build_ball_capped(p, a.radius, a.vertex_cap)?;
    let vertices: Vec<Value> = (0..ball.len())
        .map(|v| json!({ "id": v, "word": p.format_word(ball.word(v)), "length": ball.length(v) }))
        .collect();
    let result = json!({
        "presentation": presentation_json(p),
        "radius": a.radius,
        "exact_lengths": p.engine().is_geodesic(),
        "size": ball.len(),
        "edges": ball.edges().iter().map(|e| json!({ "from": e.from, "to": e.to, "gen": p.generator_names()[e.gen].to_string() })).collect::<Vec<_>>(),
        "volumes": ball.volumes(),
        "vertices": vertices,
    });
    Ok(Output::new(vec![lp.input], result))
}

pub fn complex(_ctx: &Context, a: &ComplexArgs) -> Result<Output, CliError> {
    let space = build_space(&a.space)?;
    let x = &space.complex;
    let dims: Vec<Value> = (0..=x.top_dim())
        .map(|n| {
            let w = x.weights(n);
            json!({
                "dim": n,
                "cells": x.num_cells(n),
                "max_weight": w.iter().max().copied().unwrap_or(0),
                "max_edges": x.max_edges(n),
                "max_vertices": x.max_vertices(n),
                "max_faces": if n > 0 { x.max_faces(n) } else { 0 },
            })
        })
        .collect();
    let mut result = json!({
        "space": space.descriptor,
        "top_dim": x.top_dim(),
        "basepoint": x.basepoint(),
        "orbit_radius": x.orbit_radius(),
        "boundary_squares_to_zero": x.boundary_squares_to_zero(),
        "dims": dims,
    });
    if a.cells {
        let listing: Vec<Value> = (0..=x.top_dim())
            .map(|n| {
                let cells: Vec<Value> = (0..x.num_cells(n))
                    .map(|i| {
                        let bd = if n == 0 {
                            Value::Null
                        } else {
                            chain_json(&boundary(x, &Chain::cell(n, i)))["cells"].clone()
                        };
                        json!({ "id": i, "vertices": x.cell(n, i).vertices, "weight": x.weight(n, i), "boundary": bd })
                    })
                    .collect();
                json!({ "dim": n, "cells": cells })
            })
            .collect();
        result["cells"] = Value::Array(listing);
    }
    Ok(Output::new(space.inputs, result))
}
