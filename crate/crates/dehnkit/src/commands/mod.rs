//! Subcommand implementations. Each returns its result object; `run` wraps
//! it in the common envelope and names the files.

mod bar;
mod comb;
mod filling;
mod geometry;

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use dehnkit_core::cayley::{build_ball, GroupBall};
use dehnkit_core::complex::{cubical_lattice, presentation_complex, CellComplex, Chain};
use dehnkit_core::filling::FillingResult;
use dehnkit_core::words::Presentation;
use serde_json::{json, Value};

use crate::cli::{Cli, Command, GlobalArgs, SpaceArgs};
use crate::error::CliError;
use crate::report::{envelope, load_presentation, presentation_json, ratio, Artifact};

pub struct Context<'a> {
    pub global: &'a GlobalArgs,
    deadline: Option<Instant>,
}

impl<'a> Context<'a> {
    fn new(global: &'a GlobalArgs) -> Self {
        let deadline = global.max_seconds.map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0)));
        Context { global, deadline }
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    pub fn check_deadline(&self) -> Result<(), CliError> {
        if self.expired() {
            Err(CliError::Cap("wall-clock budget exhausted".into()))
        } else {
            Ok(())
        }
    }
}

pub struct Output {
    pub inputs: Vec<Value>,
    pub result: Value,
    pub extra: Vec<Artifact>,
    /// A check failed; reports are still written and the run exits nonzero.
    pub failure: Option<String>,
}

impl Output {
    pub fn new(inputs: Vec<Value>, result: Value) -> Self {
        Output { inputs, result, extra: Vec::new(), failure: None }
    }
}

pub struct RunOutcome {
    pub artifacts: Vec<Artifact>,
    pub failure: Option<String>,
}

/// Runs one subcommand inside a worker pool of the requested size.
pub fn run(cli: &Cli) -> Result<RunOutcome, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Other(e.to_string()))?;
    pool.install(|| run_in_pool(cli))
}

fn run_in_pool(cli: &Cli) -> Result<RunOutcome, CliError> {
    let ctx = Context::new(&cli.global);
    let out = match &cli.command {
        Command::Ball(a) => geometry::ball(&ctx, a),
        Command::Complex(a) => geometry::complex(&ctx, a),
        Command::Dehn(a) => filling::dehn(&ctx, a),
        Command::Filling(a) => filling::filling(&ctx, a),
        Command::Compare(a) => filling::compare(&ctx, a),
        Command::Coned(a) => comb::coned(&ctx, a),
        Command::Comb(a) => comb::comb(&ctx, a),
        Command::Bar(a) => bar::bar(&ctx, a),
    }?;
    let name = cli.command.name();
    let config = json!({
        "global": serde_json::to_value(&cli.global).expect("config serialises"),
        "command": serde_json::to_value(&cli.command).expect("config serialises"),
    });
    let mut artifacts = vec![Artifact::json(format!("{name}.json"), &envelope(name, config, out.inputs, out.result))];
    artifacts.extend(out.extra);
    Ok(RunOutcome { artifacts, failure: out.failure })
}

pub fn write_artifacts(dir: &Path, artifacts: &[Artifact]) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut paths = Vec::new();
    for a in artifacts {
        let path = dir.join(&a.name);
        std::fs::write(&path, &a.contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        paths.push(path);
    }
    Ok(paths)
}

/// A presentation complex over a ball, or a cubical lattice.
pub struct Space {
    pub complex: CellComplex,
    pub ball: Option<GroupBall>,
    pub inputs: Vec<Value>,
    pub descriptor: Value,
    /// Rank of the cubical lattice.
    pub rank: Option<usize>,
}

impl Space {
    pub fn presentation(&self) -> Option<&Presentation> {
        self.ball.as_ref().map(|b| b.presentation())
    }
}

pub fn build_space(a: &SpaceArgs) -> Result<Space, CliError> {
    match (&a.pres, a.cubical) {
        (Some(path), None) => {
            let lp = load_presentation(path)?;
            let ball = build_ball(&lp.presentation, a.radius)?;
            let complex = presentation_complex(&ball, &lp.presentation);
            let descriptor = json!({
                "kind": "presentation",
                "presentation": presentation_json(&lp.presentation),
                "radius": a.radius,
                "ball_size": ball.len(),
            });
            Ok(Space { complex, ball: Some(ball), inputs: vec![lp.input], descriptor, rank: None })
        }
        (None, Some(k)) => {
            let maxdim = a.maxdim.unwrap_or(k);
            let complex = cubical_lattice(k, a.radius, maxdim)?;
            let descriptor = json!({ "kind": "cubical", "rank": k, "maxdim": maxdim, "radius": a.radius });
            Ok(Space { complex, ball: None, inputs: Vec::new(), descriptor, rank: Some(k) })
        }
        _ => Err(CliError::Parse("exactly one of --pres or --cubical is required".into())),
    }
}

pub fn chain_json(c: &Chain) -> Value {
    json!({ "dim": c.dim(), "cells": c.terms().map(|(i, v)| json!({ "id": i, "coeff": v })).collect::<Vec<_>>() })
}

pub fn filling_json(r: &FillingResult) -> Value {
    json!({
        "count": r.count,
        "weighted_count": r.weighted_count,
        "value": r.value(),
        "status": r.status.tag(),
        "solver": r.solver.tag(),
        "objective": match r.objective {
            dehnkit_core::filling::Objective::Count => "count",
            dehnkit_core::filling::Objective::Weighted => "weighted",
        },
        "lower_bound": ratio(r.lower_bound.numer(), r.lower_bound.denom()),
        "filling": chain_json(&r.filling),
    })
}
