use dehnkit_core::barchain::{bar_boundary, bar_norm, cone, random_cycle, random_non_cycle, BarChain};
use dehnkit_core::cayley::build_ball;
use dehnkit_core::words::{Presentation, Word};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use super::{Context, Output};
use crate::cli::BarArgs;
use crate::error::CliError;
use crate::report::{input_record, load_presentation, presentation_json};

const NORM_DEGREES: u32 = 3;
const MAX_COEFF: i64 = 3;

#[derive(Deserialize)]
struct ChainFile {
    degree: usize,
    terms: Vec<TermFile>,
}

#[derive(Deserialize)]
struct TermFile {
    tuple: Vec<String>,
    coeff: i64,
}

pub fn chain_to_json(p: &Presentation, c: &BarChain) -> Value {
    json!({
        "degree": c.degree(),
        "terms": c.terms().iter().map(|(t, &coeff)| json!({
            "tuple": t.iter().map(|w| p.format_word(w)).collect::<Vec<_>>(),
            "coeff": coeff,
        })).collect::<Vec<_>>(),
    })
}

fn parse_chain(p: &Presentation, text: &str) -> Result<BarChain, CliError> {
    let f: ChainFile = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("chain: {e}")))?;
    let mut c = BarChain::zero(f.degree);
    for t in f.terms {
        if t.tuple.len() != f.degree + 1 {
            return Err(CliError::Parse(format!("chain: tuple of length {} in degree {}", t.tuple.len(), f.degree)));
        }
        let tuple = t
            .tuple
            .iter()
            .map(|s| p.parse_word(s).map(|w| p.normal_form(&w)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|ch| CliError::Parse(format!("chain: unknown letter '{ch}'")))?;
        c.add_term(tuple, t.coeff);
    }
    Ok(c)
}

fn norms(c: &BarChain, len: &dyn Fn(&Word) -> u64) -> Vec<String> {
    (0..=NORM_DEGREES).map(|k| bar_norm(c, k, len).to_string()).collect()
}

/// ∂cone(c) + cone(∂c) for degree ≥ 1, ∂cone(c) in degree 0.
fn homotopy(c: &BarChain) -> BarChain {
    let bc = bar_boundary(&cone(c));
    if c.degree() == 0 {
        bc
    } else {
        bc.add(&cone(&bar_boundary(c)))
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failed: u64,
}

impl Tally {
    fn check(&mut self, ok: bool) {
        self.checked += 1;
        self.failed += u64::from(!ok);
    }

    fn json(&self) -> Value {
        json!({ "checked": self.checked, "failed": self.failed })
    }
}

pub fn bar(ctx: &Context, a: &BarArgs) -> Result<Output, CliError> {
    if !a.selftest && a.chain.is_none() {
        return Err(CliError::Parse("bar needs --selftest or --chain".into()));
    }
    let (p, inputs) = match &a.pres {
        Some(path) => {
            let lp = load_presentation(path)?;
            (lp.presentation, vec![lp.input])
        }
        None => (Presentation::free_abelian(2), Vec::new()),
    };
    let len = |w: &Word| p.word_length(w).value;
    let mut result = json!({ "presentation": presentation_json(&p) });
    let mut inputs = inputs;
    let mut failure = None;

    if a.selftest {
        if a.max_degree == 0 || a.terms == 0 {
            return Err(CliError::Parse("--max-degree and --terms must be positive".into()));
        }
        let elements = build_ball(&p, a.radius)?.vertices().to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.global.seed);
        let (mut dd, mut fill, mut norm, mut htpy, mut mono) =
            (Tally::default(), Tally::default(), Tally::default(), Tally::default(), Tally::default());
        for i in 0..a.count {
            if i % 64 == 0 {
                ctx.check_deadline()?;
            }
            let degree = 1 + i % a.max_degree;
            let b = random_cycle(&mut rng, &elements, degree, a.terms, MAX_COEFF);
            fill.check(bar_boundary(&cone(&b)) == b);
            norm.check(norms(&cone(&b), &len) == norms(&b, &len));
            let c = random_non_cycle(&mut rng, &elements, degree, a.terms, MAX_COEFF);
            htpy.check(homotopy(&c) == c);
            for x in [&b, &c] {
                if x.degree() >= 2 {
                    dd.check(bar_boundary(&bar_boundary(x)).is_zero());
                }
            }
            if c.terms().keys().all(|t| t.iter().map(&len).sum::<u64>() > 0) {
                let ns: Vec<_> = (0..=NORM_DEGREES).map(|k| bar_norm(&c, k, &len)).collect();
                mono.check(ns.windows(2).all(|w| w[0] <= w[1]));
            }
        }
        let failed = dd.failed + fill.failed + norm.failed + htpy.failed + mono.failed;
        if failed > 0 {
            failure = Some(format!("{failed} bar-complex identities failed"));
        }
        result["selftest"] = json!({
            "seed": ctx.global.seed,
            "radius": a.radius,
            "count": a.count,
            "max_degree": a.max_degree,
            "terms": a.terms,
            "boundary_squared": dd.json(),
            "cone_fills_cycles": fill.json(),
            "cone_preserves_norms": norm.json(),
            "contracting_homotopy": htpy.json(),
            "norm_monotone": mono.json(),
            "passed": failed == 0,
        });
    }

    if let Some(path) = &a.chain {
        let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Parse("chain: not UTF-8".into()))?;
        let c = parse_chain(&p, &text)?;
        inputs.push(input_record(path, &bytes));
        let bd = (c.degree() >= 1).then(|| bar_boundary(&c));
        let co = cone(&c);
        result["chain"] = json!({
            "input": chain_to_json(&p, &c),
            "boundary": bd.as_ref().map(|b| chain_to_json(&p, b)),
            "is_cycle": bd.as_ref().is_none_or(|b| b.is_zero()),
            "cone": chain_to_json(&p, &co),
            "cone_boundary": chain_to_json(&p, &bar_boundary(&co)),
            "homotopy_holds": homotopy(&c) == c,
            "norms": norms(&c, &len),
            "cone_norms": norms(&co, &len),
        });
    }

    let mut out = Output::new(inputs, result);
    out.failure = failure;
    Ok(out)
}
