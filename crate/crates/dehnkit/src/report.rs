use std::path::Path;

use dehnkit_core::words::{parse_presentation, Presentation, Word};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// A named report file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub contents: Vec<u8>,
}

impl Artifact {
    pub fn json(name: impl Into<String>, value: &Value) -> Self {
        let mut contents = serde_json::to_vec_pretty(value).expect("json values serialise");
        contents.push(b'\n');
        Artifact { name: name.into(), contents }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// An input file and its content hash.
pub fn input_record(path: &Path, bytes: &[u8]) -> Value {
    json!({ "path": path.display().to_string(), "sha256": sha256_hex(bytes) })
}

pub struct LoadedPresentation {
    pub presentation: Presentation,
    pub input: Value,
}

pub fn load_presentation(path: &Path) -> Result<LoadedPresentation, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Parse(format!("{}: not UTF-8", path.display())))?;
    let presentation = parse_presentation(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Ok(LoadedPresentation { presentation, input: input_record(path, &bytes) })
}

pub fn presentation_json(p: &Presentation) -> Value {
    json!({
        "generators": p.generator_names().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "relators": p.relators().iter().map(|r| p.format_word(r)).collect::<Vec<_>>(),
        "subgroups": p.subgroups().iter().map(|s| json!({
            "name": s.name,
            "generators": s.generators.iter().map(|&g| p.generator_names()[g].to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "engine": p.engine().tag(),
        "warnings": p.warnings(),
    })
}

pub fn word(p: &Presentation, w: &Word) -> String {
    p.format_word(w)
}

/// The common report wrapper: tool, command, resolved config, inputs.
pub fn envelope(command: &str, config: Value, inputs: Vec<Value>, result: Value) -> Value {
    json!({
        "tool": "dehnkit",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": config,
        "inputs": inputs,
        "result": result,
    })
}

/// `{"numer": p, "denom": q, "text": "p/q"}`.
pub fn ratio(numer: impl ToString, denom: impl ToString) -> Value {
    let (n, d) = (numer.to_string(), denom.to_string());
    let text = if d == "1" { n.clone() } else { format!("{n}/{d}") };
    json!({ "numer": n, "denom": d, "text": text })
}
