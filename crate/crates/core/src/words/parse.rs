//! Line-oriented presentation text format.
//!
//! ```text
//! # comment
//! generators: a b c
//! relators: abAB bcBC
//! subgroup H: a b
//! engine: free-abelian-product
//! rule: ba -> ab
//! ```
//!
//! Keys may repeat (`relators:` and `subgroup` lines accumulate) except
//! `generators:` and `engine:`, which appear at most once. Generators are
//! single lowercase letters; the uppercase letter denotes the inverse. `1`
//! denotes the empty word. Relators must be freely reduced. Recognised
//! engines are `free`, `free-abelian`, `free-abelian-product` (alias
//! `free-product`) and `rewriting`; without an `engine:` line the engine is
//! inferred from the relators, or taken to be `rewriting` when rules exist.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::presentation::{symbol_to_letter, EngineRequest, Presentation, PresentationError};
use super::rewriting::Rule;
use super::{Subgroup, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownKey(String),
    MissingGenerators,
    DuplicateKey(&'static str),
    DuplicateGenerator(char),
    BadGenerator(String),
    UnknownSymbol(char),
    RelatorNotReduced(String),
    EmptyRelator,
    BadRule(String),
    UnknownEngine(String),
    DuplicateSubgroup(String),
    Invalid(PresentationError),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number, or 0 for whole-file errors.
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl core::fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ParseErrorKind::UnknownKey(k) => write!(f, "unknown key '{k}'"),
            ParseErrorKind::MissingGenerators => f.write_str("no 'generators:' line"),
            ParseErrorKind::DuplicateKey(k) => write!(f, "'{k}' given more than once"),
            ParseErrorKind::DuplicateGenerator(c) => write!(f, "duplicate generator symbol '{c}'"),
            ParseErrorKind::BadGenerator(s) => {
                write!(f, "generator '{s}' is not a single lowercase letter")
            }
            ParseErrorKind::UnknownSymbol(c) => write!(f, "symbol '{c}' is not a declared generator"),
            ParseErrorKind::RelatorNotReduced(s) => write!(f, "relator '{s}' is not freely reduced"),
            ParseErrorKind::EmptyRelator => f.write_str("relator is trivial"),
            ParseErrorKind::BadRule(s) => write!(f, "malformed rule '{s}', expected 'lhs -> rhs'"),
            ParseErrorKind::UnknownEngine(s) => write!(f, "unknown engine '{s}'"),
            ParseErrorKind::DuplicateSubgroup(s) => write!(f, "subgroup '{s}' declared twice"),
            ParseErrorKind::Invalid(e) => write!(f, "{e}"),
        }
    }
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Parses a word without reducing it; returns the raw letters.
fn raw_word(names: &[char], s: &str, line: usize) -> Result<Vec<super::Letter>, ParseError> {
    if s == "1" {
        return Ok(Vec::new());
    }
    s.chars()
        .map(|c| symbol_to_letter(names, c).ok_or_else(|| err(line, ParseErrorKind::UnknownSymbol(c))))
        .collect()
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut names: Option<Vec<char>> = None;
    let mut relators: Vec<(usize, String)> = Vec::new();
    let mut subgroups: Vec<(usize, String, String)> = Vec::new();
    let mut rules: Vec<(usize, String)> = Vec::new();
    let mut engine: Option<(usize, String)> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once(':')
            .ok_or_else(|| err(line, ParseErrorKind::UnknownKey(content.to_string())))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "generators" => {
                if names.is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateKey("generators")));
                }
                let mut v: Vec<char> = Vec::new();
                for tok in value.split_whitespace() {
                    let mut chars = tok.chars();
                    let c = match (chars.next(), chars.next()) {
                        (Some(c), None) if c.is_ascii_lowercase() => c,
                        _ => return Err(err(line, ParseErrorKind::BadGenerator(tok.to_string()))),
                    };
                    if v.contains(&c) {
                        return Err(err(line, ParseErrorKind::DuplicateGenerator(c)));
                    }
                    v.push(c);
                }
                names = Some(v);
            }
            "relators" => relators.extend(value.split_whitespace().map(|t| (line, t.to_string()))),
            "engine" => {
                if engine.is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateKey("engine")));
                }
                engine = Some((line, value.to_string()));
            }
            "rule" => rules.push((line, value.to_string())),
            _ => match key.strip_prefix("subgroup") {
                Some(name) if !name.trim().is_empty() && name.starts_with(char::is_whitespace) => {
                    let name = name.trim().to_string();
                    if subgroups.iter().any(|(_, n, _)| *n == name) {
                        return Err(err(line, ParseErrorKind::DuplicateSubgroup(name)));
                    }
                    subgroups.push((line, name, value.to_string()));
                }
                _ => return Err(err(line, ParseErrorKind::UnknownKey(key.to_string()))),
            },
        }
    }

    let names = names.ok_or_else(|| err(0, ParseErrorKind::MissingGenerators))?;

    let mut rel_words = Vec::with_capacity(relators.len());
    for (line, tok) in &relators {
        let letters = raw_word(&names, tok, *line)?;
        let w = Word::reduce(letters.iter().copied());
        if w.len() != letters.len() {
            return Err(err(*line, ParseErrorKind::RelatorNotReduced(tok.clone())));
        }
        if w.is_empty() {
            return Err(err(*line, ParseErrorKind::EmptyRelator));
        }
        rel_words.push(w);
    }

    let mut subs = Vec::with_capacity(subgroups.len());
    for (line, name, value) in &subgroups {
        let mut gens = Vec::new();
        for tok in value.split_whitespace() {
            let mut chars = tok.chars();
            let c = match (chars.next(), chars.next()) {
                (Some(c), None) => c,
                _ => return Err(err(*line, ParseErrorKind::BadGenerator(tok.to_string()))),
            };
            let g = names
                .iter()
                .position(|&n| n == c)
                .ok_or_else(|| err(*line, ParseErrorKind::UnknownSymbol(c)))?;
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
        gens.sort_unstable();
        subs.push(Subgroup { name: name.clone(), generators: gens });
    }

    let mut parsed_rules = Vec::with_capacity(rules.len());
    for (line, value) in &rules {
        let (l, r) = value
            .split_once("->")
            .ok_or_else(|| err(*line, ParseErrorKind::BadRule(value.clone())))?;
        let (l, r) = (l.trim(), r.trim());
        if l.is_empty() || r.is_empty() || l.contains(char::is_whitespace) || r.contains(char::is_whitespace) {
            return Err(err(*line, ParseErrorKind::BadRule(value.clone())));
        }
        let lhs = Word::reduce(raw_word(&names, l, *line)?);
        let rhs = Word::reduce(raw_word(&names, r, *line)?);
        parsed_rules.push(Rule { lhs, rhs });
    }

    let (engine_line, request) = match &engine {
        None => (0, EngineRequest::Infer),
        Some((line, e)) => (
            *line,
            match e.as_str() {
                "free" => EngineRequest::Free,
                "free-abelian" => EngineRequest::FreeAbelian,
                "free-abelian-product" | "free-product" => EngineRequest::FreeAbelianProduct,
                "rewriting" => EngineRequest::Rewriting,
                other => return Err(err(*line, ParseErrorKind::UnknownEngine(other.to_string()))),
            },
        ),
    };

    Presentation::new(names, rel_words, subs, request, parsed_rules).map_err(|e| {
        let line = match &e {
            PresentationError::RelatorNotReduced(i) | PresentationError::EmptyRelator(i) => {
                relators.get(*i).map_or(0, |r| r.0)
            }
            PresentationError::Rewriting(_) => rules.first().map_or(engine_line, |r| r.0),
            _ => engine_line,
        };
        err(line, ParseErrorKind::Invalid(e))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_z2_with_subgroups() {
        let p = parse_presentation("# the plane\ngenerators: a b\nrelators: abAB\nsubgroup H: a\nsubgroup K: b\n").unwrap();
        assert_eq!(p.num_generators(), 2);
        assert_eq!(p.engine().tag(), "free-abelian");
        assert_eq!(p.subgroups()[1].name, "K");
        assert_eq!(p.subgroups()[1].generators, [1]);
    }

    #[test]
    fn free_group_has_no_relators() {
        let p = parse_presentation("generators: a b\n").unwrap();
        assert_eq!(p.engine().tag(), "free");
    }

    #[test]
    fn duplicate_generator_reports_line() {
        let e = parse_presentation("\ngenerators: a b a\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.kind, ParseErrorKind::DuplicateGenerator('a'));
    }

    #[test]
    fn unreduced_relator_reports_line() {
        let e = parse_presentation("generators: a b\nrelators: abAB\nrelators: aAb\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(matches!(e.kind, ParseErrorKind::RelatorNotReduced(_)));
    }

    #[test]
    fn rewriting_engine_from_rules() {
        let text = "generators: a b\nrelators: abAB\nrule: ba -> ab\nrule: bA -> Ab\nrule: Ba -> aB\nrule: BA -> AB\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.engine().tag(), "rewriting");
        let w = p.parse_word("bab").unwrap();
        assert_eq!(p.format_word(&p.normal_form(&w)), "abb");
    }

    #[test]
    fn non_confluent_rules_rejected() {
        let e = parse_presentation("generators: a b\nrelators: abAB\nrule: ba -> ab\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(matches!(e.kind, ParseErrorKind::Invalid(PresentationError::Rewriting(_))));
    }

    #[test]
    fn unknown_key_and_engine() {
        assert!(matches!(
            parse_presentation("generators: a\nfoo: 1\n").unwrap_err().kind,
            ParseErrorKind::UnknownKey(_)
        ));
        assert_eq!(parse_presentation("generators: a\nengine: magic\n").unwrap_err().line, 2);
    }
}
