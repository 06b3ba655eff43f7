use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::engine::{as_commutator, commutator, EngineError, NormalFormEngine, Strategy};
use super::rewriting::{ConfluenceError, RewritingSystem, Rule};
use super::{Letter, Word};

/// A named subgroup generated by a subset of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub name: String,
    pub generators: Vec<usize>,
}

/// Word length together with whether it is proven minimal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordLength {
    pub value: u64,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("duplicate generator symbol '{0}'")]
    DuplicateGenerator(char),
    #[error("generator symbol '{0}' must be a lowercase ASCII letter")]
    InvalidGenerator(char),
    #[error("relator {0} is empty after reduction")]
    EmptyRelator(usize),
    #[error("relator {0} is not freely reduced")]
    RelatorNotReduced(usize),
    #[error("subgroup {0} references an unknown generator")]
    UnknownSubgroupGenerator(String),
    #[error("relators are not all commutators; supply rewriting rules or an explicit engine")]
    NoEngine,
    #[error("engine '{engine}' does not match the relators: {reason}")]
    EngineMismatch { engine: String, reason: String },
    #[error("rewriting system rejected: {0}")]
    Rewriting(#[from] ConfluenceError),
}

/// Requested word-problem strategy before validation against the relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EngineRequest {
    Infer,
    Free,
    FreeAbelian,
    FreeAbelianProduct,
    Rewriting,
}

/// Finite presentation with a validated normal-form engine.
#[derive(Clone, Debug)]
pub struct Presentation {
    generator_names: Vec<char>,
    relators: Vec<Word>,
    subgroups: Vec<Subgroup>,
    engine: NormalFormEngine,
    warnings: Vec<String>,
}

impl Presentation {
    /// Validates the data, cyclically reduces relators (recording a warning)
    /// and selects or checks the normal-form engine.
    pub fn new(
        generator_names: Vec<char>,
        relators: Vec<Word>,
        subgroups: Vec<Subgroup>,
        request: EngineRequest,
        rules: Vec<Rule>,
    ) -> Result<Self, PresentationError> {
        let mut seen = BTreeSet::new();
        for &c in &generator_names {
            if !c.is_ascii_lowercase() {
                return Err(PresentationError::InvalidGenerator(c));
            }
            if !seen.insert(c) {
                return Err(PresentationError::DuplicateGenerator(c));
            }
        }
        let n = generator_names.len();
        let mut warnings = Vec::new();
        let mut reduced = Vec::with_capacity(relators.len());
        for (i, r) in relators.into_iter().enumerate() {
            if Word::reduce(r.letters().iter().copied()) != r {
                return Err(PresentationError::RelatorNotReduced(i));
            }
            let (conj, core) = r.cyclic_core();
            if core.is_empty() {
                return Err(PresentationError::EmptyRelator(i));
            }
            if !conj.is_empty() {
                warnings.push(format!(
                    "relator {} ({}) cyclically reduced to {}",
                    i + 1,
                    r.format(&generator_names),
                    core.format(&generator_names)
                ));
            }
            reduced.push(core);
        }
        for s in &subgroups {
            if s.generators.iter().any(|&g| g >= n) {
                return Err(PresentationError::UnknownSubgroupGenerator(s.name.clone()));
            }
        }
        let engine = select_engine(n, &reduced, request, rules)?;
        Ok(Presentation { generator_names, relators: reduced, subgroups, engine, warnings })
    }

    /// Free group on `n` generators named `a, b, c, ...`.
    pub fn free_group(n: usize) -> Self {
        Self::new(default_names(n), Vec::new(), Vec::new(), EngineRequest::Free, Vec::new())
            .expect("free presentation is valid")
    }

    /// ℤⁿ with the standard commutator relators.
    pub fn free_abelian(n: usize) -> Self {
        let mut relators = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                relators.push(commutator(x, y));
            }
        }
        Self::new(default_names(n), relators, Vec::new(), EngineRequest::FreeAbelian, Vec::new())
            .expect("free abelian presentation is valid")
    }

    /// Free product of free abelian groups, one per block of generators.
    pub fn free_product_of_abelian(blocks: &[usize]) -> Self {
        let n: usize = blocks.iter().sum();
        let mut relators = Vec::new();
        let mut start = 0;
        for &size in blocks {
            for x in start..start + size {
                for y in x + 1..start + size {
                    relators.push(commutator(x, y));
                }
            }
            start += size;
        }
        Self::new(default_names(n), relators, Vec::new(), EngineRequest::FreeAbelianProduct, Vec::new())
            .expect("free product presentation is valid")
    }

    /// Adds subgroups generated by the given generator subsets.
    pub fn with_subgroups(mut self, subgroups: Vec<Subgroup>) -> Result<Self, PresentationError> {
        let n = self.num_generators();
        for s in &subgroups {
            if s.generators.iter().any(|&g| g >= n) {
                return Err(PresentationError::UnknownSubgroupGenerator(s.name.clone()));
            }
        }
        self.subgroups = subgroups;
        Ok(self)
    }

    pub fn num_generators(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[char] {
        &self.generator_names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup_index(&self, name: &str) -> Option<usize> {
        self.subgroups.iter().position(|s| s.name == name)
    }

    pub fn engine(&self) -> &NormalFormEngine {
        &self.engine
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn normal_form(&self, w: &Word) -> Word {
        self.engine.normal_form(w)
    }

    /// Normal form of `a · b`.
    pub fn multiply(&self, a: &Word, b: &Word) -> Word {
        self.engine.normal_form(&a.concat(b))
    }

    /// Normal form of `a · x` for a single letter.
    pub fn step(&self, a: &Word, x: Letter) -> Word {
        self.multiply(a, &Word::letter(x))
    }

    pub fn word_length(&self, w: &Word) -> WordLength {
        // Built-in normal forms are geodesic. A rewriting normal form is the
        // shortlex-least word of its class because the rules are confluent and
        // shortlex-decreasing, so it is also of minimal length.
        WordLength { value: self.normal_form(w).len() as u64, exact: true }
    }

    /// Word-metric distance `|a⁻¹ b|`.
    pub fn distance(&self, a: &Word, b: &Word) -> u64 {
        self.word_length(&a.inverse().concat(b)).value
    }

    pub fn coset_representative(&self, w: &Word, subgroup: usize) -> Result<Word, EngineError> {
        self.engine
            .coset_representative(&self.normal_form(w), &self.subgroups[subgroup].generators)
    }

    pub fn is_member(&self, w: &Word, subgroup: usize) -> Result<bool, EngineError> {
        Ok(self.coset_representative(w, subgroup)?.is_identity())
    }

    /// Renders a word with the presentation's symbols.
    pub fn format_word(&self, w: &Word) -> String {
        w.format(&self.generator_names)
    }

    /// Parses a word written in generator symbols (uppercase = inverse);
    /// `1` or the empty string denote the identity.
    pub fn parse_word(&self, s: &str) -> Result<Word, char> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::identity());
        }
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            letters.push(symbol_to_letter(&self.generator_names, c).ok_or(c)?);
        }
        Ok(Word::reduce(letters))
    }
}

pub(crate) fn symbol_to_letter(names: &[char], c: char) -> Option<Letter> {
    let lower = c.to_ascii_lowercase();
    let g = names.iter().position(|&n| n == lower)?;
    Some(if c.is_ascii_uppercase() { Letter::generator_inverse(g) } else { Letter::generator(g) })
}

fn default_names(n: usize) -> Vec<char> {
    (0..n).map(|i| (b'a' + i as u8) as char).collect()
}

/// Connected components of the commutation graph, if every relator is a
/// commutator of two generators and every component is a clique.
fn commutator_blocks(n: usize, relators: &[Word]) -> Option<Vec<Vec<usize>>> {
    let mut pairs = BTreeSet::new();
    for r in relators {
        pairs.insert(as_commutator(r)?);
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(x, y) in &pairs {
        let (rx, ry) = (root(&mut parent, x), root(&mut parent, y));
        parent[rx.max(ry)] = rx.min(ry);
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of_root = alloc::vec![usize::MAX; n];
    for g in 0..n {
        let r = root(&mut parent, g);
        if block_of_root[r] == usize::MAX {
            block_of_root[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[block_of_root[r]].push(g);
    }
    for b in &blocks {
        for (i, &x) in b.iter().enumerate() {
            for &y in &b[i + 1..] {
                if !pairs.contains(&(x, y)) {
                    return None;
                }
            }
        }
    }
    Some(blocks)
}

fn mismatch(engine: &str, reason: String) -> PresentationError {
    PresentationError::EngineMismatch { engine: engine.into(), reason }
}

fn select_engine(
    n: usize,
    relators: &[Word],
    request: EngineRequest,
    rules: Vec<Rule>,
) -> Result<NormalFormEngine, PresentationError> {
    let blocks = commutator_blocks(n, relators);
    let engine = match request {
        EngineRequest::Rewriting => {
            NormalFormEngine::new(Strategy::Rewriting(RewritingSystem::new(rules)?), n)
        }
        EngineRequest::Infer => match blocks {
            _ if !rules.is_empty() => {
                NormalFormEngine::new(Strategy::Rewriting(RewritingSystem::new(rules)?), n)
            }
            Some(b) if relators.is_empty() => {
                let _ = b;
                NormalFormEngine::new(Strategy::Free, n)
            }
            Some(b) if b.len() == 1 => NormalFormEngine::new(Strategy::FreeAbelian, n),
            Some(b) => NormalFormEngine::new(Strategy::FreeProduct(b), n),
            None => return Err(PresentationError::NoEngine),
        },
        EngineRequest::Free => {
            if !relators.is_empty() {
                return Err(mismatch("free", "free groups have no relators".into()));
            }
            NormalFormEngine::new(Strategy::Free, n)
        }
        EngineRequest::FreeAbelian => match blocks {
            Some(b) if b.len() <= 1 => NormalFormEngine::new(Strategy::FreeAbelian, n),
            _ => {
                return Err(mismatch(
                    "free-abelian",
                    "relators must be exactly the commutators of all generator pairs".into(),
                ))
            }
        },
        EngineRequest::FreeAbelianProduct => match blocks {
            Some(b) => NormalFormEngine::new(Strategy::FreeProduct(b), n),
            None => {
                return Err(mismatch(
                    "free-abelian-product",
                    "relators must be commutators whose commutation graph is a union of cliques".into(),
                ))
            }
        },
    };
    for (i, r) in relators.iter().enumerate() {
        if !engine.normal_form(r).is_identity() {
            return Err(mismatch(&engine.tag(), format!("relator {} does not reduce to the identity", i + 1)));
        }
    }
    if let Strategy::Rewriting(sys) = engine.strategy() {
        for (i, rule) in sys.rules().iter().enumerate() {
            if rule.lhs.letters().iter().chain(rule.rhs.letters()).any(|l| l.gen() >= n) {
                return Err(mismatch("rewriting", format!("rule {} uses an unknown generator", i + 1)));
            }
        }
    }
    Ok(engine)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_normal_forms_and_lengths() {
        let p = Presentation::free_abelian(2);
        let ba = p.parse_word("ba").unwrap();
        assert_eq!(p.format_word(&p.normal_form(&ba)), "ab");
        assert!(p.normal_form(&p.parse_word("abAB").unwrap()).is_identity());
        assert_eq!(p.word_length(&p.parse_word("aaB").unwrap()).value, 3);
        assert_eq!(p.word_length(&Word::identity()).value, 0);
    }

    #[test]
    fn free_group_normal_form_is_free_reduction() {
        let p = Presentation::free_group(2);
        assert_eq!(p.format_word(&p.normal_form(&p.parse_word("abB").unwrap())), "a");
        assert_eq!(p.word_length(&p.parse_word("abab").unwrap()).value, 4);
    }

    #[test]
    fn inference_picks_block_structure() {
        let names = default_names(3);
        let p = Presentation::new(
            names,
            alloc::vec![commutator(0, 1)],
            Vec::new(),
            EngineRequest::Infer,
            Vec::new(),
        )
        .unwrap();
        assert_eq!(p.engine().tag(), "free-abelian-product");
        assert_eq!(p.engine().blocks(), &[alloc::vec![0, 1], alloc::vec![2]]);
    }

    #[test]
    fn explicit_engine_must_match_relators() {
        let err = Presentation::new(
            default_names(3),
            alloc::vec![commutator(0, 1)],
            Vec::new(),
            EngineRequest::FreeAbelian,
            Vec::new(),
        )
        .unwrap_err();
        assert!(matches!(err, PresentationError::EngineMismatch { .. }));
    }

    #[test]
    fn cyclic_reduction_warns() {
        let names = default_names(2);
        let r = Word::reduce([
            Letter::generator(1),
            Letter::generator(0),
            Letter::generator(1),
            Letter::generator_inverse(0),
            Letter::generator_inverse(1),
            Letter::generator_inverse(1),
        ]);
        let p = Presentation::new(names, alloc::vec![r], Vec::new(), EngineRequest::Infer, Vec::new()).unwrap();
        assert_eq!(p.warnings().len(), 1);
        assert_eq!(p.relators()[0].len(), 4);
        assert_eq!(p.engine().tag(), "free-abelian");
    }
}
