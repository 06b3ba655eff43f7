//! Free-group words, finite presentations and the normal-form engines that
//! solve the word problem for them.
//!
//! Letters are signed 1-based generator indices: `+i` is generator `i - 1`,
//! `-i` its inverse. Words are kept freely reduced at all times.

mod engine;
mod parse;
mod presentation;
mod rewriting;

pub use engine::{EngineError, Exactness, NormalFormEngine, Strategy};
pub use parse::{parse_presentation, ParseError, ParseErrorKind};
pub use presentation::{EngineRequest, Presentation, PresentationError, Subgroup, WordLength};
pub use rewriting::{ConfluenceError, RewritingSystem, Rule};

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// A generator or the inverse of a generator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter(i32);

impl Letter {
    pub fn new(raw: i32) -> Option<Self> {
        (raw != 0).then_some(Letter(raw))
    }

    pub fn generator(gen: usize) -> Self {
        Letter(gen as i32 + 1)
    }

    pub fn generator_inverse(gen: usize) -> Self {
        Letter(-(gen as i32 + 1))
    }

    pub fn raw(self) -> i32 {
        self.0
    }

    /// Zero-based generator index.
    pub fn gen(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// `+1` for a generator, `-1` for an inverse.
    pub fn exponent(self) -> i64 {
        if self.0 < 0 {
            -1
        } else {
            1
        }
    }

    /// The lowercase/uppercase symbol for this letter given generator names.
    pub fn symbol(self, names: &[char]) -> char {
        let c = names[self.gen()];
        if self.is_inverse() {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    fn order_key(self) -> (usize, bool) {
        (self.gen(), self.is_inverse())
    }
}

/// Letters order as `a < A < b < B < ...`.
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("letter {0} does not reference a declared generator")]
    UnknownGenerator(i32),
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<Letter>);

/// Free reduction of a raw signed-index letter sequence.
pub fn free_reduce(raw: &[i32], num_generators: usize) -> Result<Word, WordError> {
    let mut letters = Vec::with_capacity(raw.len());
    for &r in raw {
        match Letter::new(r) {
            Some(l) if l.gen() < num_generators => letters.push(l),
            _ => return Err(WordError::UnknownGenerator(r)),
        }
    }
    Ok(Word::reduce(letters))
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(alloc::vec![l])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Free product `self · other`, reduced.
    pub fn concat(&self, other: &Word) -> Word {
        Word::reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&f), Some(&l)) if self.0.len() > 1 => f != l.inverse(),
            _ => true,
        }
    }

    /// Splits `self = u · core · u⁻¹` with `core` cyclically reduced.
    pub fn cyclic_core(&self) -> (Word, Word) {
        let n = self.0.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.0[k] == self.0[n - 1 - k].inverse() {
            k += 1;
        }
        (
            Word(self.0[..k].to_vec()),
            Word(self.0[k..n - k].to_vec()),
        )
    }

    /// Exponent sum of every generator.
    pub fn exponent_sums(&self, num_generators: usize) -> Vec<i64> {
        let mut sums = alloc::vec![0i64; num_generators];
        for l in &self.0 {
            sums[l.gen()] += l.exponent();
        }
        sums
    }

    /// All cyclic rotations, starting with `self`.
    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        let n = self.0.len().max(1);
        (0..n).map(move |k| {
            let mut v = self.0[k.min(self.0.len())..].to_vec();
            v.extend_from_slice(&self.0[..k.min(self.0.len())]);
            Word(v)
        })
    }

    /// Renders the word with lowercase generators and uppercase inverses;
    /// the identity renders as `1`.
    pub fn format(&self, names: &[char]) -> String {
        if self.0.is_empty() {
            return String::from("1");
        }
        self.0.iter().map(|l| l.symbol(names)).collect()
    }
}

/// Shortlex: shorter words first, then lexicographic by letter order.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", l.raw())?;
        }
        Ok(())
    }
}
