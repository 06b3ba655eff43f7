use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::rewriting::RewritingSystem;
use super::{Letter, Word};

/// Which word-problem algorithm a presentation uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Free group on all generators.
    Free,
    /// Free abelian group on all generators.
    FreeAbelian,
    /// Free product of free abelian blocks (a singleton block is a copy of ℤ).
    FreeProduct(Vec<Vec<usize>>),
    /// User-supplied ordered rewriting rules, checked for confluence at load.
    Rewriting(RewritingSystem),
}

/// Whether the normal form is a proven solution of the word problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    /// Locally confluent rules that rewrite every relator to the identity;
    /// whether they present exactly the group is the user's responsibility.
    BestEffort,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("subgroup membership is undecidable under the rewriting engine")]
    MembershipUndecidable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormEngine {
    strategy: Strategy,
    /// Block index of every generator; unused by the rewriting strategy.
    block_of: Vec<usize>,
    /// Position of every generator inside its block.
    slot_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

struct Syllable {
    block: usize,
    exps: Vec<i64>,
}

impl Syllable {
    fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

impl NormalFormEngine {
    pub fn new(strategy: Strategy, num_generators: usize) -> Self {
        let blocks: Vec<Vec<usize>> = match &strategy {
            Strategy::Free | Strategy::Rewriting(_) => (0..num_generators).map(|g| vec![g]).collect(),
            Strategy::FreeAbelian => vec![(0..num_generators).collect()],
            Strategy::FreeProduct(blocks) => {
                let mut blocks = blocks.clone();
                for b in &mut blocks {
                    b.sort_unstable();
                }
                blocks.sort();
                blocks
            }
        };
        let mut block_of = vec![0; num_generators];
        let mut slot_of = vec![0; num_generators];
        for (bi, block) in blocks.iter().enumerate() {
            for (slot, &g) in block.iter().enumerate() {
                block_of[g] = bi;
                slot_of[g] = slot;
            }
        }
        let strategy = match strategy {
            Strategy::FreeProduct(_) => Strategy::FreeProduct(blocks.clone()),
            s => s,
        };
        NormalFormEngine { strategy, block_of, slot_of, blocks }
    }

    pub fn strategy(&self) -> &Strategy {
        &self.strategy
    }

    pub fn exactness(&self) -> Exactness {
        match self.strategy {
            Strategy::Rewriting(_) => Exactness::BestEffort,
            _ => Exactness::Exact,
        }
    }

    /// Normal forms of built-in strategies are geodesic words.
    pub fn is_geodesic(&self) -> bool {
        !matches!(self.strategy, Strategy::Rewriting(_))
    }

    pub fn tag(&self) -> String {
        match &self.strategy {
            Strategy::Free => "free".into(),
            Strategy::FreeAbelian => "free-abelian".into(),
            Strategy::FreeProduct(_) => "free-abelian-product".into(),
            Strategy::Rewriting(_) => "rewriting".into(),
        }
    }

    /// Free abelian blocks of the built-in strategies.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn normal_form(&self, w: &Word) -> Word {
        match &self.strategy {
            Strategy::Rewriting(rws) => rws.normal_form(w.letters()),
            _ => self.emit(&self.syllables(w.letters())),
        }
    }

    fn syllables(&self, letters: &[Letter]) -> Vec<Syllable> {
        let mut stack: Vec<Syllable> = Vec::new();
        for &l in letters {
            let g = l.gen();
            let block = self.block_of[g];
            match stack.last_mut() {
                Some(top) if top.block == block => {
                    top.exps[self.slot_of[g]] += l.exponent();
                    if top.is_trivial() {
                        stack.pop();
                    }
                }
                _ => {
                    let mut exps = vec![0; self.blocks[block].len()];
                    exps[self.slot_of[g]] = l.exponent();
                    stack.push(Syllable { block, exps });
                }
            }
        }
        stack
    }

    fn emit(&self, syllables: &[Syllable]) -> Word {
        let mut out = Vec::new();
        for s in syllables {
            for (slot, &e) in s.exps.iter().enumerate() {
                let g = self.blocks[s.block][slot];
                let l = if e > 0 { Letter::generator(g) } else { Letter::generator_inverse(g) };
                out.extend(core::iter::repeat(l).take(e.unsigned_abs() as usize));
            }
        }
        Word(out)
    }

    /// Shortest representative of the coset `w⟨S⟩` for a generator subset `S`.
    /// Two elements lie in the same coset iff their representatives agree.
    pub fn coset_representative(&self, w: &Word, subset: &[usize]) -> Result<Word, EngineError> {
        if matches!(self.strategy, Strategy::Rewriting(_)) {
            return Err(EngineError::MembershipUndecidable);
        }
        let in_subset = |g: usize| subset.contains(&g);
        let mut syl = self.syllables(w.letters());
        while let Some(top) = syl.last() {
            let block = &self.blocks[top.block];
            let inside = top
                .exps
                .iter()
                .enumerate()
                .all(|(slot, &e)| e == 0 || in_subset(block[slot]));
            if inside {
                syl.pop();
            } else {
                break;
            }
        }
        if let Some(top) = syl.last_mut() {
            let block = &self.blocks[top.block];
            for (slot, e) in top.exps.iter_mut().enumerate() {
                if in_subset(block[slot]) {
                    *e = 0;
                }
            }
        }
        Ok(self.emit(&syl))
    }

    /// The defining relations of a built-in strategy: the commutators of all
    /// pairs of generators that share a block.
    pub fn defining_commutators(&self) -> Vec<(usize, usize)> {
        if matches!(self.strategy, Strategy::Rewriting(_)) {
            return Vec::new();
        }
        let mut pairs = Vec::new();
        for block in &self.blocks {
            for (i, &x) in block.iter().enumerate() {
                for &y in &block[i + 1..] {
                    pairs.push((x, y));
                }
            }
        }
        pairs
    }
}

/// `x y x⁻¹ y⁻¹` as a word.
pub(crate) fn commutator(x: usize, y: usize) -> Word {
    Word(vec![
        Letter::generator(x),
        Letter::generator(y),
        Letter::generator_inverse(x),
        Letter::generator_inverse(y),
    ])
}

/// If `r` is a cyclic conjugate of a commutator of two distinct generators
/// (or of its inverse), the unordered pair.
pub(crate) fn as_commutator(r: &Word) -> Option<(usize, usize)> {
    if r.len() != 4 {
        return None;
    }
    for rot in r.rotations() {
        let l = rot.letters();
        let (x, y) = (l[0], l[1]);
        if x.gen() != y.gen() && l[2] == x.inverse() && l[3] == y.inverse() {
            let (a, b) = (x.gen(), y.gen());
            return Some((a.min(b), a.max(b)));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::free_reduce;

    fn w(raw: &[i32]) -> Word {
        free_reduce(raw, 3).unwrap()
    }

    #[test]
    fn free_abelian_sorts_letters() {
        let e = NormalFormEngine::new(Strategy::FreeAbelian, 2);
        assert_eq!(e.normal_form(&w(&[2, 1])), w(&[1, 2]));
        assert_eq!(e.normal_form(&w(&[1, 2, -1, -2])), Word::identity());
        assert_eq!(e.normal_form(&w(&[-2, 1, 1])), w(&[1, 1, -2]));
    }

    #[test]
    fn free_product_keeps_syllables_apart() {
        // ℤ² * ℤ on a, b | c
        let e = NormalFormEngine::new(Strategy::FreeProduct(vec![vec![0, 1], vec![2]]), 3);
        assert_eq!(e.normal_form(&w(&[2, 3, 1])), w(&[2, 3, 1]));
        assert_eq!(e.normal_form(&w(&[2, 1, 3, -3, -2])), w(&[1]));
    }

    #[test]
    fn coset_representatives() {
        let z2 = NormalFormEngine::new(Strategy::FreeAbelian, 2);
        // a² b lies in b⟨a⟩
        assert_eq!(z2.coset_representative(&w(&[1, 1, 2]), &[0]).unwrap(), w(&[2]));
        let f2 = NormalFormEngine::new(Strategy::Free, 2);
        assert_eq!(f2.coset_representative(&w(&[2, 1, 1]), &[0]).unwrap(), w(&[2]));
        assert_eq!(f2.coset_representative(&w(&[1, 2, 1]), &[0]).unwrap(), w(&[1, 2]));
        assert_eq!(f2.coset_representative(&w(&[1, 1]), &[0]).unwrap(), Word::identity());
    }

    #[test]
    fn commutator_detection() {
        assert_eq!(as_commutator(&w(&[1, 2, -1, -2])), Some((0, 1)));
        assert_eq!(as_commutator(&w(&[2, -1, -2, 1])), Some((0, 1)));
        assert_eq!(as_commutator(&w(&[2, 1, -2, -1])), Some((0, 1)));
        assert_eq!(as_commutator(&w(&[1, 1, -2, -2])), None);
    }
}
