//! Integer chains in the bar complex of a group and the cone operator.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;

use crate::words::Word;

/// An n-chain: a finite sum of (n+1)-tuples of group elements (normal-form
/// words) with nonzero integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarChain {
    degree: usize,
    terms: BTreeMap<Vec<Word>, i64>,
}

impl BarChain {
    pub fn zero(degree: usize) -> Self {
        BarChain { degree, terms: BTreeMap::new() }
    }

    pub fn cell(tuple: Vec<Word>) -> Self {
        assert!(!tuple.is_empty(), "a bar cell has at least one entry");
        let mut c = BarChain::zero(tuple.len() - 1);
        c.add_term(tuple, 1);
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Word>, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, tuple: Vec<Word>, coeff: i64) {
        assert_eq!(tuple.len(), self.degree + 1, "tuple length must be degree + 1");
        if coeff == 0 {
            return;
        }
        let sum = self.terms.get(&tuple).copied().unwrap_or(0).checked_add(coeff).expect("bar coefficient overflow");
        if sum == 0 {
            self.terms.remove(&tuple);
        } else {
            self.terms.insert(tuple, sum);
        }
    }

    pub fn add(&self, other: &BarChain) -> BarChain {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (t, &c) in &other.terms {
            out.add_term(t.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> BarChain {
        BarChain { degree: self.degree, terms: self.terms.iter().map(|(t, &c)| (t.clone(), -c)).collect() }
    }
}

/// Σᵢ (−1)ⁱ (delete entry i). Degree must be at least 1.
pub fn bar_boundary(c: &BarChain) -> BarChain {
    assert!(c.degree >= 1, "boundary needs degree at least 1");
    let mut out = BarChain::zero(c.degree - 1);
    for (t, &coeff) in &c.terms {
        for i in 0..t.len() {
            let mut face = t.clone();
            face.remove(i);
            out.add_term(face, if i % 2 == 0 { coeff } else { -coeff });
        }
    }
    out
}

/// [e, c]: prepend the identity to every tuple.
pub fn cone(c: &BarChain) -> BarChain {
    let mut out = BarChain::zero(c.degree + 1);
    for (t, &coeff) in &c.terms {
        let mut tuple = Vec::with_capacity(t.len() + 1);
        tuple.push(Word::identity());
        tuple.extend(t.iter().cloned());
        out.add_term(tuple, coeff);
    }
    out
}

/// Σ |coeff|·(1 + Σᵢ ℓ(gᵢ))^k.
pub fn bar_norm(c: &BarChain, k: u32, length: &dyn Fn(&Word) -> u64) -> BigUint {
    let mut total = BigUint::zero();
    for (t, &coeff) in &c.terms {
        let base = BigUint::one() + t.iter().map(|w| BigUint::from(length(w))).sum::<BigUint>();
        total += BigUint::from(coeff.unsigned_abs()) * base.pow(k);
    }
    total
}

/// A chain of `terms` random cells over `elements` with coefficients in
/// `−max_coeff..=max_coeff`; may be zero after cancellation.
pub fn random_chain<R: Rng + ?Sized>(
    rng: &mut R,
    elements: &[Word],
    degree: usize,
    terms: usize,
    max_coeff: i64,
) -> BarChain {
    assert!(!elements.is_empty() && max_coeff >= 1);
    let mut c = BarChain::zero(degree);
    for _ in 0..terms {
        let tuple: Vec<Word> = (0..=degree).map(|_| elements[rng.gen_range(0..elements.len())].clone()).collect();
        let mut coeff = rng.gen_range(1..=max_coeff);
        if rng.gen_bool(0.5) {
            coeff = -coeff;
        }
        c.add_term(tuple, coeff);
    }
    c
}

/// A nonzero random cycle of the given degree, drawn as the boundary of a
/// random chain one degree higher.
pub fn random_cycle<R: Rng + ?Sized>(
    rng: &mut R,
    elements: &[Word],
    degree: usize,
    terms: usize,
    max_coeff: i64,
) -> BarChain {
    loop {
        let b = bar_boundary(&random_chain(rng, elements, degree + 1, terms, max_coeff));
        if !b.is_zero() {
            return b;
        }
    }
}

/// A random chain that is not a cycle.
pub fn random_non_cycle<R: Rng + ?Sized>(
    rng: &mut R,
    elements: &[Word],
    degree: usize,
    terms: usize,
    max_coeff: i64,
) -> BarChain {
    assert!(degree >= 1);
    loop {
        let c = random_chain(rng, elements, degree, terms, max_coeff);
        if !bar_boundary(&c).is_zero() {
            return c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Presentation;

    #[test]
    fn small_identities() {
        let p = Presentation::free_abelian(2);
        let w = |s: &str| p.parse_word(s).unwrap();
        let xy = BarChain::cell(alloc::vec![w("a"), w("b")]);
        let mut expect = BarChain::zero(0);
        expect.add_term(alloc::vec![w("b")], 1);
        expect.add_term(alloc::vec![w("a")], -1);
        assert_eq!(bar_boundary(&xy), expect);
        let sym = xy.add(&BarChain::cell(alloc::vec![w("b"), w("a")]));
        assert!(bar_boundary(&sym).is_zero());
        assert_eq!(bar_boundary(&cone(&sym)), sym);
        assert!(cone(&BarChain::zero(1)).is_zero());
        let len = |x: &Word| p.word_length(x).value;
        assert_eq!(bar_norm(&xy, 0, &len), BigUint::from(1u32));
        let c = BarChain::cell(alloc::vec![w("a"), w("ab")]);
        assert_eq!(bar_norm(&c, 1, &len), BigUint::from(4u32));
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = Presentation::free_group(1);
        let t = alloc::vec![p.parse_word("a").unwrap()];
        let mut c = BarChain::zero(0);
        c.add_term(t.clone(), 2);
        c.add_term(t, -2);
        assert!(c.is_zero());
    }
}
