use alloc::vec::Vec;

use super::{Letter, Word};

/// One oriented rule `lhs -> rhs`; `lhs` must be shortlex-greater than `rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

/// Ordered string rewriting system; free cancellation `x x⁻¹ -> 1` is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewritingSystem {
    rules: Vec<Rule>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConfluenceError {
    #[error("rule {index} is not shortlex-decreasing")]
    NotDecreasing { index: usize },
    #[error("rule {index} has an empty left-hand side")]
    EmptyLeftSide { index: usize },
    #[error("critical pair on overlap {overlap} resolves to distinct normal forms {left} and {right}")]
    CriticalPair { overlap: Word, left: Word, right: Word },
}

fn find(hay: &[Letter], needle: &[Letter]) -> Option<usize> {
    if needle.is_empty() || needle.len() > hay.len() {
        return None;
    }
    hay.windows(needle.len()).position(|w| w == needle)
}

impl RewritingSystem {
    /// Builds the system and verifies termination (every rule shortlex-decreasing)
    /// and local confluence on all critical pairs, which together give confluence.
    pub fn new(rules: Vec<Rule>) -> Result<Self, ConfluenceError> {
        for (index, r) in rules.iter().enumerate() {
            if r.lhs.is_empty() {
                return Err(ConfluenceError::EmptyLeftSide { index });
            }
            if r.lhs <= r.rhs {
                return Err(ConfluenceError::NotDecreasing { index });
            }
        }
        let sys = RewritingSystem { rules };
        sys.check_critical_pairs()?;
        Ok(sys)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Applies the first matching rule (in rule order, leftmost occurrence)
    /// until none applies.
    pub fn normal_form(&self, letters: &[Letter]) -> Word {
        let mut cur = Word::reduce(letters.iter().copied()).0;
        'outer: loop {
            for r in &self.rules {
                if let Some(pos) = find(&cur, r.lhs.letters()) {
                    let mut next = Vec::with_capacity(cur.len());
                    next.extend_from_slice(&cur[..pos]);
                    next.extend_from_slice(r.rhs.letters());
                    next.extend_from_slice(&cur[pos + r.lhs.len()..]);
                    cur = Word::reduce(next).0;
                    continue 'outer;
                }
            }
            return Word(cur);
        }
    }

    fn all_rules_with_cancellation(&self) -> Vec<(Vec<Letter>, Vec<Letter>)> {
        let mut gens: Vec<usize> = Vec::new();
        for r in &self.rules {
            for l in r.lhs.letters().iter().chain(r.rhs.letters()) {
                if !gens.contains(&l.gen()) {
                    gens.push(l.gen());
                }
            }
        }
        let mut all: Vec<(Vec<Letter>, Vec<Letter>)> = self
            .rules
            .iter()
            .map(|r| (r.lhs.letters().to_vec(), r.rhs.letters().to_vec()))
            .collect();
        for g in gens {
            let x = Letter::generator(g);
            all.push((alloc::vec![x, x.inverse()], Vec::new()));
            all.push((alloc::vec![x.inverse(), x], Vec::new()));
        }
        all
    }

    fn check_critical_pairs(&self) -> Result<(), ConfluenceError> {
        let all = self.all_rules_with_cancellation();
        let join = |a: Vec<Letter>, b: Vec<Letter>, overlap: Vec<Letter>| {
            let left = self.normal_form(&a);
            let right = self.normal_form(&b);
            if left == right {
                Ok(())
            } else {
                Err(ConfluenceError::CriticalPair { overlap: Word(overlap), left, right })
            }
        };
        for (i, (l1, r1)) in all.iter().enumerate() {
            for (j, (l2, r2)) in all.iter().enumerate() {
                // proper overlaps: suffix of l1 equals prefix of l2
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] == l2[..k] {
                        let mut overlap = l1.clone();
                        overlap.extend_from_slice(&l2[k..]);
                        let mut a = r1.clone();
                        a.extend_from_slice(&l2[k..]);
                        let mut b = l1[..l1.len() - k].to_vec();
                        b.extend_from_slice(r2);
                        join(a, b, overlap)?;
                    }
                }
                // containment of l2 inside l1
                if i != j && l2.len() <= l1.len() {
                    for p in 0..=(l1.len() - l2.len()) {
                        if l1[p..p + l2.len()] == l2[..] {
                            let mut b = l1[..p].to_vec();
                            b.extend_from_slice(r2);
                            b.extend_from_slice(&l1[p + l2.len()..]);
                            join(r1.clone(), b, l1.clone())?;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::free_reduce;

    fn w(raw: &[i32]) -> Word {
        free_reduce(raw, 2).unwrap()
    }

    fn rule(l: &[i32], r: &[i32]) -> Rule {
        Rule { lhs: w(l), rhs: w(r) }
    }

    /// Complete shortlex system for ℤ² with a < A < b < B.
    fn z2_rules() -> Vec<Rule> {
        alloc::vec![
            rule(&[2, 1], &[1, 2]),
            rule(&[2, -1], &[-1, 2]),
            rule(&[-2, 1], &[1, -2]),
            rule(&[-2, -1], &[-1, -2]),
        ]
    }

    #[test]
    fn z2_system_is_confluent_and_sorts() {
        let sys = RewritingSystem::new(z2_rules()).unwrap();
        assert_eq!(sys.normal_form(w(&[2, 1, -2, 1]).letters()), w(&[1, 1]));
        assert_eq!(sys.normal_form(w(&[1, 2, -1, -2]).letters()), Word::identity());
    }

    #[test]
    fn incomplete_system_is_rejected() {
        // Only ba -> ab: the overlap B b a exposes a missing rule (Ba -> aB).
        let err = RewritingSystem::new(alloc::vec![rule(&[2, 1], &[1, 2])]).unwrap_err();
        assert!(matches!(err, ConfluenceError::CriticalPair { .. }));
    }

    #[test]
    fn increasing_rule_is_rejected() {
        let err = RewritingSystem::new(alloc::vec![rule(&[1, 2], &[2, 1])]).unwrap_err();
        assert_eq!(err, ConfluenceError::NotDecreasing { index: 0 });
    }
}
