//! Domination `f(n) ≤ A·g(B·n + C) + D·n + E` between tabulated functions.

use alloc::vec::Vec;

/// A function tabulated on `start..start + values.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tabulated {
    pub start: u64,
    pub values: Vec<u64>,
}

impl Tabulated {
    pub fn new(start: u64, values: Vec<u64>) -> Self {
        Tabulated { start, values }
    }

    pub fn from_fn(range: core::ops::RangeInclusive<u64>, f: impl Fn(u64) -> u64) -> Self {
        let start = *range.start();
        Tabulated { start, values: range.map(f).collect() }
    }

    pub fn end(&self) -> u64 {
        self.start + self.values.len() as u64
    }

    pub fn get(&self, n: u64) -> Option<u64> {
        n.checked_sub(self.start).and_then(|i| self.values.get(i as usize).copied())
    }
}

/// Inclusive integer ranges searched for each constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DominationBox {
    pub max: [u64; 5],
}

impl Default for DominationBox {
    fn default() -> Self {
        DominationBox { max: [8; 5] }
    }
}

impl DominationBox {
    pub fn uniform(m: u64) -> Self {
        DominationBox { max: [m; 5] }
    }
}

fn holds(f: &Tabulated, g: &Tabulated, lo: u64, hi: u64, t: [u64; 5]) -> bool {
    let [a, b, c, d, e] = t;
    (lo..hi).all(|n| {
        let Some(gv) = g.get(b * n + c) else { return false };
        let rhs = u128::from(a) * u128::from(gv) + u128::from(d) * u128::from(n) + u128::from(e);
        u128::from(f.get(n).expect("n in shared range")) <= rhs
    })
}

/// Lexicographically least `(A, B, C, D, E)` in the box with
/// `f(n) ≤ A·g(B·n + C) + D·n + E` for every `n` in the shared range. A
/// tuple fails if `B·n + C` leaves the range of `g`.
pub fn dominates(f: &Tabulated, g: &Tabulated, bx: DominationBox) -> Option<(u64, u64, u64, u64, u64)> {
    let lo = f.start.max(g.start);
    let hi = f.end().min(g.end());
    if lo >= hi {
        return None;
    }
    let [ma, mb, mc, md, me] = bx.max;
    for a in 0..=ma {
        for b in 0..=mb {
            for c in 0..=mc {
                for d in 0..=md {
                    for e in 0..=me {
                        if holds(f, g, lo, hi, [a, b, c, d, e]) {
                            return Some((a, b, c, d, e));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Both directions of domination, if each has a witness in the box.
#[allow(clippy::type_complexity)]
pub fn equivalent(
    f: &Tabulated,
    g: &Tabulated,
    bx: DominationBox,
) -> Option<((u64, u64, u64, u64, u64), (u64, u64, u64, u64, u64))> {
    Some((dominates(f, g, bx)?, dominates(g, f, bx)?))
}
