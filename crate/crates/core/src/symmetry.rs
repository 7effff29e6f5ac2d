//! Symmetries of the game acting on deterministic strategies.
//!
//! Every generator maps a strategy to one with the same score-matrix zero count:
//!
//! * output shift `o_a → o_a + k`, `o_b → o_b − k`;
//! * unit scaling `o_a'(s_a) = k·o_a(s_a)`, `o_b'(k·s_b) = k·o_b(s_b)` for `k` a unit;
//! * Alice input shift `s_a → s_a + c`, absorbed as `o_b(s_b) → o_b(s_b) + c·s_b`;
//! * Bob input shift `s_b → s_b + c`, absorbed as `o_a(s_a) → o_a(s_a) + c·s_a`;
//! * party swap (the winning condition is symmetric in the two parties).

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::arith;
use crate::game::{DeterministicStrategy, GameParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    OutputShift(usize),
    Scale(usize),
    AliceInputShift(usize),
    BobInputShift(usize),
    Swap,
}

impl Symmetry {
    pub fn apply(&self, params: &GameParams, s: &DeterministicStrategy) -> DeterministicStrategy {
        let d = params.d();
        let a = s.alice();
        let b = s.bob();
        let (alice, bob): (Vec<u8>, Vec<u8>) = match *self {
            Symmetry::OutputShift(k) => (
                a.iter().map(|&x| ((x as usize + k) % d) as u8).collect(),
                b.iter().map(|&x| ((x as usize + d - k % d) % d) as u8).collect(),
            ),
            Symmetry::Scale(k) => {
                let inv = arith::inverse_mod(k, d).expect("scaling factor must be a unit");
                (
                    a.iter().map(|&x| ((k * x as usize) % d) as u8).collect(),
                    (0..d).map(|t| ((k * b[(inv * t) % d] as usize) % d) as u8).collect(),
                )
            }
            Symmetry::AliceInputShift(c) => (
                (0..d).map(|s_a| a[(s_a + c) % d]).collect(),
                (0..d).map(|t| ((b[t] as usize + c * t) % d) as u8).collect(),
            ),
            Symmetry::BobInputShift(c) => (
                (0..d).map(|s_a| ((a[s_a] as usize + c * s_a) % d) as u8).collect(),
                (0..d).map(|t| b[(t + c) % d]).collect(),
            ),
            Symmetry::Swap => (b.to_vec(), a.to_vec()),
        };
        DeterministicStrategy::from_parts(alice, bob)
    }
}

/// Generating set of the symmetry group for one `d`.
#[derive(Debug, Clone)]
pub struct SymmetryGroup {
    params: GameParams,
    generators: Vec<Symmetry>,
}

impl SymmetryGroup {
    pub fn new(params: &GameParams) -> Self {
        let mut generators = Vec::new();
        generators.push(Symmetry::OutputShift(1));
        generators.extend(params.units().into_iter().filter(|&k| k != 1).map(Symmetry::Scale));
        generators.push(Symmetry::AliceInputShift(1));
        generators.push(Symmetry::BobInputShift(1));
        generators.push(Symmetry::Swap);
        Self {
            params: *params,
            generators,
        }
    }

    pub fn generators(&self) -> &[Symmetry] {
        &self.generators
    }

    /// Every element of the group, not just generators; used by greedy descent.
    fn all_simple_moves(&self) -> Vec<Symmetry> {
        let d = self.params.d();
        let mut moves = Vec::new();
        for k in 1..d {
            moves.push(Symmetry::OutputShift(k));
            moves.push(Symmetry::AliceInputShift(k));
            moves.push(Symmetry::BobInputShift(k));
        }
        moves.extend(self.params.units().into_iter().filter(|&k| k != 1).map(Symmetry::Scale));
        moves.push(Symmetry::Swap);
        moves
    }

    /// All images of `s`, including `s` itself.
    pub fn orbit(&self, s: &DeterministicStrategy) -> BTreeSet<DeterministicStrategy> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(s.clone());
        queue.push_back(s.clone());
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.apply(&self.params, &x);
                if !seen.contains(&y) {
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Lexicographically smallest orbit element for `d ≤ 7` (full scan); for larger
    /// `d` a greedy descent over single group moves, which may stop at a local
    /// minimum and then over-counts representatives.
    pub fn canonical_form(&self, s: &DeterministicStrategy) -> DeterministicStrategy {
        if self.params.d() <= 7 {
            return self.orbit(s).into_iter().next().expect("orbit contains s");
        }
        let moves = self.all_simple_moves();
        let mut current = s.clone();
        loop {
            let mut improved = false;
            for g in &moves {
                let y = g.apply(&self.params, &current);
                if y < current {
                    current = y;
                    improved = true;
                }
            }
            if !improved {
                return current;
            }
        }
    }
}

/// Images `OutputShift(k) ∘ BobInputShift(c) ∘ Scale(u)` of `s` over all `k`, `c`
/// and units `u`. Applied to every normalized strategy this recovers all strategies:
/// any strategy is normalized by exactly such a composition.
pub fn normalizing_images(params: &GameParams, s: &DeterministicStrategy) -> Vec<DeterministicStrategy> {
    let d = params.d();
    let units = params.units();
    let mut out = Vec::with_capacity(d * d * units.len());
    for x in units.iter().map(|&u| Symmetry::Scale(u).apply(params, s)) {
        for c in 0..d {
            let y = Symmetry::BobInputShift(c).apply(params, &x);
            for k in 0..d {
                out.push(Symmetry::OutputShift(k).apply(params, &y));
            }
        }
    }
    out
}

/// Maps `s` to its normalized form: `o_a(0) = 0`, `o_a(1) = 0` and `o_a(2)` the
/// smallest element of its unit orbit. Zero count is preserved.
pub fn normalize(params: &GameParams, s: &DeterministicStrategy) -> DeterministicStrategy {
    let d = params.d();
    let shifted = Symmetry::OutputShift((d - s.alice()[0] as usize) % d).apply(params, s);
    let c = (d - shifted.alice()[1] as usize) % d;
    let lin = Symmetry::BobInputShift(c).apply(params, &shifted);
    if d < 3 {
        return lin;
    }
    let x = lin.alice()[2] as usize;
    let u = params
        .units()
        .into_iter()
        .min_by_key(|&u| ((u * x) % d, u))
        .expect("1 is always a unit");
    Symmetry::Scale(u).apply(params, &lin)
}
