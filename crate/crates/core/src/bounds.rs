//! Classical bounds: `Δmax`, `Δmin` and heuristic lower bounds on `Δmax`.
//!
//! The exhaustive search enumerates *normalized* Alice strategies only:
//! `o_a(0) = 0` (output shift), `o_a(1) = 0` (a Bob input shift absorbs any
//! linear term `c·s_a`) and `o_a(2)` restricted to the smallest element of its
//! orbit under unit scaling. Bob is never enumerated: for fixed Alice the zero
//! count splits over columns, so the per-column best response is optimal.
//!
//! The kernel walks Alice's remaining entries depth first and keeps, for every
//! column, a histogram of `s_a·s_b + o_a(s_a) mod d` together with its running
//! maximum; the leaf value `Σ_columns max` is then available in O(1).

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::error::{Error, Result};
use crate::game::{zero_count_of, DeterministicStrategy, GameParams};

/// Plateau moves allowed per restart before the heuristic gives up.
pub const DEFAULT_PATIENCE: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    ExactMax,
    HeuristicLb,
    ExactMin,
}

impl BoundKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundKind::ExactMax => "exact_max",
            BoundKind::HeuristicLb => "heuristic_lb",
            BoundKind::ExactMin => "exact_min",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SearchStats {
    /// Alice candidates (exact search) or best-response evaluations (heuristic).
    pub candidates: u64,
    pub seconds: f64,
    pub restarts: u64,
    pub seed: u64,
    /// `false` when an exact search stopped early; `value` is then only a lower bound.
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    pub d: usize,
    pub kind: BoundKind,
    pub value: usize,
    pub witness: DeterministicStrategy,
    pub stats: SearchStats,
}

/// Per-column histogram of `s_a·s_b + o_a(s_a) mod d`.
fn column_histograms(d: usize, alice: &[u8], hist: &mut [usize]) {
    hist.iter_mut().for_each(|h| *h = 0);
    for s_b in 0..d {
        let row = &mut hist[s_b * d..(s_b + 1) * d];
        for (s_a, &o_a) in alice.iter().enumerate() {
            row[(s_a * s_b + o_a as usize) % d] += 1;
        }
    }
}

/// Bob's best response: `o_b(s_b) = d − k` with `k` the most frequent value in
/// column `s_b`; ties go to the smallest `o_b(s_b)`. Returns the attained zeros.
pub fn best_response_bob(params: &GameParams, alice: &[u8]) -> (Vec<u8>, usize) {
    let d = params.d();
    assert_eq!(alice.len(), d);
    let mut hist = vec![0usize; d * d];
    column_histograms(d, alice, &mut hist);
    let mut bob = vec![0u8; d];
    let mut total = 0;
    for s_b in 0..d {
        let row = &hist[s_b * d..(s_b + 1) * d];
        let (mut best_o, mut best_c) = (0usize, 0usize);
        // o_b ascending, so strict improvement keeps the smallest tie
        for o_b in 0..d {
            let c = row[(d - o_b) % d];
            if c > best_c {
                best_c = c;
                best_o = o_b;
            }
        }
        bob[s_b] = best_o as u8;
        total += best_c;
    }
    (bob, total)
}

/// Alice's best response to a fixed Bob; the game is symmetric in the parties.
pub fn best_response_alice(params: &GameParams, bob: &[u8]) -> (Vec<u8>, usize) {
    best_response_bob(params, bob)
}

/// Every optimal `o_b(s_b)` per column, ascending, plus the attained zeros.
pub fn best_response_options(params: &GameParams, alice: &[u8]) -> (Vec<Vec<u8>>, usize) {
    let d = params.d();
    let mut hist = vec![0usize; d * d];
    column_histograms(d, alice, &mut hist);
    let mut options = Vec::with_capacity(d);
    let mut total = 0;
    for s_b in 0..d {
        let row = &hist[s_b * d..(s_b + 1) * d];
        let max = *row.iter().max().expect("d >= 2");
        options.push((0..d).filter(|&o_b| row[(d - o_b) % d] == max).map(|o| o as u8).collect());
        total += max;
    }
    (options, total)
}

/// Best response with uniformly random tie-breaking; writes into `out`.
pub fn best_response_random<R: Rng>(d: usize, other: &[u8], hist: &mut [usize], out: &mut [u8], rng: &mut R) -> usize {
    column_histograms(d, other, hist);
    let mut total = 0;
    for s_b in 0..d {
        let row = &hist[s_b * d..(s_b + 1) * d];
        let max = *row.iter().max().expect("d >= 2");
        let ties = row.iter().filter(|&&c| c == max).count();
        let mut pick = if ties > 1 { rng.random_range(0..ties) } else { 0 };
        for (k, &c) in row.iter().enumerate() {
            if c == max {
                if pick == 0 {
                    out[s_b] = ((d - k) % d) as u8;
                    break;
                }
                pick -= 1;
            }
        }
        total += max;
    }
    total
}

/// A fixed assignment of Alice's first entries; the kernel completes the rest.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Prefix(pub Vec<u8>);

/// Prefixes of normalized Alice strategies, in lexicographic order, fixing
/// positions `0..len` with `len = min(split, d)` (at least 2, and 3 when `d ≥ 3`).
pub fn normalized_prefixes(params: &GameParams, split: usize) -> Vec<Prefix> {
    let d = params.d();
    let fixed = if d >= 3 { 3 } else { 2 };
    let len = split.clamp(fixed, d);
    let mut out: Vec<Vec<u8>> = if d >= 3 {
        arith::unit_orbit_representatives(d)
            .into_iter()
            .map(|r| vec![0, 0, r as u8])
            .collect()
    } else {
        vec![vec![0, 0]]
    };
    for _ in fixed..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..d as u8).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Prefix).collect()
}

/// Number of normalized Alice strategies, `|reps(d)|·d^(d−3)` for `d ≥ 3`.
pub fn normalized_candidate_count(params: &GameParams) -> u128 {
    let d = params.d();
    if d < 3 {
        return 1;
    }
    arith::unit_orbit_representatives(d).len() as u128 * (d as u128).pow(d as u32 - 3)
}

/// Receives every completed Alice strategy with its best-response value.
pub trait LeafVisitor {
    fn leaf(&mut self, alice: &[u8], value: usize);
}

/// Tracks the maximum and the first (lexicographically smallest) Alice attaining it.
#[derive(Debug, Clone, Default)]
pub struct MaxVisitor {
    pub best: usize,
    pub alice: Option<Vec<u8>>,
}

impl LeafVisitor for MaxVisitor {
    #[inline]
    fn leaf(&mut self, alice: &[u8], value: usize) {
        if self.alice.is_none() || value > self.best {
            self.best = value;
            self.alice = Some(alice.to_vec());
        }
    }
}

/// Collects every Alice strategy whose value equals `target`.
#[derive(Debug, Clone)]
pub struct CollectVisitor {
    pub target: usize,
    pub found: Vec<Vec<u8>>,
    pub limit: usize,
    pub overflow: bool,
}

impl CollectVisitor {
    pub fn new(target: usize, limit: usize) -> Self {
        Self {
            target,
            found: Vec::new(),
            limit,
            overflow: false,
        }
    }
}

impl LeafVisitor for CollectVisitor {
    #[inline]
    fn leaf(&mut self, alice: &[u8], value: usize) {
        if value == self.target {
            if self.found.len() < self.limit {
                self.found.push(alice.to_vec());
            } else {
                self.overflow = true;
            }
        }
    }
}

/// Incremental depth-first enumeration of Alice completions.
pub struct SearchKernel {
    d: usize,
    /// `cells[(s·d + v)·d + t]` = histogram slot `t·d + (s·t + v) mod d`
    cells: Vec<u16>,
    hist: Vec<u8>,
    colmax: Vec<u8>,
    sum: usize,
    alice: Vec<u8>,
    leaves: u64,
}

impl SearchKernel {
    pub fn new(params: &GameParams) -> Self {
        let d = params.d();
        let mut cells = vec![0u16; d * d * d];
        for s in 0..d {
            for v in 0..d {
                for t in 0..d {
                    cells[(s * d + v) * d + t] = (t * d + (s * t + v) % d) as u16;
                }
            }
        }
        Self {
            d,
            cells,
            hist: vec![0; d * d],
            colmax: vec![0; d],
            sum: 0,
            alice: vec![0; d],
            leaves: 0,
        }
    }

    /// Leaves visited so far.
    pub fn leaves(&self) -> u64 {
        self.leaves
    }

    #[inline]
    fn push(&mut self, s: usize, v: usize) -> u64 {
        let d = self.d;
        let row = &self.cells[(s * d + v) * d..(s * d + v + 1) * d];
        let mut raised = 0u64;
        for (t, &cell) in row.iter().enumerate() {
            let h = &mut self.hist[cell as usize];
            *h += 1;
            if *h > self.colmax[t] {
                self.colmax[t] = *h;
                raised |= 1 << t;
            }
        }
        self.sum += raised.count_ones() as usize;
        self.alice[s] = v as u8;
        raised
    }

    #[inline]
    fn pop(&mut self, s: usize, v: usize, raised: u64) {
        let d = self.d;
        let row = &self.cells[(s * d + v) * d..(s * d + v + 1) * d];
        for &cell in row {
            self.hist[cell as usize] -= 1;
        }
        let mut bits = raised;
        while bits != 0 {
            let t = bits.trailing_zeros() as usize;
            self.colmax[t] -= 1;
            bits &= bits - 1;
        }
        self.sum -= raised.count_ones() as usize;
    }

    /// Enumerates every completion of `prefix`, calling `visitor` once per leaf
    /// in lexicographic order.
    pub fn run<V: LeafVisitor>(&mut self, prefix: &Prefix, visitor: &mut V) {
        let d = self.d;
        assert!(prefix.0.len() <= d && !prefix.0.is_empty());
        self.hist.iter_mut().for_each(|h| *h = 0);
        self.colmax.iter_mut().for_each(|m| *m = 0);
        self.sum = 0;
        for (s, &v) in prefix.0.iter().enumerate() {
            self.push(s, v as usize);
        }
        if prefix.0.len() == d {
            self.leaves += 1;
            let value = self.sum;
            visitor.leaf(&self.alice, value);
        } else {
            self.descend(prefix.0.len(), visitor);
        }
    }

    fn descend<V: LeafVisitor>(&mut self, s: usize, visitor: &mut V) {
        let d = self.d;
        if s + 1 == d {
            // last row: value gain is the number of columns where the slot sits at the max
            for v in 0..d {
                let row = &self.cells[(s * d + v) * d..(s * d + v + 1) * d];
                let mut gain = 0;
                for (t, &cell) in row.iter().enumerate() {
                    gain += (self.hist[cell as usize] == self.colmax[t]) as usize;
                }
                self.alice[s] = v as u8;
                self.leaves += 1;
                let value = self.sum + gain;
                visitor.leaf(&self.alice, value);
            }
            return;
        }
        for v in 0..d {
            let raised = self.push(s, v);
            self.descend(s + 1, visitor);
            self.pop(s, v, raised);
        }
    }
}

/// Exhaustive `Δmax` on the calling thread (no budget). The witness is the
/// lexicographically smallest normalized Alice with Bob's canonical best response.
pub fn exact_delta_max_sequential(params: &GameParams) -> BoundResult {
    let mut kernel = SearchKernel::new(params);
    let mut visitor = MaxVisitor::default();
    for prefix in normalized_prefixes(params, 3) {
        kernel.run(&prefix, &mut visitor);
    }
    let alice = visitor.alice.expect("at least one candidate");
    let (bob, value) = best_response_bob(params, &alice);
    debug_assert_eq!(value, visitor.best);
    BoundResult {
        d: params.d(),
        kind: BoundKind::ExactMax,
        value,
        witness: DeterministicStrategy::from_parts(alice, bob),
        stats: SearchStats {
            candidates: kernel.leaves(),
            complete: true,
            ..SearchStats::default()
        },
    }
}

/// Every normalized Alice strategy whose best-response value equals `target`.
pub fn normalized_alices_at(params: &GameParams, target: usize, limit: usize) -> Result<Vec<Vec<u8>>> {
    let mut kernel = SearchKernel::new(params);
    let mut visitor = CollectVisitor::new(target, limit);
    for prefix in normalized_prefixes(params, 3) {
        kernel.run(&prefix, &mut visitor);
        if visitor.overflow {
            return Err(Error::LimitExceeded(limit));
        }
    }
    Ok(visitor.found)
}

/// Outcome of one heuristic restart.
#[derive(Debug, Clone, PartialEq)]
pub struct RestartOutcome {
    pub value: usize,
    pub strategy: DeterministicStrategy,
    pub evaluations: u64,
}

/// Random generator for restart `index` of the stream `seed`. Streams are
/// independent of how restarts are distributed over workers.
pub fn restart_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// One restart of the alternating best-response heuristic: uniformly random
/// Alice, then Bob and Alice best responses in turn (random tie-breaking) until
/// `patience` consecutive rounds bring no strict improvement.
pub fn heuristic_restart(params: &GameParams, seed: u64, index: u64, patience: usize) -> RestartOutcome {
    let d = params.d();
    let mut rng = restart_rng(seed, index);
    let mut alice: Vec<u8> = (0..d).map(|_| rng.random_range(0..d) as u8).collect();
    let mut bob = vec![0u8; d];
    let mut hist = vec![0usize; d * d];
    let mut best_value = 0;
    let mut best = (alice.clone(), bob.clone());
    let mut stall = 0;
    let mut evaluations = 0;
    let mut first = true;
    loop {
        let v_bob = best_response_random(d, &alice, &mut hist, &mut bob, &mut rng);
        let v_alice = best_response_random(d, &bob, &mut hist, &mut alice, &mut rng);
        evaluations += 2;
        debug_assert!(v_alice >= v_bob);
        if first || v_alice > best_value {
            first = false;
            best_value = v_alice;
            best = (alice.clone(), bob.clone());
            stall = 0;
        } else {
            stall += 1;
            if stall > patience {
                break;
            }
        }
    }
    debug_assert_eq!(zero_count_of(&best.0, &best.1), best_value);
    RestartOutcome {
        value: best_value,
        strategy: DeterministicStrategy::from_parts(best.0, best.1),
        evaluations,
    }
}

/// Keeps the larger value; ties go to the lexicographically smaller strategy.
pub fn better_outcome(a: RestartOutcome, b: RestartOutcome) -> RestartOutcome {
    use core::cmp::Ordering;
    match a.value.cmp(&b.value) {
        Ordering::Greater => a,
        Ordering::Less => b,
        Ordering::Equal => {
            if b.strategy < a.strategy {
                b
            } else {
                a
            }
        }
    }
}

/// Sequential heuristic over restarts `0..restarts`.
pub fn heuristic_delta_lb_sequential(params: &GameParams, restarts: u64, seed: u64, patience: usize) -> Result<BoundResult> {
    if restarts == 0 {
        return Err(Error::Precondition("at least one restart"));
    }
    let mut evaluations = 0;
    let mut best: Option<RestartOutcome> = None;
    for index in 0..restarts {
        let out = heuristic_restart(params, seed, index, patience);
        evaluations += out.evaluations;
        best = Some(match best {
            None => out,
            Some(b) => better_outcome(b, out),
        });
    }
    let best = best.expect("restarts >= 1");
    Ok(BoundResult {
        d: params.d(),
        kind: BoundKind::HeuristicLb,
        value: best.value,
        witness: best.strategy,
        stats: SearchStats {
            candidates: evaluations,
            restarts,
            seed,
            complete: true,
            ..SearchStats::default()
        },
    })
}

/// The explicit strategy with `3d − 2` zeros, for prime `d > 5`.
pub fn construct_3dminus2_strategy(params: &GameParams) -> Result<DeterministicStrategy> {
    let d = params.d();
    if !params.is_prime() || d <= 5 {
        return Err(Error::Precondition("prime d > 5"));
    }
    let half = d.div_ceil(2);
    let mut alice = vec![(d - 1) as u8; d];
    alice[0] = 0;
    alice[1] = (d - 4) as u8;
    alice[half] = (d - 3) as u8;
    let mut bob = vec![0u8; d];
    bob[0] = 1;
    bob[1] = 3;
    bob[2] = 2;
    DeterministicStrategy::new(params, alice, bob)
}

/// A strategy with no zeros at all, for `d > 2`: Alice plays `o_a(s_a) = s_a − 1`
/// (`o_a(0) = 0`), Bob the smallest output avoiding every zero in each column.
/// For prime `d` this is `o_b(s_b) = 1` except `o_b(d − 1) = 2`; for composite
/// `d` that fixed Bob leaves zeros, but Alice's column values still miss a
/// residue, so a zero-free Bob exists.
pub fn construct_delta_min_strategy(params: &GameParams) -> Result<DeterministicStrategy> {
    let d = params.d();
    if d <= 2 {
        return Err(Error::Precondition("d > 2"));
    }
    let alice: Vec<u8> = (0..d).map(|s| if s == 0 { 0 } else { (s - 1) as u8 }).collect();
    let mut hist = vec![0usize; d * d];
    column_histograms(d, &alice, &mut hist);
    let mut bob = Vec::with_capacity(d);
    for s_b in 0..d {
        let row = &hist[s_b * d..(s_b + 1) * d];
        let o_b = (0..d)
            .find(|&o_b| row[(d - o_b) % d] == 0)
            .ok_or(Error::Precondition("column covers every residue"))?;
        bob.push(o_b as u8);
    }
    DeterministicStrategy::new(params, alice, bob)
}

/// `Δmin`: zero for `d > 2` by construction (zero counts are nonnegative); at
/// `d = 2` by enumeration of all 16 strategies.
pub fn exact_delta_min(params: &GameParams) -> BoundResult {
    let d = params.d();
    let (witness, candidates) = if d > 2 {
        (construct_delta_min_strategy(params).expect("d > 2"), 1)
    } else {
        let all = (0..16u8).map(|code| {
            DeterministicStrategy::from_parts(vec![code & 1, (code >> 1) & 1], vec![(code >> 2) & 1, (code >> 3) & 1])
        });
        (all.min_by_key(|s| (s.zero_count(), s.clone())).expect("nonempty"), 16)
    };
    BoundResult {
        d,
        kind: BoundKind::ExactMin,
        value: witness.zero_count(),
        witness,
        stats: SearchStats {
            candidates,
            complete: true,
            ..SearchStats::default()
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::build_score_matrix;
    use rand::SeedableRng;

    fn params(d: usize) -> GameParams {
        GameParams::new(d).unwrap()
    }

    /// Every (alice, bob) pair, no symmetry and no best-response shortcut.
    fn naive_max(d: usize) -> usize {
        let total = (d as u64).pow(2 * d as u32);
        let mut best = 0;
        let mut a = vec![0u8; d];
        let mut b = vec![0u8; d];
        for code in 0..total {
            let mut c = code;
            for x in a.iter_mut().chain(b.iter_mut()) {
                *x = (c % d as u64) as u8;
                c /= d as u64;
            }
            best = best.max(zero_count_of(&a, &b));
        }
        best
    }

    #[test]
    fn best_response_examples() {
        let (bob, zeros) = best_response_bob(&params(3), &[0, 0, 0]);
        assert_eq!(zeros, 5);
        assert_eq!(bob, [0, 0, 0]);
        let (bob, zeros) = best_response_bob(&params(2), &[0, 0]);
        assert_eq!((bob.as_slice(), zeros), (&[0u8, 0][..], 3));
    }

    #[test]
    fn best_response_beats_every_bob_strategy() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for d in 2..=7 {
            let p = params(d);
            for _ in 0..20 {
                let alice: Vec<u8> = (0..d).map(|_| rng.random_range(0..d) as u8).collect();
                let (bob, zeros) = best_response_bob(&p, &alice);
                assert_eq!(zero_count_of(&alice, &bob), zeros);
                let total = (d as u64).pow(d as u32);
                let mut b = vec![0u8; d];
                for code in 0..total {
                    let mut c = code;
                    for x in b.iter_mut() {
                        *x = (c % d as u64) as u8;
                        c /= d as u64;
                    }
                    assert!(zero_count_of(&alice, &b) <= zeros);
                }
            }
        }
    }

    #[test]
    fn options_include_canonical_response() {
        let p = params(5);
        let alice = [0, 0, 1, 3, 2];
        let (opts, zeros) = best_response_options(&p, &alice);
        let (bob, z2) = best_response_bob(&p, &alice);
        assert_eq!(zeros, z2);
        for (s_b, o) in bob.iter().enumerate() {
            assert_eq!(opts[s_b][0], *o);
        }
    }

    #[test]
    fn exact_matches_naive_enumeration() {
        for d in 2..=4 {
            assert_eq!(exact_delta_max_sequential(&params(d)).value, naive_max(d), "d={d}");
        }
    }

    #[test]
    fn exact_small_values() {
        let expected = [(3, 6), (4, 10), (5, 12), (6, 18), (7, 19), (8, 30), (9, 36)];
        for (d, v) in expected {
            let r = exact_delta_max_sequential(&params(d));
            assert_eq!(r.value, v, "d={d}");
            assert_eq!(r.witness.zero_count(), v);
            assert_eq!(r.kind, BoundKind::ExactMax);
        }
    }

    #[test]
    fn kernel_counts_every_candidate() {
        for d in [3, 4, 5, 6] {
            let p = params(d);
            let r = exact_delta_max_sequential(&p);
            assert_eq!(r.stats.candidates as u128, normalized_candidate_count(&p));
        }
    }

    #[test]
    fn kernel_values_agree_with_best_response() {
        struct Check(GameParams, usize);
        impl LeafVisitor for Check {
            fn leaf(&mut self, alice: &[u8], value: usize) {
                assert_eq!(best_response_bob(&self.0, alice).1, value);
                self.1 += 1;
            }
        }
        let p = params(6);
        let mut kernel = SearchKernel::new(&p);
        let mut check = Check(p, 0);
        for prefix in normalized_prefixes(&p, 4) {
            kernel.run(&prefix, &mut check);
        }
        assert_eq!(check.1 as u128, normalized_candidate_count(&p));
    }

    #[test]
    fn heuristic_small_d_and_monotone() {
        let p = params(3);
        assert_eq!(heuristic_delta_lb_sequential(&p, 10, 1, DEFAULT_PATIENCE).unwrap().value, 6);
        let p = params(11);
        let mut last = 0;
        for r in [1, 5, 20, 80] {
            let v = heuristic_delta_lb_sequential(&p, r, 9, DEFAULT_PATIENCE).unwrap().value;
            assert!(v >= last);
            last = v;
        }
        assert!(last <= 37);
        assert!(heuristic_delta_lb_sequential(&p, 0, 9, DEFAULT_PATIENCE).is_err());
    }

    #[test]
    fn constructions() {
        for d in [7, 11, 13, 17, 19, 23, 29, 31] {
            let s = construct_3dminus2_strategy(&params(d)).unwrap();
            assert_eq!(s.zero_count(), 3 * d - 2, "d={d}");
        }
        assert!(construct_3dminus2_strategy(&params(5)).is_err());
        assert!(construct_3dminus2_strategy(&params(9)).is_err());
        for d in 3..=31 {
            let s = construct_delta_min_strategy(&params(d)).unwrap();
            assert_eq!(build_score_matrix(&params(d), &s).unwrap().zero_count(), 0);
        }
        let s = construct_delta_min_strategy(&params(3)).unwrap();
        assert_eq!((s.alice(), s.bob()), (&[0u8, 0, 1][..], &[1u8, 1, 2][..]));
        for d in [5, 7, 11, 13] {
            let s = construct_delta_min_strategy(&params(d)).unwrap();
            assert!(s.bob()[..d - 1].iter().all(|&o| o == 1) && s.bob()[d - 1] == 2);
        }
        assert!(construct_delta_min_strategy(&params(2)).is_err());
    }

    #[test]
    fn delta_min_values() {
        assert_eq!(exact_delta_min(&params(2)).value, 1);
        assert_eq!(exact_delta_min(&params(5)).value, 0);
    }
}
