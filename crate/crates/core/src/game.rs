//! The game instance and its two Bell functionals.
//!
//! Alice receives `s_a`, Bob receives `s_b` (both uniform on `Z_d`); they answer
//! `o_a`, `o_b` and win iff `s_a·s_b + o_a + o_b ≡ 0 (mod d)`. The probability
//! functional `S` is the winning probability; the correlation functional `S_Ji`
//! is the `ω`-weighted sum of the correlators `⟨A^n B^n⟩`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
use num_rational::Ratio;

use crate::arith;
use crate::error::{Error, Result};

/// Tolerance for normalization and no-signaling of behavior tables.
pub const BEHAVIOR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GameParams {
    d: usize,
    prime: bool,
}

impl GameParams {
    pub fn new(d: usize) -> Result<Self> {
        if !(2..=crate::MAX_D).contains(&d) {
            return Err(Error::InvalidDimension(d));
        }
        Ok(Self {
            d,
            prime: arith::is_prime(d as u64),
        })
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_prime(&self) -> bool {
        self.prime
    }

    /// `ω = exp(2πi/d)`.
    pub fn omega(&self) -> Complex64 {
        Complex64::from_polar(1.0, TAU / self.d as f64)
    }

    /// `ω^k` for `k = 0..d`, computed directly from the angle for each power.
    pub fn omega_powers(&self) -> Vec<Complex64> {
        (0..self.d)
            .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / self.d as f64))
            .collect()
    }

    /// Units of `Z_d` (the admissible scaling factors).
    pub fn units(&self) -> Vec<usize> {
        arith::units(self.d)
    }

    /// `s_a·s_b + o_a + o_b mod d`.
    #[inline]
    pub fn score(&self, s_a: usize, s_b: usize, o_a: usize, o_b: usize) -> usize {
        (s_a * s_b + o_a + o_b) % self.d
    }

    pub fn wins(&self, s_a: usize, s_b: usize, o_a: usize, o_b: usize) -> bool {
        self.score(s_a, s_b, o_a, o_b) == 0
    }
}

/// One output per input for each party: `alice[s_a] = o_a(s_a)`, `bob[s_b] = o_b(s_b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeterministicStrategy {
    alice: Vec<u8>,
    bob: Vec<u8>,
}

impl DeterministicStrategy {
    pub fn new(params: &GameParams, alice: Vec<u8>, bob: Vec<u8>) -> Result<Self> {
        let d = params.d();
        for side in [&alice, &bob] {
            if side.len() != d {
                return Err(Error::LengthMismatch {
                    expected: d,
                    found: side.len(),
                });
            }
            if let Some((index, &value)) = side.iter().enumerate().find(|(_, &v)| v as usize >= d) {
                return Err(Error::ResidueOutOfRange {
                    index,
                    value: value as usize,
                    d,
                });
            }
        }
        Ok(Self { alice, bob })
    }

    /// Builds from arbitrary integers, reducing each modulo `d`.
    pub fn from_residues(params: &GameParams, alice: &[i64], bob: &[i64]) -> Result<Self> {
        let d = params.d() as i64;
        let reduce = |xs: &[i64]| xs.iter().map(|&x| x.rem_euclid(d) as u8).collect();
        Self::new(params, reduce(alice), reduce(bob))
    }

    /// Internal constructor for callers that already guarantee validity.
    pub(crate) fn from_parts(alice: Vec<u8>, bob: Vec<u8>) -> Self {
        debug_assert_eq!(alice.len(), bob.len());
        Self { alice, bob }
    }

    pub fn d(&self) -> usize {
        self.alice.len()
    }

    pub fn alice(&self) -> &[u8] {
        &self.alice
    }

    pub fn bob(&self) -> &[u8] {
        &self.bob
    }

    /// The same strategy with the parties exchanged (the game is symmetric).
    pub fn swapped(&self) -> Self {
        Self {
            alice: self.bob.clone(),
            bob: self.alice.clone(),
        }
    }

    /// Number of winning setting pairs, without building the matrix.
    pub fn zero_count(&self) -> usize {
        zero_count_of(&self.alice, &self.bob)
    }
}

/// Number of `(s_a, s_b)` with `s_a·s_b + alice[s_a] + bob[s_b] ≡ 0`. `d` is the slice length.
pub fn zero_count_of(alice: &[u8], bob: &[u8]) -> usize {
    let d = alice.len();
    let mut zeros = 0;
    for (s_a, &o_a) in alice.iter().enumerate() {
        // s_a·s_b accumulated incrementally to avoid a multiply per cell
        let mut acc = o_a as usize;
        for &o_b in bob {
            if (acc + o_b as usize).is_multiple_of(d) {
                zeros += 1;
            }
            acc += s_a;
            if acc >= d {
                acc -= d;
            }
        }
    }
    zeros
}

fn check_d(params: &GameParams, strategy: &DeterministicStrategy) -> Result<()> {
    if strategy.d() != params.d() {
        return Err(Error::LengthMismatch {
            expected: params.d(),
            found: strategy.d(),
        });
    }
    Ok(())
}

/// The `d×d` matrix of `(s_a·s_b + o_a(s_a) + o_b(s_b)) mod d`, row-major in `s_a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreMatrix {
    d: usize,
    entries: Vec<u8>,
}

impl ScoreMatrix {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, s_a: usize, s_b: usize) -> usize {
        self.entries[s_a * self.d + s_b] as usize
    }

    pub fn row(&self, s_a: usize) -> &[u8] {
        &self.entries[s_a * self.d..(s_a + 1) * self.d]
    }

    pub fn zero_count(&self) -> usize {
        self.entries.iter().filter(|&&e| e == 0).count()
    }

    /// Zeros in column `s_b`.
    pub fn column_zeros(&self, s_b: usize) -> usize {
        (0..self.d).filter(|&s_a| self.get(s_a, s_b) == 0).count()
    }
}

pub fn build_score_matrix(params: &GameParams, strategy: &DeterministicStrategy) -> Result<ScoreMatrix> {
    check_d(params, strategy)?;
    let d = params.d();
    let mut entries = Vec::with_capacity(d * d);
    for s_a in 0..d {
        for s_b in 0..d {
            let e = params.score(s_a, s_b, strategy.alice[s_a] as usize, strategy.bob[s_b] as usize);
            entries.push(e as u8);
        }
    }
    Ok(ScoreMatrix { d, entries })
}

pub fn zero_count(m: &ScoreMatrix) -> usize {
    m.zero_count()
}

/// Winning probability of a deterministic strategy, `zeros / d²`, as an exact rational.
pub fn classical_bell_value(params: &GameParams, strategy: &DeterministicStrategy) -> Result<Ratio<u64>> {
    check_d(params, strategy)?;
    let d = params.d() as u64;
    Ok(Ratio::new(strategy.zero_count() as u64, d * d))
}

/// Joint conditional probabilities `p(o_a, o_b | s_a, s_b)`.
///
/// Dense layout with `s_a` slowest: index `((s_a·d + s_b)·d + o_a)·d + o_b`.
/// File writers rely on this order.
#[derive(Debug, Clone, PartialEq)]
pub struct BehaviorTable {
    d: usize,
    probs: Vec<f64>,
}

impl BehaviorTable {
    #[inline]
    pub fn index(d: usize, s_a: usize, s_b: usize, o_a: usize, o_b: usize) -> usize {
        ((s_a * d + s_b) * d + o_a) * d + o_b
    }

    /// Validating constructor: nonnegative, normalized and no-signaling within 1e-12.
    pub fn new(d: usize, probs: Vec<f64>) -> Result<Self> {
        let table = Self::from_raw(d, probs)?;
        table.validate(BEHAVIOR_TOL)?;
        Ok(table)
    }

    /// Shape check only; callers producing approximate tables validate later.
    pub fn from_raw(d: usize, probs: Vec<f64>) -> Result<Self> {
        let n = d.pow(4);
        if probs.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: probs.len(),
            });
        }
        Ok(Self { d, probs })
    }

    pub fn uniform(d: usize) -> Self {
        let w = 1.0 / (d * d) as f64;
        Self {
            d,
            probs: vec![w; d.pow(4)],
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    #[inline]
    pub fn get(&self, s_a: usize, s_b: usize, o_a: usize, o_b: usize) -> f64 {
        self.probs[Self::index(self.d, s_a, s_b, o_a, o_b)]
    }

    /// The `d×d` block for one setting pair, row-major in `o_a`.
    pub fn block(&self, s_a: usize, s_b: usize) -> &[f64] {
        let start = Self::index(self.d, s_a, s_b, 0, 0);
        &self.probs[start..start + self.d * self.d]
    }

    pub fn alice_marginal(&self, s_a: usize, s_b: usize, o_a: usize) -> f64 {
        self.block(s_a, s_b)[o_a * self.d..(o_a + 1) * self.d].iter().sum()
    }

    pub fn bob_marginal(&self, s_a: usize, s_b: usize, o_b: usize) -> f64 {
        (0..self.d).map(|o_a| self.get(s_a, s_b, o_a, o_b)).sum()
    }

    pub fn min_entry(&self) -> f64 {
        self.probs.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest `|Σ_{o_a,o_b} p − 1|` over setting pairs.
    pub fn normalization_residual(&self) -> f64 {
        let d = self.d;
        let mut worst: f64 = 0.0;
        for s_a in 0..d {
            for s_b in 0..d {
                let total: f64 = self.block(s_a, s_b).iter().sum();
                worst = worst.max((total - 1.0).abs());
            }
        }
        worst
    }

    /// Largest change of a marginal when the other party's setting changes.
    pub fn no_signaling_residual(&self) -> f64 {
        let d = self.d;
        let mut worst: f64 = 0.0;
        for s_a in 0..d {
            for o_a in 0..d {
                let reference = self.alice_marginal(s_a, 0, o_a);
                for s_b in 1..d {
                    worst = worst.max((self.alice_marginal(s_a, s_b, o_a) - reference).abs());
                }
            }
        }
        for s_b in 0..d {
            for o_b in 0..d {
                let reference = self.bob_marginal(0, s_b, o_b);
                for s_a in 1..d {
                    worst = worst.max((self.bob_marginal(s_a, s_b, o_b) - reference).abs());
                }
            }
        }
        worst
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        let min = self.min_entry();
        if min < -tol {
            return Err(Error::Tolerance {
                what: "nonnegativity",
                residual: -min,
                tolerance: tol,
            });
        }
        let norm = self.normalization_residual();
        if norm > tol {
            return Err(Error::Tolerance {
                what: "normalization",
                residual: norm,
                tolerance: tol,
            });
        }
        let ns = self.no_signaling_residual();
        if ns > tol {
            return Err(Error::Tolerance {
                what: "no-signaling",
                residual: ns,
                tolerance: tol,
            });
        }
        Ok(())
    }
}

/// Deterministic behavior: `p = 1` iff `o_a = o_a(s_a)` and `o_b = o_b(s_b)`.
pub fn behavior_from_strategy(params: &GameParams, strategy: &DeterministicStrategy) -> Result<BehaviorTable> {
    check_d(params, strategy)?;
    let d = params.d();
    let mut probs = vec![0.0; d.pow(4)];
    for s_a in 0..d {
        for s_b in 0..d {
            let o_a = strategy.alice[s_a] as usize;
            let o_b = strategy.bob[s_b] as usize;
            probs[BehaviorTable::index(d, s_a, s_b, o_a, o_b)] = 1.0;
        }
    }
    Ok(BehaviorTable { d, probs })
}

/// Correlators `⟨A_{s_a}^n B_{s_b}^n⟩` for `n = 1..d`, indexed `(n, s_a, s_b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTable {
    d: usize,
    entries: Vec<Complex64>,
}

impl CorrelationTable {
    pub fn new(d: usize, entries: Vec<Complex64>) -> Result<Self> {
        let n = d * d * (d - 1);
        if entries.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: entries.len(),
            });
        }
        Ok(Self { d, entries })
    }

    pub fn zeros(d: usize) -> Self {
        Self {
            d,
            entries: vec![Complex64::new(0.0, 0.0); d * d * (d - 1)],
        }
    }

    #[inline]
    fn offset(&self, n: usize, s_a: usize, s_b: usize) -> usize {
        debug_assert!((1..self.d).contains(&n));
        ((n - 1) * self.d + s_a) * self.d + s_b
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, n: usize, s_a: usize, s_b: usize) -> Complex64 {
        self.entries[self.offset(n, s_a, s_b)]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn max_modulus(&self) -> f64 {
        self.entries.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest `|c(d−n) − conj(c(n))|`; zero for tables derived from real behaviors.
    pub fn conjugate_pairing_residual(&self) -> f64 {
        let d = self.d;
        let mut worst: f64 = 0.0;
        for n in 1..d {
            for s_a in 0..d {
                for s_b in 0..d {
                    let r = self.get(d - n, s_a, s_b) - self.get(n, s_a, s_b).conj();
                    worst = worst.max(r.norm());
                }
            }
        }
        worst
    }
}

/// `⟨A^n B^n⟩ = Σ_{o_a,o_b} ω^{n(o_a+o_b)} p(o_a,o_b|s_a,s_b)`.
pub fn corr_from_behavior(params: &GameParams, behavior: &BehaviorTable) -> CorrelationTable {
    let d = params.d();
    assert_eq!(d, behavior.d(), "behavior table has the wrong d");
    let w = params.omega_powers();
    let mut out = CorrelationTable::zeros(d);
    // q[k] = P(o_a + o_b ≡ k) for the current setting pair
    let mut q = vec![0.0; d];
    for s_a in 0..d {
        for s_b in 0..d {
            q.iter_mut().for_each(|x| *x = 0.0);
            let block = behavior.block(s_a, s_b);
            for o_a in 0..d {
                for o_b in 0..d {
                    q[(o_a + o_b) % d] += block[o_a * d + o_b];
                }
            }
            for n in 1..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &qk) in q.iter().enumerate() {
                    acc += w[(n * k) % d] * qk;
                }
                let at = out.offset(n, s_a, s_b);
                out.entries[at] = acc;
            }
        }
    }
    out
}

/// `S = (1/d²) Σ δ(s_a·s_b + o_a + o_b) p(o_a,o_b|s_a,s_b)`.
pub fn bell_value_prob(params: &GameParams, behavior: &BehaviorTable) -> f64 {
    let d = params.d();
    assert_eq!(d, behavior.d(), "behavior table has the wrong d");
    let mut total = 0.0;
    for s_a in 0..d {
        for s_b in 0..d {
            let block = behavior.block(s_a, s_b);
            for o_a in 0..d {
                let o_b = (2 * d * d - s_a * s_b - o_a) % d;
                total += block[o_a * d + o_b];
            }
        }
    }
    total / (d * d) as f64
}

/// `S_Ji = Σ_{n=1}^{d−1} Σ_{s_a,s_b} ω^{n·s_a·s_b} ⟨A^n B^n⟩`, returned as a complex number.
pub fn bell_value_corr(params: &GameParams, corr: &CorrelationTable) -> Complex64 {
    let d = params.d();
    assert_eq!(d, corr.d(), "correlation table has the wrong d");
    let w = params.omega_powers();
    let mut total = Complex64::new(0.0, 0.0);
    for n in 1..d {
        for s_a in 0..d {
            for s_b in 0..d {
                total += w[(n * s_a * s_b) % d] * corr.get(n, s_a, s_b);
            }
        }
    }
    total
}

/// Magnitude below which the imaginary part of `S_Ji` counts as zero.
pub const SJI_IMAG_TOL: f64 = 1e-9;

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn strat(d: usize, a: &[u8], b: &[u8]) -> (GameParams, DeterministicStrategy) {
        let p = GameParams::new(d).unwrap();
        let s = DeterministicStrategy::new(&p, a.to_vec(), b.to_vec()).unwrap();
        (p, s)
    }

    #[test]
    fn params_reject_small_d() {
        assert_eq!(GameParams::new(1), Err(Error::InvalidDimension(1)));
        assert!(GameParams::new(2).unwrap().is_prime());
        assert!(!GameParams::new(9).unwrap().is_prime());
    }

    #[test]
    fn strategy_validation() {
        let p = GameParams::new(3).unwrap();
        assert!(matches!(
            DeterministicStrategy::new(&p, vec![0, 0], vec![0, 0, 0]),
            Err(Error::LengthMismatch { expected: 3, found: 2 })
        ));
        assert!(matches!(
            DeterministicStrategy::new(&p, vec![0, 3, 0], vec![0, 0, 0]),
            Err(Error::ResidueOutOfRange { index: 1, value: 3, d: 3 })
        ));
        let q = GameParams::new(4).unwrap();
        let s = DeterministicStrategy::new(&p, vec![0; 3], vec![0; 3]).unwrap();
        assert!(build_score_matrix(&q, &s).is_err());
    }

    #[test]
    fn score_matrix_examples() {
        let (p, s) = strat(3, &[0, 0, 1], &[1, 1, 2]);
        let m = build_score_matrix(&p, &s).unwrap();
        assert_eq!(m.zero_count(), 0);

        let (p, s) = strat(2, &[0, 0], &[0, 0]);
        let m = build_score_matrix(&p, &s).unwrap();
        assert_eq!([m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1)], [0, 0, 0, 1]);
        assert_eq!(zero_count(&m), 3);

        let (p, s) = strat(3, &[0, 0, 0], &[0, 0, 0]);
        let m = build_score_matrix(&p, &s).unwrap();
        assert_eq!(m.row(0), &[0, 0, 0]);
        assert_eq!(m.zero_count(), 5);
    }

    #[test]
    fn classical_values() {
        let (p, s) = strat(2, &[0, 0], &[0, 0]);
        assert_eq!(classical_bell_value(&p, &s).unwrap(), Ratio::new(3, 4));
        let (p, s) = strat(3, &[0, 0, 1], &[1, 1, 2]);
        assert_eq!(classical_bell_value(&p, &s).unwrap(), Ratio::new(0, 1));
    }

    #[test]
    fn behavior_of_strategy() {
        let (p, s) = strat(2, &[0, 0], &[0, 0]);
        let b = behavior_from_strategy(&p, &s).unwrap();
        for s_a in 0..2 {
            for s_b in 0..2 {
                assert_eq!(b.get(s_a, s_b, 0, 0), 1.0);
            }
        }
        b.validate(BEHAVIOR_TOL).unwrap();

        let (p, s) = strat(3, &[0, 0, 1], &[1, 1, 2]);
        let b = behavior_from_strategy(&p, &s).unwrap();
        assert_eq!(bell_value_prob(&p, &b), 0.0);
    }

    #[test]
    fn uniform_behavior_values() {
        for d in 2..=7 {
            let p = GameParams::new(d).unwrap();
            let u = BehaviorTable::uniform(d);
            u.validate(BEHAVIOR_TOL).unwrap();
            assert!((bell_value_prob(&p, &u) - 1.0 / d as f64).abs() < 1e-14);
            let c = corr_from_behavior(&p, &u);
            assert!(c.max_modulus() < 1e-14);
        }
    }

    #[test]
    fn deterministic_correlators_are_roots_of_unity() {
        let (p, s) = strat(5, &[0, 3, 1, 4, 2], &[2, 2, 0, 1, 4]);
        let c = corr_from_behavior(&p, &behavior_from_strategy(&p, &s).unwrap());
        let w = p.omega_powers();
        for n in 1..5 {
            for s_a in 0..5 {
                for s_b in 0..5 {
                    let k = (n * (s.alice()[s_a] as usize + s.bob()[s_b] as usize)) % 5;
                    assert!((c.get(n, s_a, s_b) - w[k]).norm() < 1e-14);
                    assert!((c.get(n, s_a, s_b).norm() - 1.0).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn correlation_value_examples() {
        // Δmin strategy at d = 3: S_Ji = 3·0 − 9
        let (p, s) = strat(3, &[0, 0, 1], &[1, 1, 2]);
        let c = corr_from_behavior(&p, &behavior_from_strategy(&p, &s).unwrap());
        let v = bell_value_corr(&p, &c);
        assert!((v - Complex64::new(-9.0, 0.0)).norm() < 1e-9);

        // a Δmax strategy at d = 3 found by brute force (6 zeros): S_Ji = 3·6 − 9 = 9
        let p3 = GameParams::new(3).unwrap();
        let best = (0..729u32)
            .map(|code| {
                let digits: Vec<u8> = (0..6).map(|i| ((code / 3u32.pow(i)) % 3) as u8).collect();
                DeterministicStrategy::new(&p3, digits[..3].to_vec(), digits[3..].to_vec()).unwrap()
            })
            .max_by_key(|s| s.zero_count())
            .unwrap();
        assert_eq!(best.zero_count(), 6);
        let v = bell_value_corr(&p3, &corr_from_behavior(&p3, &behavior_from_strategy(&p3, &best).unwrap()));
        assert!((v - Complex64::new(9.0, 0.0)).norm() < 1e-9);

        let zero = CorrelationTable::zeros(4);
        assert_eq!(bell_value_corr(&GameParams::new(4).unwrap(), &zero), Complex64::new(0.0, 0.0));
    }

    fn random_behavior(d: usize, seed: &[f64]) -> BehaviorTable {
        // product of local response functions mixed with a shared variable: no-signaling by construction
        let mut probs = vec![0.0; d.pow(4)];
        let k = 3;
        let weight = |i: usize| seed[i % seed.len()].abs() + 0.01;
        let lam_total: f64 = (0..k).map(weight).sum();
        for lam in 0..k {
            let pl = weight(lam) / lam_total;
            for s_a in 0..d {
                for s_b in 0..d {
                    for o_a in 0..d {
                        for o_b in 0..d {
                            let pa = weight(lam * 31 + s_a * 7 + o_a + 1);
                            let za: f64 = (0..d).map(|o| weight(lam * 31 + s_a * 7 + o + 1)).sum();
                            let pb = weight(lam * 17 + s_b * 5 + o_b + 2);
                            let zb: f64 = (0..d).map(|o| weight(lam * 17 + s_b * 5 + o + 2)).sum();
                            probs[BehaviorTable::index(d, s_a, s_b, o_a, o_b)] += pl * pa / za * pb / zb;
                        }
                    }
                }
            }
        }
        BehaviorTable::from_raw(d, probs).unwrap()
    }

    proptest! {
        #[test]
        fn conjugate_pairing_holds(d in 2usize..7, seed in proptest::collection::vec(0.0f64..1.0, 8..40)) {
            let p = GameParams::new(d).unwrap();
            let b = random_behavior(d, &seed);
            prop_assert!(b.validate(BEHAVIOR_TOL).is_ok());
            let c = corr_from_behavior(&p, &b);
            prop_assert!(c.conjugate_pairing_residual() < 1e-12);
            prop_assert!(c.max_modulus() <= 1.0 + 1e-12);
            let v = bell_value_corr(&p, &c);
            prop_assert!(v.im.abs() < SJI_IMAG_TOL);
            // the identity between the two functionals holds for any classical behavior
            let s = bell_value_prob(&p, &b);
            let dd = d as f64;
            prop_assert!((v.re - (dd.powi(3) * s - dd * dd)).abs() < 1e-9);
        }
    }
}
