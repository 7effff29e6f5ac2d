//! Exact arithmetic in `Z[ω]`, `ω = exp(2πi/d)`.
//!
//! Elements are integer polynomials in `ω` reduced modulo the cyclotomic
//! polynomial `Φ_d`, which gives a canonical form of degree `< φ(d)`. This lets
//! the correlation functional of a deterministic strategy be evaluated with no
//! rounding at all, for prime and composite `d` alike.

use alloc::vec;
use alloc::vec::Vec;

use crate::game::{DeterministicStrategy, GameParams};

/// Coefficients of `Φ_d`, lowest degree first.
pub fn cyclotomic_polynomial(d: usize) -> Vec<i64> {
    // x^d − 1 = Π_{e | d} Φ_e
    let mut num = vec![0i64; d + 1];
    num[0] = -1;
    num[d] = 1;
    for e in 1..d {
        if d.is_multiple_of(e) {
            num = divide_exact(&num, &cyclotomic_polynomial(e));
        }
    }
    num
}

/// Exact division by a monic divisor; panics when the remainder is nonzero.
fn divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let (q, r) = div_rem(num, den);
    assert!(r.iter().all(|&c| c == 0), "division is not exact");
    q
}

/// Polynomial long division by a monic polynomial.
fn div_rem(num: &[i64], den: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "divisor must be monic");
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        return (vec![0], rem);
    }
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        quot[i - dd] = c;
        for (j, &dc) in den.iter().enumerate() {
            rem[i - dd + j] -= c * dc;
        }
    }
    rem.truncate(dd);
    (quot, rem)
}

/// An element of `Z[ω_d]` in canonical reduced form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicInt {
    d: usize,
    coeffs: Vec<i64>,
}

impl CyclotomicInt {
    /// `Σ_k counts[k]·ω^k`, with `counts.len() == d`.
    pub fn from_power_counts(d: usize, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), d);
        let phi = cyclotomic_polynomial(d);
        let (_, mut rem) = div_rem(counts, &phi);
        rem.resize(phi.len() - 1, 0);
        Self { d, coeffs: rem }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    /// The rational integer this element equals, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs.iter().skip(1).all(|&c| c == 0) {
            Some(self.coeffs.first().copied().unwrap_or(0))
        } else {
            None
        }
    }
}

/// `S_Ji` of a deterministic strategy, evaluated exactly in `Z[ω]`.
///
/// Every term is a power of `ω`, so the sum is a count vector over exponents;
/// the result is always a rational integer (it equals `d·zeros − d²`).
pub fn exact_correlation_value(params: &GameParams, strategy: &DeterministicStrategy) -> i64 {
    let d = params.d();
    let mut counts = vec![0i64; d];
    for s_a in 0..d {
        for s_b in 0..d {
            // ω^{n·s_a·s_b}·ω^{n(o_a+o_b)} = ω^{n·x}
            let x = params.score(s_a, s_b, strategy.alice()[s_a] as usize, strategy.bob()[s_b] as usize);
            for n in 1..d {
                counts[(n * x) % d] += 1;
            }
        }
    }
    CyclotomicInt::from_power_counts(d, &counts)
        .as_integer()
        .expect("a sum of conjugate-closed powers of ω is a rational integer")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), [-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), [1, 1]);
        assert_eq!(cyclotomic_polynomial(3), [1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), [1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), [1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), [1, 0, -1, 0, 1]);
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for d in 2..=13 {
            let ones = vec![1i64; d];
            assert_eq!(CyclotomicInt::from_power_counts(d, &ones).as_integer(), Some(0));
        }
        // ω² + 1 + ω² = −1 at d = 4 (the n-sum for a score of 2)
        assert_eq!(CyclotomicInt::from_power_counts(4, &[1, 0, 2, 0]).as_integer(), Some(-1));
        assert_eq!(CyclotomicInt::from_power_counts(5, &[0, 1, 0, 0, 0]).as_integer(), None);
    }

    #[test]
    fn exact_value_of_delta_min_strategy() {
        let p = GameParams::new(3).unwrap();
        let s = DeterministicStrategy::new(&p, vec![0, 0, 1], vec![1, 1, 2]).unwrap();
        assert_eq!(exact_correlation_value(&p, &s), -9);
    }
}
