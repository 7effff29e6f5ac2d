//! Small number-theory helpers shared by the search, symmetry and rank code.

use alloc::vec::Vec;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Units of `Z_d`, ascending.
pub fn units(d: usize) -> Vec<usize> {
    (1..d).filter(|&k| gcd(k as u64, d as u64) == 1).collect()
}

/// Inverse of `k` modulo `d`; `None` when `k` is not a unit.
pub fn inverse_mod(k: usize, d: usize) -> Option<usize> {
    (1..d).find(|&x| (x * k) % d == 1)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut odd = n - 1;
    let mut twos = 0;
    while odd.is_multiple_of(2) {
        odd /= 2;
        twos += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, odd, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..twos {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Canonical representatives of the orbits of `Z_d` under multiplication by units:
/// `x` is kept when it is the smallest element of `{u·x mod d}`.
pub fn unit_orbit_representatives(d: usize) -> Vec<usize> {
    let us = units(d);
    (0..d)
        .filter(|&x| us.iter().all(|&u| (u * x) % d >= x))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..2000u64 {
            let naive = n >= 2 && (2..n).all(|k| n % k != 0);
            assert_eq!(is_prime(n), naive, "n = {n}");
        }
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
    }

    #[test]
    fn unit_orbits() {
        assert_eq!(unit_orbit_representatives(7), [0, 1]);
        assert_eq!(unit_orbit_representatives(9), [0, 1, 3]);
        assert_eq!(unit_orbit_representatives(12), [0, 1, 2, 3, 4, 6]);
        assert_eq!(inverse_mod(3, 7), Some(5));
        assert_eq!(inverse_mod(2, 4), None);
    }
}
