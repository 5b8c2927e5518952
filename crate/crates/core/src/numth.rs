//! Integer foundations: trial-division factorization and numerical semigroups.
//!
//! The semigroup `Γ(d)` generated by the prime divisors of `d` drives most of
//! the good/bad triple criteria. By convention `Γ(1) = {0}`.

use std::collections::BTreeSet;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumthError {
    #[error("expected a positive integer, got 0")]
    Zero,
    #[error("generators {0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("generators must be at least 2, got ({0}, {1})")]
    GeneratorTooSmall(u64, u64),
}

/// Prime factorization `m = ∏ p^e`, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrimeFactorization {
    factors: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// `Some((p, s))` when the factored integer is `p^s` with `s ≥ 1`.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        match self.factors.as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }

    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

pub fn factorize(m: u64) -> Result<PrimeFactorization, NumthError> {
    if m == 0 {
        return Err(NumthError::Zero);
    }
    let mut factors = Vec::new();
    let mut rest = m;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(PrimeFactorization { factors })
}

/// Distinct prime divisors of `m` in increasing order (empty for `m ≤ 1`).
pub fn prime_divisors(m: u64) -> Vec<u64> {
    match factorize(m) {
        Ok(f) => f.primes().collect(),
        Err(_) => Vec::new(),
    }
}

/// All positive divisors of `m` in increasing order.
pub fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1u64;
    while k * k <= m {
        if m.is_multiple_of(k) {
            small.push(k);
            if k * k != m {
                large.push(m / k);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Generators of a numerical semigroup. The empty set generates `{0}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SemigroupGens {
    gens: BTreeSet<u64>,
}

impl SemigroupGens {
    pub fn new(gens: impl IntoIterator<Item = u64>) -> Self {
        Self {
            gens: gens.into_iter().filter(|&g| g > 0).collect(),
        }
    }

    /// `Γ(d)`: the semigroup generated by the prime divisors of `d`.
    pub fn gamma(d: u64) -> Self {
        Self::new(prime_divisors(d))
    }

    pub fn gens(&self) -> impl Iterator<Item = u64> + '_ {
        self.gens.iter().copied()
    }

    pub fn insert(&mut self, g: u64) {
        if g > 0 {
            self.gens.insert(g);
        }
    }

    pub fn contains(&self, m: u64) -> bool {
        semigroup_contains(self, m)
    }

    /// One representation of `m` as a multiset of generators, largest first.
    pub fn decompose(&self, m: u64) -> Option<Vec<u64>> {
        let m = usize::try_from(m).ok()?;
        // last[k] = generator used to reach k, 0 for unreachable
        let mut last = vec![0u64; m + 1];
        let mut reach = vec![false; m + 1];
        reach[0] = true;
        for k in 1..=m {
            for g in self.gens.iter().rev() {
                let g_us = *g as usize;
                if g_us <= k && reach[k - g_us] {
                    reach[k] = true;
                    last[k] = *g;
                    break;
                }
            }
        }
        if !reach[m] {
            return None;
        }
        let mut parts = Vec::new();
        let mut k = m;
        while k > 0 {
            parts.push(last[k]);
            k -= last[k] as usize;
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(parts)
    }
}

/// Membership in the semigroup generated by `g`, by a reachability table over `0..=m`.
pub fn semigroup_contains(g: &SemigroupGens, m: u64) -> bool {
    if m == 0 {
        return true;
    }
    if g.gens.contains(&m) {
        return true;
    }
    let Ok(m) = usize::try_from(m) else {
        return false;
    };
    let gens: Vec<usize> = g
        .gens
        .iter()
        .map(|&x| x as usize)
        .filter(|&x| x <= m)
        .collect();
    if gens.is_empty() {
        return false;
    }
    let mut reach = vec![false; m + 1];
    reach[0] = true;
    for k in 1..=m {
        reach[k] = gens.iter().any(|&x| x <= k && reach[k - x]);
    }
    reach[m]
}

/// Whether `m ∈ Γ(d)`.
pub fn gamma_contains(d: u64, m: u64) -> Result<bool, NumthError> {
    if d == 0 {
        return Err(NumthError::Zero);
    }
    if d == 1 {
        return Ok(m == 0);
    }
    Ok(semigroup_contains(&SemigroupGens::gamma(d), m))
}

/// Conductor of `⟨p, q⟩` for coprime `p, q ≥ 2`: every `m ≥ (p-1)(q-1)` is representable.
pub fn sylvester_bound(p: u64, q: u64) -> Result<u64, NumthError> {
    if p < 2 || q < 2 {
        return Err(NumthError::GeneratorTooSmall(p, q));
    }
    if gcd(p, q) != 1 {
        return Err(NumthError::NotCoprime(p, q));
    }
    Ok((p - 1) * (q - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(15).unwrap().factors(), &[(3, 1), (5, 1)]);
        assert_eq!(factorize(0), Err(NumthError::Zero));
        assert_eq!(factorize(97).unwrap().factors(), &[(97, 1)]);
        assert_eq!(factorize(1024).unwrap().as_prime_power(), Some((2, 10)));
    }

    #[test]
    fn factorization_multiplies_back() {
        for m in 1..2000u64 {
            let f = factorize(m).unwrap();
            assert_eq!(f.value(), m);
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn gamma_examples() {
        assert!(gamma_contains(15, 8).unwrap());
        assert!(!gamma_contains(15, 4).unwrap());
        assert!(!gamma_contains(1, 5).unwrap());
        assert!(gamma_contains(1, 0).unwrap());
        assert!(gamma_contains(7, 0).unwrap());
    }

    #[test]
    fn semigroup_examples() {
        let g35 = SemigroupGens::new([3, 5]);
        // 3a + 5b ≤ 7 gives {0, 3, 5, 6}
        let reachable: Vec<u64> = (0..=7)
            .filter(|m| (0..=2).any(|a| (0..=1).any(|b| 3 * a + 5 * b == *m)))
            .collect();
        assert_eq!(reachable, vec![0, 3, 5, 6]);
        assert!(!semigroup_contains(&g35, 7));
        assert!(semigroup_contains(&g35, 8));
        assert!(semigroup_contains(&SemigroupGens::new([2]), 4));
        assert!(!semigroup_contains(&SemigroupGens::default(), 3));
        assert_eq!(g35.decompose(11), Some(vec![5, 3, 3]));
        assert_eq!(g35.decompose(7), None);
    }

    #[test]
    fn sylvester_examples() {
        assert_eq!(sylvester_bound(3, 5), Ok(8));
        let g = SemigroupGens::new([3, 5]);
        assert!((8..40).all(|m| g.contains(m)));
        assert!(!g.contains(7));
        assert_eq!(sylvester_bound(2, 3), Ok(2));
        let g = SemigroupGens::new([2, 3]);
        assert!((2..40).all(|m| g.contains(m)));
        assert!(!g.contains(1));
        assert_eq!(sylvester_bound(2, 2), Err(NumthError::NotCoprime(2, 2)));
        assert!(sylvester_bound(1, 5).is_err());
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(30), vec![1, 2, 3, 5, 6, 10, 15, 30]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(16), vec![1, 2, 4, 8, 16]);
    }
}
