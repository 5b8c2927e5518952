//! Exact arithmetic in `ℤ[ζ_d]` and power sums at root-of-unity points.
//!
//! Elements are kept in group-ring form: a length-`d` integer vector whose
//! entry `k` is the coefficient of `ζ_d^k`. The form is not canonical; zero
//! tests reduce `Σ c_k t^k` modulo the monic `Φ_d`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::numth::{gcd, prime_divisors};
use crate::upoly::cyclotomic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("{s} is not a unit modulo {d}")]
    NotUnit { s: i64, d: u32 },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("invalid root point: {0}")]
    BadPoint(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycElt {
    d: u32,
    coeffs: Vec<i64>,
}

impl CycElt {
    pub fn zero(d: u32) -> Self {
        assert!(d > 0, "modulus must be positive");
        Self {
            d,
            coeffs: vec![0; d as usize],
        }
    }

    pub fn one(d: u32) -> Self {
        Self::root(d, 0)
    }

    /// `ζ_d^k`
    pub fn root(d: u32, k: i64) -> Self {
        let mut e = Self::zero(d);
        e.coeffs[k.rem_euclid(d as i64) as usize] = 1;
        e
    }

    pub fn from_coeffs(d: u32, coeffs: Vec<i64>) -> Result<Self, CycloError> {
        if d == 0 {
            return Err(CycloError::ZeroModulus);
        }
        if coeffs.len() != d as usize {
            return Err(CycloError::BadPoint(format!(
                "expected {d} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Self { d, coeffs })
    }

    pub fn modulus(&self) -> u32 {
        self.d
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Adds `c · ζ^k` in place.
    pub fn add_term(&mut self, k: i64, c: i64) {
        let idx = k.rem_euclid(self.d as i64) as usize;
        self.coeffs[idx] += c;
    }

    pub fn neg(&self) -> Self {
        Self {
            d: self.d,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplication by `ζ^k`: a cyclic shift of coefficients.
    pub fn rotate(&self, k: i64) -> Self {
        let d = self.d as usize;
        let shift = k.rem_euclid(d as i64) as usize;
        let mut coeffs = vec![0; d];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(i + shift) % d] = *c;
        }
        Self { d: self.d, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        cyc_is_zero(self)
    }
}

impl fmt::Display for CycElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*z{}^{k}", self.d)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn check_moduli(a: &CycElt, b: &CycElt) -> Result<(), CycloError> {
    if a.d != b.d {
        return Err(CycloError::ModulusMismatch(a.d, b.d));
    }
    Ok(())
}

pub fn cyc_add(a: &CycElt, b: &CycElt) -> Result<CycElt, CycloError> {
    check_moduli(a, b)?;
    let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
    Ok(CycElt { d: a.d, coeffs })
}

pub fn cyc_sub(a: &CycElt, b: &CycElt) -> Result<CycElt, CycloError> {
    cyc_add(a, &b.neg())
}

/// Group-ring product: exponents add modulo `d`.
pub fn cyc_mul(a: &CycElt, b: &CycElt) -> Result<CycElt, CycloError> {
    check_moduli(a, b)?;
    let d = a.d as usize;
    let mut coeffs = vec![0i64; d];
    for (i, &x) in a.coeffs.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.coeffs.iter().enumerate() {
            if y != 0 {
                coeffs[(i + j) % d] += x * y;
            }
        }
    }
    Ok(CycElt { d: a.d, coeffs })
}

pub fn cyc_scale(a: &CycElt, c: i64) -> CycElt {
    CycElt {
        d: a.d,
        coeffs: a.coeffs.iter().map(|x| x * c).collect(),
    }
}

fn phi_table() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static TABLE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn phi_i64(d: u32) -> Arc<Vec<i64>> {
    if let Some(p) = phi_table().read().expect("poisoned").get(&d) {
        return Arc::clone(p);
    }
    let coeffs = Arc::new(
        cyclotomic(d as u64)
            .to_i64()
            .expect("cyclotomic coefficients fit in i64 at this scale"),
    );
    phi_table()
        .write()
        .expect("poisoned")
        .entry(d)
        .or_insert_with(|| Arc::clone(&coeffs));
    coeffs
}

/// Whether `a = 0` in `ℤ[ζ_d]`.
pub fn cyc_is_zero(a: &CycElt) -> bool {
    if a.coeffs.iter().all(|&c| c == 0) {
        return true;
    }
    let phi = phi_i64(a.d);
    match reduce_i128(&a.coeffs, &phi) {
        Some(rem) => rem.iter().all(|&c| c == 0),
        None => reduce_big(&a.coeffs, &phi).iter().all(|c| c.is_zero()),
    }
}

// Remainder of Σ c_k t^k modulo the monic phi; None on i128 overflow.
fn reduce_i128(coeffs: &[i64], phi: &[i64]) -> Option<Vec<i128>> {
    let deg = phi.len() - 1;
    let mut r: Vec<i128> = coeffs.iter().map(|&c| c as i128).collect();
    for k in (deg..r.len()).rev() {
        let lead = r[k];
        if lead == 0 {
            continue;
        }
        let base = k - deg;
        for (j, &pc) in phi.iter().enumerate() {
            r[base + j] = r[base + j].checked_sub(lead.checked_mul(pc as i128)?)?;
        }
    }
    r.truncate(deg);
    Some(r)
}

fn reduce_big(coeffs: &[i64], phi: &[i64]) -> Vec<BigInt> {
    let deg = phi.len() - 1;
    let mut r: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    for k in (deg..r.len()).rev() {
        if r[k].is_zero() {
            continue;
        }
        let lead = r[k].clone();
        let base = k - deg;
        for (j, &pc) in phi.iter().enumerate() {
            r[base + j] -= &lead * pc;
        }
    }
    r.truncate(deg);
    r
}

/// Galois automorphism `ζ ↦ ζ^s` for `s` coprime to `d`.
pub fn galois_conj(a: &CycElt, s: i64) -> Result<CycElt, CycloError> {
    let d = a.d as i64;
    if gcd(s.rem_euclid(d) as u64, d as u64) != 1 {
        return Err(CycloError::NotUnit { s, d: a.d });
    }
    let mut out = CycElt::zero(a.d);
    for (k, &c) in a.coeffs.iter().enumerate() {
        if c != 0 {
            out.add_term(k as i64 * s, c);
        }
    }
    Ok(out)
}

/// A point of `𝒱_d`: coordinates `ζ_d^{b_i}`, stored as a sorted multiset of
/// exponents that contains at least one `0` (the normalized last coordinate).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootPoint {
    d: u32,
    exponents: Vec<u32>,
}

impl RootPoint {
    pub fn new(d: u32, mut exponents: Vec<u32>) -> Result<Self, CycloError> {
        if d == 0 {
            return Err(CycloError::ZeroModulus);
        }
        if exponents.is_empty() {
            return Err(CycloError::BadPoint("no coordinates".into()));
        }
        if let Some(&b) = exponents.iter().find(|&&b| b >= d) {
            return Err(CycloError::BadPoint(format!("exponent {b} not below {d}")));
        }
        if !exponents.contains(&0) {
            return Err(CycloError::BadPoint("no coordinate equal to 1".into()));
        }
        exponents.sort_unstable();
        Ok(Self { d, exponents })
    }

    /// A multiset of `d`-th roots of unity without the normalization constraint.
    pub fn unnormalized(d: u32, mut exponents: Vec<u32>) -> Result<Self, CycloError> {
        if d == 0 {
            return Err(CycloError::ZeroModulus);
        }
        if let Some(&b) = exponents.iter().find(|&&b| b >= d) {
            return Err(CycloError::BadPoint(format!("exponent {b} not below {d}")));
        }
        exponents.sort_unstable();
        Ok(Self { d, exponents })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Coordinates raised to the `k`-th power.
    pub fn pow(&self, k: u64) -> Self {
        let d = self.d as u64;
        let exponents = self
            .exponents
            .iter()
            .map(|&b| ((b as u64 * k) % d) as u32)
            .collect();
        Self::unnormalized(self.d, exponents).expect("exponents reduced mod d")
    }

    /// Elementary symmetric values `e_0(Q), …, e_n(Q)`.
    pub fn elementary_values(&self) -> Vec<CycElt> {
        let n = self.n();
        let mut e = vec![CycElt::zero(self.d); n + 1];
        e[0] = CycElt::one(self.d);
        for (count, &b) in self.exponents.iter().enumerate() {
            for j in (1..=count + 1).rev() {
                let shifted = e[j - 1].rotate(b as i64);
                e[j] = cyc_add(&e[j], &shifted).expect("same modulus");
            }
        }
        e
    }
}

impl fmt::Display for RootPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}^(", self.d)?;
        for (i, b) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

/// `P_a(Q) = Σ ζ^{a·b_i}`.
pub fn power_sum_at(a: u64, q: &RootPoint) -> CycElt {
    let d = q.d as u64;
    let mut out = CycElt::zero(q.d);
    for &b in &q.exponents {
        out.coeffs[((a % d) * b as u64 % d) as usize] += 1;
    }
    out
}

/// Ring map `ℤ[ζ_d] → 𝔽_p` sending `ζ_d` to a primitive `d`-th root of unity
/// mod a prime `p ≡ 1 (mod d)`. A nonzero image proves the element is nonzero;
/// a zero image is inconclusive.
#[derive(Debug, Clone)]
pub struct ModularEmbedding {
    p: u64,
    powers: Vec<u64>,
}

impl ModularEmbedding {
    pub fn new(d: u32) -> Self {
        let d64 = d as u64;
        let mut k = (1u64 << 30) / d64 + 1;
        let p = loop {
            let cand = k * d64 + 1;
            if is_prime_trial(cand) {
                break cand;
            }
            k += 1;
        };
        let exps: Vec<u64> = prime_divisors(d64).into_iter().map(|q| d64 / q).collect();
        let root = (2..p)
            .map(|x| pow_mod(x, (p - 1) / d64, p))
            .find(|&r| exps.iter().all(|&e| pow_mod(r, e, p) != 1))
            .expect("a primitive root exists mod p");
        let powers = (0..d64).map(|k| pow_mod(root, k, p)).collect();
        Self { p, powers }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Image of `Σ_i ζ^{exps_i · m}`.
    pub fn power_sum(&self, exps: &[u32], m: u64) -> u64 {
        let d = self.powers.len() as u64;
        let m = m % d;
        exps.iter()
            .map(|&b| self.powers[((b as u64 * m) % d) as usize])
            .fold(0u64, |acc, x| (acc + x) % self.p)
    }

    pub fn image(&self, a: &CycElt) -> u64 {
        let p = self.p as i128;
        let mut acc: i128 = 0;
        for (k, &c) in a.coeffs.iter().enumerate() {
            acc = (acc + (c as i128).rem_euclid(p) * self.powers[k] as i128) % p;
        }
        acc as u64
    }
}

fn is_prime_trial(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= m {
        if m.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}
