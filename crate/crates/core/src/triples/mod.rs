//! Good and bad triples `(n, d, a)`: does some symmetric `f` of degree `a`
//! complete `x_1^d - x_n^d, …, x_{n-1}^d - x_n^d` to a regular sequence?
//! Equivalently, does `f` avoid every point of `𝒱_d`?

mod cache;
mod oracle;

use std::fmt;

use thiserror::Error;

use crate::cyclo::{cyc_add, cyc_is_zero, cyc_mul, cyc_scale, power_sum_at, CycElt, RootPoint};
use crate::mpoly::SymExpr;
use crate::numth::{factorize, gamma_contains, gcd, prime_divisors, SemigroupGens};

pub use cache::{propagate, Bounds, CacheRecord, IntegrityError, TripleCache, WitnessRecord};
pub use oracle::{
    enumerate_vd, exists_vanishing_sum, is_bad_oracle, is_bad_oracle_with, num_vd_points,
    partitions, OracleOptions, OracleOutcome,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub n: u64,
    pub d: u64,
    pub a: u64,
}

impl Triple {
    pub fn new(n: u64, d: u64, a: u64) -> Result<Self, TripleError> {
        if n == 0 || d == 0 || a == 0 {
            return Err(TripleError::NonPositive(n, d, a));
        }
        Ok(Self { n, d, a })
    }

    /// `gcd(d, n)`
    pub fn g(&self) -> u64 {
        gcd(self.d, self.n)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n, self.d, self.a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TripleError {
    #[error("triple entries must be positive, got ({0},{1},{2})")]
    NonPositive(u64, u64, u64),
    #[error("undecided: no criterion applies and the oracle is disabled")]
    Undecided,
    #[error("oracle would enumerate {points} points, above the limit of {limit}")]
    TooManyPoints { points: u128, limit: u64 },
    #[error("d = {0} is too large for the oracle")]
    ModulusTooLarge(u64),
    #[error(transparent)]
    Integrity(#[from] IntegrityError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TripleStatus {
    Good,
    Bad,
}

impl TripleStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            TripleStatus::Good => "good",
            TripleStatus::Bad => "bad",
        }
    }
}

impl fmt::Display for TripleStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TripleStatus::Good => "Good",
            TripleStatus::Bad => "Bad",
        })
    }
}

/// The result that decided a triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TripleReason {
    TwoProofs,
    NNotInGamma,
    EnNonvanishing,
    SSemigroup,
    CoprimeLemma,
    PrimePower,
    Essentially,
    ABiggerThan,
    IncBadD,
    IncBadN,
    IncBadAll,
    IncGoodA,
    IncGoodDA,
    Oracle,
}

impl TripleReason {
    pub const ALL: [TripleReason; 14] = [
        TripleReason::TwoProofs,
        TripleReason::NNotInGamma,
        TripleReason::EnNonvanishing,
        TripleReason::SSemigroup,
        TripleReason::CoprimeLemma,
        TripleReason::PrimePower,
        TripleReason::Essentially,
        TripleReason::ABiggerThan,
        TripleReason::IncBadD,
        TripleReason::IncBadN,
        TripleReason::IncBadAll,
        TripleReason::IncGoodA,
        TripleReason::IncGoodDA,
        TripleReason::Oracle,
    ];

    pub fn id(self) -> &'static str {
        match self {
            TripleReason::TwoProofs => "two_proofs",
            TripleReason::NNotInGamma => "n_notin_Gamma",
            TripleReason::EnNonvanishing => "en_nonvanishing",
            TripleReason::SSemigroup => "S_semigroup",
            TripleReason::CoprimeLemma => "coprime_lemma",
            TripleReason::PrimePower => "prime_power",
            TripleReason::Essentially => "essentially",
            TripleReason::ABiggerThan => "a_bigger_than",
            TripleReason::IncBadD => "inc_bad_d",
            TripleReason::IncBadN => "inc_bad_n",
            TripleReason::IncBadAll => "inc_bad_all",
            TripleReason::IncGoodA => "inc_good_a",
            TripleReason::IncGoodDA => "inc_good_da",
            TripleReason::Oracle => "oracle",
        }
    }

    pub fn citation(self) -> &'static str {
        match self {
            TripleReason::TwoProofs => "Prop two proofs: gcd(d,n) does not divide a",
            TripleReason::NNotInGamma => "Prop n_notin_Gamma: n not in Gamma(d/gcd(a,d))",
            TripleReason::EnNonvanishing => "Remark e_n: n divides a",
            TripleReason::SSemigroup => "Prop S semigroup (with S and n)",
            TripleReason::CoprimeLemma => "Prop coprime lemma: n in Gamma(d), a not in Gamma(d)",
            TripleReason::PrimePower => "Cor prime power",
            TripleReason::Essentially => "Cor essentially",
            TripleReason::ABiggerThan => "Prop a_bigger_than",
            TripleReason::IncBadD => "Prop inc_bad(1): (n,d,a) bad => (n,kd,a) bad",
            TripleReason::IncBadN => "Prop inc_bad(2): (n,d,a) bad => (kn,d,a) bad",
            TripleReason::IncBadAll => "Prop inc_bad(3): (n,d,a) bad => (kn,kd,ka) bad",
            TripleReason::IncGoodA => "Prop inc_good(1): (n,d,a) good => (n,d,ka) good",
            TripleReason::IncGoodDA => "Prop inc_good(2): (n,d,a) good => (n,kd,ka) good",
            TripleReason::Oracle => "Lemma power sums suffice: exhaustive search of V_d",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.id() == id)
    }
}

impl fmt::Display for TripleReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Evidence for a verdict: a point of `𝒱_d` where every symmetric form of
/// degree `a` vanishes, or a product `∏ P_m · e_n^k` that never vanishes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Witness {
    Point(RootPoint),
    Polynomial {
        power_sum_parts: Vec<u64>,
        en_power: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TripleVerdict {
    pub status: TripleStatus,
    pub reason: TripleReason,
    pub witness: Option<Witness>,
}

impl TripleVerdict {
    fn good(reason: TripleReason, parts: Vec<u64>, en_power: u64) -> Self {
        Self {
            status: TripleStatus::Good,
            reason,
            witness: Some(Witness::Polynomial {
                power_sum_parts: parts,
                en_power,
            }),
        }
    }

    fn bad(reason: TripleReason, point: Option<RootPoint>) -> Self {
        Self {
            status: TripleStatus::Bad,
            reason,
            witness: point.map(Witness::Point),
        }
    }

    fn bare(status: TripleStatus, reason: TripleReason) -> Self {
        Self {
            status,
            reason,
            witness: None,
        }
    }
}

/// `Q = (ω, ω², …, ω^n)` with `ω` a primitive `g`-th root of unity: every
/// `e_j(Q)` with `g ∤ j` vanishes.
pub fn two_proofs_point(n: u64, d: u64) -> RootPoint {
    let g = gcd(d, n);
    let exps = (1..=n).map(|i| ((d / g) * i % d) as u32).collect();
    RootPoint::unnormalized(d as u32, exps).expect("exponents reduced mod d")
}

/// A point of `𝒱_d` with `P_1 = 0`, built from complete sets of `p`-th roots of
/// unity (`p | d` prime), when `n ∈ Γ(d)`.
pub fn vanishing_sum_point(n: u64, d: u64) -> Option<RootPoint> {
    let gens = SemigroupGens::gamma(d);
    let parts = gens.decompose(n)?;
    if parts.is_empty() {
        return None;
    }
    let mut exps = Vec::new();
    for p in parts {
        exps.extend((0..p).map(|k| (k * (d / p)) as u32));
    }
    RootPoint::new(d as u32, exps).ok()
}

fn s_semigroup(t: &Triple) -> SemigroupGens {
    let mut s = SemigroupGens::new(
        crate::numth::divisors(t.d)
            .into_iter()
            .filter(|&q| !gamma_contains(t.d / q, t.n).expect("positive")),
    );
    s.insert(t.n);
    s
}

fn gamma(d: u64, m: u64) -> bool {
    gamma_contains(d, m).expect("d positive")
}

/// Every numerical criterion that applies to `t`, in cascade order.
pub fn criteria_verdicts(t: &Triple) -> Vec<TripleVerdict> {
    let Triple { n, d, a } = *t;
    let g = t.g();
    let mut out = Vec::new();
    if a % g != 0 {
        out.push(TripleVerdict::bad(
            TripleReason::TwoProofs,
            Some(two_proofs_point(n, d)),
        ));
    }
    if !gamma(d / gcd(a, d), n) {
        out.push(TripleVerdict::good(TripleReason::NNotInGamma, vec![a], 0));
    }
    if a % n == 0 {
        out.push(TripleVerdict::good(
            TripleReason::EnNonvanishing,
            vec![],
            a / n,
        ));
    }
    let s = s_semigroup(t);
    if let Some(parts) = s.decompose(a) {
        let en_power = parts.iter().filter(|&&p| p == n).count() as u64;
        let rest: Vec<u64> = parts.into_iter().filter(|&p| p != n).collect();
        out.push(TripleVerdict::good(
            TripleReason::SSemigroup,
            rest,
            en_power,
        ));
    }
    if gamma(d, n) && !gamma(d, a) {
        out.push(TripleVerdict::bad(
            TripleReason::CoprimeLemma,
            vanishing_sum_point(n, d),
        ));
    }
    let fact = factorize(d).expect("d positive");
    if fact.as_prime_power().is_some() && a % g == 0 {
        out.push(TripleVerdict::bare(
            TripleStatus::Good,
            TripleReason::PrimePower,
        ));
    }
    let primes = prime_divisors(d);
    if primes.len() >= 2 && n < primes[0] + primes[1] && a % g == 0 {
        out.push(TripleVerdict::bare(
            TripleStatus::Good,
            TripleReason::Essentially,
        ));
    }
    if a % g == 0 && a * g >= (n - g) * (d - g) {
        // a = s d + t n by the Sylvester bound on (d/g, n/g)
        let gens = SemigroupGens::new([d, n]);
        let parts = gens.decompose(a).expect("above the conductor");
        let en_power = parts.iter().filter(|&&p| p == n).count() as u64;
        let pd: Vec<u64> = parts.into_iter().filter(|&p| p != n).collect();
        // when d == n every part counts as e_n
        out.push(TripleVerdict::good(TripleReason::ABiggerThan, pd, en_power));
    }
    out
}

/// The first criterion in cascade order, if any.
pub fn first_criterion(t: &Triple) -> Option<TripleVerdict> {
    criteria_verdicts(t).into_iter().next()
}

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub allow_oracle: bool,
    pub oracle: OracleOptions,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            allow_oracle: true,
            oracle: OracleOptions::default(),
        }
    }
}

/// Which stage of the cascade produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    Criterion,
    Cache,
    Oracle,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Criterion => "criterion",
            Source::Cache => "cache",
            Source::Oracle => "oracle",
        }
    }
}

/// Criteria cascade, then cache propagation, then (optionally) the oracle.
pub fn classify_triple(
    t: &Triple,
    opts: &ClassifyOptions,
    cache: Option<&TripleCache>,
) -> Result<TripleVerdict, TripleError> {
    classify_triple_traced(t, opts, cache).map(|(v, _)| v)
}

pub fn classify_triple_traced(
    t: &Triple,
    opts: &ClassifyOptions,
    cache: Option<&TripleCache>,
) -> Result<(TripleVerdict, Source), TripleError> {
    if let Some(v) = first_criterion(t) {
        return Ok((v, Source::Criterion));
    }
    if let Some(v) = cache.and_then(|c| c.get(t).cloned().or_else(|| c.implied(t))) {
        return Ok((v, Source::Cache));
    }
    if !opts.allow_oracle {
        return Err(TripleError::Undecided);
    }
    let out = is_bad_oracle_with(t, &opts.oracle)?;
    let v = if out.bad {
        TripleVerdict::bad(TripleReason::Oracle, out.witness)
    } else {
        TripleVerdict::bare(TripleStatus::Good, TripleReason::Oracle)
    };
    Ok((v, Source::Oracle))
}

/// Whether rotating every coordinate by a primitive `v`-th root of unity
/// permutes the coordinates. Cross-checked against the elementary-symmetric
/// criterion (`v | n` and `e_j(Q) = 0` for `v ∤ j`); disagreement panics.
pub fn check_v_symmetric(q: &RootPoint, v: u64) -> bool {
    assert!(v >= 1, "v must be positive");
    let d = u64::from(q.d());
    let n = q.n() as u64;
    let by_rotation = if d % v != 0 {
        false
    } else {
        let shift = d / v;
        let mut rotated: Vec<u32> = q
            .exponents()
            .iter()
            .map(|&b| ((u64::from(b) + shift) % d) as u32)
            .collect();
        rotated.sort_unstable();
        rotated == q.exponents()
    };
    let by_lemma = n.is_multiple_of(v) && {
        let e = q.elementary_values();
        (1..=n)
            .filter(|j| j % v != 0)
            .all(|j| cyc_is_zero(&e[j as usize]))
    };
    // the lemma presumes the rotation stays inside 𝒱_d
    if d % v == 0 {
        assert_eq!(
            by_rotation, by_lemma,
            "v-symmetry disagreement at {q}, v = {v}"
        );
    }
    by_rotation
}

/// Value of a symmetric expression (integer coefficients) at a point.
pub fn eval_sym_at(s: &SymExpr, q: &RootPoint) -> Option<CycElt> {
    let e = q.elementary_values();
    let d = q.d();
    let mut acc = CycElt::zero(d);
    for (m, c) in s.poly().terms() {
        if !c.is_integer() {
            return None;
        }
        let c: i64 = i64::try_from(c.to_integer()).ok()?;
        let mut term = CycElt::one(d);
        for (i, &k) in m.exponents().iter().enumerate() {
            let base = e.get(i + 1).cloned().unwrap_or_else(|| CycElt::zero(d));
            for _ in 0..k {
                term = cyc_mul(&term, &base).ok()?;
            }
        }
        acc = cyc_add(&acc, &cyc_scale(&term, c)).ok()?;
    }
    Some(acc)
}

/// Whether `∏ P_m · e_n^k` vanishes at `q` (`e_n` never does on `𝒱_d`).
pub fn witness_vanishes_at(parts: &[u64], q: &RootPoint) -> bool {
    parts.iter().any(|&m| cyc_is_zero(&power_sum_at(m, q)))
}
