//! Degree-sequence classification and explicit constructions for symmetric,
//! alternating, and `S^(2,2)`-type regular sequences.

mod s22;

use std::fmt;

use thiserror::Error;

use crate::groebner::{verify_regular_maximal, Budget, GroebnerError};
use crate::mpoly::{MPoly, SymExpr};

pub use s22::{check_s22_split, classify_s22, construct_s22, SpechtData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("degree entries must be positive")]
    ZeroDegree,
    #[error("ambient size n must be positive")]
    ZeroAmbient,
    #[error("expected {expected} degrees, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("no construction: the verdict is {0}")]
    NotConstructible(Status),
    #[error("constructions are only available for n <= 4 without a matching")]
    Unsupported,
    #[error("internal error: no table row matched {0:?}")]
    NoRow(Vec<u64>),
}

/// A multiset of degrees in `n` variables; input order is preserved.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegSeq {
    n: usize,
    degrees: Vec<u64>,
}

impl DegSeq {
    pub fn new(n: usize, degrees: Vec<u64>) -> Result<Self, ClassifyError> {
        if n == 0 {
            return Err(ClassifyError::ZeroAmbient);
        }
        if degrees.contains(&0) {
            return Err(ClassifyError::ZeroDegree);
        }
        Ok(Self { n, degrees })
    }

    /// A full sequence: exactly `n` degrees.
    pub fn maximal(n: usize, degrees: Vec<u64>) -> Result<Self, ClassifyError> {
        if degrees.len() != n {
            return Err(ClassifyError::WrongLength {
                expected: n,
                got: degrees.len(),
            });
        }
        Self::new(n, degrees)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn sorted(&self) -> Vec<u64> {
        let mut v = self.degrees.clone();
        v.sort_unstable();
        v
    }

    fn require_maximal(&self) {
        assert_eq!(
            self.degrees.len(),
            self.n,
            "maximal degree sequence expected"
        );
    }
}

impl fmt::Display for DegSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceType {
    TrivialSn,
    Alternating,
    Standard,
    StandardPlusTrivial,
    S22,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Regular,
    NotRegular,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Regular => "Regular",
            Status::NotRegular => "NotRegular",
            Status::Unknown => "Unknown",
        })
    }
}

/// The result that decided a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Criterion {
    BetaCondition,
    DaggerCondition,
    Matching,
    SrsTwo,
    SrsThree,
    SrsFour,
    SrsException,
    Consecutive,
    OpenBeyondFour,
    AltBelowVandermonde,
    AltQuotient,
    AltDeltaSquared,
    AltPossible,
    S22SmallA,
    S22CommonFactor,
    S22UnitPair,
    S22LowDegree,
    S22Reduction,
}

impl Criterion {
    pub fn id(self) -> &'static str {
        match self {
            Criterion::BetaCondition => "beta_condition",
            Criterion::DaggerCondition => "dagger_condition",
            Criterion::Matching => "matching",
            Criterion::SrsTwo => "srs_n2",
            Criterion::SrsThree => "srs_n3",
            Criterion::SrsFour => "srs_n4",
            Criterion::SrsException => "srs_exception",
            Criterion::Consecutive => "consecutive",
            Criterion::OpenBeyondFour => "open_beyond_n4",
            Criterion::AltBelowVandermonde => "alt_below_vandermonde",
            Criterion::AltQuotient => "alt_quotient",
            Criterion::AltDeltaSquared => "alt_delta_squared",
            Criterion::AltPossible => "alt_possible",
            Criterion::S22SmallA => "s22_small_a",
            Criterion::S22CommonFactor => "s22_common_factor",
            Criterion::S22UnitPair => "s22_unit_pair",
            Criterion::S22LowDegree => "s22_low_degree",
            Criterion::S22Reduction => "s22_reduction",
        }
    }

    pub fn citation(self) -> &'static str {
        match self {
            Criterion::BetaCondition => "Prop beta condition: beta_i >= floor(n/i)",
            Criterion::DaggerCondition => "condition (dagger): #{d_j <= i} <= i",
            Criterion::Matching => "matching: (e_i)^(d/i)",
            Criterion::SrsTwo => "Theorem srs(1)",
            Criterion::SrsThree => "Theorem srs(2)",
            Criterion::SrsFour => "Theorem srs(3)",
            Criterion::SrsException => "Theorem srs(3) exception",
            Criterion::Consecutive => "Prop consecutive",
            Criterion::OpenBeyondFour => "open beyond n=4",
            Criterion::AltBelowVandermonde => "Prop reg_seq_alt: D < n(n-1)/2",
            Criterion::AltQuotient => "Prop reg_seq_alt: quotient g",
            Criterion::AltDeltaSquared => "Remark Delta^2 symmetric",
            Criterion::AltPossible => "Prop reg_seq_alt: necessary conditions only",
            Criterion::S22SmallA => "S22 Prop: a >= 2",
            Criterion::S22CommonFactor => "S22 Prop: a = 3 common factor",
            Criterion::S22UnitPair => "S22 Theorem: (c,d) != (1,1)",
            Criterion::S22LowDegree => "S22 Prop: a = 2 or 4",
            Criterion::S22Reduction => "S22 Theorem: (a-2,a-4,c,d) regular",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.citation())
    }
}

/// Which construction produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    /// `(e_i)^{d_{π(i)}/i}`
    Matching,
    /// `e1^{d1}, e3 e2^{(d2-3)/2}, (e2^3+e3^2)^{d3/6}` for three variables.
    ThreeVar,
    /// Four-variable table, rows 2 to 5.
    SymRow(u8),
    /// `S^(2,2)` with `a ∈ {2, 4}`.
    S22Low,
    /// `S^(2,2)`, even `a`, table row.
    S22Even(u8),
    /// `S^(2,2)`, odd `a`, table row.
    S22Odd(u8),
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Matching => write!(f, "matching"),
            Construction::ThreeVar => write!(f, "n=3 construction"),
            Construction::SymRow(r) => write!(f, "symmetric table row {r}"),
            Construction::S22Low => write!(f, "S22 low degree"),
            Construction::S22Even(r) => write!(f, "S22 even table row {r}"),
            Construction::S22Odd(r) => write!(f, "S22 odd table row {r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub construction: Construction,
    /// Degrees in the role order the construction uses.
    pub roles: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructedSeq {
    pub n: usize,
    /// Symmetric generators, in role order (`f1, f2` for `S^(2,2)`).
    pub generators: Vec<SymExpr>,
    pub specht: Option<SpechtData>,
    pub provenance: Provenance,
}

impl ConstructedSeq {
    /// Weighted degrees: Specht pair first (if any), then the symmetric generators.
    pub fn degrees(&self) -> Vec<u64> {
        let mut out = Vec::new();
        if let Some(s) = &self.specht {
            out.extend([s.a, s.a]);
        }
        out.extend(
            self.generators
                .iter()
                .map(|g| u64::from(g.degree().unwrap_or(0))),
        );
        out
    }

    /// Gröbner certification: e-coordinates for symmetric sequences,
    /// the three-way split for `S^(2,2)`.
    pub fn verify(&self, budget: Budget) -> Result<bool, GroebnerError> {
        match &self.specht {
            None => {
                let weights: Vec<u32> = (1..=self.n as u32).collect();
                let polys: Vec<MPoly> = self.generators.iter().map(|g| g.poly().clone()).collect();
                verify_regular_maximal(&polys, &weights, budget)
            }
            Some(s) => check_s22_split(
                &s.h,
                &s.hp,
                &self.generators[0],
                &self.generators[1],
                budget,
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub reason: Criterion,
    pub detail: Option<String>,
    pub certificate: Option<ConstructedSeq>,
}

impl Verdict {
    fn new(status: Status, reason: Criterion) -> Self {
        Self {
            status,
            reason,
            detail: None,
            certificate: None,
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// Per-`i` report of condition (*).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaReport {
    /// `beta[i-1] = #{j : i | d_j}`
    pub beta: Vec<usize>,
    /// First `i` with `beta_i < floor(n/i)`.
    pub violated: Option<usize>,
}

pub fn check_star(ds: &DegSeq) -> (bool, BetaReport) {
    ds.require_maximal();
    let n = ds.n;
    let beta: Vec<usize> = (1..=n as u64)
        .map(|i| ds.degrees.iter().filter(|&&d| d % i == 0).count())
        .collect();
    let violated = (1..=n).find(|&i| beta[i - 1] < n / i);
    (violated.is_none(), BetaReport { beta, violated })
}

/// First `i` with `#{d_j ≤ i} > i`, if any.
fn dagger_violation(ds: &DegSeq) -> Option<usize> {
    (1..=ds.n).find(|&i| ds.degrees.iter().filter(|&&d| d <= i as u64).count() > i)
}

pub fn check_dagger(ds: &DegSeq) -> bool {
    ds.require_maximal();
    dagger_violation(ds).is_none()
}

pub fn is_permissible(ds: &DegSeq) -> bool {
    check_star(ds).0 && check_dagger(ds)
}

/// `perm[i-1]` is the index of the degree assigned to slot `i`, with `i | d`.
pub fn find_matching(ds: &DegSeq) -> Option<Vec<usize>> {
    ds.require_maximal();
    let n = ds.n;
    // owner[j] = slot currently holding degree j
    let mut owner: Vec<Option<usize>> = vec![None; n];
    fn augment(slot: usize, degs: &[u64], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for j in 0..degs.len() {
            if !degs[j].is_multiple_of(slot as u64 + 1) || seen[j] {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|s| augment(s, degs, seen, owner)) {
                owner[j] = Some(slot);
                return true;
            }
        }
        false
    }
    // larger slots have fewer candidates; place them first
    for slot in (0..n).rev() {
        let mut seen = vec![false; n];
        if !augment(slot, &ds.degrees, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut perm = vec![0; n];
    for (j, s) in owner.iter().enumerate() {
        perm[s.expect("perfect matching")] = j;
    }
    Some(perm)
}

fn is_consecutive(sorted: &[u64]) -> bool {
    sorted.windows(2).all(|w| w[1] == w[0] + 1)
}

/// Whether a four-entry multiset is one of the permissible non-regular exceptions:
/// three entries forming `{1,2,5}`, `{2,2,5}` or `{5,2,5}` and a multiple of 12.
pub fn is_srs_exception(degrees: &[u64]) -> bool {
    if degrees.len() != 4 {
        return false;
    }
    const TRIPLES: [[u64; 3]; 3] = [[1, 2, 5], [2, 2, 5], [2, 5, 5]];
    (0..4).any(|k| {
        if !degrees[k].is_multiple_of(12) {
            return false;
        }
        let mut rest: Vec<u64> = (0..4).filter(|&i| i != k).map(|i| degrees[i]).collect();
        rest.sort_unstable();
        TRIPLES.iter().any(|t| rest == t)
    })
}

pub fn classify_symmetric(ds: &DegSeq) -> Verdict {
    ds.require_maximal();
    let n = ds.n;
    let (star, report) = check_star(ds);
    if !star {
        let i = report.violated.expect("violation recorded");
        return Verdict::new(Status::NotRegular, Criterion::BetaCondition).with_detail(format!(
            "beta_{i} = {} < {}",
            report.beta[i - 1],
            n / i
        ));
    }
    if let Some(i) = dagger_violation(ds) {
        return Verdict::new(Status::NotRegular, Criterion::DaggerCondition).with_detail(format!(
            "{} entries <= {i}",
            ds.degrees.iter().filter(|&&d| d <= i as u64).count()
        ));
    }
    if n == 4 && is_srs_exception(&ds.degrees) {
        return Verdict::new(Status::NotRegular, Criterion::SrsException);
    }
    let decisive = match n {
        1 | 2 => Some(Criterion::SrsTwo),
        3 => Some(Criterion::SrsThree),
        4 => Some(Criterion::SrsFour),
        _ => None,
    };
    if let Some(perm) = find_matching(ds) {
        let mut v = Verdict::new(Status::Regular, Criterion::Matching);
        v.certificate = Some(matching_construction(ds, &perm));
        return v;
    }
    match decisive {
        Some(c) => {
            let mut v = Verdict::new(Status::Regular, c);
            let cert = construct_without_matching(ds)
                .expect("a permissible non-exception has a table row");
            v.certificate = Some(cert);
            v
        }
        None if is_consecutive(&ds.sorted()) => {
            Verdict::new(Status::Regular, Criterion::Consecutive)
        }
        None => Verdict::new(Status::Unknown, Criterion::OpenBeyondFour),
    }
}

pub fn construct_symmetric(ds: &DegSeq) -> Result<ConstructedSeq, ClassifyError> {
    let v = classify_symmetric(ds);
    match (v.status, v.certificate) {
        (Status::Regular, Some(c)) => Ok(c),
        (Status::Regular, None) => Err(ClassifyError::Unsupported),
        (s, _) => Err(ClassifyError::NotConstructible(s)),
    }
}

fn e(n: usize, i: usize) -> SymExpr {
    SymExpr::e(n, i)
}

fn pow(s: &SymExpr, k: u64) -> SymExpr {
    s.pow(u32::try_from(k).expect("exponent fits in u32"))
}

fn sum(parts: &[SymExpr]) -> SymExpr {
    parts
        .iter()
        .skip(1)
        .fold(parts[0].clone(), |acc, p| &acc + p)
}

fn prod(parts: &[SymExpr]) -> SymExpr {
    parts
        .iter()
        .skip(1)
        .fold(parts[0].clone(), |acc, p| &acc * p)
}

fn matching_construction(ds: &DegSeq, perm: &[usize]) -> ConstructedSeq {
    let n = ds.n;
    let roles: Vec<u64> = perm.iter().map(|&j| ds.degrees[j]).collect();
    let generators = roles
        .iter()
        .enumerate()
        .map(|(i, &d)| pow(&e(n, i + 1), d / (i as u64 + 1)))
        .collect();
    ConstructedSeq {
        n,
        generators,
        specht: None,
        provenance: Provenance {
            construction: Construction::Matching,
            roles,
        },
    }
}

/// `d = 2p + 3q` with `q = d mod 2`.
pub(crate) fn two_three(d: u64) -> (u64, u64) {
    let q = d % 2;
    (((d - 3 * q) / 2), q)
}

/// `d = 3p + 4q` with the lexicographically smallest `(p, q)`, `p ≥ 1`.
fn three_four(d: u64) -> Option<(u64, u64)> {
    (1..=d / 3)
        .find(|p| (d - 3 * p).is_multiple_of(4))
        .map(|p| (p, (d - 3 * p) / 4))
}

fn construct_without_matching(ds: &DegSeq) -> Result<ConstructedSeq, ClassifyError> {
    match ds.n {
        3 => construct_three(ds),
        4 => construct_four(ds),
        _ => Err(ClassifyError::Unsupported),
    }
}

fn odd_non3(d: u64) -> bool {
    d % 2 == 1 && !d.is_multiple_of(3)
}

fn construct_three(ds: &DegSeq) -> Result<ConstructedSeq, ClassifyError> {
    let d = &ds.degrees;
    for k in 0..3 {
        if !d[k].is_multiple_of(6) {
            continue;
        }
        let mut rest: Vec<u64> = (0..3).filter(|&i| i != k).map(|i| d[i]).collect();
        rest.sort_unstable();
        let (d1, d2) = (rest[0], rest[1]);
        if odd_non3(d1) && odd_non3(d2) && d2 >= 5 {
            let generators = vec![
                pow(&e(3, 1), d1),
                &e(3, 3) * &pow(&e(3, 2), (d2 - 3) / 2),
                pow(&sum(&[pow(&e(3, 2), 3), pow(&e(3, 3), 2)]), d[k] / 6),
            ];
            return Ok(ConstructedSeq {
                n: 3,
                generators,
                specht: None,
                provenance: Provenance {
                    construction: Construction::ThreeVar,
                    roles: vec![d1, d2, d[k]],
                },
            });
        }
    }
    Err(ClassifyError::NoRow(d.clone()))
}

fn construct_four(ds: &DegSeq) -> Result<ConstructedSeq, ClassifyError> {
    let d = &ds.degrees;
    let n = 4;
    let e2_e3 = sum(&[pow(&e(n, 2), 3), pow(&e(n, 3), 2)]);
    let big = sum(&[pow(&e(n, 2), 6), pow(&e(n, 3), 4), pow(&e(n, 4), 3)]);
    let done = |generators: Vec<SymExpr>, row: u8, roles: Vec<u64>| ConstructedSeq {
        n,
        generators,
        specht: None,
        provenance: Provenance {
            construction: Construction::SymRow(row),
            roles,
        },
    };

    // d3 a multiple of 6, d4 a multiple of 4, the rest odd and prime to 3
    for k3 in 0..4 {
        for k4 in 0..4 {
            if k3 == k4 || !d[k3].is_multiple_of(6) || !d[k4].is_multiple_of(4) {
                continue;
            }
            let mut rest: Vec<u64> = (0..4)
                .filter(|&i| i != k3 && i != k4)
                .map(|i| d[i])
                .collect();
            rest.sort_unstable();
            let (d1, d2) = (rest[0], rest[1]);
            if odd_non3(d1) && odd_non3(d2) && d2 >= 5 {
                let generators = vec![
                    pow(&e(n, 1), d1),
                    &e(n, 3) * &pow(&e(n, 2), (d2 - 3) / 2),
                    pow(&e2_e3, d[k3] / 6),
                    pow(&e(n, 4), d[k4] / 4),
                ];
                return Ok(done(generators, 2, vec![d1, d2, d[k3], d[k4]]));
            }
        }
    }

    // d4 = 12δ, d3 the largest remaining even entry
    for k4 in 0..4 {
        if !d[k4].is_multiple_of(12) {
            continue;
        }
        let delta = d[k4] / 12;
        let rest: Vec<u64> = (0..4).filter(|&i| i != k4).map(|i| d[i]).collect();
        let Some(&d3) = rest.iter().filter(|&&x| x % 2 == 0).max() else {
            continue;
        };
        let pos = rest.iter().position(|&x| x == d3).expect("present");
        let mut pair: Vec<u64> = rest
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pos)
            .map(|(_, &x)| x)
            .collect();
        pair.sort_unstable();
        let (d1, d2) = (pair[0], pair[1]);
        if d1 % 3 == 0 || d2 % 3 == 0 {
            continue;
        }
        let roles = vec![d1, d2, d3, d[k4]];
        if d3 >= 4 && d2 >= 2 {
            let (p, q) = two_three(d2);
            let (f, row) = if d3 % 4 == 0 {
                (pow(&e(n, 4), d3 / 4), 3)
            } else {
                (&pow(&e(n, 4), (d3 - 6) / 4) * &e2_e3, 4)
            };
            let generators = vec![
                pow(&e(n, 1), d1),
                &pow(&e(n, 2), p) * &pow(&e(n, 3), q),
                f,
                pow(&big, delta),
            ];
            return Ok(done(generators, row, roles));
        }
        if d3 == 2 && d2 >= 7 && d2 % 2 == 1 {
            let (p, q) = three_four(d2).expect("d2 >= 7 odd is 3p + 4q");
            let generators = vec![
                pow(&e(n, 1), d1),
                &pow(&e(n, 3), p) * &pow(&e(n, 4), q),
                e(n, 2),
                pow(&sum(&[pow(&e(n, 3), 4), pow(&e(n, 4), 3)]), delta),
            ];
            return Ok(done(generators, 5, roles));
        }
    }
    Err(ClassifyError::NoRow(d.clone()))
}

/// Regularity of `f_1..f_{n-1}, gΔ` where `Δ` is the Vandermonde and `gΔ` has degree `big_d`.
pub fn classify_alternating(ds: &DegSeq, big_d: u64) -> Verdict {
    let n = ds.n;
    assert_eq!(ds.degrees.len() + 1, n, "n - 1 symmetric degrees expected");
    let delta = (n * (n - 1) / 2) as u64;
    if big_d < delta {
        return Verdict::new(Status::NotRegular, Criterion::AltBelowVandermonde)
            .with_detail(format!("D = {big_d} < {delta}"));
    }
    let with = |extra: u64| {
        let mut v = ds.degrees.clone();
        v.push(extra);
        DegSeq::maximal(n, v).expect("positive entries")
    };
    let a = big_d - delta;
    if a > 0 {
        let inner = classify_symmetric(&with(a));
        if inner.status == Status::NotRegular {
            return Verdict::new(Status::NotRegular, Criterion::AltQuotient).with_detail(format!(
                "{} is not regular ({})",
                with(a),
                inner.reason.id()
            ));
        }
    }
    let sq = with(2 * delta);
    let inner = classify_symmetric(&sq);
    if inner.status == Status::NotRegular {
        return Verdict::new(Status::NotRegular, Criterion::AltDeltaSquared)
            .with_detail(format!("{sq} is not regular ({})", inner.reason.id()));
    }
    Verdict::new(Status::Unknown, Criterion::AltPossible)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(n: usize, d: &[u64]) -> DegSeq {
        DegSeq::maximal(n, d.to_vec()).unwrap()
    }

    #[test]
    fn star_examples() {
        assert!(check_star(&ds(4, &[2, 5, 2, 12])).0);
        let (ok, rep) = check_star(&ds(3, &[1, 3, 5]));
        assert!(!ok);
        assert_eq!(rep.violated, Some(2));
        assert_eq!(rep.beta, vec![3, 0, 1]);
        for n in 1..=8usize {
            for a in 1..30u64 {
                let v: Vec<u64> = (a..a + n as u64).collect();
                assert!(check_star(&ds(n, &v)).0, "{v:?}");
            }
        }
    }

    #[test]
    fn dagger_examples() {
        assert!(!check_dagger(&ds(3, &[1, 1, 2])));
        assert!(check_dagger(&ds(3, &[1, 2, 3])));
        assert!(check_dagger(&ds(4, &[2, 2, 5, 12])));
        assert!(is_permissible(&ds(4, &[1, 2, 3, 4])));
        assert!(!is_permissible(&ds(3, &[1, 1, 2])));
        assert!(is_permissible(&ds(4, &[2, 5, 2, 12])));
    }

    #[test]
    fn matching_examples() {
        assert_eq!(find_matching(&ds(4, &[1, 2, 3, 4])), Some(vec![0, 1, 2, 3]));
        let d = [3, 5, 2, 12];
        let m = find_matching(&ds(4, &d)).unwrap();
        for (slot, &j) in m.iter().enumerate() {
            assert_eq!(d[j] % (slot as u64 + 1), 0);
        }
        assert_eq!(find_matching(&ds(4, &[5, 5, 2, 12])), None);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_symmetric(&ds(2, &[3, 4])).status, Status::Regular);
        let v = classify_symmetric(&ds(4, &[2, 2, 5, 24]));
        assert_eq!(
            (v.status, v.reason),
            (Status::NotRegular, Criterion::SrsException)
        );
        let v = classify_symmetric(&ds(5, &[3, 4, 5, 6, 7]));
        assert_eq!(v.status, Status::Regular);
        let v = classify_symmetric(&ds(5, &[1, 2, 3, 4, 5]));
        assert_eq!((v.status, v.reason), (Status::Regular, Criterion::Matching));
        let v = classify_symmetric(&ds(2, &[3, 5]));
        assert_eq!(v.status, Status::NotRegular);
        let v = classify_symmetric(&ds(4, &[2, 5, 2, 12]));
        assert_eq!(v.reason.citation(), "Theorem srs(3) exception");
    }

    #[test]
    fn n5_without_certificate_is_unknown() {
        // permissible, no matching, not consecutive
        let d = ds(5, &[1, 7, 12, 20, 30]);
        assert!(is_permissible(&d));
        assert!(find_matching(&d).is_none());
        let v = classify_symmetric(&d);
        assert_eq!(
            (v.status, v.reason),
            (Status::Unknown, Criterion::OpenBeyondFour)
        );
    }

    fn gens_text(c: &ConstructedSeq) -> Vec<String> {
        c.generators.iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn construct_examples() {
        let c = construct_symmetric(&ds(4, &[1, 5, 6, 4])).unwrap();
        assert_eq!(c.provenance.construction, Construction::SymRow(2));
        assert_eq!(gens_text(&c), vec!["e1", "e2*e3", "e2^3 + e3^2", "e4"]);
        let c = construct_symmetric(&ds(4, &[2, 3, 4, 8])).unwrap();
        assert_eq!(c.provenance.construction, Construction::Matching);
        let mut got = gens_text(&c);
        got.sort();
        let mut want = vec!["e1^2", "e3", "e2^2", "e4^2"];
        want.sort();
        assert_eq!(got, want);
        let c = construct_symmetric(&ds(3, &[1, 5, 6])).unwrap();
        assert_eq!(c.provenance.construction, Construction::ThreeVar);
        assert_eq!(gens_text(&c), vec!["e1", "e2*e3", "e2^3 + e3^2"]);
        assert!(construct_symmetric(&ds(4, &[2, 2, 5, 12])).is_err());
    }

    #[test]
    fn constructions_verify() {
        for d in [
            [1u64, 5, 6, 4],
            [1, 7, 2, 24],
            [1, 5, 14, 12],
            [1, 7, 2, 12],
            [5, 7, 10, 12],
            [1, 2, 8, 12],
            [7, 11, 2, 12],
        ] {
            let c = construct_symmetric(&ds(4, &d)).unwrap();
            let mut degs = c.degrees();
            degs.sort_unstable();
            let mut want = d.to_vec();
            want.sort_unstable();
            assert_eq!(degs, want, "{d:?}");
            assert!(
                c.verify(Budget::default()).unwrap(),
                "{d:?} via {}",
                c.provenance.construction
            );
        }
    }

    #[test]
    fn decompositions() {
        assert_eq!(two_three(7), (2, 1));
        assert_eq!(two_three(8), (4, 0));
        assert_eq!(three_four(7), Some((1, 1)));
        assert_eq!(three_four(11), Some((1, 2)));
        assert_eq!(three_four(13), Some((3, 1)));
    }

    #[test]
    fn alternating_examples() {
        let v = classify_alternating(&DegSeq::new(4, vec![1, 2, 5]).unwrap(), 18);
        assert_eq!(v.status, Status::NotRegular);
        let v = classify_alternating(&DegSeq::new(4, vec![1, 2, 5]).unwrap(), 6);
        assert_eq!(
            (v.status, v.reason),
            (Status::NotRegular, Criterion::AltDeltaSquared)
        );
        let v = classify_alternating(&DegSeq::new(2, vec![1]).unwrap(), 1);
        assert_eq!(
            (v.status, v.reason),
            (Status::Unknown, Criterion::AltPossible)
        );
        let v = classify_alternating(&DegSeq::new(3, vec![1, 2]).unwrap(), 2);
        assert_eq!(v.reason, Criterion::AltBelowVandermonde);
    }
}
