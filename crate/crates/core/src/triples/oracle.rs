//! Exhaustive search over `𝒱_d`.
//!
//! A symmetric form of degree `a` is a combination of `P_λ` with `λ ⊢ a`, parts
//! at most `n`, so `(n,d,a)` is bad at `Q` exactly when `a` is not a sum of
//! parts `m ≤ n` with `P_m(Q) ≠ 0`. Whether `P_m(Q)` vanishes depends only on
//! `gcd(m, d)`, and never happens when `d | m`.

use std::collections::HashMap;

use rayon::prelude::*;

use super::{Triple, TripleError};
use crate::cyclo::{cyc_is_zero, power_sum_at, ModularEmbedding, RootPoint};
use crate::numth::{gcd, SemigroupGens};

const MAX_MODULUS: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    /// Refuse to start when `|𝒱_d|` exceeds this; `None` means no limit.
    pub max_points: Option<u64>,
    pub parallel: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            max_points: Some(2_000_000),
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOutcome {
    pub bad: bool,
    /// The first bad point in enumeration order.
    pub witness: Option<RootPoint>,
    pub points: u128,
}

/// `|𝒱_d| = C(d+n-2, n-1)`, saturating.
pub fn num_vd_points(n: u64, d: u64) -> u128 {
    let k = u128::from(n.saturating_sub(1));
    let m = u128::from(d + n).saturating_sub(2);
    let mut acc: u128 = 1;
    for i in 1..=k {
        // exact at every step: acc = C(m-k+i, i)
        acc = match acc.checked_mul(m - k + i) {
            Some(x) => x / i,
            None => return u128::MAX,
        };
    }
    acc
}

/// Points of `𝒱_d` in canonical order: the free exponents form a nondecreasing
/// sequence, enumerated lexicographically, and a `0` is adjoined.
pub fn enumerate_vd(n: u64, d: u64) -> impl Iterator<Item = RootPoint> {
    assert!(n >= 1 && d >= 1 && d <= u64::from(u32::MAX));
    let d = d as u32;
    let len = (n - 1) as usize;
    let mut cur: Option<Vec<u32>> = Some(vec![0; len]);
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        cur = next_multiset(&out, d);
        let mut exps = out;
        exps.push(0);
        Some(RootPoint::new(d, exps).expect("valid exponents"))
    })
}

fn next_multiset(cur: &[u32], d: u32) -> Option<Vec<u32>> {
    let mut next = cur.to_vec();
    let i = next.iter().rposition(|&b| b + 1 < d)?;
    let v = next[i] + 1;
    for x in &mut next[i..] {
        *x = v;
    }
    Some(next)
}

/// Partitions of `a` into parts at most `max_part`, parts nonincreasing, in
/// reverse lexicographic order.
pub fn partitions(a: u64, max_part: u64) -> Vec<Vec<u64>> {
    fn go(rest: u64, cap: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(a, max_part, &mut Vec::new(), &mut out);
    out
}

/// Unbounded exhaustive search; the first witness in canonical order.
pub fn is_bad_oracle(t: &Triple) -> (bool, Option<RootPoint>) {
    let out = is_bad_oracle_with(
        t,
        &OracleOptions {
            max_points: None,
            parallel: true,
        },
    )
    .expect("no point limit and d below the modulus cap");
    (out.bad, out.witness)
}

struct Plan {
    d: u64,
    a: u64,
    /// `gcd(m, d) < d` for some part `m ≤ min(n, a)`: the classes that may vanish
    classes: Vec<u64>,
    /// parts by class index; `None` is the class that never vanishes
    parts: Vec<(Option<usize>, u64)>,
    emb: ModularEmbedding,
}

impl Plan {
    fn new(t: &Triple) -> Self {
        let mut classes = Vec::new();
        let mut parts = Vec::new();
        for m in 1..=t.n.min(t.a) {
            let g = gcd(m, t.d);
            if g == t.d {
                parts.push((None, m));
            } else {
                let idx = classes.iter().position(|&c| c == g).unwrap_or_else(|| {
                    classes.push(g);
                    classes.len() - 1
                });
                parts.push((Some(idx), m));
            }
        }
        Self {
            d: t.d,
            a: t.a,
            classes,
            parts,
            emb: ModularEmbedding::new(t.d as u32),
        }
    }

    /// Bad when `a` is not generated by the parts outside the vanishing classes.
    fn bad_for(&self, vanishing: u64, memo: &mut HashMap<u64, bool>) -> bool {
        *memo.entry(vanishing).or_insert_with(|| {
            let allowed = self
                .parts
                .iter()
                .filter(|(c, _)| c.is_none_or(|i| vanishing & (1 << i) == 0))
                .map(|&(_, m)| m);
            !SemigroupGens::new(allowed).contains(self.a)
        })
    }

    fn all_classes(&self) -> u64 {
        (1u64 << self.classes.len()) - 1
    }
}

/// Decide `(n,d,a)` by scanning `𝒱_d`, with a modular prefilter before the
/// exact cyclotomic test.
pub fn is_bad_oracle_with(t: &Triple, opts: &OracleOptions) -> Result<OracleOutcome, TripleError> {
    if t.d > MAX_MODULUS {
        return Err(TripleError::ModulusTooLarge(t.d));
    }
    let points = num_vd_points(t.n, t.d);
    let plan = Plan::new(t);
    assert!(plan.classes.len() < 64, "too many gcd classes");
    let mut memo = HashMap::new();
    // even if every class vanished, a would still be reachable
    if !plan.bad_for(plan.all_classes(), &mut memo) {
        return Ok(OracleOutcome {
            bad: false,
            witness: None,
            points,
        });
    }
    if let Some(limit) = opts.max_points {
        if points > u128::from(limit) {
            return Err(TripleError::TooManyPoints { points, limit });
        }
    }
    let free = (t.n - 1) as usize;
    let prefix_len = free.min(2);
    let mut prefixes = Vec::new();
    let mut cur = Some(vec![0u32; prefix_len]);
    while let Some(p) = cur {
        cur = next_multiset(&p, t.d as u32);
        prefixes.push(p);
    }
    let search = |prefix: &Vec<u32>| {
        let mut s = Search::new(&plan, free);
        s.run(prefix)
    };
    let witness = if opts.parallel {
        prefixes.par_iter().find_map_first(search)
    } else {
        prefixes.iter().find_map(search)
    };
    Ok(OracleOutcome {
        bad: witness.is_some(),
        witness,
        points,
    })
}

struct Search<'a> {
    plan: &'a Plan,
    free: usize,
    exps: Vec<u32>,
    /// modular `P_g` partial sums per level, `levels[i]` after `i` free coordinates
    levels: Vec<Vec<u64>>,
    memo: HashMap<u64, bool>,
}

impl<'a> Search<'a> {
    fn new(plan: &'a Plan, free: usize) -> Self {
        let k = plan.classes.len();
        // the fixed coordinate 1 contributes 1 to every power sum
        let mut levels = vec![vec![0u64; k]; free + 1];
        levels[0] = vec![1 % plan.emb.prime(); k];
        Self {
            plan,
            free,
            exps: Vec::with_capacity(free + 1),
            levels,
            memo: HashMap::new(),
        }
    }

    fn push(&mut self, b: u32) {
        let depth = self.exps.len();
        let p = self.plan.emb.prime();
        let d = self.plan.d;
        for (c, &g) in self.plan.classes.iter().enumerate() {
            let e = (g * u64::from(b)) % d;
            let term = self.plan.emb.power_sum(&[e as u32], 1);
            self.levels[depth + 1][c] = (self.levels[depth][c] + term) % p;
        }
        self.exps.push(b);
    }

    fn run(&mut self, prefix: &[u32]) -> Option<RootPoint> {
        for &b in prefix {
            self.push(b);
        }
        let start = prefix.last().copied().unwrap_or(0);
        self.dfs(start)
    }

    fn dfs(&mut self, min: u32) -> Option<RootPoint> {
        if self.exps.len() == self.free {
            return self.leaf();
        }
        for b in min..self.plan.d as u32 {
            self.push(b);
            let found = self.dfs(b);
            self.exps.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn leaf(&mut self) -> Option<RootPoint> {
        let sums = &self.levels[self.free];
        let all = self.plan.all_classes();
        let mut vanishing = 0u64;
        let mut unknown = all;
        let mut point: Option<RootPoint> = None;
        for c in 0..self.plan.classes.len() {
            unknown &= !(1 << c);
            let zero = sums[c] == 0 && {
                let q = point.get_or_insert_with(|| self.make_point());
                cyc_is_zero(&power_sum_at(self.plan.classes[c], q))
            };
            if zero {
                vanishing |= 1 << c;
            } else if !self.plan.bad_for(vanishing | unknown, &mut self.memo) {
                return None;
            }
        }
        if self.plan.bad_for(vanishing, &mut self.memo) {
            Some(point.unwrap_or_else(|| self.make_point()))
        } else {
            None
        }
    }

    fn make_point(&self) -> RootPoint {
        let mut e = self.exps.clone();
        e.push(0);
        RootPoint::new(self.plan.d as u32, e).expect("valid exponents")
    }
}

/// First multiset of `n` `d`-th roots of unity (lexicographic in sorted
/// exponents) summing to zero. No normalization is imposed.
pub fn exists_vanishing_sum(n: u64, d: u64) -> Option<Vec<u32>> {
    assert!(n >= 1 && (1..=MAX_MODULUS).contains(&d));
    let emb = ModularEmbedding::new(d as u32);
    let mut cur = Some(vec![0u32; n as usize]);
    while let Some(exps) = cur {
        if emb.power_sum(&exps, 1) == 0 {
            let q = RootPoint::unnormalized(d as u32, exps.clone()).expect("valid exponents");
            if cyc_is_zero(&power_sum_at(1, &q)) {
                return Some(exps);
            }
        }
        cur = next_multiset(&exps, d as u32);
    }
    None
}
