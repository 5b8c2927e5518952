//! Buchberger's algorithm over `ℚ` for homogeneous ideals, with a weighted
//! degrevlex order, the normal selection strategy, and Gebauer–Möller pair
//! pruning. Used to certify regular sequences.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::mpoly::{MPoly, Monomial};

/// Largest number of variables supported by the packed monomial.
pub const MAX_VARS: usize = 8;

/// Default cap on S-pair (and input) reductions.
pub const DEFAULT_BUDGET: usize = 50_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("reduction budget of {0} steps exceeded")]
    BudgetExceeded(usize),
    #[error("generator {0} is zero")]
    ZeroGenerator(usize),
    #[error("generator {0} is not homogeneous for the given weights")]
    NotHomogeneous(usize),
    #[error("{0} variables exceeds the supported maximum of {MAX_VARS}")]
    TooManyVariables(usize),
    #[error("generator lives in {got} variables, order expects {expected}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("expected {expected} generators, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("exponent too large for the packed monomial")]
    ExponentOverflow,
}

/// Weighted degree-reverse-lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermOrder {
    weights: Vec<u32>,
}

impl TermOrder {
    pub fn degrevlex(nvars: usize) -> Self {
        Self {
            weights: vec![1; nvars],
        }
    }

    pub fn weighted(weights: Vec<u32>) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        Self { weights }
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let pa = Mono::pack(a, &self.weights).expect("fits");
        let pb = Mono::pack(b, &self.weights).expect("fits");
        pa.cmp(&pb)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_reductions: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_reductions: DEFAULT_BUDGET,
        }
    }
}

impl Budget {
    pub fn new(max_reductions: usize) -> Self {
        Self { max_reductions }
    }
}

/// Packed monomial; `Ord` is the term order (weighted degree, then reverse lex).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Mono {
    deg: u32,
    e: [u16; MAX_VARS],
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            for i in (0..MAX_VARS).rev() {
                match self.e[i].cmp(&other.e[i]) {
                    Ordering::Equal => continue,
                    o => return o.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mono {
    fn pack(m: &Monomial, weights: &[u32]) -> Result<Self, GroebnerError> {
        let mut e = [0u16; MAX_VARS];
        for (slot, &x) in e.iter_mut().zip(m.exponents()) {
            *slot = u16::try_from(x).map_err(|_| GroebnerError::ExponentOverflow)?;
        }
        Ok(Self {
            deg: m.weighted_degree(weights),
            e,
        })
    }

    fn unpack(&self, nvars: usize) -> Monomial {
        Monomial(self.e[..nvars].iter().map(|&x| u32::from(x)).collect())
    }

    fn divides(&self, other: &Self) -> bool {
        self.deg <= other.deg && self.e.iter().zip(&other.e).all(|(a, b)| a <= b)
    }

    fn div(&self, by: &Self) -> Self {
        let mut e = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.e[i] - by.e[i];
        }
        Self {
            deg: self.deg - by.deg,
            e,
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut e = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.e[i] + other.e[i];
        }
        Self {
            deg: self.deg + other.deg,
            e,
        }
    }

    fn lcm(&self, other: &Self, weights: &[u32]) -> Self {
        let mut e = [0u16; MAX_VARS];
        let mut deg = 0;
        for i in 0..MAX_VARS {
            e[i] = self.e[i].max(other.e[i]);
            if let Some(w) = weights.get(i) {
                deg += u32::from(e[i]) * w;
            }
        }
        Self { deg, e }
    }

    fn coprime(&self, other: &Self) -> bool {
        self.e.iter().zip(&other.e).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the variable when this is a pure power `x_i^k`, `k ≥ 1`.
    fn pure_power_var(&self) -> Option<usize> {
        let mut it = self.e.iter().enumerate().filter(|(_, &x)| x > 0);
        let (i, _) = it.next()?;
        it.next().is_none().then_some(i)
    }

    fn support_mask(&self) -> u32 {
        self.e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }
}

type Coeff = BigRational;

/// Terms sorted strictly descending in the term order; monic once in a basis.
#[derive(Debug, Clone)]
struct Poly {
    terms: Vec<(Mono, Coeff)>,
}

impl Poly {
    fn lm(&self) -> Mono {
        self.terms[0].0
    }

    fn make_monic(&mut self) {
        let lc = self.terms[0].1.clone();
        if !lc.is_one() {
            for (_, c) in &mut self.terms {
                *c /= &lc;
            }
        }
    }
}

struct Engine<'a> {
    weights: &'a [u32],
    basis: Vec<Poly>,
    active: Vec<bool>,
    steps: usize,
    budget: Budget,
}

impl Engine<'_> {
    fn find_reducer(&self, m: &Mono) -> Option<usize> {
        (0..self.basis.len()).find(|&i| self.active[i] && self.basis[i].lm().divides(m))
    }

    /// Full reduction of `acc` modulo the active basis.
    fn reduce(&self, mut acc: BTreeMap<Mono, Coeff>) -> Poly {
        let mut out = Vec::new();
        while let Some((m, c)) = acc.pop_last() {
            match self.find_reducer(&m) {
                Some(i) => {
                    let g = &self.basis[i];
                    let q = m.div(&g.lm());
                    for (mg, cg) in &g.terms[1..] {
                        let key = mg.mul(&q);
                        let delta = &c * cg;
                        match acc.entry(key) {
                            std::collections::btree_map::Entry::Vacant(v) => {
                                v.insert(-delta);
                            }
                            std::collections::btree_map::Entry::Occupied(mut o) => {
                                *o.get_mut() -= delta;
                                if o.get().is_zero() {
                                    o.remove();
                                }
                            }
                        }
                    }
                }
                None => out.push((m, c)),
            }
        }
        Poly { terms: out }
    }

    fn spoly(&self, i: usize, j: usize) -> BTreeMap<Mono, Coeff> {
        let (f, g) = (&self.basis[i], &self.basis[j]);
        let l = f.lm().lcm(&g.lm(), self.weights);
        let (qf, qg) = (l.div(&f.lm()), l.div(&g.lm()));
        let mut acc: BTreeMap<Mono, Coeff> = BTreeMap::new();
        for (m, c) in &f.terms[1..] {
            acc.insert(m.mul(&qf), c.clone());
        }
        for (m, c) in &g.terms[1..] {
            let key = m.mul(&qg);
            let e = acc.entry(key).or_insert_with(Coeff::zero);
            *e -= c;
            if e.is_zero() {
                acc.remove(&key);
            }
        }
        acc
    }

    fn tick(&mut self) -> Result<(), GroebnerError> {
        self.steps += 1;
        if self.steps > self.budget.max_reductions {
            return Err(GroebnerError::BudgetExceeded(self.budget.max_reductions));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Task {
    Input(usize),
    Pair(usize, usize),
}

/// Pending work keyed by (weighted degree, insertion sequence).
struct Queue {
    items: BTreeMap<(u32, usize), (Task, Mono)>,
    seq: usize,
}

impl Queue {
    fn push(&mut self, deg: u32, task: Task, lcm: Mono) {
        self.items.insert((deg, self.seq), (task, lcm));
        self.seq += 1;
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct RunOptions {
    /// Discard work above this weighted degree.
    truncate: Option<u32>,
    /// Stop as soon as every variable has a pure-power leading monomial.
    stop_when_zero_dim: bool,
}

struct RunResult {
    basis: Vec<Poly>,
    pure_power_mask: u32,
}

fn to_internal(
    gens: &[MPoly],
    order: &TermOrder,
) -> Result<Vec<BTreeMap<Mono, Coeff>>, GroebnerError> {
    let n = order.nvars();
    if n > MAX_VARS {
        return Err(GroebnerError::TooManyVariables(n));
    }
    gens.iter()
        .enumerate()
        .map(|(idx, g)| {
            if g.nvars() != n {
                return Err(GroebnerError::AmbientMismatch {
                    expected: n,
                    got: g.nvars(),
                });
            }
            if g.is_zero() {
                return Err(GroebnerError::ZeroGenerator(idx));
            }
            g.terms()
                .map(|(m, c)| Ok((Mono::pack(m, order.weights())?, c.clone())))
                .collect()
        })
        .collect()
}

fn run(
    inputs: Vec<BTreeMap<Mono, Coeff>>,
    order: &TermOrder,
    budget: Budget,
    opts: RunOptions,
) -> Result<RunResult, GroebnerError> {
    let weights = order.weights();
    let full_mask: u32 = (1u32 << order.nvars()) - 1;
    let mut eng = Engine {
        weights,
        basis: Vec::new(),
        active: Vec::new(),
        steps: 0,
        budget,
    };
    let mut queue = Queue {
        items: BTreeMap::new(),
        seq: 0,
    };
    for (i, p) in inputs.iter().enumerate() {
        let top = *p.keys().next_back().expect("nonzero input");
        queue.push(top.deg, Task::Input(i), top);
    }
    let mut pure_mask = 0u32;
    let mut inputs: Vec<Option<BTreeMap<Mono, Coeff>>> = inputs.into_iter().map(Some).collect();

    while let Some((&(deg, _), _)) = queue.items.iter().next() {
        if opts.truncate.is_some_and(|t| deg > t) {
            break;
        }
        let (_, (task, _)) = queue.items.pop_first().expect("nonempty");
        eng.tick()?;
        let acc = match task {
            Task::Input(i) => inputs[i].take().expect("input consumed once"),
            Task::Pair(i, j) => eng.spoly(i, j),
        };
        let mut h = eng.reduce(acc);
        if h.terms.is_empty() {
            continue;
        }
        h.make_monic();
        let lm = h.lm();
        if let Some(v) = lm.pure_power_var() {
            pure_mask |= 1 << v;
        }
        update(&mut eng, &mut queue, h);
        if opts.stop_when_zero_dim && pure_mask == full_mask {
            break;
        }
    }
    let basis = eng
        .basis
        .into_iter()
        .zip(eng.active)
        .filter_map(|(p, a)| a.then_some(p))
        .collect();
    Ok(RunResult {
        basis,
        pure_power_mask: pure_mask,
    })
}

/// Gebauer–Möller installation of a new basis element `h`.
fn update(eng: &mut Engine<'_>, queue: &mut Queue, h: Poly) {
    let weights = eng.weights;
    let lh = h.lm();
    let t = eng.basis.len();
    let old: Vec<usize> = (0..t).filter(|&i| eng.active[i]).collect();

    // candidate new pairs (h, g) with their lcms
    let cands: Vec<(usize, Mono)> = old
        .iter()
        .map(|&i| (i, lh.lcm(&eng.basis[i].lm(), weights)))
        .collect();
    let mut keep: Vec<(usize, Mono)> = Vec::new();
    for (idx, &(i, l)) in cands.iter().enumerate() {
        let coprime = lh.coprime(&eng.basis[i].lm());
        let dominated_later = cands[idx + 1..].iter().any(|(_, l2)| l2.divides(&l));
        let dominated_kept = keep.iter().any(|(_, l2)| l2.divides(&l));
        if coprime || (!dominated_later && !dominated_kept) {
            keep.push((i, l));
        }
    }
    let new_pairs: Vec<(usize, Mono)> = keep
        .into_iter()
        .filter(|(i, _)| !lh.coprime(&eng.basis[*i].lm()))
        .collect();

    // prune old pairs made redundant by h (chain criterion)
    let basis = &eng.basis;
    queue.items.retain(|_, (task, l)| match *task {
        Task::Input(_) => true,
        Task::Pair(i, j) => {
            let li = lh.lcm(&basis[i].lm(), weights);
            let lj = lh.lcm(&basis[j].lm(), weights);
            !(lh.divides(l) && li != *l && lj != *l)
        }
    });

    for i in old {
        if lh.divides(&eng.basis[i].lm()) {
            eng.active[i] = false;
        }
    }
    eng.basis.push(h);
    eng.active.push(true);
    for (i, l) in new_pairs {
        queue.push(l.deg, Task::Pair(i, t), l);
    }
}

/// Tail-reduces each element against the others.
fn interreduce(basis: Vec<Poly>, order: &TermOrder) -> Vec<Poly> {
    let mut basis = basis;
    basis.sort_by_key(|a| a.lm());
    let n = basis.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let eng = Engine {
            weights: order.weights(),
            basis: basis.clone(),
            active: (0..n).map(|i| i != k).collect(),
            steps: 0,
            budget: Budget::default(),
        };
        let (lm, lc) = basis[k].terms[0].clone();
        let tail: BTreeMap<Mono, Coeff> = basis[k].terms[1..].iter().cloned().collect();
        let mut p = eng.reduce(tail);
        p.terms.insert(0, (lm, lc));
        p.make_monic();
        out.push(p);
    }
    out
}

/// A reduced Gröbner basis, sorted by ascending leading monomial.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    order: TermOrder,
    polys: Vec<Poly>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn gens(&self) -> Vec<MPoly> {
        self.polys.iter().map(|p| self.to_mpoly(p)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|p| p.lm().unpack(self.order.nvars()))
            .collect()
    }

    /// Normal form of `p` modulo the basis.
    pub fn reduce(&self, p: &MPoly) -> Result<MPoly, GroebnerError> {
        let internal = to_internal_allow_zero(p, &self.order)?;
        let eng = Engine {
            weights: self.order.weights(),
            basis: self.polys.clone(),
            active: vec![true; self.polys.len()],
            steps: 0,
            budget: Budget::default(),
        };
        Ok(self.to_mpoly(&eng.reduce(internal)))
    }

    pub fn contains(&self, p: &MPoly) -> Result<bool, GroebnerError> {
        Ok(self.reduce(p)?.is_zero())
    }

    pub fn is_zero_dimensional(&self) -> bool {
        let mask = self
            .polys
            .iter()
            .filter_map(|p| p.lm().pure_power_var())
            .fold(0u32, |acc, v| acc | (1 << v));
        mask == (1u32 << self.order.nvars()) - 1
    }

    /// Krull dimension of the quotient: the largest set of variables
    /// containing the support of no leading monomial.
    pub fn dimension(&self) -> usize {
        let n = self.order.nvars();
        let supports: Vec<u32> = self.polys.iter().map(|p| p.lm().support_mask()).collect();
        (0u32..(1 << n))
            .filter(|&u| supports.iter().all(|&s| s & !u != 0))
            .map(|u| u.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    fn to_mpoly(&self, p: &Poly) -> MPoly {
        let n = self.order.nvars();
        MPoly::from_terms(
            self.order.weights().to_vec(),
            p.terms.iter().map(|(m, c)| (m.unpack(n), c.clone())),
        )
    }
}

fn to_internal_allow_zero(
    p: &MPoly,
    order: &TermOrder,
) -> Result<BTreeMap<Mono, Coeff>, GroebnerError> {
    if p.nvars() != order.nvars() {
        return Err(GroebnerError::AmbientMismatch {
            expected: order.nvars(),
            got: p.nvars(),
        });
    }
    p.terms()
        .map(|(m, c)| Ok((Mono::pack(m, order.weights())?, c.clone())))
        .collect()
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(
    gens: &[MPoly],
    order: &TermOrder,
    budget: Budget,
) -> Result<GroebnerBasis, GroebnerError> {
    let inputs = to_internal(gens, order)?;
    let res = run(inputs, order, budget, RunOptions::default())?;
    Ok(GroebnerBasis {
        order: order.clone(),
        polys: interreduce(res.basis, order),
    })
}

fn check_homogeneous(gens: &[MPoly], order: &TermOrder) -> Result<Vec<u32>, GroebnerError> {
    gens.iter()
        .enumerate()
        .map(|(i, g)| {
            if g.is_zero() {
                return Err(GroebnerError::ZeroGenerator(i));
            }
            let w = g.clone().with_weights(order.weights().to_vec());
            w.homogeneous_degree()
                .ok_or(GroebnerError::NotHomogeneous(i))
        })
        .collect()
}

/// Whether the only common zero of homogeneous `gens` is the origin.
pub fn is_zero_dimensional_homogeneous(
    gens: &[MPoly],
    order: &TermOrder,
    budget: Budget,
) -> Result<bool, GroebnerError> {
    if !gens.is_empty() && gens[0].nvars() != order.nvars() {
        return Err(GroebnerError::AmbientMismatch {
            expected: order.nvars(),
            got: gens[0].nvars(),
        });
    }
    check_homogeneous(gens, order)?;
    if order.nvars() == 0 {
        return Ok(true);
    }
    let inputs = to_internal(gens, order)?;
    let opts = RunOptions {
        truncate: None,
        stop_when_zero_dim: true,
    };
    let res = run(inputs, order, budget, opts)?;
    Ok(res.pure_power_mask == (1u32 << order.nvars()) - 1)
}

/// Whether `seq` (n homogeneous polynomials in n variables) is a regular sequence.
///
/// A regular sequence with weighted degrees `d_i` puts every monomial of degree
/// above `Σ(d_i - w_i)` in the ideal, so the leading-term ideal is generated in
/// degrees `≤ Σ(d_i - w_i) + max w`; work above that bound is skipped.
pub fn verify_regular_maximal(
    seq: &[MPoly],
    weights: &[u32],
    budget: Budget,
) -> Result<bool, GroebnerError> {
    let n = weights.len();
    if seq.len() != n {
        return Err(GroebnerError::WrongLength {
            expected: n,
            got: seq.len(),
        });
    }
    let order = TermOrder::weighted(weights.to_vec());
    if seq.iter().any(|g| g.is_zero()) {
        return Ok(false);
    }
    let degs = check_homogeneous(seq, &order)?;
    if degs.contains(&0) {
        return Ok(false);
    }
    if n == 0 {
        return Ok(true);
    }
    let socle: i64 = degs.iter().map(|&d| i64::from(d)).sum::<i64>()
        - weights.iter().map(|&w| i64::from(w)).sum::<i64>();
    let bound = socle.max(0) as u32 + weights.iter().copied().max().unwrap_or(1);
    let inputs = to_internal(seq, &order)?;
    let opts = RunOptions {
        truncate: Some(bound),
        stop_when_zero_dim: true,
    };
    let res = run(inputs, &order, budget, opts)?;
    Ok(res.pure_power_mask == (1u32 << n) - 1)
}

/// Whether `seq` (t < n homogeneous polynomials) is regular: the ideal has codimension t.
pub fn verify_regular_partial(
    seq: &[MPoly],
    weights: &[u32],
    budget: Budget,
) -> Result<bool, GroebnerError> {
    let n = weights.len();
    if seq.len() >= n {
        return Err(GroebnerError::WrongLength {
            expected: n.saturating_sub(1),
            got: seq.len(),
        });
    }
    if seq.iter().any(|g| g.is_zero()) {
        return Ok(false);
    }
    let order = TermOrder::weighted(weights.to_vec());
    let degs = check_homogeneous(seq, &order)?;
    if degs.contains(&0) {
        return Ok(false);
    }
    if seq.is_empty() {
        return Ok(true);
    }
    let gb = buchberger(seq, &order, budget)?;
    Ok(n - gb.dimension() == seq.len())
}
