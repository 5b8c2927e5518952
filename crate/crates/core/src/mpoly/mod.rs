//! Sparse multivariate polynomials over `ℚ` with a per-variable grading.
//!
//! `MPoly` lives in `ℚ[x_1..x_n]`. `SymExpr` wraps an `MPoly` whose variables
//! are read as the elementary symmetric polynomials `e_1..e_n`, graded by
//! `deg(e_i) = i`; `expand_sym` substitutes back into `x`-coordinates.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use thiserror::Error;

pub use parse::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MPolyError {
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("ambient mismatch: {0} vs {1} variables")]
    AmbientMismatch(usize, usize),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("degree mismatch: h has degree {h}, h' has degree {hp} (expected h' = h - 2)")]
    DegreeMismatch { h: u32, hp: u32 },
    #[error("the Specht pair lives in four variables, got {0}")]
    NotFourVariables(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Exponents = SmallVec<[u32; 6]>;

/// Exponent vector, one entry per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Exponents);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    weights: Vec<u32>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        Self::zero_weighted(vec![1; nvars])
    }

    pub fn zero_weighted(weights: Vec<u32>) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        Self {
            nvars: weights.len(),
            weights,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    /// The variable `x_{i+1}` (zero-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, i), BigRational::one());
        p
    }

    pub fn from_terms(
        weights: Vec<u32>,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Self {
        let mut p = Self::zero_weighted(weights);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn with_weights(mut self, weights: Vec<u32>) -> Self {
        assert_eq!(weights.len(), self.nvars, "one weight per variable");
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        self.weights = weights;
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        assert_eq!(m.0.len(), self.nvars, "monomial arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Weighted degree when every term shares it; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(&self.weights));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.weighted_degree(&self.weights))
            .max()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero_weighted(self.weights.clone());
        }
        Self {
            nvars: self.nvars,
            weights: self.weights.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars).with_weights(self.weights.clone());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Applies the variable permutation `x_i ↦ x_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        let mut out = Self::zero_weighted(self.weights.clone());
        for (m, c) in &self.terms {
            let mut e: Exponents = SmallVec::from_elem(0, self.nvars);
            for (i, &x) in m.0.iter().enumerate() {
                e[perm[i]] = x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..self.nvars).collect();
        perm.swap(i, j);
        self.permute(&perm)
    }

    /// Substitutes `x_i ↦ images[i]` and expands. Images share an ambient ring.
    pub fn substitute(&self, images: &[MPoly]) -> Result<MPoly, MPolyError> {
        if images.len() != self.nvars {
            return Err(MPolyError::AmbientMismatch(images.len(), self.nvars));
        }
        let target = images
            .first()
            .map(|p| p.weights.clone())
            .unwrap_or_default();
        if images.iter().any(|p| p.weights != target) {
            return Err(MPolyError::AmbientMismatch(target.len(), target.len()));
        }
        let mut powers: Vec<Vec<MPoly>> = images
            .iter()
            .map(|p| vec![MPoly::one(p.nvars).with_weights(target.clone())])
            .collect();
        let mut out = MPoly::zero_weighted(target.clone());
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(target.len(), c.clone()).with_weights(target.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().expect("nonempty") * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Scales so that the coefficients are coprime integers with a positive
    /// leading coefficient in print order.
    pub fn primitive_integer(&self) -> (BigRational, Vec<(Monomial, BigInt)>) {
        use num_integer::Integer;
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<(Monomial, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                (
                    m.clone(),
                    (c * BigRational::from_integer(lcm.clone())).to_integer(),
                )
            })
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
        let g = if g.is_zero() { BigInt::one() } else { g };
        let scale = BigRational::new(lcm, g.clone());
        (scale, ints.into_iter().map(|(m, c)| (m, c / &g)).collect())
    }

    /// Terms in print order: descending weighted degree, then descending exponent vector.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            b.weighted_degree(&self.weights)
                .cmp(&a.weighted_degree(&self.weights))
                .then_with(|| b.cmp(a))
        });
        v
    }

    pub fn parse(text: &str, nvars: usize) -> Result<Self, ParseError> {
        parse::parse_poly(text, 'x', &vec![1; nvars])
    }

    pub fn parse_weighted(text: &str, prefix: char, weights: &[u32]) -> Result<Self, ParseError> {
        parse::parse_poly(text, prefix, weights)
    }

    pub fn display_with(&self, prefix: char) -> PolyDisplay<'_> {
        PolyDisplay { poly: self, prefix }
    }

    fn check_ambient(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "ambient variable count mismatch");
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.check_ambient(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.check_ambient(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.check_ambient(rhs);
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MPoly {
            nvars: self.nvars,
            weights: self.weights.clone(),
            terms: acc,
        }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a MPoly,
    prefix: char,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                factors.push(mag.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("{}{}", self.prefix, i + 1)),
                    _ => factors.push(format!("{}{}^{}", self.prefix, i + 1, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with('x').fmt(f)
    }
}

/// A polynomial in the elementary symmetric polynomials `e_1..e_n`,
/// graded by `deg(e_i) = i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymExpr(MPoly);

impl SymExpr {
    fn weights(n: usize) -> Vec<u32> {
        (1..=n as u32).collect()
    }

    pub fn zero(n: usize) -> Self {
        Self(MPoly::zero_weighted(Self::weights(n)))
    }

    pub fn one(n: usize) -> Self {
        Self(MPoly::one(n).with_weights(Self::weights(n)))
    }

    /// `e_i` for `1 ≤ i ≤ n`.
    pub fn e(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "e_{i} outside 1..={n}");
        Self(MPoly::var(n, i - 1).with_weights(Self::weights(n)))
    }

    /// `∏ e_i^{exps[i-1]}`
    pub fn monomial(n: usize, exps: &[u32]) -> Self {
        assert_eq!(exps.len(), n);
        let mut p = MPoly::zero_weighted(Self::weights(n));
        p.add_term(Monomial(exps.iter().copied().collect()), BigRational::one());
        Self(p)
    }

    pub fn from_poly(p: MPoly) -> Self {
        let n = p.nvars();
        Self(p.with_weights(Self::weights(n)))
    }

    pub fn n(&self) -> usize {
        self.0.nvars()
    }

    pub fn poly(&self) -> &MPoly {
        &self.0
    }

    pub fn into_poly(self) -> MPoly {
        self.0
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.homogeneous_degree()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn pow(&self, k: u32) -> Self {
        Self(self.0.pow(k))
    }

    pub fn expand(&self) -> MPoly {
        expand_sym(self, self.n()).expect("own ambient")
    }

    pub fn parse(text: &str, n: usize) -> Result<Self, ParseError> {
        parse::parse_poly(text, 'e', &Self::weights(n)).map(Self)
    }
}

impl Add for &SymExpr {
    type Output = SymExpr;
    fn add(self, rhs: &SymExpr) -> SymExpr {
        SymExpr(&self.0 + &rhs.0)
    }
}

impl Mul for &SymExpr {
    type Output = SymExpr;
    fn mul(self, rhs: &SymExpr) -> SymExpr {
        SymExpr(&self.0 * &rhs.0)
    }
}

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.display_with('e').fmt(f)
    }
}

/// `e_i(x_1..x_n)`: the sum of all squarefree monomials of degree `i`.
pub fn elementary(n: usize, i: usize) -> Result<MPoly, MPolyError> {
    if !(1..=n).contains(&i) {
        return Err(MPolyError::IndexOutOfRange { index: i, n });
    }
    let mut p = MPoly::zero(n);
    let mut idx: Vec<usize> = (0..i).collect();
    loop {
        let mut m = Monomial::one(n);
        for &k in &idx {
            m.0[k] = 1;
        }
        p.add_term(m, BigRational::one());
        // next i-subset of 0..n in lex order
        let mut pos = i;
        while pos > 0 && idx[pos - 1] == n - i + pos - 1 {
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
        idx[pos - 1] += 1;
        for k in pos..i {
            idx[k] = idx[k - 1] + 1;
        }
    }
    Ok(p)
}

/// `x_1^a + … + x_n^a`
pub fn power_sum_poly(n: usize, a: u32) -> MPoly {
    let mut p = MPoly::zero(n);
    for i in 0..n {
        let mut m = Monomial::one(n);
        m.0[i] = a;
        p.add_term(m, BigRational::one());
    }
    p
}

/// `∏_{i<j} (x_j - x_i)`
pub fn vandermonde(n: usize) -> MPoly {
    let mut p = MPoly::one(n);
    for j in 0..n {
        for i in 0..j {
            p = &p * &(&MPoly::var(n, j) - &MPoly::var(n, i));
        }
    }
    p
}

/// Substitutes `e_i ↦ e_i(x_1..x_n)`; the weighted degree of `s` becomes the
/// standard degree of the result.
pub fn expand_sym(s: &SymExpr, n: usize) -> Result<MPoly, MPolyError> {
    if s.n() > n {
        return Err(MPolyError::AmbientMismatch(s.n(), n));
    }
    let images = (1..=s.n())
        .map(|i| elementary(n, i))
        .collect::<Result<Vec<_>, _>>()?;
    if images.is_empty() {
        let c = s.0.as_constant().unwrap_or_else(BigRational::zero);
        return Ok(MPoly::constant(n, c));
    }
    s.0.substitute(&images)
}

/// Invariance under all adjacent transpositions (which generate `S_n`).
pub fn is_symmetric(p: &MPoly) -> bool {
    (0..p.nvars().saturating_sub(1)).all(|i| p.swap_vars(i, i + 1) == *p)
}

/// Sign change under all adjacent transpositions.
pub fn is_alternating(p: &MPoly) -> bool {
    let neg = -p;
    (0..p.nvars().saturating_sub(1)).all(|i| p.swap_vars(i, i + 1) == neg)
}

/// Newton's identities: the power sum `p_a` written in `e_1..e_n`.
pub fn power_sum_in_e(n: usize, a: u32) -> SymExpr {
    // p_k = Σ_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k, with e_i = 0 for i > n
    let mut p: Vec<SymExpr> = vec![SymExpr::zero(n)];
    for k in 1..=a as usize {
        let mut acc = SymExpr::zero(n);
        for i in 1..k.min(n + 1) {
            let term = &SymExpr::e(n, i) * &p[k - i];
            let sign = if i % 2 == 1 { 1 } else { -1 };
            acc = &acc + &SymExpr(term.0.scale(&BigRational::from_integer(sign.into())));
        }
        if k <= n {
            let sign: i64 = if k % 2 == 1 { 1 } else { -1 };
            let c = BigRational::from_integer((sign * k as i64).into());
            acc = &acc + &SymExpr(SymExpr::e(n, k).0.scale(&c));
        }
        p.push(acc);
    }
    p.pop().expect("a ≥ 0")
}

/// The generators spanning a copy of the `(2,2)` Specht module in degree `a`:
///
/// ```text
/// g1 = H (x1-x2)(x3-x4) + H' (x1²-x2²)(x3²-x4²)
/// g2 = H (x1-x3)(x2-x4) + H' (x1²-x3²)(x2²-x4²)
/// ```
///
/// where `H, H'` are the `x`-expansions of `h` (degree `a-2`) and `hp`
/// (degree `a-4`). Either may be zero.
pub fn specht_s22_pair(h: &SymExpr, hp: &SymExpr) -> Result<(MPoly, MPoly), MPolyError> {
    for s in [h, hp] {
        if s.n() != 4 {
            return Err(MPolyError::NotFourVariables(s.n()));
        }
        if !s.is_zero() && s.degree().is_none() {
            return Err(MPolyError::NotHomogeneous);
        }
    }
    if let (Some(dh), Some(dhp)) = (h.degree(), hp.degree()) {
        if dh != dhp + 2 {
            return Err(MPolyError::DegreeMismatch { h: dh, hp: dhp });
        }
    }
    let big_h = h.expand();
    let big_hp = hp.expand();
    let (lin1, lin2, quad1, quad2) = specht_factors();
    let g1 = &(&big_h * &lin1) + &(&big_hp * &quad1);
    let g2 = &(&big_h * &lin2) + &(&big_hp * &quad2);
    Ok((g1, g2))
}

/// `(x1-x2)(x3-x4)`, `(x1-x3)(x2-x4)`, and their squared-variable analogues.
pub fn specht_factors() -> (MPoly, MPoly, MPoly, MPoly) {
    let x = |i: usize| MPoly::var(4, i);
    let sq = |i: usize| x(i).pow(2);
    let lin = |a: usize, b: usize, c: usize, d: usize| &(&x(a) - &x(b)) * &(&x(c) - &x(d));
    let quad = |a: usize, b: usize, c: usize, d: usize| &(&sq(a) - &sq(b)) * &(&sq(c) - &sq(d));
    (
        lin(0, 1, 2, 3),
        lin(0, 2, 1, 3),
        quad(0, 1, 2, 3),
        quad(0, 2, 1, 3),
    )
}
