//! Regular sequences `g1, g2, f1, f2` in four variables where `g1, g2` span a
//! copy of the `(2,2)` Specht module in degree `a` and `f1, f2` are symmetric
//! of degrees `c, d`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::{
    classify_symmetric, pow, prod, sum, two_three, ClassifyError, ConstructedSeq, Construction,
    Criterion, DegSeq, Provenance, Status, Verdict,
};
use crate::groebner::{verify_regular_maximal, Budget, GroebnerError};
use crate::mpoly::{specht_s22_pair, MPoly, SymExpr};

const N: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpechtData {
    pub a: u64,
    pub h: SymExpr,
    pub hp: SymExpr,
    pub g1: MPoly,
    pub g2: MPoly,
}

fn e(i: usize) -> SymExpr {
    SymExpr::e(N, i)
}

fn e2_e3() -> SymExpr {
    sum(&[pow(&e(2), 3), pow(&e(3), 2)])
}

fn big() -> SymExpr {
    sum(&[pow(&e(2), 6), pow(&e(3), 4), pow(&e(4), 3)])
}

pub fn classify_s22(a: u64, c: u64, d: u64) -> Verdict {
    let mut v = match a {
        0 | 1 => return Verdict::new(Status::NotRegular, Criterion::S22SmallA),
        3 => return Verdict::new(Status::NotRegular, Criterion::S22CommonFactor),
        2 | 4 if c == 1 && d == 1 => {
            return Verdict::new(Status::NotRegular, Criterion::S22UnitPair)
        }
        2 | 4 => Verdict::new(Status::Regular, Criterion::S22LowDegree),
        _ => {
            let inner =
                DegSeq::maximal(N, vec![a - 2, a - 4, c, d]).map(|ds| classify_symmetric(&ds));
            match inner {
                Ok(iv) if iv.status == Status::Regular => {
                    Verdict::new(Status::Regular, Criterion::S22Reduction)
                }
                Ok(iv) => {
                    return Verdict::new(Status::NotRegular, Criterion::S22Reduction)
                        .with_detail(format!("({},{},{c},{d}): {}", a - 2, a - 4, iv.reason.id()))
                }
                Err(_) => return Verdict::new(Status::NotRegular, Criterion::S22SmallA),
            }
        }
    };
    v.certificate = Some(build(a, c, d).expect("every regular (a,c,d) has a table row"));
    v
}

pub fn construct_s22(a: u64, c: u64, d: u64) -> Result<ConstructedSeq, ClassifyError> {
    let v = classify_s22(a, c, d);
    match v.certificate {
        Some(cert) => Ok(cert),
        None => Err(ClassifyError::NotConstructible(v.status)),
    }
}

struct Choice {
    h: SymExpr,
    hp: SymExpr,
    f_c: SymExpr,
    f_d: SymExpr,
    construction: Construction,
    /// `c_role, d_role` as used by the table row.
    roles: (u64, u64),
}

fn build(a: u64, c: u64, d: u64) -> Result<ConstructedSeq, ClassifyError> {
    let choice = match a {
        2 | 4 => low(a, c, d),
        _ if a.is_multiple_of(2) => even(a, c, d),
        _ => odd(a, c, d),
    }
    .ok_or_else(|| ClassifyError::NoRow(vec![a, a, c, d]))?;
    let (g1, g2) =
        specht_s22_pair(&choice.h, &choice.hp).expect("table rows have consistent degrees");
    // generators in the requested (c, d) order
    let (fc, fd) = if choice.roles == (c, d) {
        (choice.f_c, choice.f_d)
    } else {
        (choice.f_d, choice.f_c)
    };
    Ok(ConstructedSeq {
        n: N,
        generators: vec![fc, fd],
        specht: Some(SpechtData {
            a,
            h: choice.h,
            hp: choice.hp,
            g1,
            g2,
        }),
        provenance: Provenance {
            construction: choice.construction,
            roles: vec![a, choice.roles.0, choice.roles.1],
        },
    })
}

fn low(a: u64, c: u64, d: u64) -> Option<Choice> {
    // the e1 power takes the role that may be 1
    let (c_role, d_role) = if d >= 2 { (c, d) } else { (d, c) };
    if d_role < 2 {
        return None;
    }
    let (p, q) = two_three(d_role);
    let (h, hp) = if a == 2 {
        (SymExpr::one(N), SymExpr::zero(N))
    } else {
        (e(2), SymExpr::one(N))
    };
    Some(Choice {
        h,
        hp,
        f_c: pow(&e(1), c_role),
        f_d: &pow(&e(2), p) * &pow(&e(3), q),
        construction: Construction::S22Low,
        roles: (c_role, d_role),
    })
}

fn even(a: u64, c: u64, d: u64) -> Option<Choice> {
    let r = a % 12;
    if r == 0 || r == 6 {
        let (c_role, d_role) = if c.is_multiple_of(3) {
            (c, d)
        } else if d.is_multiple_of(3) {
            (d, c)
        } else {
            return None;
        };
        let f_c = pow(&e(3), c_role / 3);
        let f_d = pow(&e(1), d_role);
        let (h, hp, row) = if a.is_multiple_of(4) {
            let alpha = (a - 4) / 4;
            (pow(&e(2), 2 * alpha + 1), pow(&e(4), alpha), 1)
        } else {
            let alpha = (a - 2) / 4;
            (pow(&e(4), alpha), pow(&e(2), 2 * alpha - 1), 2)
        };
        return Some(Choice {
            h,
            hp,
            f_c,
            f_d,
            construction: Construction::S22Even(row),
            roles: (c_role, d_role),
        });
    }
    let (c_role, d_role) = if c >= 2 { (c, d) } else { (d, c) };
    if c_role < 2 {
        return None;
    }
    let (p, q) = two_three(c_role);
    let f_c = &pow(&e(2), p) * &pow(&e(3), q);
    let f_d = pow(&e(1), d_role);
    let (h, hp, row) = match r {
        4 => {
            let alpha = (a - 4) / 12;
            (&e2_e3() * &pow(&e(4), 3 * alpha - 1), pow(&big(), alpha), 3)
        }
        2 => {
            let alpha = (a - 2) / 12;
            (pow(&big(), alpha), &e2_e3() * &pow(&e(4), 3 * alpha - 2), 4)
        }
        8 => {
            let alpha = (a - 2) / 6;
            (pow(&e2_e3(), alpha), pow(&e(4), (3 * alpha - 1) / 2), 5)
        }
        10 => {
            let alpha = (a - 4) / 6;
            (pow(&e(4), (3 * alpha).div_ceil(2)), pow(&e2_e3(), alpha), 6)
        }
        _ => unreachable!("a even"),
    };
    Some(Choice {
        h,
        hp,
        f_c,
        f_d,
        construction: Construction::S22Even(row),
        roles: (c_role, d_role),
    })
}

fn odd(a: u64, c: u64, d: u64) -> Option<Choice> {
    let e1sq_e2 = sum(&[pow(&e(1), 2), e(2)]);
    let e1_4_e4 = sum(&[pow(&e(1), 4), e(4)]);
    let e3_4_e4_3 = sum(&[pow(&e(3), 4), pow(&e(4), 3)]);
    for (c_role, d_role) in [(c, d), (d, c)] {
        if c_role % 2 != 0 || d_role % 4 != 0 {
            continue;
        }
        let done = |h, hp, f_c, f_d, row| Choice {
            h,
            hp,
            f_c,
            f_d,
            construction: Construction::S22Odd(row),
            roles: (c_role, d_role),
        };
        match a % 3 {
            2 => {
                let alpha = (a - 2) / 3;
                return Some(done(
                    pow(&e(3), alpha),
                    &pow(&e(2), (3 * alpha - 3) / 2) * &e(1),
                    pow(&e1sq_e2, c_role / 2),
                    pow(&e(4), d_role / 4),
                    1,
                ));
            }
            1 => {
                let alpha = (a - 4) / 3;
                return Some(done(
                    &pow(&e(2), (3 * alpha).div_ceil(2)) * &e(1),
                    pow(&e(3), alpha),
                    pow(&e1sq_e2, c_role / 2),
                    pow(&e(4), d_role / 4),
                    2,
                ));
            }
            _ => {}
        }
        let (alpha, low_row) = if a % 4 == 1 {
            ((a - 1) / 4, true)
        } else {
            ((a - 3) / 4, false)
        };
        if c_role % 6 == 0 {
            let (h, hp, row) = if low_row {
                (
                    prod(&[pow(&e(2), 2 * alpha - 2), e(3)]),
                    prod(&[pow(&e(4), alpha - 1), e(1)]),
                    3,
                )
            } else {
                (
                    prod(&[pow(&e(4), alpha), e(1)]),
                    prod(&[pow(&e(2), 2 * alpha - 2), e(3)]),
                    5,
                )
            };
            return Some(done(
                h,
                hp,
                pow(&e2_e3(), c_role / 6),
                pow(&e1_4_e4, d_role / 4),
                row,
            ));
        }
        if d_role % 12 == 0 {
            let (h, hp, row) = if low_row {
                (
                    prod(&[pow(&e(4), alpha - 1), e(3)]),
                    prod(&[pow(&e(2), 2 * alpha - 2), e(1)]),
                    4,
                )
            } else {
                (
                    prod(&[pow(&e(2), 2 * alpha), e(1)]),
                    prod(&[pow(&e(4), alpha - 1), e(3)]),
                    6,
                )
            };
            return Some(done(
                h,
                hp,
                pow(&e1sq_e2, c_role / 2),
                pow(&e3_4_e4_3, d_role / 12),
                row,
            ));
        }
    }
    None
}

type PairCache = Mutex<HashMap<(SymExpr, SymExpr), bool>>;

fn factor_pair_cache() -> &'static PairCache {
    static CACHE: OnceLock<PairCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn q(k: i64) -> MPoly {
    MPoly::constant(3, num_rational::BigRational::from_integer(k.into()))
}

/// `e_1..e_4` at `(t, t, x3, x4)`, written in `t, s1 = x3 + x4, s2 = x3 x4`
/// (weights 1, 1, 2).
fn pair_images() -> Vec<MPoly> {
    let w = vec![1, 1, 2];
    let t = MPoly::var(3, 0).with_weights(w.clone());
    let s1 = MPoly::var(3, 1).with_weights(w.clone());
    let s2 = MPoly::var(3, 2).with_weights(w.clone());
    let two = q(2).with_weights(w.clone());
    let tt = &t * &t;
    vec![
        &(&two * &t) + &s1,
        &(&tt + &(&two * &(&t * &s1))) + &s2,
        &(&tt * &s1) + &(&two * &(&t * &s2)),
        &tt * &s2,
    ]
}

/// `(x1 + x3)(x1 + x4)` at `x2 = x1`, in the same coordinates.
fn pair_cross() -> MPoly {
    let w = vec![1, 1, 2];
    let t = MPoly::var(3, 0).with_weights(w.clone());
    let s1 = MPoly::var(3, 1).with_weights(w.clone());
    let s2 = MPoly::var(3, 2).with_weights(w);
    &(&(&t * &t) + &(&t * &s1)) + &s2
}

/// `e_1..e_4` at `(t, t, t, u)`.
fn triple_images() -> Vec<MPoly> {
    let t = MPoly::var(2, 0);
    let u = MPoly::var(2, 1);
    let c = |k: i64| MPoly::constant(2, num_rational::BigRational::from_integer(k.into()));
    let tt = &t * &t;
    vec![
        &(&c(3) * &t) + &u,
        &(&c(3) * &tt) + &(&c(3) * &(&t * &u)),
        &(&tt * &t) + &(&c(3) * &(&tt * &u)),
        &(&tt * &t) * &u,
    ]
}

fn restrict(s: &SymExpr, images: &[MPoly]) -> MPoly {
    s.poly().substitute(images).expect("four images")
}

/// `(x1-x2)(x3-x4), (x1-x3)(x2-x4), f1, f2`. Each product splits into its two
/// linear factors; the four resulting sequences are conjugate under `S_4`, so
/// one representative `x1 = x2 = x3` suffices.
fn specht_factor_check(f1: &SymExpr, f2: &SymExpr, budget: Budget) -> Result<bool, GroebnerError> {
    let key = (f1.clone(), f2.clone());
    if let Some(&b) = factor_pair_cache().lock().expect("cache lock").get(&key) {
        return Ok(b);
    }
    let imgs = triple_images();
    let b = verify_regular_maximal(&[restrict(f1, &imgs), restrict(f2, &imgs)], &[1, 1], budget)?;
    factor_pair_cache()
        .lock()
        .expect("cache lock")
        .insert(key, b);
    Ok(b)
}

/// `(x1-x2)(x3-x4), h2, f1, f2` with `h2 = H + H'(x1+x3)(x2+x4)`. The two
/// linear factors are swapped by `(13)(24)`, which fixes `h2`, so only
/// `x1 = x2` is checked, in the invariants of the remaining pair.
fn h2_check(
    h: &SymExpr,
    hp: &SymExpr,
    f1: &SymExpr,
    f2: &SymExpr,
    budget: Budget,
) -> Result<bool, GroebnerError> {
    let imgs = pair_images();
    let h2 = &restrict(h, &imgs) + &(&restrict(hp, &imgs) * &pair_cross());
    if h2.is_zero() {
        return Ok(false);
    }
    let seq = [h2, restrict(f1, &imgs), restrict(f2, &imgs)];
    verify_regular_maximal(&seq, &[1, 1, 2], budget)
}

/// Regularity of `g1, g2, f1, f2` (with `g1, g2` built from `h, h'`), decided by
/// three smaller checks: `h, h', f1, f2` in e-coordinates;
/// `(x1-x2)(x3-x4), (x1-x3)(x2-x4), f1, f2`; and `(x1-x2)(x3-x4), h2, f1, f2`
/// with `h2 = H + H'(x1+x3)(x2+x4)`.
///
/// When `h` or `h'` is a constant or zero the first check does not apply:
/// `h' = 0` leaves `g1, g2` with the common factor `h` unless `h` is a unit,
/// and a unit `h'` makes the `h1, h2` condition coincide with the third check.
pub fn check_s22_split(
    h: &SymExpr,
    hp: &SymExpr,
    f1: &SymExpr,
    f2: &SymExpr,
    budget: Budget,
) -> Result<bool, GroebnerError> {
    let positive = |s: &SymExpr| s.degree().is_some_and(|d| d > 0);
    let unit = |s: &SymExpr| !s.is_zero() && s.degree() == Some(0);
    if [f1, f2].iter().any(|f| !positive(f)) {
        return Ok(false);
    }
    if positive(h) && positive(hp) {
        let weights: Vec<u32> = (1..=N as u32).collect();
        let e_seq = [h, hp, f1, f2].map(|s| s.poly().clone());
        return Ok(verify_regular_maximal(&e_seq, &weights, budget)?
            && specht_factor_check(f1, f2, budget)?
            && h2_check(h, hp, f1, f2, budget)?);
    }
    if hp.is_zero() {
        return Ok(unit(h) && specht_factor_check(f1, f2, budget)?);
    }
    if unit(hp) && positive(h) {
        return Ok(specht_factor_check(f1, f2, budget)? && h2_check(h, hp, f1, f2, budget)?);
    }
    check_s22_direct(h, hp, f1, f2, budget)
}

/// `g1, g2, f1, f2` in x-coordinates, without any splitting.
pub fn check_s22_direct(
    h: &SymExpr,
    hp: &SymExpr,
    f1: &SymExpr,
    f2: &SymExpr,
    budget: Budget,
) -> Result<bool, GroebnerError> {
    let Ok((g1, g2)) = specht_s22_pair(h, hp) else {
        return Ok(false);
    };
    if g1.is_zero() || g2.is_zero() {
        return Ok(false);
    }
    verify_regular_maximal(&[g1, g2, f1.expand(), f2.expand()], &[1; N], budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn classify_examples() {
        for c in 1..6 {
            for d in 1..6 {
                assert_eq!(classify_s22(3, c, d).status, Status::NotRegular);
            }
        }
        assert_eq!(classify_s22(2, 7, 2).status, Status::Regular);
        assert_eq!(classify_s22(7, 2, 4).status, Status::Regular);
        assert_eq!(classify_s22(2, 1, 1).status, Status::NotRegular);
        assert_eq!(classify_s22(4, 1, 1).status, Status::NotRegular);
        assert_eq!(classify_s22(1, 2, 2).status, Status::NotRegular);
    }

    #[test]
    fn low_degree_construction() {
        let c = construct_s22(2, 3, 2).unwrap();
        let s = c.specht.as_ref().unwrap();
        let (l1, l2, _, _) = crate::mpoly::specht_factors();
        assert_eq!((s.g1.clone(), s.g2.clone()), (l1, l2));
        assert_eq!(c.generators[0].to_string(), "e1^3");
        assert_eq!(c.generators[1].to_string(), "e2");
        assert!(c.verify(b()).unwrap());
    }

    #[test]
    fn table_examples() {
        // a = 14 sits on the row with 12α = a - 2
        let c = construct_s22(14, 2, 1).unwrap();
        let s = c.specht.as_ref().unwrap();
        assert_eq!(c.provenance.construction, Construction::S22Even(4));
        assert_eq!(s.h.to_string(), "e2^6 + e3^4 + e4^3");
        assert_eq!(s.hp, &e2_e3() * &e(4));
        assert_eq!(c.generators[0].to_string(), "e2");
        assert_eq!(c.generators[1].to_string(), "e1");
        // a = 16 carries the (e2^3+e3^2) e4^2 pair
        let c = construct_s22(16, 2, 1).unwrap();
        let s = c.specht.as_ref().unwrap();
        assert_eq!(c.provenance.construction, Construction::S22Even(3));
        assert_eq!(s.h, &e2_e3() * &pow(&e(4), 2));
        assert_eq!(s.hp.to_string(), "e2^6 + e3^4 + e4^3");

        let c = construct_s22(5, 2, 4).unwrap();
        let s = c.specht.as_ref().unwrap();
        assert_eq!(s.h.to_string(), "e3");
        assert_eq!(s.hp.to_string(), "e1");
        assert_eq!(c.generators[0].to_string(), "e1^2 + e2");
        assert_eq!(c.generators[1].to_string(), "e4");
    }

    #[test]
    fn degrees_match_request() {
        for a in 2..=20u64 {
            for cc in 1..=8 {
                for dd in 1..=8 {
                    if let Ok(cert) = construct_s22(a, cc, dd) {
                        let s = cert.specht.as_ref().unwrap();
                        assert_eq!(s.g1.homogeneous_degree(), Some(a as u32), "{a},{cc},{dd}");
                        assert_eq!(cert.degrees(), vec![a, a, cc, dd], "{a},{cc},{dd}");
                    }
                }
            }
        }
    }

    #[test]
    fn split_agrees_with_direct() {
        for a in [2u64, 4, 5, 6, 7, 8] {
            for c in 1..=3 {
                for d in 1..=3 {
                    let Ok(cert) = construct_s22(a, c, d) else {
                        continue;
                    };
                    let s = cert.specht.as_ref().unwrap();
                    let (f1, f2) = (&cert.generators[0], &cert.generators[1]);
                    let split = check_s22_split(&s.h, &s.hp, f1, f2, b()).unwrap();
                    let direct = check_s22_direct(&s.h, &s.hp, f1, f2, b()).unwrap();
                    assert_eq!(split, direct, "({a},{c},{d})");
                    assert!(split, "({a},{c},{d})");
                }
            }
        }
        // non-regular completions must be rejected by both
        let h = e(2);
        let hp = SymExpr::one(N);
        for (f1, f2) in [(e(1), pow(&e(1), 2)), (e(2), pow(&e(1), 2)), (e(1), e(4))] {
            let split = check_s22_split(&h, &hp, &f1, &f2, b()).unwrap();
            let direct = check_s22_direct(&h, &hp, &f1, &f2, b()).unwrap();
            assert_eq!(split, direct, "{f1}, {f2}");
        }
        let (h, hp) = (pow(&e(3), 1), e(1));
        for (f1, f2) in [
            (pow(&e(1), 2), e(4)),
            (e(2), e(4)),
            (pow(&e(1), 2), pow(&e(2), 2)),
        ] {
            let split = check_s22_split(&h, &hp, &f1, &f2, b()).unwrap();
            let direct = check_s22_direct(&h, &hp, &f1, &f2, b()).unwrap();
            assert_eq!(split, direct, "{f1}, {f2}");
        }
    }

    #[test]
    fn split_examples() {
        assert!(!check_s22_split(&e(1), &SymExpr::zero(N), &e(1), &e(2), b()).unwrap());
        assert!(!check_s22_split(&SymExpr::one(N), &SymExpr::zero(N), &e(1), &e(1), b()).unwrap());
        assert!(check_s22_split(&SymExpr::one(N), &SymExpr::zero(N), &e(1), &e(2), b()).unwrap());
        for (a, c, d) in [(5, 2, 4), (6, 3, 1), (7, 2, 4), (8, 2, 1), (9, 6, 4)] {
            let cert = construct_s22(a, c, d).unwrap();
            assert!(
                cert.verify(b()).unwrap(),
                "({a},{c},{d}) via {}",
                cert.provenance.construction
            );
        }
    }
}
