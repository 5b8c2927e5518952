//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//! Run with `cargo test --release -p symreg --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use symreg::classify::{classify_s22, is_permissible, Status};
use symreg::groebner::{verify_regular_maximal, Budget, GroebnerError};
use symreg::mpoly::{elementary, MPoly};
use symreg::numth::{gamma_contains, gcd};
use symreg::triples::{
    criteria_verdicts, exists_vanishing_sum, is_bad_oracle, is_bad_oracle_with, num_vd_points,
    partitions, propagate, Bounds, ClassifyOptions, OracleOptions, TripleCache, Witness,
};
use symreg::upoly::{hilbert_quotient, IntPoly};
use symreg::{
    classify_alternating, classify_symmetric, classify_triple, DegSeq, Triple, TripleStatus,
    TripleVerdict,
};

enum Outcome {
    Pass(String),
    Fail(String),
    /// Not a failure of the suite.
    Inconclusive(String),
}

fn check(cond: bool, ok: impl Into<String>, bad: impl Into<String>) -> Outcome {
    if cond {
        Outcome::Pass(ok.into())
    } else {
        Outcome::Fail(bad.into())
    }
}

fn t(n: u64, d: u64, a: u64) -> Triple {
    Triple::new(n, d, a).unwrap()
}

fn exact() -> OracleOptions {
    OracleOptions {
        max_points: None,
        parallel: false,
    }
}

fn hilbert() -> Outcome {
    let want = IntPoly::from_i64(&[1, 1, 0, 1, 2, 0, 0, 2, 1, 0, 1, 1]);
    let mut best = Duration::MAX;
    let mut got = None;
    for _ in 0..20 {
        let s = Instant::now();
        let q = hilbert_quotient(4, &[2, 5, 2, 12]);
        best = best.min(s.elapsed());
        got = Some(q);
    }
    let ok = matches!(&got, Some(Ok(q)) if q.poly == want);
    check(
        ok && best < Duration::from_millis(1),
        format!("quotient matches, {best:?} per call"),
        format!("got {got:?} in {best:?}"),
    )
}

/// The three exception families, written out independently.
fn exception(sorted: &[u64]) -> bool {
    matches!(sorted, [1, 2, 5, x] | [2, 2, 5, x] | [2, 5, 5, x] if x % 12 == 0)
}

fn permissible_oracle(sorted: &[u64]) -> bool {
    let n = sorted.len() as u64;
    let star = (1..=n).all(|i| sorted.iter().filter(|&&d| d % i == 0).count() as u64 >= n / i);
    let dagger = (1..=n).all(|i| sorted.iter().filter(|&&d| d <= i).count() as u64 <= i);
    star && dagger
}

fn srs_four() -> Outcome {
    let mut tuples = Vec::new();
    for a in 1..=16u64 {
        for b in a..=16 {
            for c in b..=16 {
                for d in c..=16 {
                    tuples.push([a, b, c, d]);
                }
            }
        }
    }
    let problems: Vec<String> = tuples
        .par_iter()
        .filter_map(|tup| {
            let ds = DegSeq::maximal(4, tup.to_vec()).unwrap();
            let v = classify_symmetric(&ds);
            let expect = permissible_oracle(tup) && !exception(tup);
            if (v.status == Status::Regular) != expect
                || is_permissible(&ds) != permissible_oracle(tup)
            {
                return Some(format!("{tup:?}: {} ({})", v.status, v.reason.id()));
            }
            if v.status == Status::Regular && tup[3] <= 12 {
                let Some(cert) = &v.certificate else {
                    return Some(format!("{tup:?}: no certificate"));
                };
                let mut degs = cert.degrees();
                degs.sort_unstable();
                if degs != tup.to_vec() {
                    return Some(format!("{tup:?}: certificate degrees {degs:?}"));
                }
                match cert.verify(Budget::default()) {
                    Ok(true) => {}
                    other => return Some(format!("{tup:?}: verification {other:?}")),
                }
            }
            None
        })
        .collect();
    check(
        problems.is_empty(),
        format!("{} tuples, zero discrepancies", tuples.len()),
        format!(
            "{} discrepancies, first {:?}",
            problems.len(),
            problems.first()
        ),
    )
}

fn worked_triples() -> Outcome {
    use TripleStatus::{Bad, Good};
    let vector = [
        ((4, 15, 1), Good),
        ((8, 15, 1), Bad),
        ((4, 30, 1), Bad),
        ((8, 30, 1), Bad),
        ((8, 15, 2), Bad),
        ((8, 30, 2), Bad),
        ((8, 15, 4), Bad),
        ((8, 15, 8), Good),
        ((8, 30, 8), Good),
        ((16, 15, 8), Good),
        ((5, 6, 1), Bad),
    ];
    let opts = ClassifyOptions {
        allow_oracle: true,
        oracle: OracleOptions {
            max_points: None,
            parallel: true,
        },
    };
    let mut errs = Vec::new();
    let mut oracle_runs = 0;
    for ((n, d, a), want) in vector {
        let tr = t(n, d, a);
        match classify_triple(&tr, &opts, None) {
            Ok(v) if v.status == want => {}
            other => errs.push(format!("{tr}: {other:?}")),
        }
        // independent confirmation wherever the enumeration is affordable
        if num_vd_points(n, d) <= 10_000_000 {
            oracle_runs += 1;
            if is_bad_oracle(&tr).0 != (want == Bad) {
                errs.push(format!("{tr}: oracle disagrees"));
            }
        }
    }
    // the two propagation steps used in the worked examples
    let mut cache = TripleCache::new();
    for tr in [t(8, 15, 1), t(8, 15, 2)] {
        cache
            .insert(tr, classify_triple(&tr, &opts, None).unwrap())
            .unwrap();
    }
    if let Err(e) = propagate(
        &mut cache,
        Bounds {
            n_max: 8,
            d_max: 30,
            a_max: 2,
        },
    ) {
        errs.push(e.to_string());
    }
    for tr in [t(8, 30, 1), t(8, 30, 2)] {
        if cache.get(&tr).map(|v| v.status) != Some(Bad) {
            errs.push(format!("{tr} not propagated"));
        }
    }
    check(
        errs.is_empty(),
        format!("11 verdicts reproduced, {oracle_runs} confirmed by full enumeration"),
        errs.join("; "),
    )
}

fn witness_ok(tr: &Triple, v: &TripleVerdict) -> bool {
    match &v.witness {
        None => true,
        Some(Witness::Point(q)) => partitions(tr.a, tr.n)
            .iter()
            .all(|lam| symreg::triples::witness_vanishes_at(lam, q)),
        Some(Witness::Polynomial {
            power_sum_parts,
            en_power,
        }) => {
            power_sum_parts.iter().sum::<u64>() + en_power * tr.n == tr.a
                && symreg::triples::enumerate_vd(tr.n, tr.d)
                    .all(|q| !symreg::triples::witness_vanishes_at(power_sum_parts, &q))
        }
    }
}

fn agreement() -> Outcome {
    let mut grid = Vec::new();
    for n in 1..=6u64 {
        for d in 1..=10u64 {
            for a in 1..=24u64 {
                grid.push(t(n, d, a));
            }
        }
    }
    let spot: Vec<Triple> = (1..=8)
        .flat_map(|n| (1..=16).map(move |a| t(n, 15, a)))
        .collect();
    let all: Vec<Triple> = grid.iter().chain(&spot).copied().collect();
    let results: Vec<(Triple, bool, Vec<String>)> = all
        .par_iter()
        .map(|tr| {
            let bad = is_bad_oracle_with(tr, &exact()).unwrap().bad;
            let mut errs = Vec::new();
            for v in criteria_verdicts(tr) {
                if (v.status == TripleStatus::Bad) != bad {
                    errs.push(format!("{tr}: {} says {}", v.reason.id(), v.status));
                }
                if tr.d <= 10 && !witness_ok(tr, &v) {
                    errs.push(format!("{tr}: invalid {} witness", v.reason.id()));
                }
            }
            (*tr, bad, errs)
        })
        .collect();
    let mut errs: Vec<String> = results.iter().flat_map(|r| r.2.clone()).collect();
    let fired = all
        .iter()
        .filter(|tr| !criteria_verdicts(tr).is_empty())
        .count();
    // propagation over the oracle grid must close without conflicts
    let mut cache = TripleCache::new();
    for (tr, bad, _) in results.iter().filter(|r| r.0.d <= 10) {
        let status = if *bad {
            TripleStatus::Bad
        } else {
            TripleStatus::Good
        };
        let v = TripleVerdict {
            status,
            reason: symreg::TripleReason::Oracle,
            witness: None,
        };
        cache.insert(*tr, v).unwrap();
    }
    if let Err(e) = propagate(
        &mut cache,
        Bounds {
            n_max: 6,
            d_max: 10,
            a_max: 24,
        },
    ) {
        errs.push(e.to_string());
    }
    check(
        errs.is_empty(),
        format!(
            "{} triples ({fired} decided by a criterion), zero conflicts",
            all.len()
        ),
        format!("{} conflicts, first {:?}", errs.len(), errs.first()),
    )
}

fn prime_power() -> Outcome {
    let mut count = 0;
    let mut errs = Vec::new();
    for d in [2u64, 3, 4, 8, 9] {
        for n in 1..=8u64 {
            for a in 1..=20u64 {
                count += 1;
                let bad = is_bad_oracle_with(&t(n, d, a), &exact()).unwrap().bad;
                if bad != (a % gcd(d, n) != 0) {
                    errs.push(format!("({n},{d},{a})"));
                }
            }
        }
    }
    check(
        errs.is_empty(),
        format!("{count} triples, zero exceptions"),
        format!("exceptions: {errs:?}"),
    )
}

fn lam_leung() -> Outcome {
    let cases: Vec<(u64, u64)> = (1..=12u64)
        .flat_map(|d| (1..=10u64).map(move |n| (n, d)))
        .collect();
    let errs: Vec<(u64, u64)> = cases
        .par_iter()
        .filter(|&&(n, d)| exists_vanishing_sum(n, d).is_some() != gamma_contains(d, n).unwrap())
        .copied()
        .collect();
    check(
        errs.is_empty(),
        format!("{} (n,d) pairs, zero exceptions", cases.len()),
        format!("exceptions: {errs:?}"),
    )
}

fn s22_suite() -> Outcome {
    let mut cases = Vec::new();
    for a in 1..=14u64 {
        for c in 1..=8u64 {
            for d in 1..=8u64 {
                cases.push((a, c, d));
            }
        }
    }
    let results: Vec<(bool, Option<String>)> = cases
        .par_iter()
        .map(|&(a, c, d)| {
            let v = classify_s22(a, c, d);
            if a == 3 && v.status != Status::NotRegular {
                return (false, Some(format!("(3,{c},{d}) is {}", v.status)));
            }
            if v.status != Status::Regular {
                return (false, None);
            }
            let Some(cert) = v.certificate else {
                return (true, Some(format!("({a},{c},{d}) no certificate")));
            };
            match cert.verify(Budget::default()) {
                Ok(true) => (true, None),
                other => (true, Some(format!("({a},{c},{d}) split check {other:?}"))),
            }
        })
        .collect();
    let mut errs: Vec<String> = results.iter().filter_map(|r| r.1.clone()).collect();
    for a in [2, 4] {
        if classify_s22(a, 1, 1).status != Status::NotRegular {
            errs.push(format!("({a},1,1) not rejected"));
        }
    }
    let regular = results.iter().filter(|r| r.0).count();
    check(
        errs.is_empty(),
        format!("{regular} regular triples certified, exclusions hold"),
        format!("{} failures, first {:?}", errs.len(), errs.first()),
    )
}

fn alternating() -> Outcome {
    let ds = DegSeq::new(4, vec![1, 2, 5]).unwrap();
    let v18 = classify_alternating(&ds, 18);
    let v6 = classify_alternating(&ds, 6);
    check(
        v18.status == Status::NotRegular && v6.status == Status::NotRegular,
        format!("D=18: {}, D=6: {}", v18.reason.id(), v6.reason.id()),
        format!("D=18: {}, D=6: {}", v18.status, v6.status),
    )
}

fn appendix() -> Outcome {
    const N: usize = 5;
    let x = |i: usize| MPoly::var(N, i);
    let e = |j: usize| elementary(N, j).unwrap();
    let diff = |i: usize, k: u32| &x(i).pow(k) - &x(N - 1).pow(k);
    let mut gens: Vec<MPoly> = (0..N - 1)
        .map(|i| {
            (2..=5).fold(MPoly::zero(N), |acc, j| {
                &acc + &(&e(j) * &diff(i, 6 - j as u32))
            })
        })
        .collect();
    gens.push(e(1));
    let mut plain: Vec<MPoly> = (0..N - 1).map(|i| diff(i, 6)).collect();
    plain.push(e(1));
    let weights = [1u32; N];
    let budget = Budget::new(2_000_000);
    let deadline = Duration::from_secs(600);
    let s = Instant::now();
    let good = verify_regular_maximal(&gens, &weights, budget);
    let mid = s.elapsed();
    let bad = verify_regular_maximal(&plain, &weights, budget);
    let total = s.elapsed();
    match (good, bad) {
        (Err(GroebnerError::BudgetExceeded { .. }), _)
        | (_, Err(GroebnerError::BudgetExceeded { .. })) => {
            Outcome::Inconclusive("Gröbner budget exceeded".into())
        }
        _ if total > deadline => Outcome::Inconclusive(format!("over the time budget ({total:?})")),
        (Ok(g), Ok(b)) => check(
            g && !b,
            format!("g_i with e1 regular ({mid:?}), x_i^6 - x_5^6 with e1 not regular"),
            format!("g_i regular: {g}, plain regular: {b}"),
        ),
        (g, b) => Outcome::Fail(format!("{g:?} / {b:?}")),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Hilbert quotient exactness", hilbert),
        ("n=4 classification, entries <= 16", srs_four),
        ("worked triple vector", worked_triples),
        ("criteria/oracle agreement", agreement),
        ("prime-power law", prime_power),
        ("vanishing sums vs Gamma(d)", lam_leung),
        ("S(2,2) suite", s22_suite),
        ("alternating necessary conditions", alternating),
        ("n=5 cross-check (stretch)", appendix),
    ];
    let filter: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if filter.is_some_and(|k| k != i + 1) {
            continue;
        }
        let s = Instant::now();
        let out = f();
        let el = s.elapsed();
        let (tag, msg) = match out {
            Outcome::Pass(m) => ("PASS", m),
            Outcome::Fail(m) => {
                failed += 1;
                ("FAIL", m)
            }
            Outcome::Inconclusive(m) => ("INCONCLUSIVE", m),
        };
        println!("criterion {}: {tag} {name}: {msg} [{el:.2?}]", i + 1);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
