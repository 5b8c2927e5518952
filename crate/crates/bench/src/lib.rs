//! Fixtures shared by the benchmarks in `benches/`.

use symreg::Triple;

/// Every triple in `1..=n × 1..=d × 1..=a`, lexicographic.
pub fn triple_grid(n: u64, d: u64, a: u64) -> Vec<Triple> {
    let mut out = Vec::new();
    for n in 1..=n {
        for d in 1..=d {
            for a in 1..=a {
                out.push(Triple::new(n, d, a).expect("positive"));
            }
        }
    }
    out
}

/// All four-element multisets with entries in `1..=max`.
pub fn four_tuples(max: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for a in 1..=max {
        for b in a..=max {
            for c in b..=max {
                for d in c..=max {
                    out.push(vec![a, b, c, d]);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    #[test]
    fn sizes() {
        assert_eq!(super::triple_grid(2, 3, 4).len(), 24);
        assert_eq!(super::four_tuples(16).len(), 3876);
    }
}
