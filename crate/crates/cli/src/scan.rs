use std::fmt;
use std::ops::RangeInclusive;
use std::time::Instant;

use anyhow::{Context, Result};
use rayon::prelude::*;
use symreg::triples::{
    classify_triple_traced, criteria_verdicts, is_bad_oracle_with, propagate, Bounds,
    ClassifyOptions, Source, TripleError,
};
use symreg::{Triple, TripleCache, TripleStatus};

use crate::records::TripleRecord;

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct ScanSummary {
    pub triples: usize,
    pub by_criterion: usize,
    pub from_cache: usize,
    pub oracle_calls: usize,
    pub undecided: usize,
    pub propagated: usize,
    pub disagreements: usize,
}

impl fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} triples: {} by criterion, {} from cache, {} oracle calls, {} undecided; {} added by propagation; {} disagreements",
            self.triples,
            self.by_criterion,
            self.from_cache,
            self.oracle_calls,
            self.undecided,
            self.propagated,
            self.disagreements
        )
    }
}

/// Classify the box `n × d × a` in lexicographic order, in parallel; then
/// record verdicts in the cache (single writer) and close it under
/// propagation. With `check`, every triple is also run through the oracle and
/// compared with every criterion that fires.
pub fn scan(
    n: RangeInclusive<u64>,
    d: RangeInclusive<u64>,
    a: RangeInclusive<u64>,
    opts: &ClassifyOptions,
    cache: &mut TripleCache,
    check: bool,
) -> Result<(Vec<TripleRecord>, ScanSummary)> {
    let bounds = Bounds {
        n_max: *n.end(),
        d_max: *d.end(),
        a_max: *a.end(),
    };
    let mut triples = Vec::new();
    for n in n {
        for d in d.clone() {
            for a in a.clone() {
                triples.push(Triple::new(n, d, a)?);
            }
        }
    }
    let shared: &TripleCache = cache;
    let results: Vec<_> = triples
        .par_iter()
        .map(|t| {
            let start = Instant::now();
            let res = classify_triple_traced(t, opts, Some(shared));
            let mismatch = if check { disagreement(t, opts) } else { None };
            (res, mismatch, start.elapsed())
        })
        .collect();
    let mut summary = ScanSummary {
        triples: triples.len(),
        ..Default::default()
    };
    let mut records = Vec::with_capacity(triples.len());
    for (t, (res, mismatch, el)) in triples.iter().zip(results) {
        let mut rec = match res {
            Ok((v, source)) => {
                match source {
                    Source::Criterion => summary.by_criterion += 1,
                    Source::Cache => summary.from_cache += 1,
                    Source::Oracle => summary.oracle_calls += 1,
                }
                let rec = TripleRecord::decided("triple-scan", t, &v, source);
                cache.insert(*t, v).context("cache integrity")?;
                rec
            }
            Err(
                e @ (TripleError::Undecided
                | TripleError::TooManyPoints { .. }
                | TripleError::ModulusTooLarge(_)),
            ) => {
                summary.undecided += 1;
                TripleRecord::undecided("triple-scan", t, e.to_string())
            }
            Err(e) => return Err(e.into()),
        };
        if let Some(m) = mismatch {
            summary.disagreements += 1;
            rec.detail = Some(m);
        }
        rec.elapsed_ms = (el.as_secs_f64() * 1e6).round() / 1e3;
        records.push(rec);
    }
    summary.propagated = propagate(cache, bounds).context("cache integrity during propagation")?;
    Ok((records, summary))
}

fn disagreement(t: &Triple, opts: &ClassifyOptions) -> Option<String> {
    let bad = match is_bad_oracle_with(t, &opts.oracle) {
        Ok(o) => o.bad,
        Err(_) => return None,
    };
    criteria_verdicts(t)
        .into_iter()
        .find(|v| (v.status == TripleStatus::Bad) != bad)
        .map(|v| {
            format!(
                "{} says {} but the oracle says {}",
                v.reason.id(),
                v.status,
                if bad { "Bad" } else { "Good" }
            )
        })
}
