//! Append-only JSONL store of triple verdicts and the closure under the
//! monotonicity rules.

use std::collections::{BTreeMap, VecDeque};
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Triple, TripleReason, TripleStatus, TripleVerdict, Witness};
use crate::cyclo::RootPoint;
use crate::numth::{divisors, gcd};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntegrityError {
    #[error("conflicting verdicts for {triple}: stored {stored}, new {new}")]
    Conflict {
        triple: Triple,
        stored: TripleStatus,
        new: TripleStatus,
    },
    #[error("line {line}: {msg}")]
    BadRecord { line: usize, msg: String },
    #[error("i/o error on {path}: {msg}")]
    Io { path: String, msg: String },
}

/// One line of the cache file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub n: u64,
    pub d: u64,
    pub a: u64,
    pub status: String,
    pub reason: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WitnessRecord {
    Point {
        point: Vec<u32>,
    },
    Polynomial {
        power_sum_parts: Vec<u64>,
        en_power: u64,
    },
}

impl CacheRecord {
    pub fn from_verdict(t: &Triple, v: &TripleVerdict) -> Self {
        Self {
            n: t.n,
            d: t.d,
            a: t.a,
            status: v.status.as_str().to_owned(),
            reason: v.reason.id().to_owned(),
            witness: v.witness.as_ref().map(|w| match w {
                Witness::Point(q) => WitnessRecord::Point {
                    point: q.exponents().to_vec(),
                },
                Witness::Polynomial {
                    power_sum_parts,
                    en_power,
                } => WitnessRecord::Polynomial {
                    power_sum_parts: power_sum_parts.clone(),
                    en_power: *en_power,
                },
            }),
        }
    }

    pub fn to_verdict(&self) -> Result<(Triple, TripleVerdict), String> {
        let t = Triple::new(self.n, self.d, self.a).map_err(|e| e.to_string())?;
        let status = match self.status.as_str() {
            "good" => TripleStatus::Good,
            "bad" => TripleStatus::Bad,
            other => return Err(format!("unknown status {other:?}")),
        };
        let reason = TripleReason::from_id(&self.reason)
            .ok_or_else(|| format!("unknown reason {:?}", self.reason))?;
        let witness = match &self.witness {
            None => None,
            Some(WitnessRecord::Point { point }) => {
                if status != TripleStatus::Bad || point.len() as u64 != t.n {
                    return Err("point witness does not fit the triple".into());
                }
                let d = u32::try_from(t.d)
                    .map_err(|_| "d too large for a point witness".to_string())?;
                Some(Witness::Point(
                    RootPoint::new(d, point.clone()).map_err(|e| e.to_string())?,
                ))
            }
            Some(WitnessRecord::Polynomial {
                power_sum_parts,
                en_power,
            }) => {
                let deg: u64 = power_sum_parts.iter().sum::<u64>() + en_power * t.n;
                if status != TripleStatus::Good || deg != t.a {
                    return Err("polynomial witness does not fit the triple".into());
                }
                Some(Witness::Polynomial {
                    power_sum_parts: power_sum_parts.clone(),
                    en_power: *en_power,
                })
            }
        };
        Ok((
            t,
            TripleVerdict {
                status,
                reason,
                witness,
            },
        ))
    }
}

/// Verdict store. Entries are never revised: a second verdict with the other
/// status is an integrity error. With a backing file, new entries are appended
/// on [`TripleCache::flush`]; one writer at a time.
#[derive(Debug, Default)]
pub struct TripleCache {
    entries: BTreeMap<Triple, TripleVerdict>,
    path: Option<PathBuf>,
    pending: Vec<Triple>,
}

impl TripleCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Open (or start) a cache file.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, IntegrityError> {
        let path = path.as_ref().to_path_buf();
        let mut cache = Self::new();
        if path.exists() {
            cache.merge_file(&path)?;
            cache.pending.clear();
        }
        cache.path = Some(path);
        Ok(cache)
    }

    /// Merge records from a JSONL file; returns the number of new entries.
    pub fn merge_file(&mut self, path: &Path) -> Result<usize, IntegrityError> {
        let io = |e: std::io::Error| IntegrityError::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        };
        let file = std::fs::File::open(path).map_err(io)?;
        self.merge_reader(BufReader::new(file))
    }

    pub fn merge_reader(&mut self, reader: impl BufRead) -> Result<usize, IntegrityError> {
        let mut added = 0;
        for (i, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| IntegrityError::Io {
                path: "<reader>".into(),
                msg: e.to_string(),
            })?;
            if line.trim().is_empty() {
                continue;
            }
            let bad = |msg: String| IntegrityError::BadRecord { line: i + 1, msg };
            let rec: CacheRecord = serde_json::from_str(&line).map_err(|e| bad(e.to_string()))?;
            let (t, v) = rec.to_verdict().map_err(bad)?;
            if self.insert(t, v)? {
                added += 1;
            }
        }
        Ok(added)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, t: &Triple) -> Option<&TripleVerdict> {
        self.entries.get(t)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Triple, &TripleVerdict)> {
        self.entries.iter()
    }

    /// Returns whether the entry is new.
    pub fn insert(&mut self, t: Triple, v: TripleVerdict) -> Result<bool, IntegrityError> {
        if let Some(old) = self.entries.get(&t) {
            if old.status != v.status {
                return Err(IntegrityError::Conflict {
                    triple: t,
                    stored: old.status,
                    new: v.status,
                });
            }
            return Ok(false);
        }
        self.entries.insert(t, v);
        self.pending.push(t);
        Ok(true)
    }

    /// Append unsaved entries to the backing file, if any.
    pub fn flush(&mut self) -> Result<(), IntegrityError> {
        let Some(path) = &self.path else {
            self.pending.clear();
            return Ok(());
        };
        if self.pending.is_empty() {
            return Ok(());
        }
        let io = |e: std::io::Error| IntegrityError::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        };
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(io)?;
        let mut buf = String::new();
        for t in &self.pending {
            buf.push_str(&record_line(t, &self.entries[t]));
            buf.push('\n');
        }
        f.write_all(buf.as_bytes()).map_err(io)?;
        self.pending.clear();
        Ok(())
    }

    /// All entries sorted by `(n, d, a)`, one JSON object per line.
    pub fn export(&self, mut w: impl Write) -> std::io::Result<()> {
        for (t, v) in &self.entries {
            writeln!(w, "{}", record_line(t, v))?;
        }
        Ok(())
    }

    /// A verdict for `t` derived in one step from a stored entry.
    pub fn implied(&self, t: &Triple) -> Option<TripleVerdict> {
        let Triple { n, d, a } = *t;
        let lookup = |src: Triple, status: TripleStatus| {
            self.entries
                .get(&src)
                .filter(|v| v.status == status)
                .map(|v| (src, v))
        };
        let proper = |m: u64| divisors(m).into_iter().filter(move |&x| x < m);
        for d0 in proper(d) {
            if let Some((src, v)) = lookup(Triple { n, d: d0, a }, TripleStatus::Bad) {
                return Some(derive(Rule::BadD, d / d0, &src, v).1);
            }
        }
        for n0 in proper(n) {
            if let Some((src, v)) = lookup(Triple { n: n0, d, a }, TripleStatus::Bad) {
                return Some(derive(Rule::BadN, n / n0, &src, v).1);
            }
        }
        for k in divisors(gcd(gcd(n, d), a)).into_iter().filter(|&k| k > 1) {
            if let Some((src, v)) = lookup(
                Triple {
                    n: n / k,
                    d: d / k,
                    a: a / k,
                },
                TripleStatus::Bad,
            ) {
                return Some(derive(Rule::BadAll, k, &src, v).1);
            }
        }
        for a0 in proper(a) {
            if let Some((src, v)) = lookup(Triple { n, d, a: a0 }, TripleStatus::Good) {
                return Some(derive(Rule::GoodA, a / a0, &src, v).1);
            }
        }
        for k in divisors(gcd(d, a)).into_iter().filter(|&k| k > 1) {
            if let Some((src, v)) = lookup(
                Triple {
                    n,
                    d: d / k,
                    a: a / k,
                },
                TripleStatus::Good,
            ) {
                return Some(derive(Rule::GoodDA, k, &src, v).1);
            }
        }
        None
    }
}

fn record_line(t: &Triple, v: &TripleVerdict) -> String {
    serde_json::to_string(&CacheRecord::from_verdict(t, v)).expect("records serialize")
}

#[derive(Debug, Clone, Copy)]
enum Rule {
    BadD,
    BadN,
    BadAll,
    GoodA,
    GoodDA,
}

/// Apply a rule with factor `k` to a stored verdict, transporting its witness.
fn derive(rule: Rule, k: u64, src: &Triple, v: &TripleVerdict) -> (Triple, TripleVerdict) {
    let Triple { n, d, a } = *src;
    let (t, reason) = match rule {
        Rule::BadD => (Triple { n, d: k * d, a }, TripleReason::IncBadD),
        Rule::BadN => (Triple { n: k * n, d, a }, TripleReason::IncBadN),
        Rule::BadAll => (
            Triple {
                n: k * n,
                d: k * d,
                a: k * a,
            },
            TripleReason::IncBadAll,
        ),
        Rule::GoodA => (Triple { n, d, a: k * a }, TripleReason::IncGoodA),
        Rule::GoodDA => (
            Triple {
                n,
                d: k * d,
                a: k * a,
            },
            TripleReason::IncGoodDA,
        ),
    };
    let witness = v.witness.as_ref().and_then(|w| transport(rule, k, src, w));
    (
        t,
        TripleVerdict {
            status: v.status,
            reason,
            witness,
        },
    )
}

fn transport(rule: Rule, k: u64, src: &Triple, w: &Witness) -> Option<Witness> {
    let new_d = |m: u64| u32::try_from(m).ok();
    match (rule, w) {
        (Rule::BadD, Witness::Point(q)) => {
            let exps = q
                .exponents()
                .iter()
                .map(|&b| (u64::from(b) * k) as u32)
                .collect();
            RootPoint::new(new_d(k * src.d)?, exps)
                .ok()
                .map(Witness::Point)
        }
        (Rule::BadN, Witness::Point(q)) => {
            let exps = q
                .exponents()
                .iter()
                .flat_map(|&b| std::iter::repeat_n(b, k as usize))
                .collect();
            RootPoint::new(q.d(), exps).ok().map(Witness::Point)
        }
        (Rule::BadAll, Witness::Point(q)) => {
            // all k-th roots of each coordinate
            let m = k * src.d;
            let exps = q
                .exponents()
                .iter()
                .flat_map(|&b| (1..=k).map(move |i| ((u64::from(b) + i * src.d) % m) as u32))
                .collect();
            RootPoint::new(new_d(m)?, exps).ok().map(Witness::Point)
        }
        (
            Rule::GoodA,
            Witness::Polynomial {
                power_sum_parts,
                en_power,
            },
        ) => Some(Witness::Polynomial {
            power_sum_parts: power_sum_parts
                .iter()
                .flat_map(|&p| std::iter::repeat_n(p, k as usize))
                .collect(),
            en_power: en_power * k,
        }),
        (
            Rule::GoodDA,
            Witness::Polynomial {
                power_sum_parts,
                en_power,
            },
        ) => Some(Witness::Polynomial {
            power_sum_parts: power_sum_parts.iter().map(|&p| p * k).collect(),
            en_power: en_power * k,
        }),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub n_max: u64,
    pub d_max: u64,
    pub a_max: u64,
}

impl Bounds {
    fn contains(&self, t: &Triple) -> bool {
        t.n <= self.n_max && t.d <= self.d_max && t.a <= self.a_max
    }
}

/// Close the cache under the monotonicity rules inside `bounds`; returns the
/// number of entries added.
pub fn propagate(cache: &mut TripleCache, bounds: Bounds) -> Result<usize, IntegrityError> {
    let mut queue: VecDeque<Triple> = cache.entries.keys().copied().collect();
    let mut added = 0;
    while let Some(src) = queue.pop_front() {
        let v = cache.entries[&src].clone();
        let rules: &[Rule] = match v.status {
            TripleStatus::Bad => &[Rule::BadD, Rule::BadN, Rule::BadAll],
            TripleStatus::Good => &[Rule::GoodA, Rule::GoodDA],
        };
        for &rule in rules {
            for k in 2.. {
                let (t, derived) = derive(rule, k, &src, &v);
                if !bounds.contains(&t) {
                    break;
                }
                if cache.insert(t, derived)? {
                    added += 1;
                    queue.push_back(t);
                }
            }
        }
    }
    Ok(added)
}
