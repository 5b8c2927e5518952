//! Output records. Field order and names are the JSON schema; every key is
//! always present (absent values are `null`).

use std::fmt::Write as _;

use serde::Serialize;
use symreg::classify::{ConstructedSeq, Verdict};
use symreg::triples::{CacheRecord, Source, WitnessRecord};
use symreg::{Triple, TripleVerdict};

#[derive(Debug, Serialize)]
pub struct Certificate {
    pub construction: String,
    pub roles: Vec<u64>,
    pub generators: Vec<String>,
    pub h: Option<String>,
    pub hp: Option<String>,
    pub verified: Option<bool>,
}

impl Certificate {
    pub fn new(c: &ConstructedSeq, verified: Option<bool>) -> Self {
        Self {
            construction: c.provenance.construction.to_string(),
            roles: c.provenance.roles.clone(),
            generators: c.generators.iter().map(|g| g.to_string()).collect(),
            h: c.specht.as_ref().map(|s| s.h.to_string()),
            hp: c.specht.as_ref().map(|s| s.hp.to_string()),
            verified,
        }
    }

    fn text(&self, out: &mut String) {
        let _ = writeln!(out, "construction: {}", self.construction);
        if let (Some(h), Some(hp)) = (&self.h, &self.hp) {
            let _ = writeln!(out, "  h  = {h}\n  h' = {hp}");
        }
        for (i, g) in self.generators.iter().enumerate() {
            let _ = writeln!(out, "  f{} = {g}", i + 1);
        }
        if let Some(v) = self.verified {
            let _ = writeln!(out, "verified: {v}");
        }
    }
}

/// `degseq-classify`, `degseq-construct`, `alt-classify`.
#[derive(Debug, Serialize)]
pub struct DegseqRecord {
    pub command: &'static str,
    pub n: usize,
    pub input: Vec<u64>,
    pub sorted: Vec<u64>,
    pub alt_degree: Option<u64>,
    pub status: String,
    pub reason: String,
    pub citation: String,
    pub detail: Option<String>,
    pub certificate: Option<Certificate>,
    pub elapsed_ms: f64,
}

impl DegseqRecord {
    pub fn new(command: &'static str, n: usize, input: &[u64], v: &Verdict) -> Self {
        let mut sorted = input.to_vec();
        sorted.sort_unstable();
        Self {
            command,
            n,
            input: input.to_vec(),
            sorted,
            alt_degree: None,
            status: v.status.to_string(),
            reason: v.reason.id().to_owned(),
            citation: v.reason.citation().to_owned(),
            detail: v.detail.clone(),
            certificate: None,
            elapsed_ms: 0.0,
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!(
            "n = {}, degrees {:?} (sorted {:?})",
            self.n, self.input, self.sorted
        );
        if let Some(d) = self.alt_degree {
            let _ = write!(out, ", alternating degree {d}");
        }
        let _ = writeln!(out, "\n{}: {}", self.status, self.citation);
        if let Some(d) = &self.detail {
            let _ = writeln!(out, "detail: {d}");
        }
        if let Some(c) = &self.certificate {
            c.text(&mut out);
        }
        out
    }
}

/// `s22-classify`, `s22-construct`.
#[derive(Debug, Serialize)]
pub struct S22Record {
    pub command: &'static str,
    pub a: u64,
    pub c: u64,
    pub d: u64,
    pub status: String,
    pub reason: String,
    pub citation: String,
    pub detail: Option<String>,
    pub certificate: Option<Certificate>,
    pub elapsed_ms: f64,
}

impl S22Record {
    pub fn text(&self) -> String {
        let mut out = format!(
            "S(2,2) in degree {}, symmetric degrees {}, {}\n",
            self.a, self.c, self.d
        );
        let _ = writeln!(out, "{}: {}", self.status, self.citation);
        if let Some(d) = &self.detail {
            let _ = writeln!(out, "detail: {d}");
        }
        if let Some(c) = &self.certificate {
            c.text(&mut out);
        }
        out
    }
}

/// `degseq-verify`.
#[derive(Debug, Serialize)]
pub struct VerifyRecord {
    pub command: &'static str,
    pub n: usize,
    pub weights: Vec<u64>,
    pub polynomials: Vec<String>,
    pub status: String,
    pub detail: Option<String>,
    pub elapsed_ms: f64,
}

impl VerifyRecord {
    pub fn text(&self) -> String {
        let mut out = format!(
            "{} polynomials in {} variables, weights {:?}\n{}\n",
            self.polynomials.len(),
            self.n,
            self.weights,
            self.status
        );
        if let Some(d) = &self.detail {
            let _ = writeln!(out, "detail: {d}");
        }
        out
    }
}

/// `triple-classify`, `triple-scan`.
#[derive(Debug, Serialize)]
pub struct TripleRecord {
    pub command: &'static str,
    pub n: u64,
    pub d: u64,
    pub a: u64,
    pub status: String,
    pub reason: Option<String>,
    pub citation: Option<String>,
    pub source: Option<String>,
    pub witness: Option<WitnessRecord>,
    pub detail: Option<String>,
    pub elapsed_ms: f64,
}

impl TripleRecord {
    pub fn decided(command: &'static str, t: &Triple, v: &TripleVerdict, source: Source) -> Self {
        Self {
            command,
            n: t.n,
            d: t.d,
            a: t.a,
            status: v.status.to_string(),
            reason: Some(v.reason.id().to_owned()),
            citation: Some(v.reason.citation().to_owned()),
            source: Some(source.as_str().to_owned()),
            witness: CacheRecord::from_verdict(t, v).witness,
            detail: None,
            elapsed_ms: 0.0,
        }
    }

    pub fn undecided(command: &'static str, t: &Triple, detail: String) -> Self {
        Self {
            command,
            n: t.n,
            d: t.d,
            a: t.a,
            status: "Undecided".into(),
            reason: None,
            citation: None,
            source: None,
            witness: None,
            detail: Some(detail),
            elapsed_ms: 0.0,
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!("({},{},{}) {}", self.n, self.d, self.a, self.status);
        if let Some(c) = &self.citation {
            let _ = write!(out, ": {c}");
        }
        if let Some(s) = &self.source {
            let _ = write!(out, " [{s}]");
        }
        if let Some(w) = &self.witness {
            let _ = write!(
                out,
                "\n  witness: {}",
                serde_json::to_string(w).expect("serializable")
            );
        }
        if let Some(d) = &self.detail {
            let _ = write!(out, "\n  {d}");
        }
        out.push('\n');
        out
    }
}

/// `triple-oracle`.
#[derive(Debug, Serialize)]
pub struct OracleRecord {
    pub command: &'static str,
    pub n: u64,
    pub d: u64,
    pub a: u64,
    pub points: String,
    pub status: String,
    pub witness: Option<Vec<u32>>,
    pub detail: Option<String>,
    pub elapsed_ms: f64,
}

impl OracleRecord {
    pub fn text(&self) -> String {
        let mut out = format!(
            "({},{},{}) {} after {} canonical points",
            self.n, self.d, self.a, self.status, self.points
        );
        if let Some(w) = &self.witness {
            let _ = write!(out, "\n  witness exponents: {w:?}");
        }
        if let Some(d) = &self.detail {
            let _ = write!(out, "\n  {d}");
        }
        out.push('\n');
        out
    }
}

/// `hilbert`.
#[derive(Debug, Serialize)]
pub struct HilbertRecord {
    pub command: &'static str,
    pub n: usize,
    pub degrees: Vec<u64>,
    pub integral: bool,
    pub polynomial: Option<String>,
    pub coefficients: Option<Vec<String>>,
    pub nonnegative: Option<bool>,
    pub elapsed_ms: f64,
}

impl HilbertRecord {
    pub fn text(&self) -> String {
        match &self.polynomial {
            Some(p) => format!("{p}\n"),
            None => "not an integer polynomial\n".into(),
        }
    }
}

/// `cache-import`, `cache-export` with `--output`.
#[derive(Debug, Serialize)]
pub struct CacheRecordSummary {
    pub command: &'static str,
    pub path: String,
    pub entries: usize,
    pub added: usize,
    pub elapsed_ms: f64,
}

impl CacheRecordSummary {
    pub fn text(&self) -> String {
        format!(
            "{}: {} entries ({} new)\n",
            self.path, self.entries, self.added
        )
    }
}
