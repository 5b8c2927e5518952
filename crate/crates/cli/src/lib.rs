//! Command-line front end. Exit codes: 0 decided, 1 input or integrity
//! error, 2 undecided (Unknown status, undecided triple, exhausted budget).

pub mod args;
mod records;
mod scan;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::Parser;
use serde::Serialize;

use args::{Cli, Command, DegseqArgs, OracleArgs};
use records::{
    CacheRecordSummary, Certificate, DegseqRecord, HilbertRecord, OracleRecord, S22Record,
    TripleRecord, VerifyRecord,
};
use symreg::classify::{construct_s22, ClassifyError, Status};
use symreg::groebner::{verify_regular_maximal, verify_regular_partial, Budget, GroebnerError};
use symreg::triples::{
    classify_triple_traced, is_bad_oracle_with, ClassifyOptions, OracleOptions, TripleError,
};
use symreg::upoly::HilbertError;
use symreg::{
    classify_alternating, classify_s22, classify_symmetric, construct_symmetric, hilbert_quotient,
    DegSeq, MPoly, Triple, TripleCache,
};

pub use scan::{scan, ScanSummary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;

/// Parse `argv` and run the command, writing records to `out` and
/// diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

struct Emitter<'a> {
    json: bool,
    out: &'a mut dyn Write,
    start: Instant,
}

impl Emitter<'_> {
    fn elapsed_ms(&self) -> f64 {
        (self.start.elapsed().as_secs_f64() * 1e6).round() / 1e3
    }

    fn emit<R: Serialize>(&mut self, rec: &R, text: impl FnOnce(&R) -> String) -> Result<()> {
        if self.json {
            writeln!(self.out, "{}", serde_json::to_string(rec)?)?;
        } else {
            write!(self.out, "{}", text(rec))?;
        }
        Ok(())
    }
}

fn status_code(s: Status) -> i32 {
    if s == Status::Unknown {
        EXIT_UNDECIDED
    } else {
        EXIT_OK
    }
}

fn degseq(args: &DegseqArgs) -> Result<DegSeq> {
    let degrees = args.degrees.0.clone();
    let n = args.n.unwrap_or(degrees.len());
    DegSeq::maximal(n, degrees).context("invalid degree sequence")
}

fn oracle_options(o: &OracleArgs) -> ClassifyOptions {
    ClassifyOptions {
        allow_oracle: !o.no_oracle,
        oracle: OracleOptions {
            max_points: Some(o.max_points),
            parallel: true,
        },
    }
}

fn open_cache(path: Option<&Path>) -> Result<TripleCache> {
    match path {
        Some(p) => TripleCache::open(p).with_context(|| format!("cache {}", p.display())),
        None => Ok(TripleCache::new()),
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let budget = Budget::new(cli.budget);
    let mut em = Emitter {
        json: cli.json,
        out,
        start: Instant::now(),
    };
    match &cli.command {
        Command::DegseqClassify(args) => {
            let ds = degseq(args)?;
            let v = classify_symmetric(&ds);
            let mut rec = DegseqRecord::new("degseq-classify", ds.n(), ds.degrees(), &v);
            rec.elapsed_ms = em.elapsed_ms();
            em.emit(&rec, DegseqRecord::text)?;
            Ok(status_code(v.status))
        }
        Command::DegseqConstruct { seq, verify } => {
            let ds = degseq(seq)?;
            let v = classify_symmetric(&ds);
            let cert = match construct_symmetric(&ds) {
                Ok(c) => Some(c),
                Err(ClassifyError::NotConstructible(_)) => None,
                Err(e) => return Err(e).context("construction failed"),
            };
            let mut rec = DegseqRecord::new("degseq-construct", ds.n(), ds.degrees(), &v);
            let mut code = status_code(v.status);
            if let Some(c) = &cert {
                let verified = if *verify {
                    match c.verify(budget) {
                        Ok(b) => Some(b),
                        Err(GroebnerError::BudgetExceeded(_)) => {
                            rec.detail = Some("verification budget exceeded".into());
                            code = EXIT_UNDECIDED;
                            None
                        }
                        Err(e) => return Err(e).context("verification failed"),
                    }
                } else {
                    None
                };
                rec.certificate = Some(Certificate::new(c, verified));
            } else if v.status == Status::NotRegular {
                rec.detail
                    .get_or_insert_with(|| "no regular sequence exists".into());
            }
            rec.elapsed_ms = em.elapsed_ms();
            em.emit(&rec, DegseqRecord::text)?;
            Ok(code)
        }
        Command::DegseqVerify { n, weights, polys } => {
            let weights_given = weights.is_some();
            let (n, weights) = match (n, weights) {
                (_, Some(w)) => {
                    if n.is_some_and(|n| n != w.0.len()) {
                        bail!("-n disagrees with the number of weights");
                    }
                    (w.0.len(), w.0.clone())
                }
                (Some(n), None) => (*n, vec![1; *n]),
                (None, None) => (polys.len(), vec![1; polys.len()]),
            };
            let w32: Vec<u32> = weights
                .iter()
                .map(|&w| u32::try_from(w))
                .collect::<Result<_, _>>()?;
            let prefix = if weights_given { 'e' } else { 'x' };
            let parsed: Vec<MPoly> = polys
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    MPoly::parse_weighted(p, prefix, &w32)
                        .with_context(|| format!("polynomial {} ({p:?})", i + 1))
                })
                .collect::<Result<_>>()?;
            if parsed.len() > n {
                bail!("{} polynomials exceed the {n} variables", parsed.len());
            }
            let res = if parsed.len() == n {
                verify_regular_maximal(&parsed, &w32, budget)
            } else {
                verify_regular_partial(&parsed, &w32, budget)
            };
            let (status, detail, code) = match res {
                Ok(true) => ("Regular", None, EXIT_OK),
                Ok(false) => ("NotRegular", None, EXIT_OK),
                Err(GroebnerError::BudgetExceeded(k)) => (
                    "Unknown",
                    Some(format!("Gröbner budget of {k} steps exceeded")),
                    EXIT_UNDECIDED,
                ),
                Err(e) => return Err(e).context("cannot verify"),
            };
            let rec = VerifyRecord {
                command: "degseq-verify",
                n,
                weights,
                polynomials: parsed
                    .iter()
                    .map(|p| p.display_with(prefix).to_string())
                    .collect(),
                status: status.into(),
                detail,
                elapsed_ms: em.elapsed_ms(),
            };
            em.emit(&rec, VerifyRecord::text)?;
            Ok(code)
        }
        Command::TripleClassify { triple, oracle } => {
            let t = Triple::new(triple.n, triple.d, triple.a)?;
            let mut cache = open_cache(oracle.cache.as_deref())?;
            let (mut rec, code) =
                match classify_triple_traced(&t, &oracle_options(oracle), Some(&cache)) {
                    Ok((v, source)) => {
                        cache.insert(t, v.clone()).context("cache integrity")?;
                        cache.flush()?;
                        (
                            TripleRecord::decided("triple-classify", &t, &v, source),
                            EXIT_OK,
                        )
                    }
                    Err(
                        e @ (TripleError::Undecided
                        | TripleError::TooManyPoints { .. }
                        | TripleError::ModulusTooLarge(_)),
                    ) => (
                        TripleRecord::undecided("triple-classify", &t, e.to_string()),
                        EXIT_UNDECIDED,
                    ),
                    Err(e) => return Err(e.into()),
                };
            rec.elapsed_ms = em.elapsed_ms();
            em.emit(&rec, TripleRecord::text)?;
            Ok(code)
        }
        Command::TripleOracle { triple, max_points } => {
            let t = Triple::new(triple.n, triple.d, triple.a)?;
            let opts = OracleOptions {
                max_points: Some(*max_points),
                parallel: true,
            };
            let (status, witness, points, detail, code) = match is_bad_oracle_with(&t, &opts) {
                Ok(o) => {
                    let s = if o.bad { "Bad" } else { "Good" };
                    (
                        s,
                        o.witness.map(|q| q.exponents().to_vec()),
                        o.points,
                        None,
                        EXIT_OK,
                    )
                }
                Err(e @ (TripleError::TooManyPoints { .. } | TripleError::ModulusTooLarge(_))) => {
                    let pts = symreg::triples::num_vd_points(t.n, t.d);
                    ("Undecided", None, pts, Some(e.to_string()), EXIT_UNDECIDED)
                }
                Err(e) => return Err(e.into()),
            };
            let rec = OracleRecord {
                command: "triple-oracle",
                n: t.n,
                d: t.d,
                a: t.a,
                points: points.to_string(),
                status: status.into(),
                witness,
                detail,
                elapsed_ms: em.elapsed_ms(),
            };
            em.emit(&rec, OracleRecord::text)?;
            Ok(code)
        }
        Command::TripleScan {
            n,
            d,
            a,
            oracle,
            check,
        } => {
            let mut cache = open_cache(oracle.cache.as_deref())?;
            let (records, summary) = scan(
                n.clone(),
                d.clone(),
                a.clone(),
                &oracle_options(oracle),
                &mut cache,
                *check,
            )?;
            cache.flush()?;
            for rec in &records {
                em.emit(rec, TripleRecord::text)?;
            }
            writeln!(err, "{summary}")?;
            if summary.disagreements > 0 {
                bail!("{} criterion/oracle disagreements", summary.disagreements);
            }
            Ok(if summary.undecided > 0 {
                EXIT_UNDECIDED
            } else {
                EXIT_OK
            })
        }
        Command::S22Classify(s) => {
            let v = classify_s22(s.a, s.c, s.d);
            let rec = S22Record {
                command: "s22-classify",
                a: s.a,
                c: s.c,
                d: s.d,
                status: v.status.to_string(),
                reason: v.reason.id().into(),
                citation: v.reason.citation().into(),
                detail: v.detail.clone(),
                certificate: None,
                elapsed_ms: em.elapsed_ms(),
            };
            em.emit(&rec, S22Record::text)?;
            Ok(status_code(v.status))
        }
        Command::S22Construct { s22: s, verify } => {
            let v = classify_s22(s.a, s.c, s.d);
            let mut code = status_code(v.status);
            let mut detail = v.detail.clone();
            let certificate = match construct_s22(s.a, s.c, s.d) {
                Ok(c) => {
                    let verified = if *verify {
                        match c.verify(budget) {
                            Ok(b) => Some(b),
                            Err(GroebnerError::BudgetExceeded(_)) => {
                                detail = Some("verification budget exceeded".into());
                                code = EXIT_UNDECIDED;
                                None
                            }
                            Err(e) => return Err(e).context("verification failed"),
                        }
                    } else {
                        None
                    };
                    Some(Certificate::new(&c, verified))
                }
                Err(ClassifyError::NotConstructible(_)) => None,
                Err(e) => return Err(e).context("construction failed"),
            };
            let rec = S22Record {
                command: "s22-construct",
                a: s.a,
                c: s.c,
                d: s.d,
                status: v.status.to_string(),
                reason: v.reason.id().into(),
                citation: v.reason.citation().into(),
                detail,
                certificate,
                elapsed_ms: em.elapsed_ms(),
            };
            em.emit(&rec, S22Record::text)?;
            Ok(code)
        }
        Command::AltClassify {
            n,
            degrees,
            alt_degree,
        } => {
            if degrees.0.len() + 1 != *n {
                bail!(
                    "expected {} symmetric degrees for n = {n}, got {}",
                    n.saturating_sub(1),
                    degrees.0.len()
                );
            }
            if *alt_degree == 0 {
                bail!("the alternating degree must be positive");
            }
            let ds = DegSeq::new(*n, degrees.0.clone()).context("invalid degree sequence")?;
            let v = classify_alternating(&ds, *alt_degree);
            let mut rec = DegseqRecord::new("alt-classify", *n, &degrees.0, &v);
            rec.alt_degree = Some(*alt_degree);
            rec.elapsed_ms = em.elapsed_ms();
            em.emit(&rec, DegseqRecord::text)?;
            Ok(status_code(v.status))
        }
        Command::Hilbert(args) => {
            let ds = degseq(args)?;
            let rec = match hilbert_quotient(ds.n(), ds.degrees()) {
                Ok(q) => HilbertRecord {
                    command: "hilbert",
                    n: ds.n(),
                    degrees: ds.degrees().to_vec(),
                    integral: true,
                    polynomial: Some(q.poly.to_string()),
                    coefficients: Some(q.poly.coeffs().iter().map(|c| c.to_string()).collect()),
                    nonnegative: Some(q.nonnegative),
                    elapsed_ms: em.elapsed_ms(),
                },
                Err(HilbertError::NotIntegral) => HilbertRecord {
                    command: "hilbert",
                    n: ds.n(),
                    degrees: ds.degrees().to_vec(),
                    integral: false,
                    polynomial: None,
                    coefficients: None,
                    nonnegative: None,
                    elapsed_ms: em.elapsed_ms(),
                },
                Err(e) => return Err(e.into()),
            };
            em.emit(&rec, HilbertRecord::text)?;
            Ok(EXIT_OK)
        }
        Command::CacheExport { cache, output } => {
            if !cache.exists() {
                bail!("cache {} does not exist", cache.display());
            }
            let c = open_cache(Some(cache))?;
            match output {
                None => c.export(&mut *em.out)?,
                Some(path) => {
                    let mut buf = Vec::new();
                    c.export(&mut buf)?;
                    std::fs::write(path, buf)
                        .with_context(|| format!("writing {}", path.display()))?;
                    let rec = CacheRecordSummary {
                        command: "cache-export",
                        path: path.display().to_string(),
                        entries: c.len(),
                        added: 0,
                        elapsed_ms: em.elapsed_ms(),
                    };
                    em.emit(&rec, CacheRecordSummary::text)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::CacheImport { file, cache } => {
            let mut c = open_cache(Some(cache))?;
            let added = c
                .merge_file(file)
                .with_context(|| format!("importing {}", file.display()))?;
            c.flush()?;
            let rec = CacheRecordSummary {
                command: "cache-import",
                path: cache.display().to_string(),
                entries: c.len(),
                added,
                elapsed_ms: em.elapsed_ms(),
            };
            em.emit(&rec, CacheRecordSummary::text)?;
            Ok(EXIT_OK)
        }
    }
}
