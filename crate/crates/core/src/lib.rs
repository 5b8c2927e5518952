//! Degree data of regular sequences of symmetric-group-invariant type in
//! `ℂ[x_1..x_n]`: exact decision procedures, explicit constructions and
//! Gröbner-basis certificates, plus the good/bad classification of triples
//! `(n, d, a)`.

pub mod classify;
pub mod cyclo;
pub mod groebner;
pub mod mpoly;
pub mod numth;
pub mod triples;
pub mod upoly;

pub use classify::{
    classify_alternating, classify_s22, classify_symmetric, construct_s22, construct_symmetric,
    ConstructedSeq, Criterion, DegSeq, Status, Verdict,
};
pub use cyclo::{CycElt, RootPoint};
pub use groebner::{Budget, GroebnerError, TermOrder};
pub use mpoly::{MPoly, SymExpr};
pub use numth::PrimeFactorization;
pub use triples::{
    classify_triple, Triple, TripleCache, TripleReason, TripleStatus, TripleVerdict, Witness,
};
pub use upoly::{hilbert_quotient, IntPoly};
