//! Exact arithmetic in binary fields GF(2^n) and an exhaustive search engine
//! for permutation binomials of the form `x^i + ax`.
//!
//! The crate provides three independent permutation testers (direct
//! evaluation, the multiplicative AGW reduction, and Hermite power sums),
//! validators for five explicit binomial families, and a report format for
//! reproducible classification runs.

pub mod combinatorics;
pub mod error;
pub mod field;
pub mod index;
pub mod perm;
pub mod report;
pub mod search;
pub mod theorems;

pub use error::{Error, Result};
pub use field::{build_field, FieldElement, FieldSpec};
pub use index::{compute_index, IndexForm};
pub use perm::BinomialSpec;
pub use report::{FieldModel, Report, ReportFormat};
pub use search::{run_search, search_field, PBRecord, SearchConfig, Tester, WORKERS_ENV};
pub use theorems::{FamilyTag, TheoremCase, ValidationReport};

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
