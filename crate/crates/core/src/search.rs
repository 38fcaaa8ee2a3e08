//! Exhaustive classification of permutation binomials x^i + ax over GF(2^n).
//!
//! Work is partitioned by exponent i across rayon workers sharing the
//! immutable field tables; each worker owns a private occupancy mask and
//! results are gathered in exponent order, so reports are byte-identical
//! regardless of worker count.

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{build_field, FieldElement, FieldSpec};
use crate::index::{compute_index, is_pp_via_agw};
use crate::perm::{is_pp_hermite, BinomialSpec, DirectTester};
use crate::report::{FieldModel, Report, ReportFormat};
use crate::theorems::{families_predicting, FamilyTag};

/// Environment override for the worker count when the config leaves it
/// unset.
pub const WORKERS_ENV: &str = "PERMBIN_WORKERS";

#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum Tester {
    /// AGW reduction when the index helps, direct evaluation otherwise.
    #[default]
    Auto,
    Direct,
    Agw,
    Hermite,
    /// Run all three on every pair; any disagreement is a hard failure.
    CrossCheck,
}

impl std::str::FromStr for Tester {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Tester::Auto),
            "direct" => Ok(Tester::Direct),
            "agw" => Ok(Tester::Agw),
            "hermite" => Ok(Tester::Hermite),
            "cross-check" => Ok(Tester::CrossCheck),
            _ => Err(Error::Config(format!(
                "unknown tester '{s}' (expected direct|agw|hermite|cross-check)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub n: u32,
    pub tester: Tester,
    pub skip_linearized: bool,
    /// Inclusive sub-range of exponents; None scans [2, q-2].
    pub i_range: Option<(u32, u32)>,
    /// Test one coefficient per squaring/coset orbit and expand the verdict.
    pub a_reduction: bool,
    /// Worker count; None defers to WORKERS_ENV, then to the rayon default.
    pub workers: Option<usize>,
    pub output: Option<(PathBuf, ReportFormat)>,
}

impl SearchConfig {
    pub fn new(n: u32) -> Self {
        SearchConfig {
            n,
            tester: Tester::Auto,
            skip_linearized: false,
            i_range: None,
            a_reduction: true,
            workers: None,
            output: None,
        }
    }

    fn validate(&self, field: &FieldSpec) -> Result<(u32, u32)> {
        if matches!(self.tester, Tester::Hermite | Tester::CrossCheck) && self.n > 10 {
            return Err(Error::HermiteRefused(self.n));
        }
        let max = field.q() - 2;
        if max < 2 {
            return Err(Error::Config(format!(
                "GF(2^{}) admits no exponents in [2, q-2]",
                self.n
            )));
        }
        let (lo, hi) = self.i_range.unwrap_or((2, max));
        if lo < 2 || hi > max || lo > hi {
            return Err(Error::Config(format!(
                "exponent range [{lo}, {hi}] outside [2, {max}]"
            )));
        }
        Ok((lo, hi))
    }
}

/// One classified exponent with a nonempty valid-coefficient set. The full
/// list is retained for n <= 8 and elided to (count, min, max, sample)
/// above.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PBRecord {
    pub n: u32,
    pub i: u32,
    /// The index d = (q-1)/gcd(i-1, q-1).
    pub index: u32,
    pub linearized: bool,
    pub valid_count: u64,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::report::hex_vec_opt"
    )]
    pub valid_a: Option<Vec<u32>>,
    #[serde(with = "crate::report::hex_u32")]
    pub a_min: u32,
    #[serde(with = "crate::report::hex_u32")]
    pub a_max: u32,
    #[serde(with = "crate::report::hex_u32")]
    pub a_sample: u32,
    pub theorem_tags: Vec<FamilyTag>,
}

/// Valid-a lists are stored in full up to this degree.
const FULL_LIST_MAX_N: u32 = 8;

impl PBRecord {
    /// Builds a record from a sorted-or-not valid set; empty sets are a
    /// caller error (rows exist only for nonempty sets).
    pub fn from_valid_set(field: &FieldSpec, i: u32, mut valid: Vec<u32>) -> Result<Self> {
        if valid.is_empty() {
            return Err(Error::Precondition(
                "record requires a nonempty valid set".into(),
            ));
        }
        valid.sort_unstable();
        let form = compute_index(field, i)?;
        let n = field.n();
        let a_min = valid[0];
        let a_max = *valid.last().unwrap();
        Ok(PBRecord {
            n,
            i,
            index: form.d,
            linearized: i.is_power_of_two(),
            valid_count: valid.len() as u64,
            a_min,
            a_max,
            a_sample: a_min,
            valid_a: (n <= FULL_LIST_MAX_N).then_some(valid),
            theorem_tags: families_predicting(n, i),
        })
    }
}

/// Whether the linearized binomial x^{2^j} + ax permutes: a must not be a
/// (2^j - 1)-th power, i.e. a^{(q-1)/(2^{gcd(j,n)}-1)} != 1.
pub fn linearized_valid(field: &FieldSpec, j: u32, a: FieldElement) -> bool {
    debug_assert!(!a.is_zero());
    let s = (1u64 << crate::gcd(j as u64, field.n() as u64)) - 1;
    field.log_raw(a.0) as u64 % s != 0
}

fn test_one(
    field: &FieldSpec,
    tester: Tester,
    direct: &mut DirectTester,
    i: u32,
    a: FieldElement,
) -> Result<bool> {
    match tester {
        Tester::Auto | Tester::Agw => is_pp_via_agw(field, i, a),
        Tester::Direct => Ok(direct.is_pp(field, i, a)),
        Tester::Hermite => Ok(is_pp_hermite(&BinomialSpec::new(field, i, a)?)),
        Tester::CrossCheck => unreachable!("cross-check handled separately"),
    }
}

/// Scans every coefficient for one exponent, applying the root-count filter
/// (log a must not be divisible by s) and, when enabled, the orbit
/// reduction: the verdict depends only on log a mod s, up to doubling, so
/// one representative per doubling orbit decides a whole family of classes.
fn valid_set_for_exponent(
    field: &FieldSpec,
    config: &SearchConfig,
    direct: &mut DirectTester,
    i: u32,
) -> Result<Vec<u32>> {
    let form = compute_index(field, i)?;
    let s = form.s as u64;
    if s == 1 {
        // a is always an (i-1)-th power: x^i + ax always has a second root.
        return Ok(Vec::new());
    }
    let qm1 = field.qm1() as u64;
    let mut valid = Vec::new();
    if config.a_reduction {
        // Doubling orbits on the nonzero residues mod s (s is odd, so
        // multiplication by 2 permutes Z/s).
        let mut orbit_done = vec![false; form.s as usize];
        let mut orbit = Vec::new();
        for r in 1..s {
            if orbit_done[r as usize] {
                continue;
            }
            orbit.clear();
            let mut c = r;
            while !orbit_done[c as usize] {
                orbit_done[c as usize] = true;
                orbit.push(c);
                c = c * 2 % s;
            }
            // log a = r picks a representative of class r
            let rep = FieldElement(field.exp_raw(r));
            if test_one(field, config.tester, direct, i, rep)? {
                for &cls in &orbit {
                    let mut l = cls;
                    while l < qm1 {
                        valid.push(field.exp_raw(l));
                        l += s;
                    }
                }
            }
        }
    } else {
        for a in field.nonzero_elements() {
            if field.log_raw(a.0) as u64 % s == 0 {
                continue;
            }
            if test_one(field, config.tester, direct, i, a)? {
                valid.push(a.0);
            }
        }
    }
    Ok(valid)
}

/// Cross-check scan: every tester on every nonzero coefficient, no filters,
/// hard failure on any disagreement.
fn cross_check_exponent(field: &FieldSpec, direct: &mut DirectTester, i: u32) -> Result<Vec<u32>> {
    let mut valid = Vec::new();
    for a in field.nonzero_elements() {
        let d = direct.is_pp(field, i, a);
        let g = is_pp_via_agw(field, i, a)?;
        let h = is_pp_hermite(&BinomialSpec::new(field, i, a)?);
        if d != g || d != h {
            return Err(Error::TesterDisagreement {
                i,
                a: a.0,
                direct: d,
                agw: g,
                hermite: Some(h),
            });
        }
        if d {
            valid.push(a.0);
        }
    }
    Ok(valid)
}

/// Classifies all exponents of the configured range over the given field;
/// one row per exponent with a nonempty valid set, sorted by i.
pub fn search_field(field: &FieldSpec, config: &SearchConfig) -> Result<Vec<PBRecord>> {
    let (lo, hi) = config.validate(field)?;
    let rows: Vec<Option<PBRecord>> = (lo..=hi)
        .into_par_iter()
        .map_init(
            || DirectTester::new(field),
            |direct, i| -> Result<Option<PBRecord>> {
                if config.skip_linearized && i.is_power_of_two() {
                    return Ok(None);
                }
                let valid = if config.tester == Tester::CrossCheck {
                    cross_check_exponent(field, direct, i)?
                } else {
                    valid_set_for_exponent(field, config, direct, i)?
                };
                if valid.is_empty() {
                    Ok(None)
                } else {
                    Ok(Some(PBRecord::from_valid_set(field, i, valid)?))
                }
            },
        )
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

fn resolved_workers(config: &SearchConfig) -> Result<Option<usize>> {
    if config.workers.is_some() {
        return Ok(config.workers);
    }
    match std::env::var(WORKERS_ENV) {
        Ok(v) => {
            let w: usize = v
                .parse()
                .map_err(|_| Error::Config(format!("{WORKERS_ENV}={v} is not a worker count")))?;
            if w == 0 {
                return Err(Error::Config(format!("{WORKERS_ENV} must be positive")));
            }
            Ok(Some(w))
        }
        Err(_) => Ok(None),
    }
}

/// Builds the field, runs the scan (on a dedicated thread pool when a worker
/// count is set), writes the report if an output is configured, and returns
/// it.
pub fn run_search(config: &SearchConfig) -> Result<Report> {
    let field = build_field(config.n)?;
    let rows = match resolved_workers(config)? {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            pool.install(|| search_field(&field, config))?
        }
        None => search_field(&field, config)?,
    };
    let report = Report {
        field: FieldModel::of(&field),
        rows,
    };
    if let Some((path, format)) = &config.output {
        report.write(path, *format)?;
    }
    Ok(report)
}
