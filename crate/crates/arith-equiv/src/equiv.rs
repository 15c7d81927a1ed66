//! Prime-by-prime comparison of two fields under the two equivalence
//! criteria: equal arithmetic types, or merely equal splitting numbers.
//!
//! Primes ramified in either field are skipped and listed, so the
//! exceptional set is always visible. Reports are deterministic: the same
//! pair and bound serialize to byte-identical JSON.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::primes_up_to;
use crate::splitting::{classify_known_prime, IntPolynomial, PrimeStatus};
use crate::Error;

/// Two monic integer polynomials under a common label.
///
/// Equal degrees are not required: a degree mismatch surfaces at the first
/// good-for-both prime, where the type sums differ.
#[derive(Debug, Clone)]
pub struct FieldPair {
    pub name: String,
    pub poly_a: IntPolynomial,
    pub poly_b: IntPolynomial,
}

impl FieldPair {
    pub fn new(name: impl Into<String>, poly_a: IntPolynomial, poly_b: IntPolynomial) -> Self {
        Self {
            name: name.into(),
            poly_a,
            poly_b,
        }
    }
}

/// Which invariant a comparison scan checks at each prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CompareMode {
    Types,
    Counts,
}

/// The two compared values at the first disagreeing prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum MismatchValue {
    Count(u64),
    Type(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub prime: u64,
    pub a: MismatchValue,
    pub b: MismatchValue,
}

/// Outcome of scanning all primes up to a bound for one pair.
///
/// The scan walks primes in ascending order and stops at the first
/// disagreement, so `first_mismatch` names the smallest good-for-both prime
/// with a discrepancy; `primes_checked` counts the good-for-both primes
/// examined (including a mismatching one) and `primes_skipped` lists the
/// primes ramified for either polynomial that the scan passed over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub bound: u64,
    pub mode: CompareMode,
    pub primes_checked: u64,
    pub primes_skipped: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<Mismatch>,
    pub agree: bool,
}

fn compare(pair: &FieldPair, bound: u64, mode: CompareMode) -> ComparisonReport {
    let mut skipped = Vec::new();
    let mut checked = 0u64;
    let mut first_mismatch = None;
    let mut processed = 0u64;
    for l in primes_up_to(bound) {
        processed += 1;
        if processed.is_multiple_of(10_000) {
            eprintln!("progress: {processed} primes processed (at {l})");
        }
        let a = classify_known_prime(&pair.poly_a, l);
        let b = classify_known_prime(&pair.poly_b, l);
        if a.status == PrimeStatus::Ramified || b.status == PrimeStatus::Ramified {
            skipped.push(l);
            continue;
        }
        let type_a = a.splitting_type.expect("good primes carry a type");
        let type_b = b.splitting_type.expect("good primes carry a type");
        checked += 1;
        let disagreement = match mode {
            CompareMode::Types => (type_a.degrees() != type_b.degrees()).then(|| Mismatch {
                prime: l,
                a: MismatchValue::Type(type_a.degrees().to_vec()),
                b: MismatchValue::Type(type_b.degrees().to_vec()),
            }),
            CompareMode::Counts => {
                let (ga, gb) = (type_a.splitting_number(), type_b.splitting_number());
                (ga != gb).then_some(Mismatch {
                    prime: l,
                    a: MismatchValue::Count(ga),
                    b: MismatchValue::Count(gb),
                })
            }
        };
        if let Some(m) = disagreement {
            first_mismatch = Some(m);
            break;
        }
    }
    ComparisonReport {
        bound,
        mode,
        primes_checked: checked,
        primes_skipped: skipped,
        agree: first_mismatch.is_none(),
        first_mismatch,
    }
}

/// Compares the arithmetic types of the pair at every good-for-both prime
/// up to `bound`.
pub fn compare_types(pair: &FieldPair, bound: u64) -> ComparisonReport {
    compare(pair, bound, CompareMode::Types)
}

/// Compares only the splitting numbers.
pub fn compare_counts(pair: &FieldPair, bound: u64) -> ComparisonReport {
    compare(pair, bound, CompareMode::Counts)
}

/// Both comparisons side by side.
///
/// `violation` is raised when the counts agree everywhere up to the bound
/// while the types do not. That configuration cannot be ruled out by a
/// finite scan, but it contradicts the expected equivalence and deserves a
/// prominent flag; no desk-scale corpus is expected to produce one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub bound: u64,
    pub types: ComparisonReport,
    pub counts: ComparisonReport,
    pub violation: bool,
}

pub fn criteria_consistency(pair: &FieldPair, bound: u64) -> ConsistencyReport {
    let types = compare_types(pair, bound);
    let counts = compare_counts(pair, bound);
    // Equal types force equal lengths, prime by prime.
    assert!(
        !(types.agree && !counts.agree),
        "type agreement must imply count agreement"
    );
    let violation = counts.agree && !types.agree;
    ConsistencyReport {
        bound,
        types,
        counts,
        violation,
    }
}

/// How a corpus run compares each pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    Types,
    Counts,
    Both,
}

/// Per-pair result of a corpus run. `violation` is present in
/// [`RunMode::Both`] only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub types: Option<ComparisonReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<ComparisonReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<bool>,
}

#[derive(Debug, Deserialize)]
struct CorpusEntry {
    name: String,
    a: Vec<i64>,
    b: Vec<i64>,
}

/// Parses a corpus: a JSON array of `{"name": .., "a": [..], "b": [..]}`
/// entries with polynomial coefficients listed low-to-high.
pub fn parse_corpus(text: &str) -> Result<Vec<FieldPair>, Error> {
    let entries: Vec<CorpusEntry> =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("corpus: {e}")))?;
    entries
        .into_iter()
        .enumerate()
        .map(|(index, entry)| {
            let context = |side: char, e: Error| {
                Error::Parse(format!(
                    "entry {} ({}): polynomial {side}: {e}",
                    index + 1,
                    entry.name
                ))
            };
            let poly_a = IntPolynomial::try_new(entry.a.clone()).map_err(|e| context('a', e))?;
            let poly_b = IntPolynomial::try_new(entry.b.clone()).map_err(|e| context('b', e))?;
            Ok(FieldPair::new(entry.name, poly_a, poly_b))
        })
        .collect()
}

/// Runs every pair of a corpus file, in file order.
///
/// Mismatches are data, not errors; only unreadable or malformed input
/// fails.
pub fn run_corpus(path: &Path, bound: u64, mode: RunMode) -> Result<Vec<CorpusReport>, Error> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let pairs = parse_corpus(&text)?;
    Ok(pairs
        .iter()
        .map(|pair| run_pair(pair, bound, mode))
        .collect())
}

/// Applies one run mode to one pair.
pub fn run_pair(pair: &FieldPair, bound: u64, mode: RunMode) -> CorpusReport {
    let mut report = CorpusReport {
        name: pair.name.clone(),
        types: None,
        counts: None,
        violation: None,
    };
    match mode {
        RunMode::Types => report.types = Some(compare_types(pair, bound)),
        RunMode::Counts => report.counts = Some(compare_counts(pair, bound)),
        RunMode::Both => {
            let consistency = criteria_consistency(pair, bound);
            report.types = Some(consistency.types);
            report.counts = Some(consistency.counts);
            report.violation = Some(consistency.violation);
        }
    }
    report
}
