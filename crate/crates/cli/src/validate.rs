//! Cross-validation sweeps: the Cardano-criteria verdicts against the
//! brute-force Hensel oracle over the whole corpus, and against the
//! Frobenius congruence classes for the abelian records.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use tau3_core::abelian::{build_abelian_table, AbelianError, AbelianRecord};
use tau3_core::arith::primes_up_to;
use tau3_core::corpus::Corpus;
use tau3_core::cubic::CubicPoly;
use tau3_core::splitting::{oracle_splits, splits_completely, OracleError, SplitError};

#[derive(Debug, thiserror::Error)]
pub enum ValidateError {
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error("oracle failed on {poly:?} at p = {p}: {source}")]
    Oracle {
        poly: CubicPoly,
        p: u64,
        source: OracleError,
    },
}

#[derive(Debug, Default)]
pub struct ValidationReport {
    /// (corpus polynomial, prime) pairs where both routes were conclusive.
    pub oracle_checked: u64,
    pub oracle_mismatches: Vec<(CubicPoly, u64)>,
    /// Pairs skipped because the oracle declined to certify (deep
    /// ramification); listed, never trusted.
    pub oracle_skipped: Vec<(CubicPoly, u64)>,
    pub frobenius_checked: u64,
    pub frobenius_mismatches: Vec<(CubicPoly, u64)>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.oracle_mismatches.is_empty() && self.frobenius_mismatches.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "oracle sweep:    {} pairs checked, {} mismatches, {} skipped (inconclusive)",
            self.oracle_checked,
            self.oracle_mismatches.len(),
            self.oracle_skipped.len()
        )?;
        for (poly, p) in &self.oracle_mismatches {
            writeln!(f, "  MISMATCH: {poly} at p = {p}")?;
        }
        for (poly, p) in &self.oracle_skipped {
            writeln!(f, "  skipped:  {poly} at p = {p}")?;
        }
        writeln!(
            f,
            "frobenius sweep: {} pairs checked, {} mismatches",
            self.frobenius_checked,
            self.frobenius_mismatches.len()
        )?;
        for (poly, p) in &self.frobenius_mismatches {
            writeln!(f, "  MISMATCH: {poly} at p = {p}")?;
        }
        Ok(())
    }
}

struct PolyOutcome {
    checked: u64,
    mismatches: Vec<(CubicPoly, u64)>,
    skipped: Vec<(CubicPoly, u64)>,
}

/// Compare the splitting criteria against the residue-search oracle for one
/// polynomial across the prime list.
fn sweep_poly(poly: &CubicPoly, primes: &[u64]) -> Result<PolyOutcome, ValidateError> {
    let mut out = PolyOutcome {
        checked: 0,
        mismatches: Vec::new(),
        skipped: Vec::new(),
    };
    let disc = poly.discriminant();
    for &p in primes {
        let p_big = BigInt::from(p);
        let ramified = (BigInt::from(poly.a) % &p_big).is_zero() || (&disc % &p_big).is_zero();
        let by_criteria = splits_completely(poly, p)?.splits;
        match oracle_splits(poly, p) {
            Ok(by_oracle) => {
                out.checked += 1;
                if by_criteria != by_oracle {
                    out.mismatches.push((*poly, p));
                }
            }
            Err(OracleError::Inconclusive { .. }) if ramified => {
                out.skipped.push((*poly, p));
            }
            Err(source) => {
                return Err(ValidateError::Oracle {
                    poly: *poly,
                    p,
                    source,
                })
            }
        }
    }
    Ok(out)
}

/// Run both validation sweeps over the corpus. `prime_bound` limits the
/// oracle sweep; `abelian_prime_bound` limits the Frobenius sweep.
pub fn cross_validate(
    corpus: &Corpus,
    prime_bound: u64,
    abelian_prime_bound: u64,
) -> Result<ValidationReport, ValidateError> {
    let primes: Vec<u64> = primes_up_to(prime_bound)
        .into_iter()
        .filter(|&p| p >= 5)
        .collect();
    let outcomes: Result<Vec<_>, _> = corpus
        .entries
        .par_iter()
        .map(|e| sweep_poly(&e.poly, &primes))
        .collect();
    let mut report = ValidationReport::default();
    for o in outcomes? {
        report.oracle_checked += o.checked;
        report.oracle_mismatches.extend(o.mismatches);
        report.oracle_skipped.extend(o.skipped);
    }

    let records = build_abelian_table(&corpus.entries)?;
    let abelian_primes: Vec<u64> = primes_up_to(abelian_prime_bound)
        .into_iter()
        .filter(|&p| p >= 5)
        .collect();
    let frobenius: Result<Vec<_>, ValidateError> = records
        .par_iter()
        .map(|rec| frobenius_sweep(rec, &abelian_primes))
        .collect();
    for (checked, mismatches) in frobenius? {
        report.frobenius_checked += checked;
        report.frobenius_mismatches.extend(mismatches);
    }
    Ok(report)
}

fn frobenius_sweep(
    rec: &AbelianRecord,
    primes: &[u64],
) -> Result<(u64, Vec<(CubicPoly, u64)>), ValidateError> {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for &p in primes {
        let Some(expected) = rec.predicts_split(p) else {
            continue;
        };
        checked += 1;
        if splits_completely(&rec.poly, p)?.splits != expected {
            mismatches.push((rec.poly, p));
        }
    }
    Ok((checked, mismatches))
}
