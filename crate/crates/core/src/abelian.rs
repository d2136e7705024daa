//! Cyclic (abelian) cubics: conductors, splitting residue classes, and the
//! global height-bound certificate.
//!
//! A cubic with square discriminant has Galois group A₃, hence lives in a
//! cyclic cubic field K, which embeds in a cyclotomic field. Its splitting
//! behaviour is periodic: for p not dividing the conductor m of K, the
//! cubic splits completely over Q_p exactly when `p mod m` lies in an
//! index-3 subgroup B of (Z/mZ)^×. This module computes m and B without a
//! maximal-order computation:
//!
//! * cyclic cubic conductors have a rigid shape, (1 or 9) times a product
//!   of distinct primes ≡ 1 (mod 3) all dividing the discriminant of the
//!   monic integral model of the field generator, so only finitely many
//!   candidates exist;
//! * each candidate is validated behaviourally, by probing ascending primes
//!   with the exact splitting test until the observed split classes form
//!   the index-3 subgroup, or until two primes in one class disagree and
//!   refute the candidate. (A fixed probe count would be corpus-specific;
//!   probing until certified is not.)
//!
//! [`verify_global_bound`] assembles the certificate behind the search's
//! termination: witnesses of conductor 7, 9 and 63 cover every residue in
//! (Z/63Z)^×, and the primes 5 and 7 get direct witnesses, so every prime
//! p ≥ 5 admits a totally p-adic cubic of height at most 0.70376.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::arith::{euler_phi, factorize, gcd_u64, is_prime_u64, mul_mod};
use crate::corpus::{CorpusEntry, GLOBAL_HEIGHT_BOUND_EDGE};
use crate::cubic::CubicPoly;
use crate::splitting::{splits_completely, SplitError};

/// An abelian cubic from the corpus with its splitting arithmetic.
#[derive(Clone, Debug)]
pub struct AbelianRecord {
    pub poly: CubicPoly,
    /// The (square) discriminant of the polynomial.
    pub poly_disc: BigInt,
    /// Conductor of the cyclic cubic field cut out by a root.
    pub conductor: u64,
    /// The index-3 subgroup of (Z/mZ)^× of split classes.
    pub classes: BTreeSet<u64>,
    pub height: f64,
}

impl AbelianRecord {
    /// Splitting predicted by class membership; `None` when p divides the
    /// conductor (where the congruence criterion does not apply).
    pub fn predicts_split(&self, p: u64) -> Option<bool> {
        if self.conductor % p == 0 {
            return None;
        }
        Some(self.classes.contains(&(p % self.conductor)))
    }
}

/// One residue class covered by a witness polynomial.
#[derive(Clone, Debug)]
pub struct CoverageWitness {
    pub poly: CubicPoly,
    pub height: f64,
}

/// A mechanical proof that every prime p ≥ 5 admits a totally p-adic cubic
/// of height at most `bound`: class-by-class witnesses modulo `modulus`,
/// plus direct witnesses for the primes dividing the modulus (and p = 5).
#[derive(Clone, Debug)]
pub struct CoverageCertificate {
    pub modulus: u64,
    pub assignments: BTreeMap<u64, CoverageWitness>,
    pub special_primes: BTreeMap<u64, CoverageWitness>,
    pub bound: f64,
}

impl CoverageCertificate {
    /// Does the certificate establish the stated global bound? Heights are
    /// compared at five significant figures, matching how the bound is
    /// quoted.
    pub fn respects_global_bound(&self) -> bool {
        self.bound < GLOBAL_HEIGHT_BOUND_EDGE
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AbelianError {
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error("{0:?} does not have a square discriminant")]
    NotAbelian(CubicPoly),
    #[error("no admissible conductor validates for {0:?}")]
    NoAdmissibleConductor(CubicPoly),
    #[error("split classes of {poly:?} mod {modulus} do not form an index-3 subgroup")]
    ClassCardinality { poly: CubicPoly, modulus: u64 },
    #[error("probing budget exhausted validating modulus {modulus} for {poly:?}")]
    ProbeBudgetExhausted { poly: CubicPoly, modulus: u64 },
    #[error("coverage gap modulo {modulus}: residues {uncovered:?} have no witness")]
    CoverageGap { modulus: u64, uncovered: Vec<u64> },
    #[error("no abelian witness splits at p = {p}")]
    NoSpecialWitness { p: u64 },
}

/// Is the Galois group of this irreducible cubic abelian (= A₃)? Exactly
/// when the discriminant is a perfect square.
pub fn is_abelian(f: &CubicPoly) -> bool {
    let disc = f.discriminant();
    if !disc.is_positive() {
        return false;
    }
    let root = disc.sqrt();
    &root * &root == disc
}

/// Largest probe prime before a candidate validation gives up.
const PROBE_LIMIT: u64 = 1_000_000;

/// The conductor of the splitting field of an abelian cubic: the smallest
/// admissible modulus on which splitting is a congruence condition.
pub fn conductor(f: &CubicPoly) -> Result<u64, AbelianError> {
    if !is_abelian(f) {
        return Err(AbelianError::NotAbelian(*f));
    }
    for m in candidate_conductors(f) {
        match probe_candidate(f, m)? {
            ProbeOutcome::Valid(_) => return Ok(m),
            ProbeOutcome::Refuted => continue,
            ProbeOutcome::Exhausted => {
                return Err(AbelianError::ProbeBudgetExhausted {
                    poly: *f,
                    modulus: m,
                })
            }
        }
    }
    Err(AbelianError::NoAdmissibleConductor(*f))
}

/// The split classes B ⊆ (Z/mZ)^×, for m the conductor of `f`. Uses the
/// unique index-3 subgroup (the cubes) when (Z/mZ)^× has only one, and
/// otherwise probes primes until the subgroup is pinned down.
pub fn splitting_classes(f: &CubicPoly, modulus: u64) -> Result<BTreeSet<u64>, AbelianError> {
    if let Some(unique) = unique_index_three_subgroup(modulus) {
        return Ok(unique);
    }
    match probe_candidate(f, modulus)? {
        ProbeOutcome::Valid(classes) => Ok(classes),
        ProbeOutcome::Refuted => Err(AbelianError::ClassCardinality { poly: *f, modulus }),
        ProbeOutcome::Exhausted => Err(AbelianError::ProbeBudgetExhausted { poly: *f, modulus }),
    }
}

/// All admissible conductor candidates for `f`, ascending: products of
/// distinct primes ≡ 1 (mod 3) dividing disc of the monic integral model
/// `a²·disc(f)`, optionally times 9 when 3 divides it.
fn candidate_conductors(f: &CubicPoly) -> Vec<u64> {
    let disc_monic = (BigInt::from(f.a) * BigInt::from(f.a) * f.discriminant()).abs();
    let mut primes = Vec::new();
    let mut three_divides = false;
    if let Some(mut n) = num_traits::ToPrimitive::to_u128(&disc_monic) {
        let mut q: u128 = 2;
        while q * q <= n && q < 20_000_000 {
            if n % q == 0 {
                while n % q == 0 {
                    n /= q;
                }
                if q == 3 {
                    three_divides = true;
                } else if q % 3 == 1 {
                    primes.push(q as u64);
                }
            }
            q += if q == 2 { 1 } else { 2 };
        }
        if n > 1 {
            // Either a prime cofactor, or the input is far outside the
            // intended range and the conductor search will fail loudly.
            if n == 3 {
                three_divides = true;
            } else if n % 3 == 1 && n <= u64::MAX as u128 && is_prime_u64(n as u64) {
                primes.push(n as u64);
            }
        }
    }
    let mut candidates = Vec::new();
    for mask in 0u32..(1 << primes.len()) {
        let mut m = 1u64;
        for (i, &p) in primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                m = m.saturating_mul(p);
            }
        }
        if m > 1 {
            candidates.push(m);
        }
        if three_divides {
            candidates.push(m.saturating_mul(9));
        }
    }
    candidates.sort_unstable();
    candidates.dedup();
    candidates.retain(|&m| m > 1);
    candidates
}

enum ProbeOutcome {
    Valid(BTreeSet<u64>),
    Refuted,
    Exhausted,
}

/// Validate a candidate modulus by probing ascending primes p ∤ m, p ≥ 5,
/// with the exact splitting test. Accepts once the observed split classes
/// reach cardinality φ(m)/3 and close into a subgroup containing 1;
/// refutes on any in-class conflict, on exceeding the cardinality, or on a
/// verdict contradicting the unique index-3 subgroup when there is one.
fn probe_candidate(f: &CubicPoly, modulus: u64) -> Result<ProbeOutcome, AbelianError> {
    let phi = euler_phi(modulus);
    if phi % 3 != 0 {
        return Ok(ProbeOutcome::Refuted);
    }
    let target = phi / 3;
    let expected = unique_index_three_subgroup(modulus);
    let mut verdicts: BTreeMap<u64, bool> = BTreeMap::new();
    let mut split_classes: BTreeSet<u64> = BTreeSet::new();
    let mut p = 5u64;
    while p <= PROBE_LIMIT {
        if is_prime_u64(p) && modulus % p != 0 {
            let splits = splits_completely(f, p)?.splits;
            let class = p % modulus;
            if let Some(&prior) = verdicts.get(&class) {
                if prior != splits {
                    return Ok(ProbeOutcome::Refuted);
                }
            } else {
                verdicts.insert(class, splits);
                if splits {
                    split_classes.insert(class);
                }
            }
            if let Some(expected) = &expected {
                if splits != expected.contains(&class) {
                    return Ok(ProbeOutcome::Refuted);
                }
            }
            if split_classes.len() as u64 > target {
                return Ok(ProbeOutcome::Refuted);
            }
            if split_classes.len() as u64 == target {
                if is_subgroup(&split_classes, modulus) {
                    return Ok(ProbeOutcome::Valid(split_classes));
                }
                return Ok(ProbeOutcome::Refuted);
            }
        }
        p += 2;
    }
    Ok(ProbeOutcome::Exhausted)
}

/// The unique index-3 subgroup of (Z/mZ)^× (the cubes), when there is
/// exactly one, i.e. when exactly three residues cube to 1.
fn unique_index_three_subgroup(modulus: u64) -> Option<BTreeSet<u64>> {
    let mut cube_roots_of_one = 0u64;
    for x in 1..modulus {
        if gcd_u64(x, modulus) != 1 {
            continue;
        }
        if mul_mod(mul_mod(x, x, modulus), x, modulus) == 1 {
            cube_roots_of_one += 1;
        }
    }
    if cube_roots_of_one != 3 {
        return None;
    }
    let cubes: BTreeSet<u64> = (1..modulus)
        .filter(|&x| gcd_u64(x, modulus) == 1)
        .map(|x| mul_mod(mul_mod(x, x, modulus), x, modulus))
        .collect();
    debug_assert_eq!(cubes.len() as u64 * 3, euler_phi(modulus));
    Some(cubes)
}

fn is_subgroup(set: &BTreeSet<u64>, modulus: u64) -> bool {
    if !set.contains(&1) {
        return false;
    }
    for &a in set {
        for &b in set {
            if !set.contains(&mul_mod(a, b, modulus)) {
                return false;
            }
        }
    }
    true
}

/// Extract the abelian cubics from the corpus, in corpus (height) order,
/// with conductors and split classes attached.
pub fn build_abelian_table(entries: &[CorpusEntry]) -> Result<Vec<AbelianRecord>, AbelianError> {
    let mut records = Vec::new();
    for entry in entries {
        if !is_abelian(&entry.poly) {
            continue;
        }
        let m = conductor(&entry.poly)?;
        let classes = splitting_classes(&entry.poly, m)?;
        records.push(AbelianRecord {
            poly: entry.poly,
            poly_disc: entry.poly.discriminant(),
            conductor: m,
            classes,
            height: entry.height,
        });
    }
    Ok(records)
}

/// The modulus the termination certificate is framed over.
pub const CERTIFICATE_MODULUS: u64 = 63;

/// Assemble the termination certificate from abelian records: every residue
/// class in (Z/63Z)^× receives the lowest witness whose conductor divides
/// 63 and whose classes contain it, and the primes dividing the modulus
/// (plus p = 5) receive direct witnesses re-verified with the splitting
/// test. The resulting `bound` is the maximum witness height.
pub fn verify_global_bound(records: &[AbelianRecord]) -> Result<CoverageCertificate, AbelianError> {
    let modulus = CERTIFICATE_MODULUS;
    let mut order: Vec<&AbelianRecord> = records.iter().collect();
    order.sort_by(|x, y| {
        x.height
            .total_cmp(&y.height)
            .then_with(|| x.poly.coeffs().cmp(&y.poly.coeffs()))
    });
    let mut assignments = BTreeMap::new();
    let mut uncovered = Vec::new();
    for r in 1..modulus {
        if gcd_u64(r, modulus) != 1 {
            continue;
        }
        let witness = order
            .iter()
            .find(|rec| modulus % rec.conductor == 0 && rec.classes.contains(&(r % rec.conductor)));
        match witness {
            Some(rec) => {
                assignments.insert(
                    r,
                    CoverageWitness {
                        poly: rec.poly,
                        height: rec.height,
                    },
                );
            }
            None => uncovered.push(r),
        }
    }
    if !uncovered.is_empty() {
        return Err(AbelianError::CoverageGap { modulus, uncovered });
    }
    let mut special_primes = BTreeMap::new();
    let mut specials: Vec<u64> = factorize(modulus)
        .iter()
        .map(|&(p, _)| p)
        .filter(|&p| p >= 5)
        .collect();
    specials.push(5);
    specials.sort_unstable();
    specials.dedup();
    for p in specials {
        let witness = order
            .iter()
            .find_map(|rec| match splits_completely(&rec.poly, p) {
                Ok(v) if v.splits => Some(Ok(rec)),
                Ok(_) => None,
                Err(e) => Some(Err(e)),
            })
            .transpose()?;
        match witness {
            Some(rec) => {
                special_primes.insert(
                    p,
                    CoverageWitness {
                        poly: rec.poly,
                        height: rec.height,
                    },
                );
            }
            None => return Err(AbelianError::NoSpecialWitness { p }),
        }
    }
    let bound = assignments
        .values()
        .chain(special_primes.values())
        .map(|w| w.height)
        .fold(0.0f64, f64::max);
    Ok(CoverageCertificate {
        modulus,
        assignments,
        special_primes,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(a: i64, b: i64, c: i64, d: i64) -> CubicPoly {
        CubicPoly::new(a, b, c, d)
    }

    #[test]
    fn abelian_detection() {
        assert!(is_abelian(&poly(1, -1, -2, 1))); // disc 49
        assert!(!is_abelian(&poly(1, 0, 0, -2))); // disc -108
        assert!(is_abelian(&poly(1, -3, 0, 1))); // disc 81
        assert!(is_abelian(&poly(3, -4, -5, 3))); // disc 61²
    }

    #[test]
    fn conductor_examples() {
        assert_eq!(conductor(&poly(1, -1, -2, 1)).unwrap(), 7);
        assert_eq!(conductor(&poly(1, -3, 0, 1)).unwrap(), 9);
        assert_eq!(conductor(&poly(2, -9, 3, 2)).unwrap(), 63);
    }

    #[test]
    fn splitting_classes_examples() {
        let b7 = splitting_classes(&poly(1, -1, -2, 1), 7).unwrap();
        assert_eq!(b7, BTreeSet::from([1, 6]));
        let b9 = splitting_classes(&poly(1, -3, 0, 1), 9).unwrap();
        assert_eq!(b9, BTreeSet::from([1, 8]));
        let b63 = splitting_classes(&poly(1, -9, 6, 1), 63).unwrap();
        assert_eq!(
            b63,
            BTreeSet::from([1, 5, 8, 11, 23, 25, 38, 40, 52, 55, 58, 62])
        );
    }

    #[test]
    fn unique_subgroup_structure() {
        // (Z/7)^× is cyclic: unique index-3 subgroup {1, 6}.
        assert_eq!(unique_index_three_subgroup(7), Some(BTreeSet::from([1, 6])));
        // (Z/63)^× has 3-rank two: four index-3 subgroups, no unique one.
        assert_eq!(unique_index_three_subgroup(63), None);
        // No index-3 subgroup at all when 3 does not divide φ(m).
        assert_eq!(unique_index_three_subgroup(5), None);
    }

    #[test]
    fn frobenius_consistency_spot_check() {
        let f = poly(1, -1, -2, 1);
        let classes = splitting_classes(&f, 7).unwrap();
        for p in [5u64, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59] {
            let expected = classes.contains(&(p % 7));
            assert_eq!(
                splits_completely(&f, p).unwrap().splits,
                expected,
                "p = {p}"
            );
        }
    }

    #[test]
    fn conductor_minimality() {
        // No admissible proper divisor of 63 validates for the 63-records.
        for f in [poly(2, -9, 3, 2), poly(1, -9, 6, 1)] {
            for m in [7u64, 9] {
                assert!(
                    !matches!(probe_candidate(&f, m), Ok(ProbeOutcome::Valid(_))),
                    "{f:?} wrongly validates modulus {m}"
                );
            }
        }
    }
}
