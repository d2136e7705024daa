//! Enumeration of the candidate cubics and the per-prime minimal-height scan.
//!
//! The list the search runs over contains every integer cubic with positive
//! leading coefficient, length (coefficient 1-norm) at most `length_max`,
//! irreducible over Q, and Mahler measure at most `measure_max`. With the
//! default bounds (68, 8.5) this is a complete cover: any cubic algebraic
//! number of height up to the global abelian bound has its minimal
//! polynomial here, because `L(f) ≤ 2³·M(f)`.
//!
//! Entries are ordered by certified-interval comparison of their measures;
//! genuinely equal measures (a polynomial, its reversal, and the sign
//! flips, but also unrelated coincidences like every `M = 2` cubic) fall
//! back to lexicographic coefficient order. Measure enclosures are tight
//! enough (≪ 10⁻⁹) that interval overlap is equality for this corpus, and
//! the builder alarms if a cluster of overlapping enclosures is wider than
//! tolerance instead of silently picking an order.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::FromPrimitive;

use crate::cubic::{CubicPoly, DepressedForm};
use crate::measure::{
    height_from_measure, interval_to_measure, measure_interval_irreducible, MeasureError,
    MeasureValue,
};
use crate::splitting::{splits_completely, SplitError};

pub const DEFAULT_LENGTH_MAX: u64 = 68;
pub const DEFAULT_MEASURE_MAX: f64 = 8.5;

/// Heights never exceed this on the canonical corpus: the global abelian
/// bound, quoted at five significant figures.
pub const GLOBAL_HEIGHT_BOUND: f64 = 0.70376;
/// Upper rounding edge of [`GLOBAL_HEIGHT_BOUND`]: a computed height h
/// satisfies the bound when h < 0.703765, i.e. it prints as ≤ 0.70376.
pub const GLOBAL_HEIGHT_BOUND_EDGE: f64 = 0.703765;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub measure: MeasureValue,
    pub poly: CubicPoly,
    pub depressed: DepressedForm,
    pub height: f64,
}

/// The sorted candidate list plus the bounds it was built with.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub length_max: u64,
    pub measure_max: f64,
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.length_max == DEFAULT_LENGTH_MAX && self.measure_max == DEFAULT_MEASURE_MAX
    }
}

/// A measured candidate before sorting: the polynomial with the exact
/// rational enclosure of its Mahler measure.
#[derive(Clone, Debug)]
pub struct MeasuredPoly {
    pub poly: CubicPoly,
    pub lo: BigRational,
    pub hi: BigRational,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CorpusError {
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("measure enclosures near {a:?} and {b:?} overlap too widely to order")]
    AmbiguousOrder { a: CubicPoly, b: CubicPoly },
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TauError {
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error("no corpus entry splits completely at p = {p}; the list cannot be complete")]
    ExhaustedCorpus { p: u64 },
    #[error("tau = {tau} at p = {p} exceeds the global bound; corpus or criteria are broken")]
    BoundViolation { p: u64, tau: f64 },
}

/// The smallest height attained by a totally p-adic cubic number, found by
/// scanning the corpus in measure order for the first complete splitter.
#[derive(Clone, Debug, PartialEq)]
pub struct TauResult {
    pub p: u64,
    pub tau: f64,
    pub witness: CubicPoly,
    pub index: usize,
}

/// Leading coefficients to enumerate: `a ≤ measure_max` since `M(f) ≥ a`.
pub fn leading_coefficients(length_max: u64, measure_max: f64) -> Vec<i64> {
    let cap = libm::floor(measure_max + MEASURE_EDGE_SLACK) as u64;
    (1..=cap.min(length_max) as i64).collect()
}

/// Slack added before truncating the exact coefficient bounds implied by
/// `M ≤ measure_max`, covering the conservative-inclusion band.
const MEASURE_EDGE_SLACK: f64 = 1e-6;

/// Enumerate all kept entries with the given leading coefficient.
///
/// The coefficient ranges come from exact consequences of `M(f) ≤ Mmax`:
/// `|a| ≤ M`, `|d| ≤ M` (root product), and `|b|, |c| ≤ 3M` (each
/// coefficient is `a` times an elementary symmetric function whose terms
/// are all bounded by `∏ max(1, |r_i|)`).
pub fn enumerate_chunk(
    lead: i64,
    length_max: u64,
    measure_max: f64,
) -> Result<Vec<MeasuredPoly>, MeasureError> {
    let mmax = BigRational::from_f64(measure_max).expect("measure bound must be finite");
    let len_budget = length_max as i64;
    let bc_cap = libm::floor(3.0 * measure_max + MEASURE_EDGE_SLACK) as i64;
    let d_cap = libm::floor(measure_max + MEASURE_EDGE_SLACK) as i64;
    let mut out = Vec::new();
    let a = lead;
    let b_cap = bc_cap.min(len_budget - a);
    for b in -b_cap..=b_cap {
        let c_cap = bc_cap.min(len_budget - a - b.abs());
        for c in -c_cap..=c_cap {
            let d_bound = d_cap.min(len_budget - a - b.abs() - c.abs());
            for d in -d_bound..=d_bound {
                if d == 0 {
                    continue;
                }
                let f = CubicPoly::new(a, b, c, d);
                if !f.is_irreducible() {
                    continue;
                }
                let (lo, hi) = measure_interval_irreducible(&f)?;
                if lo <= mmax {
                    out.push(MeasuredPoly { poly: f, lo, hi });
                }
            }
        }
    }
    Ok(out)
}

/// Sort measured candidates into the canonical corpus order and freeze the
/// floating-point views.
pub fn finalize(
    mut raw: Vec<MeasuredPoly>,
    length_max: u64,
    measure_max: f64,
) -> Result<Corpus, CorpusError> {
    // Exact primary order by measure midpoint (2·mid, same ordering),
    // with the coefficients as a strict tiebreak so the sort is a total
    // order no matter the input arrangement.
    raw.sort_unstable_by(|x, y| {
        let mx = &x.lo + &x.hi;
        let my = &y.lo + &y.hi;
        mx.cmp(&my)
            .then_with(|| x.poly.coeffs().cmp(&y.poly.coeffs()))
    });

    // Group runs of overlapping enclosures; a run of enclosures of one real
    // number always overlaps pairwise, so equal measures land in one
    // cluster. Within a cluster the order is lexicographic by coefficients.
    let mut entries: Vec<CorpusEntry> = Vec::with_capacity(raw.len());
    let mut i = 0;
    while i < raw.len() {
        let mut j = i + 1;
        let mut hull_hi = raw[i].hi.clone();
        while j < raw.len() && raw[j].lo <= hull_hi {
            if raw[j].hi > hull_hi {
                hull_hi = raw[j].hi.clone();
            }
            j += 1;
        }
        let cluster = &mut raw[i..j];
        let diameter = rat_to_f64(&(&hull_hi - &cluster[0].lo));
        if diameter > 1e-9 {
            return Err(CorpusError::AmbiguousOrder {
                a: cluster[0].poly,
                b: cluster[cluster.len() - 1].poly,
            });
        }
        cluster.sort_unstable_by(|x, y| x.poly.coeffs().cmp(&y.poly.coeffs()));
        for m in cluster.iter() {
            let measure = interval_to_measure(&m.lo, &m.hi);
            entries.push(CorpusEntry {
                measure,
                poly: m.poly,
                depressed: m.poly.depress(),
                height: height_from_measure(&measure).value,
            });
        }
        i = j;
    }
    Ok(Corpus {
        length_max,
        measure_max,
        entries,
    })
}

/// Single-threaded corpus construction. (The CLI crate drives
/// [`enumerate_chunk`] in parallel and feeds the same [`finalize`].)
pub fn build_corpus(length_max: u64, measure_max: f64) -> Result<Corpus, CorpusError> {
    let mut raw = Vec::new();
    for a in leading_coefficients(length_max, measure_max) {
        raw.extend(enumerate_chunk(a, length_max, measure_max)?);
    }
    finalize(raw, length_max, measure_max)
}

/// τ₃,p: scan the corpus in order and return the first complete splitter.
pub fn tau3(p: u64, corpus: &Corpus) -> Result<TauResult, TauError> {
    for (index, entry) in corpus.entries.iter().enumerate() {
        if splits_completely(&entry.poly, p)?.splits {
            let result = TauResult {
                p,
                tau: entry.height,
                witness: entry.poly,
                index,
            };
            if corpus.is_canonical() && result.tau >= GLOBAL_HEIGHT_BOUND_EDGE {
                return Err(TauError::BoundViolation { p, tau: result.tau });
            }
            return Ok(result);
        }
    }
    Err(TauError::ExhaustedCorpus { p })
}

fn rat_to_f64(r: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_corpus_contents() {
        // Length ≤ 3, measure ≤ 2: hand-checkable.
        let corpus = build_corpus(3, 2.0).unwrap();
        let has = |a: i64, b: i64, c: i64, d: i64| {
            corpus
                .entries
                .iter()
                .any(|e| e.poly == CubicPoly::new(a, b, c, d))
        };
        assert!(has(1, 0, -1, -1)); // x^3 - x - 1
        assert!(has(1, 0, -1, 1)); // x^3 - x + 1
        assert!(has(1, 1, 0, -1)); // x^3 + x^2 - 1
        assert!(has(1, -1, 0, 1)); // x^3 - x^2 + 1
        for e in &corpus.entries {
            assert!(e.poly.length() <= 3);
            assert!(e.measure.value - e.measure.error_bound <= 2.0 + 1e-12);
            assert!(e.poly.is_irreducible());
        }
        // First entries are the four measure-minimal transforms, in
        // lexicographic coefficient order.
        assert_eq!(corpus.entries[0].poly, CubicPoly::new(1, -1, 0, 1));
        assert_eq!(corpus.entries[1].poly, CubicPoly::new(1, 0, -1, -1));
        assert_eq!(corpus.entries[2].poly, CubicPoly::new(1, 0, -1, 1));
        assert_eq!(corpus.entries[3].poly, CubicPoly::new(1, 1, 0, -1));
    }

    #[test]
    fn entries_are_sorted_by_certified_measure() {
        let corpus = build_corpus(6, 3.0).unwrap();
        for w in corpus.entries.windows(2) {
            let (x, y) = (&w[0].measure, &w[1].measure);
            assert!(
                x.value - x.error_bound <= y.value + y.error_bound,
                "entries out of order: {:?} vs {:?}",
                w[0].poly,
                w[1].poly
            );
        }
    }

    #[test]
    fn tau_on_small_corpus() {
        // On the tiny list, p = 59 already splits the first entry.
        let corpus = build_corpus(3, 2.0).unwrap();
        let result = tau3(59, &corpus).unwrap();
        assert_eq!(result.witness, CubicPoly::new(1, -1, 0, 1));
        assert_eq!(result.index, 0);
        assert!((result.tau - 0.093733).abs() < 1e-5);
    }

    #[test]
    fn exhausted_corpus_reports() {
        let corpus = build_corpus(3, 1.4).unwrap();
        // Only the measure ≈ 1.3247 class is present; it does not split at 7.
        match tau3(7, &corpus) {
            Err(TauError::ExhaustedCorpus { p: 7 }) => {}
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }
}
