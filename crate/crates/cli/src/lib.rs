//! IO, file formats, table emitters and parallel drivers around `tau3-core`.

pub mod format;
pub mod table;
pub mod validate;

use rayon::prelude::*;

use tau3_core::corpus::{enumerate_chunk, finalize, leading_coefficients, Corpus, CorpusError};

/// Parallel corpus construction: leading-coefficient chunks are enumerated
/// across workers and merged in coefficient order before the global sort,
/// so the result is identical to the serial build regardless of worker
/// count.
pub fn build_corpus_parallel(length_max: u64, measure_max: f64) -> Result<Corpus, CorpusError> {
    let chunks = leading_coefficients(length_max, measure_max);
    let raw: Result<Vec<_>, _> = chunks
        .par_iter()
        .map(|&a| enumerate_chunk(a, length_max, measure_max))
        .collect();
    let raw = raw?.into_iter().flatten().collect();
    finalize(raw, length_max, measure_max)
}
