//! The corpus cache file: a versioned, checksummed binary snapshot of the
//! enumerated list.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! magic          8 bytes   "TAU3CORP"
//! version        u32       currently 1
//! length_max     u64
//! measure_max    f64 bits
//! entry count    u64
//! payload crc32  u32
//! payload        count × 56 bytes:
//!     a, b, c, d     i64 each
//!     measure value  f64 bits
//!     error bound    f64 bits
//!     height         f64 bits
//! ```
//!
//! Depressed forms are exact functions of the coefficients and are
//! recomputed on load rather than stored. The checksum covers the payload;
//! any corruption, truncation or version skew is a distinct error.

use std::fs;
use std::io;
use std::path::Path;

use tau3_core::corpus::{Corpus, CorpusEntry};
use tau3_core::cubic::CubicPoly;
use tau3_core::measure::MeasureValue;

pub const MAGIC: &[u8; 8] = b"TAU3CORP";
pub const FORMAT_VERSION: u32 = 1;
const HEADER_LEN: usize = 8 + 4 + 8 + 8 + 8 + 4;
const ENTRY_LEN: usize = 56;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("io error: {0}")]
    Io(#[from] io::Error),
    #[error("not a corpus cache file (bad magic)")]
    BadMagic,
    #[error("corpus file is format version {found}, this reader expects {expected}")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("corpus file is truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("corpus payload checksum mismatch (stored {stored:#010x}, computed {computed:#010x})")]
    ChecksumFailure { stored: u32, computed: u32 },
    #[error("corpus entry {index} is invalid: {reason}")]
    BadEntry { index: usize, reason: String },
}

pub fn corpus_to_bytes(corpus: &Corpus) -> Vec<u8> {
    let mut payload = Vec::with_capacity(corpus.len() * ENTRY_LEN);
    for e in &corpus.entries {
        for coeff in e.poly.coeffs() {
            payload.extend_from_slice(&coeff.to_le_bytes());
        }
        payload.extend_from_slice(&e.measure.value.to_bits().to_le_bytes());
        payload.extend_from_slice(&e.measure.error_bound.to_bits().to_le_bytes());
        payload.extend_from_slice(&e.height.to_bits().to_le_bytes());
    }
    let crc = crc32fast::hash(&payload);
    let mut out = Vec::with_capacity(HEADER_LEN + payload.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&corpus.length_max.to_le_bytes());
    out.extend_from_slice(&corpus.measure_max.to_bits().to_le_bytes());
    out.extend_from_slice(&(corpus.len() as u64).to_le_bytes());
    out.extend_from_slice(&crc.to_le_bytes());
    out.extend_from_slice(&payload);
    out
}

pub fn corpus_from_bytes(bytes: &[u8]) -> Result<Corpus, FormatError> {
    if bytes.len() < HEADER_LEN {
        return Err(FormatError::Truncated {
            expected: HEADER_LEN,
            found: bytes.len(),
        });
    }
    if &bytes[0..8] != MAGIC {
        return Err(FormatError::BadMagic);
    }
    let version = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
    if version != FORMAT_VERSION {
        return Err(FormatError::VersionMismatch {
            found: version,
            expected: FORMAT_VERSION,
        });
    }
    let length_max = u64::from_le_bytes(bytes[12..20].try_into().unwrap());
    let measure_max = f64::from_bits(u64::from_le_bytes(bytes[20..28].try_into().unwrap()));
    let count = u64::from_le_bytes(bytes[28..36].try_into().unwrap()) as usize;
    let stored_crc = u32::from_le_bytes(bytes[36..40].try_into().unwrap());
    let expected_len = HEADER_LEN + count * ENTRY_LEN;
    if bytes.len() != expected_len {
        return Err(FormatError::Truncated {
            expected: expected_len,
            found: bytes.len(),
        });
    }
    let payload = &bytes[HEADER_LEN..];
    let computed = crc32fast::hash(payload);
    if computed != stored_crc {
        return Err(FormatError::ChecksumFailure {
            stored: stored_crc,
            computed,
        });
    }
    let mut entries = Vec::with_capacity(count);
    for index in 0..count {
        let rec = &payload[index * ENTRY_LEN..(index + 1) * ENTRY_LEN];
        let word = |i: usize| -> [u8; 8] { rec[i * 8..(i + 1) * 8].try_into().unwrap() };
        let a = i64::from_le_bytes(word(0));
        let b = i64::from_le_bytes(word(1));
        let c = i64::from_le_bytes(word(2));
        let d = i64::from_le_bytes(word(3));
        if a < 1 {
            return Err(FormatError::BadEntry {
                index,
                reason: format!("leading coefficient {a} is not positive"),
            });
        }
        let poly = CubicPoly::new(a, b, c, d);
        let measure = MeasureValue {
            value: f64::from_bits(u64::from_le_bytes(word(4))),
            error_bound: f64::from_bits(u64::from_le_bytes(word(5))),
        };
        let height = f64::from_bits(u64::from_le_bytes(word(6)));
        if !measure.value.is_finite() || measure.value < 1.0 {
            return Err(FormatError::BadEntry {
                index,
                reason: format!("measure {} out of range", measure.value),
            });
        }
        entries.push(CorpusEntry {
            measure,
            poly,
            depressed: poly.depress(),
            height,
        });
    }
    Ok(Corpus {
        length_max,
        measure_max,
        entries,
    })
}

pub fn save_corpus(corpus: &Corpus, path: &Path) -> Result<(), FormatError> {
    Ok(fs::write(path, corpus_to_bytes(corpus))?)
}

pub fn load_corpus(path: &Path) -> Result<Corpus, FormatError> {
    corpus_from_bytes(&fs::read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tau3_core::corpus::build_corpus;

    #[test]
    fn round_trip_identity() {
        let corpus = build_corpus(4, 2.5).unwrap();
        let bytes = corpus_to_bytes(&corpus);
        let back = corpus_from_bytes(&bytes).unwrap();
        assert_eq!(back.length_max, corpus.length_max);
        assert_eq!(back.measure_max, corpus.measure_max);
        assert_eq!(back.len(), corpus.len());
        for (x, y) in corpus.entries.iter().zip(&back.entries) {
            assert_eq!(x.poly, y.poly);
            assert_eq!(x.measure.value.to_bits(), y.measure.value.to_bits());
            assert_eq!(x.height.to_bits(), y.height.to_bits());
            assert_eq!(x.depressed, y.depressed);
        }
    }

    #[test]
    fn corruption_is_detected() {
        let corpus = build_corpus(3, 2.0).unwrap();
        let mut bytes = corpus_to_bytes(&corpus);
        let n = bytes.len();
        bytes[n - 1] ^= 0x40;
        assert!(matches!(
            corpus_from_bytes(&bytes),
            Err(FormatError::ChecksumFailure { .. })
        ));
    }

    #[test]
    fn version_and_truncation_are_detected() {
        let corpus = build_corpus(3, 2.0).unwrap();
        let mut bytes = corpus_to_bytes(&corpus);
        bytes[8] = 99;
        assert!(matches!(
            corpus_from_bytes(&bytes),
            Err(FormatError::VersionMismatch { found: 99, .. })
        ));
        let bytes = corpus_to_bytes(&corpus);
        assert!(matches!(
            corpus_from_bytes(&bytes[..bytes.len() - 7]),
            Err(FormatError::Truncated { .. })
        ));
        assert!(matches!(
            corpus_from_bytes(b"NOTMAGIC plus junk that is long enough......"),
            Err(FormatError::BadMagic)
        ));
    }
}
