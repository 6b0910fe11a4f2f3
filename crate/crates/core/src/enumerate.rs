//! Corpora of Gram matrices and classification of their modular data.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::cyclo::RootOfUnity;
use crate::lattice::{determinant, GramMatrix};
use crate::moddata::{canonical_form_with_bound, ModularData, ModularDataError, DEFAULT_CANONICAL_RANK_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("corpus bounds must be positive")]
    NonPositiveBound,
    #[error(transparent)]
    ModularData(#[from] ModularDataError),
}

/// Bounds of a generated corpus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub max_dim: usize,
    pub max_entry: i64,
    pub max_rank: Option<u64>,
}

impl CorpusSpec {
    pub fn new(max_dim: usize, max_entry: i64, max_rank: Option<u64>) -> Result<Self, EnumerateError> {
        if max_dim == 0 || max_entry <= 0 || max_rank == Some(0) {
            return Err(EnumerateError::NonPositiveBound);
        }
        Ok(CorpusSpec {
            max_dim,
            max_entry,
            max_rank,
        })
    }
}

/// All symmetric even nonsingular matrices within the bounds, ordered by
/// dimension and then lexicographically by entries (row-major).
pub fn generate_gram_matrices(spec: &CorpusSpec) -> Vec<GramMatrix> {
    let mut out = Vec::new();
    for n in 1..=spec.max_dim {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let choices: Vec<Vec<i64>> = slots
            .iter()
            .map(|&(i, j)| {
                (-spec.max_entry..=spec.max_entry)
                    .filter(|x| i != j || x % 2 == 0)
                    .collect()
            })
            .collect();
        let mut cursor = vec![0usize; slots.len()];
        loop {
            let mut entries = vec![vec![0i64; n]; n];
            for (&(i, j), (&c, vals)) in slots.iter().zip(cursor.iter().zip(&choices)) {
                entries[i][j] = vals[c];
                entries[j][i] = vals[c];
            }
            let big: Vec<Vec<_>> = entries
                .iter()
                .map(|r| r.iter().map(|&x| num_bigint::BigInt::from(x)).collect())
                .collect();
            let det = determinant(&big);
            let keep = det.magnitude() > &num_bigint::BigUint::from(0u8)
                && spec
                    .max_rank
                    .is_none_or(|cap| det.magnitude() <= &num_bigint::BigUint::from(cap));
            if keep {
                out.push(GramMatrix::new(entries).expect("generated matrix is a valid Gram matrix"));
            }
            // odometer, last slot fastest: lexicographic order
            let mut exhausted = true;
            for pos in (0..slots.len()).rev() {
                cursor[pos] += 1;
                if cursor[pos] < choices[pos].len() {
                    exhausted = false;
                    break;
                }
                cursor[pos] = 0;
            }
            if exhausted {
                break;
            }
        }
    }
    out
}

/// One equivalence class of modular data found in a corpus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassEntry {
    /// Smallest matrix (dimension, then entries) producing this class.
    pub witness: GramMatrix,
    /// Sorted twists.
    pub twists: Vec<RootOfUnity>,
    /// How many corpus matrices land in the class.
    pub members: usize,
}

/// rank → canonical form → class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Classification {
    pub classes: BTreeMap<usize, BTreeMap<Vec<u8>, ClassEntry>>,
}

impl Classification {
    pub fn class_count(&self, rank: usize) -> usize {
        self.classes.get(&rank).map_or(0, BTreeMap::len)
    }

    pub fn total_classes(&self) -> usize {
        self.classes.values().map(BTreeMap::len).sum()
    }
}

pub fn classify(corpus: &[GramMatrix]) -> Result<Classification, EnumerateError> {
    classify_with_bound(corpus, DEFAULT_CANONICAL_RANK_BOUND)
}

pub fn classify_with_bound(corpus: &[GramMatrix], bound: usize) -> Result<Classification, EnumerateError> {
    let keyed = corpus
        .par_iter()
        .map(|b| {
            let md = ModularData::from_lattice(b)?;
            let key = canonical_form_with_bound(&md, bound)?;
            let mut twists = md.twists().to_vec();
            twists.sort();
            Ok((md.rank(), key, b.clone(), twists))
        })
        .collect::<Result<Vec<_>, ModularDataError>>()?;

    let mut out = Classification::default();
    for (rank, key, b, twists) in keyed {
        let by_key = out.classes.entry(rank).or_default();
        match by_key.get_mut(&key) {
            Some(entry) => {
                entry.members += 1;
                if (b.dim(), &b) < (entry.witness.dim(), &entry.witness) {
                    entry.witness = b;
                }
            }
            None => {
                by_key.insert(
                    key,
                    ClassEntry {
                        witness: b,
                        twists,
                        members: 1,
                    },
                );
            }
        }
    }
    Ok(out)
}

/// Text table: rank, class count at that rank, witness, twist multiset.
impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rank\tclasses\twitness\ttwists")?;
        for (rank, classes) in &self.classes {
            for entry in classes.values() {
                let twists: Vec<String> = entry.twists.iter().map(ToString::to_string).collect();
                writeln!(f, "{rank}\t{}\t{}\t{}", classes.len(), entry.witness, twists.join(" "))?;
            }
        }
        Ok(())
    }
}
