//! Vector-space model: corpus vocabulary index, TF-IDF weighting and cosine
//! similarity over sparse term-weight vectors.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::textpipe::TokenStream;

/// Immutable document-frequency statistics for a document collection.
#[derive(Debug, Clone)]
pub struct CorpusIndex {
    n_docs: usize,
    df: HashMap<String, u32>,
}

impl CorpusIndex {
    /// Count document frequencies over `docs`. Empty documents still count
    /// towards `n_docs` but contribute no terms.
    pub fn build<'a>(docs: impl IntoIterator<Item = &'a TokenStream>) -> Result<Self> {
        let mut n_docs = 0usize;
        let mut df: HashMap<String, u32> = HashMap::new();
        for doc in docs {
            n_docs += 1;
            let mut seen: Vec<&str> = doc.tokens().iter().map(String::as_str).collect();
            seen.sort_unstable();
            seen.dedup();
            for term in seen {
                match df.get_mut(term) {
                    Some(count) => *count += 1,
                    None => {
                        df.insert(term.to_string(), 1);
                    }
                }
            }
        }
        if n_docs == 0 {
            return Err(Error::EmptyCorpus);
        }
        Ok(CorpusIndex { n_docs, df })
    }

    /// Assemble from precomputed statistics (used by the streaming index
    /// build in the command layer).
    pub(crate) fn from_parts(n_docs: usize, df: HashMap<String, u32>) -> Result<Self> {
        if n_docs == 0 {
            return Err(Error::EmptyCorpus);
        }
        Ok(CorpusIndex { n_docs, df })
    }

    pub fn n_docs(&self) -> usize {
        self.n_docs
    }

    pub fn vocab_size(&self) -> usize {
        self.df.len()
    }

    /// Document frequency of `term`, or `None` when out of vocabulary.
    pub fn doc_frequency(&self, term: &str) -> Option<u32> {
        self.df.get(term).copied()
    }

    /// Map a token stream to a sparse TF-IDF vector against this index.
    /// Out-of-vocabulary terms are dropped, as are terms whose weight is zero
    /// (a term occurring in every document).
    pub fn vectorize(&self, doc: &TokenStream) -> DocumentVector {
        let mut tf: BTreeMap<&str, u32> = BTreeMap::new();
        for token in doc.tokens() {
            *tf.entry(token.as_str()).or_insert(0) += 1;
        }
        let mut weights = BTreeMap::new();
        for (term, count) in tf {
            if let Some(df) = self.df.get(term) {
                let w = tfidf_weight(count, *df, self.n_docs)
                    .expect("index guarantees 1 <= df <= n_docs");
                if w > 0.0 {
                    weights.insert(term.to_string(), w);
                }
            }
        }
        DocumentVector::from_weights(weights)
    }
}

/// TF-IDF weight `tf * ln(N / df)`.
///
/// Natural logarithm; cosine similarity is invariant to the base, which only
/// rescales every weight by one constant.
pub fn tfidf_weight(tf: u32, df: u32, n_docs: usize) -> Result<f64> {
    if df == 0 || df as usize > n_docs {
        return Err(Error::DfOutOfRange { df, n_docs });
    }
    if tf == 0 {
        return Ok(0.0);
    }
    Ok(f64::from(tf) * (n_docs as f64 / f64::from(df)).ln())
}

/// Sparse term-weight vector with a cached Euclidean norm.
#[derive(Debug, Clone, PartialEq)]
pub struct DocumentVector {
    weights: BTreeMap<String, f64>,
    norm: f64,
}

impl DocumentVector {
    /// Build from explicit weights, dropping entries that are exactly zero.
    pub fn from_weights(weights: BTreeMap<String, f64>) -> Self {
        let weights: BTreeMap<String, f64> =
            weights.into_iter().filter(|(_, w)| *w != 0.0).collect();
        let norm = weights.values().map(|w| w * w).sum::<f64>().sqrt();
        DocumentVector { weights, norm }
    }

    pub fn weights(&self) -> &BTreeMap<String, f64> {
        &self.weights
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Cosine similarity of two non-negative sparse vectors, clamped to `[0, 1]`.
/// Defined as 0 when either vector has zero norm.
pub fn cosine(a: &DocumentVector, b: &DocumentVector) -> f64 {
    if a.norm == 0.0 || b.norm == 0.0 {
        return 0.0;
    }
    let mut dot = 0.0;
    for (term, wa) in &a.weights {
        if let Some(wb) = b.weights.get(term) {
            dot += wa * wb;
        }
    }
    (dot / (a.norm * b.norm)).clamp(0.0, 1.0)
}
