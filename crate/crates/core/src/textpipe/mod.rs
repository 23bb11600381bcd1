//! Deterministic text preprocessing: tokenization, case folding, stop-word
//! removal and stemming, applied in exactly that order.

pub mod porter;

use std::collections::HashSet;
use std::io::BufRead;
use std::path::Path;

use crate::error::{Error, Result};

/// The embedded default stop-word list.
const DEFAULT_STOPWORDS: &str = include_str!("stopwords_en.txt");

/// An ordered list of normalized terms produced by [`PipelineConfig::preprocess`].
///
/// Tokens are lowercase, stop-word free (checked in surface form, before
/// stemming) and stemmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TokenStream {
    tokens: Vec<String>,
}

impl TokenStream {
    /// Wrap already-normalized tokens, bypassing the pipeline. Useful for
    /// building vector-space inputs directly.
    pub fn from_tokens(tokens: Vec<String>) -> Self {
        TokenStream { tokens }
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn into_tokens(self) -> Vec<String> {
        self.tokens
    }
}

/// Preprocessing configuration: tokenizer thresholds, stop-word list, and
/// whether stemming is applied.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    /// Tokens shorter than this (in characters) are dropped.
    pub min_token_len: usize,
    /// Drop tokens consisting solely of digits.
    pub drop_numeric: bool,
    /// Apply the Porter stemmer after stop-word removal.
    pub stem: bool,
    stopwords: HashSet<String>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            min_token_len: 2,
            drop_numeric: true,
            stem: true,
            stopwords: parse_stopwords(DEFAULT_STOPWORDS.as_bytes())
                .expect("embedded stop-word list is well-formed"),
        }
    }
}

impl PipelineConfig {
    /// Default pipeline with the stop-word list replaced by one loaded from
    /// `path` (one lowercase word per line, `#` comments allowed).
    pub fn with_stopword_file(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let stopwords = parse_stopwords(std::io::BufReader::new(file))?;
        Ok(PipelineConfig {
            stopwords,
            ..PipelineConfig::default()
        })
    }

    /// Replace the stop-word set directly.
    pub fn with_stopwords(mut self, words: impl IntoIterator<Item = String>) -> Self {
        self.stopwords = words.into_iter().collect();
        self
    }

    pub fn is_stopword(&self, token: &str) -> bool {
        self.stopwords.contains(token)
    }

    /// Split `text` on runs of non-alphanumeric characters and lowercase the
    /// pieces, dropping tokens shorter than `min_token_len` and digit-only
    /// tokens.
    pub fn tokenize(&self, text: &str) -> Vec<String> {
        text.split(|c: char| !c.is_alphanumeric())
            .filter(|raw| !raw.is_empty())
            .map(|raw| raw.to_lowercase())
            .filter(|t| t.chars().count() >= self.min_token_len)
            .filter(|t| !self.drop_numeric || !t.chars().all(|c| c.is_numeric()))
            .collect()
    }

    /// Full pipeline: tokenize, case-fold, remove stop-words, stem.
    pub fn preprocess(&self, text: &str) -> TokenStream {
        let tokens = self
            .tokenize(text)
            .into_iter()
            .filter(|t| !self.stopwords.contains(t.as_str()))
            .map(|t| if self.stem { porter::stem(&t) } else { t })
            .collect();
        TokenStream { tokens }
    }
}

fn parse_stopwords(reader: impl BufRead) -> Result<HashSet<String>> {
    let mut words = HashSet::new();
    for line in reader.lines() {
        let line = line.map_err(|source| Error::Io {
            path: "<stopwords>".into(),
            source,
        })?;
        let word = match line.split_once('#') {
            Some((before, _)) => before.trim(),
            None => line.trim(),
        };
        if !word.is_empty() {
            words.insert(word.to_lowercase());
        }
    }
    Ok(words)
}
