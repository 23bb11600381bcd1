//! Brute-force oracles for the acceptance suite.
//!
//! Everything here recomputes results from first principles — dense
//! vocabulary arrays, explicit loops, no sparse maps, no caching — and
//! deliberately shares no code with the implementation paths it checks.

use std::collections::HashMap;

/// Dense TF-IDF corpus: full vocabulary axis per document.
pub struct DenseCorpus {
    pub vocab: Vec<String>,
    /// Document-major weight matrix, one full row per document.
    pub weights: Vec<Vec<f64>>,
    ids: HashMap<String, usize>,
    df: Vec<usize>,
    n_docs: usize,
}

impl DenseCorpus {
    pub fn build(docs: &[(String, Vec<String>)]) -> Self {
        let mut vocab: Vec<String> = docs
            .iter()
            .flat_map(|(_, tokens)| tokens.iter().cloned())
            .collect();
        vocab.sort();
        vocab.dedup();
        let term_index: HashMap<&str, usize> = vocab
            .iter()
            .enumerate()
            .map(|(i, t)| (t.as_str(), i))
            .collect();

        let n_docs = docs.len();
        let mut df = vec![0usize; vocab.len()];
        for (_, tokens) in docs {
            let mut seen = vec![false; vocab.len()];
            for token in tokens {
                let t = term_index[token.as_str()];
                if !seen[t] {
                    seen[t] = true;
                    df[t] += 1;
                }
            }
        }

        let mut weights = Vec::with_capacity(n_docs);
        let mut ids = HashMap::new();
        for (doc_idx, (id, tokens)) in docs.iter().enumerate() {
            ids.insert(id.clone(), doc_idx);
            let mut tf = vec![0usize; vocab.len()];
            for token in tokens {
                tf[term_index[token.as_str()]] += 1;
            }
            let row: Vec<f64> = (0..vocab.len())
                .map(|t| {
                    if tf[t] == 0 {
                        0.0
                    } else {
                        tf[t] as f64 * (n_docs as f64 / df[t] as f64).ln()
                    }
                })
                .collect();
            weights.push(row);
        }
        DenseCorpus {
            vocab,
            weights,
            ids,
            df,
            n_docs,
        }
    }

    pub fn row(&self, id: &str) -> &[f64] {
        &self.weights[self.ids[id]]
    }

    /// Dense TF-IDF vector for an out-of-corpus query; out-of-vocabulary
    /// terms are dropped and the corpus statistics are left untouched.
    pub fn query(&self, tokens: &[String]) -> Vec<f64> {
        let mut tf = vec![0usize; self.vocab.len()];
        for token in tokens {
            if let Some(t) = self.vocab.iter().position(|v| v == token) {
                tf[t] += 1;
            }
        }
        (0..self.vocab.len())
            .map(|t| {
                if tf[t] == 0 {
                    0.0
                } else {
                    tf[t] as f64 * (self.n_docs as f64 / self.df[t] as f64).ln()
                }
            })
            .collect()
    }
}

/// Plain dense cosine; zero when either vector has zero norm.
pub fn dense_cosine(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut dot = 0.0;
    let mut na = 0.0;
    let mut nb = 0.0;
    for i in 0..a.len() {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    (dot / (na.sqrt() * nb.sqrt())).clamp(0.0, 1.0)
}

/// A publication as the metrics oracle sees it.
#[derive(Debug, Clone)]
pub struct OraclePub {
    pub id: String,
    pub year: i32,
    pub author_count: usize,
}

fn years_len(period: (i32, i32)) -> f64 {
    (period.1 - period.0 + 1) as f64
}

fn in_years(pubs: &[OraclePub], period: (i32, i32)) -> Vec<&OraclePub> {
    pubs.iter()
        .filter(|p| (period.0..=period.1).contains(&p.year))
        .collect()
}

pub fn oracle_productivity(pubs: &[OraclePub], before: (i32, i32), after: (i32, i32)) -> f64 {
    in_years(pubs, after).len() as f64 / years_len(after)
        - in_years(pubs, before).len() as f64 / years_len(before)
}

pub fn oracle_coauth(pubs: &[OraclePub], before: (i32, i32), after: (i32, i32)) -> Option<f64> {
    let b = in_years(pubs, before);
    let a = in_years(pubs, after);
    if a.is_empty() || b.is_empty() {
        return None;
    }
    let rate = |ps: &[&OraclePub]| {
        ps.iter().map(|p| (p.author_count - 1) as f64).sum::<f64>() / ps.len() as f64
    };
    Some(rate(&a) - rate(&b))
}

/// Mean pairwise dense cosine within a period, averaged over C(k, 2) pairs.
fn own_similarity(corpus: &DenseCorpus, pubs: &[&OraclePub]) -> f64 {
    let mut sum = 0.0;
    let mut pairs = 0;
    for i in 0..pubs.len() {
        for j in (i + 1)..pubs.len() {
            sum += dense_cosine(corpus.row(&pubs[i].id), corpus.row(&pubs[j].id));
            pairs += 1;
        }
    }
    sum / pairs as f64
}

pub fn oracle_focus_self(
    corpus: &DenseCorpus,
    pubs: &[OraclePub],
    before: (i32, i32),
    after: (i32, i32),
) -> Option<f64> {
    let b = in_years(pubs, before);
    let a = in_years(pubs, after);
    if b.len() < 2 || a.len() < 2 {
        return None;
    }
    Some(own_similarity(corpus, &a) - own_similarity(corpus, &b))
}

pub fn oracle_focus_theme(
    corpus: &DenseCorpus,
    theme_id: &str,
    pubs: &[OraclePub],
    before: (i32, i32),
    after: (i32, i32),
) -> Option<f64> {
    let b = in_years(pubs, before);
    let a = in_years(pubs, after);
    if b.is_empty() || a.is_empty() {
        return None;
    }
    let mean = |ps: &[&OraclePub]| {
        ps.iter()
            .map(|p| dense_cosine(corpus.row(theme_id), corpus.row(&p.id)))
            .sum::<f64>()
            / ps.len() as f64
    };
    Some(mean(&a) - mean(&b))
}

/// Exhaustive candidate ranking: average dense cosine of every researcher's
/// non-empty abstracts against the proposal, sorted by similarity then
/// publication count then id.
pub fn oracle_suggest(
    corpus: &DenseCorpus,
    proposal: &[f64],
    researchers: &[(String, Vec<String>)], // researcher id -> their pub doc ids
    doc_tokens: &HashMap<String, Vec<String>>,
    top_k: usize,
) -> Vec<(String, f64, usize)> {
    let mut scored: Vec<(String, f64, usize)> = researchers
        .iter()
        .filter_map(|(id, pub_ids)| {
            let scorable: Vec<&String> = pub_ids
                .iter()
                .filter(|pid| !doc_tokens[*pid].is_empty())
                .collect();
            if scorable.is_empty() {
                return None;
            }
            let sum: f64 = scorable
                .iter()
                .map(|pid| dense_cosine(proposal, corpus.row(pid)))
                .sum();
            Some((id.clone(), sum / scorable.len() as f64, scorable.len()))
        })
        .collect();
    scored.sort_by(|a, b| {
        b.1.total_cmp(&a.1)
            .then_with(|| b.2.cmp(&a.2))
            .then_with(|| a.0.cmp(&b.0))
    });
    scored.truncate(top_k);
    scored
}
