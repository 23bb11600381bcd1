//! Candidate suggestion: rank researchers against a proposal summary by the
//! mean cosine similarity of their publication abstracts to the proposal.

use crate::vsm::{cosine, DocumentVector};

/// One ranked candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct Suggestion {
    /// 1-based, contiguous.
    pub rank: usize,
    pub researcher_id: String,
    pub avg_similarity: f64,
    /// Number of publications scored (abstracts non-empty after
    /// preprocessing).
    pub pub_count: usize,
}

/// Mean similarity of a researcher's scorable abstracts to the proposal.
/// Returns `None` when the researcher has no scorable publication, in which
/// case they are excluded from the ranking rather than scored zero.
pub fn score_researcher(
    proposal: &DocumentVector,
    abstracts: &[DocumentVector],
) -> Option<(f64, usize)> {
    if abstracts.is_empty() {
        return None;
    }
    let sum: f64 = abstracts.iter().map(|v| cosine(proposal, v)).sum();
    Some((sum / abstracts.len() as f64, abstracts.len()))
}

/// Rank candidates by average similarity (descending), breaking ties by
/// publication count (descending) then researcher id (ascending). The
/// ordering is total, so the result does not depend on input order.
pub fn suggest_candidates<'a, I>(
    proposal: &DocumentVector,
    candidates: I,
    top_k: usize,
) -> Vec<Suggestion>
where
    I: IntoIterator<Item = (&'a str, &'a [DocumentVector])>,
{
    let mut scored: Vec<Suggestion> = candidates
        .into_iter()
        .filter_map(|(id, abstracts)| {
            score_researcher(proposal, abstracts).map(|(avg_similarity, pub_count)| Suggestion {
                rank: 0,
                researcher_id: id.to_string(),
                avg_similarity,
                pub_count,
            })
        })
        .collect();
    scored.sort_by(|a, b| {
        b.avg_similarity
            .total_cmp(&a.avg_similarity)
            .then_with(|| b.pub_count.cmp(&a.pub_count))
            .then_with(|| a.researcher_id.cmp(&b.researcher_id))
    });
    scored.truncate(top_k);
    for (i, suggestion) in scored.iter_mut().enumerate() {
        suggestion.rank = i + 1;
    }
    scored
}
