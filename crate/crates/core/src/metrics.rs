//! Before/after funding-impact indicators: publication productivity,
//! co-authorship rate, research-focus deltas and organization productivity
//! per unit funding.
//!
//! Every indicator is the after-period value minus the before-period value.
//! A metric whose precondition fails is never given a fabricated number; it
//! is omitted and a flag naming the failing precondition is set instead.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::ingest::{FundedProject, YearRange};
use crate::vsm::{cosine, DocumentVector};

/// Partition of the corpus window at a grant year. The grant year itself
/// belongs to the after period; the before period is empty only when the
/// grant falls on the first corpus year.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodSplit {
    pub before: Option<YearRange>,
    pub after: YearRange,
}

/// Split `window` at `grant_year`.
pub fn split_periods(grant_year: i32, window: YearRange) -> Result<PeriodSplit> {
    if !window.contains(grant_year) {
        return Err(Error::GrantYearOutsideWindow {
            grant_year,
            window_start: window.start,
            window_end: window.end,
        });
    }
    let before = if grant_year == window.start {
        None
    } else {
        Some(YearRange::new(window.start, grant_year - 1)?)
    };
    let after = YearRange::new(grant_year, window.end)?;
    Ok(PeriodSplit { before, after })
}

/// Data-sufficiency markers; each names the precondition that failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MetricFlag {
    EmptyBeforePeriod,
    NoPublicationsBefore,
    NoPublicationsAfter,
    TooFewPublicationsBefore,
    TooFewPublicationsAfter,
    LowData,
}

impl MetricFlag {
    pub fn as_str(&self) -> &'static str {
        match self {
            MetricFlag::EmptyBeforePeriod => "empty_before_period",
            MetricFlag::NoPublicationsBefore => "no_publications_before",
            MetricFlag::NoPublicationsAfter => "no_publications_after",
            MetricFlag::TooFewPublicationsBefore => "too_few_publications_before",
            MetricFlag::TooFewPublicationsAfter => "too_few_publications_after",
            MetricFlag::LowData => "low_data",
        }
    }
}

impl fmt::Display for MetricFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One publication as seen by the metric computations: its year, co-author
/// count (authors minus one) and abstract vector. Callers supply panels
/// sorted by year then publication id so that floating-point summation order
/// is reproducible.
#[derive(Debug, Clone)]
pub struct PanelPub {
    pub pub_id: String,
    pub year: i32,
    pub coauthors: usize,
    pub vector: DocumentVector,
}

fn in_period(pubs: &[PanelPub], range: YearRange) -> Vec<&PanelPub> {
    pubs.iter().filter(|p| range.contains(p.year)).collect()
}

/// Mean publications per calendar year, after minus before. Years without
/// publications count as zero; the denominator is the period length.
pub fn productivity_delta(
    pubs: &[PanelPub],
    split: &PeriodSplit,
) -> std::result::Result<f64, MetricFlag> {
    let before = split.before.ok_or(MetricFlag::EmptyBeforePeriod)?;
    let before_rate = in_period(pubs, before).len() as f64 / before.num_years() as f64;
    let after_rate = in_period(pubs, split.after).len() as f64 / split.after.num_years() as f64;
    Ok(after_rate - before_rate)
}

fn mean_coauthors(pubs: &[&PanelPub]) -> f64 {
    pubs.iter().map(|p| p.coauthors as f64).sum::<f64>() / pubs.len() as f64
}

/// Mean co-authors per publication, after minus before. Requires at least
/// one publication in each period.
pub fn coauth_delta(
    pubs: &[PanelPub],
    split: &PeriodSplit,
) -> std::result::Result<f64, MetricFlag> {
    let before = split.before.ok_or(MetricFlag::EmptyBeforePeriod)?;
    let before_pubs = in_period(pubs, before);
    if before_pubs.is_empty() {
        return Err(MetricFlag::NoPublicationsBefore);
    }
    let after_pubs = in_period(pubs, split.after);
    if after_pubs.is_empty() {
        return Err(MetricFlag::NoPublicationsAfter);
    }
    Ok(mean_coauthors(&after_pubs) - mean_coauthors(&before_pubs))
}

fn mean_pairwise_similarity(pubs: &[&PanelPub]) -> f64 {
    let mut sum = 0.0;
    let mut pairs = 0usize;
    for i in 0..pubs.len() {
        for j in (i + 1)..pubs.len() {
            sum += cosine(&pubs[i].vector, &pubs[j].vector);
            pairs += 1;
        }
    }
    sum / pairs as f64
}

/// Mean cosine over all unordered pairs of a researcher's own abstracts,
/// after minus before. Requires at least two publications in each period.
pub fn focus_self_delta(
    pubs: &[PanelPub],
    split: &PeriodSplit,
) -> std::result::Result<f64, MetricFlag> {
    let before = split.before.ok_or(MetricFlag::EmptyBeforePeriod)?;
    let before_pubs = in_period(pubs, before);
    if before_pubs.len() < 2 {
        return Err(MetricFlag::TooFewPublicationsBefore);
    }
    let after_pubs = in_period(pubs, split.after);
    if after_pubs.len() < 2 {
        return Err(MetricFlag::TooFewPublicationsAfter);
    }
    Ok(mean_pairwise_similarity(&after_pubs) - mean_pairwise_similarity(&before_pubs))
}

fn mean_theme_similarity(theme: &DocumentVector, pubs: &[&PanelPub]) -> f64 {
    pubs.iter().map(|p| cosine(theme, &p.vector)).sum::<f64>() / pubs.len() as f64
}

/// Mean cosine between the funded proposal's summary vector and the
/// researcher's abstracts, after minus before. Requires at least one
/// publication in each period.
pub fn focus_theme_delta(
    pubs: &[PanelPub],
    split: &PeriodSplit,
    theme: &DocumentVector,
) -> std::result::Result<f64, MetricFlag> {
    let before = split.before.ok_or(MetricFlag::EmptyBeforePeriod)?;
    let before_pubs = in_period(pubs, before);
    if before_pubs.is_empty() {
        return Err(MetricFlag::NoPublicationsBefore);
    }
    let after_pubs = in_period(pubs, split.after);
    if after_pubs.is_empty() {
        return Err(MetricFlag::NoPublicationsAfter);
    }
    Ok(mean_theme_similarity(theme, &after_pubs) - mean_theme_similarity(theme, &before_pubs))
}

/// Impact indicators for one (researcher, project) pair.
#[derive(Debug, Clone)]
pub struct ResearcherImpact {
    pub researcher_id: String,
    pub project_id: String,
    pub split: PeriodSplit,
    pub productivity_delta: Option<f64>,
    pub coauth_delta: Option<f64>,
    pub focus_self_delta: Option<f64>,
    pub focus_theme_delta: Option<f64>,
    pub flags: BTreeSet<MetricFlag>,
}

/// Compute all researcher indicators for one (researcher, project) pair.
/// `theme` is the vectorized project summary.
pub fn researcher_impact(
    researcher_id: &str,
    project_id: &str,
    grant_year: i32,
    theme: &DocumentVector,
    pubs: &[PanelPub],
    window: YearRange,
) -> Result<ResearcherImpact> {
    let split = split_periods(grant_year, window)?;
    let mut flags = BTreeSet::new();
    let capture =
        |flags: &mut BTreeSet<MetricFlag>, r: std::result::Result<f64, MetricFlag>| match r {
            Ok(v) => Some(v),
            Err(flag) => {
                flags.insert(flag);
                None
            }
        };
    let productivity = capture(&mut flags, productivity_delta(pubs, &split));
    let coauth = capture(&mut flags, coauth_delta(pubs, &split));
    let focus_self = capture(&mut flags, focus_self_delta(pubs, &split));
    let focus_theme = capture(&mut flags, focus_theme_delta(pubs, &split, theme));
    if pubs.is_empty() {
        flags.insert(MetricFlag::LowData);
    }
    Ok(ResearcherImpact {
        researcher_id: researcher_id.to_string(),
        project_id: project_id.to_string(),
        split,
        productivity_delta: productivity,
        coauth_delta: coauth,
        focus_self_delta: focus_self,
        focus_theme_delta: focus_theme,
        flags,
    })
}

/// Organization-level funding impact.
#[derive(Debug, Clone)]
pub struct OrgImpact {
    pub org_id: String,
    pub project_count: usize,
    pub total_funds: f64,
    pub split: PeriodSplit,
    pub productivity_delta: Option<f64>,
    /// Publication gain per million currency units; defined only when funds
    /// are positive and the productivity delta is computable.
    pub pubs_per_million: Option<f64>,
    pub flags: BTreeSet<MetricFlag>,
}

/// Pooled productivity impact of one organization, split at its earliest
/// grant year.
pub fn org_impact(
    org_id: &str,
    projects: &[&FundedProject],
    pubs: &[PanelPub],
    window: YearRange,
) -> Result<OrgImpact> {
    let earliest = projects
        .iter()
        .map(|p| p.grant_year)
        .min()
        .ok_or_else(|| Error::Config(format!("org `{org_id}` has no funded projects")))?;
    let total_funds: f64 = projects.iter().map(|p| p.budget).sum();
    let split = split_periods(earliest, window)?;
    let mut flags = BTreeSet::new();
    let productivity = match productivity_delta(pubs, &split) {
        Ok(v) => Some(v),
        Err(flag) => {
            flags.insert(flag);
            None
        }
    };
    if pubs.is_empty() {
        flags.insert(MetricFlag::LowData);
    }
    let pubs_per_million = match productivity {
        Some(delta) if total_funds > 0.0 => {
            Some(delta * split.after.num_years() as f64 / (total_funds / 1e6))
        }
        _ => None,
    };
    Ok(OrgImpact {
        org_id: org_id.to_string(),
        project_count: projects.len(),
        total_funds,
        split,
        productivity_delta: productivity,
        pubs_per_million,
        flags,
    })
}

/// One row of the per-researcher yearly table: publication count, that
/// year's co-authorship rate and theme similarity (omitted for years without
/// publications), and whether a grant was awarded that year.
#[derive(Debug, Clone)]
pub struct YearlyRow {
    pub year: i32,
    pub pubs: usize,
    pub coauth_rate: Option<f64>,
    pub focus_theme: Option<f64>,
    pub is_grant_year: bool,
}

/// Year-by-year view of a researcher over the corpus window.
pub fn yearly_rows(
    pubs: &[PanelPub],
    window: YearRange,
    grant_years: &BTreeSet<i32>,
    theme: &DocumentVector,
) -> Vec<YearlyRow> {
    window
        .years()
        .map(|year| {
            let year_pubs: Vec<&PanelPub> = pubs.iter().filter(|p| p.year == year).collect();
            let (coauth_rate, focus_theme) = if year_pubs.is_empty() {
                (None, None)
            } else {
                (
                    Some(mean_coauthors(&year_pubs)),
                    Some(mean_theme_similarity(theme, &year_pubs)),
                )
            };
            YearlyRow {
                year,
                pubs: year_pubs.len(),
                coauth_rate,
                focus_theme,
                is_grant_year: grant_years.contains(&year),
            }
        })
        .collect()
}
