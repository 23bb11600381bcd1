//! Command orchestration: load the datasets, build the global index, compute
//! impact reports and candidate suggestions, and write report files.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ingest::{self, EntityGraph, FundedProject, LoadCounts, Publication, YearRange};
use crate::metrics::{self, OrgImpact, PanelPub, ResearcherImpact, YearlyRow};
use crate::report;
use crate::suggest::{self, Suggestion};
use crate::textpipe::PipelineConfig;
use crate::vsm::{CorpusIndex, DocumentVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl OutputFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Config(format!(
                "unknown output format `{other}` (expected json or csv)"
            ))),
        }
    }
}

/// Inputs and knobs for one command invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub publications: PathBuf,
    pub projects: PathBuf,
    pub org_aliases: PathBuf,
    pub window: YearRange,
    pub stopwords: Option<PathBuf>,
    pub top_k: usize,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
    pub skip_invalid: bool,
    /// Keep only closed projects (the default; ongoing projects lack the
    /// after-period data the indicators need).
    pub closed_only: bool,
    /// Researcher ids excluded from suggestion rankings.
    pub exclude_researchers: Vec<String>,
}

impl RunConfig {
    pub fn new(
        publications: impl Into<PathBuf>,
        projects: impl Into<PathBuf>,
        org_aliases: impl Into<PathBuf>,
        window: YearRange,
        out_dir: impl Into<PathBuf>,
    ) -> Self {
        RunConfig {
            publications: publications.into(),
            projects: projects.into(),
            org_aliases: org_aliases.into(),
            window,
            stopwords: None,
            top_k: 10,
            out_dir: out_dir.into(),
            format: OutputFormat::Csv,
            skip_invalid: false,
            closed_only: true,
            exclude_researchers: Vec::new(),
        }
    }

    fn pipeline(&self) -> Result<PipelineConfig> {
        match &self.stopwords {
            Some(path) => PipelineConfig::with_stopword_file(path),
            None => Ok(PipelineConfig::default()),
        }
    }

    fn check(&self) -> Result<()> {
        if self.top_k < 1 {
            return Err(Error::Config("top_k must be at least 1".to_string()));
        }
        Ok(())
    }
}

/// Row counts from validating the three input files.
#[derive(Debug, Clone)]
pub struct ValidateSummary {
    pub publications: LoadCounts,
    pub projects: LoadCounts,
    pub org_aliases: LoadCounts,
    pub unresolved_orgs: usize,
}

impl ValidateSummary {
    /// Human-readable per-file lines.
    pub fn lines(&self) -> Vec<String> {
        vec![
            format!(
                "publications: {} kept, {} dropped",
                self.publications.kept,
                self.publications.dropped()
            ),
            format!(
                "projects: {} kept, {} dropped",
                self.projects.kept,
                self.projects.dropped()
            ),
            format!(
                "org_aliases: {} kept, {} dropped",
                self.org_aliases.kept,
                self.org_aliases.dropped()
            ),
            format!("unresolved organizations: {}", self.unresolved_orgs),
        ]
    }
}

struct Loaded {
    graph: EntityGraph,
    pub_counts: LoadCounts,
    project_counts: LoadCounts,
    alias_counts: LoadCounts,
}

fn load_all(config: &RunConfig) -> Result<Loaded> {
    config.check()?;
    let pubs = ingest::load_publications(&config.publications, config.window, config.skip_invalid)?;
    let projects = ingest::load_projects(
        &config.projects,
        config.window,
        config.closed_only,
        config.skip_invalid,
    )?;
    let (aliases, alias_counts) =
        ingest::load_org_aliases(&config.org_aliases, config.skip_invalid)?;
    let pub_counts = pubs.counts;
    let project_counts = projects.counts;
    let graph = EntityGraph::link(pubs.records, projects.records, aliases);
    Ok(Loaded {
        graph,
        pub_counts,
        project_counts,
        alias_counts,
    })
}

/// Load and validate all inputs, reporting per-file row counts and the
/// number of distinct organization names that did not resolve.
pub fn validate(config: &RunConfig) -> Result<ValidateSummary> {
    let loaded = load_all(config)?;
    Ok(ValidateSummary {
        publications: loaded.pub_counts,
        projects: loaded.project_counts,
        org_aliases: loaded.alias_counts,
        unresolved_orgs: loaded.graph.unresolved_org_names.len(),
    })
}

/// Document-frequency statistics over every publication abstract plus every
/// project summary: one global index, so idf values are comparable across
/// researchers and proposals.
fn build_index(graph: &EntityGraph, pipeline: &PipelineConfig) -> Result<CorpusIndex> {
    let texts: Vec<&str> = graph
        .publications
        .values()
        .map(|p| p.abstract_text.as_str())
        .chain(graph.projects.values().map(|p| p.summary.as_str()))
        .collect();
    let (n_docs, df) = texts
        .par_iter()
        .fold(
            || (0usize, std::collections::HashMap::<String, u32>::new()),
            |(count, mut df), text| {
                let stream = pipeline.preprocess(text);
                let mut terms: Vec<&String> = stream.tokens().iter().collect();
                terms.sort_unstable();
                terms.dedup();
                for term in terms {
                    *df.entry(term.clone()).or_insert(0) += 1;
                }
                (count + 1, df)
            },
        )
        .reduce(
            || (0usize, std::collections::HashMap::new()),
            |(ca, mut a), (cb, b)| {
                for (term, count) in b {
                    *a.entry(term).or_insert(0) += count;
                }
                (ca + cb, a)
            },
        );
    CorpusIndex::from_parts(n_docs, df)
}

/// An abstract's vector plus whether the abstract had any tokens at all
/// (distinguishing "empty text" from "all terms out of vocabulary").
#[derive(Debug, Clone)]
struct TextVector {
    has_tokens: bool,
    vector: DocumentVector,
}

fn vectorize_texts<'a>(
    ids_and_texts: impl IntoIterator<Item = (&'a str, &'a str)>,
    index: &CorpusIndex,
    pipeline: &PipelineConfig,
) -> BTreeMap<String, TextVector> {
    let items: Vec<(&str, &str)> = ids_and_texts.into_iter().collect();
    items
        .par_iter()
        .map(|(id, text)| {
            let stream = pipeline.preprocess(text);
            (
                id.to_string(),
                TextVector {
                    has_tokens: !stream.is_empty(),
                    vector: index.vectorize(&stream),
                },
            )
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

// `pubs` comes from the graph accessors already sorted by (year, pub_id),
// which fixes the summation order of the similarity means.
fn panel_for(vectors: &BTreeMap<String, TextVector>, pubs: &[&Publication]) -> Vec<PanelPub> {
    pubs.iter()
        .map(|p| PanelPub {
            pub_id: p.pub_id.clone(),
            year: p.year,
            coauthors: p.author_ids.len() - 1,
            vector: vectors
                .get(&p.pub_id)
                .map(|tv| tv.vector.clone())
                .unwrap_or_else(|| DocumentVector::from_weights(BTreeMap::new())),
        })
        .collect()
}

fn summary_vector(
    project: &FundedProject,
    index: &CorpusIndex,
    pipeline: &PipelineConfig,
) -> TextVector {
    let stream = pipeline.preprocess(&project.summary);
    TextVector {
        has_tokens: !stream.is_empty(),
        vector: index.vectorize(&stream),
    }
}

/// The earliest project of a researcher: smallest grant year, ties broken by
/// project id.
fn earliest_project<'a>(projects: &[&'a FundedProject]) -> &'a FundedProject {
    projects
        .iter()
        .min_by_key(|p| (p.grant_year, p.project_id.clone()))
        .expect("caller guarantees at least one project")
}

/// Everything `impact` computed, with the paths it wrote.
#[derive(Debug)]
pub struct ImpactOutput {
    pub researcher_rows: Vec<ResearcherImpact>,
    pub org_rows: Vec<OrgImpact>,
    pub yearly: BTreeMap<String, Vec<YearlyRow>>,
    pub files: Vec<PathBuf>,
}

/// Compute per-(researcher, project) and per-organization impact reports and
/// the per-researcher yearly tables, and write them to the output directory.
pub fn impact(config: &RunConfig) -> Result<ImpactOutput> {
    let loaded = load_all(config)?;
    let graph = &loaded.graph;
    let pipeline = config.pipeline()?;
    let index = build_index(graph, &pipeline)?;

    // vectors are only needed for funded researchers' publications
    let funded = graph.funded_researcher_ids();
    let needed_pub_ids: BTreeSet<&str> = funded
        .iter()
        .flat_map(|id| graph.researcher_publications(id))
        .map(|p| p.pub_id.as_str())
        .collect();
    let vectors = vectorize_texts(
        needed_pub_ids
            .iter()
            .map(|id| (*id, graph.publications[*id].abstract_text.as_str())),
        &index,
        &pipeline,
    );

    let mut summaries: BTreeMap<String, TextVector> = BTreeMap::new();
    for project in graph.projects.values() {
        let tv = summary_vector(project, &index, &pipeline);
        if !tv.has_tokens {
            return Err(Error::EmptyProposal {
                project_id: project.project_id.clone(),
            });
        }
        summaries.insert(project.project_id.clone(), tv);
    }

    let mut researcher_rows = Vec::new();
    let mut yearly = BTreeMap::new();
    for researcher_id in &funded {
        let pubs = graph.researcher_publications(researcher_id);
        let panel = panel_for(&vectors, &pubs);
        let projects = graph.projects_of_researcher(researcher_id);
        for project in &projects {
            let theme = &summaries[&project.project_id].vector;
            researcher_rows.push(metrics::researcher_impact(
                researcher_id,
                &project.project_id,
                project.grant_year,
                theme,
                &panel,
                config.window,
            )?);
        }
        let earliest = earliest_project(&projects);
        let grant_years: BTreeSet<i32> = projects.iter().map(|p| p.grant_year).collect();
        let theme = &summaries[&earliest.project_id].vector;
        yearly.insert(
            researcher_id.clone(),
            metrics::yearly_rows(&panel, config.window, &grant_years, theme),
        );
    }

    let mut org_rows = Vec::new();
    for (org_key, projects) in graph.projects_by_org() {
        let pubs = graph.org_publications_sorted(&org_key);
        let panel = panel_for(&vectors, &pubs);
        org_rows.push(metrics::org_impact(
            &org_key,
            &projects,
            &panel,
            config.window,
        )?);
    }

    std::fs::create_dir_all(&config.out_dir).map_err(|source| Error::Io {
        path: config.out_dir.clone(),
        source,
    })?;
    let mut files = vec![
        report::write_researcher_impacts(&config.out_dir, config.format, &researcher_rows)?,
        report::write_org_impacts(&config.out_dir, config.format, &org_rows)?,
    ];
    for (researcher_id, rows) in &yearly {
        files.push(report::write_yearly(&config.out_dir, researcher_id, rows)?);
    }
    Ok(ImpactOutput {
        researcher_rows,
        org_rows,
        yearly,
        files,
    })
}

/// Ranked suggestions for one project, with the report path written.
#[derive(Debug)]
pub struct SuggestOutput {
    pub suggestions: Vec<Suggestion>,
    pub file: PathBuf,
}

/// Rank all researchers against `project_id`'s summary and write the
/// suggestions report.
pub fn suggest(config: &RunConfig, project_id: &str) -> Result<SuggestOutput> {
    let loaded = load_all(config)?;
    let graph = &loaded.graph;
    let project = graph
        .projects
        .get(project_id)
        .ok_or_else(|| Error::UnknownProject {
            id: project_id.to_string(),
            known: graph.projects.keys().cloned().collect(),
        })?;
    let pipeline = config.pipeline()?;
    let index = build_index(graph, &pipeline)?;

    let proposal = summary_vector(project, &index, &pipeline);
    if !proposal.has_tokens {
        return Err(Error::EmptyProposal {
            project_id: project_id.to_string(),
        });
    }

    let vectors = vectorize_texts(
        graph
            .publications
            .values()
            .map(|p| (p.pub_id.as_str(), p.abstract_text.as_str())),
        &index,
        &pipeline,
    );

    let excluded: BTreeSet<&str> = config
        .exclude_researchers
        .iter()
        .map(String::as_str)
        .collect();
    let pools: Vec<(String, Vec<DocumentVector>)> = graph
        .researchers
        .keys()
        .filter(|id| !excluded.contains(id.as_str()))
        .map(|id| {
            let abstracts: Vec<DocumentVector> = graph
                .researcher_publications(id)
                .iter()
                .filter_map(|p| vectors.get(&p.pub_id))
                .filter(|tv| tv.has_tokens)
                .map(|tv| tv.vector.clone())
                .collect();
            (id.clone(), abstracts)
        })
        .collect();

    let suggestions = suggest::suggest_candidates(
        &proposal.vector,
        pools.iter().map(|(id, v)| (id.as_str(), v.as_slice())),
        config.top_k,
    );

    std::fs::create_dir_all(&config.out_dir).map_err(|source| Error::Io {
        path: config.out_dir.clone(),
        source,
    })?;
    let file = report::write_suggestions(&config.out_dir, config.format, &suggestions)?;
    Ok(SuggestOutput { suggestions, file })
}
