//! Grant-impact assessment over publication and funding records.
//!
//! The crate combines two views of a funding program:
//!
//! * **Bibliometric deltas** — per-researcher and per-organization changes in
//!   publication productivity, co-authorship rate and research focus between
//!   the years before a grant and the years from the grant onwards.
//! * **Semantic matching** — TF-IDF vectors over publication abstracts and
//!   proposal summaries with cosine similarity, used both for the focus
//!   metrics and for ranking candidate researchers against a proposal.
//!
//! Pipeline: [`ingest`] parses the CSV datasets and links researchers,
//! publications, organizations and funded projects into an immutable entity
//! graph; [`textpipe`] normalizes raw text to stemmed token streams; [`vsm`]
//! builds the corpus index and vector operations on top of those streams;
//! [`metrics`] computes the before/after impact indicators; [`suggest`] ranks
//! researchers against a proposal; [`run`] orchestrates whole commands and
//! [`report`] writes their machine-readable outputs.

pub mod error;
pub mod ingest;
pub mod metrics;
pub mod report;
pub mod run;
pub mod suggest;
pub mod textpipe;
pub mod vsm;

pub use error::{Error, Result};
pub use ingest::{
    AliasTable, EntityGraph, FundedProject, LoadOutcome, Organization, ProjectStatus, Publication,
    Researcher, YearRange,
};
pub use metrics::{MetricFlag, OrgImpact, PeriodSplit, ResearcherImpact, YearlyRow};
pub use run::{OutputFormat, RunConfig};
pub use suggest::Suggestion;
pub use textpipe::{PipelineConfig, TokenStream};
pub use vsm::{cosine, tfidf_weight, CorpusIndex, DocumentVector};
