//! Dataset ingestion: publication, funded-project and organization-alias CSV
//! files, plus the linked in-memory entity graph.
//!
//! Loaders validate rows against the schema invariants. By default any
//! invalid row aborts the load; with `skip_invalid` the row is dropped and
//! counted instead. Rows outside the corpus year window are always dropped
//! and counted, never errors.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

/// Inclusive calendar-year range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct YearRange {
    pub start: i32,
    pub end: i32,
}

impl YearRange {
    pub fn new(start: i32, end: i32) -> Result<Self> {
        if start > end {
            return Err(Error::Config(format!(
                "year range start {start} after end {end}"
            )));
        }
        Ok(YearRange { start, end })
    }

    pub fn contains(&self, year: i32) -> bool {
        (self.start..=self.end).contains(&year)
    }

    pub fn num_years(&self) -> usize {
        (self.end - self.start + 1) as usize
    }

    pub fn years(&self) -> impl Iterator<Item = i32> {
        self.start..=self.end
    }
}

impl fmt::Display for YearRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.start, self.end)
    }
}

/// One scholarly record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Publication {
    pub pub_id: String,
    pub title: String,
    pub abstract_text: String,
    pub year: i32,
    /// Ordered author list; non-empty, no duplicates.
    pub author_ids: Vec<String>,
    /// Organization identifiers as they appear in the source file; resolved
    /// against the alias table when the entity graph is linked.
    pub org_ids: BTreeSet<String>,
}

/// A researcher derived from publication author lists and project PI lists.
///
/// The input schemas carry no separate name column, so `display_name` is the
/// researcher id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Researcher {
    pub researcher_id: String,
    pub display_name: String,
    pub pub_ids: BTreeSet<String>,
}

/// An organization from the alias table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Organization {
    pub org_id: String,
    pub canonical_name: String,
    /// Normalized alias forms, including the canonical name.
    pub aliases: BTreeSet<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectStatus {
    Closed,
    InProgress,
}

impl ProjectStatus {
    fn parse(token: &str) -> Option<Self> {
        match token {
            "closed" => Some(ProjectStatus::Closed),
            "in_progress" => Some(ProjectStatus::InProgress),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ProjectStatus::Closed => "closed",
            ProjectStatus::InProgress => "in_progress",
        }
    }
}

/// One grant record.
#[derive(Debug, Clone, PartialEq)]
pub struct FundedProject {
    pub project_id: String,
    pub title: String,
    pub summary: String,
    pub pi_ids: Vec<String>,
    /// PI organization identifier as it appears in the source file.
    pub pio_id: String,
    pub grant_year: i32,
    /// Grant amount in input currency units, non-negative.
    pub budget: f64,
    pub status: ProjectStatus,
}

/// Row bookkeeping for one load; `kept + dropped = input_rows` always holds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadCounts {
    pub input_rows: usize,
    pub kept: usize,
    pub dropped_out_of_window: usize,
    pub dropped_invalid: usize,
    /// Projects removed by the closed-only filter.
    pub dropped_filtered: usize,
}

impl LoadCounts {
    pub fn dropped(&self) -> usize {
        self.dropped_out_of_window + self.dropped_invalid + self.dropped_filtered
    }
}

/// Records kept by a loader together with its row counts.
#[derive(Debug, Clone)]
pub struct LoadOutcome<T> {
    pub records: Vec<T>,
    pub counts: LoadCounts,
}

/// Lowercase and collapse whitespace runs; the normal form used for all
/// organization-name matching.
pub fn normalize_org_name(name: &str) -> String {
    name.to_lowercase()
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
}

/// Organization-name alias table with exact (normalized) matching only.
#[derive(Debug, Clone, Default)]
pub struct AliasTable {
    orgs: BTreeMap<String, Organization>,
    by_alias: HashMap<String, String>,
}

impl AliasTable {
    pub fn empty() -> Self {
        AliasTable::default()
    }

    /// Resolve an organization name to its org id, case- and
    /// whitespace-insensitively. No fuzzy matching; unknown names yield
    /// `None`.
    pub fn resolve(&self, name: &str) -> Option<&str> {
        self.by_alias
            .get(&normalize_org_name(name))
            .map(String::as_str)
    }

    pub fn organizations(&self) -> &BTreeMap<String, Organization> {
        &self.orgs
    }

    /// Register one alias row. Errors describe the offending condition and
    /// are turned into row errors by the loader.
    fn add_row(
        &mut self,
        org_id: &str,
        canonical_name: &str,
        alias: &str,
    ) -> std::result::Result<(), String> {
        let norm_canonical = normalize_org_name(canonical_name);
        let norm_alias = normalize_org_name(alias);
        if norm_alias.is_empty() {
            return Err("alias is empty".into());
        }

        if let Some(existing) = self.orgs.get(org_id) {
            if normalize_org_name(&existing.canonical_name) != norm_canonical {
                return Err(format!(
                    "canonical_name `{canonical_name}` conflicts with earlier `{}` for org `{org_id}`",
                    existing.canonical_name
                ));
            }
        }

        if let Some(owner) = self.by_alias.get(&norm_alias) {
            if owner != org_id {
                return Err(format!("alias `{alias}` already maps to org `{owner}`"));
            }
            if norm_alias != norm_canonical {
                return Err(format!("duplicate alias `{alias}` for org `{org_id}`"));
            }
            return Ok(()); // canonical name listed explicitly; idempotent
        }

        let org = self
            .orgs
            .entry(org_id.to_string())
            .or_insert_with(|| Organization {
                org_id: org_id.to_string(),
                canonical_name: canonical_name.to_string(),
                aliases: BTreeSet::new(),
            });
        // canonical name is always an alias of its own org
        if !org.aliases.contains(&norm_canonical) {
            org.aliases.insert(norm_canonical.clone());
            self.by_alias.insert(norm_canonical, org_id.to_string());
        }
        if !org.aliases.contains(&norm_alias) {
            org.aliases.insert(norm_alias.clone());
            self.by_alias.insert(norm_alias, org_id.to_string());
        }
        Ok(())
    }
}

fn file_name(path: &Path) -> String {
    path.display().to_string()
}

struct CsvTable {
    file: String,
    columns: Vec<usize>,
    rows: Vec<(u64, csv::StringRecord)>,
    parse_errors: Vec<(u64, String)>,
}

/// Read a CSV file and locate the required columns, collecting rows with
/// their line numbers. Extra columns are ignored.
fn read_csv(path: &Path, required: &[&str]) -> Result<CsvTable> {
    let file = file_name(path);
    let mut reader = csv::ReaderBuilder::new()
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => Error::Io {
                path: path.to_path_buf(),
                source: std::io::Error::other(e.to_string()),
            },
            _ => Error::Schema {
                file: file.clone(),
                message: e.to_string(),
            },
        })?;
    let headers = reader
        .headers()
        .map_err(|e| Error::Schema {
            file: file.clone(),
            message: e.to_string(),
        })?
        .clone();
    let mut columns = Vec::with_capacity(required.len());
    for name in required {
        match headers.iter().position(|h| h == *name) {
            Some(idx) => columns.push(idx),
            None => {
                return Err(Error::MissingColumn {
                    file,
                    column: (*name).to_string(),
                })
            }
        }
    }
    let mut rows = Vec::new();
    let mut parse_errors = Vec::new();
    for record in reader.records() {
        match record {
            Ok(rec) => {
                let line = rec.position().map(|p| p.line()).unwrap_or(0);
                rows.push((line, rec));
            }
            Err(e) => {
                let line = e.position().map(|p| p.line()).unwrap_or(0);
                parse_errors.push((line, e.to_string()));
            }
        }
    }
    Ok(CsvTable {
        file,
        columns,
        rows,
        parse_errors,
    })
}

fn split_ids(cell: &str) -> Vec<String> {
    cell.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

struct RowError {
    column: &'static str,
    message: String,
}

impl RowError {
    fn new(column: &'static str, message: impl Into<String>) -> Self {
        RowError {
            column,
            message: message.into(),
        }
    }
}

fn row_error(file: &str, line: u64, e: RowError) -> Error {
    Error::InvalidRow {
        file: file.to_string(),
        line,
        column: e.column.to_string(),
        message: e.message,
    }
}

/// Load `publications.csv`, keeping records inside `window`.
pub fn load_publications(
    path: &Path,
    window: YearRange,
    skip_invalid: bool,
) -> Result<LoadOutcome<Publication>> {
    const COLUMNS: [&str; 6] = [
        "pub_id",
        "title",
        "abstract",
        "year",
        "author_ids",
        "org_ids",
    ];
    let table = read_csv(path, &COLUMNS)?;
    let mut counts = LoadCounts::default();
    let mut records = Vec::new();
    let mut seen_ids: HashSet<String> = HashSet::new();

    counts.input_rows = table.rows.len() + table.parse_errors.len();
    for (line, message) in &table.parse_errors {
        if !skip_invalid {
            return Err(Error::Schema {
                file: table.file.clone(),
                message: format!("line {line}: {message}"),
            });
        }
        counts.dropped_invalid += 1;
    }

    for (line, rec) in &table.rows {
        let cell = |i: usize| rec.get(table.columns[i]).unwrap_or("").trim();
        let parsed = parse_publication_row(&cell);
        match parsed {
            Err(e) => {
                if !skip_invalid {
                    return Err(row_error(&table.file, *line, e));
                }
                counts.dropped_invalid += 1;
            }
            Ok(publication) => {
                if !window.contains(publication.year) {
                    counts.dropped_out_of_window += 1;
                    continue;
                }
                if !seen_ids.insert(publication.pub_id.clone()) {
                    let e = RowError::new(
                        "pub_id",
                        format!("duplicate pub_id `{}`", publication.pub_id),
                    );
                    if !skip_invalid {
                        return Err(row_error(&table.file, *line, e));
                    }
                    counts.dropped_invalid += 1;
                    continue;
                }
                counts.kept += 1;
                records.push(publication);
            }
        }
    }
    Ok(LoadOutcome { records, counts })
}

fn parse_publication_row<'a>(
    cell: &impl Fn(usize) -> &'a str,
) -> std::result::Result<Publication, RowError> {
    let pub_id = cell(0);
    if pub_id.is_empty() {
        return Err(RowError::new("pub_id", "pub_id is empty"));
    }
    let year: i32 = cell(3)
        .parse()
        .map_err(|_| RowError::new("year", format!("`{}` is not a year", cell(3))))?;
    let author_ids = split_ids(cell(4));
    if author_ids.is_empty() {
        return Err(RowError::new("author_ids", "author_ids must be non-empty"));
    }
    let unique: HashSet<&String> = author_ids.iter().collect();
    if unique.len() != author_ids.len() {
        return Err(RowError::new(
            "author_ids",
            "duplicate researcher id within one record",
        ));
    }
    Ok(Publication {
        pub_id: pub_id.to_string(),
        title: cell(1).to_string(),
        abstract_text: cell(2).to_string(),
        year,
        author_ids,
        org_ids: split_ids(cell(5)).into_iter().collect(),
    })
}

/// Load `projects.csv`. Projects whose grant year falls outside `window` are
/// dropped and counted like out-of-window publications.
pub fn load_projects(
    path: &Path,
    window: YearRange,
    closed_only: bool,
    skip_invalid: bool,
) -> Result<LoadOutcome<FundedProject>> {
    const COLUMNS: [&str; 8] = [
        "project_id",
        "title",
        "summary",
        "pi_ids",
        "pio_id",
        "grant_year",
        "budget",
        "status",
    ];
    let table = read_csv(path, &COLUMNS)?;
    let mut counts = LoadCounts::default();
    let mut records = Vec::new();
    let mut seen_ids: HashSet<String> = HashSet::new();

    counts.input_rows = table.rows.len() + table.parse_errors.len();
    for (line, message) in &table.parse_errors {
        if !skip_invalid {
            return Err(Error::Schema {
                file: table.file.clone(),
                message: format!("line {line}: {message}"),
            });
        }
        counts.dropped_invalid += 1;
    }

    for (line, rec) in &table.rows {
        let cell = |i: usize| rec.get(table.columns[i]).unwrap_or("").trim();
        match parse_project_row(&cell) {
            Err(e) => {
                if !skip_invalid {
                    return Err(row_error(&table.file, *line, e));
                }
                counts.dropped_invalid += 1;
            }
            Ok(project) => {
                if !window.contains(project.grant_year) {
                    counts.dropped_out_of_window += 1;
                    continue;
                }
                if closed_only && project.status != ProjectStatus::Closed {
                    counts.dropped_filtered += 1;
                    continue;
                }
                if !seen_ids.insert(project.project_id.clone()) {
                    let e = RowError::new(
                        "project_id",
                        format!("duplicate project_id `{}`", project.project_id),
                    );
                    if !skip_invalid {
                        return Err(row_error(&table.file, *line, e));
                    }
                    counts.dropped_invalid += 1;
                    continue;
                }
                counts.kept += 1;
                records.push(project);
            }
        }
    }
    Ok(LoadOutcome { records, counts })
}

fn parse_project_row<'a>(
    cell: &impl Fn(usize) -> &'a str,
) -> std::result::Result<FundedProject, RowError> {
    let project_id = cell(0);
    if project_id.is_empty() {
        return Err(RowError::new("project_id", "project_id is empty"));
    }
    let pi_ids = split_ids(cell(3));
    if pi_ids.is_empty() {
        return Err(RowError::new("pi_ids", "pi_ids must be non-empty"));
    }
    let pio_id = cell(4);
    if pio_id.is_empty() {
        return Err(RowError::new("pio_id", "pio_id is empty"));
    }
    let grant_year: i32 = cell(5)
        .parse()
        .map_err(|_| RowError::new("grant_year", format!("`{}` is not a year", cell(5))))?;
    let budget: f64 = cell(6)
        .parse()
        .map_err(|_| RowError::new("budget", format!("`{}` is not a number", cell(6))))?;
    if !budget.is_finite() || budget < 0.0 {
        return Err(RowError::new("budget", "budget must be non-negative"));
    }
    let status = ProjectStatus::parse(cell(7))
        .ok_or_else(|| RowError::new("status", format!("unknown status token `{}`", cell(7))))?;
    Ok(FundedProject {
        project_id: project_id.to_string(),
        title: cell(1).to_string(),
        summary: cell(2).to_string(),
        pi_ids,
        pio_id: pio_id.to_string(),
        grant_year,
        budget,
        status,
    })
}

/// Load `org_aliases.csv` into an alias table.
pub fn load_org_aliases(path: &Path, skip_invalid: bool) -> Result<(AliasTable, LoadCounts)> {
    const COLUMNS: [&str; 3] = ["org_id", "canonical_name", "alias"];
    let table = read_csv(path, &COLUMNS)?;
    let mut counts = LoadCounts::default();
    let mut aliases = AliasTable::empty();

    counts.input_rows = table.rows.len() + table.parse_errors.len();
    for (line, message) in &table.parse_errors {
        if !skip_invalid {
            return Err(Error::Schema {
                file: table.file.clone(),
                message: format!("line {line}: {message}"),
            });
        }
        counts.dropped_invalid += 1;
    }

    for (line, rec) in &table.rows {
        let cell = |i: usize| rec.get(table.columns[i]).unwrap_or("").trim();
        let org_id = cell(0);
        let result = if org_id.is_empty() {
            Err("org_id is empty".to_string())
        } else {
            aliases.add_row(org_id, cell(1), cell(2))
        };
        match result {
            Ok(()) => counts.kept += 1,
            Err(message) => {
                if !skip_invalid {
                    return Err(Error::InvalidRow {
                        file: table.file.clone(),
                        line: *line,
                        column: "alias".to_string(),
                        message,
                    });
                }
                counts.dropped_invalid += 1;
            }
        }
    }
    Ok((aliases, counts))
}

/// How one raw organization name resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrgResolution {
    Resolved(String),
    /// Not in the alias table; the normalized raw name stands in as the key.
    Unresolved(String),
}

impl OrgResolution {
    /// The grouping key either way.
    pub fn key(&self) -> &str {
        match self {
            OrgResolution::Resolved(id) | OrgResolution::Unresolved(id) => id,
        }
    }
}

/// The linked, immutable entity graph. Safe for concurrent reads.
#[derive(Debug, Clone)]
pub struct EntityGraph {
    pub publications: BTreeMap<String, Publication>,
    pub projects: BTreeMap<String, FundedProject>,
    pub researchers: BTreeMap<String, Researcher>,
    pub aliases: AliasTable,
    /// Resolved-or-normalized org key -> publication ids.
    pub org_publications: BTreeMap<String, BTreeSet<String>>,
    /// Project id -> org key of its PI organization.
    pub project_orgs: BTreeMap<String, String>,
    /// Raw normalized org names that had no alias-table entry, with
    /// occurrence counts.
    pub unresolved_org_names: BTreeMap<String, usize>,
    /// PIs referenced by projects that have no publications in the corpus.
    pub pis_without_publications: BTreeSet<String>,
}

impl EntityGraph {
    /// Link publications, projects and the alias table into one graph.
    pub fn link(
        publications: Vec<Publication>,
        projects: Vec<FundedProject>,
        aliases: AliasTable,
    ) -> Self {
        let mut graph = EntityGraph {
            publications: BTreeMap::new(),
            projects: BTreeMap::new(),
            researchers: BTreeMap::new(),
            aliases,
            org_publications: BTreeMap::new(),
            project_orgs: BTreeMap::new(),
            unresolved_org_names: BTreeMap::new(),
            pis_without_publications: BTreeSet::new(),
        };

        for publication in publications {
            for author in &publication.author_ids {
                graph
                    .researchers
                    .entry(author.clone())
                    .or_insert_with(|| Researcher {
                        researcher_id: author.clone(),
                        display_name: author.clone(),
                        pub_ids: BTreeSet::new(),
                    })
                    .pub_ids
                    .insert(publication.pub_id.clone());
            }
            for raw in &publication.org_ids {
                let resolution = graph.resolve_org(raw);
                if let OrgResolution::Unresolved(key) = &resolution {
                    *graph.unresolved_org_names.entry(key.clone()).or_insert(0) += 1;
                }
                graph
                    .org_publications
                    .entry(resolution.key().to_string())
                    .or_default()
                    .insert(publication.pub_id.clone());
            }
            graph
                .publications
                .insert(publication.pub_id.clone(), publication);
        }

        for project in projects {
            for pi in &project.pi_ids {
                if !graph.researchers.contains_key(pi) {
                    graph.researchers.insert(
                        pi.clone(),
                        Researcher {
                            researcher_id: pi.clone(),
                            display_name: pi.clone(),
                            pub_ids: BTreeSet::new(),
                        },
                    );
                    graph.pis_without_publications.insert(pi.clone());
                }
            }
            let resolution = graph.resolve_org(&project.pio_id);
            if let OrgResolution::Unresolved(key) = &resolution {
                *graph.unresolved_org_names.entry(key.clone()).or_insert(0) += 1;
            }
            graph
                .project_orgs
                .insert(project.project_id.clone(), resolution.key().to_string());
            graph.projects.insert(project.project_id.clone(), project);
        }

        graph
    }

    /// Resolve a raw organization name via the alias table, falling back to
    /// the normalized name itself as an unresolved key.
    pub fn resolve_org(&self, raw: &str) -> OrgResolution {
        match self.aliases.resolve(raw) {
            Some(id) => OrgResolution::Resolved(id.to_string()),
            None => OrgResolution::Unresolved(normalize_org_name(raw)),
        }
    }

    /// A researcher's publications sorted by year then publication id.
    pub fn researcher_publications(&self, researcher_id: &str) -> Vec<&Publication> {
        let mut pubs: Vec<&Publication> = match self.researchers.get(researcher_id) {
            Some(researcher) => researcher
                .pub_ids
                .iter()
                .filter_map(|id| self.publications.get(id))
                .collect(),
            None => Vec::new(),
        };
        pubs.sort_by(|a, b| (a.year, &a.pub_id).cmp(&(b.year, &b.pub_id)));
        pubs
    }

    /// Publications linked to an org key, sorted by year then id.
    pub fn org_publications_sorted(&self, org_key: &str) -> Vec<&Publication> {
        let mut pubs: Vec<&Publication> = match self.org_publications.get(org_key) {
            Some(ids) => ids
                .iter()
                .filter_map(|id| self.publications.get(id))
                .collect(),
            None => Vec::new(),
        };
        pubs.sort_by(|a, b| (a.year, &a.pub_id).cmp(&(b.year, &b.pub_id)));
        pubs
    }

    /// All PIs of loaded projects, in id order.
    pub fn funded_researcher_ids(&self) -> BTreeSet<String> {
        self.projects
            .values()
            .flat_map(|p| p.pi_ids.iter().cloned())
            .collect()
    }

    /// Projects grouped by PI-organization key, in key order.
    pub fn projects_by_org(&self) -> BTreeMap<String, Vec<&FundedProject>> {
        let mut by_org: BTreeMap<String, Vec<&FundedProject>> = BTreeMap::new();
        for project in self.projects.values() {
            let key = self
                .project_orgs
                .get(&project.project_id)
                .expect("every project has an org key")
                .clone();
            by_org.entry(key).or_default().push(project);
        }
        by_org
    }

    /// Projects of one researcher, in project-id order.
    pub fn projects_of_researcher(&self, researcher_id: &str) -> Vec<&FundedProject> {
        self.projects
            .values()
            .filter(|p| p.pi_ids.iter().any(|pi| pi == researcher_id))
            .collect()
    }
}

/// Serialize publications back to the CSV schema (set-valued fields in
/// normalized order).
pub fn write_publications(path: &Path, publications: &[Publication]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| Error::Schema {
        file: file_name(path),
        message: e.to_string(),
    })?;
    let io_err = |e: csv::Error| Error::Schema {
        file: file_name(path),
        message: e.to_string(),
    };
    writer
        .write_record([
            "pub_id",
            "title",
            "abstract",
            "year",
            "author_ids",
            "org_ids",
        ])
        .map_err(io_err)?;
    for p in publications {
        let orgs: Vec<&str> = p.org_ids.iter().map(String::as_str).collect();
        writer
            .write_record([
                p.pub_id.as_str(),
                p.title.as_str(),
                p.abstract_text.as_str(),
                &p.year.to_string(),
                &p.author_ids.join(";"),
                &orgs.join(";"),
            ])
            .map_err(io_err)?;
    }
    writer.flush().map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    Ok(())
}

/// Serialize projects back to the CSV schema.
pub fn write_projects(path: &Path, projects: &[FundedProject]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| Error::Schema {
        file: file_name(path),
        message: e.to_string(),
    })?;
    let io_err = |e: csv::Error| Error::Schema {
        file: file_name(path),
        message: e.to_string(),
    };
    writer
        .write_record([
            "project_id",
            "title",
            "summary",
            "pi_ids",
            "pio_id",
            "grant_year",
            "budget",
            "status",
        ])
        .map_err(io_err)?;
    for p in projects {
        writer
            .write_record([
                p.project_id.as_str(),
                p.title.as_str(),
                p.summary.as_str(),
                &p.pi_ids.join(";"),
                p.pio_id.as_str(),
                &p.grant_year.to_string(),
                &p.budget.to_string(),
                p.status.as_str(),
            ])
            .map_err(io_err)?;
    }
    writer.flush().map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    Ok(())
}
