//! Python bindings: text pipeline, vector-space primitives and the three
//! pipeline commands (validate / impact / suggest).

use std::collections::BTreeMap;
use std::path::PathBuf;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use grantimpact::run::{self, RunConfig};
use grantimpact::textpipe::{self, PipelineConfig, TokenStream};
use grantimpact::{vsm, YearRange};

fn to_py_err(e: grantimpact::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn pipeline(stopwords: Option<PathBuf>) -> PyResult<PipelineConfig> {
    match stopwords {
        Some(path) => PipelineConfig::with_stopword_file(&path).map_err(to_py_err),
        None => Ok(PipelineConfig::default()),
    }
}

/// Split text into lowercase alphanumeric tokens.
#[pyfunction]
fn tokenize(text: &str) -> Vec<String> {
    PipelineConfig::default().tokenize(text)
}

/// Full pipeline: tokenize, case-fold, remove stop-words, stem.
#[pyfunction]
#[pyo3(signature = (text, stopwords=None))]
fn preprocess(text: &str, stopwords: Option<PathBuf>) -> PyResult<Vec<String>> {
    Ok(pipeline(stopwords)?.preprocess(text).into_tokens())
}

/// Porter stem of one lowercase word.
#[pyfunction]
fn porter_stem(word: &str) -> String {
    textpipe::porter::stem(word)
}

/// TF-IDF weight `tf * ln(n_docs / df)`.
#[pyfunction]
fn tfidf_weight(tf: u32, df: u32, n_docs: usize) -> PyResult<f64> {
    vsm::tfidf_weight(tf, df, n_docs).map_err(to_py_err)
}

/// Cosine similarity of two document vectors, in [0, 1].
#[pyfunction]
fn cosine(a: &DocumentVector, b: &DocumentVector) -> f64 {
    vsm::cosine(&a.inner, &b.inner)
}

/// `(start, end)` year bounds of one period.
type Period = (i32, i32);

/// Split a corpus window at a grant year: returns
/// `((before_start, before_end) | None, (after_start, after_end))`.
#[pyfunction]
fn split_periods(
    grant_year: i32,
    window_start: i32,
    window_end: i32,
) -> PyResult<(Option<Period>, Period)> {
    let window = YearRange::new(window_start, window_end).map_err(to_py_err)?;
    let split = grantimpact::metrics::split_periods(grant_year, window).map_err(to_py_err)?;
    Ok((
        split.before.map(|r| (r.start, r.end)),
        (split.after.start, split.after.end),
    ))
}

/// Document-frequency statistics over a token-list corpus.
#[pyclass(frozen)]
struct CorpusIndex {
    inner: vsm::CorpusIndex,
}

#[pymethods]
impl CorpusIndex {
    #[new]
    fn new(docs: Vec<Vec<String>>) -> PyResult<Self> {
        let streams: Vec<TokenStream> = docs.into_iter().map(TokenStream::from_tokens).collect();
        Ok(CorpusIndex {
            inner: vsm::CorpusIndex::build(&streams).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn n_docs(&self) -> usize {
        self.inner.n_docs()
    }

    #[getter]
    fn vocab_size(&self) -> usize {
        self.inner.vocab_size()
    }

    fn doc_frequency(&self, term: &str) -> Option<u32> {
        self.inner.doc_frequency(term)
    }

    fn vectorize(&self, tokens: Vec<String>) -> DocumentVector {
        DocumentVector {
            inner: self.inner.vectorize(&TokenStream::from_tokens(tokens)),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "CorpusIndex(n_docs={}, vocab_size={})",
            self.inner.n_docs(),
            self.inner.vocab_size()
        )
    }
}

/// Sparse term-weight vector.
#[pyclass(frozen)]
struct DocumentVector {
    inner: vsm::DocumentVector,
}

#[pymethods]
impl DocumentVector {
    #[new]
    fn new(weights: BTreeMap<String, f64>) -> Self {
        DocumentVector {
            inner: vsm::DocumentVector::from_weights(weights),
        }
    }

    #[getter]
    fn norm(&self) -> f64 {
        self.inner.norm()
    }

    fn weights(&self) -> BTreeMap<String, f64> {
        self.inner.weights().clone()
    }

    fn cosine(&self, other: &DocumentVector) -> f64 {
        vsm::cosine(&self.inner, &other.inner)
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __repr__(&self) -> String {
        format!(
            "DocumentVector(terms={}, norm={:.6})",
            self.inner.weights().len(),
            self.inner.norm()
        )
    }
}

#[allow(clippy::too_many_arguments)]
fn build_config(
    pubs: PathBuf,
    projects: PathBuf,
    orgs: PathBuf,
    window_start: i32,
    window_end: i32,
    out_dir: PathBuf,
    format: &str,
    stopwords: Option<PathBuf>,
    top_k: usize,
    skip_invalid: bool,
    exclude: Vec<String>,
) -> PyResult<RunConfig> {
    let window = YearRange::new(window_start, window_end).map_err(to_py_err)?;
    let mut config = RunConfig::new(pubs, projects, orgs, window, out_dir);
    config.format = format.parse().map_err(to_py_err)?;
    config.stopwords = stopwords;
    config.top_k = top_k;
    config.skip_invalid = skip_invalid;
    config.exclude_researchers = exclude;
    Ok(config)
}

/// Validate the three input files; returns per-file kept/dropped counts and
/// the number of distinct unresolved organization names.
#[pyfunction]
#[pyo3(signature = (pubs, projects, orgs, window_start, window_end, skip_invalid=false))]
fn validate<'py>(
    py: Python<'py>,
    pubs: PathBuf,
    projects: PathBuf,
    orgs: PathBuf,
    window_start: i32,
    window_end: i32,
    skip_invalid: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let config = build_config(
        pubs,
        projects,
        orgs,
        window_start,
        window_end,
        PathBuf::from("."),
        "csv",
        None,
        10,
        skip_invalid,
        Vec::new(),
    )?;
    let summary = run::validate(&config).map_err(to_py_err)?;
    let dict = PyDict::new(py);
    for (name, counts) in [
        ("publications", &summary.publications),
        ("projects", &summary.projects),
        ("org_aliases", &summary.org_aliases),
    ] {
        let entry = PyDict::new(py);
        entry.set_item("kept", counts.kept)?;
        entry.set_item("dropped", counts.dropped())?;
        entry.set_item("input_rows", counts.input_rows)?;
        dict.set_item(name, entry)?;
    }
    dict.set_item("unresolved_orgs", summary.unresolved_orgs)?;
    Ok(dict)
}

/// Run the impact pipeline and write reports; returns researcher rows, org
/// rows and the written file paths.
#[pyfunction]
#[pyo3(signature = (pubs, projects, orgs, window_start, window_end, out_dir, format="csv", stopwords=None, skip_invalid=false))]
#[allow(clippy::too_many_arguments)]
fn impact<'py>(
    py: Python<'py>,
    pubs: PathBuf,
    projects: PathBuf,
    orgs: PathBuf,
    window_start: i32,
    window_end: i32,
    out_dir: PathBuf,
    format: &str,
    stopwords: Option<PathBuf>,
    skip_invalid: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let config = build_config(
        pubs,
        projects,
        orgs,
        window_start,
        window_end,
        out_dir,
        format,
        stopwords,
        10,
        skip_invalid,
        Vec::new(),
    )?;
    let output = run::impact(&config).map_err(to_py_err)?;

    let researcher_rows = PyList::empty(py);
    for row in &output.researcher_rows {
        let entry = PyDict::new(py);
        entry.set_item("researcher_id", &row.researcher_id)?;
        entry.set_item("project_id", &row.project_id)?;
        entry.set_item("productivity_delta", row.productivity_delta)?;
        entry.set_item("coauth_delta", row.coauth_delta)?;
        entry.set_item("focus_self_delta", row.focus_self_delta)?;
        entry.set_item("focus_theme_delta", row.focus_theme_delta)?;
        let flags: Vec<&str> = row.flags.iter().map(|f| f.as_str()).collect();
        entry.set_item("flags", flags)?;
        researcher_rows.append(entry)?;
    }

    let org_rows = PyList::empty(py);
    for row in &output.org_rows {
        let entry = PyDict::new(py);
        entry.set_item("org_id", &row.org_id)?;
        entry.set_item("project_count", row.project_count)?;
        entry.set_item("total_funds", row.total_funds)?;
        entry.set_item("productivity_delta", row.productivity_delta)?;
        entry.set_item("pubs_per_million", row.pubs_per_million)?;
        org_rows.append(entry)?;
    }

    let files: Vec<String> = output
        .files
        .iter()
        .map(|p| p.display().to_string())
        .collect();

    let dict = PyDict::new(py);
    dict.set_item("researcher_impact", researcher_rows)?;
    dict.set_item("org_impact", org_rows)?;
    dict.set_item("files", files)?;
    Ok(dict)
}

/// Rank researchers against a project summary and write the suggestions
/// report; returns the ranked list.
#[pyfunction]
#[pyo3(signature = (pubs, projects, orgs, window_start, window_end, out_dir, project_id, top_k=10, format="csv", stopwords=None, skip_invalid=false, exclude=None))]
#[allow(clippy::too_many_arguments)]
fn suggest<'py>(
    py: Python<'py>,
    pubs: PathBuf,
    projects: PathBuf,
    orgs: PathBuf,
    window_start: i32,
    window_end: i32,
    out_dir: PathBuf,
    project_id: &str,
    top_k: usize,
    format: &str,
    stopwords: Option<PathBuf>,
    skip_invalid: bool,
    exclude: Option<Vec<String>>,
) -> PyResult<Bound<'py, PyList>> {
    let config = build_config(
        pubs,
        projects,
        orgs,
        window_start,
        window_end,
        out_dir,
        format,
        stopwords,
        top_k,
        skip_invalid,
        exclude.unwrap_or_default(),
    )?;
    let output = run::suggest(&config, project_id).map_err(to_py_err)?;
    let list = PyList::empty(py);
    for s in &output.suggestions {
        let entry = PyDict::new(py);
        entry.set_item("rank", s.rank)?;
        entry.set_item("researcher_id", &s.researcher_id)?;
        entry.set_item("avg_similarity", s.avg_similarity)?;
        entry.set_item("pub_count", s.pub_count)?;
        list.append(entry)?;
    }
    Ok(list)
}

#[pymodule]
fn grantimpact_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<CorpusIndex>()?;
    m.add_class::<DocumentVector>()?;
    m.add_function(wrap_pyfunction!(tokenize, m)?)?;
    m.add_function(wrap_pyfunction!(preprocess, m)?)?;
    m.add_function(wrap_pyfunction!(porter_stem, m)?)?;
    m.add_function(wrap_pyfunction!(tfidf_weight, m)?)?;
    m.add_function(wrap_pyfunction!(cosine, m)?)?;
    m.add_function(wrap_pyfunction!(split_periods, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(impact, m)?)?;
    m.add_function(wrap_pyfunction!(suggest, m)?)?;
    Ok(())
}
