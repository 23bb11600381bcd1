//! Acceptance suite. One test per criterion; each prints a PASS line after
//! its assertions hold.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{
    dense_cosine, oracle_coauth, oracle_focus_self, oracle_focus_theme, oracle_productivity,
    oracle_suggest, DenseCorpus, OraclePub,
};
use grantimpact::ingest::{self, Publication, YearRange};
use grantimpact::metrics::{
    coauth_delta, focus_self_delta, focus_theme_delta, productivity_delta, MetricFlag, PanelPub,
    PeriodSplit,
};
use grantimpact::run::{self, OutputFormat, RunConfig};
use grantimpact::suggest::suggest_candidates;
use grantimpact::textpipe::{PipelineConfig, TokenStream};
use grantimpact::vsm::{cosine, CorpusIndex, DocumentVector};

const TOL: f64 = 1e-9;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL
}

fn stream(tokens: &[String]) -> TokenStream {
    TokenStream::from_tokens(tokens.to_vec())
}

// ---------------------------------------------------------------------------
// 1. Sparse TF-IDF + cosine vs dense brute force on randomized corpora
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_vsm_oracle_suite() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5ca1e);

    for trial in 0..50 {
        let n_docs = rng.random_range(1..=10);
        let vocab_size = rng.random_range(1..=50usize);
        let docs: Vec<(String, Vec<String>)> = (0..n_docs)
            .map(|d| {
                let len = rng.random_range(0..=30);
                let tokens = (0..len)
                    .map(|_| format!("t{}", rng.random_range(0..vocab_size)))
                    .collect();
                (format!("d{d}"), tokens)
            })
            .collect();

        let streams: Vec<TokenStream> = docs.iter().map(|(_, t)| stream(t)).collect();
        let index = CorpusIndex::build(&streams).unwrap();
        let vectors: Vec<DocumentVector> = streams.iter().map(|s| index.vectorize(s)).collect();

        let oracle = DenseCorpus::build(&docs);

        // per-term weights agree (missing sparse entries are zeros)
        for (d, vector) in vectors.iter().enumerate() {
            for (t, term) in oracle.vocab.iter().enumerate() {
                let sparse = vector.weights().get(term).copied().unwrap_or(0.0);
                let dense = oracle.weights[d][t];
                assert!(
                    close(sparse, dense),
                    "trial {trial} doc {d} term {term}: sparse {sparse} vs dense {dense}"
                );
            }
        }

        // all pairwise cosines agree
        for i in 0..n_docs {
            for j in 0..n_docs {
                let sparse = cosine(&vectors[i], &vectors[j]);
                let dense = dense_cosine(&oracle.weights[i], &oracle.weights[j]);
                assert!(
                    close(sparse, dense),
                    "trial {trial} pair ({i},{j}): sparse {sparse} vs dense {dense}"
                );
            }
        }
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "oracle suite took {elapsed:?}");
    println!("ACCEPTANCE 1 (vsm oracle suite, 50 corpora, {elapsed:?}): PASS");
}

// ---------------------------------------------------------------------------
// 2. Cosine property suite on 1,000 random sparse vector pairs
// ---------------------------------------------------------------------------

#[test]
fn criterion_2_cosine_property_suite() {
    let mut rng = StdRng::seed_from_u64(0xc05);
    let mut violations = 0usize;

    let random_vector = |rng: &mut StdRng| {
        let terms = rng.random_range(0..12usize);
        let weights: BTreeMap<String, f64> = (0..terms)
            .map(|_| {
                (
                    format!("w{}", rng.random_range(0..20)),
                    rng.random_range(0.001..10.0),
                )
            })
            .collect();
        DocumentVector::from_weights(weights)
    };

    for _ in 0..1000 {
        let a = random_vector(&mut rng);
        let b = random_vector(&mut rng);
        let ab = cosine(&a, &b);

        if !(0.0..=1.0).contains(&ab) {
            violations += 1;
        }
        if ab != cosine(&b, &a) {
            violations += 1;
        }
        if !a.is_zero() && !close(cosine(&a, &a), 1.0) {
            violations += 1;
        }

        // scale invariance, including the log-base change (a uniform scale
        // of every weight by 1/ln 2)
        for factor in [rng.random_range(0.01..100.0), 1.0 / 2f64.ln()] {
            let scaled = DocumentVector::from_weights(
                a.weights()
                    .iter()
                    .map(|(t, w)| (t.clone(), w * factor))
                    .collect(),
            );
            if !close(cosine(&scaled, &b), ab) {
                violations += 1;
            }
        }

        // base-2 weights computed independently must give the same cosine
        let rebase = |v: &DocumentVector| {
            DocumentVector::from_weights(
                v.weights()
                    .iter()
                    .map(|(t, w)| (t.clone(), w / std::f64::consts::LN_2))
                    .collect(),
            )
        };
        if !close(cosine(&rebase(&a), &rebase(&b)), ab) {
            violations += 1;
        }
    }

    assert_eq!(violations, 0, "{violations} cosine property violations");
    println!("ACCEPTANCE 2 (cosine property suite, 1000 pairs, 0 violations): PASS");
}

// ---------------------------------------------------------------------------
// 3. Hand-constructed metrics fixture vs hand values and brute force
// ---------------------------------------------------------------------------

/// One fixture publication: id, year, authors, organization name, abstract.
type FixPub = (
    &'static str,
    i32,
    &'static [&'static str],
    &'static str,
    &'static str,
);

const G1_SUMMARY: &str = "machine learning for medical image segmentation and diagnosis";
const G2_SUMMARY: &str = "renewable solar energy grid integration and storage systems";

const FIXTURE_PUBS: &[FixPub] = &[
    (
        "a1",
        2005,
        &["ra"],
        "Alpha University",
        "neural network classifiers for tumor detection in radiology scans",
    ),
    (
        "a2",
        2006,
        &["ra", "rd"],
        "Alpha Univ",
        "support vector machines for lesion segmentation in ct images",
    ),
    (
        "a3",
        2007,
        &["ra"],
        "Alpha University",
        "statistical shape models of anatomical structures",
    ),
    (
        "a4",
        2008,
        &["ra", "rd"],
        "Alpha Univ",
        "deep learning segmentation of medical images for diagnosis",
    ),
    (
        "a5",
        2010,
        &["ra", "rd"],
        "Alpha University",
        "convolutional networks for medical image diagnosis",
    ),
    (
        "a6",
        2012,
        &["ra"],
        "Alpha University",
        "machine learning for clinical decision support and diagnosis",
    ),
    (
        "b1",
        2005,
        &["rb"],
        "Alpha Univ",
        "solar energy harvesting circuits",
    ),
    (
        "b2",
        2006,
        &["rb"],
        "Alpha University",
        "solar energy harvesting circuits",
    ),
    ("b3", 2009, &["rb", "rd"], "Alpha Univ", G1_SUMMARY),
    ("b4", 2011, &["rb", "rd"], "Alpha University", G1_SUMMARY),
    (
        "c1",
        2006,
        &["rc"],
        "Beta Institute",
        "wind turbine blade aerodynamics",
    ),
    (
        "c2",
        2008,
        &["rc"],
        "Beta Inst",
        "wind turbine power output forecasting",
    ),
    ("c3", 2010, &["rc"], "Beta Institute", G2_SUMMARY),
    (
        "c4",
        2012,
        &["rc", "rd"],
        "Beta Inst",
        "battery storage systems for solar grid integration",
    ),
    (
        "e1",
        2011,
        &["re", "rd"],
        "Beta Institute",
        "solar photovoltaic panel efficiency measurements",
    ),
    (
        "f1",
        2008,
        &["rf"],
        "Alpha Univ",
        "genomic sequence alignment algorithms",
    ),
    (
        "f2",
        2009,
        &["rf", "rd"],
        "Alpha University",
        "protein structure prediction with hidden markov models",
    ),
];

/// (project_id, title, summary, pi_ids, pio, grant_year, budget)
const FIXTURE_PROJECTS: &[(&str, &str, &str, &str, &str, i32, f64)] = &[
    (
        "g1",
        "Machine learning for medical imaging",
        G1_SUMMARY,
        "ra;rb;rf",
        "Alpha Univ",
        2008,
        5_000_000.0,
    ),
    (
        "g2",
        "Renewable grid integration",
        G2_SUMMARY,
        "rc;re",
        "Beta Institute",
        2010,
        2_500_000.0,
    ),
];

const FIXTURE_ALIASES: &str = "org_id,canonical_name,alias\n\
    alpha,Alpha University,Alpha University\n\
    alpha,Alpha University,Alpha Univ\n\
    beta,Beta Institute,Beta Institute\n\
    beta,Beta Institute,Beta Inst\n";

fn write_fixture(dir: &Path) -> (PathBuf, PathBuf, PathBuf) {
    let pubs: Vec<Publication> = FIXTURE_PUBS
        .iter()
        .map(|(id, year, authors, org, text)| Publication {
            pub_id: id.to_string(),
            title: format!("title {id}"),
            abstract_text: text.to_string(),
            year: *year,
            author_ids: authors.iter().map(|a| a.to_string()).collect(),
            org_ids: [org.to_string()].into_iter().collect(),
        })
        .collect();
    let pubs_path = dir.join("publications.csv");
    ingest::write_publications(&pubs_path, &pubs).unwrap();

    let mut projects_csv =
        String::from("project_id,title,summary,pi_ids,pio_id,grant_year,budget,status\n");
    for (id, title, summary, pis, pio, year, budget) in FIXTURE_PROJECTS {
        projects_csv.push_str(&format!(
            "{id},{title},{summary},{pis},{pio},{year},{budget},closed\n"
        ));
    }
    let projects_path = dir.join("projects.csv");
    std::fs::write(&projects_path, projects_csv).unwrap();

    let aliases_path = dir.join("org_aliases.csv");
    std::fs::write(&aliases_path, FIXTURE_ALIASES).unwrap();
    (pubs_path, projects_path, aliases_path)
}

fn fixture_config(dir: &Path, out: &Path) -> RunConfig {
    let (pubs, projects, aliases) = write_fixture(dir);
    RunConfig::new(
        pubs,
        projects,
        aliases,
        YearRange::new(2005, 2013).unwrap(),
        out,
    )
}

/// Dense corpus over every fixture abstract and both summaries, tokenized by
/// the same pipeline the implementation uses.
fn fixture_oracle_corpus() -> DenseCorpus {
    let pipeline = PipelineConfig::default();
    let mut docs: Vec<(String, Vec<String>)> = FIXTURE_PUBS
        .iter()
        .map(|(id, _, _, _, text)| (id.to_string(), pipeline.preprocess(text).into_tokens()))
        .collect();
    docs.push((
        "g1".to_string(),
        pipeline.preprocess(G1_SUMMARY).into_tokens(),
    ));
    docs.push((
        "g2".to_string(),
        pipeline.preprocess(G2_SUMMARY).into_tokens(),
    ));
    DenseCorpus::build(&docs)
}

fn fixture_researcher_pubs(researcher: &str) -> Vec<OraclePub> {
    let mut pubs: Vec<OraclePub> = FIXTURE_PUBS
        .iter()
        .filter(|(_, _, authors, _, _)| authors.contains(&researcher))
        .map(|(id, year, authors, _, _)| OraclePub {
            id: id.to_string(),
            year: *year,
            author_count: authors.len(),
        })
        .collect();
    pubs.sort_by(|a, b| (a.year, &a.id).cmp(&(b.year, &b.id)));
    pubs
}

#[test]
fn criterion_3_metrics_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    let config = fixture_config(dir.path(), out.path());
    let output = run::impact(&config).unwrap();

    let keys: Vec<(String, String)> = output
        .researcher_rows
        .iter()
        .map(|r| (r.researcher_id.clone(), r.project_id.clone()))
        .collect();
    let expected_keys: Vec<(String, String)> = [
        ("ra", "g1"),
        ("rb", "g1"),
        ("rc", "g2"),
        ("re", "g2"),
        ("rf", "g1"),
    ]
    .iter()
    .map(|(r, p)| (r.to_string(), p.to_string()))
    .collect();
    assert_eq!(keys, expected_keys, "funded pairs, each exactly once");

    let rows: HashMap<(String, String), &grantimpact::ResearcherImpact> = output
        .researcher_rows
        .iter()
        .map(|r| ((r.researcher_id.clone(), r.project_id.clone()), r))
        .collect();
    let row = |r: &str, p: &str| rows[&(r.to_string(), p.to_string())];

    // hand-worked values
    // ra: before 3 pubs / 3 years, after 3 / 6; co-authors (0,1,0) -> (1,1,0)
    let ra = row("ra", "g1");
    assert!(close(ra.productivity_delta.unwrap(), -0.5));
    assert!(close(ra.coauth_delta.unwrap(), 1.0 / 3.0));
    assert!(ra.flags.is_empty());

    let rb = row("rb", "g1");
    assert!(close(rb.productivity_delta.unwrap(), -1.0 / 3.0));
    assert!(close(rb.coauth_delta.unwrap(), 1.0));
    assert!(close(rb.focus_self_delta.unwrap(), 0.0));
    assert!(close(rb.focus_theme_delta.unwrap(), 1.0));
    assert!(rb.flags.is_empty());

    let rc = row("rc", "g2");
    assert!(close(rc.productivity_delta.unwrap(), 0.1));
    assert!(close(rc.coauth_delta.unwrap(), 0.5));
    assert!(rc.flags.is_empty());

    let re = row("re", "g2");
    assert!(close(re.productivity_delta.unwrap(), 0.25));
    assert_eq!(re.coauth_delta, None);
    assert_eq!(re.focus_self_delta, None);
    assert_eq!(re.focus_theme_delta, None);
    let expected_flags: BTreeSet<MetricFlag> = [
        MetricFlag::NoPublicationsBefore,
        MetricFlag::TooFewPublicationsBefore,
    ]
    .into_iter()
    .collect();
    assert_eq!(re.flags, expected_flags, "flags fire exactly for re");

    let rf = row("rf", "g1");
    assert!(close(rf.productivity_delta.unwrap(), 1.0 / 3.0));
    assert_eq!(rf.flags, expected_flags, "flags fire exactly for rf");

    // brute-force oracle over every computable metric
    let corpus = fixture_oracle_corpus();
    type Period = (i32, i32);
    let splits: HashMap<&str, (Period, Period)> = [
        ("g1", ((2005, 2007), (2008, 2013))),
        ("g2", ((2005, 2009), (2010, 2013))),
    ]
    .into_iter()
    .collect();
    for impact in &output.researcher_rows {
        let (before, after) = splits[impact.project_id.as_str()];
        let pubs = fixture_researcher_pubs(&impact.researcher_id);

        let oracle_prod = oracle_productivity(&pubs, before, after);
        assert!(
            close(impact.productivity_delta.unwrap(), oracle_prod),
            "{}: productivity vs oracle",
            impact.researcher_id
        );
        match (impact.coauth_delta, oracle_coauth(&pubs, before, after)) {
            (Some(got), Some(want)) => assert!(close(got, want), "coauth vs oracle"),
            (None, None) => {}
            other => panic!("coauth mismatch for {}: {other:?}", impact.researcher_id),
        }
        match (
            impact.focus_self_delta,
            oracle_focus_self(&corpus, &pubs, before, after),
        ) {
            (Some(got), Some(want)) => assert!(
                close(got, want),
                "{}: focus_self {got} vs oracle {want}",
                impact.researcher_id
            ),
            (None, None) => {}
            other => panic!(
                "focus_self mismatch for {}: {other:?}",
                impact.researcher_id
            ),
        }
        match (
            impact.focus_theme_delta,
            oracle_focus_theme(&corpus, &impact.project_id, &pubs, before, after),
        ) {
            (Some(got), Some(want)) => assert!(
                close(got, want),
                "{}: focus_theme {got} vs oracle {want}",
                impact.researcher_id
            ),
            (None, None) => {}
            other => panic!(
                "focus_theme mismatch for {}: {other:?}",
                impact.researcher_id
            ),
        }
    }

    // organization rows: hand values for both orgs
    assert_eq!(output.org_rows.len(), 2);
    let alpha = &output.org_rows[0];
    assert_eq!(alpha.org_id, "alpha");
    assert_eq!(alpha.project_count, 1);
    assert!(close(alpha.total_funds, 5e6));
    assert!(close(alpha.productivity_delta.unwrap(), -0.5));
    assert!(close(alpha.pubs_per_million.unwrap(), -0.6));

    let beta = &output.org_rows[1];
    assert_eq!(beta.org_id, "beta");
    assert!(close(beta.productivity_delta.unwrap(), 0.35));
    assert!(close(beta.pubs_per_million.unwrap(), 0.56));

    println!("ACCEPTANCE 3 (metrics fixture, hand + brute force, 1e-9): PASS");
}

// ---------------------------------------------------------------------------
// 4. Antisymmetry under period swap and null effect on a symmetric panel
// ---------------------------------------------------------------------------

fn fixture_panels() -> (
    BTreeMap<String, Vec<PanelPub>>,
    DocumentVector,
    DocumentVector,
) {
    let pipeline = PipelineConfig::default();
    let streams: Vec<TokenStream> = FIXTURE_PUBS
        .iter()
        .map(|(_, _, _, _, text)| pipeline.preprocess(text))
        .chain([
            pipeline.preprocess(G1_SUMMARY),
            pipeline.preprocess(G2_SUMMARY),
        ])
        .collect();
    let index = CorpusIndex::build(&streams).unwrap();

    let mut panels: BTreeMap<String, Vec<PanelPub>> = BTreeMap::new();
    for (id, year, authors, _, text) in FIXTURE_PUBS {
        let vector = index.vectorize(&pipeline.preprocess(text));
        for author in *authors {
            panels
                .entry(author.to_string())
                .or_default()
                .push(PanelPub {
                    pub_id: id.to_string(),
                    year: *year,
                    coauthors: authors.len() - 1,
                    vector: vector.clone(),
                });
        }
    }
    for panel in panels.values_mut() {
        panel.sort_by_key(|p| (p.year, p.pub_id.clone()));
    }
    let theme1 = index.vectorize(&pipeline.preprocess(G1_SUMMARY));
    let theme2 = index.vectorize(&pipeline.preprocess(G2_SUMMARY));
    (panels, theme1, theme2)
}

#[test]
fn criterion_4_antisymmetry_and_null_effect() {
    let (panels, theme1, _) = fixture_panels();
    let window = YearRange::new(2005, 2013).unwrap();

    for grant in [2008, 2010] {
        let split = grantimpact::metrics::split_periods(grant, window).unwrap();
        let swapped = PeriodSplit {
            before: Some(split.after),
            after: split.before.unwrap(),
        };
        for (researcher, panel) in &panels {
            if let (Ok(d), Ok(r)) = (
                productivity_delta(panel, &split),
                productivity_delta(panel, &swapped),
            ) {
                assert_eq!(d, -r, "{researcher}: productivity antisymmetry");
            }
            if let (Ok(d), Ok(r)) = (coauth_delta(panel, &split), coauth_delta(panel, &swapped)) {
                assert_eq!(d, -r, "{researcher}: coauth antisymmetry");
            }
            if let (Ok(d), Ok(r)) = (
                focus_self_delta(panel, &split),
                focus_self_delta(panel, &swapped),
            ) {
                assert_eq!(d, -r, "{researcher}: focus_self antisymmetry");
            }
            if let (Ok(d), Ok(r)) = (
                focus_theme_delta(panel, &split, &theme1),
                focus_theme_delta(panel, &swapped, &theme1),
            ) {
                assert_eq!(d, -r, "{researcher}: focus_theme antisymmetry");
            }
        }
    }

    // a researcher whose yearly counts, author counts and abstracts repeat
    // across periods has all-zero deltas
    let (panels, theme1, _) = fixture_panels();
    let ra = &panels["ra"];
    let mirrored: Vec<PanelPub> = (0..4)
        .map(|i| {
            let source = &ra[i % 2];
            PanelPub {
                pub_id: format!("m{i}"),
                year: 2005 + (i as i32 / 2) * 4 + (i as i32 % 2),
                coauthors: source.coauthors,
                vector: source.vector.clone(),
            }
        })
        .collect();
    let window8 = YearRange::new(2005, 2012).unwrap();
    let split = grantimpact::metrics::split_periods(2009, window8).unwrap();
    assert!(productivity_delta(&mirrored, &split).unwrap().abs() <= TOL);
    assert!(coauth_delta(&mirrored, &split).unwrap().abs() <= TOL);
    assert!(focus_self_delta(&mirrored, &split).unwrap().abs() <= TOL);
    assert!(focus_theme_delta(&mirrored, &split, &theme1).unwrap().abs() <= TOL);

    println!("ACCEPTANCE 4 (antisymmetry and null effect): PASS");
}

// ---------------------------------------------------------------------------
// 5. Suggestion ranking vs exhaustive enumeration; self-retrieval
// ---------------------------------------------------------------------------

#[test]
fn criterion_5_suggestion_oracle() {
    let mut rng = StdRng::seed_from_u64(0x5e1f);

    for trial in 0..20 {
        let n_researchers = rng.random_range(2..=10usize);
        let mut doc_tokens: HashMap<String, Vec<String>> = HashMap::new();
        let mut researchers: Vec<(String, Vec<String>)> = Vec::new();
        let mut docs: Vec<(String, Vec<String>)> = Vec::new();
        for r in 0..n_researchers {
            let n_pubs = rng.random_range(1..=5usize);
            let mut pub_ids = Vec::new();
            for p in 0..n_pubs {
                let id = format!("r{r}p{p}");
                // roughly one in ten abstracts is empty
                let len = if rng.random_range(0..10) == 0 {
                    0
                } else {
                    rng.random_range(1..=12)
                };
                let tokens: Vec<String> = (0..len)
                    .map(|_| format!("t{}", rng.random_range(0..12)))
                    .collect();
                doc_tokens.insert(id.clone(), tokens.clone());
                docs.push((id.clone(), tokens));
                pub_ids.push(id);
            }
            researchers.push((format!("r{r}"), pub_ids));
        }
        let proposal_tokens: Vec<String> = (0..rng.random_range(1..=10))
            .map(|_| format!("t{}", rng.random_range(0..12)))
            .collect();

        // implementation path
        let streams: Vec<TokenStream> = docs.iter().map(|(_, t)| stream(t)).collect();
        let index = CorpusIndex::build(&streams).unwrap();
        let proposal_vec = index.vectorize(&stream(&proposal_tokens));
        let pools: Vec<(String, Vec<DocumentVector>)> = researchers
            .iter()
            .map(|(id, pub_ids)| {
                let vectors = pub_ids
                    .iter()
                    .filter(|pid| !doc_tokens[*pid].is_empty())
                    .map(|pid| index.vectorize(&stream(&doc_tokens[pid])))
                    .collect();
                (id.clone(), vectors)
            })
            .collect();
        let got = suggest_candidates(
            &proposal_vec,
            pools.iter().map(|(id, v)| (id.as_str(), v.as_slice())),
            100,
        );

        // exhaustive enumeration
        let oracle_corpus = DenseCorpus::build(&docs);
        let proposal_dense = oracle_corpus.query(&proposal_tokens);
        let want = oracle_suggest(
            &oracle_corpus,
            &proposal_dense,
            &researchers,
            &doc_tokens,
            100,
        );

        assert_eq!(got.len(), want.len(), "trial {trial}: ranking sizes");
        for (g, w) in got.iter().zip(&want) {
            assert_eq!(g.researcher_id, w.0, "trial {trial}: order");
            assert!(
                close(g.avg_similarity, w.1),
                "trial {trial}: score {} vs {}",
                g.avg_similarity,
                w.1
            );
            assert_eq!(g.pub_count, w.2, "trial {trial}: pub count");
        }
        for (i, suggestion) in got.iter().enumerate() {
            assert_eq!(suggestion.rank, i + 1, "ranks contiguous from 1");
        }
    }

    // self-retrieval: a synthetic researcher whose sole abstract is the
    // proposal text ranks first with similarity 1
    let texts = [
        "wireless sensor network energy routing",
        "crop irrigation soil moisture sensing",
        "video coding rate control hardware",
    ];
    let pipeline = PipelineConfig::default();
    let proposal_text = "energy efficient video coding for wireless devices";
    let mut docs: Vec<TokenStream> = texts.iter().map(|t| pipeline.preprocess(t)).collect();
    docs.push(pipeline.preprocess(proposal_text)); // the clone's publication
    let index = CorpusIndex::build(&docs).unwrap();
    let vectors: Vec<DocumentVector> = docs.iter().map(|d| index.vectorize(d)).collect();
    let proposal_vec = index.vectorize(&pipeline.preprocess(proposal_text));
    let pools: Vec<(String, Vec<DocumentVector>)> = vec![
        ("r0".into(), vec![vectors[0].clone()]),
        ("r1".into(), vec![vectors[1].clone()]),
        ("r2".into(), vec![vectors[2].clone()]),
        ("clone".into(), vec![vectors[3].clone()]),
    ];
    let ranked = suggest_candidates(
        &proposal_vec,
        pools.iter().map(|(id, v)| (id.as_str(), v.as_slice())),
        10,
    );
    assert_eq!(ranked[0].researcher_id, "clone");
    assert_eq!(ranked[0].rank, 1);
    assert!(close(ranked[0].avg_similarity, 1.0));

    println!("ACCEPTANCE 5 (suggestion oracle, 20 fixtures + self-retrieval): PASS");
}

// ---------------------------------------------------------------------------
// 6. Case-study shape: committed fixture modeled on the funded project
// ---------------------------------------------------------------------------

fn case_study_config(out: &Path) -> RunConfig {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/case_study");
    RunConfig::new(
        dir.join("publications.csv"),
        dir.join("projects.csv"),
        dir.join("org_aliases.csv"),
        YearRange::new(2005, 2013).unwrap(),
        out,
    )
}

#[test]
fn criterion_6_case_study_shape() {
    let out = tempfile::tempdir().unwrap();
    let config = case_study_config(out.path());
    let output = run::impact(&config).unwrap();

    // (a) split 2005-2008 / 2009-2013
    for row in &output.researcher_rows {
        let before = row.split.before.unwrap();
        assert_eq!((before.start, before.end), (2005, 2008));
        assert_eq!((row.split.after.start, row.split.after.end), (2009, 2013));
    }

    // (b) positive productivity and co-authorship deltas for the PIs
    let ikram = output
        .researcher_rows
        .iter()
        .find(|r| r.researcher_id == "ikram-j")
        .expect("ikram-j is a funded PI");
    assert!(ikram.productivity_delta.unwrap() > 0.0);
    assert!(ikram.coauth_delta.unwrap() > 0.0);
    let khan = output
        .researcher_rows
        .iter()
        .find(|r| r.researcher_id == "khan-n")
        .unwrap();
    assert!(khan.productivity_delta.unwrap() > 0.0);
    assert!(khan.coauth_delta.unwrap() > 0.0);

    // the funded org resolved through both alias spellings
    assert_eq!(output.org_rows.len(), 1);
    assert_eq!(output.org_rows[0].org_id, "lums");
    assert!(close(output.org_rows[0].total_funds, 13.03e6));

    // (c) the PI appears in the top-k suggestion list for the project
    let out2 = tempfile::tempdir().unwrap();
    let config = case_study_config(out2.path());
    let suggestion = run::suggest(&config, "pavc-2009").unwrap();
    let ikram_entry = suggestion
        .suggestions
        .iter()
        .find(|s| s.researcher_id == "ikram-j")
        .expect("PI appears in the suggestion list");
    assert!(ikram_entry.rank <= 5, "PI rank: {}", ikram_entry.rank);

    println!("ACCEPTANCE 6 (case-study shape): PASS");
}

// ---------------------------------------------------------------------------
// 7. Byte-identical reports across runs
// ---------------------------------------------------------------------------

fn dir_snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut snapshot = BTreeMap::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let entry = entry.unwrap();
        snapshot.insert(
            entry.file_name().to_string_lossy().to_string(),
            std::fs::read(entry.path()).unwrap(),
        );
    }
    snapshot
}

#[test]
fn criterion_7_determinism() {
    for format in [OutputFormat::Csv, OutputFormat::Json] {
        let out1 = tempfile::tempdir().unwrap();
        let out2 = tempfile::tempdir().unwrap();
        for out in [&out1, &out2] {
            let mut config = case_study_config(out.path());
            config.format = format;
            run::impact(&config).unwrap();
            run::suggest(&config, "pavc-2009").unwrap();
        }
        let a = dir_snapshot(out1.path());
        let b = dir_snapshot(out2.path());
        assert_eq!(
            a.keys().collect::<Vec<_>>(),
            b.keys().collect::<Vec<_>>(),
            "same file sets"
        );
        for (name, bytes) in &a {
            assert_eq!(bytes, &b[name], "{name} differs between runs");
        }
        assert!(a.len() >= 3, "impact + suggest reports written");
    }
    println!("ACCEPTANCE 7 (byte-identical reports, csv + json): PASS");
}

// ---------------------------------------------------------------------------
// 8. Scale check: 60k publications / 40k researchers under 60 s
// ---------------------------------------------------------------------------

fn synthetic_word(rng: &mut StdRng, pool: &[String]) -> String {
    pool[rng.random_range(0..pool.len())].clone()
}

fn build_word_pool() -> Vec<String> {
    let syllables = [
        "ba", "co", "de", "fi", "gu", "ha", "ki", "lo", "mu", "ne", "po", "ra", "si", "tu", "ve",
        "wa", "zo", "bri", "cla", "dro", "fle", "gri", "pla", "sto", "tra",
    ];
    let mut pool = Vec::new();
    for a in syllables {
        for b in syllables {
            pool.push(format!("{a}{b}"));
            if pool.len() >= 600 {
                return pool;
            }
        }
    }
    pool
}

#[test]
fn criterion_8_scale_under_60s() {
    let dir = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    let mut rng = StdRng::seed_from_u64(0x5ca1ab1e);
    let pool = build_word_pool();
    let stop_fillers = ["the", "of", "and", "for", "with", "in"];

    let n_pubs = 60_000;
    let n_researchers = 40_000;
    let n_orgs = 10;

    // project PIs get extra publications so the impact panels are non-trivial
    let pis: Vec<String> = (0..23).map(|i| format!("r{}", i * 1000)).collect();

    let mut publications = Vec::with_capacity(n_pubs);
    for i in 0..n_pubs {
        let year = 2005 + (i % 9) as i32;
        let mut authors: BTreeSet<String> = (0..rng.random_range(1..=4usize))
            .map(|_| format!("r{}", rng.random_range(0..n_researchers)))
            .collect();
        if i % 400 == 0 {
            authors.insert(pis[(i / 400) % pis.len()].clone());
        }
        let mut words = Vec::with_capacity(40);
        for w in 0..rng.random_range(25..=45usize) {
            if w % 7 == 0 {
                words.push(stop_fillers[rng.random_range(0..stop_fillers.len())].to_string());
            } else {
                words.push(synthetic_word(&mut rng, &pool));
            }
        }
        let org = rng.random_range(0..n_orgs);
        let org_name = if rng.random_bool(0.5) {
            format!("Research Institute {org}")
        } else {
            format!("RI {org}")
        };
        publications.push(Publication {
            pub_id: format!("p{i}"),
            title: format!("synthetic study {i}"),
            abstract_text: words.join(" "),
            year,
            author_ids: authors.into_iter().collect(),
            org_ids: [org_name].into_iter().collect(),
        });
    }
    let pubs_path = dir.path().join("publications.csv");
    ingest::write_publications(&pubs_path, &publications).unwrap();

    let mut projects_csv =
        String::from("project_id,title,summary,pi_ids,pio_id,grant_year,budget,status\n");
    for (i, pi_pair) in pis.chunks(2).take(17).enumerate() {
        let year = 2007 + (i % 7) as i32;
        let summary: Vec<String> = (0..50).map(|_| synthetic_word(&mut rng, &pool)).collect();
        projects_csv.push_str(&format!(
            "g{i},synthetic project {i},{},{},RI {},{year},{}000000,closed\n",
            summary.join(" "),
            pi_pair.join(";"),
            i % n_orgs,
            1 + (i % 15),
        ));
    }
    let projects_path = dir.path().join("projects.csv");
    std::fs::write(&projects_path, projects_csv).unwrap();

    let mut aliases_csv = String::from("org_id,canonical_name,alias\n");
    for o in 0..n_orgs {
        aliases_csv.push_str(&format!(
            "org{o},Research Institute {o},Research Institute {o}\n"
        ));
        aliases_csv.push_str(&format!("org{o},Research Institute {o},RI {o}\n"));
    }
    let aliases_path = dir.path().join("org_aliases.csv");
    std::fs::write(&aliases_path, aliases_csv).unwrap();

    let config = RunConfig::new(
        pubs_path,
        projects_path,
        aliases_path,
        YearRange::new(2005, 2013).unwrap(),
        out.path(),
    );

    let start = Instant::now();
    let output = run::impact(&config).unwrap();
    let elapsed = start.elapsed();

    assert!(!output.researcher_rows.is_empty());
    assert_eq!(output.org_rows.len(), n_orgs);
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "impact took {elapsed:?} on the synthetic corpus"
    );
    println!("ACCEPTANCE 8 (60k pubs / 40k researchers impact in {elapsed:?} < 60s): PASS");
}
