//! Report emitters. All numeric cells are written with six fractional
//! digits (half-even rounding) and all row orders are fixed, so a given
//! input produces byte-identical report files on every run.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::metrics::{OrgImpact, ResearcherImpact, YearlyRow};
use crate::run::OutputFormat;
use crate::suggest::Suggestion;

/// Fixed 6-decimal formatting with half-even rounding of decimal ties.
pub fn fmt6(value: f64) -> String {
    // avoid a "-0.000000" cell
    let value = if value == 0.0 { 0.0 } else { value };
    format!("{value:.6}")
}

fn fmt6_opt(value: Option<f64>) -> String {
    value.map(fmt6).unwrap_or_default()
}

fn json_number(value: Option<f64>) -> String {
    match value {
        Some(v) => fmt6(v),
        None => "null".to_string(),
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn json_array(items: Vec<String>) -> String {
    if items.is_empty() {
        return "[]\n".to_string();
    }
    let mut out = String::from("[\n");
    for (i, item) in items.iter().enumerate() {
        out.push_str("  ");
        out.push_str(item);
        if i + 1 < items.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("]\n");
    out
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn csv_writer(path: &Path) -> Result<csv::Writer<std::fs::File>> {
    csv::Writer::from_path(path).map_err(|e| Error::Schema {
        file: path.display().to_string(),
        message: e.to_string(),
    })
}

fn csv_err(path: &Path, e: csv::Error) -> Error {
    Error::Schema {
        file: path.display().to_string(),
        message: e.to_string(),
    }
}

fn flags_cell(impact: &ResearcherImpact) -> String {
    impact
        .flags
        .iter()
        .map(|f| f.as_str())
        .collect::<Vec<_>>()
        .join(";")
}

/// Write `researcher_impact.{csv,json}`; rows must already be in
/// (researcher_id, project_id) order.
pub fn write_researcher_impacts(
    dir: &Path,
    format: OutputFormat,
    rows: &[ResearcherImpact],
) -> Result<PathBuf> {
    let path = dir.join(format!("researcher_impact.{}", format.extension()));
    match format {
        OutputFormat::Csv => {
            let mut writer = csv_writer(&path)?;
            writer
                .write_record([
                    "researcher_id",
                    "project_id",
                    "productivity_delta",
                    "coauth_delta",
                    "focus_self_delta",
                    "focus_theme_delta",
                    "flags",
                ])
                .map_err(|e| csv_err(&path, e))?;
            for row in rows {
                writer
                    .write_record([
                        row.researcher_id.as_str(),
                        row.project_id.as_str(),
                        &fmt6_opt(row.productivity_delta),
                        &fmt6_opt(row.coauth_delta),
                        &fmt6_opt(row.focus_self_delta),
                        &fmt6_opt(row.focus_theme_delta),
                        &flags_cell(row),
                    ])
                    .map_err(|e| csv_err(&path, e))?;
            }
            writer.flush().map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
        }
        OutputFormat::Json => {
            let items = rows
                .iter()
                .map(|row| {
                    let flags = row
                        .flags
                        .iter()
                        .map(|f| json_string(f.as_str()))
                        .collect::<Vec<_>>()
                        .join(",");
                    format!(
                        "{{\"researcher_id\":{},\"project_id\":{},\"productivity_delta\":{},\"coauth_delta\":{},\"focus_self_delta\":{},\"focus_theme_delta\":{},\"flags\":[{}]}}",
                        json_string(&row.researcher_id),
                        json_string(&row.project_id),
                        json_number(row.productivity_delta),
                        json_number(row.coauth_delta),
                        json_number(row.focus_self_delta),
                        json_number(row.focus_theme_delta),
                        flags,
                    )
                })
                .collect();
            write_file(&path, &json_array(items))?;
        }
    }
    Ok(path)
}

/// Write `org_impact.{csv,json}`; rows must already be in org-id order.
pub fn write_org_impacts(dir: &Path, format: OutputFormat, rows: &[OrgImpact]) -> Result<PathBuf> {
    let path = dir.join(format!("org_impact.{}", format.extension()));
    match format {
        OutputFormat::Csv => {
            let mut writer = csv_writer(&path)?;
            writer
                .write_record([
                    "org_id",
                    "project_count",
                    "total_funds",
                    "productivity_delta",
                    "pubs_per_million",
                ])
                .map_err(|e| csv_err(&path, e))?;
            for row in rows {
                writer
                    .write_record([
                        row.org_id.as_str(),
                        &row.project_count.to_string(),
                        &fmt6(row.total_funds),
                        &fmt6_opt(row.productivity_delta),
                        &fmt6_opt(row.pubs_per_million),
                    ])
                    .map_err(|e| csv_err(&path, e))?;
            }
            writer.flush().map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
        }
        OutputFormat::Json => {
            let items = rows
                .iter()
                .map(|row| {
                    format!(
                        "{{\"org_id\":{},\"project_count\":{},\"total_funds\":{},\"productivity_delta\":{},\"pubs_per_million\":{}}}",
                        json_string(&row.org_id),
                        row.project_count,
                        fmt6(row.total_funds),
                        json_number(row.productivity_delta),
                        json_number(row.pubs_per_million),
                    )
                })
                .collect();
            write_file(&path, &json_array(items))?;
        }
    }
    Ok(path)
}

/// Write `suggestions.{csv,json}` in rank order.
pub fn write_suggestions(dir: &Path, format: OutputFormat, rows: &[Suggestion]) -> Result<PathBuf> {
    let path = dir.join(format!("suggestions.{}", format.extension()));
    match format {
        OutputFormat::Csv => {
            let mut writer = csv_writer(&path)?;
            writer
                .write_record(["rank", "researcher_id", "avg_similarity", "pub_count"])
                .map_err(|e| csv_err(&path, e))?;
            for row in rows {
                writer
                    .write_record([
                        &row.rank.to_string(),
                        row.researcher_id.as_str(),
                        &fmt6(row.avg_similarity),
                        &row.pub_count.to_string(),
                    ])
                    .map_err(|e| csv_err(&path, e))?;
            }
            writer.flush().map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
        }
        OutputFormat::Json => {
            let items = rows
                .iter()
                .map(|row| {
                    format!(
                        "{{\"rank\":{},\"researcher_id\":{},\"avg_similarity\":{},\"pub_count\":{}}}",
                        row.rank,
                        json_string(&row.researcher_id),
                        fmt6(row.avg_similarity),
                        row.pub_count,
                    )
                })
                .collect();
            write_file(&path, &json_array(items))?;
        }
    }
    Ok(path)
}

fn sanitize_for_filename(id: &str) -> String {
    id.chars()
        .map(|c| {
            if c.is_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// Write `yearly_<researcher_id>.csv` (always CSV: it is a plot-ready table).
pub fn write_yearly(dir: &Path, researcher_id: &str, rows: &[YearlyRow]) -> Result<PathBuf> {
    let path = dir.join(format!(
        "yearly_{}.csv",
        sanitize_for_filename(researcher_id)
    ));
    let mut writer = csv_writer(&path)?;
    writer
        .write_record([
            "year",
            "pubs",
            "coauth_rate",
            "focus_theme",
            "is_grant_year",
        ])
        .map_err(|e| csv_err(&path, e))?;
    for row in rows {
        writer
            .write_record([
                row.year.to_string(),
                row.pubs.to_string(),
                fmt6_opt(row.coauth_rate),
                fmt6_opt(row.focus_theme),
                (if row.is_grant_year { "true" } else { "false" }).to_string(),
            ])
            .map_err(|e| csv_err(&path, e))?;
    }
    writer.flush().map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}
