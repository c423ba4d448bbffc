//! Runs a corpus across every domain, in the spirit of a timing table.

use std::path::{Path, PathBuf};

use anyhow::Context;
use tarsis::imp::parse;

use crate::report::analyze;
use crate::settings::{DomainKind, Settings};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub program: String,
    pub domain: DomainKind,
    /// Verdicts of the asserts in source order, space separated.
    pub verdicts: String,
    /// Values at the first assert, `x=v` joined by `; `.
    pub values: String,
    pub ms: f64,
}

impl BenchRow {
    /// The deterministic part of the row, as stored in golden files.
    pub fn golden_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}",
            self.program,
            self.domain.name(),
            self.verdicts,
            self.values
        )
    }
}

/// Every `*.imp` file of `dir`, sorted by name.
pub fn corpus_files(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "imp"))
        .collect();
    files.sort();
    Ok(files)
}

fn bench_file(path: &Path, base: &Settings) -> anyhow::Result<Vec<BenchRow>> {
    let name = path
        .file_name()
        .map_or_else(String::new, |n| n.to_string_lossy().into_owned());
    let src =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let program = parse(&src).map_err(|e| anyhow::anyhow!("{}:{e}", path.display()))?;
    DomainKind::ALL
        .iter()
        .map(|&domain| {
            let settings = Settings { domain, ..*base };
            let report = analyze(&program, &name, &settings)?;
            let verdicts: Vec<&str> = report.asserts.iter().map(|a| a.verdict.as_str()).collect();
            let values = report.asserts.first().map_or_else(String::new, |a| {
                a.values
                    .iter()
                    .map(|(x, v)| format!("{x}={v}"))
                    .collect::<Vec<_>>()
                    .join("; ")
            });
            Ok(BenchRow {
                program: name.clone(),
                domain,
                verdicts: verdicts.join(" "),
                values,
                ms: report.timing_ms.unwrap_or_default(),
            })
        })
        .collect()
}

/// Analyzes every corpus file with every domain; files run in parallel.
pub fn bench(dir: &Path, settings: &Settings) -> anyhow::Result<Vec<BenchRow>> {
    let files = corpus_files(dir)?;
    let results: Vec<anyhow::Result<Vec<BenchRow>>> = std::thread::scope(|s| {
        let handles: Vec<_> = files
            .iter()
            .map(|f| s.spawn(move || bench_file(f, settings)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("bench worker panicked"))
            .collect()
    });
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    Ok(rows)
}

pub fn golden(rows: &[BenchRow]) -> String {
    let mut out: String = rows.iter().map(|r| r.golden_line() + "\n").collect();
    if out.is_empty() {
        out.push('\n');
    }
    out
}

/// Lines of `expected` and `actual` that differ, as `-`/`+` pairs.
pub fn golden_diff(expected: &str, actual: &str) -> Vec<String> {
    let exp: Vec<&str> = expected.lines().collect();
    let act: Vec<&str> = actual.lines().collect();
    let mut out = Vec::new();
    for i in 0..exp.len().max(act.len()) {
        let (e, a) = (exp.get(i), act.get(i));
        if e != a {
            if let Some(e) = e {
                out.push(format!("-{e}"));
            }
            if let Some(a) = a {
                out.push(format!("+{a}"));
            }
        }
    }
    out
}

fn clip(s: &str, width: usize) -> String {
    if s.chars().count() <= width {
        s.to_string()
    } else {
        let mut t: String = s.chars().take(width - 3).collect();
        t.push_str("...");
        t
    }
}

pub fn table(rows: &[BenchRow]) -> String {
    let mut out = format!(
        "{:<14} {:<14} {:>10}  {:<28} {}\n",
        "program", "domain", "time (ms)", "verdicts", "values at first assert"
    );
    for r in rows {
        out.push_str(&format!(
            "{:<14} {:<14} {:>10.3}  {:<28} {}\n",
            r.program,
            r.domain.name(),
            r.ms,
            r.verdicts,
            clip(&r.values, 60)
        ));
    }
    out
}
