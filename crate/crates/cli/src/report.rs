//! Running one analysis and rendering its report.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::Instant;

use serde::Serialize;
use tarsis::analysis::{abstract_run, AnalysisConfig, AnalysisError, Verdict};
use tarsis::imp::{extract_alphabet, Program};
use tarsis::tarsis::{StringAbs, TarsisDomain};
use tarsis::value_domains::baseline::{
    Affix, CharFaDomain, CharInclusionDomain, CharSet, PrefixDomain, SuffixDomain,
};
use tarsis::value_domains::{AbstractValue, StringDomain};

use crate::settings::{DomainKind, Settings};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub program: String,
    pub domain: String,
    pub asserts: Vec<AssertEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    /// Graphviz renderings of automaton-valued variables, keyed by
    /// `line<L>_<variable>`. Not part of the JSON report.
    #[serde(skip)]
    pub dots: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssertEntry {
    pub line: u32,
    pub column: u32,
    pub condition: String,
    /// `none`, `PA`, `DA` or `unreachable`.
    pub verdict: String,
    pub values: BTreeMap<String, String>,
}

impl Report {
    pub fn has_definite_alarm(&self) -> bool {
        self.asserts.iter().any(|a| a.verdict == "DA")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "program: {}", self.program).unwrap();
        writeln!(out, "domain: {}", self.domain).unwrap();
        if self.asserts.is_empty() {
            writeln!(out, "no asserts").unwrap();
        }
        for a in &self.asserts {
            writeln!(
                out,
                "line {}: assert({})  {}",
                a.line, a.condition, a.verdict
            )
            .unwrap();
            for (x, v) in &a.values {
                writeln!(out, "  {x} = {v}").unwrap();
            }
        }
        if let Some(ms) = self.timing_ms {
            writeln!(out, "time: {ms:.3} ms").unwrap();
        }
        out
    }

    /// Pretty JSON with every non-ASCII character escaped, so `⊤`
    /// comes out as `\u22A4`.
    pub fn to_json(&self) -> String {
        ascii_json(&serde_json::to_string_pretty(self).expect("reports serialize"))
    }
}

/// Escapes non-ASCII characters. They can only occur inside JSON strings,
/// so a plain character rewrite is safe.
pub fn ascii_json(json: &str) -> String {
    let mut out = String::with_capacity(json.len());
    for c in json.chars() {
        if c.is_ascii() {
            out.push(c);
        } else {
            let mut buf = [0u16; 2];
            for unit in c.encode_utf16(&mut buf) {
                write!(out, "\\u{unit:04X}").unwrap();
            }
        }
    }
    out
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Proved => "none",
        Verdict::Possible => "PA",
        Verdict::Definite => "DA",
        Verdict::Unreachable => "unreachable",
    }
}

/// Values that can be drawn as an automaton.
pub trait Drawable {
    fn dot(&self) -> Option<String>;
}

impl Drawable for StringAbs {
    fn dot(&self) -> Option<String> {
        Some(self.automaton().to_dot())
    }
}

impl Drawable for Affix {
    fn dot(&self) -> Option<String> {
        None
    }
}

impl Drawable for CharSet {
    fn dot(&self) -> Option<String> {
        None
    }
}

pub fn analyze(
    program: &Program,
    path: &str,
    settings: &Settings,
) -> Result<Report, AnalysisError> {
    let config = settings.analysis_config();
    match settings.domain {
        DomainKind::Tarsis => {
            let dom = TarsisDomain {
                widening_n: settings.widening_n,
                tau: settings.tau,
            };
            run(&dom, program, path, &config)
        }
        DomainKind::Charfa => {
            let chars = extract_alphabet(program).source_chars().clone();
            let dom = CharFaDomain::new(chars, settings.widening_n, settings.tau);
            run(&dom, program, path, &config)
        }
        DomainKind::Prefix => run(&PrefixDomain, program, path, &config),
        DomainKind::Suffix => run(&SuffixDomain, program, path, &config),
        DomainKind::Charinclusion => run(&CharInclusionDomain, program, path, &config),
    }
}

fn run<D>(
    dom: &D,
    program: &Program,
    path: &str,
    config: &AnalysisConfig,
) -> Result<Report, AnalysisError>
where
    D: StringDomain,
    D::Value: Drawable,
{
    let start = Instant::now();
    let result = abstract_run(dom, program, config)?;
    let elapsed = start.elapsed();
    let mut dots = BTreeMap::new();
    let asserts = result
        .asserts
        .iter()
        .map(|a| {
            for (x, v) in &a.variables {
                if let Some(dot) = match v {
                    AbstractValue::Str(s) => s.dot(),
                    _ => None,
                } {
                    dots.insert(format!("line{}_{x}", a.pos.line), dot);
                }
            }
            AssertEntry {
                line: a.pos.line,
                column: a.pos.col,
                condition: a.condition.to_string(),
                verdict: verdict_name(a.verdict()).to_string(),
                values: a
                    .variables
                    .iter()
                    .map(|(x, v)| (x.clone(), v.render(dom)))
                    .collect(),
            }
        })
        .collect();
    Ok(Report {
        program: path.to_string(),
        domain: dom.name().to_string(),
        asserts,
        timing_ms: Some(elapsed.as_secs_f64() * 1000.0),
        dots,
    })
}
