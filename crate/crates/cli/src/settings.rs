//! Analysis settings from flags and an optional JSON config file.

use std::path::Path;

use anyhow::Context;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use tarsis::analysis::AnalysisConfig;

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum DomainKind {
    Tarsis,
    Charfa,
    Prefix,
    Suffix,
    Charinclusion,
}

impl DomainKind {
    pub const ALL: [DomainKind; 5] = [
        DomainKind::Tarsis,
        DomainKind::Charfa,
        DomainKind::Prefix,
        DomainKind::Suffix,
        DomainKind::Charinclusion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DomainKind::Tarsis => "tarsis",
            DomainKind::Charfa => "charfa",
            DomainKind::Prefix => "prefix",
            DomainKind::Suffix => "suffix",
            DomainKind::Charinclusion => "charinclusion",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

/// Everything `analyze` needs besides the program.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct Settings {
    pub domain: DomainKind,
    pub widening_n: usize,
    pub tau: usize,
    pub partition_bound: usize,
    pub format: Format,
}

impl Default for Settings {
    fn default() -> Settings {
        Settings {
            domain: DomainKind::Tarsis,
            widening_n: 2,
            tau: 5,
            partition_bound: AnalysisConfig::default().partition_bound,
            format: Format::Text,
        }
    }
}

impl Settings {
    pub fn from_file(path: &Path) -> anyhow::Result<Settings> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    pub fn analysis_config(&self) -> AnalysisConfig {
        AnalysisConfig {
            partition_bound: self.partition_bound,
            ..AnalysisConfig::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_config_keeps_defaults() {
        let s: Settings = serde_json::from_str(r#"{"domain": "charfa", "wideningN": 3}"#).unwrap();
        assert_eq!(s.domain, DomainKind::Charfa);
        assert_eq!(s.widening_n, 3);
        assert_eq!(s.tau, 5);
        assert!(serde_json::from_str::<Settings>(r#"{"widening": 3}"#).is_err());
    }
}
