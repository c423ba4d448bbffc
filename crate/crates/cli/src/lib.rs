//! Driver for the tarsis analyzer: settings, reports and the corpus bench.

pub mod bench;
pub mod report;
pub mod settings;
