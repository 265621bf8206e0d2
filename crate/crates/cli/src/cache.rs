//! Append-only JSON-lines result cache for the search commands.
//!
//! Each line is one record. Lookups scan the whole file and take the last
//! record matching the instance key, then re-verify the witness from
//! scratch; a record that fails verification is reported and skipped, never
//! returned. Only exact results are written.

use sct_core::extremal::{verify_witness, Instance, SearchResult, SearchStatus, Witness};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::PathBuf;

use crate::formats;
use crate::CliError;

pub const DEFAULT_CACHE_FILE: &str = "sct-cache.jsonl";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheRecord {
    pub instance_key: String,
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub optimum: u64,
    /// Witness in the instance file format (complex or uniform text).
    pub witness: String,
    pub nodes: u64,
    pub seconds: f64,
    pub tool_version: String,
}

pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub fn at(path: PathBuf) -> Cache {
        Cache { path }
    }

    /// The verified cached result for `instance`, if any.
    pub fn lookup(&self, instance: &Instance) -> Result<Option<SearchResult>, CliError> {
        let key = instance
            .key()
            .map_err(|e| CliError::failure(e.to_string()))?;
        let text = match std::fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => {
                return Err(CliError::failure(format!(
                    "cache {}: {e}",
                    self.path.display()
                )))
            }
        };
        let mut found: Option<CacheRecord> = None;
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let record: CacheRecord = serde_json::from_str(line).map_err(|e| {
                CliError::failure(format!(
                    "cache {} line {}: {e}",
                    self.path.display(),
                    i + 1
                ))
            })?;
            if record.instance_key == key {
                found = Some(record);
            }
        }
        let Some(record) = found else {
            return Ok(None);
        };
        let witness = match instance {
            Instance::MaxEdges { .. } => {
                Witness::Complex(formats::parse_complex(&record.witness)?.value.generating_set().clone())
            }
            _ => Witness::Uniform(formats::parse_uniform(&record.witness)?.value),
        };
        let result = SearchResult {
            instance_key: record.instance_key.clone(),
            optimum: record.optimum,
            witness,
            nodes_explored: record.nodes,
            wall_seconds: record.seconds,
            status: SearchStatus::Exact,
        };
        match verify_witness(&result, instance) {
            Ok(true) => Ok(Some(result)),
            Ok(false) => {
                eprintln!(
                    "warning: cached witness for {key} failed re-verification; ignoring"
                );
                Ok(None)
            }
            Err(e) => Err(CliError::failure(format!("cache verification: {e}"))),
        }
    }

    pub fn append(&self, record: &CacheRecord) -> Result<(), CliError> {
        let line = serde_json::to_string(record)
            .map_err(|e| CliError::failure(e.to_string()))?;
        let mut f = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| {
                CliError::failure(format!("cache {}: {e}", self.path.display()))
            })?;
        writeln!(f, "{line}")
            .map_err(|e| CliError::failure(format!("cache write: {e}")))?;
        Ok(())
    }
}

/// Build the record for a fresh exact result.
pub fn record_of(
    result: &SearchResult,
    command: &str,
    parameters: BTreeMap<String, String>,
) -> CacheRecord {
    let witness = match &result.witness {
        Witness::Complex(gens) => formats::render_complex(
            &sct_core::complex::Complex::from_generating_set(gens.clone()),
        ),
        Witness::Uniform(g) => formats::render_uniform(g),
    };
    CacheRecord {
        instance_key: result.instance_key.clone(),
        command: command.to_string(),
        parameters,
        optimum: result.optimum,
        witness,
        nodes: result.nodes_explored,
        seconds: result.wall_seconds,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sct_core::extremal::max_cliques_forbidden;
    use sct_core::formulas::CountMode;
    use sct_core::Budget;

    #[test]
    fn round_trip_and_tamper_rejection() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let cache = Cache::at(path.clone());

        let m22 = sct_core::constructions::matching(2, 2).unwrap();
        let instance = Instance::MaxCliques {
            n: 5,
            k: 2,
            forbidden: vec![m22.clone()],
            mode: CountMode::GeqK,
        };
        assert!(cache.lookup(&instance).unwrap().is_none());

        let result = max_cliques_forbidden(
            5,
            2,
            &[m22],
            CountMode::GeqK,
            &Budget::unlimited(),
            1,
        )
        .unwrap();
        cache
            .append(&record_of(&result, "ex-cliques", BTreeMap::new()))
            .unwrap();
        let hit = cache.lookup(&instance).unwrap().expect("cache hit");
        assert_eq!(hit.optimum, result.optimum);

        // A corrupted optimum must be skipped on load.
        let mut record = record_of(&result, "ex-cliques", BTreeMap::new());
        record.optimum += 5;
        cache.append(&record).unwrap();
        assert!(cache.lookup(&instance).unwrap().is_none());
    }
}
