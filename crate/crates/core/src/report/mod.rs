//! Reports: claims with expected and computed values, grouped by criterion.

pub mod cache;
pub mod commands;
pub mod criteria;
pub mod properties;
pub mod session;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use cache::{Cache, CacheKey};
pub use criteria::{run_criterion, CRITERIA};
pub use session::Session;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// A published number.
    Published,
    /// Frozen from an independent computation in this crate.
    Derived,
    /// True by construction of the check.
    Definition,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub expected: Value,
    pub source: Source,
    pub computed: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Claim {
    /// Passes iff both values serialize to the same JSON.
    pub fn new(id: &str, source: Source, expected: impl Serialize, computed: impl Serialize) -> Self {
        let expected = serde_json::to_value(expected).unwrap_or(Value::Null);
        let computed = serde_json::to_value(computed).unwrap_or(Value::Null);
        Claim { id: id.into(), pass: expected == computed, expected, source, computed, note: None }
    }

    pub fn holds(id: &str, source: Source, computed: bool) -> Self {
        Claim::new(id, source, true, computed)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub number: u8,
    pub title: String,
    pub claims: Vec<Claim>,
    /// Set when a stage failed before all claims could be evaluated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub pass: bool,
}

impl CriterionResult {
    /// First failing claim or the stage error, for one-line summaries.
    pub fn failure(&self) -> Option<String> {
        if let Some(e) = &self.error {
            return Some(e.clone());
        }
        self.claims.iter().find(|c| !c.pass).map(|c| format!("{}: expected {}, computed {}", c.id, c.expected, c.computed))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub version: String,
    pub gram_hash: String,
    pub criteria: Vec<CriterionResult>,
    pub pass: bool,
}

impl ReportBundle {
    pub fn new(gram_hash: &str, criteria: Vec<CriterionResult>) -> Self {
        ReportBundle {
            version: cache::MODULE_VERSION.into(),
            gram_hash: gram_hash.into(),
            pass: criteria.iter().all(|c| c.pass),
            criteria,
        }
    }

    pub fn claims(&self) -> impl Iterator<Item = &Claim> {
        self.criteria.iter().flat_map(|c| &c.claims)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claims_compare_serialized_values() {
        assert!(Claim::new("a", Source::Published, 48usize, 48i64).pass);
        assert!(!Claim::new("b", Source::Derived, vec![1, 2], vec![2, 1]).pass);
        assert!(!Claim::holds("c", Source::Definition, false).pass);
    }
}
