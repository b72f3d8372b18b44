use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Process exit status of a command.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    /// The check ran but a search bound leaves the answer open.
    Inconclusive,
    /// Bad input or a resource limit stopped the command.
    Error,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Inconclusive => 2,
            Outcome::Error => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommandReport {
    pub command: String,
    pub input: Option<String>,
    /// SHA-256 of the input file.
    pub digest: Option<String>,
    pub outcome: Outcome,
    /// Human-readable lines, as printed.
    pub summary: Vec<String>,
    /// Verdicts with their witnesses, or an explicit bound marker.
    pub data: serde_json::Value,
    pub elapsed_secs: f64,
}

pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl CommandReport {
    pub fn emit(&self, json: Option<&Path>) -> Result<(), String> {
        for line in &self.summary {
            println!("{line}");
        }
        if let Some(path) = json {
            let text = serde_json::to_string_pretty(self).map_err(|e| e.to_string())?;
            std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
        }
        Ok(())
    }
}
