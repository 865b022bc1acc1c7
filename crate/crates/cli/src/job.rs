//! Job specifications: everything that determines a report.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use novikov_core::rank::{DEFAULT_EXACT_SIZE_BOUND, DEFAULT_MINOR_CAP};
use novikov_core::RankMethod;

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub input: JobInput,
    /// Omitted: the class of a complex is given by its ring; presentations
    /// are scanned when certifying and rejected when computing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<ClassSpec>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub options: JobOptions,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum JobInput {
    Presentation {
        text: String,
    },
    /// A boundary complex document; see `BoundaryComplex::to_json`.
    Complex {
        document: Value,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ClassSpec {
    /// Each class is a list of rows `name=value,...` or positional values.
    Explicit {
        classes: Vec<Vec<String>>,
    },
    /// The ring variables of a complex already encode the class.
    Given,
    Scan {
        budget: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobOptions {
    pub method: RankMethod,
    pub exact_bound: usize,
    pub torsion: bool,
    pub diagonalize: bool,
    pub minor_cap: u64,
    /// Random bundle samples over `F_p`.
    pub samples: usize,
    /// Explicit rational bundle points, coordinates comma-separated.
    pub points: Vec<String>,
    pub assert_amenable: bool,
    pub echo: bool,
}

impl Default for JobOptions {
    fn default() -> Self {
        JobOptions {
            method: RankMethod::Auto,
            exact_bound: DEFAULT_EXACT_SIZE_BOUND,
            torsion: false,
            diagonalize: false,
            minor_cap: DEFAULT_MINOR_CAP as u64,
            samples: 20,
            points: Vec::new(),
            assert_amenable: false,
            echo: false,
        }
    }
}

impl JobSpec {
    pub fn presentation(text: impl Into<String>) -> Self {
        JobSpec {
            input: JobInput::Presentation { text: text.into() },
            classes: None,
            seed: 0,
            options: JobOptions::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &str) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn with_classes(mut self, classes: ClassSpec) -> Self {
        self.classes = Some(classes);
        self
    }
}
