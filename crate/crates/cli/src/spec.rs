//! The on-disk sequence specification: a JSON object naming either an
//! explicit element list or a generator family, with an optional declared
//! sector half-angle validated at load.

use std::path::Path;

use serde::{Deserialize, Serialize};

use cfrac_core::{Complex64, ElementSequence, Sector};

use crate::CliError;

#[derive(Debug, Clone, Copy, Deserialize, Serialize)]
pub struct ComplexSpec {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl From<ComplexSpec> for Complex64 {
    fn from(c: ComplexSpec) -> Self {
        Complex64::new(c.re, c.im)
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpecKind {
    List {
        elements: Vec<ComplexSpec>,
    },
    Geometric {
        b0: ComplexSpec,
        ratio: ComplexSpec,
        count: usize,
    },
    Constant {
        b: ComplexSpec,
        count: usize,
    },
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct SequenceSpec {
    #[serde(flatten)]
    pub kind: SpecKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sector_half_angle: Option<f64>,
}

impl SequenceSpec {
    /// Reads and parses a spec file; unreadable or malformed input is a
    /// parse error (exit code 2), semantic problems surface later as
    /// domain errors (exit code 3).
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Parse(format!("malformed spec {}: {e}", path.display())))
    }

    /// Materializes the element family, enforcing the load-time invariants:
    /// nonzero elements, a positive count, and membership in the declared
    /// sector when one is present.
    pub fn build(&self) -> Result<ElementSequence, cfrac_core::Error> {
        let seq = match &self.kind {
            SpecKind::List { elements } => {
                ElementSequence::from_elements(elements.iter().map(|&c| c.into()).collect())?
            }
            SpecKind::Geometric { b0, ratio, count } => {
                ElementSequence::geometric((*b0).into(), (*ratio).into(), *count)?
            }
            SpecKind::Constant { b, count } => ElementSequence::constant((*b).into(), *count)?,
        };
        match self.sector_half_angle {
            Some(angle) => seq.with_declared_sector(Sector::new(angle)?),
            None => Ok(seq),
        }
    }
}
