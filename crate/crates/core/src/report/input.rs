use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::engine::Budget;
use crate::error::{Error, Result};
use crate::germ::{build_fhat, GermSpec, UnfoldingSpec};
use crate::ring::{CoefficientField, Field};

pub const SCHEMA_VERSION: u32 = 1;

/// The input document: a germ and optionally an unfolding of `f^`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    pub n: usize,
    pub k: usize,
    pub vars: Vec<String>,
    #[serde(default)]
    pub h: Vec<String>,
    pub f: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unfolding: Option<UnfoldingInput>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnfoldingInput {
    pub u_vars: Vec<String>,
    #[serde(rename = "F")]
    pub components: Vec<String>,
}

impl GermInput {
    pub fn from_json(text: &str) -> Result<Self> {
        let input: GermInput = serde_json::from_str(text)?;
        if let Some(v) = input.schema {
            if v != SCHEMA_VERSION {
                return Err(Error::Validation(format!(
                    "unsupported schema version {v}, expected {SCHEMA_VERSION}"
                )));
            }
        }
        Ok(input)
    }

    /// Parses the equations only; no finiteness or ICIS check.
    pub fn germ<F: Field>(&self, field: CoefficientField) -> Result<GermSpec<F>> {
        GermSpec::parse(self.n, self.k, &self.vars, &self.h, &self.f, field)
    }

    pub fn unfolding<F: Field>(&self, germ: &GermSpec<F>) -> Result<Option<UnfoldingSpec<F>>> {
        self.unfolding
            .as_ref()
            .map(|u| UnfoldingSpec::parse(germ.clone(), &u.u_vars, &u.components))
            .transpose()
    }

    /// Parses and validates: `X` must be an ICIS and `f^` finite. Returns the
    /// germ and the Tjurina number of `X`.
    pub fn validate<F: Field>(&self, field: CoefficientField, budget: &Budget) -> Result<(GermSpec<F>, u64)> {
        let germ = self.germ::<F>(field)?;
        let tau = germ.check_icis(budget)?;
        build_fhat(&germ, budget)?;
        self.unfolding(&germ)?;
        Ok((germ, tau))
    }
}

pub fn load_germ(path: &Path) -> Result<GermInput> {
    GermInput::from_json(&std::fs::read_to_string(path)?)
}
