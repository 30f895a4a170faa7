use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::field::CoefficientField;
use crate::error::{Error, Result};

/// A named group of variables (source, target, parameters, ...).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub name: String,
    pub vars: Vec<usize>,
}

/// Variables of a polynomial ring, partitioned into blocks, plus the
/// coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    vars: Vec<String>,
    blocks: Vec<Block>,
    field: CoefficientField,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingSpec {
    /// Rational ring with a single block named `x`.
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Result<Arc<RingSpec>> {
        RingSpec::with_field(vars, CoefficientField::Rational)
    }

    pub fn with_field<S: AsRef<str>>(vars: &[S], field: CoefficientField) -> Result<Arc<RingSpec>> {
        let names: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        RingSpec::from_blocks(&[("x", names)], field)
    }

    /// Builds a ring whose variables are the concatenation of the blocks.
    /// Empty blocks are treated as absent.
    pub fn from_blocks<S: AsRef<str>>(blocks: &[(S, Vec<String>)], field: CoefficientField) -> Result<Arc<RingSpec>> {
        let mut vars = Vec::new();
        let mut out = Vec::new();
        let mut seen_blocks = HashSet::new();
        for (name, names) in blocks {
            if names.is_empty() {
                continue;
            }
            if !seen_blocks.insert(name.as_ref().to_string()) {
                return Err(Error::InvalidRing(format!("duplicate block `{}`", name.as_ref())));
            }
            let start = vars.len();
            vars.extend(names.iter().cloned());
            out.push(Block {
                name: name.as_ref().to_string(),
                vars: (start..vars.len()).collect(),
            });
        }
        let mut seen = HashSet::new();
        for v in &vars {
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!("`{v}` is not a valid variable name")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidRing(format!("variable `{v}` declared twice")));
            }
        }
        Ok(Arc::new(RingSpec {
            vars,
            blocks: out,
            field,
        }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn names(&self) -> &[String] {
        &self.vars
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Variable indices of a block; an absent block is empty.
    pub fn block(&self, name: &str) -> &[usize] {
        self.blocks
            .iter()
            .find(|b| b.name == name)
            .map(|b| b.vars.as_slice())
            .unwrap_or(&[])
    }

    /// The same variables over another coefficient field.
    pub fn over(&self, field: CoefficientField) -> Arc<RingSpec> {
        Arc::new(RingSpec {
            vars: self.vars.clone(),
            blocks: self.blocks.clone(),
            field,
        })
    }

    /// Ring with the given variable indices removed; blocks that become empty
    /// disappear.
    pub fn without(&self, drop: &[usize]) -> Arc<RingSpec> {
        let keep: Vec<usize> = (0..self.nvars()).filter(|i| !drop.contains(i)).collect();
        let blocks: Vec<(String, Vec<String>)> = self
            .blocks
            .iter()
            .map(|b| {
                let names = b
                    .vars
                    .iter()
                    .filter(|i| keep.contains(i))
                    .map(|&i| self.vars[i].clone())
                    .collect();
                (b.name.clone(), names)
            })
            .collect();
        RingSpec::from_blocks(&blocks, self.field).expect("a sub-ring of a valid ring is valid")
    }

    /// This ring followed by one extra block; clashing names get primes
    /// appended (`t`, `t_`, `t__`, ...).
    pub fn extend(&self, block: &str, names: &[String]) -> Arc<RingSpec> {
        let mut blocks: Vec<(String, Vec<String>)> = self
            .blocks
            .iter()
            .map(|b| (b.name.clone(), b.vars.iter().map(|&i| self.vars[i].clone()).collect()))
            .collect();
        let mut taken: HashSet<String> = self.vars.iter().cloned().collect();
        let mut fresh = Vec::new();
        for n in names {
            let mut cand = n.clone();
            while taken.contains(&cand) {
                cand.push('_');
            }
            taken.insert(cand.clone());
            fresh.push(cand);
        }
        let mut block_name = block.to_string();
        while blocks.iter().any(|(b, _)| *b == block_name) {
            block_name.push('_');
        }
        blocks.push((block_name, fresh));
        RingSpec::from_blocks(&blocks, self.field).expect("fresh names are unique")
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))
    }
}
