//! Catalog files: a JSON array of algebras with structure constants, optional
//! invariants, optional user semi-invariants and an optional block of
//! expected results that runs are checked against.
//!
//! ```json
//! [{"name": "aff1", "dim": 2, "brackets": {"1,2": {"2": "1"}},
//!   "casimirs": [], "semi_invariants": [],
//!   "expected": {"index": 0, "p_g": "x2", "completeness": "Complete",
//!                "trdeg": {"fa": 0, "ftilde": 1, "fsi": 1}}}]
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::liealg::{LieAlgebra, LieError, StructureConstant};
use crate::poly::{parse_polynomial, parse_rational, ParseError, Polynomial};

pub const BUILTIN_CATALOG: &str = include_str!("../data/catalog.json");

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("cannot read catalog: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed catalog JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{name}: {msg}")]
    Schema { name: String, msg: String },
    #[error("{name}: cannot parse {what} {text:?}: {source}")]
    Parse {
        name: String,
        what: &'static str,
        text: String,
        source: ParseError,
    },
    #[error("{name}: {source}")]
    Lie { name: String, source: LieError },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ExpectedTrdeg {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fa: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ftilde: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fsi: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_g: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub completeness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trdeg: Option<ExpectedTrdeg>,
}

/// One catalog record as written in the file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub brackets: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub casimirs: Vec<String>,
    #[serde(default)]
    pub semi_invariants: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

/// A validated catalog record.
#[derive(Clone, Debug)]
pub struct Entry {
    pub record: CatalogEntry,
    pub algebra: LieAlgebra,
}

fn parse_index(name: &str, s: &str, dim: usize) -> Result<usize, CatalogError> {
    let schema = |msg: String| CatalogError::Schema {
        name: name.to_string(),
        msg,
    };
    let k: usize = s.trim().parse().map_err(|_| schema(format!("bad index {s:?}")))?;
    if k == 0 || k > dim {
        return Err(schema(format!("index {k} outside 1..={dim}")));
    }
    Ok(k - 1)
}

impl CatalogEntry {
    pub fn to_algebra(&self) -> Result<LieAlgebra, CatalogError> {
        let name = &self.name;
        let mut raw = Vec::new();
        for (pair, row) in &self.brackets {
            let Some((a, b)) = pair.split_once(',') else {
                return Err(CatalogError::Schema {
                    name: name.clone(),
                    msg: format!("bracket key {pair:?} is not \"i,j\""),
                });
            };
            let i = parse_index(name, a, self.dim)?;
            let j = parse_index(name, b, self.dim)?;
            if i >= j {
                return Err(CatalogError::Schema {
                    name: name.clone(),
                    msg: format!("bracket key {pair:?} must have i < j"),
                });
            }
            for (ks, vs) in row {
                let k = parse_index(name, ks, self.dim)?;
                let value = parse_rational(vs).map_err(|source| CatalogError::Parse {
                    name: name.clone(),
                    what: "structure constant",
                    text: vs.clone(),
                    source,
                })?;
                raw.push(StructureConstant::new(i, j, k, value));
            }
        }
        let lie = |source| CatalogError::Lie {
            name: name.clone(),
            source,
        };
        let polys = |texts: &[String], what: &'static str| -> Result<Vec<Polynomial>, CatalogError> {
            texts
                .iter()
                .map(|t| {
                    parse_polynomial(t, self.dim).map_err(|source| CatalogError::Parse {
                        name: name.clone(),
                        what,
                        text: t.clone(),
                        source,
                    })
                })
                .collect()
        };
        LieAlgebra::validate(name, self.dim, &raw)
            .map_err(lie)?
            .with_casimirs(polys(&self.casimirs, "casimir")?)
            .map_err(lie)?
            .with_semi_invariants(polys(&self.semi_invariants, "semi-invariant")?)
            .map_err(lie)
    }
}

pub fn parse_catalog(text: &str) -> Result<Vec<Entry>, CatalogError> {
    let records: Vec<CatalogEntry> = serde_json::from_str(text)?;
    records
        .into_iter()
        .map(|record| {
            let algebra = record.to_algebra()?;
            Ok(Entry { record, algebra })
        })
        .collect()
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Vec<Entry>, CatalogError> {
    parse_catalog(&std::fs::read_to_string(path)?)
}

pub fn builtin_entries() -> Vec<Entry> {
    parse_catalog(BUILTIN_CATALOG).expect("bundled catalog is valid")
}

pub fn builtin_all() -> Vec<LieAlgebra> {
    builtin_entries().into_iter().map(|e| e.algebra).collect()
}

/// A bundled algebra by name; panics if absent.
pub fn builtin(name: &str) -> LieAlgebra {
    builtin_entries()
        .into_iter()
        .find(|e| e.record.name == name)
        .unwrap_or_else(|| panic!("no bundled algebra named {name}"))
        .algebra
}
