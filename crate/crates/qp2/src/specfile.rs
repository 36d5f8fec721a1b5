//! The sectioned key-value file format describing an algebra to work on:
//! a field section, either an inline algebra section or a catalog reference,
//! and numeric options.
//!
//! ```text
//! format_version = 1
//!
//! [field]
//! char = 0
//! minpoly = t^2 + 1        # optional, monic in t over the prime field
//!
//! [algebra]
//! generators = x1, x2, x3
//! relations = 2*x1*x2 - x2*x1 ; 2*x2*x3 - x3*x2 + x1^2
//!
//! # ... or instead of [algebra]:
//! [catalog]
//! name = nodal
//! lambda = 2
//!
//! [options]
//! truncation = 6
//! power_bound = 12
//! ```

use crate::catalog::{self, CatalogError, Expected};
use crate::field::{Field, FieldError};
use crate::ncpoly::GenCtx;
use crate::parse::{parse_minpoly, parse_ncpoly_list, parse_scalar, ParseError};
use crate::quadalg::{QuadError, QuadraticAlgebra};
use std::collections::BTreeMap;
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing or unsupported format_version (expected {FORMAT_VERSION})")]
    BadFormatVersion,
    #[error("missing [{0}] section")]
    MissingSection(&'static str),
    #[error("need exactly one of [algebra] or [catalog]")]
    AmbiguousAlgebra,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

#[derive(Debug, Clone)]
pub struct AlgebraSpec {
    pub field: Field,
    pub algebra: QuadraticAlgebra,
    /// Expected metadata when the algebra came from the catalog.
    pub expected: Option<Expected>,
    pub catalog_name: Option<String>,
    pub truncation: usize,
    pub power_bound: usize,
}

type Sections = BTreeMap<String, Vec<(usize, String, String)>>;

fn split_sections(text: &str) -> Result<(Sections, Option<String>), SpecFileError> {
    let mut sections: Sections = BTreeMap::new();
    let mut current: Option<String> = None;
    let mut version: Option<String> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[') {
            let Some(name) = name.strip_suffix(']') else {
                return Err(SpecFileError::Syntax {
                    line,
                    message: "unterminated section header".into(),
                });
            };
            current = Some(name.trim().to_string());
            sections.entry(name.trim().to_string()).or_default();
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(SpecFileError::Syntax {
                line,
                message: "expected `key = value`".into(),
            });
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        match &current {
            None => {
                if key == "format_version" {
                    version = Some(value);
                } else {
                    return Err(SpecFileError::Syntax {
                        line,
                        message: format!("key `{}` outside any section", key),
                    });
                }
            }
            Some(section) => {
                sections
                    .get_mut(section)
                    .unwrap()
                    .push((line, key, value));
            }
        }
    }
    Ok((sections, version))
}

fn lookup<'a>(entries: &'a [(usize, String, String)], key: &str) -> Option<&'a str> {
    entries
        .iter()
        .find(|(_, k, _)| k == key)
        .map(|(_, _, v)| v.as_str())
}

/// Parse a field description of the form used by the `[field]` section.
pub fn field_from_parts(
    characteristic: u64,
    minpoly: Option<&str>,
    trusted: bool,
) -> Result<Field, SpecFileError> {
    let prime = Field::with_characteristic(characteristic)?;
    match minpoly {
        None => Ok(prime),
        Some(src) => {
            let coeffs = parse_minpoly(src, &prime)?;
            Ok(prime.adjoin_root(&coeffs, trusted)?)
        }
    }
}

/// Compact field syntax for command lines: `0`, `7`, `0:t^2+1`, `3:t^2+1`.
pub fn parse_field_spec(src: &str) -> Result<Field, SpecFileError> {
    let (char_part, minpoly) = match src.split_once(':') {
        Some((c, m)) => (c.trim(), Some(m.trim())),
        None => (src.trim(), None),
    };
    let characteristic: u64 = char_part.parse().map_err(|_| SpecFileError::Syntax {
        line: 0,
        message: format!("bad characteristic `{}`", char_part),
    })?;
    field_from_parts(characteristic, minpoly, false)
}

pub fn parse_spec(text: &str) -> Result<AlgebraSpec, SpecFileError> {
    let (sections, version) = split_sections(text)?;
    if version.as_deref() != Some("1") {
        return Err(SpecFileError::BadFormatVersion);
    }
    let field_entries = sections
        .get("field")
        .ok_or(SpecFileError::MissingSection("field"))?;
    let characteristic: u64 = lookup(field_entries, "char")
        .ok_or(SpecFileError::MissingSection("field"))?
        .parse()
        .map_err(|_| SpecFileError::Syntax {
            line: 0,
            message: "char must be 0 or a prime".into(),
        })?;
    let trusted = lookup(field_entries, "trusted") == Some("true");
    let field = field_from_parts(characteristic, lookup(field_entries, "minpoly"), trusted)?;

    let has_algebra = sections.contains_key("algebra");
    let has_catalog = sections.contains_key("catalog");
    if has_algebra == has_catalog {
        return Err(SpecFileError::AmbiguousAlgebra);
    }

    let (algebra, expected, catalog_name) = if has_algebra {
        let entries = &sections["algebra"];
        let gens = lookup(entries, "generators").ok_or(SpecFileError::Syntax {
            line: 0,
            message: "missing generators".into(),
        })?;
        let names: Vec<&str> = gens.split(',').map(|s| s.trim()).collect();
        let ctx = GenCtx::new(&field, &names).map_err(QuadError::Nc)?;
        let rels_src = lookup(entries, "relations").unwrap_or("");
        let relations = parse_ncpoly_list(rels_src, &ctx)?;
        (QuadraticAlgebra::new(&ctx, &relations)?, None, None)
    } else {
        let entries = &sections["catalog"];
        let name = lookup(entries, "name").ok_or(SpecFileError::Syntax {
            line: 0,
            message: "missing catalog name".into(),
        })?;
        let bypass = lookup(entries, "bypass_constraints") == Some("true");
        let mut params = BTreeMap::new();
        for (_, key, value) in entries {
            if key == "name" || key == "bypass_constraints" {
                continue;
            }
            params.insert(key.clone(), parse_scalar(value, &field)?);
        }
        let built = catalog::build(name, &params, &field, bypass)?;
        (built.algebra, Some(built.expected), Some(name.to_string()))
    };

    let mut truncation = crate::ncgroebner::DEFAULT_DEGREE_BOUND;
    let mut power_bound = 12usize;
    if let Some(entries) = sections.get("options") {
        if let Some(v) = lookup(entries, "truncation") {
            truncation = v.parse().map_err(|_| SpecFileError::Syntax {
                line: 0,
                message: "truncation must be a positive integer".into(),
            })?;
        }
        if let Some(v) = lookup(entries, "power_bound") {
            power_bound = v.parse().map_err(|_| SpecFileError::Syntax {
                line: 0,
                message: "power_bound must be a positive integer".into(),
            })?;
        }
    }

    Ok(AlgebraSpec {
        field,
        algebra,
        expected,
        catalog_name,
        truncation,
        power_bound,
    })
}
