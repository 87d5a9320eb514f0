//! Datum files and the built-in catalog.
//!
//! A datum file is JSON with fields `name`, `rank`, `roots`, `coroots`,
//! `simple`, `mu`, optional `galois` (integer matrices acting on `X`),
//! optional `pairing` (unimodular, defaults to the identity) and free-text
//! `comments`. Only integers are accepted.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::root_datum::{RootDatum, WeightVector};
use crate::shimura::{normalize_mu, ShimuraData};

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    pub name: String,
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub simple: Vec<usize>,
    pub mu: Vec<i64>,
    #[serde(default)]
    pub galois: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    pub pairing: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub comments: String,
}

fn field_error(source: &str, field: String, message: impl std::fmt::Display) -> Error {
    Error::Parse {
        source_name: source.to_string(),
        message: format!("field `{field}`: {message}"),
    }
}

fn square_matrix(source: &str, field: String, rows: &[Vec<i64>], rank: usize) -> Result<IntMatrix> {
    if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
        return Err(field_error(
            source,
            field,
            format!("expected a {rank}x{rank} integer matrix"),
        ));
    }
    IntMatrix::from_rows(rows.to_vec()).map_err(|e| field_error(source, String::new(), e))
}

impl DatumFile {
    pub fn parse(source: &str, text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            source_name: source.to_string(),
            message: format!("line {} column {}: {e}", e.line(), e.column()),
        })
    }

    /// Shape checks with field diagnostics only; the datum may still fail
    /// [`RootDatum::validate`].
    pub fn to_root_datum_unchecked(&self, source: &str) -> Result<RootDatum> {
        let rank = self.rank;
        for (field, list) in [("roots", &self.roots), ("coroots", &self.coroots)] {
            if let Some(i) = list.iter().position(|v| v.len() != rank) {
                return Err(field_error(
                    source,
                    format!("{field}[{i}]"),
                    format!("expected length {rank}"),
                ));
            }
        }
        if self.roots.len() != self.coroots.len() {
            return Err(field_error(
                source,
                "coroots".into(),
                "must match roots one-to-one",
            ));
        }
        if let Some(i) = self.simple.iter().position(|&k| k >= self.roots.len()) {
            return Err(field_error(
                source,
                format!("simple[{i}]"),
                "index out of range",
            ));
        }
        if self.mu.len() != rank {
            return Err(field_error(
                source,
                "mu".into(),
                format!("expected length {rank}"),
            ));
        }
        let galois = self
            .galois
            .iter()
            .enumerate()
            .map(|(i, m)| square_matrix(source, format!("galois[{i}]"), m, rank))
            .collect::<Result<Vec<_>>>()?;
        let mut datum = RootDatum::new(
            &self.name,
            rank,
            self.roots.clone(),
            self.coroots.clone(),
            self.simple.clone(),
        )
        .with_automorphisms(galois);
        if let Some(p) = &self.pairing {
            datum = datum.with_pairing(square_matrix(source, "pairing".into(), p, rank)?);
        }
        Ok(datum)
    }

    pub fn to_root_datum(&self, source: &str) -> Result<RootDatum> {
        let datum = self.to_root_datum_unchecked(source)?;
        datum.ensure_valid()?;
        Ok(datum)
    }

    pub fn load(&self, source: &str) -> Result<(RootDatum, ShimuraData)> {
        let datum = self.to_root_datum(source)?;
        let s = normalize_mu(&datum, &WeightVector::cocharacter(self.mu.clone()))?;
        Ok((datum, s))
    }
}

pub fn parse_datum(source: &str, text: &str) -> Result<(RootDatum, ShimuraData)> {
    DatumFile::parse(source, text)?.load(source)
}

pub fn load_datum(path: impl AsRef<Path>) -> Result<(RootDatum, ShimuraData)> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_datum(&path.display().to_string(), &text)
}

/// A catalog file, loaded or not.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub source: String,
    pub data: Result<ShimuraData>,
}

impl CatalogEntry {
    pub fn from_text(source: impl Into<String>, text: &str) -> Self {
        let source = source.into();
        let data = parse_datum(&source, text).map(|(_, s)| s);
        Self { source, data }
    }
}

const BUILTIN: [(&str, &str); 7] = [
    ("gl2.datum", include_str!("../catalog/gl2.datum")),
    ("gsp4.datum", include_str!("../catalog/gsp4.datum")),
    ("gsp6.datum", include_str!("../catalog/gsp6.datum")),
    ("gu21.datum", include_str!("../catalog/gu21.datum")),
    (
        "hilbert_gl2.datum",
        include_str!("../catalog/hilbert_gl2.datum"),
    ),
    ("so25.datum", include_str!("../catalog/so25.datum")),
    ("torus1.datum", include_str!("../catalog/torus1.datum")),
];

pub fn builtin_sources() -> impl Iterator<Item = (&'static str, &'static str)> {
    BUILTIN.into_iter()
}

pub fn builtin_catalog() -> Vec<CatalogEntry> {
    BUILTIN
        .iter()
        .map(|(name, text)| CatalogEntry::from_text(*name, text))
        .collect()
}

/// Every `*.datum` file in `dir`, sorted by file name. Unreadable files
/// become failed entries; an unreadable directory is an error.
pub fn load_catalog_dir(dir: impl AsRef<Path>) -> Result<Vec<CatalogEntry>> {
    let dir = dir.as_ref();
    let io = |e: std::io::Error| Error::Io {
        path: dir.display().to_string(),
        message: e.to_string(),
    };
    let mut paths: Vec<_> = fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "datum"))
        .collect();
    paths.sort();
    Ok(paths
        .iter()
        .map(|p| {
            let source = p
                .file_name()
                .map_or_else(String::new, |n| n.to_string_lossy().into_owned());
            match fs::read_to_string(p) {
                Ok(text) => CatalogEntry::from_text(source, &text),
                Err(e) => CatalogEntry {
                    source,
                    data: Err(Error::Io {
                        path: p.display().to_string(),
                        message: e.to_string(),
                    }),
                },
            }
        })
        .collect())
}
