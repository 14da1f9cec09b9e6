//! The monoid mini-language: `trunc:L`, `zmod:m`, `pset-disjoint:k`,
//! `pset-union:k` and `table:<path>`.

use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::pmonoid::{
    make_cyclic_group, make_powerset_disjoint, make_powerset_union, make_trunc_add, MonoidError,
    MonoidTable, PartialMonoid,
};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid monoid: {0}")]
    Invalid(#[from] MonoidError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed table {path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
}

fn parse_error(position: usize, message: impl Into<String>) -> SpecError {
    SpecError::Parse {
        position,
        message: message.into(),
    }
}

/// A parsed monoid specification, before construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoidKind {
    Trunc(usize),
    ZMod(usize),
    PsetDisjoint(usize),
    PsetUnion(usize),
    Table(PathBuf),
}

impl MonoidKind {
    pub fn build(&self) -> Result<PartialMonoid, SpecError> {
        match self {
            MonoidKind::Trunc(l) => Ok(make_trunc_add(*l)?),
            MonoidKind::ZMod(m) => Ok(make_cyclic_group(*m)?),
            MonoidKind::PsetDisjoint(k) => Ok(make_powerset_disjoint(*k)?),
            MonoidKind::PsetUnion(k) => Ok(make_powerset_union(*k)?),
            MonoidKind::Table(path) => load_table(path),
        }
    }
}

impl fmt::Display for MonoidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidKind::Trunc(l) => write!(f, "trunc:{l}"),
            MonoidKind::ZMod(m) => write!(f, "zmod:{m}"),
            MonoidKind::PsetDisjoint(k) => write!(f, "pset-disjoint:{k}"),
            MonoidKind::PsetUnion(k) => write!(f, "pset-union:{k}"),
            MonoidKind::Table(path) => write!(f, "table:{}", path.display()),
        }
    }
}

pub fn parse_monoid_kind(s: &str) -> Result<MonoidKind, SpecError> {
    let colon = s
        .find(':')
        .ok_or_else(|| parse_error(s.len(), "expected '<kind>:<parameter>'"))?;
    let (kind, arg) = (&s[..colon], &s[colon + 1..]);
    let arg_pos = colon + 1;
    if kind == "table" {
        if arg.is_empty() {
            return Err(parse_error(arg_pos, "missing table path"));
        }
        return Ok(MonoidKind::Table(PathBuf::from(arg)));
    }
    let number = || -> Result<usize, SpecError> {
        if arg.is_empty() {
            return Err(parse_error(arg_pos, "missing numeric parameter"));
        }
        if let Some(bad) = arg.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
            return Err(parse_error(arg_pos + bad.0, format!("unexpected character {:?}", bad.1)));
        }
        arg.parse()
            .map_err(|_| parse_error(arg_pos, "parameter does not fit in a machine integer"))
    };
    match kind {
        "trunc" => Ok(MonoidKind::Trunc(number()?)),
        "zmod" => {
            let m = number()?;
            if m == 0 {
                return Err(parse_error(arg_pos, "zmod order must be at least 1"));
            }
            Ok(MonoidKind::ZMod(m))
        }
        "pset-disjoint" => Ok(MonoidKind::PsetDisjoint(number()?)),
        "pset-union" => Ok(MonoidKind::PsetUnion(number()?)),
        _ => Err(parse_error(0, format!("unknown monoid kind {kind:?}"))),
    }
}

pub fn parse_monoid_spec(s: &str) -> Result<PartialMonoid, SpecError> {
    parse_monoid_kind(s)?.build()
}

pub fn load_table(path: &Path) -> Result<PartialMonoid, SpecError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io {
        path: shown.clone(),
        source,
    })?;
    let table: MonoidTable =
        serde_json::from_str(&text).map_err(|source| SpecError::Json { path: shown, source })?;
    Ok(PartialMonoid::from_table(&table)?)
}
