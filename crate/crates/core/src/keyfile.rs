//! Plain-text key files.
//!
//! One `name=value` pair per line, LF endings, every field mandatory. Reals
//! are written with 17 significant digits, enough to reproduce any `f64`.
//! Blank lines and lines starting with `#` are ignored.

use crate::io::write_atomic;
use crate::key::{CipherKey, CipherMode, EpsMode};
use crate::maps::{LogisticParams, MapParams};
use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use thiserror::Error;

const FIELDS: [&str; 12] = [
    "x0",
    "y0",
    "a1",
    "n1",
    "a2",
    "n2",
    "logistic_r",
    "logistic_x0",
    "n_logistic",
    "n_burn",
    "eps_mode",
    "cipher_mode",
];

#[derive(Debug, Error)]
pub enum KeyFileError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("missing field `{0}`")]
    Missing(&'static str),
    #[error("field `{field}`: {reason}")]
    Value { field: &'static str, reason: String },
    #[error(transparent)]
    Invalid(#[from] crate::Error),
}

fn real(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn serialize(key: &CipherKey) -> String {
    let mut out = String::new();
    let values = [
        real(key.x0),
        real(key.y0),
        real(key.p1.a()),
        key.p1.n().to_string(),
        real(key.p2.a()),
        key.p2.n().to_string(),
        real(key.lp.r()),
        real(key.lp.x0()),
        key.n_logistic.to_string(),
        key.n_burn.to_string(),
        key.eps_mode.to_string(),
        key.cipher_mode.to_string(),
    ];
    for (name, value) in FIELDS.iter().zip(values) {
        let _ = writeln!(out, "{name}={value}");
    }
    out
}

/// Parses and validates a key file.
pub fn parse(text: &str) -> Result<CipherKey, KeyFileError> {
    let mut seen: HashMap<&'static str, &str> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let syntax = |reason: String| KeyFileError::Syntax {
            line: i + 1,
            reason,
        };
        let (name, value) = line
            .split_once('=')
            .ok_or_else(|| syntax("expected name=value".into()))?;
        let name = name.trim();
        let field = FIELDS
            .iter()
            .find(|f| **f == name)
            .ok_or_else(|| syntax(format!("unknown field `{name}`")))?;
        if seen.insert(field, value.trim()).is_some() {
            return Err(syntax(format!("duplicate field `{name}`")));
        }
    }
    let get = |field: &'static str| seen.get(field).copied().ok_or(KeyFileError::Missing(field));
    fn num<T: std::str::FromStr>(field: &'static str, v: &str) -> Result<T, KeyFileError> {
        v.parse().map_err(|_| KeyFileError::Value {
            field,
            reason: format!("cannot parse `{v}`"),
        })
    }
    let f = |field| get(field).and_then(|v| num::<f64>(field, v));
    let u = |field| get(field).and_then(|v| num::<u32>(field, v));

    let key = CipherKey {
        x0: f("x0")?,
        y0: f("y0")?,
        p1: MapParams::new(f("a1")?, u("n1")?)?,
        p2: MapParams::new(f("a2")?, u("n2")?)?,
        lp: LogisticParams::new(f("logistic_r")?, f("logistic_x0")?)?,
        n_logistic: u("n_logistic")?,
        n_burn: u("n_burn")?,
        eps_mode: get("eps_mode")?
            .parse::<EpsMode>()
            .map_err(|reason| KeyFileError::Value {
                field: "eps_mode",
                reason,
            })?,
        cipher_mode: get("cipher_mode")?
            .parse::<CipherMode>()
            .map_err(|reason| KeyFileError::Value {
                field: "cipher_mode",
                reason,
            })?,
    };
    key.validate()?;
    Ok(key)
}

pub fn read_key(path: impl AsRef<Path>) -> Result<CipherKey, KeyFileError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| KeyFileError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse(&text)
}

pub fn write_key(key: &CipherKey, path: impl AsRef<Path>) -> Result<(), KeyFileError> {
    let path = path.as_ref();
    write_atomic(path, serialize(key).as_bytes()).map_err(|source| KeyFileError::Io {
        path: path.to_path_buf(),
        source,
    })
}
