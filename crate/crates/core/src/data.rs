//! Shipped data: exceptional seed quivers and genus-one triangulations,
//! checked against a sha256 manifest.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::io::parse_quiver;
use crate::quiver::Quiver;

#[derive(Error, Debug)]
pub enum DataError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{path}: checksum mismatch (manifest {expected}, file {found})")]
    Checksum { path: String, expected: String, found: String },
    #[error("{0} is not listed in the manifest")]
    Unlisted(String),
    #[error("unknown exceptional type `{0}`")]
    UnknownType(String),
}

/// Root of the data directory: `$ARROWSCOPE_DATA` if set, else `data/` at the
/// workspace root.
pub fn data_dir() -> PathBuf {
    match std::env::var_os("ARROWSCOPE_DATA") {
        Some(d) => PathBuf::from(d),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"),
    }
}

fn read(path: &Path) -> Result<String, DataError> {
    std::fs::read_to_string(path).map_err(|source| DataError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Parses `MANIFEST` lines `<sha256 hex>  <relative path>`.
pub fn manifest() -> Result<Vec<(String, String)>, DataError> {
    let path = data_dir().join("MANIFEST");
    let text = read(&path)?;
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut it = l.split_whitespace();
            match (it.next(), it.next()) {
                (Some(h), Some(p)) => Ok((h.to_string(), p.to_string())),
                _ => Err(DataError::Parse {
                    path: path.display().to_string(),
                    message: format!("bad manifest line `{l}`"),
                }),
            }
        })
        .collect()
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Reads a data file after checking its digest against the manifest.
pub fn read_verified(relative: &str) -> Result<String, DataError> {
    let expected = manifest()?
        .into_iter()
        .find(|(_, p)| p == relative)
        .map(|(h, _)| h)
        .ok_or_else(|| DataError::Unlisted(relative.to_string()))?;
    let path = data_dir().join(relative);
    let text = read(&path)?;
    let found = sha256_hex(text.as_bytes());
    if found != expected {
        return Err(DataError::Checksum {
            path: relative.to_string(),
            expected,
            found,
        });
    }
    Ok(text)
}

/// Names of the shipped exceptional seeds.
pub const EXCEPTIONAL: [&str; 11] = [
    "E6", "E7", "E8", "E6~", "E7~", "E8~", "E6(1,1)", "E7(1,1)", "E8(1,1)", "X6", "X7",
];

fn file_stem(name: &str) -> Option<&'static str> {
    Some(match name {
        "E6" => "e6",
        "E7" => "e7",
        "E8" => "e8",
        "E6~" => "e6t",
        "E7~" => "e7t",
        "E8~" => "e8t",
        "E6(1,1)" => "e6_11",
        "E7(1,1)" => "e7_11",
        "E8(1,1)" => "e8_11",
        "X6" => "x6",
        "X7" => "x7",
        _ => return None,
    })
}

/// Loads the seed quiver of an exceptional mutation-finite type. Accepts the
/// names in [`EXCEPTIONAL`] or the file stems (`e6t`, `e7_11`, ...).
pub fn exceptional_seed(name: &str) -> Result<Quiver, DataError> {
    let stem = file_stem(name)
        .or_else(|| EXCEPTIONAL.iter().filter_map(|n| file_stem(n)).find(|s| *s == name))
        .ok_or_else(|| DataError::UnknownType(name.to_string()))?;
    let rel = format!("exceptional/{stem}.qvr");
    let text = read_verified(&rel)?;
    parse_quiver(&text).map_err(|e| DataError::Parse {
        path: rel,
        message: e.to_string(),
    })
}
