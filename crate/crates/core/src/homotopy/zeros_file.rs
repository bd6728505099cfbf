//! Plain-text zeros: one point per line as `re im re im ...`, `#` comments.

use std::path::Path;

use num_complex::Complex64;
use thiserror::Error;

use crate::poly::ComplexPoint;

#[derive(Debug, Error)]
pub enum LoadZerosError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub fn parse_zeros(text: &str, nvars: usize) -> Result<Vec<ComplexPoint>, LoadZerosError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let values = body
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>().map_err(|_| LoadZerosError::Parse {
                    line,
                    message: format!("`{tok}` is not a number"),
                })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        if values.len() != 2 * nvars {
            return Err(LoadZerosError::Parse {
                line,
                message: format!(
                    "expected {} values (re im per variable), found {}",
                    2 * nvars,
                    values.len()
                ),
            });
        }
        let comps = values.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect();
        let point = ComplexPoint::new(comps).ok_or_else(|| LoadZerosError::Parse {
            line,
            message: "non-finite component".to_string(),
        })?;
        out.push(point);
    }
    Ok(out)
}

pub fn load_zeros(path: &Path, nvars: usize) -> Result<Vec<ComplexPoint>, LoadZerosError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadZerosError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_zeros(&text, nvars)
}
