//! File formats.

pub mod dat;
pub mod dzn;
pub mod edgelist;
pub mod json;
pub mod report;
pub mod solution;

use std::fs;
use std::path::{Path, PathBuf};

use ctw_core::Instance;
use thiserror::Error;

pub use dat::{emit_dat, parse_dat, DatError, DatWarning};
pub use dzn::emit_dzn;
pub use json::{emit_json, parse_json, JsonError};
pub use solution::{parse_solution, SolutionFile};

pub type LoadWarning = DatWarning;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum InstanceFormat {
    Dat,
    Dzn,
    Json,
}

impl InstanceFormat {
    pub fn from_path(path: &Path) -> Option<Self> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "dat" => Some(InstanceFormat::Dat),
            "dzn" => Some(InstanceFormat::Dzn),
            "json" => Some(InstanceFormat::Json),
            _ => None,
        }
    }

    /// `.dzn` is written but not read.
    pub fn is_readable(self) -> bool {
        self != InstanceFormat::Dzn
    }

    pub fn extension(self) -> &'static str {
        match self {
            InstanceFormat::Dat => "dat",
            InstanceFormat::Dzn => "dzn",
            InstanceFormat::Json => "json",
        }
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Dat { path: PathBuf, source: DatError },
    #[error("{}: {source}", path.display())]
    Json { path: PathBuf, source: JsonError },
    #[error("{}: cannot read instances in this format", path.display())]
    Unsupported { path: PathBuf },
}

/// Parses text in the given format.
pub fn parse_instance(text: &str, format: InstanceFormat) -> Result<(Instance, Vec<LoadWarning>), ParseError> {
    match format {
        InstanceFormat::Dat => Ok(dat::parse_dat_with_warnings(text)?),
        InstanceFormat::Json => {
            let (inst, dups) = json::parse_json_with_warnings(text)?;
            Ok((inst, dups.into_iter().map(DatWarning::Duplicates).collect()))
        }
        InstanceFormat::Dzn => Err(ParseError::Unsupported),
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error(transparent)]
    Dat(#[from] DatError),
    #[error(transparent)]
    Json(#[from] JsonError),
    #[error("cannot read instances in this format")]
    Unsupported,
}

/// Reads an instance, choosing the format by extension. Files without a
/// known extension are read as JSON if they start with `{`, else as DAT.
pub fn read_instance(path: &Path) -> Result<(Instance, Vec<LoadWarning>), LoadError> {
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let format = InstanceFormat::from_path(path).unwrap_or(if text.trim_start().starts_with('{') {
        InstanceFormat::Json
    } else {
        InstanceFormat::Dat
    });
    let path = path.to_path_buf();
    parse_instance(&text, format).map_err(|e| match e {
        ParseError::Dat(source) => LoadError::Dat { path, source },
        ParseError::Json(source) => LoadError::Json { path, source },
        ParseError::Unsupported => LoadError::Unsupported { path },
    })
}

pub fn emit_instance(inst: &Instance, format: InstanceFormat) -> String {
    match format {
        InstanceFormat::Dat => emit_dat(inst),
        InstanceFormat::Dzn => emit_dzn(inst),
        InstanceFormat::Json => emit_json(inst),
    }
}
