use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Serialize;
use tempfile::NamedTempFile;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Csv,
    Json,
    Svg,
    /// Polygon interchange files, written whatever the format selection.
    Polygon,
}

/// Files produced by one command, held in memory until the command has
/// finished so a failing run writes nothing.
#[derive(Default)]
pub struct Outputs {
    files: Vec<(String, Kind, String)>,
}

impl Outputs {
    pub fn json<T: Serialize>(&mut self, name: impl Into<String>, value: &T) {
        let text = serde_json::to_string_pretty(value).expect("reports serialize");
        self.files.push((name.into(), Kind::Json, text + "\n"));
    }

    pub fn csv(&mut self, name: impl Into<String>, text: String) {
        self.files.push((name.into(), Kind::Csv, text));
    }

    pub fn svg(&mut self, name: impl Into<String>, text: String) {
        self.files.push((name.into(), Kind::Svg, text));
    }

    pub fn polygon(&mut self, name: impl Into<String>, text: String) {
        self.files.push((name.into(), Kind::Polygon, text + "\n"));
    }

    fn selected(&self, format: Format) -> impl Iterator<Item = &(String, Kind, String)> {
        self.files.iter().filter(move |(_, kind, _)| {
            matches!(
                (format, kind),
                (_, Kind::Polygon)
                    | (Format::All, _)
                    | (Format::Csv, Kind::Csv)
                    | (Format::Json, Kind::Json)
                    | (Format::Svg, Kind::Svg)
            )
        })
    }

    /// Stages every file in `dir` first, then renames them into place.
    pub fn write(&self, dir: &Path, format: Format) -> Result<Vec<PathBuf>, CliError> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let mut staged = Vec::new();
        for (name, _, text) in self.selected(format) {
            let target = dir.join(name);
            let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
            tmp.write_all(text.as_bytes()).map_err(|e| CliError::io(&target, e))?;
            tmp.as_file().sync_all().map_err(|e| CliError::io(&target, e))?;
            staged.push((tmp, target));
        }
        let mut written = Vec::new();
        for (tmp, target) in staged {
            tmp.persist(&target).map_err(|e| CliError::io(&target, e.error))?;
            written.push(target);
        }
        Ok(written)
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}
