use std::fs;
use std::io::{Read, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{Context, Result};
use kdilation::document::ComplexDocument;
use serde::Serialize;

/// `LO..HI`, both ends included.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeRange {
    pub lo: i64,
    pub hi: i64,
}

impl DegreeRange {
    pub fn inclusive(self) -> RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

impl FromStr for DegreeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, got `{s}`"))?;
        let parse = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("`{x}`: {e}"));
        let (lo, hi) = (parse(lo)?, parse(hi.trim_start_matches('='))?);
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(DegreeRange { lo, hi })
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("reading standard input")?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

pub fn read_document(path: &Path) -> Result<ComplexDocument> {
    let text = read_text(path)?;
    ComplexDocument::from_json(&text).with_context(|| format!("parsing {}", display(path)))
}

fn display(path: &Path) -> String {
    if path == Path::new("-") {
        "standard input".into()
    } else {
        path.display().to_string()
    }
}

pub fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    let mut out = std::io::stdout().lock();
    writeln!(out, "{text}")?;
    Ok(())
}

/// Writes a document to `output`, or to standard output.
pub fn emit_document(doc: &ComplexDocument, output: Option<&PathBuf>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, doc.to_json()).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().lock().write_all(doc.to_json().as_bytes())?;
            Ok(())
        }
    }
}
