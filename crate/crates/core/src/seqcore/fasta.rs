use std::collections::HashSet;
use std::path::Path;

use super::Sequence;
use crate::{Error, Result};

/// Parses FASTA text. The id is the first whitespace-delimited token of the
/// header; sequence lines are concatenated with whitespace stripped and
/// upper-cased. Ids must be unique.
pub fn parse_fasta(text: &str) -> Result<Vec<Sequence>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut current: Option<(String, Vec<u8>)> = None;

    let flush = |entry: Option<(String, Vec<u8>)>, out: &mut Vec<Sequence>| {
        if let Some((id, residues)) = entry {
            out.push(Sequence::new(id, residues));
        }
    };

    for (n, line) in text.lines().enumerate() {
        if let Some(header) = line.strip_prefix('>') {
            flush(current.take(), &mut out);
            let id = header.split_whitespace().next().unwrap_or_default().to_string();
            if id.is_empty() {
                return Err(Error::Dataset(format!("FASTA line {}: empty identifier", n + 1)));
            }
            if !seen.insert(id.clone()) {
                return Err(Error::Dataset(format!("FASTA line {}: duplicate id '{id}'", n + 1)));
            }
            current = Some((id, Vec::new()));
        } else if line.starts_with(';') {
            continue;
        } else {
            let residues = line.bytes().filter(|b| !b.is_ascii_whitespace());
            match current.as_mut() {
                Some((_, buf)) => buf.extend(residues),
                None if line.trim().is_empty() => {}
                None => {
                    return Err(Error::Dataset(format!(
                        "FASTA line {}: sequence data before the first header",
                        n + 1
                    )))
                }
            }
        }
    }
    flush(current.take(), &mut out);
    Ok(out)
}

pub fn read_fasta(path: impl AsRef<Path>) -> Result<Vec<Sequence>> {
    let text = std::fs::read_to_string(path.as_ref())?;
    parse_fasta(&text)
}
