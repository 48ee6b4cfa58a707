//! Reference sequences shipped in `data/`.

use std::path::Path;

use anyhow::{bail, Context, Result};
use num_bigint::BigUint;

use crate::sequences::Sequence;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenSequence {
    pub name: String,
    pub description: String,
    pub index_kind: String,
    pub values: Vec<BigUint>,
}

fn embedded(seq: Sequence) -> Option<&'static str> {
    Some(match seq {
        Sequence::Motzkin => include_str!("../data/motzkin.txt"),
        Sequence::ClosedTerms => include_str!("../data/closed_terms.txt"),
        Sequence::Closable => include_str!("../data/closable.txt"),
        Sequence::Unclosable => include_str!("../data/unclosable.txt"),
        Sequence::UniquelyClosable => include_str!("../data/uniquely_closable.txt"),
        Sequence::TypableClosedTerms => include_str!("../data/typable_closed_terms.txt"),
        Sequence::TypableSkeletons => include_str!("../data/typable_skeletons.txt"),
        Sequence::UntypableSkeletons => include_str!("../data/untypable_skeletons.txt"),
        Sequence::UniquelyTypable => include_str!("../data/uniquely_typable.txt"),
        Sequence::UniquelyClosableTypable => include_str!("../data/uniquely_closable_typable.txt"),
        Sequence::Catalan => include_str!("../data/catalan.txt"),
        Sequence::Binary => return None,
    })
}

/// Parses a data file: `#` comment lines, an optional `# index: KIND`
/// line, then one decimal value per line.
pub fn parse(name: &str, text: &str) -> Result<GoldenSequence> {
    let mut description = String::new();
    let mut index_kind = "size".to_string();
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            match comment.strip_prefix("index:") {
                Some(kind) => index_kind = kind.trim().to_string(),
                None if description.is_empty() => description = comment.to_string(),
                None => {}
            }
        } else if !line.is_empty() {
            let value = line.parse().with_context(|| {
                format!(
                    "{name}: line {} is not a natural number: {line:?}",
                    lineno + 1
                )
            })?;
            values.push(value);
        }
    }
    if values.is_empty() {
        bail!("{name}: no values");
    }
    Ok(GoldenSequence {
        name: name.to_string(),
        description,
        index_kind,
        values,
    })
}

/// Loads `seq` from `dir/<name>.txt` when a directory is given, otherwise
/// from the copy compiled into the binary.
pub fn load(seq: Sequence, dir: Option<&Path>) -> Result<GoldenSequence> {
    let name = seq.name();
    match dir {
        Some(dir) => {
            let path = dir.join(format!("{name}.txt"));
            let text = std::fs::read_to_string(&path)
                .with_context(|| format!("reading {}", path.display()))?;
            parse(name, &text)
        }
        None => match embedded(seq) {
            Some(text) => parse(name, text),
            None => bail!("no reference data for {name}"),
        },
    }
}
