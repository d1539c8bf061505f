//! Parsing and validation of flag values.
//!
//! Every failure here is a [`UsageError`], which the entry point maps to exit
//! code 2.

use std::fmt;

use qfock::{Ambient, BlockSpec, MultiCharge, MultiPartition};

/// A problem with the flags themselves rather than with the computation.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Parses a comma-separated integer list such as `6,3,-2,4`.
pub fn int_list(flag: &str, text: &str) -> anyhow::Result<Vec<i64>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| usage(format!("--{flag}: `{t}` is not an integer")))
        })
        .collect()
}

pub fn ambient(n: usize, level: usize) -> anyhow::Result<Ambient> {
    Ambient::new(n, level).map_err(|e| usage(e.to_string()))
}

pub fn charge(text: &str, level: usize) -> anyhow::Result<MultiCharge> {
    let s = int_list("charge", text)?;
    if s.len() != level {
        return Err(usage(format!(
            "--charge has {} components but --level is {level}",
            s.len()
        )));
    }
    MultiCharge::new(s).map_err(|e| usage(e.to_string()))
}

/// Parses a JSON multipartition such as `[[],[6]]` or `[[2,1],[1]]`.
pub fn partition(text: &str, level: usize) -> anyhow::Result<MultiPartition> {
    let parts: Vec<Vec<u32>> = serde_json::from_str(text)
        .map_err(|e| usage(format!("--partition: expected a JSON list of lists ({e})")))?;
    if parts.len() != level {
        return Err(usage(format!(
            "--partition has {} components but --level is {level}",
            parts.len()
        )));
    }
    MultiPartition::from_parts(parts).map_err(|e| usage(format!("--partition: {e}")))
}

pub fn block(n: usize, s: MultiCharge, size: usize) -> anyhow::Result<BlockSpec> {
    BlockSpec::new(n, s, size).map_err(|e| usage(e.to_string()))
}

pub fn component(j: usize, level: usize) -> anyhow::Result<usize> {
    if j == 0 || j > level {
        return Err(usage(format!("--j must lie in 1..={level}")));
    }
    Ok(j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_and_partitions() {
        assert_eq!(int_list("indices", "6, 3,-2").unwrap(), vec![6, 3, -2]);
        assert!(int_list("indices", "6,x").is_err());
        assert_eq!(charge("3,-3", 2).unwrap().as_slice(), &[3, -3]);
        assert!(charge("3", 2).is_err());
        assert_eq!(partition("[[],[6]]", 2).unwrap().size(), 6);
        assert!(partition("[[1,2]]", 1).is_err());
        assert!(partition("[[1]]", 2).is_err());
    }
}
