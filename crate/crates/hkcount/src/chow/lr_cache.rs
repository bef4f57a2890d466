//! Optional on-disk persistence of the Littlewood–Richardson memo table.
//!
//! The cache is a line-oriented text file mapping `(λ, μ, box)` to the
//! coefficient list of `σ_λ·σ_μ`. Its absence (or a stale/corrupt file)
//! changes nothing but speed: loading merges into the in-process memo and
//! saving snapshots it back out. The CLI wires the file location to the
//! `HKCOUNT_LR_CACHE` environment variable.
//!
//! Format, one entry per line after a header:
//!
//! ```text
//! hkcount-lr-cache 1
//! 4 2 | 2 1 | 1 1 | 2 2 1 : 1 ; 2 2 2 : 1
//! ```
//!
//! i.e. `rows cols | λ parts | μ parts | ν parts : coeff ; …`, with `-` for
//! the empty partition and an empty product section for a vanishing product.

use std::fs;
use std::io::Write;
use std::path::Path;

use super::lr::{memo_preload, memo_snapshot, LrKey};
use super::partition::Partition;

const HEADER: &str = "hkcount-lr-cache 1";

#[derive(Debug)]
pub enum LrCacheError {
    Io(std::io::Error),
    Malformed { line: usize, reason: String },
}

impl std::fmt::Display for LrCacheError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LrCacheError::Io(e) => write!(f, "lr cache i/o error: {e}"),
            LrCacheError::Malformed { line, reason } => {
                write!(f, "lr cache malformed at line {line}: {reason}")
            }
        }
    }
}

impl std::error::Error for LrCacheError {}

impl From<std::io::Error> for LrCacheError {
    fn from(e: std::io::Error) -> Self {
        LrCacheError::Io(e)
    }
}

fn format_partition(p: &Partition) -> String {
    if p.is_empty() {
        "-".to_string()
    } else {
        p.parts()
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn parse_partition(text: &str) -> Option<Partition> {
    let text = text.trim();
    if text == "-" {
        return Some(Partition::empty());
    }
    let parts: Option<Vec<u32>> = text
        .split_whitespace()
        .map(|t| t.parse::<u32>().ok())
        .collect();
    let parts = parts?;
    let decreasing = parts.windows(2).all(|w| w[0] >= w[1]);
    decreasing.then(|| Partition::new(parts))
}

/// Writes the current memo table to `path` (via a sibling temp file).
pub fn save_to(path: &Path) -> Result<(), LrCacheError> {
    let entries = memo_snapshot();
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    for ((rows, cols, lambda, mu), products) in &entries {
        let body = products
            .iter()
            .map(|(nu, c)| format!("{} : {c}", format_partition(nu)))
            .collect::<Vec<_>>()
            .join(" ; ");
        out.push_str(&format!(
            "{rows} {cols} | {} | {} | {body}\n",
            format_partition(lambda),
            format_partition(mu),
        ));
    }
    // per-process temp file; the rename is atomic, so concurrent writers
    // leave a complete file behind either way
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(out.as_bytes())?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Loads a cache file and merges it into the memo table. Returns the number
/// of entries merged.
pub fn load_from(path: &Path) -> Result<usize, LrCacheError> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, first)) if first.trim() == HEADER => {}
        Some((_, other)) => {
            return Err(LrCacheError::Malformed {
                line: 1,
                reason: format!("unexpected header {other:?}"),
            })
        }
        None => return Ok(0),
    }
    let mut entries: Vec<(LrKey, Vec<(Partition, u64)>)> = Vec::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let malformed = |reason: &str| LrCacheError::Malformed {
            line: idx + 1,
            reason: reason.to_string(),
        };
        let fields: Vec<&str> = line.split('|').collect();
        if fields.len() != 4 {
            return Err(malformed("expected 4 pipe-separated fields"));
        }
        let dims: Vec<&str> = fields[0].split_whitespace().collect();
        if dims.len() != 2 {
            return Err(malformed("expected box as `rows cols`"));
        }
        let rows: u32 = dims[0].parse().map_err(|_| malformed("bad rows"))?;
        let cols: u32 = dims[1].parse().map_err(|_| malformed("bad cols"))?;
        let lambda = parse_partition(fields[1]).ok_or_else(|| malformed("bad λ"))?;
        let mu = parse_partition(fields[2]).ok_or_else(|| malformed("bad μ"))?;
        let mut products = Vec::new();
        let body = fields[3].trim();
        if !body.is_empty() {
            for term in body.split(';') {
                let (nu_text, coeff_text) = term
                    .rsplit_once(':')
                    .ok_or_else(|| malformed("term missing `:`"))?;
                let nu = parse_partition(nu_text).ok_or_else(|| malformed("bad ν"))?;
                let coeff: u64 = coeff_text
                    .trim()
                    .parse()
                    .map_err(|_| malformed("bad coefficient"))?;
                products.push((nu, coeff));
            }
        }
        products.sort();
        entries.push(((rows, cols, lambda, mu), products));
    }
    let merged = entries.len();
    memo_preload(entries);
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::lr::lr_product;

    #[test]
    fn roundtrip_through_a_file() {
        let a = Partition::new(vec![2, 1]);
        let product = lr_product(&a, &a, 4, 2);
        assert!(!product.is_empty());
        let dir = std::env::temp_dir().join("hkcount-lr-cache-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cache.txt");
        save_to(&path).unwrap();
        let merged = load_from(&path).unwrap();
        assert!(merged > 0);
        // loading an empty or corrupt file reports rather than panics
        fs::write(&path, "not a cache\n").unwrap();
        assert!(load_from(&path).is_err());
        fs::remove_dir_all(&dir).ok();
    }
}
