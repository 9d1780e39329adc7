//! Converters from the public arXiv and Cora distributions to JSON lines.

use std::collections::HashMap;
use std::io::BufRead;

use anyhow::{Context, Result};
use bibnet_core::{Record, RecordSet};

use crate::parse::{parse_records, Format};

/// Numeric ids lose their leading zeros, matching the SNAP edge lists
/// (`0001001` in the date file is `1001` among the citations).
pub fn normalize_id(id: &str) -> String {
    if !id.is_empty() && id.bytes().all(|b| b.is_ascii_digit()) {
        let t = id.trim_start_matches('0');
        if t.is_empty() { "0".into() } else { t.into() }
    } else {
        id.to_string()
    }
}

/// `id<TAB>YYYY-MM-DD` lines; `#` comments.
pub fn read_years<R: BufRead>(r: R) -> Result<HashMap<String, i32>> {
    let mut out = HashMap::new();
    for line in r.lines() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let mut it = t.split_whitespace();
        if let (Some(id), Some(date)) = (it.next(), it.next()) {
            if let Some(y) = date.get(..4).and_then(|y| y.parse().ok()) {
                out.entry(normalize_id(id)).or_insert(y);
            }
        }
    }
    Ok(out)
}

/// `id<TAB>author<TAB>author…` lines; repeated ids append.
pub fn read_authors<R: BufRead>(r: R) -> Result<HashMap<String, Vec<String>>> {
    let mut out: HashMap<String, Vec<String>> = HashMap::new();
    for line in r.lines() {
        let line = line?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split('\t');
        let id = normalize_id(it.next().unwrap_or("").trim());
        let names = it.map(str::trim).filter(|s| !s.is_empty()).map(String::from);
        out.entry(id).or_default().extend(names);
    }
    Ok(out)
}

/// Reads a citation-pair file and attaches optional years and authors.
pub fn convert_pairs(
    pairs: &std::path::Path,
    format: Format,
    years: Option<&HashMap<String, i32>>,
    authors: Option<&HashMap<String, Vec<String>>>,
) -> Result<RecordSet> {
    let f = std::fs::File::open(pairs).with_context(|| format!("opening {}", pairs.display()))?;
    let parsed = parse_records(std::io::BufReader::new(f), format)?;
    let records = parsed
        .records
        .records()
        .iter()
        .map(|r| {
            let key = normalize_id(&r.paper_id);
            Record::new(
                r.paper_id.clone(),
                authors.and_then(|a| a.get(&key)).cloned().unwrap_or_default(),
                r.refs.clone(),
                years.and_then(|y| y.get(&key)).copied(),
            )
        })
        .collect();
    Ok(RecordSet::new(records)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_normalize() {
        assert_eq!(normalize_id("0001001"), "1001");
        assert_eq!(normalize_id("000"), "0");
        assert_eq!(normalize_id("hep-th/01"), "hep-th/01");
    }

    #[test]
    fn years_and_authors() {
        let y = read_years("# c\n0001001\t2000-01-01\n9203201\t1992-03-01\n".as_bytes()).unwrap();
        assert_eq!(y["1001"], 2000);
        assert_eq!(y["9203201"], 1992);
        let a = read_authors("p1\tx\ty\np1\tz\n".as_bytes()).unwrap();
        assert_eq!(a["p1"], ["x", "y", "z"]);
    }
}
