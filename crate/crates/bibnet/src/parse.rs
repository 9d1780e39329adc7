//! Record readers for JSON lines, plain edge lists and Cora citation pairs.

use std::collections::HashMap;
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use bibnet_core::{NetworkError, Record, RecordSet};
use serde::{Deserialize, Serialize};

/// Share of malformed non-blank lines above which a file is rejected.
pub const MAX_MALFORMED_FRACTION: f64 = 0.10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Jsonl,
    Edgelist,
    CoraPairs,
}

impl FromStr for Format {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        match s {
            "jsonl" => Ok(Format::Jsonl),
            "edgelist" => Ok(Format::Edgelist),
            "cora-pairs" => Ok(Format::CoraPairs),
            _ => Err(ParseError::UnknownFormat(s.to_string())),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Jsonl => "jsonl",
            Format::Edgelist => "edgelist",
            Format::CoraPairs => "cora-pairs",
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("unknown input format {0:?} (expected jsonl, edgelist or cora-pairs)")]
    UnknownFormat(String),
    #[error("line {line}: {source}")]
    Io {
        line: usize,
        #[source]
        source: std::io::Error,
    },
    #[error("{malformed} of {lines} lines malformed; is the format right?")]
    TooManyMalformed { malformed: usize, lines: usize },
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// On-disk shape of one JSON line.
#[derive(Debug, Serialize, Deserialize)]
pub struct JsonRecord {
    pub id: String,
    #[serde(default)]
    pub authors: Vec<String>,
    #[serde(default)]
    pub refs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub year: Option<i32>,
}

impl From<&Record> for JsonRecord {
    fn from(r: &Record) -> Self {
        JsonRecord {
            id: r.paper_id.clone(),
            authors: r.authors.clone(),
            refs: r.refs.clone(),
            year: r.year,
        }
    }
}

#[derive(Debug)]
pub struct Parsed {
    pub records: RecordSet,
    /// Non-blank, non-comment lines seen.
    pub lines: usize,
    pub malformed: usize,
}

/// Citation pairs in first-appearance order, turned into authorless records.
#[derive(Default)]
struct PairCollector {
    index: HashMap<String, usize>,
    records: Vec<(String, Vec<String>)>,
}

impl PairCollector {
    fn node(&mut self, id: &str) -> usize {
        if let Some(&i) = self.index.get(id) {
            return i;
        }
        let i = self.records.len();
        self.index.insert(id.to_string(), i);
        self.records.push((id.to_string(), Vec::new()));
        i
    }

    fn cite(&mut self, citing: &str, cited: &str) {
        let i = self.node(citing);
        self.node(cited);
        self.records[i].1.push(cited.to_string());
    }

    fn finish(self) -> Result<RecordSet, NetworkError> {
        RecordSet::new(
            self.records
                .into_iter()
                .map(|(id, refs)| Record::new(id, Vec::new(), refs, None))
                .collect(),
        )
    }
}

fn two_tokens(line: &str) -> Option<(&str, &str)> {
    let mut it = line.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Some((a, b)),
        _ => None,
    }
}

/// Reads records in `format`.
///
/// * `jsonl`: one object per line with `id`, `authors`, `refs`, `year`.
/// * `edgelist`: `citing cited` per line, `#` comments.
/// * `cora-pairs`: `cited citing` per line, whitespace separated.
///
/// Blank lines are skipped. Malformed lines are counted; more than 10% of
/// them fails the whole read.
pub fn parse_records<R: BufRead>(reader: R, format: Format) -> Result<Parsed, ParseError> {
    let mut lines = 0usize;
    let mut malformed = 0usize;
    let mut json_records = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut pairs = PairCollector::default();
    for (no, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| ParseError::Io { line: no + 1, source })?;
        let t = line.trim();
        if t.is_empty() || (format != Format::Jsonl && t.starts_with('#')) {
            continue;
        }
        lines += 1;
        match format {
            Format::Jsonl => match serde_json::from_str::<JsonRecord>(t) {
                Ok(r) if !r.id.is_empty() && seen.insert(r.id.clone()) => {
                    json_records.push(Record::new(r.id, r.authors, r.refs, r.year));
                }
                _ => malformed += 1,
            },
            Format::Edgelist => match two_tokens(t) {
                Some((citing, cited)) => pairs.cite(citing, cited),
                None => malformed += 1,
            },
            Format::CoraPairs => match two_tokens(t) {
                Some((cited, citing)) => pairs.cite(citing, cited),
                None => malformed += 1,
            },
        }
    }
    if malformed as f64 > MAX_MALFORMED_FRACTION * lines as f64 {
        return Err(ParseError::TooManyMalformed { malformed, lines });
    }
    let records = match format {
        Format::Jsonl => RecordSet::new(json_records)?,
        _ => pairs.finish()?,
    };
    Ok(Parsed {
        records,
        lines,
        malformed,
    })
}

/// Writes records as JSON lines, one per record in set order.
pub fn write_jsonl<W: std::io::Write>(rs: &RecordSet, mut w: W) -> std::io::Result<()> {
    for r in rs.records() {
        serde_json::to_writer(&mut w, &JsonRecord::from(r))?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jsonl_two_records() {
        let src = "{\"id\":\"a\",\"authors\":[\"x\",\"y\"],\"refs\":[\"b\"]}\n{\"id\":\"b\",\"authors\":[\"y\"],\"refs\":[]}\n";
        let p = parse_records(src.as_bytes(), Format::Jsonl).unwrap();
        assert_eq!(p.records.len(), 2);
        assert_eq!(p.records.author_count(), 2);
        assert_eq!(p.malformed, 0);
    }

    #[test]
    fn edgelist_records() {
        let p = parse_records("# header\n0 1\n1 2\n".as_bytes(), Format::Edgelist).unwrap();
        let recs = p.records.records();
        assert_eq!(recs.len(), 3);
        assert_eq!(recs[0].refs, ["1"]);
        assert_eq!(recs[1].refs, ["2"]);
        assert!(recs[2].refs.is_empty());
        assert!(recs.iter().all(|r| r.authors.is_empty()));
    }

    #[test]
    fn cora_pairs_are_cited_then_citing() {
        let p = parse_records("b\ta\n".as_bytes(), Format::CoraPairs).unwrap();
        assert_eq!(p.records.records()[0].paper_id, "a");
        assert_eq!(p.records.records()[0].refs, ["b"]);
    }

    #[test]
    fn malformed_threshold() {
        let mut src = String::new();
        for i in 0..19 {
            src.push_str(&format!("{i} {}\n", i + 1));
        }
        src.push_str("garbage\n");
        let p = parse_records(src.as_bytes(), Format::Edgelist).unwrap();
        assert_eq!(p.malformed, 1);
        src.push_str("more garbage here\nx\n");
        assert!(matches!(
            parse_records(src.as_bytes(), Format::Edgelist),
            Err(ParseError::TooManyMalformed { malformed: 3, lines: 22 })
        ));
    }

    #[test]
    fn unknown_format() {
        assert!(matches!("csv".parse::<Format>(), Err(ParseError::UnknownFormat(_))));
    }

    #[test]
    fn jsonl_round_trip() {
        let src = "{\"id\":\"a\",\"authors\":[\"x\"],\"refs\":[\"b\"],\"year\":1999}\n{\"id\":\"b\",\"authors\":[],\"refs\":[]}\n";
        let p = parse_records(src.as_bytes(), Format::Jsonl).unwrap();
        let mut out = Vec::new();
        write_jsonl(&p.records, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), src);
    }
}
