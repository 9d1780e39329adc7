//! Binary graph files.
//!
//! Layout: the 8-byte magic `BNGRAPH1`, a little-endian `u32` header length,
//! the JSON header, `links` pairs of little-endian `u32` node ids, then the
//! label table as length-prefixed UTF-8 strings. The header carries a
//! SHA-256 digest of the label table.

use std::io::{Read, Write};
use std::path::Path;

use bibnet_core::{Graph, GraphError, Network, Paradigm};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const MAGIC: &[u8; 8] = b"BNGRAPH1";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub format_version: u32,
    pub dataset: String,
    pub paradigm: String,
    pub directed: bool,
    pub nodes: usize,
    pub links: usize,
    pub self_loops: usize,
    pub id_table_digest: String,
}

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("not a graph file (bad magic)")]
    BadMagic,
    #[error("bad header: {0}")]
    Header(#[from] serde_json::Error),
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("label table digest mismatch")]
    Digest,
    #[error("corrupt graph file: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A graph with its node labels, as persisted.
#[derive(Clone, Debug, PartialEq)]
pub struct StoredGraph {
    pub header: Header,
    pub graph: Graph,
    pub labels: Vec<String>,
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn label_table(labels: &[String]) -> Vec<u8> {
    let mut out = Vec::new();
    for l in labels {
        out.extend_from_slice(&(l.len() as u32).to_le_bytes());
        out.extend_from_slice(l.as_bytes());
    }
    out
}

pub fn encode(dataset: &str, net: &Network) -> Vec<u8> {
    let g = &net.graph;
    let table = label_table(&net.labels);
    let header = Header {
        format_version: FORMAT_VERSION,
        dataset: dataset.to_string(),
        paradigm: net.paradigm.code().to_string(),
        directed: g.is_directed(),
        nodes: g.node_count(),
        links: g.link_count(),
        self_loops: g.self_loop_count(),
        id_table_digest: hex(&Sha256::digest(&table)),
    };
    let json = serde_json::to_vec(&header).expect("header serializes");
    let mut out = Vec::with_capacity(16 + json.len() + 8 * g.link_count() + table.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(json.len() as u32).to_le_bytes());
    out.extend_from_slice(&json);
    for (u, v) in g.links() {
        out.extend_from_slice(&u.to_le_bytes());
        out.extend_from_slice(&v.to_le_bytes());
    }
    out.extend_from_slice(&table);
    out
}

struct Cursor<'a>(&'a [u8]);

impl Cursor<'_> {
    fn take(&mut self, n: usize) -> Result<&[u8], StoreError> {
        if self.0.len() < n {
            return Err(StoreError::Corrupt("unexpected end of file".into()));
        }
        let (head, tail) = self.0.split_at(n);
        self.0 = tail;
        Ok(head)
    }

    fn u32(&mut self) -> Result<u32, StoreError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
}

pub fn decode(bytes: &[u8]) -> Result<StoredGraph, StoreError> {
    let mut c = Cursor(bytes);
    if c.take(8).map_err(|_| StoreError::BadMagic)? != MAGIC {
        return Err(StoreError::BadMagic);
    }
    let hlen = c.u32()? as usize;
    let header: Header = serde_json::from_slice(c.take(hlen)?)?;
    if header.format_version != FORMAT_VERSION {
        return Err(StoreError::Version(header.format_version));
    }
    let mut links = Vec::with_capacity(header.links);
    for _ in 0..header.links {
        links.push((c.u32()?, c.u32()?));
    }
    let table = c.0;
    if hex(&Sha256::digest(table)) != header.id_table_digest {
        return Err(StoreError::Digest);
    }
    let mut labels = Vec::with_capacity(header.nodes);
    while !c.0.is_empty() {
        let n = c.u32()? as usize;
        let s = std::str::from_utf8(c.take(n)?)
            .map_err(|e| StoreError::Corrupt(e.to_string()))?;
        labels.push(s.to_string());
    }
    if labels.len() != header.nodes {
        return Err(StoreError::Corrupt(format!(
            "{} labels for {} nodes",
            labels.len(),
            header.nodes
        )));
    }
    let graph = Graph::from_links(header.nodes, links, header.directed, true)?;
    if graph.link_count() != header.links {
        return Err(StoreError::Corrupt("duplicate links".into()));
    }
    Ok(StoredGraph {
        header,
        graph,
        labels,
    })
}

pub fn write_graph(path: &Path, dataset: &str, net: &Network) -> Result<Header, StoreError> {
    let bytes = encode(dataset, net);
    let mut f = std::fs::File::create(path)?;
    f.write_all(&bytes)?;
    decode_header(&bytes)
}

fn decode_header(bytes: &[u8]) -> Result<Header, StoreError> {
    let mut c = Cursor(bytes);
    c.take(8)?;
    let hlen = c.u32()? as usize;
    Ok(serde_json::from_slice(c.take(hlen)?)?)
}

pub fn read_graph(path: &Path) -> Result<StoredGraph, StoreError> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut bytes)?;
    decode(&bytes)
}

/// Parses the paradigm code stored in a header.
pub fn paradigm_of(h: &Header) -> Option<Paradigm> {
    h.paradigm.parse().ok()
}
