//! Bibliographic records and the three network paradigms built from them.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::NetworkError;
use crate::graph::Graph;

/// One publication. Author and reference lists keep their first-seen order
/// and are deduplicated by [`Record::new`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub paper_id: String,
    pub authors: Vec<String>,
    pub refs: Vec<String>,
    pub year: Option<i32>,
}

fn dedup_in_order(items: Vec<String>) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(items.len());
    for it in items {
        if !out.contains(&it) {
            out.push(it);
        }
    }
    out
}

impl Record {
    pub fn new(
        paper_id: impl Into<String>,
        authors: Vec<String>,
        refs: Vec<String>,
        year: Option<i32>,
    ) -> Self {
        Record {
            paper_id: paper_id.into(),
            authors: dedup_in_order(authors),
            refs: dedup_in_order(refs),
            year,
        }
    }
}

/// Validated collection of records with dense id tables for papers and
/// authors. Paper ids follow record order; author ids follow first
/// appearance.
#[derive(Clone, Debug, Default)]
pub struct RecordSet {
    records: Vec<Record>,
    paper_index: BTreeMap<String, u32>,
    author_keys: Vec<String>,
    author_index: BTreeMap<String, u32>,
}

impl RecordSet {
    pub fn new(records: Vec<Record>) -> Result<Self, NetworkError> {
        let mut set = RecordSet::default();
        for rec in records {
            set.push(rec)?;
        }
        Ok(set)
    }

    pub fn push(&mut self, rec: Record) -> Result<(), NetworkError> {
        if rec.paper_id.is_empty() {
            return Err(NetworkError::EmptyPaperId);
        }
        if self.paper_index.contains_key(&rec.paper_id) {
            return Err(NetworkError::DuplicatePaperId(rec.paper_id));
        }
        let rec = Record::new(rec.paper_id, rec.authors, rec.refs, rec.year);
        self.paper_index
            .insert(rec.paper_id.clone(), self.records.len() as u32);
        for a in &rec.authors {
            if !self.author_index.contains_key(a) {
                self.author_index
                    .insert(a.clone(), self.author_keys.len() as u32);
                self.author_keys.push(a.clone());
            }
        }
        self.records.push(rec);
        Ok(())
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn paper_id(&self, key: &str) -> Option<u32> {
        self.paper_index.get(key).copied()
    }

    pub fn author_id(&self, key: &str) -> Option<u32> {
        self.author_index.get(key).copied()
    }

    pub fn author_keys(&self) -> &[String] {
        &self.author_keys
    }

    pub fn author_count(&self) -> usize {
        self.author_keys.len()
    }

    /// References that name a paper absent from the set.
    pub fn dangling_refs(&self) -> usize {
        self.records
            .iter()
            .flat_map(|r| r.refs.iter())
            .filter(|k| !self.paper_index.contains_key(*k))
            .count()
    }

    fn author_ids(&self, paper: u32) -> impl Iterator<Item = u32> + '_ {
        self.records[paper as usize]
            .authors
            .iter()
            .map(|a| self.author_index[a])
    }

    /// Resolved paper citations `(citing, cited)`, excluding self-citations.
    fn citations(&self, stats: &mut BuildStats) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (i, rec) in self.records.iter().enumerate() {
            for r in &rec.refs {
                match self.paper_index.get(r) {
                    None => stats.dangling_refs += 1,
                    Some(&j) if j as usize == i => stats.self_citations += 1,
                    Some(&j) => out.push((i as u32, j)),
                }
            }
        }
        out
    }
}

/// The three ways a database is turned into a network.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Paradigm {
    /// Directed paper citation network.
    PaperCitation,
    /// Directed author citation network; self-loops allowed.
    AuthorCitation,
    /// Undirected co-authorship network.
    Coauthorship,
}

impl Paradigm {
    pub const ALL: [Paradigm; 3] = [
        Paradigm::PaperCitation,
        Paradigm::AuthorCitation,
        Paradigm::Coauthorship,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Paradigm::PaperCitation => "pp",
            Paradigm::AuthorCitation => "aa-cite",
            Paradigm::Coauthorship => "aa-coauth",
        }
    }

    pub fn is_directed(self) -> bool {
        !matches!(self, Paradigm::Coauthorship)
    }
}

impl fmt::Display for Paradigm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Paradigm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pp" => Ok(Paradigm::PaperCitation),
            "aa-cite" => Ok(Paradigm::AuthorCitation),
            "aa-coauth" => Ok(Paradigm::Coauthorship),
            other => Err(alloc::format!(
                "unknown paradigm {other:?} (expected pp, aa-cite or aa-coauth)"
            )),
        }
    }
}

/// Counters describing what a builder discarded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub dangling_refs: usize,
    pub self_citations: usize,
    pub pruned_nodes: usize,
}

/// A built network with the string key of every node.
#[derive(Clone, Debug, PartialEq)]
pub struct Network {
    pub paradigm: Paradigm,
    pub graph: Graph,
    pub labels: Vec<String>,
    pub stats: BuildStats,
}

/// Drops zero-degree nodes (self-loops count as degree) and re-indexes the
/// survivors densely in their original order.
fn prune(
    paradigm: Paradigm,
    node_count: usize,
    links: Vec<(u32, u32)>,
    label: impl Fn(u32) -> String,
    mut stats: BuildStats,
) -> Result<Network, NetworkError> {
    let mut touched = vec![false; node_count];
    for &(u, v) in &links {
        touched[u as usize] = true;
        touched[v as usize] = true;
    }
    let mut remap = vec![u32::MAX; node_count];
    let mut labels = Vec::new();
    for (old, _) in touched.iter().enumerate().filter(|(_, &t)| t) {
        remap[old] = labels.len() as u32;
        labels.push(label(old as u32));
    }
    stats.pruned_nodes = node_count - labels.len();
    let links = links
        .into_iter()
        .map(|(u, v)| (remap[u as usize], remap[v as usize]));
    let directed = paradigm.is_directed();
    let allow_loops = paradigm == Paradigm::AuthorCitation;
    let graph = Graph::from_links(labels.len(), links, directed, allow_loops)?;
    Ok(Network {
        paradigm,
        graph,
        labels,
        stats,
    })
}

/// Directed paper citations; self-citations and dangling references are
/// dropped, then papers neither citing nor cited are removed.
pub fn build_paper_citation(rs: &RecordSet) -> Result<Network, NetworkError> {
    let mut stats = BuildStats::default();
    let links = rs.citations(&mut stats);
    if links.is_empty() {
        return Err(NetworkError::NoCitations);
    }
    prune(
        Paradigm::PaperCitation,
        rs.len(),
        links,
        |p| rs.records[p as usize].paper_id.clone(),
        stats,
    )
}

/// Directed author citations: `u -> v` iff some paper by `u` cites some paper
/// by `v`. Self-loops are kept.
pub fn build_author_citation(rs: &RecordSet) -> Result<Network, NetworkError> {
    if rs.author_count() == 0 {
        return Err(NetworkError::NoAuthors);
    }
    let mut stats = BuildStats::default();
    let citations = rs.citations(&mut stats);
    let mut links = Vec::new();
    for (p, q) in citations {
        for a in rs.author_ids(p) {
            for b in rs.author_ids(q) {
                links.push((a, b));
            }
        }
    }
    if links.is_empty() {
        return Err(NetworkError::NoCitations);
    }
    links.sort_unstable();
    links.dedup();
    prune(
        Paradigm::AuthorCitation,
        rs.author_count(),
        links,
        |a| rs.author_keys[a as usize].clone(),
        stats,
    )
}

/// Undirected co-authorship: one link per pair of authors sharing a paper.
pub fn build_coauthorship(rs: &RecordSet) -> Result<Network, NetworkError> {
    if rs.author_count() == 0 {
        return Err(NetworkError::NoAuthors);
    }
    let mut links = Vec::new();
    for p in 0..rs.len() as u32 {
        let ids: Vec<u32> = rs.author_ids(p).collect();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                links.push((a.min(b), a.max(b)));
            }
        }
    }
    if links.is_empty() {
        return Err(NetworkError::NoCoauthorship);
    }
    links.sort_unstable();
    links.dedup();
    prune(
        Paradigm::Coauthorship,
        rs.author_count(),
        links,
        |a| rs.author_keys[a as usize].clone(),
        BuildStats::default(),
    )
}

pub fn build(rs: &RecordSet, paradigm: Paradigm) -> Result<Network, NetworkError> {
    match paradigm {
        Paradigm::PaperCitation => build_paper_citation(rs),
        Paradigm::AuthorCitation => build_author_citation(rs),
        Paradigm::Coauthorship => build_coauthorship(rs),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn rec(id: &str, authors: &[&str], refs: &[&str]) -> Record {
        Record::new(
            id,
            authors.iter().map(|s| s.to_string()).collect(),
            refs.iter().map(|s| s.to_string()).collect(),
            None,
        )
    }

    fn labelled_links(n: &Network) -> Vec<(String, String)> {
        n.graph
            .links()
            .map(|(u, v)| (n.labels[u as usize].clone(), n.labels[v as usize].clone()))
            .collect()
    }

    #[test]
    fn record_dedups_in_order() {
        let r = rec("p", &["y", "x", "y"], &["b", "a", "b"]);
        assert_eq!(r.authors, ["y", "x"]);
        assert_eq!(r.refs, ["b", "a"]);
    }

    #[test]
    fn record_set_validates_ids() {
        assert_eq!(
            RecordSet::new(vec![rec("", &[], &[])]).unwrap_err(),
            NetworkError::EmptyPaperId
        );
        assert_eq!(
            RecordSet::new(vec![rec("a", &[], &[]), rec("a", &[], &[])]).unwrap_err(),
            NetworkError::DuplicatePaperId("a".into())
        );
    }

    #[test]
    fn paper_citation_drops_isolated() {
        let rs = RecordSet::new(vec![rec("a", &[], &["b"]), rec("b", &[], &[]), rec("c", &[], &[])])
            .unwrap();
        let n = build_paper_citation(&rs).unwrap();
        assert_eq!(n.graph.node_count(), 2);
        assert_eq!(labelled_links(&n), [("a".into(), "b".into())]);
        assert_eq!(n.stats.pruned_nodes, 1);
    }

    #[test]
    fn paper_citation_discards_self_citation_and_dangling() {
        let rs = RecordSet::new(vec![rec("a", &[], &["a", "b", "zzz"]), rec("b", &[], &[])]).unwrap();
        let n = build_paper_citation(&rs).unwrap();
        assert_eq!(n.graph.link_count(), 1);
        assert_eq!(n.stats.self_citations, 1);
        assert_eq!(n.stats.dangling_refs, 1);
        assert_eq!(rs.dangling_refs(), 1);
    }

    #[test]
    fn paper_citation_needs_citations() {
        let rs = RecordSet::new(vec![rec("a", &[], &["a"])]).unwrap();
        assert_eq!(build_paper_citation(&rs).unwrap_err(), NetworkError::NoCitations);
    }

    #[test]
    fn author_citation_links() {
        let rs = RecordSet::new(vec![rec("p1", &["x"], &["p2"]), rec("p2", &["y", "z"], &[])]).unwrap();
        let n = build_author_citation(&rs).unwrap();
        assert_eq!(
            labelled_links(&n),
            [("x".into(), "y".into()), ("x".into(), "z".into())]
        );
    }

    #[test]
    fn author_self_citation_kept() {
        let rs = RecordSet::new(vec![rec("p1", &["x"], &["p2"]), rec("p2", &["x"], &[])]).unwrap();
        let n = build_author_citation(&rs).unwrap();
        assert_eq!(n.graph.node_count(), 1);
        assert!(n.graph.has_self_loop(0));
        assert_eq!(n.graph.link_count(), 1);
    }

    #[test]
    fn author_citation_needs_authors() {
        let rs = RecordSet::new(vec![rec("a", &[], &["b"]), rec("b", &[], &[])]).unwrap();
        assert_eq!(build_author_citation(&rs).unwrap_err(), NetworkError::NoAuthors);
    }

    #[test]
    fn coauthorship_triangle_and_path() {
        let rs = RecordSet::new(vec![rec("p", &["x", "y", "z"], &[])]).unwrap();
        let n = build_coauthorship(&rs).unwrap();
        assert_eq!((n.graph.node_count(), n.graph.link_count()), (3, 3));

        let rs = RecordSet::new(vec![rec("p", &["x", "y"], &[]), rec("q", &["y", "z"], &[])]).unwrap();
        let n = build_coauthorship(&rs).unwrap();
        assert_eq!(n.graph.link_count(), 2);
        assert_eq!(n.graph.degree(rs.author_id("y").unwrap()), 2);
    }

    #[test]
    fn coauthorship_drops_solo_authors() {
        let rs = RecordSet::new(vec![rec("p", &["x", "y"], &[]), rec("q", &["w"], &[])]).unwrap();
        let n = build_coauthorship(&rs).unwrap();
        assert_eq!(n.labels, ["x", "y"]);
        let rs = RecordSet::new(vec![rec("q", &["w"], &[])]).unwrap();
        assert_eq!(build_coauthorship(&rs).unwrap_err(), NetworkError::NoCoauthorship);
    }

    #[test]
    fn paradigm_codes_round_trip() {
        for p in Paradigm::ALL {
            assert_eq!(p.code().parse::<Paradigm>().unwrap(), p);
        }
        assert!("ppp".parse::<Paradigm>().is_err());
    }
}
