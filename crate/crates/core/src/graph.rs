//! Immutable simple graphs in compressed sparse row form.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::GraphError;

/// Simple directed or undirected graph with dense node ids `0..node_count`.
///
/// Neighbor lists are sorted and never contain the node itself; self-loops
/// (directed graphs only) are kept as per-node flags. Degrees reported by
/// [`Graph::out_degree`], [`Graph::in_degree`] and [`Graph::degree`] ignore
/// self-loops, while [`Graph::link_count`] includes them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    directed: bool,
    link_count: usize,
    out_offsets: Vec<usize>,
    out_targets: Vec<u32>,
    // Transpose of the out index; empty for undirected graphs.
    in_offsets: Vec<usize>,
    in_sources: Vec<u32>,
    self_loops: Vec<bool>,
}

fn csr(node_count: usize, pairs: &[(u32, u32)]) -> (Vec<usize>, Vec<u32>) {
    // `pairs` must be sorted by (source, target)
    let mut offsets = vec![0usize; node_count + 1];
    for &(u, _) in pairs {
        offsets[u as usize + 1] += 1;
    }
    for i in 0..node_count {
        offsets[i + 1] += offsets[i];
    }
    let targets = pairs.iter().map(|&(_, v)| v).collect();
    (offsets, targets)
}

impl Graph {
    /// Builds a graph over the dense ids `0..node_count`. Duplicate links
    /// collapse; an undirected pair given in both orientations is stored once.
    pub fn from_links<I>(
        node_count: usize,
        links: I,
        directed: bool,
        allow_self_loops: bool,
    ) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        if node_count == 0 {
            return Err(GraphError::Empty);
        }
        let allow_self_loops = allow_self_loops && directed;
        let mut self_loops = vec![false; node_count];
        let mut pairs = Vec::new();
        for (u, v) in links {
            for id in [u, v] {
                if id as usize >= node_count {
                    return Err(GraphError::NodeOutOfRange {
                        id: id as u64,
                        node_count,
                    });
                }
            }
            if u == v {
                if !allow_self_loops {
                    return Err(GraphError::SelfLoop(u as u64));
                }
                self_loops[u as usize] = true;
                continue;
            }
            if directed {
                pairs.push((u, v));
            } else {
                pairs.push((u.min(v), u.max(v)));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        let loops = self_loops.iter().filter(|&&s| s).count();
        let link_count = pairs.len() + loops;

        if directed {
            let (out_offsets, out_targets) = csr(node_count, &pairs);
            let mut rev: Vec<(u32, u32)> = pairs.iter().map(|&(u, v)| (v, u)).collect();
            rev.sort_unstable();
            let (in_offsets, in_sources) = csr(node_count, &rev);
            Ok(Graph {
                directed,
                link_count,
                out_offsets,
                out_targets,
                in_offsets,
                in_sources,
                self_loops,
            })
        } else {
            let mut both = Vec::with_capacity(pairs.len() * 2);
            for &(u, v) in &pairs {
                both.push((u, v));
                both.push((v, u));
            }
            both.sort_unstable();
            let (out_offsets, out_targets) = csr(node_count, &both);
            Ok(Graph {
                directed,
                link_count,
                out_offsets,
                out_targets,
                in_offsets: Vec::new(),
                in_sources: Vec::new(),
                self_loops,
            })
        }
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.self_loops.len()
    }

    /// Number of distinct links, self-loops included.
    #[inline]
    pub fn link_count(&self) -> usize {
        self.link_count
    }

    #[inline]
    pub fn is_directed(&self) -> bool {
        self.directed
    }

    #[inline]
    pub fn has_self_loop(&self, u: u32) -> bool {
        self.self_loops[u as usize]
    }

    pub fn self_loop_count(&self) -> usize {
        self.self_loops.iter().filter(|&&s| s).count()
    }

    /// Out-neighbors (directed) or neighbors (undirected), sorted.
    #[inline]
    pub fn out_neighbors(&self, u: u32) -> &[u32] {
        let u = u as usize;
        &self.out_targets[self.out_offsets[u]..self.out_offsets[u + 1]]
    }

    /// In-neighbors (directed) or neighbors (undirected), sorted.
    #[inline]
    pub fn in_neighbors(&self, u: u32) -> &[u32] {
        if !self.directed {
            return self.out_neighbors(u);
        }
        let u = u as usize;
        &self.in_sources[self.in_offsets[u]..self.in_offsets[u + 1]]
    }

    #[inline]
    pub fn out_degree(&self, u: u32) -> usize {
        self.out_neighbors(u).len()
    }

    #[inline]
    pub fn in_degree(&self, u: u32) -> usize {
        self.in_neighbors(u).len()
    }

    /// Total degree: `k_in + k_out` for directed graphs, neighbor count
    /// otherwise. Self-loops are not counted.
    #[inline]
    pub fn degree(&self, u: u32) -> usize {
        if self.directed {
            self.out_degree(u) + self.in_degree(u)
        } else {
            self.out_degree(u)
        }
    }

    /// Every link once: `(u, v)` per directed link, `(u, v)` with `u < v` per
    /// undirected link, and `(u, u)` per self-loop. Sorted.
    pub fn links(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let directed = self.directed;
        (0..self.node_count() as u32).flat_map(move |u| {
            let nbrs = self.out_neighbors(u);
            let split = nbrs.partition_point(|&v| v < u);
            let before = if directed { &nbrs[..split] } else { &[][..] };
            let after = &nbrs[split..];
            let looped = self.has_self_loop(u);
            before
                .iter()
                .map(move |&v| (u, v))
                .chain(looped.then_some((u, u)))
                .chain(after.iter().map(move |&v| (u, v)))
        })
    }

    /// Undirected simple graph on the same nodes; reciprocal links merge and
    /// self-loops are dropped. Undirected graphs are returned as a clone.
    pub fn undirected_view(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        let links = self
            .links()
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)));
        Graph::from_links(self.node_count(), links, false, false)
            .expect("node ids of an existing graph are in range")
    }

    /// Connected-component label per node, ignoring link direction. Labels
    /// are the smallest node id of each component.
    pub fn weak_components(&self) -> Vec<u32> {
        let n = self.node_count();
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                let p = parent[x as usize];
                parent[x as usize] = parent[p as usize];
                x = p;
            }
            x
        }
        for u in 0..n as u32 {
            for &v in self.out_neighbors(u) {
                let a = find(&mut parent, u);
                let b = find(&mut parent, v);
                if a != b {
                    let (lo, hi) = (a.min(b), a.max(b));
                    parent[hi as usize] = lo;
                }
            }
        }
        (0..n as u32).map(|u| find(&mut parent, u)).collect()
    }

    /// Largest weakly connected component (sorted node ids) and its share of
    /// all nodes. Ties go to the component holding the smallest node id.
    pub fn largest_wcc(&self) -> (Vec<u32>, f64) {
        let labels = self.weak_components();
        let n = self.node_count();
        let mut sizes = vec![0usize; n];
        for &l in &labels {
            sizes[l as usize] += 1;
        }
        let mut best = 0u32;
        for l in 0..n {
            if sizes[l] > sizes[best as usize] {
                best = l as u32;
            }
        }
        let nodes: Vec<u32> = (0..n as u32).filter(|&u| labels[u as usize] == best).collect();
        let fraction = nodes.len() as f64 / n as f64;
        (nodes, fraction)
    }

    /// Bow-tie partition of the largest weakly connected component.
    pub fn bow_tie(&self, mode: BowTieMode) -> Result<BowTie, GraphError> {
        if !self.directed {
            return Err(GraphError::NotDirected);
        }
        let (wcc, wcc_fraction) = self.largest_wcc();
        let n = self.node_count() as f64;
        let (mut ins, mut core, mut outs, mut other) = (0usize, 0usize, 0usize, 0usize);
        match mode {
            BowTieMode::Degree => {
                for &u in &wcc {
                    match (self.in_degree(u) > 0, self.out_degree(u) > 0) {
                        (true, true) => core += 1,
                        (false, true) => ins += 1,
                        // never cited, or isolated apart from a self-loop
                        // (only possible when the component is that one node)
                        (true, false) | (false, false) => outs += 1,
                    }
                }
            }
            BowTieMode::Scc => {
                let scc = self.largest_scc_within(&wcc);
                let mut role = vec![0u8; self.node_count()];
                for &u in &scc {
                    role[u as usize] = 1;
                }
                // 2 = reaches the core (in), 3 = reached from the core (out)
                self.mark_reachable(&scc, &mut role, 3, true);
                self.mark_reachable(&scc, &mut role, 2, false);
                for &u in &wcc {
                    match role[u as usize] {
                        1 => core += 1,
                        2 => ins += 1,
                        3 => outs += 1,
                        _ => other += 1,
                    }
                }
            }
        }
        Ok(BowTie {
            wcc_fraction,
            in_fraction: ins as f64 / n,
            core_fraction: core as f64 / n,
            out_fraction: outs as f64 / n,
            other_fraction: other as f64 / n,
        })
    }

    fn mark_reachable(&self, from: &[u32], role: &mut [u8], tag: u8, forward: bool) {
        let mut stack: Vec<u32> = from.to_vec();
        while let Some(u) = stack.pop() {
            let nbrs = if forward {
                self.out_neighbors(u)
            } else {
                self.in_neighbors(u)
            };
            for &v in nbrs {
                if role[v as usize] == 0 {
                    role[v as usize] = tag;
                    stack.push(v);
                }
            }
        }
    }

    /// Largest strongly connected component among `nodes` (iterative Tarjan).
    fn largest_scc_within(&self, nodes: &[u32]) -> Vec<u32> {
        const UNSEEN: u32 = u32::MAX;
        let n = self.node_count();
        let mut index = vec![UNSEEN; n];
        let mut low = vec![0u32; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<u32> = Vec::new();
        let mut call: Vec<(u32, usize)> = Vec::new();
        let mut next = 0u32;
        let mut best: Vec<u32> = Vec::new();

        for &root in nodes {
            if index[root as usize] != UNSEEN {
                continue;
            }
            call.push((root, 0));
            index[root as usize] = next;
            low[root as usize] = next;
            next += 1;
            stack.push(root);
            on_stack[root as usize] = true;

            while let Some(top) = call.last_mut() {
                let u = top.0;
                let nbrs = self.out_neighbors(u);
                if top.1 < nbrs.len() {
                    let v = nbrs[top.1];
                    top.1 += 1;
                    if index[v as usize] == UNSEEN {
                        index[v as usize] = next;
                        low[v as usize] = next;
                        next += 1;
                        stack.push(v);
                        on_stack[v as usize] = true;
                        call.push((v, 0));
                    } else if on_stack[v as usize] {
                        low[u as usize] = low[u as usize].min(index[v as usize]);
                    }
                    continue;
                }
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent as usize] = low[parent as usize].min(low[u as usize]);
                }
                if low[u as usize] == index[u as usize] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w as usize] = false;
                        comp.push(w);
                        if w == u {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    if comp.len() > best.len() || (comp.len() == best.len() && comp[0] < best[0]) {
                        best = comp;
                    }
                }
            }
        }
        best
    }
}

/// Builds a graph from arbitrary non-negative ids, re-mapping them densely in
/// ascending id order. Returns the graph and the original id of every node.
pub fn build_graph(
    links: &[(u64, u64)],
    directed: bool,
    allow_self_loops: bool,
) -> Result<(Graph, Vec<u64>), GraphError> {
    if links.is_empty() {
        return Err(GraphError::Empty);
    }
    if !(allow_self_loops && directed) {
        if let Some(&(u, _)) = links.iter().find(|&&(u, v)| u == v) {
            return Err(GraphError::SelfLoop(u));
        }
    }
    let mut ids: Vec<u64> = links.iter().flat_map(|&(u, v)| [u, v]).collect();
    ids.sort_unstable();
    ids.dedup();
    let dense = |x: u64| ids.binary_search(&x).expect("id collected above") as u32;
    let mapped: Vec<(u32, u32)> = links.iter().map(|&(u, v)| (dense(u), dense(v))).collect();
    let g = Graph::from_links(ids.len(), mapped, directed, allow_self_loops)?;
    Ok((g, ids))
}

/// How the bow-tie core is identified.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BowTieMode {
    /// Core = both citing and cited, in = never cited, out = not citing.
    #[default]
    Degree,
    /// Core = largest strongly connected component, in/out = its ancestors
    /// and descendants; the rest of the component is reported as `other`.
    Scc,
}

/// Bow-tie fractions, all relative to the total node count.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BowTie {
    pub wcc_fraction: f64,
    pub in_fraction: f64,
    pub core_fraction: f64,
    pub out_fraction: f64,
    /// Tendrils and tubes; always zero in [`BowTieMode::Degree`].
    pub other_fraction: f64,
}
